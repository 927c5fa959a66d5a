import pytest

from gravlimit import _backend, curvature, kernels

CORES = [_backend.python_core]
if _backend.compiled_core is not None:
    CORES.append(_backend.compiled_core)


@pytest.fixture(params=CORES, ids=lambda c: c.name)
def backend(request, monkeypatch):
    """Run a test once per available kernel core."""
    monkeypatch.setattr(kernels, "core", request.param)
    monkeypatch.setattr(curvature, "core", request.param)
    return request.param
