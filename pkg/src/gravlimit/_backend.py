"""Select the compiled kernel core when importable, else the NumPy fallback.

Set ``GRAVLIMIT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

python_core = _pykernels
compiled_core = None

try:
    from . import _ckernels as compiled_core
except ImportError:  # extension not built
    compiled_core = None

if compiled_core is not None and not os.environ.get("GRAVLIMIT_PURE_PYTHON"):
    core = compiled_core
else:
    core = python_core

BACKEND = core.name
