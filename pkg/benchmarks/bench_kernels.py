"""Time the compiled and pure-Python kernel cores on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from gravlimit import _backend
from gravlimit.curvature import FourVector, PathSpec, _angular_sum, _sphere_nodes
from gravlimit.kernels import TrackingMode


def _cases(core):
    xs = np.logspace(-2, 3, 100_000)
    grid = np.logspace(-2, 2, 50)
    path = PathSpec(TrackingMode.TWO_WAY, FourVector.null((1.0, 2.0, 2.0)), 1.0)
    dirs, weights = _sphere_nodes(64)
    from gravlimit import curvature

    def brace():
        saved = curvature.core
        curvature.core = core
        try:
            _angular_sum(path, 2.0, dirs, weights)
        finally:
            curvature.core = saved

    return {
        "b_closed_vec (1e5 points)": lambda: core.b_closed_vec(2, xs),
        "angular_quad (50 x, tol 1e-12)": lambda: [core.angular_quad(2, x, 1e-12, 60) for x in grid],
        "brace_response (8192 directions)": brace,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    cores = [c for c in (_backend.compiled_core, _backend.python_core) if c is not None]
    if _backend.compiled_core is None:
        print("compiled core not built; timing the Python fallback only")
    results = {}
    for core in cores:
        for name, fn in _cases(core).items():
            results[(name, core.name)] = min(timeit.repeat(fn, number=1, repeat=args.repeat))
    print(f"{'case':36s}" + "".join(f"{c.name:>12s}" for c in cores)
          + ("     speedup" if len(cores) == 2 else ""))
    for name in _cases(cores[0]):
        times = [results[(name, c.name)] for c in cores]
        line = f"{name:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[1] / times[0]:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
