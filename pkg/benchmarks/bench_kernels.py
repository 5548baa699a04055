"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Two workloads: Smith elimination of bar-complex coboundaries for the
larger catalogue groups, and the finite-model section search.
"""

import argparse
import statistics
import time

from toralsub import kernels, oracle
from toralsub.catalogue import group_for
from toralsub.classification import ToralGroupSpec
from toralsub.cohomology import bar_complex
from toralsub.intlin import SparseSmith
from toralsub.wgroup import WModule

ELIM_KEYS = ["D8/B2", "D12/G2", "C2xC2/A1xA1"]
ORACLE_RUNS = [("C2xC2/A1xA1", 4), ("C2/Z+Zt", 4), ("D8/B2", 2)]


def _elim_inputs():
    out = []
    for key in ELIM_KEYS:
        g = group_for(key)
        c = bar_complex(WModule(g, g.elements, check=False), 4)
        for i in range(4):
            out.append((key, i, c.coboundary_rows(i), c.dims[i]))
    return out


def _time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t)
    return statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = sorted(kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled extension not built; timing the Python kernels only")

    inputs = _elim_inputs()
    rows = []
    for key, i, coboundary, ncols in inputs:
        times = {}
        for b in backends:
            impl = kernels.BACKENDS[b]
            times[b] = _time(lambda: SparseSmith([dict(r) for r in coboundary], ncols, kernel=impl), args.repeat)
        rows.append((f"smith {key} d^{i} ({len(coboundary)}x{ncols})", times))

    before = kernels.BACKEND
    try:
        for key, n in ORACLE_RUNS:
            sp = ToralGroupSpec(group_for(key), "split", key)
            times = {}
            for b in backends:
                kernels.use_backend(b)
                times[b] = _time(lambda: oracle.run(sp, n), args.repeat)
            rows.append((f"oracle {key} N={n}", times))
    finally:
        kernels.use_backend(before)

    width = max(len(r[0]) for r in rows)
    head = "".join(f"{b:>12}" for b in backends)
    print(f"{'workload':<{width}}{head}{'speedup':>10}")
    for name, times in rows:
        cols = "".join(f"{times[b]:>11.4f}s" for b in backends)
        sp = f"{times['python'] / times['cython']:>9.2f}x" if "cython" in times and times["cython"] else ""
        print(f"{name:<{width}}{cols}{sp}")


if __name__ == "__main__":
    main()
