"""Compare the compiled and pure-Python torsion search kernels.

Run with ``python benchmarks/bench_torsion.py [--repeat N]``.
"""
import argparse
import time

from ellsurf import _kernels_py
from ellsurf.kodaira import FiberConfiguration, KodairaType
from ellsurf.mordell_weil import _tables, abelian_groups, candidate_order, reducible_fibers

try:
    from ellsurf import _kernels as _compiled
except ImportError:
    _compiled = None

CASES = {
    "3,3,3,3": [3, 3, 3, 3],
    "4,4,2,2": [4, 4, 2, 2],
    "5,5,1,1": [5, 5, 1, 1],
    "6,3,2,1": [6, 3, 2, 1],
    "8,2,1,1": [8, 2, 1, 1],
    "9,1,1,1": [9, 1, 1, 1],
    # a larger, non-rational product to stress the search
    "6,6,6,6 (chi=2)": [6, 6, 6, 6],
}


def run_case(impl, comps, chi):
    conf = FiberConfiguration.from_components(comps, chi)
    fibers = reducible_fibers(conf)
    sizes, add_t, con_t, t_self, t_pair = _tables(fibers, chi)
    hits = 0
    for inv in abelian_groups(candidate_order(conf)):
        inv = sorted(inv, reverse=True)
        if impl.find_embedding(sizes, add_t, con_t, t_self, t_pair, inv) is not None:
            hits += 1
    return hits


def timed(impl, comps, chi, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        run_case(impl, comps, chi)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':<18}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, comps in CASES.items():
        chi = 2 if "chi=2" in name else 1
        tp = timed(_kernels_py, comps, chi, args.repeat)
        if _compiled is None:
            print(f"{name:<18}{tp * 1e3:>14.3f}{'n/a':>14}{'':>10}")
            continue
        tc = timed(_compiled, comps, chi, args.repeat)
        print(f"{name:<18}{tp * 1e3:>14.3f}{tc * 1e3:>14.3f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
