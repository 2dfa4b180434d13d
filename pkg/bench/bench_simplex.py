"""Compare the compiled GMP simplex kernel with the pure-Python fallback.

Both kernels solve the same extremality feasibility systems (is point i a
convex combination of the others?) and must return identical bases.

    python bench/bench_simplex.py [--n6-sample 24] [--repeat 1]
"""
import argparse
import time

from tedpoly import lp
from tedpoly.extremality import _feasibility_system, _integer_points
from tedpoly.transform import build_point_set


def systems(n, eps, indices=None):
    ps = build_point_set(n, eps)
    ip = _integer_points(ps)
    idx = range(len(ps)) if indices is None else indices
    return [_feasibility_system(ip, i)[1:] for i in idx]


def time_kernel(kernel, batch, repeat):
    best = None
    results = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        results = [kernel.simplex(cols, rhs) for cols, rhs in batch]
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n6-sample", type=int, default=24, help="n=6 points per eps (evenly spaced)")
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if "gmp" not in lp.KERNELS:
        raise SystemExit("compiled kernel not available; build with pip install -e .")

    step = max(1, 720 // args.n6_sample)
    cases = [
        ("n=4 eps=1 (all 24)", systems(4, 1)),
        ("n=5 eps=1 (all 120)", systems(5, 1)),
        ("n=5 eps=5 (all 120)", systems(5, 5)),
        (f"n=6 eps=1 ({len(range(0, 720, step))} pts)", systems(6, 1, range(0, 720, step))),
        (f"n=6 eps=5 ({len(range(0, 720, step))} pts)", systems(6, 5, range(0, 720, step))),
    ]
    print(f"{'case':<26}{'pivots':>9}{'python s':>11}{'gmp s':>9}{'speedup':>9}  same")
    for name, batch in cases:
        tp, rp = time_kernel(lp.KERNELS["python"], batch, args.repeat)
        tg, rg = time_kernel(lp.KERNELS["gmp"], batch, args.repeat)
        pivots = sum(r[4] for r in rg)
        print(f"{name:<26}{pivots:>9}{tp:>11.3f}{tg:>9.3f}{tp / tg:>8.1f}x  {rp == rg}")


if __name__ == "__main__":
    main()
