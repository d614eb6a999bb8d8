"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 100] [--T 101] [--repeat 50]

Both backends are checked for bit-identical output before timing.
"""
import argparse
import timeit

import numpy as np

from fdboot import _fallback
from fdboot.core import Grid

try:
    from fdboot import _kernels
except ImportError:  # extension not built
    _kernels = None


def cases(X, w):
    ref = X.mean(axis=0)
    return {
        "fm_depth_scores": (X, w),
        "pairwise_l2": (X, w),
        "pairwise_linf": (X,),
        "l2_to_reference": (X, ref, w),
        "linf_to_reference": (X, ref),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--T", type=int, default=101)
    p.add_argument("--repeat", type=int, default=50)
    args = p.parse_args()
    if _kernels is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    X = np.random.default_rng(0).standard_normal((args.n, args.T))
    w = Grid.uniform(args.T).weights
    print(f"n={args.n} T={args.T}, best of 5 x {args.repeat} calls, ms per call")
    print(f"{'kernel':20s} {'numpy':>9s} {'cython':>9s} {'speedup':>8s}")
    for name, call_args in cases(X, w).items():
        slow, fast = getattr(_fallback, name), getattr(_kernels, name)
        assert np.array_equal(slow(*call_args), fast(*call_args)), name
        t_slow = min(timeit.repeat(lambda: slow(*call_args), number=args.repeat, repeat=5)) / args.repeat
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=args.repeat, repeat=5)) / args.repeat
        print(f"{name:20s} {1e3 * t_slow:9.3f} {1e3 * t_fast:9.3f} {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
