"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit
from fractions import Fraction

from foliation import _pykernels

try:
    from foliation import _ckernels
except ImportError:
    _ckernels = None


def sparse_case(rng, terms=60, deg=12):
    def one():
        return {(rng.randrange(deg), rng.randrange(deg)): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(terms)}

    return one(), one()


def dense_case(rng, n=80):
    a = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(2 * n)]
    b = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(n)] + [Fraction(1)]
    return a, b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(7)
    sa, sb = sparse_case(rng)
    da, db = dense_case(rng)
    cases = {
        "sparse_mul": lambda k: k.sparse_mul(sa, sb),
        "sparse_axpy": lambda k: k.sparse_axpy(sa, sb, Fraction(3, 2)),
        "dense_mul": lambda k: k.dense_mul(da, db),
        "dense_divmod": lambda k: k.dense_divmod(da, db, Fraction(1)),
    }
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':<14}" + "".join(f"{n:>12}" for n, _ in backends) + ("   speedup" if _ckernels else ""))
    for name, fn in cases.items():
        ref = fn(_pykernels)
        times = []
        for _, mod in backends:
            assert fn(mod) == ref, f"{name} disagrees"
            t = min(timeit.repeat(lambda: fn(mod), number=20, repeat=args.repeat)) / 20
            times.append(t)
        row = f"{name:<14}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)
    if _ckernels is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
