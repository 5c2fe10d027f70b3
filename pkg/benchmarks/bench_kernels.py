"""Compare the compiled rewriting kernel with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import random
import timeit

from starplane import _kernels_py

try:
    from starplane import _kernels
except ImportError:
    _kernels = None


def make_words(rng, count, length, letters=(0, 1, 2, 3)):
    return [tuple(rng.choice(letters) for _ in range(length)) for _ in range(count)]


def run(impl, words, pairs):
    for w in words:
        impl.normalize_word(w)
    for a, b in pairs:
        impl.mul_counts(a, b)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'case':<28}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for length in (6, 10, 14):
        words = make_words(rng, 200, length)
        pairs = [(tuple(rng.randint(0, 4) for _ in range(4)), tuple(rng.randint(0, 4) for _ in range(4)))
                 for _ in range(50)]
        if _kernels is not None:
            # both kernels must agree before timing means anything
            for w in words[:20]:
                assert _kernels.normalize_word(w) == _kernels_py.normalize_word(w)
        t_py = min(timeit.repeat(lambda: run(_kernels_py, words, pairs), number=1, repeat=args.repeat))
        label = f"words len {length}, +50 mul"
        if _kernels is None:
            print(f"{label:<28}{t_py * 1e3:>14.2f}{'n/a':>14}{'':>10}")
            continue
        t_cy = min(timeit.repeat(lambda: run(_kernels, words, pairs), number=1, repeat=args.repeat))
        print(f"{label:<28}{t_py * 1e3:>14.2f}{t_cy * 1e3:>14.2f}{t_py / t_cy:>9.1f}x")
    if _kernels is None:
        print("compiled kernel not built; only the fallback was timed")


if __name__ == "__main__":
    main()
