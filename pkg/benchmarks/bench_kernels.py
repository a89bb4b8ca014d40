"""Compare the compiled and pure-Python letter kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 200000]
"""
import argparse
import random
import timeit
from array import array

from mrq import _purekernels

try:
    from mrq import _speedups
except ImportError:
    _speedups = None


def make_inputs(size, seed):
    rng = random.Random(seed)
    letters = [1, -1, 2, -2]
    noisy = array("i", (rng.choice(letters) for _ in range(size)))
    periodic = array("i", [1, 2, -1, -2] * (size // 4))
    images = [array("i", [1, 2, 1]), array("i", [2, -1])]
    inverse_images = [array("i", [-x for x in reversed(img)]) for img in images]
    reduced = _purekernels.free_reduce(noisy)
    mirror = array("i", [-x for x in reversed(periodic)])
    return {
        "free_reduce": lambda k: k.free_reduce(noisy),
        "cancel_length": lambda k: k.cancel_length(periodic, mirror),
        "periodic_lcp": lambda k: k.periodic_lcp(periodic, 0, periodic, 4, size),
        "smallest_period": lambda k: k.smallest_period(periodic),
        "least_rotation": lambda k: k.least_rotation(reduced),
        "substitute_reduce": lambda k: k.substitute_reduce(reduced[: size // 4], images, inverse_images),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cases = make_inputs(args.size, args.seed)
    backends = [("python", _purekernels)]
    if _speedups is not None:
        backends.append(("cython", _speedups))
    else:
        print("compiled extension not built; timing the pure-Python kernels only")

    print(f"{'kernel':<18}" + "".join(f"{name:>12}" for name, _ in backends) + "     speedup")
    for name, fn in cases.items():
        results = [fn(k) for _, k in backends]
        if any(r != results[0] for r in results):
            raise SystemExit(f"{name}: backends disagree")
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        row = f"{name:<18}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
