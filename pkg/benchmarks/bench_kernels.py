"""Compare the compiled and pure-Python alignment kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--long 200]
"""

import argparse
import random
import sys
import timeit
from pathlib import Path

from lemmapat import _kernels_py, extract_instances, read_conllu

try:
    from lemmapat import _kernels_c
except ImportError:
    _kernels_c = None

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def fixture_pairs():
    pairs = set()
    for name in ("fixture.conllu", "fixture-dev.conllu"):
        pairs.update((i.form, i.lemma) for i in extract_instances(read_conllu(DATA / name), dedupe="type"))
    return sorted(pairs)


def long_pairs(n, length, seed=0):
    rng = random.Random(seed)
    alphabet = "aeioukltsmndv"
    out = []
    for _ in range(n):
        a = "".join(rng.choice(alphabet) for _ in range(length))
        b = a[: rng.randint(length // 2, length)] + "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 5)))
        out.append((a, b))
    return out


def run(kernels, pairs):
    for form, lemma in pairs:
        for allow_copy in (False, True):
            kernels.edit_script(form, lemma, allow_copy)
            kernels.best_anchor(form, lemma, allow_copy)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--long", type=int, default=200, help="number of long random pairs")
    parser.add_argument("--length", type=int, default=60)
    args = parser.parse_args(argv)

    if _kernels_c is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
    workloads = {
        "fixture pairs": fixture_pairs(),
        f"{args.long} pairs of length {args.length}": long_pairs(args.long, args.length),
    }
    impls = {"python": _kernels_py}
    if _kernels_c is not None:
        impls["cython"] = _kernels_c

    print(f"{'workload':<28} {'kernels':<8} {'best of ' + str(args.repeat):>12}")
    for label, pairs in workloads.items():
        times = {}
        for name, kernels in impls.items():
            times[name] = min(timeit.repeat(lambda: run(kernels, pairs), number=1, repeat=args.repeat))
            print(f"{label:<28} {name:<8} {times[name] * 1000:>10.1f}ms")
        if "cython" in times:
            print(f"{'':<28} {'speedup':<8} {times['python'] / times['cython']:>11.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
