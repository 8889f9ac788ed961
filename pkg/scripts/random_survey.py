"""Survey random algebras: how often each classification and verdict occurs.

Usage: python3 scripts/random_survey.py [--count N] [--n-max N] [--density P] [--seed S]
"""

import argparse
import random
import time
from collections import Counter

from evolkit.radical import jacobson_radical
from evolkit.sampling import RandomAlgebraConfig, random_algebra
from evolkit.spectra import m_semisimple_check, spectrally_semisimple_check


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cfg = RandomAlgebraConfig(n_max=args.n_max, density=args.density)
    table = Counter()
    violations = 0
    start = time.perf_counter()
    for _ in range(args.count):
        A = random_algebra(rng, cfg)
        kind = jacobson_radical(A).classification
        spectral = spectrally_semisimple_check(A, seed=args.seed)
        m = m_semisimple_check(A, seed=args.seed)
        table[(kind, spectral.value, m.value)] += 1
        if (kind == "semisimple" and not spectral.affirmative) or (spectral.affirmative and not m.affirmative):
            violations += 1
    elapsed = time.perf_counter() - start

    print(f"{args.count} algebras, n <= {args.n_max}, density {args.density}, seed {args.seed}")
    print(f"{'radical class':<14} {'spectral':<14} {'m-check':<12} count")
    for (kind, spectral, m), c in sorted(table.items(), key=lambda kv: -kv[1]):
        print(f"{kind:<14} {spectral:<14} {m:<12} {c}")
    print(f"implication-order violations: {violations}")
    print(f"elapsed {elapsed:.1f}s")


if __name__ == "__main__":
    main()
