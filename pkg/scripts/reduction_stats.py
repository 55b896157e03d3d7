"""Empirical study of the reduction schedule on random primitive vectors.

Reports, per rank parity:
  * trace-length distribution,
  * the smallest E8 search radius at which each vector still reduces,
  * how often the rank-2 landing happens with e = f versus e = sigma.

    python3 scripts/reduction_stats.py --samples 2000 --rank-max 24 --coeff 4
"""

import argparse
import random
from collections import Counter

from enriques_mukai.config import ReductionConfig
from enriques_mukai.errors import SearchBoundExceeded
from enriques_mukai.lattice import raw_primitive
from enriques_mukai.reduction import _Reducer, reduce_raw


class _LandingCounter(_Reducer):
    __slots__ = ()
    seen = Counter()

    def land(self, e_axis):
        type(self).seen["e=f" if e_axis == 1 else "e=sigma"] += 1
        return super().land(e_axis)


def _sample(rng, rank_max, coeff):
    while True:
        r = rng.randint(1, rank_max)
        c = tuple(rng.randint(-coeff, coeff) for _ in range(10))
        s = r % 2 + 2 * rng.randint(-3 * coeff, 3 * coeff)
        if raw_primitive(r, c, s):
            return r, c, s, 0


def _min_radius(raw, top):
    for radius in range(top + 1):
        try:
            reduce_raw(raw, ReductionConfig(search_radius=radius))
            return radius
        except SearchBoundExceeded:
            continue
    return None


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--rank-max", type=int, default=24)
    p.add_argument("--coeff", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    lengths = {0: Counter(), 1: Counter()}
    radii = {0: Counter(), 1: Counter()}
    for _ in range(args.samples):
        raw = _sample(rng, args.rank_max, args.coeff)
        parity = raw[0] % 2
        red = _LandingCounter(raw, ReductionConfig())
        red.run_odd() if parity else red.run_even()
        lengths[parity][len(red.moves)] += 1
        radii[parity][_min_radius(raw, 6)] += 1

    for parity, name in ((0, "even"), (1, "odd")):
        n = sum(lengths[parity].values())
        if not n:
            continue
        print(f"{name} rank: {n} vectors")
        print("  trace length : " + ", ".join(f"{k}:{v}" for k, v in sorted(lengths[parity].items())))
        print("  min radius   : " + ", ".join(f"{k}:{v}" for k, v in sorted(radii[parity].items(), key=str)))
    print("landing orientation:", dict(_LandingCounter.seen))


if __name__ == "__main__":
    main()
