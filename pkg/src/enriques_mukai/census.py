"""Exhaustive census over a box of Mukai vectors, and an independent oracle.

The oracle deliberately shares no arithmetic with :mod:`lattice`: it builds
the E8 Gram matrix from explicit root coordinates in R^8 and evaluates every
quantity with naive loops.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .config import CensusBounds, ReductionConfig
from .errors import MukaiError
from .existence import ExistenceVerdict, exists
from .lattice import MukaiVector, NSClass, SurfaceContext, raw_content, raw_primitive, square10
from .moves import replay_raw
from .reduction import reduce_raw


@dataclass(frozen=True)
class CensusRow:
    vector: MukaiVector
    ell: int
    square: int
    primitive: bool
    verdict: ExistenceVerdict
    canonical: dict | None = None

    def to_dict(self):
        v = self.vector
        return {
            "r": v.r, "c1": list(v.c1.free), "s": v.s, "kappa": v.kappa,
            "ell": self.ell, "square": self.square, "primitive": self.primitive,
            "verdict": self.verdict.to_dict(), "canonical": self.canonical,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _slices(bounds):
    for r in range(bounds.r_max + 1):
        for s in range(-bounds.s_max, bounds.s_max + 1):
            if (r - s) % 2 == 0:
                yield r, s


def _rows_for(r, s, bounds, ctx, config):
    vals = range(-bounds.coeff_bound, bounds.coeff_bound + 1)
    for c in itertools.product(vals, repeat=10):
        if r == 0 and s == 0 and not any(c):
            continue
        prim = raw_primitive(r, c, s)
        sq = square10(c) + r * s
        ell = raw_content(r, c, s)
        canon = None
        if prim and r > 0:
            final, moves, _ = reduce_raw((r, c, s, 0), config)
        for k in (0, 1):
            v = MukaiVector(r, NSClass.from_free(c, k), s)
            if prim and r > 0:
                fr, fc, fs, fk = final
                canon = {"r": fr, "c1": list(fc), "s": fs, "kappa": (fk + k) % 2,
                         "ell": ell, "square": sq, "steps": len(moves)}
            yield CensusRow(v, ell, sq, prim, exists(v, ctx), canon)


def census(bounds: CensusBounds, ctx: SurfaceContext | None = None, config=None):
    """Stream census rows in order: r, s, c1 lexicographic, kappa.

    The zero vector is skipped.  Primitive rows of positive rank carry a
    summary of their canonical form.
    """
    ctx = ctx or SurfaceContext()
    config = config or ReductionConfig()
    for r, s in _slices(bounds):
        yield from _rows_for(r, s, bounds, ctx, config)


def _slice_lines(args):
    r, s, bounds, ctx, config = args
    return [row.to_json() for row in _rows_for(r, s, bounds, ctx, config)]


def census_lines(bounds, ctx=None, config=None, jobs=1):
    """Census as JSON lines.  With ``jobs > 1`` slices run in worker processes
    and are merged back in enumeration order, so output is identical."""
    ctx = ctx or SurfaceContext()
    config = config or ReductionConfig()
    if jobs <= 1:
        for row in census(bounds, ctx, config):
            yield row.to_json()
        return
    tasks = [(r, s, bounds, ctx, config) for r, s in _slices(bounds)]
    with Pool(jobs) as pool:
        for lines in pool.imap(_slice_lines, tasks):
            yield from lines


def summarize(rows):
    """Counts keyed by (ell, sign of <v^2>, verdict case)."""
    counts = Counter()
    for row in rows:
        if isinstance(row, CensusRow):
            ell, sq, case = row.ell, row.square, row.verdict.case.value
        else:
            ell, sq, case = row["ell"], row["square"], row["verdict"]["case"]
        sign = "+" if sq > 0 else "0" if sq == 0 else "-"
        counts[(ell, sign, case)] += 1
    return [{"ell": k[0], "sign": k[1], "case": k[2], "count": n} for k, n in sorted(counts.items())]


# ---------------------------------------------------------------------------
# Independent oracle

def _root_coordinates():
    h = Fraction(1, 2)
    roots = [[h, -h, -h, -h, -h, -h, -h, h]]
    roots.append([1, 1, 0, 0, 0, 0, 0, 0])
    for i in range(6):
        v = [0] * 8
        v[i], v[i + 1] = -1, 1
        roots.append(v)
    return [[Fraction(x) for x in v] for v in roots]


def oracle_gram(perturb=None):
    """10x10 Gram matrix assembled from E8 root coordinates, with an optional
    symmetric ``(i, j, delta)`` perturbation for testing the checker."""
    roots = _root_coordinates()
    g = [[0] * 10 for _ in range(10)]
    g[0][1] = g[1][0] = 1
    for i in range(8):
        for j in range(8):
            dot = sum(a * b for a, b in zip(roots[i], roots[j]))
            if dot.denominator != 1:
                raise AssertionError("E8 root inner products must be integral")
            g[2 + i][2 + j] = -int(dot)
    if perturb is not None:
        i, j, delta = perturb
        g[i][j] += delta
        if i != j:
            g[j][i] += delta
    return g


def _naive_gcd(values):
    g = 0
    for x in values:
        a, b = abs(g), abs(x)
        while b:
            a, b = b, a % b
        g = a
    return g


def _naive_square(g, c):
    return sum(c[i] * g[i][j] * c[j] for i in range(10) for j in range(10))


def _naive_verdict(r, c, s, k, g, ample):
    if _naive_gcd([r, (r - s) // 2, *c]) != 1:
        return False
    c2 = _naive_square(g, c)
    if r == 0:
        ch = sum(c[i] * g[i][j] * ample[j] for i in range(10) for j in range(10))
        if c2 < 0 or ch <= 0:
            return False
    sq = c2 + r * s
    ell = _naive_gcd([r, s, *c])
    if ell == 1:
        return sq >= -1
    if ell == 2 and sq >= 2:
        return True
    return ell == 2 and sq == 0 and all(x % 2 == 0 for x in c) and (k - r // 2) % 2 == 0


@dataclass
class OracleReport:
    vectors: int = 0
    primitive: int = 0
    reduced: int = 0
    violation_count: int = 0
    violations: list = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def ok(self):
        return self.violation_count == 0

    def to_dict(self):
        return {"vectors": self.vectors, "primitive": self.primitive, "reduced": self.reduced,
                "violations": self.violation_count, "examples": self.violations[:10]}


def oracle_check(bounds: CensusBounds, perturb=None, config=None, max_violations=50, stop_after=None):
    """Recompute squares, contents, primitivity and verdicts naively; reduce
    every primitive vector of positive rank and check the canonical form.

    ``stop_after`` ends the scan once that many violations were seen.
    """
    config = config or ReductionConfig()
    g = oracle_gram(perturb)
    ample = (1, 1) + (0,) * 8
    ctx = SurfaceContext()
    rep = OracleReport()

    def bad(kind, raw, detail):
        rep.violation_count += 1
        if len(rep.violations) < max_violations:
            rep.violations.append({"kind": kind, "vector": [raw[0], list(raw[1]), raw[2]], "detail": detail})

    vals = range(-bounds.coeff_bound, bounds.coeff_bound + 1)
    for r, s in _slices(bounds):
        for c in itertools.product(vals, repeat=10):
            if r == 0 and s == 0 and not any(c):
                continue
            if stop_after is not None and rep.violation_count >= stop_after:
                return rep
            rep.vectors += 1
            raw = (r, c, s, 0)
            sq = _naive_square(g, c) + r * s
            ell = _naive_gcd([r, s, *c])
            prim = _naive_gcd([r, (r - s) // 2, *c]) == 1
            fast_sq = square10(c) + r * s
            if sq != fast_sq:
                bad("square", raw, f"oracle {sq}, engine {fast_sq}")
            if ell != raw_content(r, c, s):
                bad("content", raw, f"oracle {ell}, engine {raw_content(r, c, s)}")
            if prim != raw_primitive(r, c, s):
                bad("primitive", raw, f"oracle {prim}")
            for k in (0, 1):
                v = MukaiVector(r, NSClass.from_free(c, k), s)
                want = _naive_verdict(r, c, s, k, g, ample)
                if exists(v, ctx).nonempty != want:
                    bad("verdict", raw, f"kappa={k}: oracle {want}")
            if not prim:
                continue
            rep.primitive += 1
            if ell not in (1, 2):
                bad("content_law", raw, f"ell={ell}")
            if ell == 2 and (r + s) % 4 != 2:
                bad("content_law", raw, "ell=2 but r+s != 2 mod 4")
            if r == 0:
                continue
            try:
                final, moves, _ = reduce_raw(raw, config)
                replay_raw(raw, moves, final)
            except MukaiError as exc:
                bad("reduction", raw, repr(exc))
                continue
            rep.reduced += 1
            fr, fc, fs, _ = final
            fsq = _naive_square(g, fc) + fr * fs
            if fsq != sq or _naive_gcd([fr, fs, *fc]) != ell:
                bad("conservation", raw, f"final square {fsq}, final ell {_naive_gcd([fr, fs, *fc])}")
            if r % 2:
                shape = fr == 1 and not any(fc) and fs == sq
            elif ell == 2:
                shape = fr == 2 and not any(fc) and 2 * fs == sq
            else:
                shape = fr == 2 and _naive_gcd(fc) == 1 and _naive_square(g, fc) + 2 * fs == sq
            if not shape:
                bad("shape", raw, f"final {final}")
    return rep


def e8_determinant_from_roots():
    """det of the (positive) E8 Cartan matrix from root coordinates: 1."""
    g = oracle_gram()
    m = [[Fraction(-g[2 + i][2 + j]) for j in range(8)] for i in range(8)]
    det = Fraction(1)
    for k in range(8):
        piv = next(i for i in range(k, 8) if m[i][k] != 0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, 8):
            f = m[i][k] / m[k][k]
            for j in range(k, 8):
                m[i][j] -= f * m[k][j]
    return det

