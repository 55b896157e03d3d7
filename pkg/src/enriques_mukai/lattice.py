"""Exact arithmetic on the Neron-Severi lattice U + E8(-1) of an Enriques surface
and on the Mukai lattice built from it.

Coordinates of a class are ``(d1, d2, e1, ..., e8)`` with respect to the basis
``sigma, f, alpha_1, ..., alpha_8``: ``sigma, f`` span a hyperbolic plane
(``sigma^2 = f^2 = 0``, ``(sigma, f) = 1``) and ``alpha_i`` are the simple
roots of E8 in Bourbaki numbering, with Gram matrix the negated Cartan matrix.
The 2-torsion canonical class K_X is carried separately as ``kappa``.

A Mukai vector ``(r, c1, s)`` stands for ``(r, c1, -s/2)``; ``r - s`` is even.
All arithmetic uses Python integers and fractions, never floats.
"""

from __future__ import annotations

import json
import math
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InternalConsistencyError, InvalidInputError, PreconditionError

RANK = 10

# Dynkin edges of E8, Bourbaki numbering, 1-based.
E8_EDGES = ((1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def _e8_gram():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for i, j in E8_EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = 1
    return tuple(tuple(row) for row in g)


E8_GRAM = _e8_gram()


def _ns_gram():
    g = [[0] * RANK for _ in range(RANK)]
    g[0][1] = g[1][0] = 1
    for i in range(8):
        for j in range(8):
            g[2 + i][2 + j] = E8_GRAM[i][j]
    return tuple(tuple(row) for row in g)


GRAM = _ns_gram()


# Hot-path kernels on plain integer tuples.  These are hand-unrolled from
# GRAM; ``tests/test_lattice.py`` checks them against the matrix.

def pair8(x, y):
    """E8(-1) pairing of two 8-tuples."""
    return (
        -2 * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]
              + x[4] * y[4] + x[5] * y[5] + x[6] * y[6] + x[7] * y[7])
        + x[0] * y[2] + x[2] * y[0]
        + x[2] * y[3] + x[3] * y[2]
        + x[1] * y[3] + x[3] * y[1]
        + x[3] * y[4] + x[4] * y[3]
        + x[4] * y[5] + x[5] * y[4]
        + x[5] * y[6] + x[6] * y[5]
        + x[6] * y[7] + x[7] * y[6]
    )


def square8(x):
    a1, a2, a3, a4, a5, a6, a7, a8 = x
    return 2 * (
        -(a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 + a5 * a5 + a6 * a6 + a7 * a7 + a8 * a8)
        + a1 * a3 + a3 * a4 + a2 * a4 + a4 * a5 + a5 * a6 + a6 * a7 + a7 * a8
    )


def pair10(x, y):
    """Pairing of two free coordinate 10-tuples."""
    return x[0] * y[1] + x[1] * y[0] + pair8(x[2:], y[2:])


def square10(x):
    return 2 * x[0] * x[1] + square8(x[2:])


def e8_functional(xi):
    """Coefficients ``w`` with ``(xi, eta) = sum(w_i * eta_i)``, i.e. ``G xi``."""
    return tuple(sum(E8_GRAM[i][j] * xi[j] for j in range(8)) for i in range(8))


def gcd_all(values):
    return math.gcd(*values) if values else 0


def _as_int(x, name):
    if isinstance(x, bool):
        raise InvalidInputError(f"{name} must be an integer, got a bool")
    try:
        return operator.index(x)
    except TypeError:
        raise InvalidInputError(f"{name} must be an integer, got {x!r}") from None


@dataclass(frozen=True, slots=True)
class NSClass:
    """A class ``d1*sigma + d2*f + sum e_i alpha_i + kappa*K_X`` in NS(X)."""

    d1: int = 0
    d2: int = 0
    e: tuple = (0,) * 8
    kappa: int = 0

    def __post_init__(self):
        object.__setattr__(self, "d1", _as_int(self.d1, "d1"))
        object.__setattr__(self, "d2", _as_int(self.d2, "d2"))
        e = tuple(_as_int(x, "e") for x in self.e)
        if len(e) != 8:
            raise InvalidInputError(f"E8 part needs 8 coordinates, got {len(e)}")
        object.__setattr__(self, "e", e)
        kappa = _as_int(self.kappa, "kappa")
        if kappa not in (0, 1):
            raise InvalidInputError(f"kappa must be 0 or 1, got {kappa}")
        object.__setattr__(self, "kappa", kappa)

    @classmethod
    def from_free(cls, coords, kappa=0):
        coords = tuple(coords)
        if len(coords) != RANK:
            raise InvalidInputError(f"a class needs {RANK} coordinates, got {len(coords)}")
        return cls(coords[0], coords[1], coords[2:], kappa)

    @classmethod
    def e8(cls, e, kappa=0):
        return cls(0, 0, tuple(e), kappa)

    @property
    def free(self):
        return (self.d1, self.d2) + self.e

    def __add__(self, other):
        if not isinstance(other, NSClass):
            return NotImplemented
        return NSClass.from_free(
            tuple(a + b for a, b in zip(self.free, other.free)),
            (self.kappa + other.kappa) % 2,
        )

    def __neg__(self):
        return NSClass.from_free(tuple(-a for a in self.free), self.kappa)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        n = operator.index(n)
        return NSClass.from_free(tuple(n * a for a in self.free), (n * self.kappa) % 2)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.free)

    def square(self):
        return square10(self.free)


ZERO = NSClass()
SIGMA = NSClass(1, 0)
F = NSClass(0, 1)
K_X = NSClass(kappa=1)


def alpha(i):
    """Simple root ``alpha_i`` of E8(-1), 1 <= i <= 8."""
    if not 1 <= i <= 8:
        raise ValueError(f"E8 simple roots are numbered 1..8, got {i}")
    e = [0] * 8
    e[i - 1] = 1
    return NSClass.e8(e)


@dataclass(frozen=True, slots=True)
class MukaiVector:
    """The Mukai vector ``(r, c1, -s/2)``."""

    r: int
    c1: NSClass
    s: int

    def __post_init__(self):
        r = _as_int(self.r, "r")
        s = _as_int(self.s, "s")
        if (r - s) % 2:
            raise InvalidInputError(f"r - s must be even (r={r}, s={s})")
        if not isinstance(self.c1, NSClass):
            raise InvalidInputError("c1 must be an NSClass")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @classmethod
    def of(cls, r, coords=(0,) * RANK, s=0, kappa=0):
        return cls(r, NSClass.from_free(coords, kappa), s)

    @property
    def a(self):
        """The Euler-characteristic slot ``-s/2``."""
        return Fraction(-self.s, 2)

    @property
    def kappa(self):
        return self.c1.kappa

    @property
    def raw(self):
        return (self.r, self.c1.free, self.s, self.c1.kappa)

    @classmethod
    def from_raw(cls, raw):
        r, c, s, k = raw
        return cls(r, NSClass.from_free(c, k), s)

    def with_kappa(self, kappa):
        return MukaiVector(self.r, NSClass.from_free(self.c1.free, kappa), self.s)

    def is_zero(self):
        return self.r == 0 and self.s == 0 and self.c1.is_zero()

    def __add__(self, other):
        if not isinstance(other, MukaiVector):
            return NotImplemented
        return MukaiVector(self.r + other.r, self.c1 + other.c1, self.s + other.s)

    def __neg__(self):
        return MukaiVector(-self.r, -self.c1, -self.s)

    def __str__(self):
        return f"[{self.r}; {','.join(map(str, self.c1.free))}; {self.s}; {self.c1.kappa}]"


@dataclass(frozen=True)
class SurfaceContext:
    """Surface data the existence criteria need.

    ``ample`` is taken on trust: lattice data cannot certify ampleness.  For a
    nodal surface the listed cycles are asserted effective with ``|D + K_X|``
    empty; only ``(D^2) = -2`` is checked.
    """

    nodal: bool = False
    ample: NSClass = NSClass(1, 1)
    nodal_cycles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "nodal_cycles", tuple(self.nodal_cycles))
        if self.ample.square() <= 0:
            raise PreconditionError(f"ample class must have positive square, got {self.ample.square()}")
        if self.nodal_cycles and not self.nodal:
            raise PreconditionError("nodal cycles given for an unnodal surface")
        for d in self.nodal_cycles:
            if d.square() != -2:
                raise PreconditionError(f"nodal cycle {d.free} has square {d.square()}, expected -2")


def ns_pairing(x: NSClass, y: NSClass) -> int:
    """Intersection pairing; the torsion class pairs to zero with everything."""
    return pair10(x.free, y.free)


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> int:
    return pair10(v.c1.free, w.c1.free) + (v.r * w.s + w.r * v.s) // 2


def mukai_square(v: MukaiVector) -> int:
    return square10(v.c1.free) + v.r * v.s


def raw_content(r, c, s):
    return math.gcd(r, s, *c)


def raw_primitive(r, c, s):
    return math.gcd(r, (r - s) // 2, *c) == 1


def content(v: MukaiVector) -> int:
    """``gcd(r, c1, s)``, the invariant called ell."""
    if v.is_zero():
        raise PreconditionError("content of the zero vector is undefined")
    return raw_content(v.r, v.c1.free, v.s)


def is_primitive(v: MukaiVector) -> bool:
    return raw_primitive(v.r, v.c1.free, v.s)


@dataclass(frozen=True)
class ContentReport:
    ell: int
    r_plus_s_mod4: int
    checks: dict


def classify_content(v: MukaiVector) -> ContentReport:
    """Content of a primitive vector, with the parity facts that go with it.

    A primitive vector has ell in {1, 2}; when ell = 2, r, c1 and s are all
    even and r + s = 2 mod 4.  Any violation is an internal error, because
    primitivity rules it out.
    """
    if not is_primitive(v):
        raise PreconditionError(f"{v} is not primitive")
    ell = content(v)
    r, c, s = v.r, v.c1.free, v.s
    checks = {"ell_in_1_2": ell in (1, 2)}
    if ell == 2:
        checks["r_even"] = r % 2 == 0
        checks["c1_even"] = all(x % 2 == 0 for x in c)
        checks["s_even"] = s % 2 == 0
        checks["r_plus_s_2_mod_4"] = (r + s) % 4 == 2
    else:
        checks["gcd_r_c1_2_is_1"] = math.gcd(r, 2, *c) == 1
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise InternalConsistencyError(f"{v}: content checks failed: {', '.join(bad)}")
    return ContentReport(ell, (r + s) % 4, checks)


def central_charge(v: MukaiVector, t, H: NSClass):
    """``Z = <exp(i t H), v>`` split as (real, imaginary) exact rationals."""
    t = Fraction(t)
    if t <= 0:
        raise PreconditionError(f"t must be positive, got {t}")
    hh = H.square()
    if hh <= 0:
        raise PreconditionError(f"H must have positive square, got {hh}")
    re_part = v.r * t * t * hh / 2 + Fraction(v.s, 2)
    im_part = t * ns_pairing(H, v.c1)
    return re_part, im_part


def parity_class(c: NSClass):
    """Free coordinates of c1 mod 2, i.e. the class in NS_f / 2 NS_f."""
    return tuple(x % 2 for x in c.free)


def integer_determinant(m):
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def check_gram():
    """Startup sanity facts about the fixed Gram matrices."""
    return {
        "ns_det": integer_determinant(GRAM),
        "e8_det": integer_determinant(E8_GRAM),
        "diagonal_even": all(GRAM[i][i] % 2 == 0 for i in range(RANK)),
        "symmetric": all(GRAM[i][j] == GRAM[j][i] for i in range(RANK) for j in range(RANK)),
    }


# ---------------------------------------------------------------------------
# Serialisation

def vector_to_dict(v: MukaiVector) -> dict:
    return {"r": v.r, "c1": list(v.c1.free), "s": v.s, "kappa": v.c1.kappa}


def _parse_a(a):
    if isinstance(a, str):
        try:
            q = Fraction(a.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"cannot parse a={a!r}") from None
    elif isinstance(a, (int, float)) and not isinstance(a, bool):
        q = Fraction(a)
    else:
        raise InvalidInputError(f"cannot parse a={a!r}")
    if q.denominator not in (1, 2):
        raise InvalidInputError(f"a must have denominator 1 or 2, got {a!r}")
    return int(-2 * q)


def vector_from_dict(d) -> tuple[MukaiVector, bool]:
    """Decode ``{"r", "c1", "s" | "a", "kappa"?}``.

    Returns the vector and whether kappa was supplied explicitly.
    """
    if not isinstance(d, dict):
        raise InvalidInputError("a vector must be a JSON object")
    try:
        r = d["r"]
        c1 = d.get("c1", [0] * RANK)
    except KeyError as exc:
        raise InvalidInputError(f"missing field {exc}") from None
    if ("s" in d) == ("a" in d):
        raise InvalidInputError("give exactly one of 's' and 'a'")
    s = d["s"] if "s" in d else _parse_a(d["a"])
    if not isinstance(c1, list) or len(c1) != RANK:
        raise InvalidInputError(f"c1 must be a list of {RANK} integers")
    kappa_given = "kappa" in d
    kappa = d.get("kappa", 0)
    return MukaiVector(r, NSClass.from_free([_as_int(x, "c1") for x in c1], kappa), s), kappa_given


_ELLIPSIS = re.compile(r"…|\.\.\.")


def _parse_coords(text):
    text = text.strip()
    if not text:
        return [0] * RANK
    m = _ELLIPSIS.search(text)
    if m is None:
        coords = [int(t) for t in text.split(",")]
    else:
        left = [int(t) for t in text[: m.start()].split(",") if t.strip()]
        right = [int(t) for t in text[m.end():].split(",") if t.strip()]
        if len(left) + len(right) > RANK:
            raise InvalidInputError(f"too many coordinates in {text!r}")
        coords = left + [0] * (RANK - len(left) - len(right)) + right
    if len(coords) != RANK:
        raise InvalidInputError(f"c1 needs {RANK} coordinates, got {len(coords)} in {text!r}")
    return coords


def parse_vector_text(text) -> tuple[MukaiVector, bool]:
    """Decode the bracket form ``[r; d1,d2,e1..e8; s; kappa]``.

    ``kappa`` may be omitted; a run of trailing or interior zeros in c1 may be
    abbreviated with an ellipsis, as in ``[4;1,1,0...;0]``.
    """
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise InvalidInputError(f"expected [r; c1; s; kappa], got {text!r}")
    parts = body[1:-1].split(";")
    if len(parts) not in (3, 4):
        raise InvalidInputError(f"expected 3 or 4 ';'-separated fields, got {len(parts)}")
    try:
        r = int(parts[0])
        coords = _parse_coords(parts[1])
        s = int(parts[2])
        kappa = int(parts[3]) if len(parts) == 4 else 0
    except ValueError as exc:
        raise InvalidInputError(f"bad vector {text!r}: {exc}") from None
    return MukaiVector(r, NSClass.from_free(coords, kappa), s), len(parts) == 4


def parse_vector(text) -> tuple[MukaiVector, bool]:
    """Accept either the JSON object form or the bracket form."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return vector_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"invalid JSON: {exc}") from None
    return parse_vector_text(text)
