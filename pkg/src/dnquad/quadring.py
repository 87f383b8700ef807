"""Exact arithmetic in Z[sqrt(d)] for square-free d = 2 (mod 4).

Elements are plain integer pairs ``RingElt(re, im)`` standing for
``re + im*sqrt(d)``.  They do not know ``d``; anything that needs it
(multiplication, norms, division, square roots) goes through a ``RingCtx``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional

from .errors import (
    DivisionByZeroNorm,
    FormViolation,
    HypothesisFailed,
    InvalidRadicand,
    NotASquare,
    NotDivisible,
    NotSquareFree,
    OutOfScopeNorm,
    WrongResidue,
    ZeroN,
)


@dataclass(frozen=True, slots=True)
class RingElt:
    re: int
    im: int = 0

    def __add__(self, other: RingElt) -> RingElt:
        return RingElt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: RingElt) -> RingElt:
        return RingElt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> RingElt:
        return RingElt(-self.re, -self.im)

    def scale(self, c: int) -> RingElt:
        """Multiply by a rational integer."""
        return RingElt(c * self.re, c * self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def as_tuple(self) -> tuple[int, int]:
        return (self.re, self.im)

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> RingElt:
        return cls(int(obj["re"]), int(obj["im"]))

    def __repr__(self) -> str:
        return f"RingElt({self.re}, {self.im})"


ZERO = RingElt(0, 0)
ONE = RingElt(1, 0)


def _as_elt(x) -> RingElt:
    if isinstance(x, RingElt):
        return x
    if isinstance(x, int):
        return RingElt(x, 0)
    re, im = x
    return RingElt(int(re), int(im))


def is_square_free(d: int) -> bool:
    """Trial division up to the cube root, then a square test on the cofactor."""
    if d <= 0:
        raise ValueError("d must be positive")
    c = d
    p = 2
    while p * p * p <= d:
        if c % p == 0:
            c //= p
            if c % p == 0:
                return False
        p += 1 if p == 2 else 2
    # c has no prime factor <= cbrt(d): it is 1, a prime, or a product of two
    # primes, so it is square-free unless it is a perfect square.
    r = isqrt(c)
    return c == 1 or r * r != c


@dataclass(eq=False)
class RingCtx:
    """The ring Z[sqrt(d)] together with its fundamental unit.

    ``fund_unit`` is the solution of x^2 - d y^2 = +-1 with least y > 0 and
    ``unit_norm`` its norm.  ``cache`` holds solved norm equations keyed by
    the target norm; fills are idempotent so concurrent readers are safe.
    """

    d: int
    fund_unit: RingElt
    unit_norm: int
    cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def unit_plus(self) -> RingElt:
        """Fundamental unit of norm +1."""
        if self.unit_norm == 1:
            return self.fund_unit
        return self.mul(self.fund_unit, self.fund_unit)

    def cached(self, key, compute):
        try:
            return self.cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self.cache.setdefault(key, value)

    # ring operations needing d
    def mul(self, x: RingElt, y: RingElt) -> RingElt:
        return RingElt(x.re * y.re + self.d * x.im * y.im, x.re * y.im + x.im * y.re)

    def square(self, x: RingElt) -> RingElt:
        return self.mul(x, x)

    def power(self, x: RingElt, e: int) -> RingElt:
        if e < 0:
            return self.power(self.divexact(ONE, x), -e)
        result, base = ONE, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def norm(self, x: RingElt) -> int:
        return x.re * x.re - self.d * x.im * x.im

    def divexact(self, num: RingElt, den: RingElt) -> RingElt:
        nd = self.norm(den)
        if nd == 0:
            raise DivisionByZeroNorm(f"{den} has norm 0")
        t = self.mul(num, conj(den))
        if t.re % nd or t.im % nd:
            raise NotDivisible(f"{den} does not divide {num} in Z[sqrt({self.d})]")
        return RingElt(t.re // nd, t.im // nd)

    def divides(self, den: RingElt, num: RingElt) -> bool:
        try:
            self.divexact(num, den)
        except NotDivisible:
            return False
        return True

    def sqrt(self, x: RingElt) -> RingElt:
        return sqrt_in_ring(self, x)

    def pretty(self, x: RingElt) -> str:
        if x.im == 0:
            return str(x.re)
        sign = "-" if x.im < 0 else "+"
        return f"{x.re} {sign} {abs(x.im)}√{self.d}"


def make_ctx(d: int) -> RingCtx:
    d = int(d)
    if d <= 0:
        raise InvalidRadicand(f"d must be positive, got {d}")
    if not is_square_free(d):
        raise NotSquareFree(f"d = {d} is not square-free")
    if d % 4 != 2:
        raise WrongResidue(f"d = {d} is not 2 mod 4")
    from .pell import fundamental_unit

    x, y, nu = fundamental_unit(d)
    return RingCtx(d, RingElt(x, y), nu)


# Module-level spellings of the ring operations.

def add(x: RingElt, y: RingElt) -> RingElt:
    return x + y


def sub(x: RingElt, y: RingElt) -> RingElt:
    return x - y


def neg(x: RingElt) -> RingElt:
    return -x


def mul(ctx: RingCtx, x: RingElt, y: RingElt) -> RingElt:
    return ctx.mul(x, y)


def conj(x: RingElt) -> RingElt:
    return RingElt(x.re, -x.im)


def norm(ctx: RingCtx, x: RingElt) -> int:
    return ctx.norm(x)


def divexact(ctx: RingCtx, num: RingElt, den: RingElt) -> RingElt:
    return ctx.divexact(num, den)


def normalize_sign(x: RingElt) -> RingElt:
    """Pick the representative of {x, -x} with re > 0, or re = 0 and im >= 0."""
    if x.re < 0 or (x.re == 0 and x.im < 0):
        return -x
    return x


def sqrt_in_ring(ctx: RingCtx, x: RingElt) -> RingElt:
    """Square root of ``x`` in Z[sqrt(d)], normalized by ``normalize_sign``.

    If (u + v sqrt d)^2 = A + B sqrt d then u^2 - d v^2 = +-sqrt(Nm x) and
    u^2 + d v^2 = A, which pins down u^2 and v^2 directly.
    """
    A, B = x.re, x.im
    if A < 0:
        raise NotASquare(f"{x}: negative rational part")
    if A == 0 and B == 0:
        return ZERO
    if B & 1:
        raise NotASquare(f"{x}: odd sqrt(d)-coefficient")
    nx = A * A - ctx.d * B * B
    if nx < 0:
        raise NotASquare(f"{x}: negative norm")
    s = isqrt(nx)
    if s * s != nx:
        raise NotASquare(f"{x}: norm is not a square")
    for t in (s, -s):
        if (A + t) & 1:
            continue
        u2, dv2 = (A + t) // 2, (A - t) // 2
        if u2 < 0 or dv2 < 0 or dv2 % ctx.d:
            continue
        u, v = isqrt(u2), isqrt(dv2 // ctx.d)
        if u * u != u2 or v * v * ctx.d != dv2:
            continue
        if u == 0:
            if B != 0:
                continue
        elif B < 0:
            v = -v
        if 2 * u * v == B:
            return normalize_sign(RingElt(u, v))
    raise NotASquare(f"{x} is not a square in Z[sqrt({ctx.d})]")


def is_square(ctx: RingCtx, x: RingElt) -> Optional[RingElt]:
    try:
        return sqrt_in_ring(ctx, x)
    except NotASquare:
        return None


# --- residue classes of n modulo (4, 4) ------------------------------------

S_OFFSETS = frozenset({
    (0, 1), (0, 2), (0, 3), (1, 1), (1, 3), (2, 1), (2, 3), (3, 1), (3, 3),
})
T_OFFSETS = frozenset({
    (0, 0), (1, 0), (1, 2), (2, 0), (2, 2), (3, 0), (3, 2),
})
# T-classes handled directly by the five-case construction.
CASE_OF_OFFSET = {(1, 0): 1, (1, 2): 2, (3, 0): 3, (3, 2): 4, (2, 2): 5}


@dataclass(frozen=True)
class ClassTag:
    """n = (4m + c1, 4k + c2) with offsets c1, c2 in {0, 1, 2, 3}."""

    c1: int
    c2: int
    m: int
    k: int

    @property
    def offsets(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    @property
    def kind(self) -> str:
        return "S" if self.offsets in S_OFFSETS else "T"

    @property
    def case_id(self) -> Optional[int]:
        return CASE_OF_OFFSET.get(self.offsets)

    @property
    def n(self) -> RingElt:
        return RingElt(4 * self.m + self.c1, 4 * self.k + self.c2)

    @property
    def label(self) -> str:
        re_part = "4m" + (f"+{self.c1}" if self.c1 else "")
        im_part = "4k" + (f"+{self.c2}" if self.c2 else "")
        return f"({re_part}, {im_part})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "class": self.label, "c1": self.c1, "c2": self.c2,
                "m": str(self.m), "k": str(self.k), "case": self.case_id}


def classify_mod4(n: RingElt) -> ClassTag:
    n = _as_elt(n)
    return ClassTag(n.re % 4, n.im % 4, n.re // 4, n.im // 4)


def require_nonzero(n: RingElt) -> RingElt:
    if n.is_zero():
        raise ZeroN("n must be nonzero")
    return n


# --- residue forms of elements of norm +-1, +-6 ----------------------------

UNIT_PLUS = "UnitPlus"          # (6a +- 1, 6b)
UNIT_MINUS = "UnitMinus"        # (6a +- 3, 6b +- 1)
NORM_SIX = "NormSix"            # (12a +- 4, 6b +- 1)
NORM_MINUS_SIX = "NormMinusSix"  # (12a +- 2, 6b +- 1)

_FORM_SHAPE = {
    # kind: (norm, re modulus, re offset, im modulus, im offset)
    UNIT_PLUS: (1, 6, 1, 6, 0),
    UNIT_MINUS: (-1, 6, 3, 6, 1),
    NORM_SIX: (6, 12, 4, 6, 1),
    NORM_MINUS_SIX: (-6, 12, 2, 6, 1),
}
_KIND_OF_NORM = {v[0]: k for k, v in _FORM_SHAPE.items()}


@dataclass(frozen=True)
class NormForm:
    """``element == (re_mod*a + re_sign*re_off, im_mod*b + im_sign*im_off)``."""

    kind: str
    a: int
    b: int
    re_sign: int
    im_sign: int

    def element(self) -> RingElt:
        _, rm, ro, im_m, io = _FORM_SHAPE[self.kind]
        return RingElt(rm * self.a + self.re_sign * ro, im_m * self.b + self.im_sign * io)


def _split(value: int, modulus: int, offset: int) -> Optional[tuple[int, int]]:
    # Prefer the + branch when both apply (offset 0, or offset = modulus/2).
    for sign in (1, -1):
        if (value - sign * offset) % modulus == 0:
            return (value - sign * offset) // modulus, sign
    return None


def norm_form_classify(ctx: RingCtx, x: RingElt) -> NormForm:
    from .pell import hypothesis_check

    nx = ctx.norm(x)
    kind = _KIND_OF_NORM.get(nx)
    if kind is None:
        raise OutOfScopeNorm(f"norm {nx} is not one of +-1, +-6")
    if not hypothesis_check(ctx).holds:
        raise HypothesisFailed(f"d = {ctx.d}: norm -1 or norm 6 is not solvable")
    _, rm, ro, im_m, io = _FORM_SHAPE[kind]
    re_part = _split(x.re, rm, ro)
    im_part = _split(x.im, im_m, io)
    if re_part is None or im_part is None:
        raise FormViolation(f"{x} of norm {nx} is not of the form required for {kind} (d = {ctx.d})")
    return NormForm(kind, re_part[0], im_part[0], re_part[1], im_part[1])
