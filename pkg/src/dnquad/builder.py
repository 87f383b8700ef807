"""D(n)-quadruples {a, b, a+b+2r, a+4b+4r} in Z[sqrt(d)].

With ab + n = r^2, three of the six pair conditions hold identically:

    a(a+b+2r) + n = (a+r)^2
    b(a+b+2r) + n = (b+r)^2
    b(a+4b+4r) + n = (2b+r)^2

and a(a+4b+4r) + n = (a+2r)^2 - 3n is a square alpha^2 exactly when
3n = alpha1*alpha2 with alpha1 + alpha2 = 2(a + 2r).  So a factorization of
3n plus a seed ``a`` of norm +-1 fixes r, and then b = (r^2 - n)/a.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from . import pell
from .errors import (
    Degenerate,
    MissingAux,
    NonIntegralFormula,
    ParityFailure,
    RetriesExhausted,
    SClassNoQuadruple,
    UncoveredClass,
    Unsolvable,
    VerificationFailure,
    ZeroScalar,
)
from .quadring import (
    ONE,
    ClassTag,
    RingCtx,
    RingElt,
    classify_mod4,
    conj,
    is_square,
    normalize_sign,
    require_nonzero,
)

PAIRS = tuple(itertools.combinations(range(4), 2))
DEFAULT_RETRY_CAP = 64


@dataclass(frozen=True)
class Factorization:
    alpha1: RingElt
    alpha2: RingElt
    required_seed_norm: int
    case_id: int


@dataclass(frozen=True)
class Quadruple:
    d: int
    n: RingElt
    elements: tuple[RingElt, RingElt, RingElt, RingElt]
    seed: RingElt
    r: RingElt
    roots: tuple[RingElt, ...]      # canonical square roots, in PAIRS order
    case_id: int
    seed_index: int = -1
    scale: RingElt = ONE

    def root(self, i: int, j: int) -> RingElt:
        return self.roots[PAIRS.index((i, j))]

    @property
    def b(self) -> RingElt:
        return self.elements[1]

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "n": self.n.to_json(),
            "elements": [e.to_json() for e in self.elements],
            "seed_index": self.seed_index,
            "case_id": self.case_id,
            "seed": self.seed.to_json(),
            "r": self.r.to_json(),
            "scale": self.scale.to_json(),
            "roots": [{"pair": list(p), "root": rt.to_json()} for p, rt in zip(PAIRS, self.roots)],
        }


@dataclass
class VerifyReport:
    ok: bool
    roots: dict = field(default_factory=dict)   # pair -> canonical root, or None
    failing: list = field(default_factory=list)
    nonzero: bool = True
    distinct: bool = True

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "nonzero": self.nonzero,
            "distinct": self.distinct,
            "failing_pairs": [list(p) for p in self.failing],
            "roots": [{"pair": list(p), "root": None if rt is None else rt.to_json()}
                      for p, rt in self.roots.items()],
        }


def verify(ctx: RingCtx, n: RingElt, elems) -> VerifyReport:
    elems = list(elems)
    report = VerifyReport(ok=True)
    report.nonzero = not any(e.is_zero() for e in elems)
    report.distinct = len(set(elems)) == len(elems)
    for i, j in PAIRS:
        root = is_square(ctx, ctx.mul(elems[i], elems[j]) + n)
        report.roots[(i, j)] = root
        if root is None:
            report.failing.append((i, j))
    report.ok = report.nonzero and report.distinct and not report.failing
    return report


# --- auxiliary elements and seeds ------------------------------------------

def normalize_seed(a: RingElt, seed_norm: int) -> RingElt:
    """Map a norm +-1 seed onto the (6a1+1, 6b1) or (6a1+3, 6b1+1) branch."""
    if seed_norm == 1 and a.re % 6 == 5:
        return -a
    if seed_norm == -1 and a.im % 6 == 5:
        return -a
    return a


def norm_minus_one_aux(ctx: RingCtx) -> RingElt:
    try:
        u = pell.enumerate_norm(ctx, -1, 1)[0]
    except Unsolvable:
        raise MissingAux(f"d = {ctx.d}: no element of norm -1") from None
    return normalize_seed(u, -1)


def norm_six_aux(ctx: RingCtx) -> RingElt:
    """Smallest norm 6 element, signs chosen to give the form (12M+4, 6N+1)."""
    try:
        v = pell.enumerate_norm(ctx, 6, 1)[0]
    except Unsolvable:
        raise MissingAux(f"d = {ctx.d}: no element of norm 6") from None
    x, y = v.re, v.im
    if x % 12 == 8:
        x = -x
    if y % 6 == 5:
        y = -y
    return RingElt(x, y)


def _half(x: RingElt, what: str) -> RingElt:
    if x.re % 2 or x.im % 2:
        raise ParityFailure(f"{what} = {x} is not divisible by 2")
    return RingElt(x.re // 2, x.im // 2)


def pick_factorization(ctx: RingCtx, tag: ClassTag, aux: Optional[RingElt] = None) -> Factorization:
    if tag.kind == "S":
        raise SClassNoQuadruple(f"n in S-class {tag.label}: no D(n)-quadruple exists")
    case = tag.case_id
    if case is None:
        raise UncoveredClass(f"class {tag.label} is not covered by the construction")
    n = tag.n
    if case in (1, 2):
        u = aux if aux is not None else norm_minus_one_aux(ctx)
        # 3n = (-3) * (-1) * n and -1 = u * conj(u)
        return Factorization(conj(u).scale(-3), ctx.mul(u, n), 1 if case == 1 else -1, case)
    if case in (3, 4):
        return Factorization(RingElt(3), n, 1 if case == 3 else -1, case)
    v = aux if aux is not None else norm_six_aux(ctx)
    # 3n = 6 * (2m+1, 2k+1) and 6 = v * conj(v)
    half_n = RingElt(2 * tag.m + 1, 2 * tag.k + 1)
    return Factorization(conj(v), ctx.mul(v, half_n), 1 if tag.m % 2 == 0 else -1, 5)


def lemma21_engine(ctx: RingCtx, n: RingElt, fact: Factorization, a: RingElt) -> Quadruple:
    seed_norm = ctx.norm(a)
    if seed_norm != fact.required_seed_norm:
        raise ValueError(f"seed {a} has norm {seed_norm}, need {fact.required_seed_norm}")
    a_plus_2r = _half(fact.alpha1 + fact.alpha2, "(alpha1 + alpha2)/2")
    r = _half(a_plus_2r - a, "r")
    # 1/a = seed_norm * conj(a)
    b = ctx.mul(ctx.square(r) - n, conj(a)).scale(seed_norm)
    elems = (a, b, a + b + r.scale(2), a + b.scale(4) + r.scale(4))
    if any(e.is_zero() for e in elems) or len(set(elems)) < 4:
        raise Degenerate(f"seed {a} gives zero or repeated elements {elems}")

    alpha = _half(fact.alpha1 - fact.alpha2, "alpha")
    if ctx.square(a_plus_2r) - n.scale(3) != ctx.square(alpha):
        raise VerificationFailure("(a + 2r)^2 - 3n != alpha^2")
    report = verify(ctx, n, elems)
    if not report.ok:
        raise VerificationFailure(f"pairs {report.failing} fail for {elems}, n = {n}")
    return Quadruple(ctx.d, n, elems, a, r, tuple(report.roots[p] for p in PAIRS), fact.case_id)


# --- explicit closed forms --------------------------------------------------

def seed_params(a: RingElt, seed_norm: int) -> tuple[int, int]:
    """(a1, b1) with a = (6a1+1, 6b1) for norm +1, (6a1+3, 6b1+1) for norm -1."""
    off_re, off_im = (1, 0) if seed_norm == 1 else (3, 1)
    if (a.re - off_re) % 6 or (a.im - off_im) % 6:
        raise NonIntegralFormula(f"seed {a} is not sign-normalized for norm {seed_norm}")
    return (a.re - off_re) // 6, (a.im - off_im) // 6


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegralFormula(f"{what} = {x} is not an integer")
    return int(x)


def closed_form(ctx: RingCtx, case_id: int, m: int, k: int, a1: int, b1: int, *,
                alpha: int | None = None, beta: int | None = None,
                M: int | None = None, N: int | None = None) -> tuple[RingElt, RingElt]:
    """(r, b) from the explicit per-case formulas.

    ``alpha, beta`` describe the norm -1 element (2alpha+1, 2beta+1) of
    cases 1-2; ``M, N`` the norm 6 element (12M+4, 6N+1) of case 5; ``a1, b1``
    the seed.  Computed over the rationals so that every halving is checked.
    """
    d = Fraction(ctx.d)
    half = Fraction(1, 2)
    m, k = Fraction(m), Fraction(k)
    if case_id == 1:
        R = m * (2 * alpha + 1) + k * d * (2 * beta + 1) - alpha - 1 - 3 * a1
        I = m * (2 * beta + 1) + k * (2 * alpha + 1) + 2 * beta + 1 - 3 * b1
        n_re, n_im = 4 * m + 1, 4 * k
        inv_a = (6 * a1 + 1, -6 * b1)
    elif case_id == 2:
        R = 2 * m * alpha - alpha + m - 2 - 3 * a1 + (d / 2) * (4 * beta * k + 2 * beta + 2 * k + 1)
        I = 2 * alpha * k + alpha + k + 1 - 3 * b1 + 2 * m * beta + 2 * beta + m
        n_re, n_im = 4 * m + 1, 4 * k + 2
        inv_a = (-6 * a1 - 3, 6 * b1 + 1)
    elif case_id == 3:
        R, I = m + 1 - 3 * a1, k - 3 * b1
        n_re, n_im = 4 * m + 3, 4 * k
        inv_a = (6 * a1 + 1, -6 * b1)
    elif case_id == 4:
        R, I = m - 3 * a1, k - 3 * b1
        n_re, n_im = 4 * m + 3, 4 * k + 2
        inv_a = (-6 * a1 - 3, 6 * b1 + 1)
    elif case_id == 5:
        R = 6 * M * m + 6 * M + 2 * m + 2 + (d / 2) * (6 * N * k + 3 * N + k) - 3 * a1
        I = 6 * M * k + 3 * M + 2 * k + 1 + 3 * N * m + m / 2 - 3 * b1
        if m % 2 == 0:
            R += half * (d / 2 - 1)
            inv_a = (6 * a1 + 1, -6 * b1)
        else:
            R += half * (d / 2 - 3)
            I -= half
            inv_a = (-6 * a1 - 3, 6 * b1 + 1)
        n_re, n_im = 4 * m + 2, 4 * k + 2
    else:
        raise ValueError(f"unknown case {case_id}")

    r = RingElt(_integral(R, "r.re"), _integral(I, "r.im"))
    c = RingElt(_integral(R * R + d * I * I - n_re, "b factor re"),
                _integral(2 * R * I - n_im, "b factor im"))
    return r, ctx.mul(c, RingElt(*inv_a))


def closed_form_for(ctx: RingCtx, q: Quadruple, fact_aux: Optional[RingElt] = None) -> tuple[RingElt, RingElt]:
    """Evaluate ``closed_form`` on the parameters that produced ``q``."""
    tag = classify_mod4(q.n)
    seed_norm = ctx.norm(q.seed)
    a1, b1 = seed_params(q.seed, seed_norm)
    extra = {}
    if q.case_id in (1, 2):
        u = fact_aux if fact_aux is not None else norm_minus_one_aux(ctx)
        extra = {"alpha": (u.re - 1) // 2, "beta": (u.im - 1) // 2}
    elif q.case_id == 5:
        v = fact_aux if fact_aux is not None else norm_six_aux(ctx)
        if (v.re - 4) % 12 or (v.im - 1) % 6:
            raise NonIntegralFormula(f"norm 6 element {v} is not of the form (12M+4, 6N+1)")
        extra = {"M": (v.re - 4) // 12, "N": (v.im - 1) // 6}
    return closed_form(ctx, q.case_id, tag.m, tag.k, a1, b1, **extra)


# --- driver -----------------------------------------------------------------

def construct(ctx: RingCtx, n: RingElt, seed_index: int = 0,
              retry_cap: int = DEFAULT_RETRY_CAP) -> Quadruple:
    """Deterministic D(n)-quadruple from the ``seed_index``-th seed onward.

    Seeds are the elements of norm +-1 in ``pell.enumerate_norm`` order;
    degenerate seeds are skipped, at most ``retry_cap`` times.
    """
    require_nonzero(n)
    tag = classify_mod4(n)
    if tag.kind == "S":
        raise SClassNoQuadruple(f"n = {n} lies in S-class {tag.label}")
    if tag.offsets == (0, 0):
        inner_n = RingElt(tag.m, tag.k)
        try:
            inner = construct(ctx, inner_n, seed_index, retry_cap)
        except (SClassNoQuadruple, UncoveredClass) as exc:
            raise UncoveredClass(f"n = {n} = 4*{inner_n} and {inner_n} is not covered: {exc}") from None
        return scale_quadruple(ctx, inner, RingElt(2))
    fact = pick_factorization(ctx, tag)
    try:
        seeds = pell.iter_norm(ctx, fact.required_seed_norm)
        seeds = itertools.islice(seeds, seed_index, seed_index + retry_cap)
        for i, a in enumerate(seeds, start=seed_index):
            try:
                q = lemma21_engine(ctx, n, fact, normalize_seed(a, fact.required_seed_norm))
            except Degenerate:
                continue
            return replace(q, seed_index=i)
    except Unsolvable:
        raise MissingAux(f"d = {ctx.d}: no seed of norm {fact.required_seed_norm}") from None
    raise RetriesExhausted(f"no nondegenerate seed in indices {seed_index}..{seed_index + retry_cap - 1}")


def scale_quadruple(ctx: RingCtx, q: Quadruple, w: RingElt) -> Quadruple:
    if w.is_zero():
        raise ZeroScalar("cannot scale by 0")
    elems = tuple(ctx.mul(w, e) for e in q.elements)
    n = ctx.mul(ctx.square(w), q.n)
    roots = tuple(normalize_sign(ctx.mul(w, rt)) for rt in q.roots)
    report = verify(ctx, n, elems)
    if not report.ok or tuple(report.roots[p] for p in PAIRS) != roots:
        raise VerificationFailure(f"scaled quadruple fails for w = {w}")
    return replace(q, n=n, elements=elems, seed=ctx.mul(w, q.seed), r=ctx.mul(w, q.r),
                   roots=roots, scale=ctx.mul(q.scale, w))
