"""Continued fractions of sqrt(d) and the norm equations x^2 - d y^2 = N."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

from .errors import BoundOverflow, PerfectSquare, TheoremViolation, Unsolvable
from .quadring import RingCtx, RingElt, conj

log = logging.getLogger(__name__)

# Largest y-range an exhaustive scan may cover before we switch strategy.
DEFAULT_BOUND_CEILING = 10**6
BOUND_CEILING_ENV = "DNQ_BOUND_CEILING"


def bound_ceiling() -> int:
    raw = os.environ.get(BOUND_CEILING_ENV)
    return int(raw) if raw else DEFAULT_BOUND_CEILING


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: tuple[int, ...]


def cf_sqrt(d: int) -> CFExpansion:
    a0 = isqrt(d)
    if a0 * a0 == d:
        raise PerfectSquare(f"{d} is a perfect square")
    P, Q = a0, d - a0 * a0
    start = (P, Q)
    period = []
    while True:
        a = (a0 + P) // Q
        period.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
        if (P, Q) == start:
            return CFExpansion(a0, tuple(period))


def convergents(d: int) -> Iterator[tuple[int, int]]:
    """Yield the convergents p_k/q_k of sqrt(d), k = 0, 1, ..."""
    cf = cf_sqrt(d)
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    yield p, q
    while True:
        for a in cf.period:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
            yield p, q


def fundamental_unit(d: int) -> tuple[int, int, int]:
    """(x, y, norm) for the least y > 0 with x^2 - d y^2 = +-1."""
    length = len(cf_sqrt(d).period)
    for k, (p, q) in enumerate(convergents(d)):
        if k == length - 1:
            return p, q, p * p - d * q * q
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class PellSolutionSet:
    """Class representatives of the solutions of x^2 - d y^2 = N.

    Two solutions share a class when their quotient is a unit of norm +1.
    Each representative has the least |y| in its class and y >= 0.
    ``method`` says how completeness was certified: ``"scan"`` means every
    y in [0, search_bound] was tried; ``"convergents"`` means the first
    ``search_bound`` convergents of sqrt(d) were tried, which is exhaustive
    for |N| < sqrt(d).
    """

    d: int
    N: int
    primitives: tuple[RingElt, ...]
    solvable: bool
    search_bound: int
    method: str

    def certificate(self) -> dict:
        return {"d": str(self.d), "N": str(self.N), "solvable": self.solvable,
                "method": self.method, "search_bound": str(self.search_bound)}

    def to_json(self) -> dict:
        out = self.certificate()
        out["primitives"] = [p.to_json() for p in self.primitives]
        return out


def scan_bound(ctx: RingCtx, N: int) -> int:
    """Every class of solutions has a member with 0 <= y <= this bound.

    With (x1, y1) the fundamental unit of norm +1 the classical bounds are
    y1*sqrt(N/(2(x1+1))) for N > 0 and y1*sqrt(|N|/(2(x1-1))) for N < 0;
    both are at most sqrt(|N|(x1+1)/(2d)).
    """
    x1 = ctx.unit_plus.re
    return isqrt(abs(N) * (x1 + 1) // (2 * ctx.d)) + 1


def _canonical(z: RingElt) -> RingElt:
    if z.im < 0 or (z.im == 0 and z.re < 0):
        return -z
    return z


def _rank(z: RingElt) -> tuple[int, int]:
    return (abs(z.im), -z.re)


def reduce_in_class(ctx: RingCtx, z: RingElt) -> RingElt:
    """Walk z's class (powers of the norm +1 unit, and -1) to its least-|y| member."""
    eps = ctx.unit_plus
    eps_inv = conj(eps)
    best = _canonical(z)
    while True:
        step = min((_canonical(ctx.mul(best, eps)), _canonical(ctx.mul(best, eps_inv))), key=_rank)
        if _rank(step) >= _rank(best):
            return best
        best = step


def same_class(ctx: RingCtx, z: RingElt, w: RingElt) -> bool:
    return ctx.norm(z) == ctx.norm(w) and ctx.divides(w, z)


def _class_reps(ctx: RingCtx, candidates) -> tuple[RingElt, ...]:
    reps: list[RingElt] = []
    for z in sorted({reduce_in_class(ctx, c) for c in candidates},
                    key=lambda z: (z.im, abs(z.re), -z.re)):
        if not any(same_class(ctx, z, r) for r in reps):
            reps.append(z)
    return tuple(reps)


def _solve_by_scan(ctx: RingCtx, N: int, bound: int) -> tuple[RingElt, ...]:
    d = ctx.d
    found = []
    for y in range(bound + 1):
        t = N + d * y * y
        if t < 0:
            continue
        x = isqrt(t)
        if x * x == t:
            found.append(RingElt(x, y))
            found.append(RingElt(-x, y))
    return _class_reps(ctx, found)


def _solve_by_convergents(ctx: RingCtx, N: int) -> tuple[tuple[RingElt, ...], int]:
    d = ctx.d
    length = len(cf_sqrt(d).period)
    # index span after which the convergents repeat up to the norm +1 unit
    span = length if length % 2 == 0 else 2 * length
    n_terms = 2 * span + 2
    targets = {}
    f = 1
    while f * f <= abs(N):
        if N % (f * f) == 0:
            targets[N // (f * f)] = f
        f += 1
    found = []
    for k, (p, q) in enumerate(convergents(d)):
        if k >= n_terms:
            break
        f = targets.get(p * p - d * q * q)
        if f is not None:
            found.append(RingElt(f * p, f * q))
            found.append(RingElt(-f * p, f * q))
    return _class_reps(ctx, found), n_terms


def solve_norm(ctx: RingCtx, N: int, ceiling: int | None = None) -> PellSolutionSet:
    if N == 0:
        raise ValueError("N must be nonzero")

    def compute():
        limit = bound_ceiling() if ceiling is None else ceiling
        bound = scan_bound(ctx, N)
        if bound <= limit:
            reps = _solve_by_scan(ctx, N, bound)
            return PellSolutionSet(ctx.d, N, reps, bool(reps), bound, "scan")
        if N * N < ctx.d:
            reps, n_terms = _solve_by_convergents(ctx, N)
            return PellSolutionSet(ctx.d, N, reps, bool(reps), n_terms, "convergents")
        raise BoundOverflow(f"d = {ctx.d}, N = {N}: scan bound {bound} exceeds ceiling {limit}")

    return ctx.cached(("norm", N), compute)


def enumerate_norm(ctx: RingCtx, N: int, count: int) -> list[RingElt]:
    """First ``count`` elements of norm N with x > 0, ordered by |y| then |x|.

    Each class representative is multiplied by nonnegative powers of the
    norm +1 fundamental unit.
    """
    sols = solve_norm(ctx, N)
    if not sols.solvable:
        raise Unsolvable(f"x^2 - {ctx.d} y^2 = {N} has no solutions")
    eps = ctx.unit_plus
    pool = set()
    for z in sols.primitives:
        for _ in range(count + 1):
            pool.add(z if z.re > 0 or (z.re == 0 and z.im > 0) else -z)
            z = ctx.mul(z, eps)
    return sorted(pool, key=lambda z: (abs(z.im), abs(z.re), -z.im))[:count]


def iter_norm(ctx: RingCtx, N: int) -> Iterator[RingElt]:
    """Unbounded version of ``enumerate_norm``; yields in the same order."""
    batch = 8
    done = 0
    while True:
        elems = enumerate_norm(ctx, N, batch)
        yield from elems[done:]
        done = len(elems)
        batch *= 2


@dataclass(frozen=True)
class HypothesisReport:
    d: int
    norm_minus_one: bool
    norm_six: bool
    norm_minus_six: bool
    d_mod_48: int

    @property
    def holds(self) -> bool:
        return self.norm_minus_one and self.norm_six

    def to_json(self) -> dict:
        return {"d": str(self.d), "norm_minus_one": self.norm_minus_one,
                "norm_six": self.norm_six, "norm_minus_six": self.norm_minus_six,
                "d_mod_48": self.d_mod_48, "hypothesis_holds": self.holds}


def hypothesis_check(ctx: RingCtx) -> HypothesisReport:
    """Decide solvability of norms -1, 6, -6 and check the consequences.

    When norms -1 and 6 both occur, d must be 10 mod 48 and norm -6 must
    occur too; anything else raises ``TheoremViolation``.
    """

    def compute():
        report = HypothesisReport(
            ctx.d,
            solve_norm(ctx, -1).solvable,
            solve_norm(ctx, 6).solvable,
            solve_norm(ctx, -6).solvable,
            ctx.d % 48,
        )
        if report.holds and (report.d_mod_48 != 10 or not report.norm_minus_six):
            raise TheoremViolation(f"d = {ctx.d}: {report}")
        return report

    return ctx.cached("hypothesis", compute)
