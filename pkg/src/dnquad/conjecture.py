"""Counterexamples: n with a D(n)-quadruple that is not a difference of two squares."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from sympy import divisors

from . import pell
from .builder import Quadruple, construct, verify
from .errors import BoundOverflow, HypothesisFailed, NotAWitness, TheoremViolation
from .primes import is_prime
from .quadring import RingCtx, RingElt, classify_mod4, conj, make_ctx, require_nonzero

log = logging.getLogger(__name__)

DEFAULT_DIFF_BOUND = 10**4
# Norms above this are not factored when searching for a witness.
MAX_FACTOR_NORM = 10**24

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass
class DiffSquares:
    """Three-valued answer to "is n = alpha^2 - beta^2 in Z[sqrt d]?"."""

    status: str
    witness: Optional[tuple[RingElt, RingElt]] = None
    certificates: list = field(default_factory=list)
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason,
               "certificates": list(self.certificates)}
        if self.witness is not None:
            out["alpha"], out["beta"] = (w.to_json() for w in self.witness)
        return out


def _orbit(ctx: RingCtx, z: RingElt, limit: int) -> Iterator[RingElt]:
    """Members +-z*eps^j of z's class with both components at most ``limit``."""
    eps = ctx.unit_plus
    for w, step in ((z, eps), (ctx.mul(z, conj(eps)), conj(eps))):
        while abs(w.im) <= limit:
            if abs(w.re) <= limit:
                yield w
                yield -w
            w = ctx.mul(w, step)


def find_diff_squares(ctx: RingCtx, n: RingElt, bound: int = DEFAULT_DIFF_BOUND):
    """Search alpha, beta with components <= bound and alpha^2 - beta^2 = n.

    Every such pair gives a factorization n = gamma*delta with
    gamma = alpha - beta, delta = alpha + beta; gamma is enumerated through
    the norm equations x^2 - d y^2 = +-g for the divisors g of Nm(n).
    Returns (witness or None, complete) where ``complete`` is False if part
    of the search space could not be covered.
    """
    nn = abs(ctx.norm(n))
    if nn > MAX_FACTOR_NORM:
        return None, False
    complete = True
    for g in divisors(nn):
        for sign in (1, -1):
            try:
                sols = pell.solve_norm(ctx, sign * g)
            except BoundOverflow:
                complete = False
                continue
            for p in sols.primitives:
                for gamma in _orbit(ctx, p, 2 * bound):
                    if not ctx.divides(gamma, n):
                        continue
                    delta = ctx.divexact(n, gamma)
                    s, t = delta + gamma, delta - gamma
                    if s.re % 2 or s.im % 2:
                        continue
                    alpha = RingElt(s.re // 2, s.im // 2)
                    beta = RingElt(t.re // 2, t.im // 2)
                    if max(abs(alpha.re), abs(alpha.im), abs(beta.re), abs(beta.im)) <= bound:
                        return (alpha, beta), complete
    return None, complete


def representable_diff_squares(ctx: RingCtx, n: RingElt, bound: int = DEFAULT_DIFF_BOUND) -> DiffSquares:
    require_nonzero(n)
    tag = classify_mod4(n)
    if tag.offsets in ((2, 0), (2, 2)):
        # decided by solvability of x^2 - d y^2 = +-2
        try:
            s2, sm2 = pell.solve_norm(ctx, 2), pell.solve_norm(ctx, -2)
        except BoundOverflow as exc:
            return DiffSquares(UNKNOWN, reason=str(exc))
        certs = [s2.certificate(), sm2.certificate()]
        if not (s2.solvable or sm2.solvable):
            return DiffSquares(NO, certificates=certs,
                               reason=f"class {tag.label} and x^2 - {ctx.d} y^2 = +-2 unsolvable")
        witness, _ = find_diff_squares(ctx, n, bound)
        return DiffSquares(YES, witness, certs, reason="x^2 - d y^2 = +-2 solvable")
    witness, complete = find_diff_squares(ctx, n, bound)
    if witness is not None:
        return DiffSquares(YES, witness, reason="explicit witness")
    scope = "exhausted" if complete else "partially searched"
    return DiffSquares(UNKNOWN, reason=f"components up to {bound} {scope}")


def norm_pm2_impossible(ctx: RingCtx) -> dict:
    if not pell.hypothesis_check(ctx).holds:
        raise HypothesisFailed(f"d = {ctx.d} lacks a norm -1 or norm 6 element")
    s2, sm2 = pell.solve_norm(ctx, 2), pell.solve_norm(ctx, -2)
    if s2.solvable or sm2.solvable:
        raise TheoremViolation(f"d = {ctx.d} has an element of norm +-2: {s2.primitives or sm2.primitives}")
    return {"d": str(ctx.d), "norm_2": s2.certificate(), "norm_minus_2": sm2.certificate()}


# --- prime witnesses ----------------------------------------------------------

def iter_prime_witnesses(ctx: RingCtx, x_max: Optional[int] = None) -> Iterator[tuple[int, int, int]]:
    """(m, k, p) with (2m+1)^2 - d(2k+1)^2 = p prime, p = 3 mod 4; by x, then y."""
    d = ctx.d
    x = 1
    while x_max is None or x <= x_max:
        y = 1
        while d * y * y < x * x:
            p = x * x - d * y * y
            if p % 4 == 3 and is_prime(p):
                yield (x - 1) // 2, (y - 1) // 2, p
            y += 2
        x += 2


def prime_witness_search(ctx: RingCtx, x_max: int) -> list[tuple[int, int, int]]:
    return list(iter_prime_witnesses(ctx, x_max))


@dataclass
class CounterexampleRecord:
    d: int
    n: RingElt
    witness: tuple[int, int, int]
    nonrep_cert: dict
    representable: DiffSquares
    quadruple: Quadruple

    def to_json(self) -> dict:
        m, k, p = self.witness
        return {
            "d": str(self.d),
            "n": self.n.to_json(),
            "witness": {"m": str(m), "k": str(k), "p": str(p)},
            "nonrep_cert": self.nonrep_cert,
            "representable": self.representable.to_json(),
            "quadruple": self.quadruple.to_json(),
        }


def make_counterexample(ctx: RingCtx, m: int, k: int) -> CounterexampleRecord:
    p = (2 * m + 1) ** 2 - ctx.d * (2 * k + 1) ** 2
    if p <= 0 or p % 4 != 3 or not is_prime(p):
        raise NotAWitness(f"(2m+1)^2 - d(2k+1)^2 = {p} is not a prime = 3 mod 4")
    n = RingElt(4 * m + 2, 4 * k + 2)
    cert = norm_pm2_impossible(ctx)
    rep = representable_diff_squares(ctx, n)
    if rep.status != NO:
        raise TheoremViolation(f"n = {n} judged {rep.status} despite no norm +-2 elements")
    q = construct(ctx, n)
    if not verify(ctx, n, q.elements).ok:
        raise TheoremViolation(f"constructed quadruple for n = {n} fails verification")
    return CounterexampleRecord(ctx.d, n, (m, k, p), cert, rep, q)


def iter_counterexamples(ctx: RingCtx, x_max: Optional[int] = None) -> Iterator[CounterexampleRecord]:
    for m, k, _ in iter_prime_witnesses(ctx, x_max):
        yield make_counterexample(ctx, m, k)


# --- radicands from the family d = 2(24l'(3l' +- 2) + 5) ---------------------

@dataclass(frozen=True)
class DCandidate:
    lprime: int
    sign: int
    l: int
    p: int
    d: int
    witness6: RingElt
    norm_minus_one: bool
    norm_six: bool

    @property
    def verified(self) -> bool:
        return self.norm_minus_one and self.norm_six

    def to_json(self) -> dict:
        return {"lprime": str(self.lprime), "sign": "+" if self.sign > 0 else "-",
                "l": str(self.l), "p": str(self.p), "d": str(self.d),
                "witness6": self.witness6.to_json(),
                "norm_minus_one": self.norm_minus_one, "norm_six": self.norm_six}


def hunt_d(lprime_max: int) -> list[DCandidate]:
    """Radicands d = 2p, p = 24l'(3l' +- 2) + 5 prime, with norms -1 and 6 verified."""
    out: dict[int, DCandidate] = {}
    for lp in range(lprime_max + 1):
        for sign in (1, -1):
            p = 24 * lp * (3 * lp + 2 * sign) + 5
            d = 2 * p
            if d in out or not is_prime(p):
                continue
            l = 3 * lp * lp + 2 * sign * lp
            x = 12 * lp + 4 * sign
            if x * x - d != 6 or d != 48 * l + 10:
                log.warning("anomaly: l'=%d sign=%+d: (%d, 1) does not have norm 6 in d=%d", lp, sign, x, d)
                continue
            ctx = make_ctx(d)
            cand = DCandidate(lp, sign, l, p, d, RingElt(abs(x), 1),
                              pell.solve_norm(ctx, -1).solvable, pell.solve_norm(ctx, 6).solvable)
            if not cand.verified:
                log.warning("anomaly: d=%d (p=%d, p mod 8 = %d) fails verification: %s",
                            d, p, p % 8, cand)
                continue
            out[d] = cand
    return sorted(out.values(), key=lambda c: c.d)
