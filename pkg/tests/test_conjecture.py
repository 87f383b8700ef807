import pytest
import sympy

from dnquad import builder, conjecture, errors, pell
from dnquad.quadring import RingElt, make_ctx


def naive_witnesses(d, x_max):
    out = []
    for x in range(1, x_max + 1, 2):
        for y in range(1, x_max + 1, 2):
            p = x * x - d * y * y
            if p > 0 and p % 4 == 3 and sympy.isprime(p):
                out.append(((x - 1) // 2, (y - 1) // 2, p))
    return out


def test_not_difference_of_squares(ctx10, ctx58):
    rep = conjecture.representable_diff_squares(ctx10, RingElt(26, 6))
    assert rep.status == conjecture.NO and rep.witness is None
    assert all(not c["solvable"] for c in rep.certificates)
    assert conjecture.representable_diff_squares(ctx58, RingElt(18, 2)).status == conjecture.NO


def test_difference_of_squares_when_norm_two_exists(ctx2):
    rep = conjecture.representable_diff_squares(ctx2, RingElt(2, 2))
    assert rep.status == conjecture.YES
    alpha, beta = rep.witness
    assert ctx2.square(alpha) - ctx2.square(beta) == RingElt(2, 2)


@pytest.mark.parametrize("n", [RingElt(3), RingElt(8), RingElt(-5, 4), RingElt(7, 12)])
def test_odd_and_multiple_of_four_witnesses(ctx10, n):
    rep = conjecture.representable_diff_squares(ctx10, n)
    assert rep.status == conjecture.YES
    alpha, beta = rep.witness
    assert ctx10.square(alpha) - ctx10.square(beta) == n


def test_find_diff_squares_matches_brute_force(ctx10):
    """Every small (alpha, beta) produces an n that the search also solves."""
    found = set()
    rng = range(-3, 4)
    for a in rng:
        for b in rng:
            for c in rng:
                for e in rng:
                    n = ctx10.square(RingElt(a, b)) - ctx10.square(RingElt(c, e))
                    if not n.is_zero():
                        found.add(n)
    for n in sorted(found, key=lambda z: (abs(z.re) + abs(z.im), z.re, z.im))[:60]:
        witness, _ = conjecture.find_diff_squares(ctx10, n, bound=50)
        assert witness is not None, n
        alpha, beta = witness
        assert ctx10.square(alpha) - ctx10.square(beta) == n


def test_representable_rejects_zero(ctx10):
    with pytest.raises(errors.ZeroN):
        conjecture.representable_diff_squares(ctx10, RingElt(0))


@pytest.mark.parametrize("d", [10, 58])
def test_norm_pm2_impossible(d):
    cert = conjecture.norm_pm2_impossible(make_ctx(d))
    assert cert["d"] == str(d)
    assert not cert["norm_2"]["solvable"] and not cert["norm_minus_2"]["solvable"]


def test_norm_pm2_needs_hypothesis(ctx2):
    with pytest.raises(errors.HypothesisFailed):
        conjecture.norm_pm2_impossible(ctx2)


@pytest.mark.parametrize("d", [10, 58, 106])
def test_prime_witnesses_match_naive(d):
    ctx = make_ctx(d)
    got = conjecture.prime_witness_search(ctx, 301)
    assert sorted(got) == sorted(naive_witnesses(d, 301))
    xs = [2 * m + 1 for m, _, _ in got]
    assert xs == sorted(xs)


def test_prime_witness_order(ctx10):
    assert conjecture.prime_witness_search(ctx10, 15) == [(4, 0, 71), (5, 1, 31), (6, 1, 79)]


def test_make_counterexample(ctx10):
    rec = conjecture.make_counterexample(ctx10, 6, 1)
    assert rec.n == RingElt(26, 6) and rec.witness == (6, 1, 79)
    assert rec.representable.status == conjecture.NO
    assert builder.verify(ctx10, rec.n, rec.quadruple.elements).ok
    js = rec.to_json()
    assert js["witness"] == {"m": "6", "k": "1", "p": "79"}


@pytest.mark.parametrize("m, k", [(0, 0), (1, 0), (6, 0)])
def test_make_counterexample_rejects_non_witness(ctx10, m, k):
    with pytest.raises(errors.NotAWitness):
        conjecture.make_counterexample(ctx10, m, k)


def test_iter_counterexamples(ctx58):
    recs = list(conjecture.iter_counterexamples(ctx58, 61))
    assert recs
    for rec in recs:
        m, k, p = rec.witness
        assert rec.n == RingElt(4 * m + 2, 4 * k + 2) and sympy.isprime(p) and p % 4 == 3
        assert builder.verify(ctx58, rec.n, rec.quadruple.elements).ok


def test_hunt_d_small():
    cands = conjecture.hunt_d(10)
    ds = [c.d for c in cands]
    assert ds == sorted(set(ds)) and {10, 58} <= set(ds)
    assert 250 not in ds     # l' = 1, sign +: p = 125 is composite
    for c in cands:
        assert c.verified and sympy.isprime(c.p) and c.d == 48 * c.l + 10
        ctx = make_ctx(c.d)
        assert ctx.norm(c.witness6) == 6
        assert pell.hypothesis_check(ctx).holds


def test_hunt_d_json():
    js = conjecture.hunt_d(0)[0].to_json()
    assert js["d"] == "10" and js["lprime"] == "0" and js["sign"] == "+"
