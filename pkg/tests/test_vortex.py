import random
from fractions import Fraction

import pytest

from nahmtriples import (
    NOT_POLYSTABLE_AFTER_TRANSFORM,
    TripleType,
    alpha_from_tau,
    alpha_slope,
    cov_const_slopes,
    nahm_cov_const,
    params_for_taus,
    polystability_counterexample,
    tau_from_alpha,
    vanishing_check,
)
from nahmtriples.errors import (
    Indeterminate,
    MixedSigns,
    NonPositiveAlpha,
    SlopeOrder,
)


def test_tau_from_alpha_examples():
    v = tau_from_alpha(TripleType(1, 1, 2, 1), 1)
    assert (v.tau, v.tau_prime) == (2, 1)
    v = tau_from_alpha(TripleType(2, 1, 3, 0), 3)
    assert (v.tau, v.tau_prime) == (2, -1)


def test_tau_identities_random():
    rng = random.Random(11)
    for _ in range(200):
        t = TripleType(rng.randint(1, 6), rng.randint(1, 6),
                       rng.randint(-6, 6), rng.randint(-6, 6))
        alpha = Fraction(rng.randint(1, 30), rng.randint(1, 9))
        v = tau_from_alpha(t, alpha)
        assert v.tau - v.tau_prime == alpha
        assert v.tau == alpha_slope(t, alpha)
        assert t.n1 * v.tau + t.n2 * v.tau_prime == t.d1 + t.d2


def test_alpha_from_tau_round_trip():
    t = TripleType(1, 1, 2, 1)
    v = alpha_from_tau(t, 2)
    assert v.alpha == 1 and v.tau_prime == 1
    v2 = tau_from_alpha(t, v.alpha)
    assert (v2.tau, v2.tau_prime) == (v.tau, v.tau_prime)
    with pytest.raises(NonPositiveAlpha):
        alpha_from_tau(t, Fraction(3, 2))
    with pytest.raises(NonPositiveAlpha):
        tau_from_alpha(t, 0)


def test_cov_const_slopes_examples():
    v = tau_from_alpha(TripleType(1, 1, 2, 1), 1)
    c = cov_const_slopes(v)
    assert c.slopes == (2, Fraction(3, 2), 1)
    assert c.lambda_over_pi == 1

    v = params_for_taus(2, 2)
    c = cov_const_slopes(v)
    assert c.slopes == (2, 2, 2) and c.lambda_over_pi == 0

    v = tau_from_alpha(TripleType(2, 1, 3, 0), 3)
    c = cov_const_slopes(v)
    assert c.slopes == (2, Fraction(1, 2), -1) and c.lambda_over_pi == 3


def test_nahm_cov_const_examples():
    v = params_for_taus(2, 1)
    res = nahm_cov_const(cov_const_slopes(v), v)
    assert res.transformed.slopes == (Fraction(-1, 2), Fraction(-2, 3), -1)
    assert not res.solvable and res.tau_hat is None

    v = params_for_taus(2, 2)
    res = nahm_cov_const(cov_const_slopes(v), v)
    assert res.solvable and res.tau_hat == Fraction(-1, 2)
    assert res.transformed.slopes == (Fraction(-1, 2),) * 3

    v = params_for_taus(1, -1)
    with pytest.raises(MixedSigns):
        nahm_cov_const(cov_const_slopes(v), v)


def test_slope_map_involution():
    for tau in (Fraction(1, 3), 1, Fraction(5, 2)):
        v = params_for_taus(tau, tau)
        res = nahm_cov_const(cov_const_slopes(v), v)
        v2 = params_for_taus(res.tau_hat, res.tau_hat)
        res2 = nahm_cov_const(cov_const_slopes(v2), v2)
        # -1 / (-1 / tau) = tau: the double transform restores the slope
        assert res2.tau_hat == tau


def test_counterexample_examples():
    blocks, verdict = polystability_counterexample(2, 1)
    pairs = {kind: (p.rank, p.degree) for kind, p in blocks.blocks}
    assert pairs["KER_PHI_STAR"] == (1, 2)
    assert pairs["ISO_PAIR"] == (2, 3)
    assert pairs["KER_PHI"] == (1, 1)
    assert blocks.triple_type().as_tuple() == (3, 3, 5, 4)
    assert verdict == NOT_POLYSTABLE_AFTER_TRANSFORM

    blocks, _ = polystability_counterexample(3, 2)
    pairs = {kind: (p.rank, p.degree) for kind, p in blocks.blocks}
    assert pairs["KER_PHI_STAR"] == (1, 3)
    assert pairs["ISO_PAIR"] == (2, 5)
    assert pairs["KER_PHI"] == (1, 2)

    with pytest.raises(SlopeOrder):
        polystability_counterexample(1, 1)


def test_counterexample_soundness_grid():
    grid = [Fraction(a, b) for a in range(1, 5) for b in (1, 2, 3)]
    for mu1 in grid:
        for mu2 in grid:
            if mu1 <= mu2:
                continue
            blocks, verdict = polystability_counterexample(mu1, mu2)
            t = blocks.triple_type()
            v = tau_from_alpha(t, mu1 - mu2)
            assert (v.tau, v.tau_prime) == (mu1, mu2)
            res = nahm_cov_const(cov_const_slopes(v), v)
            assert not res.solvable
            assert verdict == NOT_POLYSTABLE_AFTER_TRANSFORM


def test_vanishing_check():
    v = params_for_taus(2, 1)
    assert vanishing_check(v, 1).index == 0
    v = params_for_taus(-1, -2)
    assert vanishing_check(v, 0).index == 1
    v = params_for_taus(1, -1)
    with pytest.raises(Indeterminate):
        vanishing_check(v, 0)
