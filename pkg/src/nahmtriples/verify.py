"""Programmatic acceptance checks backing the ``verify-all`` subcommand.

Each criterion returns (name, passed, detail).  The quick mode shrinks the
numerical grids so the whole battery runs in seconds; the full mode uses
the contractual sizes.
"""

from __future__ import annotations

import itertools
import math
import time
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Tuple

import numpy as np

from . import invariants as inv
from . import triples as tr
from . import vortex as vx
from .dirac import (
    BundleSpec,
    LineBundleSpec,
    build_dirac,
    commutator_residual,
    kernel_frame,
)
from .sweep import berry_curvature, double_transform, transform_morphism, transform_sweep

Result = Dict[str, Any]


def _crit(name: str, fn) -> Result:
    t0 = time.time()
    try:
        detail = fn()
        return {"name": name, "passed": True, "detail": detail,
                "seconds": round(time.time() - t0, 3)}
    except AssertionError as exc:
        return {"name": name, "passed": False, "detail": str(exc),
                "seconds": round(time.time() - t0, 3)}


def c1_involution() -> str:
    count = 0
    for r in range(1, 7):
        for d in range(-6, 7):
            if d == 0 or gcd(r, abs(d)) != 1:
                continue
            b = inv.BundleClass.of(r, d)
            bt, i = inv.fm_transform_class(b)
            assert inv.slope(bt) == -1 / inv.slope(b)
            assert inv.it_class(bt).index == 1 - i.index
            btt, _ = inv.fm_transform_class(bt)
            p = btt.summands[0].pair
            assert (p.rank, p.degree) == (r, d)
            count += 1
    return f"{count} classes checked"


def c2_dimension_invariant() -> str:
    count = 0
    for n1, n2 in itertools.product(range(0, 6), repeat=2):
        if n1 + n2 == 0:
            continue
        for d1, d2 in itertools.product(range(-5, 6), repeat=2):
            if d1 == 0 or d2 == 0 or (d1 > 0) != (d2 > 0):
                continue
            t = tr.TripleType(n1, n2, d1, d2)
            th, _ = tr.transform_triple_type(t)
            assert t.n2 * t.d1 - t.n1 * t.d2 == th.n2 * th.d1 - th.n1 * th.d2
            count += 1
    return f"{count} types checked"


def c3_chambers() -> str:
    assert tr.critical_values(tr.TripleType(2, 1, 1, 0)) == []
    got = tr.critical_values(tr.TripleType(2, 1, 3, 0))
    assert got == [Fraction(3), Fraction(9, 2)], got
    return "chamber examples match"


def c4_preservation() -> str:
    v = tr.check_small_alpha_preservation(tr.TripleType(1, 2, 1, 1))
    assert v.applies and v.fibration_dim_N == 0
    assert tr.check_small_alpha_preservation(v.transformed.dual()).applies or \
        tr.check_small_alpha_preservation(v.transformed).applies
    w = tr.check_large_alpha_preservation(tr.TripleType(3, 1, 4, 1))
    assert w.applies and w.moduli_dim == 2
    assert w.transformed.as_tuple() == (4, 1, -3, -1)
    assert tr.check_large_alpha_preservation(w.transformed).applies
    return "verdicts and converse direction hold"


def c5_vortex_identities() -> str:
    import random

    rng = random.Random(7)
    for _ in range(1000):
        t = tr.TripleType(rng.randint(1, 6), rng.randint(1, 6),
                          rng.randint(-6, 6), rng.randint(-6, 6))
        alpha = Fraction(rng.randint(1, 40), rng.randint(1, 12))
        v = vx.tau_from_alpha(t, alpha)
        assert v.tau - v.tau_prime == alpha
        assert v.tau == tr.alpha_slope(t, alpha)
    grid = [Fraction(k, 3) for k in range(1, 13)]
    for tau, tau_p in itertools.product(grid, repeat=2):
        v = vx.params_for_taus(tau, tau_p)
        res = vx.nahm_cov_const(vx.cov_const_slopes(v), v)
        assert res.solvable == (tau == tau_p)
        assert res.solvable == (len(set(res.transformed.slopes)) == 1)
    return "1000 random identities + solvability grid"


def c6_counterexample() -> str:
    blocks, verdict = vx.polystability_counterexample(Fraction(2), Fraction(1))
    t = blocks.triple_type()
    assert t.as_tuple() == (3, 3, 5, 4), t
    assert verdict == vx.NOT_POLYSTABLE_AFTER_TRANSFORM
    return "type (3,3,5,4), transform certified unsolvable"


def c7_kernel_index(n: int) -> str:
    gaps = []
    for d in (1, 2, 3):
        fr = kernel_frame(build_dirac(LineBundleSpec(d), 0j, n), d)
        assert fr.dim == d and fr.gap_ratio >= 1e2
        gaps.append(fr.gap_ratio)
    fr = kernel_frame(build_dirac(LineBundleSpec(-1), 0j, n), 1)
    assert fr.dim == 1 and fr.gap_ratio >= 1e2
    return f"gap ratios >= {min(gaps):.3g}"


def c8_curvature(n: int, m: int) -> str:
    details = []
    for d in (1, 2):
        sweep = transform_sweep(BundleSpec((LineBundleSpec(d),)), m, n)
        cur = berry_curvature(sweep)
        assert cur.chern == -1, cur.chern
        target = -2 * math.pi / d
        assert abs(cur.mean_curvature_density - target) <= 0.03 * abs(target)
        assert cur.max_relative_deviation <= 0.05
        sweep2 = transform_sweep(BundleSpec((LineBundleSpec(d),)), 2 * m, 2 * n)
        cur2 = berry_curvature(sweep2)
        assert cur2.max_relative_deviation <= cur.max_relative_deviation / 2
        details.append(f"d={d}: dev {cur.max_relative_deviation:.2%} -> "
                       f"{cur2.max_relative_deviation:.2%}")
    return "; ".join(details)


def c9_commutator(sizes=(16, 32, 64)) -> str:
    res = [commutator_residual(build_dirac(LineBundleSpec(1), 0j, n))
           for n in sizes]
    for a, b in zip(res, res[1:]):
        assert b <= a / 3, (a, b)
    return " -> ".join(f"{r:.3g}" for r in res)


def c10_double_transform(n: int, m: int) -> str:
    res = double_transform(LineBundleSpec(1), m, n)
    assert abs(res.lambda_out - res.lambda_in) <= 0.05 * res.lambda_in
    assert res.chern_pair == (1, 1)
    return f"lambda {res.lambda_out:.6f} vs {res.lambda_in:.6f}"


def c11_morphism(n: int, m: int) -> str:
    sweep = transform_sweep(BundleSpec((LineBundleSpec(1),)), m, n)
    c = 1.7 - 0.3j
    phi_hat = transform_morphism(sweep, sweep, c)
    err = max(
        float(np.max(np.abs(phi_hat[a, b].conj().T @ phi_hat[a, b]
                            - abs(c) ** 2)))
        for a in range(m) for b in range(m)
    )
    assert err <= 1e-8, err
    rng = np.random.default_rng(3)
    sv0 = np.linalg.svd(phi_hat[0, 0], compute_uv=False)
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    u = np.array([[z[0] / abs(z[0])]])
    remixed = phi_hat[0, 0] @ u
    sv1 = np.linalg.svd(remixed, compute_uv=False)
    assert np.max(np.abs(sv0 - sv1)) <= 1e-10
    return f"scalar morphism error {err:.3g}"


def run_all(quick: bool = False) -> Tuple[List[Result], bool]:
    n, m = (16, 8) if quick else (32, 12)
    out = [
        _crit("fm involution and slope law", c1_involution),
        _crit("dimension invariant", c2_dimension_invariant),
        _crit("chamber examples", c3_chambers),
        _crit("preservation verdicts", c4_preservation),
        _crit("vortex identities", c5_vortex_identities),
        _crit("polystability counterexample", c6_counterexample),
        _crit("kernel index", lambda: c7_kernel_index(n)),
        _crit("constant central curvature",
              lambda: c8_curvature(n, m) if not quick
              else c8_curvature(16, 8)),
        _crit("commutator identity",
              lambda: c9_commutator((16, 32) if quick else (16, 32, 64))),
        _crit("double transform", lambda: c10_double_transform(n, m)),
        _crit("morphism transform", lambda: c11_morphism(16, 8)),
    ]
    return out, all(r["passed"] for r in out)
