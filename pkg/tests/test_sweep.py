import numpy as np
import pytest

from nahmtriples import (
    BundleSpec,
    LineBundleSpec,
    berry_curvature,
    build_dirac,
    double_transform,
    theta_multiplier,
    transform_morphism,
    transform_sweep,
)
from nahmtriples.errors import ShapeMismatch, Unsupported
from nahmtriples.sweep import chi_imag, chi_real


def test_chi_real_conjugates_family_exactly():
    n = 16
    chi = chi_real(n)
    d0 = build_dirac(LineBundleSpec(1), 0.1 + 0.2j, n).sparse
    d1 = build_dirac(LineBundleSpec(1), 1.1 + 0.2j, n).sparse
    diff = (chi @ d0 @ chi.getH() - d1).tocoo()
    interior = (diff.row % n != 0) & (diff.col % n != 0)
    assert np.max(np.abs(diff.data[interior])) < 1e-12


def test_chi_unitaries_commute():
    n = 16
    a = chi_real(n) @ chi_imag(n) - chi_imag(n) @ chi_real(n)
    assert abs(a).max() == 0


def test_sweep_line_bundle_d1():
    sweep = transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 16)
    assert sweep.rank() == 1
    assert sweep.min_gap_ratio >= 1e2
    cur = berry_curvature(sweep)
    assert cur.chern == -1
    assert abs(cur.mean_curvature_density + 2 * np.pi) < 0.05 * 2 * np.pi


def test_sweep_direct_sum():
    spec = BundleSpec((LineBundleSpec(1), LineBundleSpec(1, flat_twist=0.3 + 0.4j)))
    sweep = transform_sweep(spec, 8, 16)
    assert sweep.rank() == 2
    cur = berry_curvature(sweep)
    # Chern numbers add over the direct sum
    assert cur.chern == -2


def test_gauge_invariance_of_curvature():
    sweep = transform_sweep(BundleSpec((LineBundleSpec(2),)), 8, 16)
    cur = berry_curvature(sweep)
    rng = np.random.default_rng(5)
    for grid in sweep.summand_frames:
        for row in grid:
            for fr in row:
                z = rng.standard_normal((fr.dim, fr.dim)) \
                    + 1j * rng.standard_normal((fr.dim, fr.dim))
                q, _ = np.linalg.qr(z)
                fr.basis = fr.basis @ q
    cur2 = berry_curvature(sweep)
    assert cur2.chern == cur.chern
    assert np.max(np.abs(cur2.plaquette_phases - cur.plaquette_phases)) < 1e-10


def test_scalar_morphism():
    sweep = transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 16)
    c = 2.5 - 0.5j
    ph = transform_morphism(sweep, sweep, c)
    for a in range(8):
        for b in range(8):
            g = ph[a, b].conj().T @ ph[a, b]
            assert np.max(np.abs(g - abs(c) ** 2)) < 1e-8


def test_zero_morphism():
    sweep = transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 16)
    ph = transform_morphism(sweep, sweep, 0)
    assert np.max(np.abs(ph)) == 0


def test_theta_multiplier_morphism_rank_and_smoothness():
    m, n = 8, 16
    sw1 = transform_sweep(BundleSpec((LineBundleSpec(1),)), m, n)
    sw2 = transform_sweep(BundleSpec((LineBundleSpec(2),)), m, n)
    g = theta_multiplier(n)
    ph = transform_morphism(sw2, sw1, g)
    sv = np.array([[np.linalg.svd(ph[a, b], compute_uv=False)
                    for b in range(m)] for a in range(m)])
    assert sv.shape == (m, m, 1)  # rank <= 1 everywhere
    assert sv.min() > 0.1
    # smoothness: bounded finite-difference derivative across the grid
    diffs = np.abs(np.diff(sv[:, :, 0], axis=0)).max()
    diffs = max(diffs, np.abs(np.diff(sv[:, :, 0], axis=1)).max())
    assert diffs < 0.2


def test_morphism_shape_mismatch():
    sw1 = transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 16)
    sw2 = transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 32)
    with pytest.raises(ShapeMismatch):
        transform_morphism(sw1, sw2, 1.0)


def test_double_transform_small():
    res = double_transform(LineBundleSpec(1), 8, 16)
    assert abs(res.lambda_out - res.lambda_in) < 0.05 * res.lambda_in
    assert res.chern_pair == (1, 1)
    with pytest.raises(Unsupported):
        double_transform(LineBundleSpec(2), 8, 16)


def test_sweep_deviation_shrinks_with_refinement():
    cur1 = berry_curvature(transform_sweep(BundleSpec((LineBundleSpec(1),)), 8, 16))
    cur2 = berry_curvature(transform_sweep(BundleSpec((LineBundleSpec(1),)), 16, 32))
    assert cur2.max_relative_deviation <= cur1.max_relative_deviation / 2
