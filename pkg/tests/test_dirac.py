import numpy as np
import pytest
import scipy.sparse as sp

from nahmtriples import (
    BundleSpec,
    LineBundleSpec,
    TorusSpec,
    build_dirac,
    commutator_residual,
    kernel_frame,
    numerical_it_check,
)
from nahmtriples.errors import BadGrid, GapTooSmall


def test_bad_grid():
    with pytest.raises(BadGrid):
        build_dirac(LineBundleSpec(1), 0j, 4)
    with pytest.raises(BadGrid):
        build_dirac(LineBundleSpec(200), 0j, 16)


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        LineBundleSpec(0)


def test_affine_family_law():
    n = 16
    op0 = build_dirac(LineBundleSpec(1), 0j, n)
    w = 0.37 - 0.21j
    opw = build_dirac(LineBundleSpec(1), w, n)
    diff = opw.sparse - op0.sparse - np.pi * w * sp.identity(n * n, dtype=complex)
    assert abs(diff).max() < 1e-13


def test_flat_twist_enters_affinely():
    n = 16
    a = build_dirac(LineBundleSpec(1, flat_twist=0.1 + 0.2j), 0j, n)
    b = build_dirac(LineBundleSpec(1), 0.1 + 0.2j, n)
    assert abs(a.sparse - b.sparse).max() == 0


def test_kernel_dims_and_gap():
    for d in (1, 2):
        fr = kernel_frame(build_dirac(LineBundleSpec(d), 0j, 16), d)
        assert fr.dim == d
        assert fr.gap_ratio >= 1e2
        # columns orthonormal
        g = fr.basis.conj().T @ fr.basis
        assert np.max(np.abs(g - np.eye(d))) < 1e-12


def test_kernel_adjoint_negative_degree():
    fr = kernel_frame(build_dirac(LineBundleSpec(-1), 0j, 16), 1)
    assert fr.dim == 1 and fr.gap_ratio >= 1e2


def test_expected_dim_mismatch():
    with pytest.raises(GapTooSmall):
        kernel_frame(build_dirac(LineBundleSpec(1), 0j, 16), 2)


def test_iterative_kernel_agrees_with_dense_svd():
    # design contract: the iterative extraction must agree with a full
    # dense SVD to 1e-8
    n = 16
    for d in (1, 2):
        op = build_dirac(LineBundleSpec(d), 0.13 + 0.29j, n)
        fr = kernel_frame(op, d)
        u, s, vh = np.linalg.svd(op.matrix)
        dense_kernel = vh[-d:].conj().T
        # smallest singular values agree
        assert np.max(np.abs(np.sort(s[-d:]) - fr.kernel_svs)) < 1e-8
        # gap singular value agrees
        assert abs(s[-d - 1] - fr.gap_sv) < 1e-6
        # subspaces agree: projection leaves the frame invariant
        proj = dense_kernel @ (dense_kernel.conj().T @ fr.basis)
        assert np.linalg.norm(proj - fr.basis) < 1e-8


def test_commutator_residual_values_and_order():
    res = {n: commutator_residual(build_dirac(LineBundleSpec(1), 0j, n))
           for n in (16, 32)}
    assert res[16] < 0.5
    assert res[32] <= res[16] / 3


def test_general_modulus_commutator():
    # the commutator identity [D, D*] = pi d is modulus-independent
    torus = TorusSpec(modulus=0.3 + 1.4j)
    res = commutator_residual(build_dirac(LineBundleSpec(1, 0j, torus), 0j, 32))
    assert res < 0.2


def test_numerical_it_check():
    assert numerical_it_check(BundleSpec((LineBundleSpec(2),)), 16).index == 0
    assert numerical_it_check(BundleSpec((LineBundleSpec(-2),)), 16).index == 1
    with pytest.raises(ValueError):
        BundleSpec((LineBundleSpec(1), LineBundleSpec(-1)))
