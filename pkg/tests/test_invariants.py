from fractions import Fraction
from math import gcd

import pytest

from nahmtriples import (
    BundleClass,
    DegreeZero,
    NotIT,
    ZeroRank,
    fm_transform_class,
    it_class,
    moduli_descriptor,
    slope,
)


def test_slope_single_summand():
    assert slope(BundleClass.of(2, 3)) == Fraction(3, 2)


def test_slope_equal_slope_sum():
    assert slope(BundleClass.direct_sum((1, 1), (1, 1))) == 1


def test_slope_mixed_sum():
    # hand arithmetic: (2 + 3) / (1 + 2)
    assert slope(BundleClass.direct_sum((1, 2), (2, 3))) == Fraction(5, 3)


def test_slope_zero_rank_error():
    with pytest.raises((ZeroRank, ValueError)):
        BundleClass.direct_sum((0, 1), (0, -1))


def test_it_class_positive():
    assert it_class(BundleClass.of(1, 3)).index == 0


def test_it_class_negative():
    assert it_class(BundleClass.of(2, -1)).index == 1


def test_it_class_degree_zero_summand():
    with pytest.raises(NotIT):
        it_class(BundleClass.direct_sum((1, 2), (1, 0)))


def test_it_class_mixed_signs():
    with pytest.raises(NotIT):
        it_class(BundleClass.direct_sum((1, 2), (1, -1)))


def test_fm_transform_it0():
    bt, i = fm_transform_class(BundleClass.of(1, 3))
    p = bt.summands[0].pair
    assert (p.rank, p.degree) == (3, -1)
    assert i.index == 0


def test_fm_transform_it1():
    bt, i = fm_transform_class(BundleClass.of(1, -2))
    p = bt.summands[0].pair
    assert (p.rank, p.degree) == (2, 1)
    assert i.index == 1


def test_fm_transform_degree_zero_error():
    with pytest.raises(NotIT):
        fm_transform_class(BundleClass.of(2, 0))


def test_fm_transform_carries_points_and_multiplicity():
    b = BundleClass.of(1, 3, point=0.25 + 0.5j)
    bt, _ = fm_transform_class(b)
    assert bt.summands[0].point == 0.25 + 0.5j
    assert bt.summands[0].multiplicity == 1


def test_moduli_descriptor_coprime():
    md = moduli_descriptor(2, 3)
    assert md.h == 1 and md.all_stable and md.description == "S^1 C"


def test_moduli_descriptor_non_coprime():
    md = moduli_descriptor(4, 2)
    assert md.h == 2 and not md.all_stable and md.description == "S^2 C"


def test_moduli_descriptor_degree_zero():
    with pytest.raises(DegreeZero):
        moduli_descriptor(3, 0)


def test_moduli_gcd_invariance_under_transform():
    for r in range(1, 7):
        for d in range(-6, 7):
            if d == 0:
                continue
            bt, _ = fm_transform_class(BundleClass.of(r, d)) \
                if gcd(r, abs(d)) == 1 else (None, None)
            if bt is None:
                continue
            p = bt.summands[0].pair
            assert gcd(r, abs(d)) == gcd(p.rank, abs(p.degree))
