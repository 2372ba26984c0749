from itertools import combinations_with_replacement

import pytest

from cibundles.hilbert import (CIType, HilbertSeries, binom_poly, cb_deficiency, hilbert_function,
                               ideal_sheaf_cohomology, koszul_euler_characteristic, structure_sheaf_cohomology)

TYPES = [CIType(4, (4, 6)), CIType(2, (2,)), CIType(3, (3,)), CIType(3, (2, 2)), CIType(4, (1, 1, 3, 6)),
         CIType(2, (3, 3)), CIType(5, (2, 3, 4)), CIType(1, (4,)), CIType(6, (3, 4, 5, 6)), CIType(3, (2, 2, 2))]


def monomial_ci_count(ci, m):
    """Monomials of degree m outside (z_0^e_1, ..., z_{c-1}^e_c): brute-force enumeration."""
    count = 0
    for combo in combinations_with_replacement(range(ci.n + 1), m):
        if all(combo.count(i) < e for i, e in enumerate(ci.degrees)):
            count += 1
    return count


@pytest.mark.parametrize("ci", TYPES[:8], ids=str)
def test_hilbert_function_matches_monomial_count(ci):
    for m in range(0, 9):
        assert hilbert_function(ci, m) == monomial_ci_count(ci, m)


def test_hilbert_function_examples():
    # (1 + t)/(1 - t)^2 has t^m coefficient (m + 1) + m
    assert hilbert_function(CIType(2, (2,)), 2) == 2 * 2 + 1 == 5
    assert hilbert_function(CIType(4, (1, 1)), 3) == 10
    assert all(hilbert_function(ci, 0) == 1 for ci in TYPES)
    assert hilbert_function(CIType(4, (4, 6)), -3) == 0


def test_series_extends_past_truncation():
    ci = CIType(2, (3, 3))
    s = HilbertSeries.of(ci, order=3)
    assert s.coefficient(40) == 9


def test_surface_h1_vanishes_and_duality():
    X = CIType(4, (4, 6))
    for m in range(-10, 21):
        assert structure_sheaf_cohomology(X, m).h[1] == 0
        sigma = X.canonical_twist
        assert structure_sheaf_cohomology(X, m).h[2] == structure_sheaf_cohomology(X, sigma - m).h[0]
    assert structure_sheaf_cohomology(X, 5).h[2] == hilbert_function(X, 0) == 1


def test_conic_negative_twist():
    # O_X(-1) on a conic is O_{P^1}(-2): h^0 = 0, h^1 = 1
    t = structure_sheaf_cohomology(CIType(2, (2,)), -1)
    assert t.h == (0, 1) and t.euler == -1


@pytest.mark.parametrize("ci", TYPES, ids=str)
def test_euler_characteristic_matches_koszul(ci):
    for m in range(-12, 20):
        table = structure_sheaf_cohomology(ci, m)
        assert table.euler == koszul_euler_characteristic(ci, m)
        assert all(x >= 0 for x in table.h)
        ideal = ideal_sheaf_cohomology(ci, m)
        assert ideal.euler == binom_poly(m + ci.n, ci.n) - koszul_euler_characteristic(ci, m)


def test_ideal_sheaf_examples():
    X = CIType(4, (4, 6))
    for m in range(-10, 21):
        h = ideal_sheaf_cohomology(X, m).h
        assert h[1] == h[2] == 0
    assert ideal_sheaf_cohomology(X, 1).h[0] == 0
    Z = CIType(4, (1, 1, 3, 6))
    assert ideal_sheaf_cohomology(Z, 6).h[1] == Z.degree - hilbert_function(Z, 6) == 1


def test_cb_deficiency_examples():
    assert cb_deficiency(CIType(4, (1, 1, 3, 6)), 5) == 3
    assert cb_deficiency(CIType(4, (1, 1, 1, 6)), 3) == 2
    Z = CIType(4, (1, 1, 3, 6))
    assert [cb_deficiency(Z, m) for m in (6, 7, 30)] == [1, 0, 0]
    with pytest.raises(ValueError):
        cb_deficiency(CIType(4, (4, 6)), 3)


@pytest.mark.parametrize("n", [4, 5])
def test_cb_deficiency_sweep(n):
    for d1 in range(2, 7):
        for d2 in range(d1 + 1, 9):
            degrees = (d1, d2) + (d2,) * (n - 4)
            d = sum(degrees)
            Z = CIType(n, (1, 1, d1 - 1) + degrees[1:])
            assert cb_deficiency(Z, d - n - 1) == n - 1 - (d1 == 2)
            assert cb_deficiency(Z, Z.d_sum - n - 1) == 1 and Z.d_sum - n - 1 == d - n


def test_citype_validation():
    with pytest.raises(ValueError):
        CIType(2, (1, 1, 1))
    with pytest.raises(ValueError):
        CIType(3, (0, 2))
    assert CIType(4, (6, 4)).degrees == (4, 6)


def test_json_shape():
    doc = structure_sheaf_cohomology(CIType(4, (4, 6)), 6).to_json()
    assert doc == {"n": 4, "degrees": [4, 6], "twist": 6, "sheaf": "structure", "h": [194, 0, 0], "chi": 194}
