from fractions import Fraction
from math import prod

import pytest

from cibundles.bundle import (EXAMPLES, bundle_report, chern_data, cohomology_of_E, component_report, ext1_check,
                              h0_ideal_z_in_x, validate_parameters, z_type)
from cibundles.hilbert import CIType, cb_deficiency, koszul_euler_characteristic


def admissible(n, top=8):
    out = []
    if n == 4:
        for d1 in range(2, top):
            for d2 in range(d1 + 1, top + 1):
                out.append((d1, d2))
    else:
        for d1 in range(2, top):
            for d2 in range(d1 + 1, top + 1):
                for d3 in range(d2, top + 1):
                    out.append((d1, d2, d3))
    keep = []
    for degs in out:
        try:
            validate_parameters(n, degs)
        except ValueError:
            continue
        keep.append(degs)
    return keep


def riemann_roch_chi(n, degrees):
    """chi(E) = 2 chi(O_X) + (c1^2 - 2 c2 - c1.K)/2 with c1 = H on the surface X."""
    X = CIType(n, tuple(degrees))
    H2 = X.degree
    K = sum(degrees) - n - 1
    c2 = (degrees[0] - 1) * prod(degrees[1:])
    return 2 * koszul_euler_characteristic(X, 0) + Fraction(H2 - 2 * c2 - K * H2, 2)


def test_admissible_sets_nonempty_and_cover_quadric_regime():
    four, five = admissible(4), admissible(5)
    assert (4, 6) in four and (2, 6) in four and (5, 6) in four and (3, 6) not in four and (4, 5) not in four
    assert (2, 3, 4) in five and (3, 4, 4) in five
    assert len(four) == 12 and len(five) > 40


@pytest.mark.parametrize("n", [4, 5])
def test_sweep_properties(n):
    for degs in admissible(n):
        delta = int(degs[0] == 2)
        h0, h1, h2 = cohomology_of_E(n, degs)
        chern = chern_data(n, degs)
        assert h1 == 0
        assert h0 == 3 + delta
        assert ext1_check(n, degs) == 1
        assert chern["chi"] == riemann_roch_chi(n, degs) == h0 - h1 + h2
        assert chern["c2"] == z_type(n, degs).degree
        d = sum(degs)
        assert cb_deficiency(z_type(n, degs), d - n - 1) == n - 1 - delta
        assert h0_ideal_z_in_x(n, degs, 1) == 2 + delta


@pytest.mark.parametrize("n,degs,c2,h,chi", [
    (4, (4, 6), 18, (3, 0, 175), 178),
    (5, (2, 3, 4), 12, (4, 0, 60), 64),
    (4, (6, 7), 35, None, None),
])
def test_bundle_examples(n, degs, c2, h, chi):
    rep = bundle_report(n, degs)
    assert rep.chern["c2"] == c2 and rep.ext1 == 1
    if h is not None:
        assert rep.h == h and rep.chern["chi"] == chi


def test_two_routes_recorded():
    det = cohomology_of_E(4, (4, 6), detail=True)
    assert det["h2_identity"] == det["h2_direct"] == 175
    assert det["h0_IZ1"] == 2


@pytest.mark.parametrize("n,degs,match", [
    (3, (4,), "n >= 4"),
    (4, (4, 6, 7), "n - 2"),
    (4, (6, 6), "d_1 < d_2"),
    (4, (3, 6), "n = 4"),
    (4, (4, 5), "n = 4"),
    (6, (2, 4, 5, 6), "d_1 = 2"),
    (5, (3, 5, 4), "d_2 <="),
    (5, (1, 3, 3), "d_1 > 2"),
])
def test_parameter_validation(n, degs, match):
    with pytest.raises(ValueError, match=match):
        validate_parameters(n, degs)


def test_report_json():
    doc = bundle_report(4, (4, 6)).to_json()
    assert doc["params"] == {"n": 4, "degrees": [4, 6], "d": 10, "e": 6, "K_X": 5, "delta": 0}
    assert doc["chern"] == {"r": 2, "c1": 1, "c2": 18}
    assert doc["slope"] == "1/2" and doc["h1_IZ_canonical"] == 3
    assert doc["expected_dim"]["source"] == "standard-theory"
    assert doc["assumed"] and doc["checked"]


def test_component_reports():
    assert component_report("quintic").components == [(2875, 0)]
    spin = component_report("spinor")
    assert spin.components == [(2, 0)] and spin.details["h0_E"] == 4 and spin.details["meet_dim"] == 1
    assert component_report("fermat5", d1=3).components == [(405, 0)]
    assert component_report("fermat4", d1=6).components == [(108, 0)]
    assert component_report("cone46", d1=6).components[0] == (6, 1)
    assert set(EXAMPLES) == {"quintic", "fermat4", "spinor", "fermat5", "cone46"}
    with pytest.raises(ValueError):
        component_report("fermat4", d1=5)
    with pytest.raises(ValueError):
        component_report("nonsense")
