import random

import pytest

from cibundles.errors import SingularAlong
from cibundles.fano import (SplittingType, balanced_splitting, contains_subspace, fermat_linear_spaces, fermat_lines,
                            fermat_planes_p5, has_common_zero, normal_bundle_splitting, perfect_matchings,
                            perturbed_fermat, perturbed_fermat_lines, plane_normal_sections, signed_fermat)
from cibundles.field import PrimeField, choose_prime, nth_roots
from cibundles.linalg import rank
from cibundles.poly import MultiPoly, monomial_basis, parse_poly
from cibundles.subspace import LinearSubspace


@pytest.fixture(scope="module")
def F():
    return PrimeField(choose_prime([3, 4, 5, 6, 7]))


def test_perfect_matchings():
    assert len(perfect_matchings(range(4))) == 3
    assert len(perfect_matchings(range(6))) == 15
    assert perfect_matchings(range(2)) == [((0, 1),)]


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_fermat_line_count_and_containment(F, d):
    rep = fermat_lines(d, F)
    assert len(rep.items) == 3 * d * d
    assert all(it.contained for it in rep.items)
    assert len({it.subspace.canonical() for it in rep.items}) == 3 * d * d


@pytest.mark.parametrize("d", [3, 4])
def test_fermat_planes(F, d):
    rep = fermat_planes_p5(d, F)
    assert len(rep.items) == 15 * d ** 3 == rep.component_count
    assert all(it.contained and it.h0_normal == 0 and not it.singular for it in rep.items)


def test_signed_pairs_use_minus_one_roots(F):
    # all-plus Fermat: a pair z_a = zeta z_b needs zeta^d = -1
    f = signed_fermat((1,) * 6, 3, F)
    zeta = nth_roots(F.p, 3, -1)[0]
    plane = LinearSubspace([[zeta, 0, 0], [1, 0, 0], [0, zeta, 0], [0, 1, 0], [0, 0, zeta], [0, 0, 1]], F)
    assert contains_subspace(f, plane)
    one = LinearSubspace([[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]], F)
    assert not contains_subspace(f, one)
    with pytest.raises(ValueError):
        fermat_linear_spaces((1, 1, 1), 3, F)
    with pytest.raises(ValueError, match="roots"):
        fermat_linear_spaces((1, -1), 5, PrimeField(13))


def test_quadric_threefold_line():
    # a line on a smooth quadric threefold has N = O(1) + O
    F = PrimeField(101)
    q = parse_poly("z0*z3 + z1*z4 + z2^2", 5, F)
    L = LinearSubspace([[1, 0], [0, 1], [0, 0], [0, 0], [0, 0]], F)
    assert normal_bundle_splitting(q, L) == SplittingType((1, 0))


def test_fermat_cubic_surface_line(F):
    # every line on a smooth cubic surface is a (-1)-curve
    f = signed_fermat((1, -1, 1, -1), 3, F)
    L = LinearSubspace([[1, 0], [1, 0], [0, 1], [0, 1]], F)
    assert normal_bundle_splitting(f, L) == SplittingType((-1,))


def test_singular_along_line():
    F = PrimeField(101)
    f = parse_poly("z0*z3^2 + z1*z4^2 + z2*z3*z4", 5, F)
    L = LinearSubspace([[1, 0], [0, 1], [0, 0], [0, 0], [0, 0]], F)
    assert contains_subspace(f, L)
    with pytest.raises(SingularAlong):
        normal_bundle_splitting(f, L)


def test_rejects_line_not_on_hypersurface(F):
    f = signed_fermat((1, -1, 1, -1), 3, F)
    L = LinearSubspace([[1, 0], [0, 1], [0, 0], [0, 0]], F)
    with pytest.raises(ValueError, match="not contained"):
        normal_bundle_splitting(f, L)


def _explicit_kernel_dim(forms, shift, F):
    """Kernel of (S_shift)^k -> S_{shift+e}, (c_i) -> sum c_i forms[i], built by hand."""
    if shift < 0:
        return 0
    e = forms[0].degree
    target = {m: i for i, m in enumerate(monomial_basis(2, shift + e))}
    rows = []
    for form in forms:
        for mono in monomial_basis(2, shift):
            row = [0] * len(target)
            for (a, b), c in form.terms.items():
                row[target[(a + mono[0], b + mono[1])]] = c
            rows.append(row)
    return len(rows) - rank(rows, F)


@pytest.mark.parametrize("d,seed", [(6, 0), (6, 1), (7, 0), (7, 3)])
def test_perturbed_splitting_matches_explicit_map(F, d, seed):
    rng = random.Random(seed)
    g = MultiPoly.random(rng, 5, d - 1, F)
    f = perturbed_fermat(d, g)
    L = LinearSubspace([[1, 0], [1, 0], [0, 1], [0, 1], [0, 0]], F)
    assert contains_subspace(f, L)
    st = normal_bundle_splitting(f, L)
    # normal directions z0 - z1, z2 - z3, z4 give the forms d s^(d-1), d t^(d-1), g(s, s, t, t, 0)
    s_pow = MultiPoly({(d - 1, 0): d}, 2, d - 1, F)
    t_pow = MultiPoly({(0, d - 1): d}, 2, d - 1, F)
    forms = [s_pow, t_pow, g.restrict(L)]
    for m in range(-d - 1, d + 1):
        assert st.h0(m) == _explicit_kernel_dim(forms, m + 1, F)
    assert st == balanced_splitting(2, 3 - d)
    assert st.degree == 3 - d and st.h0() == 0


@pytest.mark.parametrize("d", [6, 7])
def test_perturbed_lines_all_balanced(F, d):
    rep, g, redraws = perturbed_fermat_lines(d, F, seed=0)
    assert len(rep.items) == 3 * d * d == rep.component_count
    q, r = divmod(3 - d, 2)
    expected = SplittingType((q + r, q))
    for it in rep.items:
        assert it.contained and it.splitting == expected and it.h0_normal == 0


def test_plane_sections(F):
    q = parse_poly("z0*z3 + z1*z4 + z2*z5", 6, F)
    plane = LinearSubspace.from_points([[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]], F)
    pn = plane_normal_sections(q, plane)
    assert pn.sections == 3 and not pn.singular
    cubic = signed_fermat((1,) * 6, 3, F)
    assert plane_normal_sections(cubic, fermat_linear_spaces((1,) * 6, 3, F)[0]).sections == 0


def test_common_zero_detection(F):
    s, t = MultiPoly.variable(0, 2, F), MultiPoly.variable(1, 2, F)
    assert not has_common_zero([s ** 2, t ** 2])
    assert has_common_zero([s * t, s ** 2])
    assert not has_common_zero([s ** 3, t ** 3, s * t * (s + t)])


def test_splitting_type_helpers():
    st = SplittingType((2, -1, -3))
    assert st.rank == 3 and st.degree == -2
    assert st.h0() == 3 and st.h0(1) == 4 + 1 and str(st) == "(2, -1, -3)"
    assert balanced_splitting(2, -3) == SplittingType((-1, -2))
    assert balanced_splitting(3, 4) == SplittingType((2, 1, 1))
