"""Linear spaces on hypersurfaces: containment, Fermat enumerations, normal bundles.

For a linear space ``L`` on ``D = {f = 0}`` the normal bundle sits in
``0 -> N_{L/D} -> O_L(1)^c -> O_L(d) -> 0`` where the right map is given by
the derivatives of ``f`` along ``c`` directions complementing ``L``,
restricted to ``L``.  Global sections of twists of ``N`` are therefore
kernels of explicit multiplication maps, computed here by exact rank.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateSample, SingularAlong
from .field import Field, PrimeField, nth_roots
from .linalg import _use_numpy, rank
from .poly import MultiPoly, monomial_basis
from .subspace import LinearSubspace

log = logging.getLogger(__name__)


def contains_subspace(f: MultiPoly, L: LinearSubspace) -> bool:
    """``L`` lies on ``{f = 0}`` iff the restriction of ``f`` vanishes identically."""
    return f.restrict(L).is_zero()


def normal_forms(f: MultiPoly, L: LinearSubspace) -> list[MultiPoly]:
    """Derivatives of ``f`` along coordinate directions complementing ``L``, restricted to ``L``."""
    return [f.directional_derivative(v).restrict(L) for v in L.complement_directions()]


def multiplication_matrix(forms: Sequence[MultiPoly], shift: int):
    """Matrix of ``(a_i) -> sum a_i * forms[i]`` with ``deg a_i = shift``.

    Rows index monomials of the target degree, columns index
    ``(i, monomial of degree shift)`` in order.
    """
    F = forms[0].field
    k = forms[0].num_vars
    delta = forms[0].degree
    src = monomial_basis(k, shift)
    tgt = monomial_basis(k, shift + delta)
    row_of = {m: r for r, m in enumerate(tgt)}
    if _use_numpy(F):
        M = np.zeros((len(tgt), len(src) * len(forms)), dtype=np.int64)
    else:
        M = [[F.zero] * (len(src) * len(forms)) for _ in tgt]
    for i, g in enumerate(forms):
        for j, a in enumerate(src):
            col = i * len(src) + j
            for mono, c in g.terms.items():
                r = row_of[tuple(x + y for x, y in zip(a, mono))]
                if _use_numpy(F):
                    M[r, col] = (M[r, col] + c) % F.p
                else:
                    M[r][col] = F.add(M[r][col], c)
    return M, len(tgt), len(src) * len(forms)


def syzygy_dimension(forms: Sequence[MultiPoly], shift: int) -> int:
    """``dim {(a_i) : sum a_i forms[i] = 0}`` with ``deg a_i = shift``."""
    if shift < 0:
        return 0
    M, nrows, ncols = multiplication_matrix(forms, shift)
    return ncols - rank(M, forms[0].field, ncols)


def has_common_zero(forms: Sequence[MultiPoly]) -> bool:
    """Whether the forms share a zero over the algebraic closure.

    With ``r`` variables and forms of degree ``delta`` that have no common
    zero, the ideal contains every form of degree ``r*(delta-1) + 1``; a
    common zero keeps the ideal away from that point in every degree.
    """
    r = forms[0].num_vars
    delta = forms[0].degree
    if all(g.is_zero() for g in forms):
        return True
    if len(forms) < r:
        return True
    if delta == 0:
        return False
    target = r * (delta - 1) + 1
    M, nrows, ncols = multiplication_matrix(forms, target - delta)
    return rank(M, forms[0].field, ncols) < nrows


@dataclass(frozen=True)
class SplittingType:
    """``N = sum O(a_i)``; ``twists`` sorted in decreasing order."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degree(self) -> int:
        return sum(self.twists)

    def h0(self, m: int = 0) -> int:
        return sum(max(0, a + m + 1) for a in self.twists)

    def __str__(self):
        return "(" + ", ".join(map(str, self.twists)) + ")"


@dataclass(frozen=True)
class SplittingComputation:
    splitting: SplittingType
    h: dict[int, int]


def normal_bundle_splitting(f: MultiPoly, line: LinearSubspace, detail: bool = False):
    """Splitting type of ``N_{line/D}`` from the kernel dimensions ``h(m) = h^0(N(m))``."""
    if line.sub_dim != 1:
        raise ValueError("normal_bundle_splitting needs a line")
    if not contains_subspace(f, line):
        raise ValueError("line is not contained in the hypersurface")
    d = f.degree
    gs = normal_forms(f, line)
    if has_common_zero(gs):
        raise SingularAlong("hypersurface is singular at a point of the line")
    lo, hi = -d - 2, d
    h = {m: syzygy_dimension(gs, m + 1) for m in range(lo - 1, hi + 1)}
    # at_least[m] = #{i : a_i >= -m}
    at_least = {m: h[m] - h[m - 1] for m in range(lo, hi + 1)}
    twists: list[int] = []
    for a in range(-hi, -lo + 1):
        mult = at_least[-a] - (at_least[-a - 1] if -a - 1 >= lo else 0)
        twists += [a] * mult
    st = SplittingType(tuple(sorted(twists, reverse=True)))
    if st.rank != len(gs) - 1 or any(st.h0(m) != h[m] for m in range(lo, hi + 1)):
        raise ArithmeticError(f"splitting reconstruction inconsistent: {st} vs h = {h}")
    return SplittingComputation(st, h) if detail else st


@dataclass(frozen=True)
class PlaneNormal:
    sections: int
    singular: bool


def plane_normal_sections(f: MultiPoly, plane: LinearSubspace) -> PlaneNormal:
    """``h^0(N_{plane/D})``: linear syzygies ``sum L_i Fbar_i = 0`` among the restricted derivatives."""
    if plane.sub_dim != 2:
        raise ValueError("plane_normal_sections needs a plane")
    if not contains_subspace(f, plane):
        raise ValueError("plane is not contained in the hypersurface")
    fbar = normal_forms(f, plane)
    return PlaneNormal(syzygy_dimension(fbar, 1), has_common_zero(fbar))


@dataclass
class FanoItem:
    subspace: LinearSubspace
    contained: bool
    h0_normal: int | None = None
    splitting: SplittingType | None = None
    singular: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"span": self.subspace.to_json(), "contained": self.contained,
               "h0_normal": self.h0_normal, "singular": self.singular}
        if self.splitting is not None:
            out["splitting"] = list(self.splitting.twists)
        out.update(self.extra)
        return out


@dataclass
class FanoReport:
    items: list[FanoItem]
    component_count: int
    component_dims: list[int]
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"items": [it.to_json() for it in self.items],
                "component_count": self.component_count,
                "component_dims": self.component_dims, **self.meta}


def perfect_matchings(indices: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """All pairings of an even-size index list, in lexicographic order."""
    indices = list(indices)
    if not indices:
        return [()]
    first = indices[0]
    out = []
    for k in range(1, len(indices)):
        rest = indices[1:k] + indices[k + 1:]
        for tail in perfect_matchings(rest):
            out.append(((first, indices[k]),) + tail)
    return out


def signed_fermat(signs: Sequence[int], d: int, F: Field, extra_vars: int = 0) -> MultiPoly:
    """``sum_i signs[i] * z_i^d`` in ``len(signs) + extra_vars`` variables."""
    nv = len(signs) + extra_vars
    terms = {}
    for i, s in enumerate(signs):
        e = [0] * nv
        e[i] = d
        terms[tuple(e)] = s
    return MultiPoly(terms, nv, d, F)


def fermat_linear_spaces(signs: Sequence[int], d: int, F: PrimeField, extra_vars: int = 0) -> list[LinearSubspace]:
    """Linear spaces ``{z_a = zeta z_b}`` on ``sum signs[i] z_i^d = 0`` for every pairing of the coordinates.

    For a pair ``(a, b)`` the root must satisfy ``signs[a] zeta^d + signs[b] = 0``.
    Extra trailing coordinates are set to zero.
    """
    k = len(signs)
    if k % 2:
        raise ValueError("need an even number of Fermat coordinates")
    if not isinstance(F, PrimeField):
        raise ValueError("Fermat enumeration needs a prime field with roots of unity")
    if (F.p - 1) % (2 * d):
        raise ValueError(f"GF({F.p}) lacks the needed roots: need p = 1 mod {2 * d}")
    roots = {s: nth_roots(F.p, d, s) for s in (1, -1)}
    out = []
    nv = k + extra_vars
    for matching in perfect_matchings(range(k)):
        choices = [roots[-signs[b] * signs[a]] for a, b in matching]

        def expand(i, acc):
            if i == len(matching):
                yield acc
                return
            for z in choices[i]:
                yield from expand(i + 1, acc + [z])

        for zetas in expand(0, []):
            param = [[0] * len(matching) for _ in range(nv)]
            for j, ((a, b), z) in enumerate(zip(matching, zetas)):
                param[a][j] = z
                param[b][j] = 1
            out.append(LinearSubspace(param, F))
    return sorted(out, key=lambda L: L.canonical())


def perturbed_fermat(d: int, g: MultiPoly) -> MultiPoly:
    """``z0^d - z1^d + z2^d - z3^d + z4 * g`` with ``deg g = d - 1``."""
    F = g.field
    if g.num_vars != 5 or g.degree != d - 1:
        raise ValueError("g must be a form of degree d - 1 in five variables")
    return signed_fermat((1, -1, 1, -1), d, F, extra_vars=1) + MultiPoly.variable(4, 5, F) * g


def balanced_splitting(rank_: int, degree: int) -> SplittingType:
    q, r = divmod(degree, rank_)
    return SplittingType(tuple(sorted([q + 1] * r + [q] * (rank_ - r), reverse=True)))


def fermat_lines(d: int, F: PrimeField, g: MultiPoly | None = None) -> FanoReport:
    """The ``3 d^2`` lines of the Fermat surface ``z0^d - z1^d + z2^d - z3^d = 0`` in ``P^3``.

    Each line is lifted to ``P^4`` by ``z4 = 0``.  When ``g`` is given the
    lines are also checked on ``z0^d - z1^d + z2^d - z3^d + z4 g = 0`` and
    their normal bundles there are computed.
    """
    surface = signed_fermat((1, -1, 1, -1), d, F)
    threefold = perturbed_fermat(d, g) if g is not None else None
    items = []
    for L in fermat_linear_spaces((1, -1, 1, -1), d, F, extra_vars=1):
        L3 = LinearSubspace(L.param[:4], F)
        on_surface = contains_subspace(surface, L3)
        item = FanoItem(L, on_surface)
        if threefold is not None:
            item.contained = on_surface and contains_subspace(threefold, L)
            try:
                st = normal_bundle_splitting(threefold, L)
                item.splitting, item.h0_normal = st, st.h0()
            except SingularAlong:
                item.singular = True
        items.append(item)
    isolated = [it for it in items if it.h0_normal == 0]
    count = len(isolated) if threefold is not None else 0
    return FanoReport(items, count, [0] * count, {"d": d, "prime": F.p, "lines": len(items)})


def perturbed_fermat_lines(d: int, F: PrimeField, seed: int = 0,
                           max_redraws: int = 10) -> tuple[FanoReport, MultiPoly, int]:
    """Draw a general ``g`` and compute the Fermat lines on the resulting threefold.

    A draw where some line has a non-balanced splitting (or the threefold is
    singular along a line) is logged and redrawn.  Returns the report, the
    accepted ``g`` and the number of rejected draws.
    """
    rng = random.Random(seed)
    target = balanced_splitting(2, 3 - d)
    for attempt in range(max_redraws + 1):
        g = MultiPoly.random(rng, 5, d - 1, F)
        report = fermat_lines(d, F, g)
        if all(it.splitting == target for it in report.items):
            report.meta["redraws"] = attempt
            return report, g, attempt
        log.info("non-generic g for d=%d (draw %d), redrawing", d, attempt)
    raise DegenerateSample(f"no generic g found for d={d} in {max_redraws + 1} draws")


def fermat_planes_p5(d: int, F: PrimeField, normal: bool = True) -> FanoReport:
    """The ``15 d^3`` planes on the Fermat fourfold ``sum z_i^d = 0`` in ``P^5``."""
    if d < 3:
        raise ValueError("fermat_planes_p5 needs d >= 3")
    f = signed_fermat((1,) * 6, d, F)
    items = []
    for L in fermat_linear_spaces((1,) * 6, d, F):
        item = FanoItem(L, contains_subspace(f, L))
        if normal and item.contained:
            pn = plane_normal_sections(f, L)
            item.h0_normal, item.singular = pn.sections, pn.singular
        items.append(item)
    isolated = [it for it in items if it.h0_normal == 0 and not it.singular]
    return FanoReport(items, len(isolated), [0] * len(isolated), {"d": d, "prime": F.p, "planes": len(items)})
