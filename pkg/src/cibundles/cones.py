"""Lines on ``g(z0, z1) + h(z2, z3, z4) = 0`` in ``P^4``.

Each root ``p`` of ``g`` on the line ``{z2 = z3 = z4 = 0}`` is the vertex of
a cone over the plane curve ``{z0 = z1 = h = 0}``, so the hypersurface holds
one one-parameter family of lines per root.  Lines avoiding that line are
excluded generically by a rank count on two orbit representatives.
"""

from __future__ import annotations

import logging
import random
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSample, SingularAlong
from .fano import contains_subspace, normal_bundle_splitting
from .field import PrimeField
from .linalg import rank
from .poly import MultiPoly, monomial_basis
from .subspace import LinearSubspace

log = logging.getLogger(__name__)

#: Orbit representatives for lines missing ``{z2 = z3 = z4 = 0}``:
#: ``m1 = {z0 = z1 = z3, z4 = 0}`` meets the plane ``{z0 = z1 = 0}``,
#: ``m2 = {z0 = z2, z1 = z3, z4 = 0}`` does not.
REPRESENTATIVE_LINES = {
    "m1": [[1, 0], [1, 0], [0, 1], [1, 0], [0, 0]],
    "m2": [[1, 0], [0, 1], [1, 0], [0, 1], [0, 0]],
}


def _embed(poly: MultiPoly, offset: int, nv: int = 5) -> MultiPoly:
    terms = {(0,) * offset + m + (0,) * (nv - offset - poly.num_vars): c for m, c in poly.terms.items()}
    return MultiPoly._trusted(terms, nv, poly.degree, poly.field)


def cone_hypersurface(g: MultiPoly, h: MultiPoly) -> MultiPoly:
    if g.num_vars != 2 or h.num_vars != 3 or g.degree != h.degree:
        raise ValueError("need a binary form g and a ternary form h of the same degree")
    return _embed(g, 0) + _embed(h, 2)


def random_cone_forms(d: int, F: PrimeField, seed: int = 0) -> tuple[MultiPoly, MultiPoly]:
    """``g`` with ``d`` distinct rational roots and a random ternary ``h``."""
    rng = random.Random(seed)
    roots: set[int] = set()
    while len(roots) < d:
        roots.add(rng.randrange(F.p))
    g = MultiPoly({(0, 0): 1}, 2, 0, F)
    for r in sorted(roots):
        g = g * MultiPoly({(1, 0): 1, (0, 1): F.neg(r)}, 2, 1, F)
    g = g.scale(1 + rng.randrange(F.p - 1))
    h = MultiPoly.random(rng, 3, d, F)
    return g, h


def _univariate_values(coeffs: list[int], p: int) -> np.ndarray:
    """Values of ``sum coeffs[k] x^k`` at every ``x`` in F_p (Horner, vectorised)."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    return acc


def binary_roots(g: MultiPoly) -> list[tuple[int, int]]:
    """Distinct F_p-rational projective roots of a binary form, by exhaustive evaluation."""
    F = g.field
    d = g.degree
    # g(x, 1) = sum_k c_(k, d-k) x^k
    coeffs = [g.terms.get((k, d - k), 0) for k in range(d + 1)]
    roots = [(int(x), 1) for x in np.flatnonzero(_univariate_values(coeffs, F.p) == 0)]
    if g.terms.get((d, 0), 0) == 0:
        roots.append((1, 0))
    return roots


def plane_curve_points(h: MultiPoly, count: int, rng: random.Random) -> list[tuple[int, int, int]]:
    """``count`` distinct points of ``{h = 0}`` in ``P^2``: random ``(a, b)``, solve for the last coordinate."""
    F = h.field
    d = h.degree
    pts: list[tuple[int, int, int]] = []
    for _ in range(50 * count):
        a, b = rng.randrange(F.p), rng.randrange(F.p)
        coeffs = [0] * (d + 1)
        for (i, j, k), c in h.terms.items():
            coeffs[k] = (coeffs[k] + c * pow(a, i, F.p) * pow(b, j, F.p)) % F.p
        for z in np.flatnonzero(_univariate_values(coeffs, F.p) == 0):
            pt = (a, b, int(z))
            if any(pt) and pt not in pts:
                pts.append(pt)
        if len(pts) >= count:
            return pts[:count]
    raise DegenerateSample("could not sample points on the plane curve")


def restriction_rank(d: int, F: PrimeField, line: LinearSubspace) -> int:
    """Rank of ``(g, h) -> (g + h)|_line`` on the full coefficient space of ``(g, h)``."""
    cols = []
    for mono in monomial_basis(2, d):
        cols.append(_embed(MultiPoly._trusted({mono: 1}, 2, d, F), 0).restrict(line).coefficients())
    for mono in monomial_basis(3, d):
        cols.append(_embed(MultiPoly._trusted({mono: 1}, 3, d, F), 2).restrict(line).coefficients())
    return rank(cols, F)


@dataclass
class ConeFamily:
    vertex: tuple
    rulings_checked: int
    all_contained: bool
    ruling_h0_normal: int | None = None


@dataclass
class Example46Report:
    d: int
    prime: int
    families: list[ConeFamily]
    ranks: dict[str, int]
    vanishes_on_representative: dict[str, bool]
    degenerate: bool
    notes: list[str] = field(default_factory=list)

    @property
    def family_count(self) -> int:
        return sum(fam.all_contained for fam in self.families)

    def to_json(self) -> dict:
        return {
            "items": [{"vertex": list(f.vertex), "rulings_checked": f.rulings_checked,
                       "contained": f.all_contained, "ruling_h0_normal": f.ruling_h0_normal}
                      for f in self.families],
            "component_count": self.family_count,
            "component_dims": [1] * self.family_count,
            "d": self.d, "prime": self.prime, "ranks": self.ranks,
            "vanishes_on_representative": self.vanishes_on_representative,
            "degenerate": self.degenerate, "notes": self.notes,
        }


def example46_check(d: int, g: MultiPoly, h: MultiPoly, samples: int = 3, seed: int = 0,
                    normal: bool = True) -> Example46Report:
    F = g.field
    notes = []
    if d <= 5:
        warnings.warn(f"d = {d} <= 5: the rank certificate d + 1 > 6 does not apply")
        notes.append("d <= 5: rank certificate not meaningful")
    f = cone_hypersurface(g, h)
    rng = random.Random(seed)
    vertices = [(a, b, 0, 0, 0) for a, b in binary_roots(g)]
    degenerate = len(vertices) < d
    if degenerate:
        notes.append(f"g has only {len(vertices)} distinct rational roots (expected {d})")
        log.info("degenerate g: %d distinct roots for degree %d", len(vertices), d)
    curve = [(0, 0) + q for q in plane_curve_points(h, samples, rng)]
    families = []
    for v in vertices:
        lines = [LinearSubspace.from_points([v, q], F) for q in curve]
        fam = ConeFamily(v, len(lines), all(contains_subspace(f, L) for L in lines))
        if normal and fam.all_contained:
            try:
                fam.ruling_h0_normal = normal_bundle_splitting(f, lines[0]).h0()
            except SingularAlong:
                notes.append(f"singular along a ruling through {v}")
        families.append(fam)
    ranks, vanish = {}, {}
    for name, param in REPRESENTATIVE_LINES.items():
        L = LinearSubspace(param, F)
        ranks[name] = restriction_rank(d, F, L)
        vanish[name] = contains_subspace(f, L)
    return Example46Report(d, F.p, families, ranks, vanish, degenerate, notes)


def example46(d: int, F: PrimeField, seed: int = 0, max_redraws: int = 10) -> Example46Report:
    """Draw general ``(g, h)`` (redrawing degenerate ones) and run the checks."""
    for attempt in range(max_redraws + 1):
        g, h = random_cone_forms(d, F, seed + attempt)
        rep = example46_check(d, g, h, seed=seed + attempt)
        if not rep.degenerate and not any(rep.vanishes_on_representative.values()):
            return rep
        log.info("degenerate (g, h) draw %d for d=%d, redrawing", attempt, d)
    raise DegenerateSample(f"no general (g, h) for d={d}")
