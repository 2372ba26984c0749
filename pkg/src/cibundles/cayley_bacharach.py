"""Reduced zero-dimensional schemes and their interpolation conditions.

A point set's ideal in degree ``m`` is the kernel of its evaluation matrix
(points x degree-``m`` monomials), so ``h^0(I_Z(m)) = #monomials - rank``.
Grid schemes realise each divisor as a union of hyperplanes, which keeps
every point rational over the ground field.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Sequence

import numpy as np

from .errors import DegenerateSample
from .field import Field, PrimeField
from .linalg import _rref_modp, _use_numpy, kernel_basis, rank, solve_point
from .poly import monomial_basis

log = logging.getLogger(__name__)


def normalize_point(pt: Sequence, F: Field) -> tuple:
    lead = next((x for x in pt if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    inv = F.inv(lead)
    return tuple(F.mul(x, inv) for x in pt)


@dataclass(frozen=True)
class PointSet:
    """Distinct normalized points of ``P^n`` with a note on how they were cut out."""

    field: Field
    ambient_dim: int
    points: tuple[tuple, ...]
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        F = self.field
        pts = tuple(normalize_point([F(x) for x in p], F) for p in self.points)
        if any(len(p) != self.ambient_dim + 1 for p in pts):
            raise ValueError("point with wrong number of coordinates")
        if len(set(pts)) != len(pts):
            raise ValueError("points are not distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.field, self.ambient_dim, tuple(self.points[i] for i in indices),
                        {"kind": "subset", "parent": self.provenance.get("kind")})

    def to_json(self) -> dict:
        out = {"ambient_dim": self.ambient_dim, "points": [list(p) for p in self.points]}
        if isinstance(self.field, PrimeField):
            out["prime"] = self.field.p
        return out

    @classmethod
    def from_json(cls, data: dict | list, field: Field) -> "PointSet":
        pts = data["points"] if isinstance(data, dict) else data
        n = data.get("ambient_dim", len(pts[0]) - 1) if isinstance(data, dict) else len(pts[0]) - 1
        return cls(field, n, tuple(tuple(p) for p in pts), {"kind": "explicit"})

    @classmethod
    def load(cls, path, field: Field) -> "PointSet":
        with open(path) as fh:
            return cls.from_json(json.load(fh), field)


def _power_tables(Z: PointSet, m: int) -> list[np.ndarray]:
    # tables[v][:, e] = x_v^e for every point
    p = Z.field.p
    pts = np.array(Z.points, dtype=np.int64)
    tables = []
    for v in range(Z.ambient_dim + 1):
        tab = np.ones((len(Z), m + 1), dtype=np.int64)
        for e in range(1, m + 1):
            tab[:, e] = tab[:, e - 1] * pts[:, v] % p
        tables.append(tab)
    return tables


def _evaluate_monomials(tables: list[np.ndarray], exps: np.ndarray, p: int) -> np.ndarray:
    out = np.ones((tables[0].shape[0], exps.shape[0]), dtype=np.int64)
    for v, tab in enumerate(tables):
        out = out * tab[:, exps[:, v]] % p
    return out


def evaluation_matrix(Z: PointSet, m: int):
    """Rows: points; columns: ``monomial_basis(n+1, m)``.  numpy ``int64`` over small F_p."""
    monos = monomial_basis(Z.ambient_dim + 1, m)
    F = Z.field
    if not Z.points:
        return np.zeros((0, len(monos)), dtype=np.int64) if _use_numpy(F) else []
    if _use_numpy(F):
        exps = np.array(monos, dtype=np.int64).reshape(len(monos), Z.ambient_dim + 1)
        return _evaluate_monomials(_power_tables(Z, m), exps, F.p)
    rows = []
    for pt in Z.points:
        row = []
        for mono in monos:
            v = F.one
            for x, e in zip(pt, mono):
                if e:
                    v = F.mul(v, F.pow(x, e))
            row.append(v)
        rows.append(row)
    return rows


@lru_cache(maxsize=4096)
def h0_ideal_points(Z: PointSet, m: int) -> int:
    if m < 0:
        return 0
    ncols = comb(m + Z.ambient_dim, Z.ambient_dim)
    if not Z.points:
        return ncols
    if ncols > 2 * len(Z) and _use_numpy(Z.field):
        return ncols - _evaluation_rank_chunked(_in_span(Z), m)
    return ncols - rank(evaluation_matrix(Z, m), Z.field, ncols)


_CHUNK = 4096


@lru_cache(maxsize=16)
def _in_span(Z: PointSet) -> PointSet:
    """``Z`` in coordinates on its linear span.

    Forms of degree ``m`` on ``P^n`` restrict onto all forms on a linear
    subspace, so the evaluation rank is unchanged.  With an RREF basis of the
    span, a point's coordinates are its entries in the pivot columns.
    """
    _, pivots = _rref_modp(np.array(Z.points, dtype=np.int64), Z.field.p)
    if len(pivots) == Z.ambient_dim + 1:
        return Z
    pts = tuple(tuple(pt[c] for c in pivots) for pt in Z.points)
    return PointSet(Z.field, len(pivots) - 1, pts, {"kind": "span", "parent": Z.provenance.get("kind")})


@lru_cache(maxsize=64)
def _exponent_array(nv: int, m: int) -> np.ndarray:
    """All exponent vectors of degree ``m`` in ``nv`` variables, one per row."""
    if nv == 1:
        return np.array([[m]], dtype=np.int64)
    parts = []
    for a in range(m, -1, -1):
        rest = _exponent_array(nv - 1, m - a)
        parts.append(np.hstack([np.full((len(rest), 1), a, dtype=np.int64), rest]))
    return np.vstack(parts)


def _evaluation_rank_chunked(Z: PointSet, m: int) -> int:
    """Rank of the evaluation matrix without materialising it.

    The column space lives in ``F_p^|Z|``; monomial columns are reduced in
    blocks against the basis found so far, stopping once the rank is ``|Z|``.
    Columns are visited in a fixed shuffled order: the answer does not depend
    on it, but structured orders can delay reaching full rank.
    """
    p, k = Z.field.p, len(Z)
    tables = _power_tables(Z, m)
    exps = _exponent_array(Z.ambient_dim + 1, m)
    exps = exps[np.random.default_rng(0).permutation(len(exps))]
    basis = np.zeros((0, k), dtype=np.int64)
    # a first block of 2k columns usually certifies full rank on its own
    bounds = [0] + list(range(2 * k, len(exps), _CHUNK)) + [len(exps)]
    for start, stop in zip(bounds, bounds[1:]):
        cols = _evaluate_monomials(tables, exps[start:stop], p).T
        basis, _ = _rref_modp(np.vstack([basis, cols]), p)
        if basis.shape[0] == k:
            break
    return basis.shape[0]


def h1_ideal_points(Z: PointSet, m: int) -> int:
    """``|Z| - (h^0(O(m)) - h^0(I_Z(m)))``: failure of ``Z`` to impose independent conditions."""
    if m < 0:
        return len(Z)
    return len(Z) - (comb(m + Z.ambient_dim, Z.ambient_dim) - h0_ideal_points(Z, m))


@dataclass(frozen=True)
class CBResult:
    holds: bool
    witness: tuple | None = None
    witness_index: int | None = None


def cayley_bacharach_check(Z: PointSet, m: int) -> CBResult:
    """Every degree-``m`` form through all but one point of ``Z`` passes through the last one?

    Dropping point ``z`` raises ``h^0`` exactly when its evaluation row is not
    in the span of the other rows, i.e. when every left-kernel vector of the
    evaluation matrix vanishes at ``z``.
    """
    if m < 0:
        raise ValueError("twist must be >= 0")
    F = Z.field
    M = evaluation_matrix(Z, m)
    ncols = comb(m + Z.ambient_dim, Z.ambient_dim)
    cols = np.asarray(M).T.tolist() if _use_numpy(F) else [list(c) for c in zip(*M)]
    left = kernel_basis(cols, F, len(Z)) if cols else []
    support = set()
    for v in left:
        support.update(i for i, x in enumerate(v) if x != 0)
    for i, pt in enumerate(Z.points):
        if i not in support:
            return CBResult(False, pt, i)
    return CBResult(True)


def cayley_bacharach_bruteforce(Z: PointSet, m: int) -> CBResult:
    """Reference version: one rank computation per removed point."""
    base = h0_ideal_points(Z, m)
    for i, pt in enumerate(Z.points):
        rest = Z.subset([j for j in range(len(Z)) if j != i])
        if h0_ideal_points(rest, m) != base:
            return CBResult(False, pt, i)
    return CBResult(True)


@dataclass(frozen=True)
class ResidualIdentity:
    holds: bool
    lhs: int
    rhs: int
    m: int
    m_dual: int


def residual_identity_check(Z: PointSet, first: Sequence[int], m: int, d_sum: int) -> ResidualIdentity:
    """Compare ``h^0(I_Z'(m)) - h^0(I_Z(m))`` with ``h^1(I_Z''(d_sum - n - 1 - m))``.

    ``first`` indexes the points of ``Z'``; ``Z''`` is the complement.
    """
    n = Z.ambient_dim
    m_dual = d_sum - n - 1 - m
    if m < 0 or m_dual < 0:
        raise ValueError(f"need 0 <= m <= d_sum - n - 1 = {d_sum - n - 1}, got m = {m}")
    chosen = set(first)
    if not chosen <= set(range(len(Z))):
        raise ValueError("split indices out of range")
    Z1 = Z.subset(sorted(chosen))
    Z2 = Z.subset([i for i in range(len(Z)) if i not in chosen])
    lhs = h0_ideal_points(Z1, m) - h0_ideal_points(Z, m)
    rhs = h1_ideal_points(Z2, m_dual)
    return ResidualIdentity(lhs == rhs, lhs, rhs, m, m_dual)


def _random_vector(rng: random.Random, F: Field, length: int) -> tuple:
    return tuple(F.random(rng) for _ in range(length))


def build_grid_scheme(n: int, degrees: Sequence[int], field: Field, seed: int = 0,
                      max_tries: int = 20, fixed: Sequence[Sequence[Sequence]] | None = None) -> PointSet:
    """Complete intersection of ``n`` divisors, each a union of ``degrees[i]`` random hyperplanes.

    ``fixed`` optionally pins the hyperplanes of the leading divisors.
    Degenerate draws (coincident points, a non-transverse choice of
    hyperplanes) are logged and redrawn.
    """
    degrees = list(degrees)
    if len(degrees) != n:
        raise ValueError(f"need exactly n = {n} divisors, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be >= 1")
    fixed = [list(map(tuple, hs)) for hs in (fixed or [])]
    rng = random.Random(seed)
    for attempt in range(max_tries):
        hyperplanes = [fixed[i] if i < len(fixed) else
                       [_random_vector(rng, field, n + 1) for _ in range(d)]
                       for i, d in enumerate(degrees)]
        points = []
        ok = True
        for choice in product(*(range(d) for d in degrees)):
            eqs = [hyperplanes[i][j] for i, j in enumerate(choice)]
            if rank(eqs, field, n + 1) != n:
                ok = False
                break
            points.append(normalize_point(solve_point(eqs, field, n + 1), field))
        if ok and len(set(points)) == len(points):
            return PointSet(field, n, tuple(points),
                            {"kind": "grid", "degrees": degrees, "seed": seed, "attempt": attempt,
                             "hyperplanes": [[list(h) for h in hs] for hs in hyperplanes]})
        log.info("degenerate grid draw for degrees %s (attempt %d), redrawing", degrees, attempt)
    raise DegenerateSample(f"no transverse grid for degrees {degrees} after {max_tries} draws")


def build_z_configuration(n: int, degrees: Sequence[int], field: Field, seed: int = 0) -> PointSet:
    """The scheme ``Z = Y cap D_2 cap ... cap D_{n-2}`` inside a codimension-two plane.

    ``degrees = (d_1, ..., d_{n-2})``; ``Y`` is a union of ``d_1 - 1``
    hyperplane sections of the plane, so ``Z`` has type
    ``(1, 1, d_1 - 1, d_2, ..., d_{n-2})`` and length ``(d_1 - 1) * e``.
    """
    degrees = list(degrees)
    if len(degrees) != n - 2:
        raise ValueError(f"need n - 2 = {n - 2} degrees, got {len(degrees)}")
    ztype = [1, 1, degrees[0] - 1] + degrees[1:]
    Z = build_grid_scheme(n, ztype, field, seed)
    Z.provenance.update({"kind": "z-configuration", "surface_degrees": degrees,
                         "plane_equations": Z.provenance["hyperplanes"][:2]})
    return Z


def random_points(n: int, count: int, field: Field, seed: int = 0) -> PointSet:
    rng = random.Random(seed)
    pts: list[tuple] = []
    while len(pts) < count:
        v = _random_vector(rng, field, n + 1)
        if any(v):
            v = normalize_point(v, field)
            if v not in pts:
                pts.append(v)
    return PointSet(field, n, tuple(pts), {"kind": "random", "seed": seed})


def grid_degree(degrees: Sequence[int]) -> int:
    return prod(degrees)
