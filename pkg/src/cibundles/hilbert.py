"""Cohomology of twists of complete intersections in P^n, in closed form.

Everything is read off the Hilbert series ``prod(1 - t^e) / (1 - t)^(n+1)``
of the coordinate ring, together with Serre duality (``K_X = sigma * H``
with ``sigma = sum(degrees) - n - 1``) and the restriction sequence
``0 -> I_X(m) -> O_P(m) -> O_X(m) -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, prod

from .errors import InternalInconsistency


def binom_poly(a: int, k: int) -> int:
    """``a (a-1) ... (a-k+1) / k!``: the polynomial extension of C(a, k) to all integers ``a``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= a - i
    return num // prod(range(1, k + 1)) if k else 1


def h0_projective(n: int, m: int) -> int:
    return comb(m + n, n) if m >= 0 else 0


def hn_projective(n: int, m: int) -> int:
    """``h^n(P^n, O(m)) = h^0(O(-m-n-1))``."""
    return h0_projective(n, -m - n - 1)


@dataclass(frozen=True)
class CIType:
    """Type of a complete intersection: ambient ``P^n`` and the degrees cutting it out."""

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(d) for d in self.degrees)))
        if self.n < 1:
            raise ValueError("ambient dimension must be >= 1")
        if not 1 <= len(self.degrees) <= self.n:
            raise ValueError(f"need 1 <= codim <= n, got codim {len(self.degrees)} in P^{self.n}")
        if any(d < 1 for d in self.degrees):
            raise ValueError("all degrees must be >= 1")

    @property
    def codim(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.n - self.codim

    @property
    def d_sum(self) -> int:
        return sum(self.degrees)

    @property
    def degree(self) -> int:
        return prod(self.degrees)

    @property
    def canonical_twist(self) -> int:
        """``sigma`` with ``K_X = sigma * H`` (adjunction)."""
        return self.d_sum - self.n - 1


@dataclass(frozen=True)
class HilbertSeries:
    """Truncated Hilbert series of a complete intersection, exact integer coefficients."""

    ci: CIType
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, ci: CIType, order: int | None = None) -> "HilbertSeries":
        if order is None:
            order = ci.d_sum + ci.n + 5
        num = [0] * (order + 1)
        num[0] = 1
        for e in ci.degrees:
            # multiply by (1 - t^e)
            for i in range(order, e - 1, -1):
                num[i] -= num[i - e]
        for _ in range(ci.n + 1):
            # divide by (1 - t): partial sums
            for i in range(1, order + 1):
                num[i] += num[i - 1]
        return cls(ci, tuple(num))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, m: int) -> int:
        if m < 0:
            return 0
        if m > self.order:
            return HilbertSeries.of(self.ci, max(m, 2 * self.order)).coefficient(m)
        return self.coeffs[m]


@dataclass(frozen=True)
class CohomologyTable:
    """``h[i] = h^i`` of a sheaf at a fixed twist, with its Euler characteristic."""

    ci: CIType
    twist: int
    h: tuple[int, ...]
    sheaf: str = "structure"
    euler: int = field(init=False)

    def __post_init__(self):
        if any(x < 0 for x in self.h):
            raise InternalInconsistency(f"negative cohomology {self.h}")
        object.__setattr__(self, "euler", sum((-1) ** i * x for i, x in enumerate(self.h)))

    def to_json(self) -> dict:
        return {"n": self.ci.n, "degrees": list(self.ci.degrees), "twist": self.twist,
                "sheaf": self.sheaf, "h": list(self.h), "chi": self.euler}


_series_cache: dict[CIType, HilbertSeries] = {}


def _series(ci: CIType) -> HilbertSeries:
    if ci not in _series_cache:
        _series_cache[ci] = HilbertSeries.of(ci)
    return _series_cache[ci]


def hilbert_function(ci: CIType, m: int) -> int:
    """Hilbert function of the homogeneous coordinate ring; 0 for ``m < 0``."""
    return _series(ci).coefficient(m)


def koszul_euler_characteristic(ci: CIType, m: int) -> int:
    """``chi(O_X(m))`` as the alternating sum over the Koszul resolution."""
    total = 0
    for r in range(ci.codim + 1):
        for S in combinations(ci.degrees, r):
            total += (-1) ** r * binom_poly(m - sum(S) + ci.n, ci.n)
    return total


def structure_sheaf_cohomology(ci: CIType, m: int) -> CohomologyTable:
    if ci.dim == 0:
        table = CohomologyTable(ci, m, (ci.degree,))
    else:
        h = [0] * (ci.dim + 1)
        h[0] = hilbert_function(ci, m)
        h[ci.dim] += hilbert_function(ci, ci.canonical_twist - m)
        table = CohomologyTable(ci, m, tuple(h))
    chi = koszul_euler_characteristic(ci, m)
    if table.euler != chi:
        raise InternalInconsistency(f"chi mismatch for {ci} at twist {m}: table {table.euler}, Koszul {chi}")
    return table


def ideal_sheaf_cohomology(ci: CIType, m: int) -> CohomologyTable:
    """``h^i(P^n, I_X(m))`` for ``i = 0..n``."""
    n = ci.n
    hf = hilbert_function(ci, m)
    ox = structure_sheaf_cohomology(ci, m).h
    h = [0] * (n + 1)
    h[0] = h0_projective(n, m) - hf
    if ci.dim == 0:
        # H^0(O_P) -> H^0(O_Z) has image of dimension hf
        h[1] = ci.degree - hf
        if n == 1:
            h[1] += hn_projective(1, m)
    else:
        for i in range(2, ci.dim + 2):
            h[i] = ox[i - 1]
    if n >= 2:
        h[n] += hn_projective(n, m)
    table = CohomologyTable(ci, m, tuple(h), sheaf="ideal")
    expected = binom_poly(m + n, n) - koszul_euler_characteristic(ci, m)
    if table.euler != expected:
        raise InternalInconsistency(f"ideal chi mismatch for {ci} at twist {m}")
    return table


def cb_deficiency(ci: CIType, m: int) -> int:
    """``h^1(P^n, I_Z(m)) = deg Z - HF(m)`` for a zero-dimensional complete intersection."""
    if ci.dim != 0:
        raise ValueError(f"cb_deficiency needs a zero-dimensional type, got dimension {ci.dim}")
    return ci.degree - hilbert_function(ci, m)
