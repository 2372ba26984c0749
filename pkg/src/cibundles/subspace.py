"""Linear subspaces of projective space given by spanning vectors."""

from __future__ import annotations

from typing import Sequence

from .field import QQ, Field
from .linalg import rank, rref


class LinearSubspace:
    """A ``k``-plane in ``P^n``, the projectivisation of a column span.

    ``param`` is an ``(n+1) x (k+1)`` matrix (tuple of rows); a parameter
    vector ``u`` maps to the point ``param @ u``.  Equality and hashing use the
    reduced echelon form of the spanning vectors.
    """

    __slots__ = ("field", "param", "_key")

    def __init__(self, param: Sequence[Sequence], field: Field = QQ):
        rows = tuple(tuple(field(x) for x in row) for row in param)
        if not rows or not rows[0]:
            raise ValueError("empty parameterisation")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged parameterisation matrix")
        if width > len(rows):
            raise ValueError("more spanning vectors than ambient coordinates")
        if rank(rows, field, width) != width:
            raise ValueError("parameterisation does not have full column rank")
        self.field = field
        self.param = rows
        R, _ = rref(self.spanning_vectors(), field)
        self._key = tuple(tuple(field(x) for x in r) for r in R)

    @classmethod
    def from_points(cls, points: Sequence[Sequence], field: Field = QQ) -> "LinearSubspace":
        """Span of the given homogeneous points (one point per entry)."""
        pts = [list(p) for p in points]
        return cls([[pts[j][i] for j in range(len(pts))] for i in range(len(pts[0]))], field)

    @property
    def ambient_dim(self) -> int:
        return len(self.param) - 1

    @property
    def sub_dim(self) -> int:
        return len(self.param[0]) - 1

    def spanning_vectors(self) -> list[tuple]:
        return [tuple(row[j] for row in self.param) for j in range(self.sub_dim + 1)]

    def canonical(self) -> tuple[tuple, ...]:
        return self._key

    def point(self, u: Sequence) -> tuple:
        F = self.field
        out = []
        for row in self.param:
            acc = F.zero
            for a, b in zip(row, u):
                acc = F.add(acc, F.mul(a, F(b)))
            out.append(acc)
        return tuple(out)

    def contains_point(self, pt: Sequence) -> bool:
        vecs = self.spanning_vectors()
        return rank(vecs + [tuple(self.field(x) for x in pt)], self.field) == len(vecs)

    def complement_directions(self) -> list[tuple]:
        """Coordinate vectors completing the spanning vectors to a basis (greedy, lowest index first)."""
        F = self.field
        n1 = self.ambient_dim + 1
        basis = self.spanning_vectors()
        extra = []
        for i in range(n1):
            e = tuple(F.one if j == i else F.zero for j in range(n1))
            if rank(basis + extra + [e], F) > len(basis) + len(extra):
                extra.append(e)
            if len(basis) + len(extra) == n1:
                break
        return extra

    def meet_dim(self, other: "LinearSubspace") -> int:
        """Projective dimension of the intersection (-1 when empty)."""
        a = self.spanning_vectors()
        b = other.spanning_vectors()
        return len(a) + len(b) - rank(a + b, self.field) - 1

    def __eq__(self, other):
        return isinstance(other, LinearSubspace) and self.field == other.field and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LinearSubspace(dim={self.sub_dim}, ambient={self.ambient_dim}, span={self._key})"

    def to_json(self) -> list[list[int | str]]:
        """Spanning vectors as JSON-friendly lists (rationals as strings)."""
        return [[x if isinstance(x, int) else str(x) for x in v] for v in self.spanning_vectors()]
