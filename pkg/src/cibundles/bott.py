"""Counting lines on a general hypersurface by torus localization on G(2, n+1).

The torus fixed lines are the coordinate lines ``<e_i, e_j>``.  At such a
line the bundle ``Sym^d S^*`` has weights ``a*w_i + b*w_j`` (``a + b = d``)
and the tangent space ``Hom(S, Q)`` has weights ``w_k - w_i``, ``w_k - w_j``
for ``k`` outside ``{i, j}``.  The line count is the sum over fixed points of
the top Chern class of the bundle divided by the tangent Euler class.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InternalInconsistency


def fixed_point_sum(n: int, d: int, weights: Sequence[int]) -> Fraction:
    if len(weights) != n + 1:
        raise ValueError(f"need {n + 1} weights")
    total = Fraction(0)
    for i, j in combinations(range(n + 1), 2):
        wi, wj = weights[i], weights[j]
        num = 1
        for a in range(d + 1):
            num *= a * wi + (d - a) * wj
        den = 1
        for k in range(n + 1):
            if k not in (i, j):
                den *= (wi - weights[k]) * (wj - weights[k])
        if den == 0:
            raise ZeroDivisionError("non-generic weights")
        total += Fraction(num, den)
    return total


def generic_weights(n: int, rng: random.Random, bound: int = 10**6) -> list[int]:
    """Distinct integer weights (all fixed-point denominators are then nonzero)."""
    while True:
        w = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if len(set(w)) == n + 1:
            return w


def bott_line_count(n: int, d: int, seed: int = 0) -> int:
    """Number of lines on a general degree-``d`` hypersurface in ``P^n`` when ``d = 2n - 3``.

    Evaluated with two independent generic weight vectors which must agree.
    """
    if n < 2 or d != 2 * n - 3:
        raise ValueError(f"expected a finite line count only for d = 2n - 3; got n={n}, d={d}")
    rng = random.Random(seed)
    values = [fixed_point_sum(n, d, generic_weights(n, rng)) for _ in range(2)]
    if values[0] != values[1] or values[0].denominator != 1:
        raise InternalInconsistency(f"localization is weight dependent: {values}")
    return int(values[0])
