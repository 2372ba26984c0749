"""Exact ground fields: the rationals and prime fields F_p.

Field elements are plain Python values (``Fraction`` for the rationals,
``int`` in ``[0, p)`` for F_p).  All arithmetic goes through the field
object so that polynomial and matrix code stays field-agnostic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

Scalar = Union[int, Fraction]

#: Default lower bound for automatically selected primes.
DEFAULT_PRIME_FLOOR = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def choose_prime(orders: Iterable[int] = (), avoid: Iterable[int] = (),
                 floor: int = DEFAULT_PRIME_FLOOR) -> int:
    """Smallest prime ``p > floor`` with ``2*lcm(orders) | p - 1``.

    ``avoid`` lists integers (degrees, degree-minus-one values) that ``p``
    must not divide.
    """
    modulus = 2 * reduce(math.lcm, [o for o in orders if o > 0], 1)
    avoid = [a for a in avoid if a != 0]
    p = floor + 1
    p += (1 - p) % modulus
    while True:
        if is_prime(p) and all(a % p for a in avoid):
            return p
        p += modulus


class Rationals:
    """The field Q with ``Fraction`` elements."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def random(self, rng, bound: int = 100) -> Fraction:
        return Fraction(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p; elements are ints reduced into ``[0, p)``."""

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        return pow(a, e, self.p)

    def random(self, rng, bound: int | None = None) -> int:
        return rng.randrange(self.p)

    def signed(self, a: int) -> int:
        """Symmetric representative in ``(-p/2, p/2]``, for display."""
        return a - self.p if a > self.p // 2 else a

    def primitive_root(self) -> int:
        factors = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        return 1  # p == 2

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()
Field = Union[Rationals, PrimeField]


def nth_roots(p: int, n: int, sign: int = 1) -> list[int]:
    """All solutions of ``x^n = sign`` in F_p, sorted.

    Requires ``2n | p - 1`` so that both signs have exactly ``n`` solutions.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n < 1:
        raise ValueError("n must be positive")
    if (p - 1) % (2 * n):
        raise ValueError(f"p={p} rejected: need p = 1 mod {2 * n}")
    F = PrimeField(p)
    g = F.primitive_root()
    zeta = pow(g, (p - 1) // n, p)
    base = 1 if sign == 1 else pow(g, (p - 1) // (2 * n), p)
    return sorted(base * pow(zeta, k, p) % p for k in range(n))


def field_for(orders: Iterable[int] = (), avoid: Iterable[int] = (),
              prime: int | str | None = "auto") -> PrimeField:
    """Prime field for a computation needing roots of unity of ``orders``.

    ``prime`` may force a specific prime; it is validated against the same
    congruences the automatic choice would satisfy.
    """
    orders = list(orders)
    avoid = list(avoid)
    if prime in (None, "auto"):
        return PrimeField(choose_prime(orders, avoid))
    p = int(prime)
    F = PrimeField(p)
    modulus = 2 * reduce(math.lcm, [o for o in orders if o > 0], 1)
    if (p - 1) % modulus:
        raise ValueError(f"p={p} rejected: need p = 1 mod {modulus}")
    bad = [a for a in avoid if a and a % p == 0]
    if bad:
        raise ValueError(f"p={p} rejected: divides {bad}")
    return F
