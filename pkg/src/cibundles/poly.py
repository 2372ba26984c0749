"""Sparse homogeneous multivariate polynomials over an exact field."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .field import QQ, Field

Monomial = tuple[int, ...]


def grevlex_key(mono: Monomial) -> tuple[int, ...]:
    """Sort key putting monomials of equal degree in descending grevlex order."""
    return (-sum(mono),) + tuple(reversed(mono))


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of ``degree`` in ``num_vars`` variables, grevlex-descending."""
    if degree < 0:
        return ()
    monos = []
    for combo in combinations_with_replacement(range(num_vars), degree):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        monos.append(tuple(e))
    return tuple(sorted(monos, key=grevlex_key))


class MultiPoly:
    """Homogeneous polynomial stored as ``{exponent tuple: nonzero coefficient}``.

    Instances are treated as immutable.  The zero polynomial keeps the degree
    it was created with so that homogeneous bookkeeping survives cancellation.
    """

    __slots__ = ("field", "num_vars", "degree", "terms")

    def __init__(self, terms: Mapping[Monomial, object], num_vars: int, degree: int | None = None,
                 field: Field = QQ):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        clean: dict[Monomial, object] = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != num_vars:
                raise ValueError(f"monomial {mono} has wrong length for {num_vars} variables")
            c = field(c)
            if c != 0:
                clean[mono] = field.add(clean.get(mono, field.zero), c)
                if clean[mono] == 0:
                    del clean[mono]
        degs = {sum(m) for m in clean}
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degs)})")
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        elif degree is None:
            degree = 0
        self.field = field
        self.num_vars = num_vars
        self.degree = degree
        self.terms = clean

    # construction helpers

    @classmethod
    def _trusted(cls, terms: dict, num_vars: int, degree: int, field: Field) -> "MultiPoly":
        """Skip validation; ``terms`` must already be reduced, nonzero and homogeneous."""
        obj = cls.__new__(cls)
        obj.field, obj.num_vars, obj.degree, obj.terms = field, num_vars, degree, terms
        return obj

    @classmethod
    def zero(cls, num_vars: int, degree: int = 0, field: Field = QQ) -> "MultiPoly":
        return cls({}, num_vars, degree, field)

    @classmethod
    def variable(cls, i: int, num_vars: int, field: Field = QQ) -> "MultiPoly":
        e = [0] * num_vars
        e[i] = 1
        return cls({tuple(e): 1}, num_vars, 1, field)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, num_vars: int, degree: int, field: Field = QQ) -> "MultiPoly":
        """Polynomial whose coefficients on ``monomial_basis(num_vars, degree)`` are ``coeffs``."""
        basis = monomial_basis(num_vars, degree)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient vector length does not match the monomial basis")
        return cls(dict(zip(basis, coeffs)), num_vars, degree, field)

    @classmethod
    def random(cls, rng, num_vars: int, degree: int, field: Field) -> "MultiPoly":
        return cls.from_coefficients([field.random(rng) for _ in monomial_basis(num_vars, degree)],
                                     num_vars, degree, field)

    def coefficients(self) -> list:
        """Dense coefficient vector on ``monomial_basis(num_vars, degree)``."""
        z = self.field.zero
        return [self.terms.get(m, z) for m in monomial_basis(self.num_vars, self.degree)]

    # basic predicates

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.num_vars != other.num_vars or self.field != other.field:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    # arithmetic

    def _check_compatible(self, other: "MultiPoly"):
        if self.num_vars != other.num_vars or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = F.add(out.get(m, F.zero), c)
        deg = self.degree if not self.is_zero() else other.degree
        return MultiPoly(out, self.num_vars, None if out else deg, F)

    def __neg__(self) -> "MultiPoly":
        F = self.field
        return MultiPoly({m: F.neg(c) for m, c in self.terms.items()}, self.num_vars, self.degree, F)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        F = self.field
        c = F(c)
        return MultiPoly({m: F.mul(c, v) for m, v in self.terms.items()}, self.num_vars, self.degree, F)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_compatible(other)
        F = self.field
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = F.add(out.get(m, F.zero), F.mul(c1, c2))
        return MultiPoly(out, self.num_vars, self.degree + other.degree, F)

    __rmul__ = scale

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result = MultiPoly({(0,) * self.num_vars: 1}, self.num_vars, 0, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # calculus and evaluation

    def __call__(self, *pt):
        return self.evaluate(pt[0] if len(pt) == 1 and isinstance(pt[0], (list, tuple)) else pt)

    def evaluate(self, pt: Sequence):
        if len(pt) != self.num_vars:
            raise ValueError(f"point has {len(pt)} coordinates, polynomial has {self.num_vars} variables")
        F = self.field
        pt = [F(x) for x in pt]
        acc = F.zero
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(pt, mono):
                if e:
                    v = F.mul(v, F.pow(x, e))
            acc = F.add(acc, v)
        return acc

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.num_vars:
            raise IndexError(f"variable index {i} out of range")
        F = self.field
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e:
                m = list(mono)
                m[i] -= 1
                v = F.mul(c, F(e))
                if v != 0:
                    out[tuple(m)] = v
        return MultiPoly._trusted(out, self.num_vars, max(self.degree - 1, 0), F)

    def directional_derivative(self, v: Sequence) -> "MultiPoly":
        """Derivative along the constant vector ``v``: ``sum_j v_j df/dz_j``."""
        F = self.field
        out = MultiPoly.zero(self.num_vars, max(self.degree - 1, 0), F)
        for j, vj in enumerate(v):
            vj = F(vj)
            if vj != 0:
                out = out + self.partial(j).scale(vj)
        return out

    def substitute_linear(self, forms: Sequence[Sequence]) -> "MultiPoly":
        """Compose with a linear map: ``z_i -> sum_j forms[i][j] * u_j``.

        ``forms`` has one row per variable of ``self``; the result is a form of
        the same degree in ``len(forms[0])`` variables.
        """
        if len(forms) != self.num_vars:
            raise ValueError(f"need {self.num_vars} linear forms, got {len(forms)}")
        F = self.field
        k = len(forms[0])
        p = getattr(F, "p", None)
        unit = [tuple(int(a == j) for a in range(k)) for j in range(k)]
        lin = [{unit[j]: F(c) for j, c in enumerate(row) if F(c) != 0} for row in forms]

        def mul(a: dict, b: dict) -> dict:
            out: dict = {}
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    out[m] = out.get(m, 0) + c1 * c2
            if p is not None:
                return {m: c % p for m, c in out.items() if c % p}
            return {m: c for m, c in out.items() if c != 0}

        powers: dict[tuple[int, int], dict] = {}

        def power(i: int, e: int) -> dict:
            if (i, e) not in powers:
                powers[(i, e)] = lin[i] if e == 1 else mul(power(i, e - 1), lin[i])
            return powers[(i, e)]

        const = {(0,) * k: F.one}
        # products of prefix monomials are shared between terms
        prefix: dict[tuple, dict] = {(): const}

        def expand(mono: tuple) -> dict:
            if mono in prefix:
                return prefix[mono]
            head = expand(mono[:-1])
            i, e = len(mono) - 1, mono[-1]
            val = head if e == 0 else mul(head, power(i, e))
            prefix[mono] = val
            return val

        acc: dict[Monomial, object] = {}
        for mono, c in self.terms.items():
            for m, v in expand(mono).items():
                acc[m] = acc.get(m, 0) + c * v
        if p is not None:
            acc = {m: v % p for m, v in acc.items() if v % p}
        else:
            acc = {m: v for m, v in acc.items() if v != 0}
        return MultiPoly._trusted(acc, k, self.degree, F)

    def restrict(self, subspace) -> "MultiPoly":
        """Pull back along the parameterisation of a linear subspace."""
        if subspace.ambient_dim + 1 != self.num_vars:
            raise ValueError("subspace ambient dimension does not match the polynomial ring")
        return self.substitute_linear(subspace.param)

    # text format

    def to_string(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        F = self.field
        show = getattr(F, "signed", lambda c: c)
        parts = []
        for mono, c in self.sorted_terms():
            c = show(c)
            factors = [f"{var}{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(mono) if e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly({self.to_string()!r}, num_vars={self.num_vars}, field={self.field!r})"


_TERM = re.compile(r"([+-])?([^+-]+)")
_FACTOR = re.compile(r"^([a-zA-Z]+)(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, num_vars: int | None = None, field: Field = QQ) -> MultiPoly:
    """Parse ``c*z0^a0*...*zn^an +/- ...``; whitespace is ignored.

    Coefficients are integers or ``num/den``.  ``num_vars`` defaults to one
    more than the largest variable index present.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    raw: list[tuple[Fraction, dict[int, int]]] = []
    pos = 0
    for match in _TERM.finditer(s):
        if match.start() != pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = match.end()
        sign, body = match.groups()
        coeff = Fraction(-1 if sign == "-" else 1)
        exps: dict[int, int] = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {body!r}")
            fm = _FACTOR.match(factor)
            if fm:
                idx, e = int(fm.group(2)), int(fm.group(3) or 1)
                exps[idx] = exps.get(idx, 0) + e
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ValueError(f"bad factor {factor!r}") from None
        raw.append((coeff, exps))
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    top = max((max(e) for _, e in raw if e), default=-1)
    if num_vars is None:
        num_vars = top + 1 if top >= 0 else 1
    elif top >= num_vars:
        raise ValueError(f"variable z{top} exceeds {num_vars} variables")
    terms: dict[Monomial, object] = {}
    for coeff, exps in raw:
        mono = tuple(exps.get(i, 0) for i in range(num_vars))
        terms[mono] = field.add(terms.get(mono, field.zero), field(coeff))
    return MultiPoly(terms, num_vars, None, field)


def binary_form(coeffs: Iterable, field: Field = QQ) -> MultiPoly:
    """``sum_i coeffs[i] * s^(d-i) * t^i`` with ``d = len(coeffs) - 1``."""
    coeffs = list(coeffs)
    d = len(coeffs) - 1
    return MultiPoly({(d - i, i): c for i, c in enumerate(coeffs)}, 2, d, field)
