"""Characteristic-class linear algebra on ``CP^(d-1) x S^2k``.

Cohomology is ``Q[x, y] / (x^d, y^2)`` with ``|x| = 2`` and ``|y| = 2k``.  The
l-class of ``CP^j`` is the truncation of ``(x / tanh x)^(j+1)``.  A normal
invariant of ``CP^(d-1) x D^2k`` pulls the l-class of ``G/TOP`` back to a class
``beta``; the splitting invariants ``s_4i`` determine ``beta`` through a
unitriangular system, and the l-class of the normal bundle is
``alpha = (8 beta + 1) * l(CP^(d-1))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

import sympy as sp

from . import tables


# -- power series ---------------------------------------------------------

@dataclass(frozen=True)
class PowerSeries:
    """Truncated series ``sum_n c[n] z^n``; here ``z`` usually stands for ``x^2``."""

    coefficients: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < len(self.coefficients):
            raise ValueError("truncation order is smaller than the number of coefficients")

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n >= self.order:
            raise IndexError(f"coefficient {n} is beyond the truncation order {self.order}")
        return self.coefficients[n] if n < len(self.coefficients) else Fraction(0)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.order, other.order)
        out = [Fraction(0)] * order
        for i, a in enumerate(self.coefficients[:order]):
            if a:
                for j, b in enumerate(other.coefficients[: order - i]):
                    out[i + j] += a * b
        return PowerSeries(tuple(out), order)

    def __pow__(self, p: int) -> "PowerSeries":
        if p < 0:
            raise ValueError("only non-negative powers are defined")
        out = PowerSeries((Fraction(1),), self.order)
        base = self
        while p:
            if p & 1:
                out = out * base
            base = base * base
            p >>= 1
        return out


@lru_cache(maxsize=None)
def l_genus_series(order: int) -> PowerSeries:
    """``x / tanh x = sum_n 2^(2n) B_2n / (2n)! x^(2n)``, in powers of ``x^2``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    coeffs = []
    for n in range(order):
        b = sp.bernoulli(2 * n)
        c = sp.Rational(2 ** (2 * n)) * b / sp.factorial(2 * n)
        coeffs.append(Fraction(int(c.p), int(c.q)))
    return PowerSeries(tuple(coeffs), order)


@lru_cache(maxsize=None)
def _l_power(p: int, order: int) -> PowerSeries:
    return l_genus_series(order) ** p


def gamma(j: int, w: int) -> Fraction:
    """Coefficient of ``x^(2w)`` in ``l(CP^j) = (x / tanh x)^(j+1)``."""
    if j < 0 or not 0 <= w <= j // 2:
        raise ValueError(f"need 0 <= w <= floor(j/2), got j={j}, w={w}")
    return _l_power(j + 1, w + 1)[w]


def _l_cp_in_x(j: int, degree: int) -> list[Fraction]:
    """``(x / tanh x)^j`` as a dense polynomial in ``x`` of degree ``< degree``."""
    half = (degree + 1) // 2
    s = _l_power(j, max(half, 1))
    out = [Fraction(0)] * degree
    for w in range(half):
        if 2 * w < degree:
            out[2 * w] = s[w]
    return out


# -- cohomology classes ---------------------------------------------------

@dataclass(frozen=True)
class CohClass:
    """``sum c[(u, v)] x^u y^v`` in ``Q[x, y] / (x^d, y^2)``."""

    d: int
    k: int
    coeffs: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (u, v), c in self.coeffs.items():
            if not (0 <= u < self.d and v in (0, 1)):
                raise ValueError(f"monomial x^{u} y^{v} is outside the truncation")
            c = Fraction(c)
            if c:
                if (u + self.k * v) % 2:
                    raise ValueError(f"coefficient of x^{u} y^{v} must vanish by parity")
                clean[(u, v)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def _same(self, other: "CohClass") -> None:
        if (self.d, self.k) != (other.d, other.k):
            raise ValueError("classes live in different rings")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._same(other)
        keys = set(self.coeffs) | set(other.coeffs)
        return CohClass(self.d, self.k, {key: self[key] + other[key] for key in keys})

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + other.scaled(-1)

    def scaled(self, c) -> "CohClass":
        c = Fraction(c)
        return CohClass(self.d, self.k, {key: c * v for key, v in self.coeffs.items()})

    def __mul__(self, other: "CohClass") -> "CohClass":
        self._same(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (u1, v1), a in self.coeffs.items():
            for (u2, v2), b in other.coeffs.items():
                u, v = u1 + u2, v1 + v2
                if u < self.d and v < 2:
                    out[(u, v)] = out.get((u, v), Fraction(0)) + a * b
        return CohClass(self.d, self.k, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return (self.d, self.k, self.coeffs) == (other.d, other.k, other.coeffs)

    def __hash__(self):
        return hash((self.d, self.k, tuple(self.coeffs.items())))

    @classmethod
    def one(cls, d: int, k: int) -> "CohClass":
        return cls(d, k, {(0, 0): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs


def l_class_cp(d: int, k: int) -> CohClass:
    """``l(CP^(d-1) x S^2k) = (x / tanh x)^d`` truncated at ``x^d``."""
    poly = _l_cp_in_x(d, d)
    return CohClass(d, k, {(u, 0): c for u, c in enumerate(poly)})


# -- splitting invariants -------------------------------------------------

@dataclass(frozen=True)
class SplittingData:
    """Integer splitting invariants ``s_4i`` for ``i`` in ``I4S(d, k)``."""

    d: int
    k: int
    s: Mapping[int, int]
    s2: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        expected = set(tables.index_I4S(self.d, self.k))
        if set(self.s) != expected:
            raise ValueError(f"s must be indexed by {sorted(expected)}, got {sorted(self.s)}")
        object.__setattr__(self, "s", {i: int(self.s[i]) for i in sorted(self.s)})
        object.__setattr__(self, "s2", {i: int(v) % 2 for i, v in sorted(self.s2.items())})

    @classmethod
    def zero(cls, d: int, k: int) -> "SplittingData":
        return cls(d, k, {i: 0 for i in tables.index_I4S(d, k)})

    def __add__(self, other: "SplittingData") -> "SplittingData":
        if (self.d, self.k) != (other.d, other.k):
            raise ValueError("splitting data for different parameters")
        return SplittingData(self.d, self.k, {i: self.s[i] + other.s[i] for i in self.s})

    def scaled(self, c: int) -> "SplittingData":
        return SplittingData(self.d, self.k, {i: c * v for i, v in self.s.items()})


def _extended(s: SplittingData) -> dict[int, int]:
    # the top Z of the normal invariants, absent from the structure set, carries s = 0
    return {i: s.s.get(i, 0) for i in tables.index_I4N(s.d, s.k)}


def solve_beta(d: int, k: int, s: SplittingData) -> CohClass:
    """The pulled back class ``beta`` determined by ``s`` (``beta_(u,0) = 0``)."""
    if (s.d, s.k) != (d, k):
        raise ValueError("splitting data does not match (d, k)")
    rhs = _extended(s)
    beta: dict[tuple[int, int], Fraction] = {}
    # 8 s_4i = sum_u gamma(2i-k, i-(u+k)/2) beta_(u,1), u = k mod 2, u <= 2i-k
    for i in sorted(rhs):
        j = 2 * i - k
        acc = Fraction(8 * rhs[i])
        for u in range(k % 2, j, 2):
            acc -= gamma(j, i - (u + k) // 2) * beta[(u, 1)]
        beta[(j, 1)] = acc / gamma(j, 0)
    # 8 s_4i,0 = 0 = sum_u gamma(2i, i-u/2) beta_(u,0), u even, u <= 2i <= d-1
    for i in range((d - 1) // 2 + 1):
        acc = Fraction(0)
        for u in range(0, 2 * i, 2):
            acc -= gamma(2 * i, i - u // 2) * beta[(u, 0)]
        beta[(2 * i, 0)] = acc / gamma(2 * i, 0)
    return CohClass(d, k, beta)


def compute_alpha(d: int, k: int, beta: CohClass) -> CohClass:
    """``alpha = (8 beta + 1) * l(CP^(d-1) x S^2k)``."""
    if (beta.d, beta.k) != (d, k):
        raise ValueError("beta does not match (d, k)")
    return (beta.scaled(8) + CohClass.one(d, k)) * l_class_cp(d, k)


def _series_inverse(c: CohClass) -> CohClass:
    """Inverse of a class with constant term 1 in the truncated ring."""
    if c[(0, 0)] != 1:
        raise ValueError("constant term must be 1")
    nil = c - CohClass.one(c.d, c.k)
    out = CohClass.one(c.d, c.k)
    term = CohClass.one(c.d, c.k)
    # nil is nilpotent of order at most d + 1
    for _ in range(c.d + 1):
        term = (term * nil).scaled(-1)
        if term.is_zero():
            break
        out = out + term
    return out


def beta_from_alpha(d: int, k: int, alpha: CohClass) -> CohClass:
    lcp = l_class_cp(d, k)
    return (alpha * _series_inverse(lcp) - CohClass.one(d, k)).scaled(Fraction(1, 8))


def splitting_from_beta(d: int, k: int, beta: CohClass) -> dict[int, Fraction]:
    """``s_4i = (l(CP^(2i-k)) * beta)[CP^(2i-k) x S^2k] / 8`` for ``i`` in ``I4N``."""
    out = {}
    for i in tables.index_I4N(d, k):
        j = 2 * i - k
        total = Fraction(0)
        for u in range(k % 2, j + 1, 2):
            total += gamma(j, (j - u) // 2) * beta[(u, 1)]
        out[i] = total / 8
    return out


def roundtrip_splitting(d: int, k: int, s: SplittingData) -> SplittingData:
    """``s -> beta -> alpha -> beta -> s``; returns ``s`` when the algebra is consistent."""
    alpha = compute_alpha(d, k, solve_beta(d, k, s))
    values = splitting_from_beta(d, k, beta_from_alpha(d, k, alpha))
    top = set(values) - set(tables.index_I4S(d, k))
    if any(values[i] for i in top):
        raise ArithmeticError("recovered a nonzero invariant outside I4S")
    if any(v.denominator != 1 for v in values.values()):
        raise ArithmeticError("recovered splitting invariants are not integral")
    return SplittingData(d, k, {i: int(values[i]) for i in tables.index_I4S(d, k)})
