"""The reduced representation ring of a cyclic 2-group and its rationalization.

For ``G = Z/N`` with ``N = 2**K`` this is ``Z[chi] / (1 + chi + ... + chi^(N-1))``.
An element is stored by the coset representative of ``Z[chi]/(chi^N - 1)``
whose coefficient at ``chi^(N-1)`` is zero.  With that choice an element is
integral exactly when all stored coefficients are integers.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .exactalg import IntLattice, integer_kernel


@dataclass(frozen=True)
class RepRing:
    K: int

    def __post_init__(self):
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")

    @property
    def N(self) -> int:
        return 2**self.K

    def make(self, coeffs: Sequence) -> "RepRingElem":
        return make(self, coeffs)

    def zero(self) -> "RepRingElem":
        return RepRingElem(self, (Fraction(0),) * self.N)

    def one(self) -> "RepRingElem":
        return self.monomial(0)

    def monomial(self, j: int, c=1) -> "RepRingElem":
        v = [0] * self.N
        v[j % self.N] = c
        return make(self, v)

    def from_coords(self, coords: Sequence) -> "RepRingElem":
        """Element with canonical coordinates ``coords`` (length ``N - 1``)."""
        if len(coords) != self.N - 1:
            raise ValueError(f"expected {self.N - 1} coordinates, got {len(coords)}")
        return make(self, list(coords) + [0])


@dataclass(frozen=True)
class RepRingElem:
    ring: RepRing
    coeffs: tuple[Fraction, ...]

    def _check(self, other: "RepRingElem"):
        if not isinstance(other, RepRingElem):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: N={self.ring.N} vs N={other.ring.N}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return make(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return make(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return make(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(other, self)
        return NotImplemented

    def __truediv__(self, q):
        return scale(Fraction(1) / Fraction(q), self)

    def __pow__(self, a: int):
        return power(self, a)

    def coords(self) -> tuple[Fraction, ...]:
        """Canonical coordinates at ``chi^0 .. chi^(N-2)``."""
        return self.coeffs[:-1]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def involution(self) -> "RepRingElem":
        return involution(self)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"RepRingElem(N={self.ring.N}, [{body}])"


def make(ring: RepRing, coeffs: Sequence) -> RepRingElem:
    """Canonical element from a raw coefficient vector of length ``N``."""
    if len(coeffs) != ring.N:
        raise ValueError(f"expected {ring.N} coefficients, got {len(coeffs)}")
    c = [Fraction(x) for x in coeffs]
    top = c[-1]
    return RepRingElem(ring, tuple(x - top for x in c))


def add(a: RepRingElem, b: RepRingElem) -> RepRingElem:
    return a + b


def scale(q, a: RepRingElem) -> RepRingElem:
    q = Fraction(q)
    return RepRingElem(a.ring, tuple(q * x for x in a.coeffs))


def mul(a: RepRingElem, b: RepRingElem) -> RepRingElem:
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: N={a.ring.N} vs N={b.ring.N}")
    N = a.ring.N
    out = [Fraction(0)] * N
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y:
                out[(i + j) % N] += x * y
    return make(a.ring, out)


def involution(a: RepRingElem) -> RepRingElem:
    """Complex conjugation ``chi^j -> chi^(-j)``."""
    N = a.ring.N
    out = [Fraction(0)] * N
    for j, x in enumerate(a.coeffs):
        out[(-j) % N] += x
    return make(a.ring, out)


@lru_cache(maxsize=None)
def one_minus_chi_inverse(ring: RepRing) -> RepRingElem:
    """``(1 - chi)^(-1) = -(1/N) (1 + 2 chi + ... + N chi^(N-1))``."""
    N = ring.N
    return make(ring, [Fraction(-(j + 1), N) for j in range(N)])


@lru_cache(maxsize=None)
def f_element(ring: RepRing) -> RepRingElem:
    """``f = (1 + chi) / (1 - chi)``, the rho-invariant of the circle lens space."""
    one_plus_chi = ring.one() + ring.monomial(1)
    return mul(one_plus_chi, one_minus_chi_inverse(ring))


def power(x: RepRingElem, a: int) -> RepRingElem:
    if a < 0:
        raise ValueError("only non-negative powers are defined")
    out = x.ring.one()
    for _ in range(a):
        out = mul(out, x)
    return out


@lru_cache(maxsize=None)
def f_power(ring: RepRing, a: int) -> RepRingElem:
    if a < 0:
        raise ValueError("only non-negative powers are defined")
    if a == 0:
        return ring.one()
    return mul(f_power(ring, a - 1), f_element(ring))


def involution_matrix(ring: RepRing) -> list[list[int]]:
    """Matrix of the involution on canonical coordinates (not a permutation matrix)."""
    n = ring.N - 1
    cols = [involution(ring.monomial(j)).coords() for j in range(n)]
    return [[int(cols[j][i]) for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def eigenlattice(ring: RepRing, sign: int) -> IntLattice:
    """Integral canonical elements ``x`` with ``involution(x) == sign * x``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = ring.N - 1
    P = involution_matrix(ring)
    A = [[int(i == j) - sign * P[i][j] for j in range(n)] for i in range(n)]
    return IntLattice.from_generators(n, integer_kernel(A))


def in_scaled_eigenlattice(x: RepRingElem, sign: int, scale_by: int = 4) -> bool:
    """Membership ``x in scale_by * (integral sign-eigenlattice)``."""
    if involution(x) != scale(sign, x):
        return False
    return scale(Fraction(1, scale_by), x).is_integral()


def evaluate_at_root(a: RepRingElem, j: int, dps: int | None = None):
    """Substitute ``chi = exp(2 pi i j / N)``; needs ``j`` nonzero mod ``N``.

    With ``dps`` set the sum is taken in mpmath at that many digits and an
    ``mpc`` is returned, otherwise a Python complex.
    """
    N = a.ring.N
    if j % N == 0:
        raise ValueError("the regular representation does not vanish at the trivial character")
    if dps is None:
        w = cmath.exp(2j * cmath.pi * (j % N) / N)
        return sum(complex(float(c)) * w**m for m, c in enumerate(a.coeffs) if c)
    with mpmath.workdps(dps):
        w = mpmath.expjpi(mpmath.mpf(2 * (j % N)) / N)
        return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * w**m for m, c in enumerate(a.coeffs) if c)


def polynomial_in(x: RepRingElem, coeffs: Iterable) -> RepRingElem:
    """``sum_n coeffs[n] * x^n`` by Horner's rule."""
    coeffs = list(coeffs)
    out = x.ring.zero()
    for c in reversed(coeffs):
        out = mul(out, x) + x.ring.monomial(0, c)
    return out
