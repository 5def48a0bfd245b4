"""Exact integer and rational linear algebra.

Matrices are plain row-major lists of lists.  Lattices are spanned by the
*columns* of a matrix, and are stored by their column-style Hermite normal
form so that two lattices are equal iff their bases are equal.

Rationals are :class:`fractions.Fraction`; Python integers are unbounded, so
there is no overflow anywhere below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


class LatticeError(ValueError):
    """A lattice computation could not satisfy the caller's precondition."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    n = len(M)
    return n, (len(M[0]) if n else 0)


def transpose(M: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*M)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_vec(M: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def columns(M: Sequence[Sequence]) -> list[list]:
    return transpose(M) if M else []


def from_columns(cols: Sequence[Sequence], nrows: int) -> list[list]:
    if not cols:
        return [[] for _ in range(nrows)]
    return transpose(cols)


def _column_echelon(A: IntMatrix, track: bool = False):
    """Column-style HNF by unimodular column operations, in place on copies.

    Returns ``(H, U, pivots)`` with ``A @ U == H`` (``U`` is ``None`` unless
    ``track``) and ``pivots`` the list of ``(row, col)`` pivot positions.
    """
    n, m = len(A), (len(A[0]) if A else 0)
    # Work column-major: cols[j][i] is entry (i, j).
    cols = [[A[i][j] for i in range(n)] for j in range(m)]
    ucols = [[int(i == j) for i in range(m)] for j in range(m)] if track else None
    pivots: list[tuple[int, int]] = []
    c = 0
    for i in range(n):
        if c == m:
            break
        for j in range(c + 1, m):
            b = cols[j][i]
            if b == 0:
                continue
            a = cols[c][i]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            cp, cj = cols[c], cols[j]
            cols[c] = [x * p + y * q for p, q in zip(cp, cj)]
            cols[j] = [ag * q - bg * p for p, q in zip(cp, cj)]
            if track:
                up, uj = ucols[c], ucols[j]
                ucols[c] = [x * p + y * q for p, q in zip(up, uj)]
                ucols[j] = [ag * q - bg * p for p, q in zip(up, uj)]
        p = cols[c][i]
        if p == 0:
            continue
        if p < 0:
            cols[c] = [-v for v in cols[c]]
            if track:
                ucols[c] = [-v for v in ucols[c]]
            p = -p
        pc = cols[c]
        for j in range(c):
            q = cols[j][i] // p
            if q:
                cols[j] = [u - q * w for u, w in zip(cols[j], pc)]
                if track:
                    ucols[j] = [u - q * w for u, w in zip(ucols[j], ucols[c])]
        pivots.append((i, c))
        c += 1
    H = [[cols[j][i] for j in range(m)] for i in range(n)]
    U = [[ucols[j][i] for j in range(m)] for i in range(m)] if track else None
    return H, U, pivots


def hnf(M: Sequence[Sequence[int]]) -> IntMatrix:
    """Column-style Hermite normal form of an integer matrix.

    The nonzero columns come first; pivot rows strictly increase with the
    column index, pivots are positive, entries to the right of a pivot are
    zero and entries to its left in the pivot row lie in ``[0, pivot)``.
    The column lattice is unchanged.  Zero columns are kept, so the shape is
    preserved.

    >>> hnf([[2, 4], [0, 4]])
    [[2, 0], [0, 4]]
    """
    H, _, _ = _column_echelon([list(map(int, r)) for r in M])
    return H


def hnf_with_transform(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, list[tuple[int, int]]]:
    """Like :func:`hnf` but also return unimodular ``U`` with ``M U = H``."""
    return _column_echelon([list(map(int, r)) for r in M], track=True)


def integer_kernel(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis (as vectors) of ``{v in Z^m : M v = 0}``."""
    n, m = shape(M)
    if m == 0:
        return []
    if n == 0:
        return identity(m)
    _, U, pivots = hnf_with_transform(M)
    r = len(pivots)
    return [[U[i][j] for i in range(m)] for j in range(r, m)]


def _is_monomial(A: IntMatrix) -> bool:
    for row in A:
        if sum(1 for v in row if v) > 1:
            return False
    for col in zip(*A):
        if sum(1 for v in col if v) > 1:
            return False
    return True


def snf(M: Sequence[Sequence[int]]) -> list[int]:
    """Smith normal form diagonal ``d1 | d2 | ...`` of an integer matrix.

    Row and column HNF passes alternate until at most one entry per row and
    column survives; gcd/lcm passes then enforce the divisibility chain.  The
    result has ``min(rows, cols)`` entries, zeros last.

    >>> snf([[2, 0], [0, 3]])
    [1, 6]
    """
    n, m = shape(M)
    size = min(n, m)
    if size == 0:
        return []
    A = [list(map(int, r)) for r in M]
    while True:
        A = hnf(A)
        if _is_monomial(A):
            break
        A = transpose(hnf(transpose(A)))
        if _is_monomial(A):
            break
    diag = [abs(v) for row in A for v in row if v]
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = math.gcd(a, b)
            diag[i], diag[j] = g, a // g * b
    return diag + [0] * (size - len(diag))


def lcm_denominator(values: Iterable[Fraction]) -> int:
    return reduce(lambda acc, q: acc * q.denominator // math.gcd(acc, q.denominator), values, 1)


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of ``Z^n`` stored by its HNF column basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, ambient_rank: int, gens: Iterable[Sequence[int]]) -> "IntLattice":
        gens = [list(map(int, g)) for g in gens]
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError(f"generator {g} does not lie in Z^{ambient_rank}")
        if not gens:
            return cls(ambient_rank, ())
        H, _, pivots = _column_echelon(from_columns(gens, ambient_rank))
        basis = tuple(tuple(H[i][j] for i in range(ambient_rank)) for j in range(len(pivots)))
        return cls(ambient_rank, basis)

    @classmethod
    def full(cls, n: int) -> "IntLattice":
        return cls.from_generators(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivot_rows(self) -> list[int]:
        return [next(i for i, v in enumerate(b) if v) for b in self.basis]

    def pivots(self) -> list[int]:
        return [b[i] for b, i in zip(self.basis, self.pivot_rows())]

    def matrix(self) -> IntMatrix:
        """Basis as the columns of an ``ambient_rank x rank`` matrix."""
        return from_columns(self.basis, self.ambient_rank)

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Integer coordinates of ``v`` in the basis, or ``None`` if ``v`` is not in it."""
        rem = list(v)
        coords = []
        for b, i in zip(self.basis, self.pivot_rows()):
            if any(rem[r] for r in range(i)):
                return None
            q, r = divmod(rem[i], b[i])
            if r:
                return None
            coords.append(q)
            if q:
                rem = [x - q * y for x, y in zip(rem, b)]
        if any(rem):
            return None
        return coords

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def index(self) -> int:
        """``[Z^n : self]``; raises if the lattice is not of full rank."""
        if self.rank != self.ambient_rank:
            raise LatticeError("index is infinite: lattice is not of full rank")
        return math.prod(self.pivots())

    def scaled(self, c: int) -> "IntLattice":
        return IntLattice.from_generators(self.ambient_rank, [[c * x for x in b] for b in self.basis])

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(b in self for b in other.basis)


def _integral_refinement(basis: IntMatrix, row: Sequence[Fraction]) -> IntMatrix:
    """Columns spanning ``{B y : y integral, row . (B y) in Z}`` for basis ``B``."""
    s = len(basis[0]) if basis else 0
    a = [sum(Fraction(row[i]) * basis[i][j] for i in range(len(row))) for j in range(s)]
    D = lcm_denominator(a)
    if D == 1:
        return basis
    alpha = [int(x * D) for x in a]
    kernel = integer_kernel([alpha + [D]])
    Y = [v[:s] for v in kernel]
    gens = [[sum(basis[i][j] * y[j] for j in range(s)) for i in range(len(basis))] for y in Y]
    L = IntLattice.from_generators(len(basis), gens)
    return L.matrix()


def integer_preimage(
    M: Sequence[Sequence[Fraction | int]],
    lattice: IntLattice,
    require_full_rank: bool = False,
) -> IntLattice:
    """``{v in Z^m : M v in lattice}`` for a rational ``n x m`` matrix ``M``.

    With ``B`` the HNF basis of the lattice and ``P`` its pivot rows, ``M v``
    lies in the lattice iff it lies in the rational span of ``B`` and its
    ``B``-coordinates ``B_P^-1 (M v)_P`` are integers.  The span condition is
    an integer kernel with ``m`` columns; integrality is then imposed one
    coordinate at a time, so no large transforms are ever formed.
    """
    n, m = len(M), (len(M[0]) if M else 0)
    if n != lattice.ambient_rank:
        raise ValueError(f"matrix has {n} rows but lattice lives in Z^{lattice.ambient_rank}")
    if m == 0:
        return IntLattice(0, ())
    M = [[Fraction(x) for x in row] for row in M]
    B = lattice.basis
    P = lattice.pivot_rows()
    r = len(B)
    # W = B_P^-1 M_P by forward substitution (B_P is lower triangular).
    W: list[list[Fraction]] = []
    for a in range(r):
        row = list(M[P[a]])
        for b in range(a):
            c = B[b][P[a]]
            if c:
                row = [x - c * y for x, y in zip(row, W[b])]
        piv = B[a][P[a]]
        W.append([x / piv for x in row])
    C = [
        [M[i][j] - sum(B[a][i] * W[a][j] for a in range(r)) for j in range(m)]
        for i in range(n)
    ]
    D = lcm_denominator(x for row in C for x in row)
    kernel = integer_kernel([[int(x * D) for x in row] for row in C])
    if not kernel:
        result = IntLattice(m, ())
    else:
        S = IntLattice.from_generators(m, kernel).matrix()
        for wrow in W:
            S = _integral_refinement(S, wrow)
        result = IntLattice.from_generators(m, columns(S))
    if require_full_rank and result.rank != m:
        raise LatticeError(f"preimage has rank {result.rank} < {m}; quotient is not finite")
    return result


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/t1 + ... + Z/tr`` with ``t1 | t2 | ... | tr``, all ``ti >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(x < 2 for x in t):
            raise ValueError(f"invariant factors must be >= 2, got {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors {t} do not form a divisibility chain")

    @classmethod
    def from_cyclic(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> "FgAbelianGroup":
        """Canonical form of ``Z^free_rank + sum Z/n``; ``n == 0`` counts as ``Z``."""
        orders = [abs(int(n)) for n in orders]
        free_rank += sum(1 for n in orders if n == 0)
        diag = snf([[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)])
        return cls(free_rank, tuple(d for d in diag if d > 1))

    @classmethod
    def cyclic(cls, n: int) -> "FgAbelianGroup":
        return cls.from_cyclic(0, [n])

    @classmethod
    def free(cls, r: int) -> "FgAbelianGroup":
        return cls(r, ())

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_cyclic(self.free_rank + other.free_rank, self.torsion + other.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no finite order")
        return math.prod(self.torsion)

    def primary_decomposition(self) -> list[int]:
        """Prime-power cyclic orders, sorted."""
        out = []
        for t in self.torsion:
            for p, e in _factorize(t).items():
                out.append(p**e)
        return sorted(out)

    def count_killed_by(self, m: int) -> int:
        """Number of elements ``x`` with ``m x = 0`` (finite groups only)."""
        if self.free_rank:
            raise ValueError("infinite group")
        return math.prod(math.gcd(m, t) for t in self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def subgroup_structure(ambient: FgAbelianGroup, generators: Iterable[Sequence[int]]) -> FgAbelianGroup:
    """Isomorphism type of the subgroup of ``ambient`` generated by ``generators``.

    Coordinates: ``ambient.free_rank`` integer entries followed by one entry
    per invariant factor, in order.  With ``R0`` the relation lattice of the
    ambient group and ``L`` the lattice spanned by the lifted generators and
    ``R0``, the subgroup is ``L / R0``, read off from the Smith form of the
    coordinates of ``R0`` in a basis of ``L``.
    """
    r, t = ambient.free_rank, len(ambient.torsion)
    n = r + t
    relations = []
    for idx, order in enumerate(ambient.torsion):
        v = [0] * n
        v[r + idx] = order
        relations.append(v)
    gens = [list(map(int, g)) for g in generators]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} has {len(g)} coordinates, expected {n}")
    L = IntLattice.from_generators(n, gens + relations)
    coords = []
    for v in relations:
        c = L.coordinates(v)
        assert c is not None
        coords.append(c)
    if not coords:
        return FgAbelianGroup(L.rank, ())
    X = from_columns(coords, L.rank)
    diag = snf(X)
    nonzero = [d for d in diag if d]
    return FgAbelianGroup(L.rank - len(nonzero), tuple(d for d in nonzero if d > 1))
