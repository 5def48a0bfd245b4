"""The rho-invariant side of the extension problem for ``L x D^2k``.

The reduced normal invariants ``T_F + T_N`` are parametrized by integer
polynomials ``q`` of degree ``< c(a)``.  The rho-invariant becomes the rational
map ``q -> 8 (f^2 - 1) q(f^2)`` (``d + k`` even) or ``q -> 8 f q(f^2)`` (``d + k``
odd) into the reduced representation ring.  Its preimage of ``4 R^+-`` is a
lattice ``A``; pushing ``A`` forward to ``T_F + T_N`` gives the part of the
kernel of the rho-invariant that does not come from ``Z/2``-summands.

Polynomials in ``f`` that are only needed formally (the complex projective
formula and its inductive proof) are handled with sympy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath
import sympy as sp

from . import tables
from .exactalg import FgAbelianGroup, IntLattice, integer_preimage, subgroup_structure
from .repring import (
    RepRing,
    RepRingElem,
    eigenlattice,
    evaluate_at_root,
    f_power,
    in_scaled_eigenlattice,
    involution,
)

F = sp.Symbol("f")
T = sp.Symbol("t")


def truncation_size(a: int) -> int:
    """``c(a) = floor((a - 1) / 2)``: number of coefficients of ``Z[x](a)``."""
    return (a - 1) // 2


def choose_a(d: int, k: int) -> int:
    """Truncation with ``c(a) = |J4N(d, k)|`` and ``a = d + k mod 2``."""
    tables.check_params(d, k)
    a = d + 2 if k % 2 == 0 else d + 1
    assert truncation_size(a) == len(tables.index_J4N(d, k))
    assert (a - d - k) % 2 == 0
    return a


def rhohat_column(ring: RepRing, n: int, even: bool) -> RepRingElem:
    """Image of the monomial ``x^n``: ``8 (f^2 - 1) f^2n`` or ``8 f^(2n+1)``."""
    if even:
        return 8 * (f_power(ring, 2 * n + 2) - f_power(ring, 2 * n))
    return 8 * f_power(ring, 2 * n + 1)


@dataclass(frozen=True)
class RhoHatMap:
    d: int
    k: int
    K: int
    a: int
    case: str
    sign: int
    columns: tuple[RepRingElem, ...]

    @property
    def ring(self) -> RepRing:
        return RepRing(self.K)

    @property
    def size(self) -> int:
        return len(self.columns)

    def matrix(self) -> list[list[Fraction]]:
        """``(N - 1) x c(a)`` rational matrix in canonical coordinates."""
        cols = [c.coords() for c in self.columns]
        return [[cols[j][i] for j in range(self.size)] for i in range(self.ring.N - 1)]

    def __call__(self, q: Sequence[int]) -> RepRingElem:
        if len(q) != self.size:
            raise ValueError(f"expected {self.size} coefficients, got {len(q)}")
        out = self.ring.zero()
        for qn, col in zip(q, self.columns):
            if qn:
                out = out + qn * col
        return out


def build_rhohat(d: int, k: int, K: int) -> RhoHatMap:
    a = choose_a(d, k)
    ring = RepRing(K)
    even = (d + k) % 2 == 0
    cols = tuple(rhohat_column(ring, n, even) for n in range(truncation_size(a)))
    return RhoHatMap(d, k, K, a, tables.case_tag(d, k), 1 if even else -1, cols)


@dataclass(frozen=True)
class RedMap:
    """``q -> t``: each ``t_4j`` is a sum of coefficients ``q_n``.

    ``terms[j]`` lists the ``n`` with ``t_4j = sum q_n``.  The target is
    ``T_F + T_N`` with the free coordinate (``t_4l`` for ``k = 2l``) first,
    then the ``Z/N`` coordinates in increasing ``j``.
    """

    d: int
    k: int
    K: int
    size: int
    terms: Mapping[int, tuple[int, ...]]
    free_index: int | None

    @property
    def indices(self) -> list[int]:
        return sorted(self.terms)

    @property
    def torsion_indices(self) -> list[int]:
        return [j for j in self.indices if j != self.free_index]

    def target(self) -> FgAbelianGroup:
        N = 2**self.K
        return FgAbelianGroup(int(self.free_index is not None), (N,) * len(self.torsion_indices))

    def lift(self, q: Sequence[int]) -> dict[int, int]:
        """Integer values ``t_4j`` before reduction mod ``N``."""
        if len(q) != self.size:
            raise ValueError(f"expected {self.size} coefficients, got {len(q)}")
        return {j: sum(q[n] for n in ns) for j, ns in self.terms.items()}

    def __call__(self, q: Sequence[int]) -> list[int]:
        """Target coordinates; ``Z/N`` entries reduced into ``[0, N)``."""
        t = self.lift(q)
        N = 2**self.K
        head = [t[self.free_index]] if self.free_index is not None else []
        return head + [t[j] % N for j in self.torsion_indices]


def build_redmap(d: int, k: int, K: int) -> RedMap:
    a = choose_a(d, k)
    c = truncation_size(a)
    e, l = d // 2, k // 2
    J = tables.index_J4N(d, k)
    case = tables.case_tag(d, k)
    terms: dict[int, tuple[int, ...]] = {}
    for j in J:
        if case == "2e,2l":
            ns = (e + l - 1 - j,)
        elif case == "2e+1,2l+1":
            ns = (e + l - j,)
        elif case == "2e,2l+1":
            ns = tuple(e - v for v in range(1, j - l + 1))
        else:
            ns = tuple(e - v for v in range(0, j - l + 1))
        assert all(0 <= n < c for n in ns), (d, k, j, ns)
        terms[j] = ns
    return RedMap(d, k, K, c, terms, l if k % 2 == 0 else None)


def compute_AK(d: int, k: int, K: int) -> IntLattice:
    """Preimage of ``4 R^(+-1)`` under the rho-hat map, ``+-1 = (-1)^(d+k)``."""
    rh = build_rhohat(d, k, K)
    target = eigenlattice(rh.ring, rh.sign).scaled(4)
    return integer_preimage(rh.matrix(), target, require_full_rank=True)


def degree_diagonal(A: IntLattice) -> list[int]:
    """Leading-coefficient ideals of ``A`` by degree in the monomial basis.

    Entry ``n`` generates the leading coefficients of the elements of ``A`` of
    degree exactly ``n``: the diagonal of the HNF taken from the top degree down.
    """
    c = A.ambient_rank
    rev = IntLattice.from_generators(c, [list(reversed(b)) for b in A.basis])
    diag = [0] * c
    for row, p in zip(rev.pivot_rows(), rev.pivots()):
        diag[c - 1 - row] = p
    return diag


def bk_diagonal(K: int, c: int) -> list[int]:
    return [2 ** max(K - 2 * n - 2, 0) for n in range(c)]


def verify_BK_structure(d: int, k: int, K: int, A: IntLattice | None = None) -> tuple[bool, dict]:
    """Does ``A`` have a triangular basis ``2^max(K-2n-2, 0) * (monic of degree n)``?"""
    if A is None:
        A = compute_AK(d, k, K)
    c = A.ambient_rank
    diag = degree_diagonal(A)
    expected = bk_diagonal(K, c)
    triangular = A.rank == c and all(diag)
    info = {
        "diagonal": diag,
        "expected": expected,
        "triangular": triangular,
        "index": A.index() if A.rank == c else None,
    }
    return triangular and diag == expected, info


@dataclass(frozen=True)
class KernelResult:
    A: IntLattice
    Tbar_FN: FgAbelianGroup
    T_2: FgAbelianGroup
    hnf_diagonal: tuple[int, ...]

    @property
    def Tbar(self) -> FgAbelianGroup:
        return self.Tbar_FN + self.T_2


def compute_Tbar(d: int, k: int, K: int) -> KernelResult:
    """Kernel of the rho-invariant on the reduced normal invariants."""
    A = compute_AK(d, k, K)
    red = build_redmap(d, k, K)
    images = [red(list(b)) for b in A.basis]
    Tbar_FN = subgroup_structure(red.target(), images)
    T_2 = tables.reduced_normal_invariants(d, k, K).T_2
    return KernelResult(A, Tbar_FN, T_2, tuple(degree_diagonal(A)))


def closed_form_Tbar(d: int, k: int, K: int) -> FgAbelianGroup:
    """``Tbar_FN`` in closed form: ``Z`` (``k`` even only) plus ``Z/2^min(K, 2i)``, ``i = 1 .. c_N``.

    The full kernel is this group plus the ``Z/2``-summands ``T_2(d, k)``.
    """
    tables.check_params(d, k)
    orders = [2 ** min(K, 2 * i) for i in range(1, tables.c_N(d, k) + 1)]
    return FgAbelianGroup.from_cyclic(1 if k % 2 == 0 else 0, orders)


def closed_form_kernel(d: int, k: int, K: int) -> FgAbelianGroup:
    return closed_form_Tbar(d, k, K) + tables.reduced_normal_invariants(d, k, K).T_2


# -- rho formulas ---------------------------------------------------------

def _check_indices(values: Mapping[int, int], expected: range, what: str) -> None:
    if set(values) != set(expected):
        raise ValueError(f"{what} must be indexed by {list(expected)}, got {sorted(values)}")


def lens_rho_formula(d: int, k: int, K: int, t: Mapping[int, int]) -> RepRingElem:
    """A representative of ``[rho](t)`` modulo ``4 R^+-``; ``t`` holds integer lifts of ``t_4i``."""
    J = tables.index_J4N(d, k)
    _check_indices(t, J, "t")
    ring = RepRing(K)
    D = d + k
    top = None if (2 * D - 2) % 4 == 2 else (2 * D - 2) // 4
    out = ring.zero()
    for i in J:
        if not t[i]:
            continue
        if i == top:
            out = out + 8 * t[i] * f_power(ring, 1)
        else:
            a = D - 2 * i - 2
            out = out + 8 * t[i] * (f_power(ring, a + 2) - f_power(ring, a))
    return out


def lens_rho_sign(d: int, k: int) -> int:
    return 1 if (d + k) % 2 == 0 else -1


def is_zero_mod_four(x: RepRingElem, sign: int) -> bool:
    return in_scaled_eigenlattice(x, sign, 4)


def cp_rho_coefficients(d: int, k: int) -> dict[int, sp.Expr]:
    """``i -> 8 (f^(d+k-2i) - f^(d+k-2i-2))`` over ``I4S(d, k)``."""
    D = d + k
    return {i: sp.expand(8 * (F ** (D - 2 * i) - F ** (D - 2 * i - 2))) for i in tables.index_I4S(d, k)}


def cp_rho_formula(d: int, k: int, s: Mapping[int, int]) -> sp.Expr:
    """The rho-invariant of ``CP^(d-1) x D^2k`` as a polynomial in ``f``."""
    _check_indices(s, tables.index_I4S(d, k), "s")
    coeffs = cp_rho_coefficients(d, k)
    return sp.expand(sum((s[i] * coeffs[i] for i in coeffs), sp.Integer(0)))


def cp_rho_numeric(d: int, k: int, s: Mapping[int, int], t, dps: int = 15):
    """Evaluate the formula at ``t`` on the unit circle, ``f = (1 + t) / (1 - t)``.

    Powers of ``f`` grow like ``N^(d+k)`` near ``t = 1``, so the evaluation is
    done in mpmath at ``dps`` digits and returned as ``mpc``.
    """
    with mpmath.workdps(dps):
        t = mpmath.mpmathify(t)
        if abs(t - 1) < mpmath.mpf(10) ** (-dps + 3):
            raise ValueError("the formula is singular at t = 1")
        f = (1 + t) / (1 - t)
        poly = sp.Poly(cp_rho_formula(d, k, s), F)
        return mpmath.fsum(int(c) * f**m for (m,), c in poly.terms())


def cp_rho_element(d: int, k: int, K: int, s: Mapping[int, int]) -> RepRingElem:
    """Same formula with ``f`` taken in the rationalized ring for ``Z/2^K``."""
    poly = sp.Poly(cp_rho_formula(d, k, s), F)
    ring = RepRing(K)
    out = ring.zero()
    for (m,), c in poly.terms():
        out = out + int(c) * f_power(ring, m)
    return out


def check_cp_numeric(d: int, k: int, K: int, s: Mapping[int, int], primitive_only: bool = True) -> float:
    """Largest deviation between the two evaluations over roots of unity."""
    x = cp_rho_element(d, k, K, s)
    N = 2**K
    dps = 40
    worst = 0.0
    with mpmath.workdps(dps):
        for j in range(1, N):
            if primitive_only and j % 2 == 0:
                continue
            t = mpmath.expjpi(mpmath.mpf(2 * j) / N)
            gap = abs(cp_rho_numeric(d, k, s, t, dps) - evaluate_at_root(x, j, dps))
            worst = max(worst, float(gap))
    return worst


def transfer_consistency(d: int, k: int, K: int, s: Mapping[int, int]) -> bool:
    """Mod-``N`` transfer of the projective formula against the lens formula.

    Only meaningful when ``n - 1 = 2d - 2 + 2k = 4u + 2``, where the transfer
    is onto and ``I4S = J4N``.  Checks per-index coefficient agreement and that
    replacing ``s`` by its reduction mod ``N`` changes nothing modulo ``4 R``.
    """
    if (2 * d - 2 + 2 * k) % 4 != 2:
        raise ValueError("transfer formula applies only for n - 1 = 4u + 2")
    I, J = tables.index_I4S(d, k), tables.index_J4N(d, k)
    if list(I) != list(J):
        return False
    D = d + k
    cp = cp_rho_coefficients(d, k)
    for i in J:
        lens_coeff = sp.expand(8 * F ** (D - 2 * i - 2) * (F**2 - 1))
        if sp.expand(cp[i] - lens_coeff) != 0:
            return False
    N = 2**K
    t = {i: s[i] % N for i in J}
    full = cp_rho_element(d, k, K, s)
    reduced = lens_rho_formula(d, k, K, t)
    return is_zero_mod_four(full - reduced, lens_rho_sign(d, k))


def _closure_coefficient(r: int) -> sp.Expr:
    """``b^r_(2r+2)`` from the top-degree data of the fixed-point formula, in ``t``.

    ``delta_r = 2^(3-2r)`` times ``-2^(2r+1)`` times the linear coefficient of
    ``(t e^x + 1) / (t e^x - 1)`` in ``x``.
    """
    x = sp.Symbol("x")
    lin = sp.series((T * sp.exp(x) + 1) / (T * sp.exp(x) - 1), x, 0, 2).removeO().coeff(x, 1)
    return sp.Rational(2) ** (3 - 2 * r) * (-(sp.Integer(2) ** (2 * r + 1))) * lin


def cp_rho_recursion_check(r_max: int) -> bool:
    """Regenerate the projective coefficients from the inductive recursion.

    For every ``s`` and every total ``D = d + k <= 2 r_max + 2``, starting from
    ``b^s_(2s+2)`` (whose value in ``t`` must equal ``8 (f^2 - 1)``) and
    multiplying by ``f`` once per step of ``D`` must give
    ``8 (f^(D-2s) - f^(D-2s-2))``.  Every index in ``I4S(d, k)`` with
    ``d >= 2, k >= 1, d + k = D`` must be covered.
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    f_of_t = (1 + T) / (1 - T)
    D_max = 2 * r_max + 2
    for s in range(1, r_max + 1):
        closure = _closure_coefficient(s)
        if sp.simplify(closure - 8 * (f_of_t**2 - 1)) != 0:
            return False
        b = sp.expand(8 * (F**2 - 1))
        for D in range(2 * s + 2, D_max + 1):
            if D > 2 * s + 2:
                b = sp.expand(F * b)
            if sp.expand(b - 8 * (F ** (D - 2 * s) - F ** (D - 2 * s - 2))) != 0:
                return False
    for D in range(3, D_max + 1):
        for d in range(2, D):
            k = D - d
            for i in tables.index_I4S(d, k):
                if not (1 <= i and 2 * i + 2 <= D):
                    return False
    return True


def rhohat_matches_lens_formula(d: int, k: int, K: int, q: Sequence[int]) -> bool:
    """``[rho-hat](q)`` equals the lens formula at the integer lift ``red(q)``, exactly."""
    rh = build_rhohat(d, k, K)
    red = build_redmap(d, k, K)
    return rh(q) == lens_rho_formula(d, k, K, red.lift(q))


def eigen_compatible(rh: RhoHatMap) -> bool:
    return all(involution(c) == rh.sign * c for c in rh.columns)
