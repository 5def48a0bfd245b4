"""Parameter bookkeeping: cohomology, indexing sets, normal invariants, L-groups.

Throughout, ``L`` is a lens space of dimension ``2d - 1`` with fundamental
group ``Z/N``, ``N = 2**K``, multiplied by a disk of dimension ``m`` (``2k`` or
``2k + 1``).  Write ``d = 2e`` or ``2e + 1`` and ``k = 2l`` or ``2l + 1``.

Indexing sets are returned as :class:`range` objects: every one of them is an
integer interval.  The sets for the ``Z/2`` summands are derived from
cohomology support and the surgery obstruction instead of being tabulated;
the tabulated ``Z``-type sets come with a support-derived twin so the two
routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import FgAbelianGroup

Z = FgAbelianGroup.free(1)
Z2 = FgAbelianGroup.cyclic(2)
ZERO = FgAbelianGroup()


def _zn(K: int) -> FgAbelianGroup:
    return FgAbelianGroup.cyclic(2**K)


@dataclass(frozen=True)
class Params:
    """Problem parameters ``(d, k, K)``; ``odd_disk`` selects ``D^(2k+1)``."""

    d: int
    k: int
    K: int = 1
    odd_disk: bool = False

    def __post_init__(self):
        check_params(self.d, self.k, odd_disk=self.odd_disk)
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")

    @property
    def N(self) -> int:
        return 2**self.K

    @property
    def e(self) -> int:
        return self.d // 2

    @property
    def l(self) -> int:  # noqa: E743
        return self.k // 2

    @property
    def m(self) -> int:
        return 2 * self.k + (1 if self.odd_disk else 0)

    @property
    def n(self) -> int:
        return 2 * self.d - 1 + self.m

    @property
    def case(self) -> str:
        return case_tag(self.d, self.k)


def check_params(d: int, k: int, odd_disk: bool = False) -> None:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if k < (0 if odd_disk else 1):
        raise ValueError(f"k must be >= {0 if odd_disk else 1} for this disk, got {k}")


def case_tag(d: int, k: int) -> str:
    """One of ``'2e,2l'``, ``'2e,2l+1'``, ``'2e+1,2l'``, ``'2e+1,2l+1'``."""
    return ("2e" if d % 2 == 0 else "2e+1") + "," + ("2l" if k % 2 == 0 else "2l+1")


# -- cohomology -----------------------------------------------------------

def lens_cohomology(d: int, r: int, coeff: str = "Z", K: int = 1) -> FgAbelianGroup:
    """``H^r(L^(2d-1); coeff)`` for ``coeff`` in ``'Z'``, ``'Z2'``, ``'ZN'``."""
    top = 2 * d - 1
    if r < 0 or r > top:
        return ZERO
    if coeff == "Z":
        if r == 0 or r == top:
            return Z
        return _zn(K) if r % 2 == 0 else ZERO
    if coeff == "Z2":
        return Z2
    if coeff == "ZN":
        return _zn(K)
    raise ValueError(f"unknown coefficients {coeff!r}")


def cp_cohomology(d: int, r: int, coeff: str = "Z") -> FgAbelianGroup:
    """``H^r(CP^(d-1); coeff)``: the coefficient group in even degrees ``0..2d-2``."""
    if r < 0 or r > 2 * d - 2 or r % 2:
        return ZERO
    if coeff == "Z":
        return Z
    if coeff == "Z2":
        return Z2
    raise ValueError(f"unknown coefficients {coeff!r}")


def smash_sphere(H, m: int):
    """Cohomology of ``X_+ smash S^m`` from a cohomology function of ``X``."""
    return lambda r: H(r - m)


# -- tabulated indexing sets ----------------------------------------------

def index_I4N(d: int, k: int) -> range:
    """Indices ``i`` of the ``Z``-summands ``s_4i`` in the normal invariants of ``CP^(d-1) x D^2k``."""
    check_params(d, k)
    e, l = d // 2, k // 2
    lo, hi = {
        "2e,2l": (l, e + l - 1),
        "2e,2l+1": (l + 1, e + l),
        "2e+1,2l": (l, e + l),
        "2e+1,2l+1": (l + 1, e + l),
    }[case_tag(d, k)]
    return range(lo, hi + 1)


def index_I4S(d: int, k: int) -> range:
    """Indices ``i`` of the ``Z``-summands of the structure set of ``CP^(d-1) x D^2k``."""
    check_params(d, k)
    e, l = d // 2, k // 2
    lo, hi = {
        "2e,2l": (l, e + l - 1),
        "2e,2l+1": (l + 1, e + l - 1),
        "2e+1,2l": (l, e + l - 1),
        "2e+1,2l+1": (l + 1, e + l),
    }[case_tag(d, k)]
    return range(lo, hi + 1)


def index_J4N(d: int, k: int) -> range:
    """Indices ``i`` with ``t_4i`` nonzero on ``N(L x D^2k)``."""
    check_params(d, k)
    e, l = d // 2, k // 2
    lo, hi = {
        "2e,2l": (l, e + l - 1),
        "2e,2l+1": (l + 1, e + l),
        "2e+1,2l": (l, e + l),
        "2e+1,2l+1": (l + 1, e + l),
    }[case_tag(d, k)]
    return range(lo, hi + 1)


def _drop_endpoint(r: range, x: int) -> range:
    if x == r.start:
        return range(r.start + 1, r.stop)
    if x == r.stop - 1:
        return range(r.start, r.stop - 1)
    if x not in r:
        return r
    raise ValueError(f"removing {x} from {r} would break contiguity")


def index_J4tN(d: int, k: int) -> range:
    # theta never sees the 4i summands for even disks
    return index_J4N(d, k)


def index_rJ4tN(d: int, k: int) -> range:
    """``J4tN`` without the free index ``l`` when ``k = 2l``; size is ``c_N``."""
    J = index_J4tN(d, k)
    return _drop_endpoint(J, k // 2) if k % 2 == 0 else J


# -- indexing sets derived from cohomology support ------------------------

def _support(H, degree_of_i, top_degree: int) -> range:
    idx = [i for i in range(1, top_degree // 2 + 2) if not H(degree_of_i(i)).is_trivial]
    if not idx:
        return range(1, 1)
    out = range(idx[0], idx[-1] + 1)
    assert list(out) == idx, "support is not an interval"
    return out


def support_J4N(d: int, k: int, K: int = 1) -> range:
    """``J4N`` recomputed from ``H^4i(L_+ smash S^2k; Z)`` (with ``K >= 1``)."""
    check_params(d, k)
    H = smash_sphere(lambda r: lens_cohomology(d, r, "Z", K), 2 * k)
    return _support(H, lambda i: 4 * i, 2 * d - 1 + 2 * k)


def support_I4N(d: int, k: int) -> range:
    check_params(d, k)
    H = smash_sphere(lambda r: cp_cohomology(d, r, "Z"), 2 * k)
    return _support(H, lambda i: 4 * i, 2 * d - 2 + 2 * k)


def index_I2N(d: int, k: int) -> range:
    """Indices of the ``Z/2``-summands ``s_(4i-2)`` of ``N(CP^(d-1) x D^2k)``."""
    check_params(d, k)
    H = smash_sphere(lambda r: cp_cohomology(d, r, "Z2"), 2 * k)
    return _support(H, lambda i: 4 * i - 2, 2 * d - 2 + 2 * k)


def _top_removed(d: int, k: int, J4: range, J2: range, top_degree: int) -> tuple[range, range]:
    if top_degree % 4 == 0:
        return _drop_endpoint(J4, top_degree // 4), J2
    return J4, _drop_endpoint(J2, (top_degree + 2) // 4)


def support_I4S(d: int, k: int) -> range:
    """``I4S``: support of ``I4N`` minus the top summand carried onto ``L_(n-1)(Z)``."""
    return _top_removed(d, k, support_I4N(d, k), index_I2N(d, k), 2 * d - 2 + 2 * k)[0]


def index_I2S(d: int, k: int) -> range:
    return _top_removed(d, k, support_I4N(d, k), index_I2N(d, k), 2 * d - 2 + 2 * k)[1]


def index_J2N(d: int, k: int) -> range:
    """Indices ``i`` of ``t_(4i-2)``: ``H^(4i-2)(L_+ smash S^2k; Z/2)`` nonzero."""
    check_params(d, k)
    H = smash_sphere(lambda r: lens_cohomology(d, r, "Z2"), 2 * k)
    return _support(H, lambda i: 4 * i - 2, 2 * d - 1 + 2 * k)


def index_J2tN(d: int, k: int) -> range:
    """``J2N`` restricted to the kernel of the surgery obstruction.

    In dimension ``n = 4u - 1`` the obstruction is ``t_(4u-2)``, so ``u`` is
    dropped; for ``n = 4u + 1`` nothing is dropped.
    """
    J = index_J2N(d, k)
    n = 2 * d - 1 + 2 * k
    if n % 4 == 3:
        return _drop_endpoint(J, (n + 1) // 4)
    return J


def index_rJ2tN(d: int, k: int) -> range:
    """``J2tN`` without ``l + 1`` when ``k = 2l + 1``; size is ``c_2``."""
    J = index_J2tN(d, k)
    if k % 2 == 1:
        return _drop_endpoint(J, k // 2 + 1)
    return J


def index_J2N_odd(d: int, k: int) -> range:
    check_params(d, k, odd_disk=True)
    H = smash_sphere(lambda r: lens_cohomology(d, r, "Z2"), 2 * k + 1)
    return _support(H, lambda i: 4 * i - 2, 2 * d + 2 * k)


def index_J2tN_odd(d: int, k: int) -> range:
    """``Z/2``-summands surviving the obstruction on ``N(L x D^(2k+1))``.

    The obstruction maps onto ``L_(2d+2k)(Z)``: for ``n = 2d+2k = 0 mod 4`` it
    eats the top ``Z`` (which is not a ``Z/2``-summand), otherwise the top
    ``Z/2``.
    """
    J = index_J2N_odd(d, k)
    n = 2 * d + 2 * k
    if n % 4 == 2:
        return _drop_endpoint(J, (n + 2) // 4)
    return J


# -- closed-form counts ---------------------------------------------------

def c_N(d: int, k: int) -> int:
    e = d // 2
    return e - 1 if case_tag(d, k) == "2e,2l" else e


def c_2(d: int, k: int) -> int:
    e = d // 2
    return e if case_tag(d, k) == "2e+1,2l" else e - 1


def c_2_odd(d: int, k: int) -> int:
    e = d // 2
    return e - 1 if case_tag(d, k) == "2e,2l+1" else e


# -- normal invariants ----------------------------------------------------

@dataclass(frozen=True)
class Summand:
    degree: int
    label: str
    group: FgAbelianGroup


@dataclass(frozen=True)
class GradedGroup:
    summands: tuple[Summand, ...] = ()

    def total(self) -> FgAbelianGroup:
        out = ZERO
        for s in self.summands:
            out = out + s.group
        return out

    def degrees(self) -> list[int]:
        return [s.degree for s in self.summands]

    def count(self, group: FgAbelianGroup) -> int:
        return sum(1 for s in self.summands if s.group == group)

    def labelled(self, prefix: str) -> list[Summand]:
        return [s for s in self.summands if s.label.startswith(prefix)]

    @property
    def is_trivial(self) -> bool:
        return self.total().is_trivial


def _graded(H_int, H_two, top: int, prefix: str) -> GradedGroup:
    out = []
    for i in range(1, top // 4 + 2):
        g = H_two(4 * i - 2)
        if not g.is_trivial:
            out.append(Summand(4 * i - 2, f"{prefix}_{4 * i - 2}", g))
        g = H_int(4 * i)
        if not g.is_trivial:
            out.append(Summand(4 * i, f"{prefix}_{4 * i}", g))
    return GradedGroup(tuple(out))


def normal_invariants_cp(d: int, m: int) -> GradedGroup:
    """``N(CP^(d-1) x D^m)`` rel boundary; zero for odd ``m``."""
    if d < 2 or m < 1:
        raise ValueError(f"need d >= 2 and m >= 1, got d={d}, m={m}")
    if m % 2:
        return GradedGroup()
    H_int = smash_sphere(lambda r: cp_cohomology(d, r, "Z"), m)
    H_two = smash_sphere(lambda r: cp_cohomology(d, r, "Z2"), m)
    return _graded(H_int, H_two, 2 * d - 2 + m, "s")


def normal_invariants_lens(d: int, m: int, K: int) -> GradedGroup:
    """``N(L x D^m)`` rel boundary as ``sum H^4i(Z) + H^(4i-2)(Z/2)`` of ``L_+ smash S^m``."""
    if d < 2 or m < 1:
        raise ValueError(f"need d >= 2 and m >= 1, got d={d}, m={m}")
    H_int = smash_sphere(lambda r: lens_cohomology(d, r, "Z", K), m)
    H_two = smash_sphere(lambda r: lens_cohomology(d, r, "Z2"), m)
    return _graded(H_int, H_two, 2 * d - 1 + m, "t")


def normal_invariants_lens_closed(d: int, K: int) -> GradedGroup:
    """``N(L)`` for the closed lens space (no disk factor)."""
    H_int = lambda r: lens_cohomology(d, r, "Z", K)  # noqa: E731
    H_two = lambda r: lens_cohomology(d, r, "Z2")  # noqa: E731
    return _graded(H_int, H_two, 2 * d - 1, "t")


@dataclass(frozen=True)
class ReducedNormalInvariants:
    """``ker(theta) = T_F + T_N + T_2`` on ``N(L x D^2k)``, with the indices used."""

    d: int
    k: int
    K: int
    free_index: int | None
    torsion_N_indices: range
    torsion_2_indices: range

    @property
    def T_F(self) -> FgAbelianGroup:
        return Z if self.free_index is not None else ZERO

    @property
    def T_N(self) -> FgAbelianGroup:
        return FgAbelianGroup.from_cyclic(0, [2**self.K] * len(self.torsion_N_indices))

    @property
    def T_2(self) -> FgAbelianGroup:
        return FgAbelianGroup.from_cyclic(0, [2] * len(self.torsion_2_indices))

    def total(self) -> FgAbelianGroup:
        return self.T_F + self.T_N + self.T_2


def reduced_normal_invariants(d: int, k: int, K: int) -> ReducedNormalInvariants:
    check_params(d, k)
    return ReducedNormalInvariants(
        d, k, K,
        free_index=k // 2 if k % 2 == 0 else None,
        torsion_N_indices=index_rJ4tN(d, k),
        torsion_2_indices=index_J2tN(d, k),
    )


def reduced_normal_invariants_odd(d: int, k: int) -> GradedGroup:
    """``ker(theta)`` on ``N(L x D^(2k+1))``: only ``Z/2``-summands survive."""
    return GradedGroup(tuple(Summand(4 * i - 2, f"t_{4 * i - 2}", Z2) for i in index_J2tN_odd(d, k)))


# -- L-groups -------------------------------------------------------------

def l_group(n: int, K: int) -> FgAbelianGroup:
    """``L^s_n(Z[Z/N])`` as an abstract group."""
    if n < 0 or K < 1:
        raise ValueError("need n >= 0 and K >= 1")
    N = 2**K
    return {
        0: FgAbelianGroup.free(N // 2 + 1),
        1: ZERO,
        2: FgAbelianGroup(N // 2 - 1, (2,)),
        3: Z2,
    }[n % 4]


def l_group_trivial(n: int) -> FgAbelianGroup:
    """``L_n(Z)``: ``Z, 0, Z/2, 0``."""
    return [Z, ZERO, Z2, ZERO][n % 4]


def reduced_l_group(n: int, K: int) -> FgAbelianGroup:
    """``L_n`` of the group ring modulo the ``L_n(Z)`` summand."""
    if n % 2:
        # odd dimensions: L_1 = 0 and L_3 = Z/2 with L_3(Z) = 0
        return l_group(n, K)
    N = 2**K
    return FgAbelianGroup.free(N // 2 if n % 4 == 0 else N // 2 - 1)
