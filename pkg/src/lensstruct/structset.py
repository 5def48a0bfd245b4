"""Structure sets of ``L x D^m``, ``CP^(d-1) x D^2k`` and ``L x S^m``.

Each report carries the group assembled from the computed pieces and the
closed-form answer, so that a caller can see both and whether they agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import rho, tables
from .exactalg import FgAbelianGroup
from .repring import RepRing, eigenlattice
from .tables import Z, Z2, ZERO


@dataclass(frozen=True)
class LabeledSummand:
    label: str
    group: FgAbelianGroup
    index: int | None = None

    def as_dict(self) -> dict:
        out = {"label": self.label, "group": self.group.as_dict()}
        if self.index is not None:
            out["index"] = self.index
        return out


def _sum(summands) -> FgAbelianGroup:
    out = ZERO
    for s in summands:
        out = out + s.group
    return out


@dataclass(frozen=True)
class StructureSetReport:
    kind: str
    d: int
    k: int
    K: int | None
    group: FgAbelianGroup
    closed_form: FgAbelianGroup
    summands: tuple[LabeledSummand, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def computed(self) -> FgAbelianGroup:
        return self.group

    @property
    def verified(self) -> bool:
        return self.group == self.closed_form and _sum(self.summands) == self.group

    @property
    def m(self) -> int:
        return 2 * self.k + 1 if self.kind == "lens_odd" else 2 * self.k

    def params(self) -> dict:
        return {"d": self.d, "k": self.k, "K": self.K, "m": self.m}


@dataclass(frozen=True)
class SphereReport:
    d: int
    m: int
    K: int
    disk: StructureSetReport
    T_N: FgAbelianGroup
    T_2: FgAbelianGroup
    T_N_closed: FgAbelianGroup
    T_2_closed: FgAbelianGroup

    @property
    def kind(self) -> str:
        return "sphere"

    @property
    def k(self) -> int:
        return self.m // 2

    @property
    def summands(self) -> tuple[LabeledSummand, ...]:
        extra = []
        if not self.T_N.is_trivial:
            extra.append(LabeledSummand("br'", self.T_N))
        if not self.T_2.is_trivial:
            extra.append(LabeledSummand("br''", self.T_2))
        return self.disk.summands + tuple(extra)

    @property
    def group(self) -> FgAbelianGroup:
        return self.disk.group + self.T_N + self.T_2

    @property
    def closed_form(self) -> FgAbelianGroup:
        return self.disk.closed_form + self.T_N_closed + self.T_2_closed

    @property
    def verified(self) -> bool:
        return (
            self.disk.verified
            and self.T_N == self.T_N_closed
            and self.T_2 == self.T_2_closed
            and _sum(self.summands) == self.group
        )

    def params(self) -> dict:
        return {"d": self.d, "k": self.k, "K": self.K, "m": self.m}


# -- closed forms ---------------------------------------------------------

def f_rank(d: int, k: int, K: int) -> int:
    N = 2**K
    return N // 2 if (d + k) % 2 == 0 else N // 2 - 1


def T_prime_N(d: int, k: int, K: int) -> list[int]:
    """Orders ``2^min(2i, K)`` for ``i = 1 .. c_N(d, k)``."""
    return [2 ** min(2 * i, K) for i in range(1, tables.c_N(d, k) + 1)]


def closed_form_theorem(d: int, k: int, K: int, parity: str = "even") -> FgAbelianGroup:
    """The classification in closed form; ``parity`` is that of the disk dimension."""
    if parity == "odd":
        tables.check_params(d, k, odd_disk=True)
        return FgAbelianGroup.from_cyclic(0, [2] * tables.c_2_odd(d, k))
    if parity != "even":
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    tables.check_params(d, k)
    bbr0 = Z if k % 2 == 0 else Z2
    return (
        FgAbelianGroup.free(f_rank(d, k, K))
        + bbr0
        + FgAbelianGroup.from_cyclic(0, T_prime_N(d, k, K))
        + FgAbelianGroup.from_cyclic(0, [2] * tables.c_2(d, k))
    )


# -- lens spaces ----------------------------------------------------------

def _label_torsion_N(torsion: FgAbelianGroup, d: int, k: int, K: int) -> list[LabeledSummand]:
    """Split ``T'_N`` into cyclic factors and attach the index ``i`` where it is unambiguous."""
    powers = torsion.primary_decomposition()
    expected = T_prime_N(d, k, K)
    if powers == expected:
        return [LabeledSummand("bbr", FgAbelianGroup.cyclic(q), i) for i, q in enumerate(powers, 1)]
    return [LabeledSummand("bbr", FgAbelianGroup.cyclic(q)) for q in powers]


def structure_set_lens_even(d: int, k: int, K: int) -> StructureSetReport:
    """``S(L x D^2k) = F^(+-) + Tbar`` from the rho-invariant lattice pipeline."""
    tables.check_params(d, k)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    sign = 1 if (d + k) % 2 == 0 else -1
    rank = eigenlattice(RepRing(K), sign).rank
    kr = rho.compute_Tbar(d, k, K)
    summands = [LabeledSummand("rho_free", FgAbelianGroup.free(rank))]
    FN = kr.Tbar_FN
    torsion_N = FgAbelianGroup(0, FN.torsion)
    J2 = list(tables.index_J2tN(d, k))
    if k % 2 == 0:
        # the free part of Tbar_FN is the T_F coordinate t_4l
        summands += [LabeledSummand("bbr0", FgAbelianGroup.free(FN.free_rank), k // 2)] if FN.free_rank else []
        br = J2
    else:
        if FN.free_rank:
            summands.append(LabeledSummand("bbr", FgAbelianGroup.free(FN.free_rank)))
        l1 = k // 2 + 1
        if l1 in J2:
            summands.append(LabeledSummand("bbr0", Z2, l1))
        br = [i for i in J2 if i != l1]
    summands += _label_torsion_N(torsion_N, d, k, K)
    summands += [LabeledSummand("br", Z2, i) for i in br]
    group = FgAbelianGroup.free(rank) + kr.Tbar
    details = {
        "a": rho.choose_a(d, k),
        "hnf_diagonal": list(kr.hnf_diagonal),
        "Tbar_FN": str(kr.Tbar_FN),
        "Tbar_FN_closed": str(rho.closed_form_Tbar(d, k, K)),
    }
    return StructureSetReport(
        "lens_even", d, k, K, group, closed_form_theorem(d, k, K, "even"), tuple(summands), details
    )


def structure_set_lens_odd(d: int, k: int, K: int = 1) -> StructureSetReport:
    """``S(L x D^(2k+1))``: the surviving ``Z/2`` normal invariants."""
    tables.check_params(d, k, odd_disk=True)
    J = tables.index_J2tN_odd(d, k)
    summands = tuple(LabeledSummand("br", Z2, i) for i in J)
    group = FgAbelianGroup.from_cyclic(0, [2] * len(J))
    return StructureSetReport(
        "lens_odd", d, k, K, group, closed_form_theorem(d, k, K, "odd"), summands,
        {"indices": list(J)},
    )


# -- complex projective spaces --------------------------------------------

def cp_direct(d: int, k: int) -> list[tuple[int, FgAbelianGroup]]:
    """``L_2i(Z)`` for ``k <= i <= k + d - 2``."""
    return [(i, tables.l_group_trivial(2 * i)) for i in range(k, k + d - 1)]


def structure_set_cp(d: int, k: int, odd: bool = False) -> StructureSetReport:
    """``S(CP^(d-1) x D^2k)``: normal invariants with the top summand removed."""
    if d < 2 or k < (0 if odd else 1):
        raise ValueError(f"invalid parameters d={d}, k={k}")
    if odd:
        return StructureSetReport("cp_odd", d, k, None, ZERO, ZERO, ())
    N = tables.normal_invariants_cp(d, 2 * k)
    top = 2 * d - 2 + 2 * k
    kept = [s for s in N.summands if s.degree != top]
    summands = tuple(LabeledSummand("s", s.group, s.degree) for s in kept)
    closed = _sum(LabeledSummand("s", g) for _, g in cp_direct(d, k))
    return StructureSetReport("cp", d, k, None, _sum(summands), closed, summands)


# -- lens space times sphere ----------------------------------------------

def lens_T_N(d: int, K: int) -> FgAbelianGroup:
    """``Z/N``-summands ``H^4i(L; Z)`` of ``N(L)``."""
    N = tables.normal_invariants_lens_closed(d, K)
    return _sum(s for s in N.summands if s.degree % 4 == 0)


def lens_T_2(d: int, K: int = 1) -> FgAbelianGroup:
    """``Z/2``-summands ``H^(4i-2)(L; Z/2)`` of ``N(L)``."""
    N = tables.normal_invariants_lens_closed(d, K)
    return _sum(s for s in N.summands if s.degree % 4 == 2)


def corollary_lens_times_sphere(d: int, m: int, K: int) -> SphereReport:
    """``S(L x S^m) = S(L x D^m) + T_N(d) + T_2(d)`` for ``m >= 3``, ``m != 3`` if even."""
    if m % 2 == 0 and m < 4 or m % 2 == 1 and m < 3:
        raise ValueError(f"need m >= 4 even or m >= 3 odd, got m={m}")
    if m % 2 == 0:
        disk = structure_set_lens_even(d, m // 2, K)
    else:
        disk = structure_set_lens_odd(d, m // 2, K)
    return SphereReport(
        d, m, K, disk,
        lens_T_N(d, K), lens_T_2(d, K),
        FgAbelianGroup.from_cyclic(0, [2**K] * ((d - 1) // 2)),
        FgAbelianGroup.from_cyclic(0, [2] * (d // 2)),
    )


def periodicity_consistent(d: int, k: int, K: int) -> bool:
    """``S(X) -> S(X x D^4)`` is injective with cokernel inside ``Z``."""
    a = structure_set_lens_even(d, k, K).group
    b = structure_set_lens_even(d, k + 2, K).group
    return a.torsion == b.torsion and b.free_rank - a.free_rank in (0, 1)
