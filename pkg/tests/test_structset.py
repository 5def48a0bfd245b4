from __future__ import annotations

import pytest

from lensstruct import structset, tables
from lensstruct.exactalg import FgAbelianGroup
from lensstruct.tables import Z, Z2, ZERO


def labels(report):
    return [(s.label, s.group, s.index) for s in report.summands]


def test_worked_example():
    r = structset.structure_set_lens_even(2, 1, 2)
    assert r.group == FgAbelianGroup(1, (2, 4)) == r.closed_form
    assert labels(r) == [
        ("rho_free", Z, None),
        ("bbr0", Z2, 1),
        ("bbr", FgAbelianGroup.cyclic(4), 1),
    ]
    assert r.verified


def test_even_examples():
    r = structset.structure_set_lens_even(4, 2, 1)
    assert r.group == Z + Z + Z2 + Z2 and r.verified
    assert [s.label for s in r.summands] == ["rho_free", "bbr0", "bbr", "br"]
    r = structset.structure_set_lens_even(5, 2, 3)
    assert r.group == FgAbelianGroup(4, (2, 2, 4, 8)) and r.verified
    assert [(s.group.torsion, s.index) for s in r.summands if s.label == "bbr"] == [((4,), 1), ((8,), 2)]
    assert len([s for s in r.summands if s.label == "br"]) == 2


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("K", [1, 2, 4])
def test_even_grid(d, k, K):
    r = structset.structure_set_lens_even(d, k, K)
    assert r.verified
    assert sum(1 for s in r.summands if s.label == "bbr0") == 1
    assert sum(1 for s in r.summands if s.label == "br") == tables.c_2(d, k)
    assert sum(1 for s in r.summands if s.label == "bbr") == tables.c_N(d, k)


def test_odd_examples():
    assert structset.structure_set_lens_odd(4, 1).group == Z2
    assert structset.structure_set_lens_odd(2, 0).group == Z2
    assert structset.structure_set_lens_odd(5, 2).group == Z2 + Z2
    assert all(s.label == "br" for s in structset.structure_set_lens_odd(7, 3).summands)


def test_closed_form_theorem_cases():
    K = 3
    F_plus, F_minus = FgAbelianGroup.free(4), FgAbelianGroup.free(3)
    t = lambda d, k: FgAbelianGroup.from_cyclic(0, structset.T_prime_N(d, k, K) + [2] * tables.c_2(d, k))  # noqa: E731
    assert structset.closed_form_theorem(4, 2, K) == F_plus + Z + t(4, 2)
    assert structset.closed_form_theorem(4, 3, K) == F_minus + Z2 + t(4, 3)
    assert structset.closed_form_theorem(5, 2, K) == F_minus + Z + t(5, 2)
    assert structset.closed_form_theorem(5, 3, K) == F_plus + Z2 + t(5, 3)
    assert structset.closed_form_theorem(4, 1, K, "odd") == Z2
    with pytest.raises(ValueError):
        structset.closed_form_theorem(4, 1, K, "even-ish")


def test_cp_examples():
    r = structset.structure_set_cp(4, 2)
    assert [(s.index, s.group) for s in r.summands] == [(4, Z), (6, Z2), (8, Z)]
    assert r.verified
    assert structset.structure_set_cp(2, 1).group == Z2
    assert structset.structure_set_cp(4, 2, odd=True).group == ZERO


@pytest.mark.parametrize("d", range(2, 10))
@pytest.mark.parametrize("k", range(1, 6))
def test_cp_grid(d, k):
    r = structset.structure_set_cp(d, k)
    assert r.verified
    assert r.group.free_rank == len(tables.index_I4S(d, k))
    assert len(r.summands) == d - 1


def test_sphere_examples():
    s = structset.corollary_lens_times_sphere(3, 4, 3)
    assert s.T_N == FgAbelianGroup.cyclic(8) and s.T_2 == Z2
    s = structset.corollary_lens_times_sphere(2, 5, 2)
    assert s.T_N == ZERO and s.T_2 == Z2
    assert s.group == s.disk.group + Z2
    with pytest.raises(ValueError):
        structset.corollary_lens_times_sphere(3, 2, 2)
    with pytest.raises(ValueError):
        structset.corollary_lens_times_sphere(3, 1, 2)


@pytest.mark.parametrize("d", range(2, 13))
def test_sphere_counts(d):
    for K in (1, 3):
        assert structset.lens_T_N(d, K) == FgAbelianGroup.from_cyclic(0, [2**K] * ((d - 1) // 2))
        assert structset.lens_T_2(d, K) == FgAbelianGroup.from_cyclic(0, [2] * (d // 2))


@pytest.mark.parametrize("d", range(2, 7))
@pytest.mark.parametrize("k", range(1, 4))
def test_periodicity(d, k):
    for K in (1, 2, 3):
        assert structset.periodicity_consistent(d, k, K)


def test_invalid_params():
    with pytest.raises(ValueError):
        structset.structure_set_lens_even(1, 1, 2)
    with pytest.raises(ValueError):
        structset.structure_set_lens_even(2, 0, 2)
    with pytest.raises(ValueError):
        structset.structure_set_lens_odd(2, -1)
