import pytest

from gl2degrees.indexsets import delta, div_min
from gl2degrees.standard import SIX
from gl2degrees.theorems import (DegreeSets, K_set, S_M, T_set, assemble_E, cm_odd_degree_verdict,
                                 thm1, thm2, thm3)


def test_assemble_examples():
    assert assemble_E(3, "Z", "non_cm") == delta({2}, {12, 16}).expand() | delta({24}, {48}).expand()
    five = assemble_E(5, "Nns", "cm")
    assert five == delta({2}, {16}).expand() | delta({1}, {24}).expand()
    assert div_min(five) == {1}
    ell = 3167
    assert assemble_E(ell, "Cs", "cm") == delta({ell + 1}, {ell * ell - 1}).expand()


@pytest.mark.parametrize("ell, M, filt, want", [
    (7, "Z", "any", {6, 14, 16}),
    (13, "Cs", "any", {2, 13}),
    (17, "Nns", "non_cm", {136}),
    (23, "Z", "any", {44, 48}),
    (19, "Z", "any", {36, 38, 40}),
])
def test_minimal_degrees(ell, M, filt, want):
    assert S_M(ell, M, filt) == want


def test_k_set_examples():
    assert 1 in K_set(3) and 1 in K_set(5)
    assert 1 not in K_set(7) and 3 not in K_set(5)


@pytest.mark.parametrize("ell, filt, mode, want", [
    (11, "any", "rational_j", {5}),
    (13, "any", "over_Q", {3, 4}),
    (13, "cm", "rational_j", {12}),
])
def test_torsion_degrees(ell, filt, mode, want):
    assert T_set(ell, filt, mode) == want


def test_predicates():
    assert thm3(11, 10) == (True, 5)
    assert thm3(11, 7) == (False, None)
    assert thm2(3, 1)
    assert thm1(5, 8, "Z") == (True, 4)
    with pytest.raises(ValueError):
        thm1(5, 8, "Cr")
    with pytest.raises(ValueError):
        thm2(5, 0)
    with pytest.raises(ValueError):
        T_set(5, "any", "sideways")


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13, 17, 19, 23, 37])
def test_filter_union(ell):
    for M in SIX:
        assert assemble_E(ell, M, "any") == assemble_E(ell, M, "cm") | assemble_E(ell, M, "non_cm")
    assert K_set(ell) == K_set(ell, "cm") | K_set(ell, "non_cm")
    for mode in ("rational_j", "over_Q"):
        assert T_set(ell, "any", mode) == div_min(T_set(ell, "cm", mode) | T_set(ell, "non_cm", mode))


@pytest.mark.parametrize("ell", [3, 5, 7, 13, 37])
def test_degree_sets_invariants(ell):
    ds = DegreeSets.compute(ell)
    order = ell * (ell + 1) * (ell - 1) ** 2
    assert ds.K == frozenset().union(*(ds.E[M] for M in SIX if str(M) in ("Z", "Cs", "Cns", "Cr")))
    for M in SIX:
        assert bool(ds.S[M]) == bool(ds.E[M])
        assert all(order % n == 0 for n in ds.E[M])
    assert all(order % n == 0 for n in ds.T | ds.T_Q)


@pytest.mark.parametrize("ell, want", [(23, (33, "none")), (43, (21, "all")), (3, (1, "all"))])
def test_cm_odd_degree_verdict(ell, want):
    assert cm_odd_degree_verdict(ell) == want


def test_cm_odd_degree_verdict_rejects():
    with pytest.raises(ValueError):
        cm_odd_degree_verdict(13)


@pytest.mark.parametrize("ell", [23, 31, 43, 47])
def test_verdict_matches_odd_multiples(ell):
    w, verdict = cm_odd_degree_verdict(ell)
    hits = {thm3(ell, w * k, "cm")[0] for k in (1, 3, 5, 7)}
    assert hits == {verdict == "all"}


def test_descriptive_aliases():
    from gl2degrees import theorems
    assert theorems.minimal_degrees(7, "Z") == {6, 14, 16}
    assert theorems.torsion_degrees(13, "any", "over_Q") == {3, 4}
    assert 1 in theorems.abelian_subextension_degrees(3)
    assert theorems.eligible_degrees is theorems.assemble_E
