import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from gl2degrees.catalog import exceptional_images
from gl2degrees.indexsets import (DeltaSet, ImageKind, IndexSet, delta, div_max, div_min,
                                  image_groups, index_set_bruteforce, index_set_formula,
                                  render_set, torsion_divmin_formula, torsion_index_set)
from gl2degrees.matgroup import all_subgroups, closure, full_gl2
from gl2degrees.modarith import divisors, make_ctx
from gl2degrees.standard import SIX, StandardKind, build_canonical

DATA = json.loads((Path(__file__).parent / "data" / "published_tables.json").read_text())
positive = st.integers(1, 400)


def naive_delta(L, U):
    top = max(U)
    return {n for n in range(1, top + 1) if any(n % r == 0 for r in L) and any(s % n == 0 for s in U)}


def test_delta_examples():
    assert delta({2}, {12, 16}).expand() == {2, 4, 6, 8, 12, 16}
    assert delta({1}, {36}).expand() == set(divisors(36))
    assert delta({24, 110}, {220, 240}).expand() == {24, 48, 110, 120, 220, 240}
    assert delta({2}, {12}).member(6) and not delta({2}, {12}).member(3)


def test_delta_validation():
    for L, U in (((), (4,)), ((1,), ()), ((0,), (4,))):
        with pytest.raises(ValueError):
            DeltaSet(L, U)
    with pytest.raises(ValueError):
        DeltaSet((2,), (12,), (3,))         # 3 is not a member to begin with
    assert DeltaSet((1,), (40, 48), (3,)).expand() == set(divisors(40)) | set(divisors(48)) - {3}


def test_delta_text():
    assert str(DeltaSet((1,), (40, 48), (3,))) == "Δ(1∣40,48)∖{3}"
    assert str(IndexSet.from_values([])) == "∅" == render_set(())
    assert DeltaSet((1,), (6,), (2,)).to_json() == {"lower": [1], "upper": [6], "exclude": [2]}


@given(st.sets(positive, min_size=1, max_size=4), st.sets(positive, min_size=1, max_size=4))
def test_delta_matches_naive(L, U):
    assert delta(L, U).expand() == naive_delta(L, U)


@given(st.sets(positive, max_size=12))
def test_from_set_roundtrip(S):
    d = DeltaSet.from_set(S)
    assert (d is None and not S) or d.expand() == S


def test_div_examples():
    assert div_min({2, 3, 4, 12}) == {2, 3} and div_max({2, 3, 4, 12}) == {12}
    assert div_min({6, 14, 16, 72, 96, 252}) == {6, 14, 16}
    assert div_min({5}) == div_max({5}) == {5}
    assert div_min(set()) == set() == div_max(set())


@given(st.sets(positive, max_size=15))
def test_div_min_max_are_antichains_covering_the_set(S):
    lo, hi = div_min(S), div_max(S)
    assert lo <= S and hi <= S
    for a in lo:
        assert not any(b != a and a % b == 0 for b in S)
    for n in S:
        assert any(n % m == 0 for m in lo) and any(m % n == 0 for m in hi)


def test_bruteforce_examples():
    assert index_set_bruteforce(build_canonical(3).Ns, "Nns").expand() == {1, 2, 4}
    assert index_set_bruteforce(full_gl2(3), "Z").expand() == {24, 48}
    trivial = closure(make_ctx(3), [])
    assert index_set_bruteforce(trivial, "Z").expand() == {1}
    assert all(not index_set_bruteforce(trivial, M).expand() for M in SIX[1:])


def test_bruteforce_rejects_borel():
    with pytest.raises(ValueError):
        index_set_bruteforce(full_gl2(3), "Borel")


def test_formula_examples():
    assert index_set_formula("GL2", "Cs", 5).delta == DeltaSet((30,), (240,))
    assert index_set_formula("Ns", "Cns", 5).expand() == {4}
    for ell in (3, 7, 11):
        assert index_set_formula("BorelTrio", "Ns", ell).expand() == set()
        assert index_set_formula("BorelTrio", "Cns", ell).expand() == set()
    with pytest.raises(ValueError):
        index_set_formula("Exceptional", "Z", 5)


@pytest.mark.parametrize("image, ells", [
    (ImageKind.GL2, (3, 5)),
    (ImageKind.Ns, (3, 5, 7, 11, 13)),
    (ImageKind.Nns, (3, 5, 7, 11, 13)),
    (ImageKind.BorelTrio, (3, 5, 7, 11, 13)),
])
def test_formula_matches_bruteforce(image, ells):
    for ell in ells:
        groups = image_groups(image, ell)
        for M in SIX:
            assert index_set_formula(image, M, ell).expand() == index_set_bruteforce(groups, M).expand(), (ell, M)


def test_torsion_examples():
    G = full_gl2(3)
    assert div_min(torsion_index_set(G, "twisted").values) == {4}
    assert div_min(torsion_index_set(G, "strict").values) == {8}
    trivial = closure(make_ctx(5), [])
    assert torsion_index_set(trivial, "twisted").expand() == {1} == torsion_index_set(trivial, "strict").expand()
    assert torsion_divmin_formula("Ns", "twisted", 7) == {6}
    assert torsion_divmin_formula("Nns", "strict", 5) == {24}
    assert torsion_divmin_formula("BorelTrio", "twisted", 7) == {3}
    with pytest.raises(ValueError):
        torsion_divmin_formula("BorelTrio", "twisted", 13)
    with pytest.raises(ValueError):
        torsion_index_set(G, "loose")


@pytest.mark.parametrize("image, ells", [
    (ImageKind.GL2, (3, 5)),
    (ImageKind.Ns, (3, 5, 7, 11, 13)),
    (ImageKind.Nns, (3, 5, 7, 11, 13)),
    (ImageKind.BorelTrio, (3, 7, 11)),
])
def test_torsion_formula_matches_bruteforce(image, ells):
    for ell in ells:
        groups = image_groups(image, ell)
        for mode in ("twisted", "strict"):
            assert torsion_divmin_formula(image, mode, ell) == div_min(torsion_index_set(groups, mode).values)


def test_borel_trio_torsion_when_minus_one_is_a_square():
    # no closed form here; frozen brute-force values
    trio5, trio13 = image_groups(ImageKind.BorelTrio, 5), image_groups(ImageKind.BorelTrio, 13)
    assert div_min(torsion_index_set(trio5, "twisted").values) == {1}
    assert div_min(torsion_index_set(trio5, "strict").values) == {2}
    assert div_min(torsion_index_set(trio13, "twisted").values) == {3}
    assert div_min(torsion_index_set(trio13, "strict").values) == {6}


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_indices_divide_the_group_order(ell):
    for G in [build_canonical(ell).Ns, build_canonical(ell).Nns] + list(exceptional_images(ell)):
        for M in SIX:
            vals = index_set_bruteforce(G, M).expand()
            assert all(G.order % n == 0 for n in vals)
            for lo in div_min(vals):
                for hi in div_max(vals):
                    # comparable pairs run minimum-divides-maximum, never the reverse
                    assert lo == hi or lo % hi != 0


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_strict_torsion_is_inside_twisted(ell):
    for groups in ([build_canonical(ell).Ns], [build_canonical(ell).Nns], list(exceptional_images(ell))):
        assert torsion_index_set(groups, "strict").expand() <= torsion_index_set(groups, "twisted").expand()


def test_explicit_twist_search_on_small_group():
    # twisted torsion by trying all twists explicitly
    from gl2degrees.matgroup import fixes_nonzero_vector, twists
    G = build_canonical(5).Nns
    want = {G.order // H.order for H in all_subgroups(G)
            if any(fixes_nonzero_vector(T) for T in twists(H))}
    assert torsion_index_set(G, "twisted").expand() == want


def _exclusion_cells():
    table = DATA["exceptional_index_sets"]
    for ell in ("3", "5", "7", "11", "13"):
        for M, cell in zip(table["_columns"], table[ell]):
            if cell and cell[2]:
                yield int(ell), M, cell


@pytest.mark.parametrize("ell, M, cell", list(_exclusion_cells()))
def test_exclusions_are_real_gaps(ell, M, cell):
    lower, upper, exclude = cell
    got = index_set_bruteforce(exceptional_images(ell), StandardKind(M)).expand()
    full = delta(lower, upper).expand()
    for n in exclude:
        assert n not in got and n in full
