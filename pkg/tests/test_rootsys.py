from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsngrade.rootsys import (
    RootSystemError,
    SimpleType,
    Weight,
    build_root_system,
    classical_positive_count,
    form,
    height,
    leq,
    maximal_subroot_decomposition,
    pairing,
    subroot_chain,
    weyl_dim,
)


def all_types(max_rank):
    out = []
    for n in range(1, max_rank + 1):
        out.append(SimpleType("A", n))
        if n >= 2:
            out += [SimpleType("B", n), SimpleType("C", n)]
        if n >= 4:
            out.append(SimpleType("D", n))
    out += [SimpleType("E", 6), SimpleType("E", 7), SimpleType("E", 8), SimpleType("F", 4), SimpleType("G", 2)]
    return [t for t in out if t.rank <= max_rank]


# positive root counts, (dim - rank) / 2 of the textbook algebras
KNOWN_COUNTS = {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6, "A2": 3, "B3": 9, "C4": 16, "D5": 20}


@pytest.mark.parametrize("name,count", sorted(KNOWN_COUNTS.items()))
def test_positive_root_counts(name, count):
    assert len(build_root_system(SimpleType.parse(name)).positive_roots) == count


@pytest.mark.parametrize("t", all_types(9), ids=str)
def test_closure_matches_classical_count(t):
    assert len(build_root_system(t).positive_roots) == classical_positive_count(t)


def test_a2_highest_root():
    assert build_root_system(SimpleType("A", 2)).highest_root == (1, 1)


def test_g2_highest_root_height():
    assert height(build_root_system(SimpleType("G", 2)).highest_root) == 5


def test_highest_roots_bourbaki():
    assert build_root_system(SimpleType("E", 8)).highest_root == (2, 3, 4, 6, 5, 4, 3, 2)
    assert build_root_system(SimpleType("E", 6)).highest_root == (1, 2, 2, 3, 2, 1)
    assert build_root_system(SimpleType("F", 4)).highest_root == (2, 3, 4, 2)
    assert build_root_system(SimpleType("B", 4)).highest_root == (1, 2, 2, 2)
    assert build_root_system(SimpleType("C", 4)).highest_root == (2, 2, 2, 1)


def test_pairings():
    rs = build_root_system(SimpleType("G", 2))
    # alpha_2 is long; its pairing with the short coroot alpha_1^vee
    assert pairing(rs, Weight.root((0, 1)), 0) == -3
    for i in range(2):
        for j in range(2):
            assert pairing(rs, Weight.fund(tuple(int(a == i) for a in range(2))), j) == int(i == j)
            assert pairing(rs, Weight.root(tuple(int(a == j) for a in range(2))), i) == rs.cartan[i][j]


def test_form_values():
    a1 = build_root_system(SimpleType("A", 1))
    assert form(a1, Weight.fund((1,)), Weight.fund((1,))) == Fraction(1, 2)
    a2 = build_root_system(SimpleType("A", 2))
    assert form(a2, Weight.fund((1, 0)), Weight.fund((1, 0))) == Fraction(2, 3)
    # long roots have squared length 2
    for t in all_types(8):
        rs = build_root_system(t)
        theta = Weight.root(rs.highest_root)
        assert form(rs, theta, theta) == 2


@pytest.mark.parametrize(
    "name,lam,dim",
    [("A2", (1, 1), 8), ("E7", (0, 0, 0, 0, 0, 0, 1), 56), ("E6", (1, 0, 0, 0, 0, 0), 27),
     ("E8", (0, 0, 0, 0, 0, 0, 0, 1), 248), ("G2", (1, 0), 7), ("F4", (0, 0, 0, 1), 26), ("A1", (0,), 1)],
)
def test_weyl_dim(name, lam, dim):
    t = SimpleType.parse(name)
    assert weyl_dim(build_root_system(t), Weight.fund(lam)) == dim


def test_weyl_dim_rejects_nondominant():
    with pytest.raises(RootSystemError):
        weyl_dim(build_root_system(SimpleType("A", 2)), Weight.fund((-1, 0)))


types9 = all_types(9)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(types9), st.data())
def test_basis_round_trip(t, data):
    rs = build_root_system(t)
    coords = data.draw(st.lists(st.fractions(max_denominator=12, min_value=-10, max_value=10),
                                min_size=t.rank, max_size=t.rank))
    w = Weight.fund(coords)
    assert w.to_root(rs).to_fund(rs) == w


def test_subroot_chain_examples():
    rs = build_root_system(SimpleType("A", 3))
    assert subroot_chain(rs, (1, 1, 1), (1, 1, 1)) == []
    assert sorted(subroot_chain(rs, (1, 1, 1), (0, 1, 0))) == [0, 2]


@pytest.mark.parametrize("t", all_types(6), ids=str)
def test_subroot_chains_exist(t):
    rs = build_root_system(t)
    roots = rs.positive_roots
    for a in roots:
        for b in roots:
            if leq(b, a):
                chain = subroot_chain(rs, a, b)
                cur = list(b)
                for i in chain:
                    cur[i] += 1
                    assert tuple(cur) in rs.root_set()
                assert tuple(cur) == a


def test_maximal_subroot_decomposition():
    a1 = build_root_system(SimpleType("A", 1))
    assert maximal_subroot_decomposition(a1, (2,)) == [(1,), (1,)]
    a3 = build_root_system(SimpleType("A", 3))
    assert maximal_subroot_decomposition(a3, (1, 1, 1)) == [(1, 1, 1)]
    with pytest.raises(RootSystemError):
        maximal_subroot_decomposition(a3, (0, 0, 0))


def test_simple_type_validation():
    with pytest.raises(RootSystemError):
        SimpleType("E", 5)
    with pytest.raises(RootSystemError):
        SimpleType("G", 3)
    assert str(SimpleType.parse("E8")) == "E8"
