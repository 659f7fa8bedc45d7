from collections import Counter

import pytest

from lsngrade.construct import long_nodes
from lsngrade.grading import (
    GradingError,
    gamma_decomposition,
    grade,
    lowest_root,
    prop2_check,
    structural_checks,
)
from lsngrade.reps import Irrep, RepSum
from lsngrade.rootsys import SimpleType, build_root_system
from lsngrade.survey import parse_class


def cases(catalog, kind=None):
    return [(c, k) for c in catalog if kind in (None, c.kind) for k in long_nodes(c)]


def symmetric_dims(p):
    top = p.top
    zero = sum(t.rank + 2 * len(build_root_system(t).positive_roots) for t in p.shape) + 1
    up = [p.dim(i) for i in range(1, top + 1)]
    return up[::-1] + [zero] + up


def test_e6_alpha4_dims():
    p = grade(parse_class("E6"), 3)
    assert symmetric_dims(p) == [2, 9, 18, 20, 18, 9, 2]
    assert p.highest_weight(1).weights == ((1, 0), (1,), (0, 1))


def test_g2_alpha2_dims():
    p = grade(parse_class("G2"), 1)
    assert symmetric_dims(p) == [1, 4, 4, 4, 1]
    assert p.highest_weight(1).weights == ((3,),)


def test_e6_affine_alpha4():
    p = grade(parse_class("E6(1)"), 4)
    assert (p.mode, p.top) == ("affine", 3)
    assert p.dim(1) == 27 and p.dim(2) == 27 and p.dim(3) == 24
    assert p.imaginary == {3: 6}
    assert p.pieces[3] == p.pieces[3] and structural_checks(p).ok


def test_short_root_rejected():
    with pytest.raises(GradingError):
        grade(parse_class("G2"), 0)
    with pytest.raises(GradingError):
        grade(parse_class("D4(3)"), 1)


def test_finite_dims_match_root_count(catalog8):
    """Second route: count positive roots by their k-coefficient."""
    for c, k in cases(catalog8, "finite"):
        p = grade(c, k)
        rs = build_root_system(c.finite)
        cnt = Counter(r[k] for r in rs.positive_roots)
        assert p.top == max(cnt)
        for i in range(1, p.top + 1):
            assert p.dim(i) == cnt[i], (c.type_string, k, i)


def test_affine_period_dims(catalog8):
    """Untwisted: degree-i real roots are finite roots with coefficient i mod a_k."""
    for c, k in cases(catalog8, "affine"):
        if c.affine.r != 1:
            continue
        p = grade(c, k)
        t = SimpleType(c.affine.family, c.affine.N)
        rs = build_root_system(t)
        theta = rs.highest_root
        # affine alpha_0 = delta - theta; a real root is alpha + m delta
        roots = list(rs.positive_roots) + [tuple(-x for x in r) for r in rs.positive_roots]
        if k == 0:
            deg = lambda a, m: m
        else:
            deg = lambda a, m: a[k - 1] + m * theta[k - 1]
        for i in range(1, p.top):
            want = 0
            for a in roots:
                for m in range(-3, 4):
                    if deg(a, m) == i:
                        want += 1
            assert p.dim(i) == want, (c.type_string, k, i)


def test_structural_checks(catalog8):
    bad = []
    for c, k in cases(catalog8):
        rep = structural_checks(grade(c, k))
        if not rep.ok:
            bad.append((c.type_string, k, [n for n, v in rep.results.items() if not v]))
    assert not bad


def test_remark2_checked_when_depth_over_one(catalog8):
    seen = 0
    for c, k in cases(catalog8, "finite"):
        p = grade(c, k)
        if p.a_k > 1:
            rep = structural_checks(p)
            assert rep.results["remark2"]
            seen += 1
    assert seen > 20


def test_lowest_root_is_lowest(catalog8):
    for c, k in cases(catalog8, "finite")[:60]:
        p = grade(c, k)
        rs = build_root_system(c.finite)
        for i in range(1, p.top + 1):
            g = lowest_root(p, i)
            ht = sum(g)
            assert ht == min(sum(r) for r in rs.positive_roots if r[k] == i)


def test_gamma_e6_alpha4():
    p = grade(parse_class("E6"), 3)
    rep = prop2_check(p, 2)
    assert len(rep.parts) == 3 and rep.inert and rep.orthogonal and rep.has_simple
    assert rep.lambda_ok
    assert all(sum(x) == 1 for x in rep.parts)


def test_gamma_e7_t3():
    p = grade(parse_class("E7"), 2)
    rep = prop2_check(p, 3)
    assert len(rep.parts) == 2 and rep.ok


def test_gamma_g2_not_orthogonal():
    rep = gamma_decomposition(grade(parse_class("G2"), 1), 2)
    assert rep.parts == [(1, 0)] * 3
    assert rep.inert and not rep.orthogonal


def test_gamma_t_must_exceed_one():
    with pytest.raises(GradingError):
        gamma_decomposition(grade(parse_class("E6"), 3), 1)


def test_prop2_over_catalog(catalog8):
    """lambda_t = lambda_{t-1} + lambda_1 - (-w0) sum(beta) holds everywhere g_t is irreducible."""
    n = 0
    for c, k in cases(catalog8):
        p = grade(c, k)
        last = p.top if p.mode == "finite" else p.top - 1
        for t in range(2, last + 1):
            rep = prop2_check(p, t)
            assert rep.inert, (c.type_string, k, t)
            assert rep.lambda_ok, (c.type_string, k, t)
            if t == 2:
                assert len(rep.parts) in (0, 1, 2, 3)
            n += 1
    assert n >= 90


def test_lambda_minus_one():
    p = grade(parse_class("E7"), 2)
    assert p.negative[1] == RepSum.of(Irrep(p.shape, p.sub.weights))
