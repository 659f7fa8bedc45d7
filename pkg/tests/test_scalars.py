from fractions import Fraction

import pytest
import sympy

from lsngrade.construct import long_nodes
from lsngrade.diagram import affine_labels, null_vector
from lsngrade.grading import grade
from lsngrade.reps import Irrep
from lsngrade.rootsys import SimpleType, build_root_system
from lsngrade.scalars import (
    ScalarError,
    ScaledForm,
    casimir,
    casimir_of,
    grading_scalars,
    lowest_weight_lcd,
    psi_on_u_closed,
    psi_on_y_closed,
    psi_spectrum,
    u_casimir_closed,
    u_casimir_expanded,
)


def irrep(*parts):
    return Irrep(tuple(SimpleType.parse(t) for t, _ in parts), tuple(tuple(w) for _, w in parts))


def test_casimir_trivial_and_adjoint():
    a2 = (SimpleType("A", 2),)
    sf = ScaledForm.unit(a2)
    assert casimir(sf, ((0, 0),)) == 0
    # 2 * dual Coxeter number under |theta|^2 = 2
    assert casimir(sf, ((1, 1),)) == 6
    e8 = (SimpleType("E", 8),)
    assert casimir(ScaledForm.unit(e8), ((0, 0, 0, 0, 0, 0, 0, 1),)) == 60


def test_four_a1_norm():
    gs = grading_scalars("affine", irrep(*[("A1", [1])] * 4))
    assert gs.norm == 2 and gs.a_k == 2


def test_a1_cubed():
    gs = grading_scalars("finite", irrep(("A1", [3])))
    assert gs.norm == Fraction(3, 2) and gs.t_k == 2


def test_e7_cominuscule():
    gs = grading_scalars("finite", irrep(("E7", [0, 0, 0, 0, 0, 0, 1])))
    assert gs.norm == Fraction(3, 2) and gs.t_k == 2


def test_e6_alpha4_norm():
    v = irrep(("A2", [1, 0]), ("A1", [1]), ("A2", [0, 1]))
    gs = grading_scalars("finite", v)
    assert gs.norm == Fraction(1, 2) + Fraction(2, 3) + Fraction(2, 3) == Fraction(11, 6)
    assert gs.t_k == 6


def test_mode_guards():
    with pytest.raises(ScalarError):
        grading_scalars("affine", irrep(("A1", [3])))
    with pytest.raises(ScalarError):
        grading_scalars("finite", irrep(*[("A1", [1])] * 4))
    with pytest.raises(ScalarError):
        grading_scalars("other", irrep(("A1", [1])))


def _inverse_cartan_diag(t, k):
    # second route: sympy inverse of the Cartan matrix; the diagonal entry is convention-free
    m = sympy.Matrix(build_root_system(t).cartan)
    return Fraction(str(m.inv()[k, k]))


def test_t_k_matches_inverse_cartan(catalog8):
    n = 0
    for c in catalog8:
        if c.kind != "finite":
            continue
        for k in long_nodes(c):
            gs = grading_scalars("finite", grade(c, k).highest_weight(1))
            assert gs.t_k == _inverse_cartan_diag(c.finite, k), (c.type_string, k)
            n += 1
    assert n > 100


def test_a_k_matches_marks(catalog8):
    for c in catalog8:
        if c.kind != "affine":
            continue
        marks = null_vector(c.canonical.matrix)
        assert tuple(marks) == affine_labels(c.affine)[0]
        for k in long_nodes(c):
            p = grade(c, k)
            if p.pieces[1].single() is None or p.pieces[1] == p.pieces[p.top]:
                continue
            assert lowest_weight_lcd(p.highest_weight(1)) == marks[k], (c.type_string, k)


def test_psi_tables():
    for mode, t_k in (("affine", None), ("finite", Fraction(6)), ("finite", Fraction(2))):
        for t in range(1, 6):
            tab = psi_spectrum(mode, t, t_k, rho_alpha=Fraction(3))
            assert tab.y[2] == 0 and tab.u[2] == 0
            assert tab.y[3] == psi_on_y_closed(mode, t, t_k)
            assert tab.u[3] == psi_on_u_closed(mode, t_k)
            assert sum(tab.y[:3]) == tab.y[3]
    with pytest.raises(ScalarError):
        psi_spectrum("affine", 0, None)


def test_stated_u_casimir_differs_from_expansion():
    # affine, (lambda_1, lambda_t) = 1 and |alpha|^2 = 2: c_1 + c_t - 2(rho, alpha), not 2 more
    for t in (2, 3):
        c1, ct, ra = Fraction(5), Fraction(7), Fraction(2)
        l1t = Fraction(1)
        assert u_casimir_expanded(c1, ct, l1t, 2, ra) - u_casimir_closed("affine", c1, ct, t, None, ra) == -2


def test_scaled_form_uses_degrees():
    v = irrep(("A1", [3]))
    sf = ScaledForm.for_module(v)
    assert sf.ip(((1,),), ((1,),)) == Fraction(1, 6)
    assert casimir_of(sf, v) == Fraction(3, 2) + Fraction(1)


def test_reports_over_catalog(roundtrips8):
    bad = []
    conflicts = set()
    n = 0
    for c, k, rt, rep in roundtrips8:
        if rep is None:
            continue
        n += 1
        if not rep.ok:
            bad.append((c.type_string, k, [i.name for i in rep.failures()]))
        for i in rep.conflicts():
            if not i.ok:
                conflicts.add((c.type_string, k, i.name))
    assert not bad
    assert n > 200
    kinds = {name for _, _, name in conflicts}
    # the non-orthogonal c_2 closed form and the stated U_{1,t} Casimir are recorded conflicts
    assert "c_2 closed form (parts not orthogonal)" in kinds
    assert any(name.endswith("(stated)") for name in kinds)
    assert ("G2", 1, "c_2 closed form (parts not orthogonal)") in conflicts
