import random

import pytest

from lsngrade.diagram import (
    GCM,
    AffineType,
    DiagramError,
    affine_catalog,
    affine_labels,
    affine_matrix,
    catalog,
    classify,
    excise,
    extend,
    finite_catalog,
    isomorphisms,
    trichotomy,
)
from lsngrade.rootsys import SimpleType, build_root_system

# Kac, Tables Aff 1-3, in this package's node order
KAC_LABELS = {
    "A1(1)": (1, 1),
    "A4(1)": (1, 1, 1, 1, 1),
    "B4(1)": (1, 1, 2, 2, 2),
    "C3(1)": (1, 2, 2, 1),
    "D5(1)": (1, 1, 2, 2, 1, 1),
    "E6(1)": (1, 1, 2, 2, 3, 2, 1),
    "E7(1)": (1, 2, 2, 3, 4, 3, 2, 1),
    "E8(1)": (1, 2, 3, 4, 6, 5, 4, 3, 2),
    "F4(1)": (1, 2, 3, 4, 2),
    "G2(1)": (1, 3, 2),
    "A2(2)": (2, 1),
    "A4(2)": (2, 2, 1),
    "A6(2)": (2, 2, 2, 1),
    "A5(2)": (1, 1, 2, 1),
    "A7(2)": (1, 1, 2, 2, 1),
    "D4(2)": (1, 1, 1, 1),
    "E6(2)": (1, 2, 3, 2, 1),
    "D4(3)": (1, 2, 1),
}


@pytest.mark.parametrize("name,labels", sorted(KAC_LABELS.items()))
def test_affine_labels(name, labels):
    assert affine_labels(AffineType.parse(name))[0] == labels


def test_classify_textbook_matrices():
    g2 = classify(GCM(((2, -1), (-3, 2))))
    assert g2.kind == "finite" and g2.type_string == "G2"
    a22 = classify(GCM(((2, -1), (-4, 2))))
    assert a22.kind == "affine" and a22.type_string == "A2(2)"
    assert trichotomy(GCM(((2, -3), (-3, 2)))) == "indefinite"


def _all_classes(max_rank):
    return catalog(max_rank)


@pytest.mark.parametrize("cls", _all_classes(9), ids=lambda c: c.type_string)
def test_classify_permutation_invariant(cls):
    g = cls.canonical
    rng = random.Random(f"{cls.type_string}")
    for _ in range(50):
        perm = list(range(g.n))
        rng.shuffle(perm)
        got = classify(g.permuted(perm))
        assert got.kind == cls.kind
        assert got.type_string == cls.type_string


@pytest.mark.parametrize("cls", _all_classes(9), ids=lambda c: c.type_string)
def test_excise_then_extend(cls):
    g = cls.canonical
    if cls.type_string == "A1(1)":
        pytest.skip("both off-diagonal entries are -2; a new node always has <alpha_c, alpha_k^vee> = -1")
    for k in range(g.n):
        if not g.is_long(k) or g.n == 1:
            continue
        sub = excise(g, k)
        attach = []
        for c, part in enumerate(sub.parts):
            nz = [i for i, w in enumerate(part.weight) if w]
            if len(nz) != 1:
                break
            attach.append((c, nz[0], part.weight[nz[0]]))
        else:
            back = extend(sub.shape, attach, check_cominuscule=False)
            maps = isomorphisms(back.matrix, g.matrix)
            assert any(m[back.n - 1] == k for m in maps)


def test_catalog_sizes():
    assert [str(t) for t in finite_catalog(4)] == ["A4", "B4", "C4", "D4", "F4"]
    assert sorted(str(t) for t in affine_catalog(3)) == sorted(["A2(1)", "C2(1)", "G2(1)", "A4(2)", "D3(2)", "D4(3)"])


def test_illegal_affine():
    with pytest.raises(DiagramError):
        affine_matrix(AffineType("E", 5, 1))


def test_extend_checks():
    a2 = SimpleType("A", 2)
    with pytest.raises(DiagramError):
        extend((a2, a2), [(0, 0, 1), (0, 1, 1)])
    with pytest.raises(DiagramError):
        extend((SimpleType("C", 3),), [(0, 1, 1)])


def test_excise_weights_e6():
    g = GCM(build_root_system(SimpleType("E", 6)).cartan)
    sub = excise(g, 3)
    assert sorted(str(t) for t in sub.shape) == ["A1", "A2", "A2"]
    assert sorted(sum(p.weight) for p in sub.parts) == [1, 1, 1]
