"""Generalized Cartan matrices: classification, excision of a node, extension by a node.

Node indices are 0-based in code.  For a finite type, index ``i`` is the Bourbaki
root ``alpha_{i+1}``; for an affine type, index ``i`` is ``alpha_i`` with ``alpha_0`` the
extra node.  Untwisted affine diagrams are the Bourbaki diagram with ``alpha_0 = -theta``
attached; twisted ones follow Kac's tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import sympy

from .rootsys import (
    Root,
    RootSystem,
    SimpleType,
    build_root_system,
    cartan_from_lengths,
    root_closure,
    root_system_from_cartan,
)

Matrix = tuple[tuple[int, ...], ...]


class DiagramError(ValueError):
    pass


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


@dataclass(frozen=True)
class GCM:
    """Generalized Cartan matrix, ``A[i][j] = <alpha_j, alpha_i^vee>``.

    ``lengths`` are squared root lengths from the symmetrizer, scaled so the longest
    root of each connected block has squared length 2.
    """

    matrix: Matrix
    lengths: tuple[Fraction, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        m = _as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise DiagramError("GCM must be square")
            if m[i][i] != 2:
                raise DiagramError(f"diagonal entry {i} is {m[i][i]}, expected 2")
            for j in range(n):
                if i != j and (m[i][j] > 0 or (m[i][j] == 0) != (m[j][i] == 0)):
                    raise DiagramError(f"bad off-diagonal pair at ({i},{j})")
        object.__setattr__(self, "lengths", _symmetrize(m))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.matrix[ij[0]][ij[1]]

    def blocks(self) -> list[tuple[int, ...]]:
        return _blocks(self.matrix)

    def sub(self, nodes: Sequence[int]) -> "GCM":
        return GCM(tuple(tuple(self.matrix[i][j] for j in nodes) for i in nodes))

    def symmetrized(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix (alpha_i, alpha_j) = d_i A[i][j] with d_i = |alpha_i|^2 / 2."""
        return tuple(
            tuple(self.lengths[i] / 2 * self.matrix[i][j] for j in range(self.n)) for i in range(self.n)
        )

    def is_long(self, k: int) -> bool:
        comp = next(b for b in self.blocks() if k in b)
        return self.lengths[k] == max(self.lengths[i] for i in comp)

    def permuted(self, perm: Sequence[int]) -> "GCM":
        """Matrix B with B[i][j] = A[perm[i]][perm[j]]."""
        return GCM(tuple(tuple(self.matrix[perm[i]][perm[j]] for j in range(self.n)) for i in range(self.n)))


def _blocks(m: Matrix) -> list[tuple[int, ...]]:
    n = len(m)
    seen: set[int] = set()
    out = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(n):
                if w not in seen and m[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def _symmetrize(m: Matrix) -> tuple[Fraction, ...]:
    n = len(m)
    d: list[Fraction | None] = [None] * n
    for comp in _blocks(m):
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if j != i and m[i][j] != 0:
                    # d_i A_ij = d_j A_ji
                    want = d[i] * m[i][j] / m[j][i]
                    if d[j] is None:
                        d[j] = want
                        stack.append(j)
                    elif d[j] != want:
                        raise DiagramError("GCM is not symmetrizable")
        top = max(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / top
    return tuple(2 * x for x in d)


# --- catalog -----------------------------------------------------------------


@dataclass(frozen=True)
class AffineType:
    family: str
    N: int
    r: int

    def __str__(self) -> str:
        return f"{self.family}{self.N}({self.r})"

    @property
    def ell(self) -> int:
        """Number of nodes minus one."""
        f, N, r = self.family, self.N, self.r
        if r == 1:
            return N
        if f == "A":
            return (N + 1) // 2
        if f == "D" and r == 2:
            return N - 1
        if f == "E":
            return 4
        return 2  # D4(3)

    @classmethod
    def parse(cls, text: str) -> "AffineType":
        text = text.strip()
        head, _, tail = text.partition("(")
        try:
            return cls(head[0].upper(), int(head[1:]), int(tail.rstrip(")")))
        except (IndexError, ValueError) as exc:
            raise DiagramError(f"cannot parse affine type {text!r}") from exc


def _legal_affine(t: AffineType) -> bool:
    f, N, r = t.family, t.N, t.r
    if r == 1:
        # B2(1) = C2(1) and D3(1) = A3(1) are listed once
        return {"A": N >= 1, "B": N >= 3, "C": N >= 2, "D": N >= 4,
                "E": N in (6, 7, 8), "F": N == 4, "G": N == 2}.get(f, False)
    if r == 2:
        # A3(2) = D3(2)
        return (f == "A" and (N % 2 == 0 or N >= 5)) or (f == "D" and N >= 3) or (f == "E" and N == 6)
    return r == 3 and f == "D" and N == 4


def untwisted_matrix(t: SimpleType) -> Matrix:
    """Bourbaki Cartan matrix with alpha_0 = -theta prepended at index 0."""
    rs = build_root_system(t)
    theta = rs.highest_root
    n = t.rank
    d = rs.symmetrizer
    # (alpha_i, theta) with |theta|^2 = 2
    th = [sum(rs.gram[i][j] * theta[j] for j in range(n)) for i in range(n)]
    m = [[0] * (n + 1) for _ in range(n + 1)]
    m[0][0] = 2
    for i in range(n):
        for j in range(n):
            m[i + 1][j + 1] = rs.cartan[i][j]
        m[0][i + 1] = int(-th[i])  # <alpha_i, (-theta)^vee>
        m[i + 1][0] = int(-th[i] / d[i])  # <-theta, alpha_i^vee>
    return _as_matrix(m)


def twisted_matrix(t: AffineType) -> Matrix:
    f, N = t.family, t.N
    half, one, two = Fraction(1, 2), Fraction(1), Fraction(2)
    ell = t.ell
    chain = [(i, i + 1) for i in range(ell)]
    if f == "A" and N == 2:
        return ((2, -4), (-1, 2))
    if f == "A" and N % 2 == 0:
        # alpha_0 shortest, alpha_ell longest; labels 2,..,2,1
        return cartan_from_lengths((half,) + (one,) * (ell - 1) + (two,), chain)
    if f == "A":
        # alpha_0 and alpha_1 both on alpha_2; alpha_ell long
        edges = [(0, 2)] + [(i, i + 1) for i in range(1, ell)]
        return cartan_from_lengths((one,) * ell + (two,), edges)
    if f == "D" and t.r == 2:
        return cartan_from_lengths((one,) + (two,) * (ell - 1) + (one,), chain)
    if f == "E":
        return cartan_from_lengths((one, one, one, two, two), chain)
    # D4(3): alpha_0 - alpha_1 <= alpha_2 (triple), alpha_2 long
    return cartan_from_lengths((Fraction(2, 3), Fraction(2, 3), two), chain)


def affine_matrix(t: AffineType) -> Matrix:
    if not _legal_affine(t):
        raise DiagramError(f"no affine type {t}")
    if t.r == 1:
        return untwisted_matrix(SimpleType(t.family, t.N))
    return twisted_matrix(t)


_CANON_MIN = {"A": 1, "B": 2, "C": 3, "D": 4}


def canonical_finite(t: SimpleType) -> bool:
    """False for the low-rank aliases C2 = B2 and D3 = A3."""
    return t.rank >= _CANON_MIN.get(t.family, 0)


def finite_catalog(n: int) -> list[SimpleType]:
    out = []
    for f in "ABCDEFG":
        try:
            t = SimpleType(f, n)
        except ValueError:
            continue
        if canonical_finite(t):
            out.append(t)
    return out


def affine_catalog(n_nodes: int) -> list[AffineType]:
    ell = n_nodes - 1
    cands = [AffineType(f, ell, 1) for f in "ABCDEFG"]
    cands += [AffineType("A", 2 * ell, 2), AffineType("A", 2 * ell - 1, 2), AffineType("D", ell + 1, 2)]
    cands += [AffineType("E", 6, 2), AffineType("D", 4, 3)]
    return [t for t in cands if _legal_affine(t) and t.ell == ell]


# --- classification ----------------------------------------------------------


@dataclass(frozen=True)
class DiagramClass:
    """Verdict for one connected GCM.

    ``kind`` is ``"finite"``, ``"affine"`` or ``"indefinite"``.  ``node_map[i]`` is the
    canonical index of input node ``i``.
    """

    kind: str
    finite: SimpleType | None = None
    affine: AffineType | None = None
    node_map: tuple[int, ...] = ()

    @property
    def type_string(self) -> str:
        if self.kind == "finite":
            return str(self.finite)
        if self.kind == "affine":
            return str(self.affine)
        return "indefinite"

    @property
    def canonical(self) -> GCM:
        if self.kind == "finite":
            return GCM(build_root_system(self.finite).cartan)
        if self.kind == "affine":
            return GCM(affine_matrix(self.affine))
        raise DiagramError("indefinite diagrams have no canonical matrix")

    def node_label(self, canonical_index: int) -> int:
        """Printed subscript: Bourbaki 1-based for finite, alpha_0 based for affine."""
        return canonical_index + 1 if self.kind == "finite" else canonical_index


def finite_class(t: SimpleType) -> DiagramClass:
    return DiagramClass("finite", finite=t, node_map=tuple(range(t.rank)))


def affine_class(t: AffineType) -> DiagramClass:
    return DiagramClass("affine", affine=t, node_map=tuple(range(t.ell + 1)))


def catalog(max_rank: int) -> list[DiagramClass]:
    """Every canonical finite type and affine type of rank at most max_rank."""
    out = [finite_class(t) for n in range(1, max_rank + 1) for t in finite_catalog(n)]
    out += [affine_class(t) for n in range(1, max_rank + 1) for t in affine_catalog(n + 1)]
    return out


def _pivots(b: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Pivots of Gaussian elimination without row swaps; stops after a zero pivot."""
    m = [list(map(Fraction, row)) for row in b]
    n = len(m)
    out = []
    for i in range(n):
        p = m[i][i]
        out.append(p)
        if p == 0:
            break
        for r in range(i + 1, n):
            f = m[r][i] / p
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return out


def _pos_def(b: Sequence[Sequence[Fraction]]) -> bool:
    # leading minors are the running products of the pivots
    piv = _pivots(b)
    return len(piv) == len(b) and all(p > 0 for p in piv)


def trichotomy(g: GCM) -> str:
    """Finite / affine / indefinite for a connected GCM, from the symmetrized matrix."""
    b = g.symmetrized()
    if _pos_def(b):
        return "finite"
    n = g.n
    for drop in range(n):
        keep = [i for i in range(n) if i != drop]
        if not _pos_def([[b[i][j] for j in keep] for i in keep]):
            return "indefinite"
    # every proper principal minor is positive, so the sign of det decides
    if _det(b) != 0:
        return "indefinite"
    return "affine"


def _det(b: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, row)) for row in b]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def isomorphisms(src: Matrix, dst: Matrix) -> list[tuple[int, ...]]:
    """All maps s with src[i][j] == dst[s[i]][s[j]]."""
    n = len(src)
    if len(dst) != n:
        return []

    def sig(m: Matrix, i: int):
        return (tuple(sorted(m[i][j] for j in range(len(m)) if j != i)),
                tuple(sorted(m[j][i] for j in range(len(m)) if j != i)))

    ssig = [sig(src, i) for i in range(n)]
    dsig = [sig(dst, i) for i in range(n)]
    out: list[tuple[int, ...]] = []
    assign = [-1] * n
    used = [False] * n
    # visit source nodes in BFS order so adjacency prunes early
    order: list[int] = []
    for comp in _blocks(src):
        start = comp[0]
        q = [start]
        seen = {start}
        while q:
            v = q.pop(0)
            order.append(v)
            for w in range(n):
                if w not in seen and src[v][w] != 0:
                    seen.add(w)
                    q.append(w)

    def rec(pos: int) -> None:
        if pos == n:
            out.append(tuple(assign))
            return
        i = order[pos]
        for c in range(n):
            if used[c] or dsig[c] != ssig[i]:
                continue
            ok = all(
                src[i][j] == dst[c][assign[j]] and src[j][i] == dst[assign[j]][c]
                for j in order[:pos]
            )
            if ok:
                assign[i] = c
                used[c] = True
                rec(pos + 1)
                used[c] = False
                assign[i] = -1

    rec(0)
    return out


def _choose(maps: list[tuple[int, ...]], prefer: int | None) -> tuple[int, ...]:
    if prefer is None:
        return min(maps)
    return min(maps, key=lambda s: (s[prefer], s))


def classify(g: GCM, prefer: int | None = None) -> DiagramClass:
    """Classify a connected GCM and match it against the catalog.

    When the diagram has symmetries, the isomorphism sending ``prefer`` to the
    smallest canonical index is reported.
    """
    if len(g.blocks()) != 1:
        raise DiagramError("classify needs a connected diagram; use classify_blocks")
    kind = trichotomy(g)
    if kind == "finite":
        for t in finite_catalog(g.n):
            maps = isomorphisms(g.matrix, build_root_system(t).cartan)
            if maps:
                return DiagramClass("finite", finite=t, node_map=_choose(maps, prefer))
        raise DiagramError("positive definite GCM missing from the catalog")  # pragma: no cover
    if kind == "affine":
        for t in affine_catalog(g.n):
            maps = isomorphisms(g.matrix, affine_matrix(t))
            if maps:
                return DiagramClass("affine", affine=t, node_map=_choose(maps, prefer))
        raise DiagramError("affine GCM missing from the catalog")  # pragma: no cover
    return DiagramClass("indefinite")


def classify_blocks(g: GCM) -> list[tuple[tuple[int, ...], DiagramClass]]:
    return [(b, classify(g.sub(b))) for b in g.blocks()]


# --- excision and extension ---------------------------------------------------


@dataclass(frozen=True)
class MarkedComponent:
    """One block of D^k: its parent nodes, Bourbaki type and the weight it carries."""

    nodes: tuple[int, ...]  # parent indices, listed in Bourbaki order of the block
    simple_type: SimpleType
    weight: tuple[int, ...]  # fundamental coordinates, Bourbaki order


@dataclass(frozen=True)
class MarkedDiagram:
    gcm: GCM  # excised algebra, parent indices with k removed
    marks: dict = field(compare=False)  # parent node -> edge count to k
    k: int = 0
    parts: tuple[MarkedComponent, ...] = ()

    @property
    def shape(self) -> tuple[SimpleType, ...]:
        return tuple(p.simple_type for p in self.parts)

    @property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(p.weight for p in self.parts)

    @property
    def order(self) -> tuple[int, ...]:
        """Parent node indices laid out component by component in Bourbaki order."""
        return tuple(v for p in self.parts for v in p.nodes)


def excise(full: GCM, k: int) -> MarkedDiagram:
    if not 0 <= k < full.n:
        raise DiagramError(f"node {k} out of range")
    if not full.is_long(k):
        raise DiagramError(f"node {k} is not a long root")
    rest = [i for i in range(full.n) if i != k]
    sub = full.sub(rest)
    marks = {i: -full[(i, k)] for i in rest if full[(i, k)] != 0}
    parts = []
    for block in sub.blocks():
        parent = [rest[b] for b in block]
        cls = classify(full.sub(parent))
        if cls.kind != "finite":
            raise DiagramError("excising a node left a non-finite block")
        inv = [0] * len(parent)
        for local, canon in enumerate(cls.node_map):
            inv[canon] = parent[local]
        weight = tuple(marks.get(v, 0) for v in inv)
        parts.append(MarkedComponent(tuple(inv), cls.finite, weight))
    # components with a mark first, in order of their smallest parent node
    parts.sort(key=lambda p: min(p.nodes))
    return MarkedDiagram(gcm=sub, marks=marks, k=k, parts=tuple(parts))


CominusculeNodes = {
    "A": lambda n: tuple(range(n)),
    "B": lambda n: (0,),
    "C": lambda n: (n - 1,),
    "D": lambda n: (0, n - 2, n - 1),
    "E": lambda n: {6: (0, 5), 7: (6,), 8: ()}[n],
    "F": lambda n: (),
    "G": lambda n: (),
}


def cominuscule_nodes(t: SimpleType) -> tuple[int, ...]:
    return CominusculeNodes[t.family](t.rank)


def extend(
    shape: Sequence[SimpleType],
    attach: Sequence[tuple[int, int, int]],
    check_cominuscule: bool = True,
) -> GCM:
    """Append a long node, returned as the last index, to the diagram of ``shape``.

    ``attach`` lists (component, node, degree); the new node k gets
    A[c][k] = -degree and A[k][c] = -1.
    """
    offs, total = [], 0
    for t in shape:
        offs.append(total)
        total += t.rank
    seen = set()
    m = [[0] * (total + 1) for _ in range(total + 1)]
    for t, off in zip(shape, offs):
        c = build_root_system(t).cartan
        for i in range(t.rank):
            for j in range(t.rank):
                m[off + i][off + j] = c[i][j]
    m[total][total] = 2
    for comp, node, deg in attach:
        if comp in seen:
            raise DiagramError(f"component {comp} attached twice")
        seen.add(comp)
        t = shape[comp]
        if not 0 <= node < t.rank:
            raise DiagramError(f"node {node} out of range for {t}")
        if check_cominuscule and node not in cominuscule_nodes(t):
            raise DiagramError(f"node {node + 1} of {t} is not cominuscule")
        if deg < 1:
            raise DiagramError("degree must be positive")
        m[offs[comp] + node][total] = -deg
        m[total][offs[comp] + node] = -1
    return GCM(_as_matrix(m))


# --- affine root data -----------------------------------------------------------


def null_vector(m: Matrix, transpose: bool = False) -> tuple[int, ...]:
    mat = sympy.Matrix(m)
    if transpose:
        mat = mat.T
    ns = mat.nullspace()
    if len(ns) != 1:
        raise DiagramError("matrix does not have corank 1")
    v = ns[0]
    den = sympy.ilcm(*[x.q for x in v]) if len(v) > 1 else v[0].q
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise DiagramError("null vector is not positive")
    return tuple(ints)


def imaginary_multiplicity(t: AffineType, j: int) -> int:
    """mult(j delta); twisted values are the standard table (Kac, Cor. 8.3)."""
    if j == 0:
        return 0
    if t.r == 1 or (t.family == "A" and t.N % 2 == 0):
        return t.ell
    if j % t.r == 0:
        return t.ell
    return (t.N - t.ell) // (t.r - 1)


@dataclass(frozen=True)
class AffineRootSystem:
    affine: AffineType
    gcm: GCM
    labels: tuple[int, ...]
    dual_labels: tuple[int, ...]
    height_cap: int
    roots: tuple[Root, ...]

    @property
    def delta(self) -> Root:
        return self.labels

    @property
    def r(self) -> int:
        return self.affine.r

    def imaginary_level(self, beta: Sequence[int]) -> int:
        """j if beta = j delta, else 0."""
        j, rem = divmod(beta[0], self.labels[0])
        if rem == 0 and j > 0 and all(b == j * a for b, a in zip(beta, self.labels)):
            return j
        return 0

    def mult(self, beta: Sequence[int]) -> int:
        j = self.imaginary_level(beta)
        if j:
            return imaginary_multiplicity(self.affine, j)
        return 1 if tuple(beta) in set(self.roots) else 0


@lru_cache(maxsize=None)
def affine_labels(t: AffineType) -> tuple[tuple[int, ...], tuple[int, ...]]:
    m = affine_matrix(t)
    return null_vector(m), null_vector(m, transpose=True)


def affine_roots(t: AffineType, height_cap: int | None = None) -> AffineRootSystem:
    m = affine_matrix(t)
    a, av = affine_labels(t)
    need = (t.r + 1) * sum(a)
    if height_cap is None:
        height_cap = need
    if height_cap < need:
        raise DiagramError(f"height cap {height_cap} below height((r+1) delta) = {need}")
    roots = root_closure(m, max_height=height_cap)
    return AffineRootSystem(t, GCM(m), a, av, height_cap, tuple(roots))


def finite_system(t: SimpleType) -> RootSystem:
    return build_root_system(t)


def subsystem(g: GCM, nodes: Sequence[int]) -> RootSystem:
    """Finite root system on the given nodes, in that order."""
    s = g.sub(nodes)
    return root_system_from_cartan(s.matrix, s.lengths)
