"""The alpha_k-grading of a finite or affine algebra, computed from its roots.

Degree ``i`` collects the root spaces whose alpha_k-coefficient is ``i``.  Each piece
is decomposed as a module over the excised algebra g^k, whose weights are the
pairings of a root with the coroots of the remaining nodes.
"""

from __future__ import annotations

import itertools

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .diagram import (
    GCM,
    AffineType,
    DiagramClass,
    DiagramError,
    MarkedDiagram,
    affine_labels,
    affine_matrix,
    excise,
    imaginary_multiplicity,
)
from .reps import (
    Irrep,
    RepSum,
    adjoint,
    decompose_shape_character,
    dual_sum,
    opposite,
    trivial,
)
from .rootsys import (
    Root,
    RootSystem,
    SimpleType,
    build_root_system,
    leq,
    maximal_subroot_decomposition,
    maximal_subroots,
    root_closure,
    root_system_from_cartan,
)


class GradingError(ValueError):
    pass


@dataclass
class GradingProfile:
    source: DiagramClass
    gcm: GCM
    k: int
    sub: MarkedDiagram
    mode: str  # "finite" or "affine"
    top: int  # depth a_k (finite) or period r*a_k (affine)
    a_k: int
    r: int
    pieces: dict[int, RepSum] = field(default_factory=dict)
    negative: dict[int, RepSum] = field(default_factory=dict)
    roots_by_degree: dict[int, list[Root]] = field(default_factory=dict)
    imaginary: dict[int, int] = field(default_factory=dict)  # degree -> multiplicity at weight 0

    @property
    def shape(self) -> tuple[SimpleType, ...]:
        return self.sub.shape

    @property
    def type_string(self) -> str:
        return self.source.type_string

    def dim(self, i: int) -> int:
        return self.pieces[i].dim

    def highest_weight(self, i: int) -> Irrep | None:
        return self.pieces[i].single()

    def lowest_root(self, i: int) -> Root:
        return lowest_root(self, i)

    @property
    def sub_root_system(self) -> RootSystem:
        return _sub_roots(self.gcm, self.k)


def _weight_of(gcm: GCM, sub: MarkedDiagram, beta: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    m = gcm.matrix
    out = []
    for part in sub.parts:
        out.append(tuple(sum(m[v][l] * beta[l] for l in range(len(beta)) if beta[l]) for v in part.nodes))
    return tuple(out)


@lru_cache(maxsize=None)
def _sub_roots(gcm: GCM, k: int) -> RootSystem:
    """Root system of g^k in the parent's coordinates (k-coordinate always zero)."""
    n = gcm.n
    keep = [i for i in range(n) if i != k]
    sub = gcm.sub(keep)
    rs = root_system_from_cartan(sub.matrix, sub.lengths)

    def lift(r):
        out = [0] * n
        for a, i in zip(r, keep):
            out[i] = a
        return tuple(out)

    roots = tuple(sorted((lift(r) for r in rs.positive_roots), key=lambda r: (sum(r), r)))
    comps = tuple(tuple(keep[i] for i in c) for c in rs.components)
    # node k is decoupled so the lifted system is block diagonal with k isolated
    cart = tuple(
        tuple(0 if (i == k or j == k) and i != j else gcm.matrix[i][j] for j in range(n)) for i in range(n)
    )
    return RootSystem(cartan=cart, lengths=gcm.lengths, positive_roots=roots, components=comps)


def _decompose(gcm: GCM, sub: MarkedDiagram, roots: list[Root], zero_mult: int, sign: int = 1) -> RepSum:
    char: Counter = Counter()
    for beta in roots:
        w = _weight_of(gcm, sub, beta)
        if sign < 0:
            w = tuple(tuple(-x for x in c) for c in w)
        char[w] += 1
    if zero_mult:
        char[tuple((0,) * t.rank for t in sub.shape)] += zero_mult
    return decompose_shape_character(sub.shape, char)


def _profile(source: DiagramClass, gcm: GCM, k: int, mode: str, upto: int | None = None) -> GradingProfile:
    if not gcm.is_long(k):
        raise GradingError(f"alpha_{source.node_label(k)} is not a long root")
    sub = excise(gcm, k)
    if mode == "finite":
        rs = build_root_system(source.finite)
        roots = list(rs.positive_roots)
        a_k = rs.highest_root[k]
        top, r = a_k, 1
        hi = a_k
        labels = None
    else:
        aff = source.affine
        labels, _ = affine_labels(aff)
        a_k, r = labels[k], aff.r
        top = r * a_k
        hi = upto if upto is not None else top
        bound = [None] * gcm.n
        bound[k] = hi
        roots = root_closure(gcm.matrix, bound=bound)
    prof = GradingProfile(source=source, gcm=gcm, k=k, sub=sub, mode=mode, top=top, a_k=a_k, r=r)
    by: dict[int, list[Root]] = {i: [] for i in range(1, hi + 1)}
    for beta in roots:
        if 1 <= beta[k] <= hi:
            by[beta[k]].append(beta)
    prof.roots_by_degree = by
    for i in range(1, hi + 1):
        zm = 0
        real = by[i]
        if labels is not None and i % a_k == 0:
            zm = imaginary_multiplicity(source.affine, i // a_k)
            prof.imaginary[i] = zm
            real = [b for b in by[i] if not _is_delta_multiple(b, labels)]
        prof.pieces[i] = _decompose(gcm, sub, real, zm)
        prof.negative[i] = _decompose(gcm, sub, real, zm, sign=-1)
    return prof


def _is_delta_multiple(beta: Sequence[int], labels: Sequence[int]) -> bool:
    j, rem = divmod(beta[0], labels[0])
    return rem == 0 and j > 0 and all(b == j * a for b, a in zip(beta, labels))


def grade_finite(t: SimpleType, k: int) -> GradingProfile:
    gcm = GCM(build_root_system(t).cartan)
    source = DiagramClass("finite", finite=t, node_map=tuple(range(t.rank)))
    return _profile(source, gcm, k, "finite")


def grade_affine(t: AffineType, k: int, periods: int = 1) -> GradingProfile:
    """Pieces 1..periods*r*a_k of the alpha_k-grading of an affine algebra."""
    gcm = GCM(affine_matrix(t))
    source = DiagramClass("affine", affine=t, node_map=tuple(range(gcm.n)))
    labels, _ = affine_labels(t)
    return _profile(source, gcm, k, "affine", upto=periods * t.r * labels[k])


def grade(source: DiagramClass, k: int, periods: int = 1) -> GradingProfile:
    if source.kind == "finite":
        return grade_finite(source.finite, k)
    if source.kind == "affine":
        return grade_affine(source.affine, k, periods)
    raise GradingError("only finite and affine algebras can be graded")


def lowest_root(profile: GradingProfile, i: int) -> Root:
    """Unique minimal-height root of degree i; imaginary roots are excluded."""
    if not 1 <= i <= max(profile.roots_by_degree):
        raise GradingError(f"degree {i} out of range")
    labels = affine_labels(profile.source.affine)[0] if profile.mode == "affine" else None
    cands = [b for b in profile.roots_by_degree[i] if labels is None or not _is_delta_multiple(b, labels)]
    if not cands:
        raise GradingError(f"no real roots in degree {i}")
    h = min(sum(b) for b in cands)
    low = [b for b in cands if sum(b) == h]
    if len(low) != 1:
        raise GradingError(f"degree {i} has {len(low)} lowest roots")
    return low[0]


def highest_root_of_degree(profile: GradingProfile, i: int) -> Root:
    labels = affine_labels(profile.source.affine)[0] if profile.mode == "affine" else None
    cands = [b for b in profile.roots_by_degree[i] if labels is None or not _is_delta_multiple(b, labels)]
    h = max(sum(b) for b in cands)
    top = [b for b in cands if sum(b) == h]
    if len(top) != 1:
        raise GradingError(f"degree {i} has {len(top)} highest roots")
    return top[0]


# --- inert decomposition of gamma_t --------------------------------------------


@dataclass
class GammaReport:
    t: int
    parts: list[Root]
    inert: bool
    orthogonal: bool
    has_simple: bool
    lambda_ok: bool | None = None
    maximal: bool = True  # each part is a maximal subroot of what is left
    nested: bool = True  # later parts in one component have smaller support
    sums_are_roots: bool = True  # gamma_1 plus any subset of parts is a root

    @property
    def ok(self) -> bool:
        base = self.inert and self.orthogonal and (self.t != 2 or len(self.parts) < 3 or self.has_simple)
        base = base and self.maximal and self.nested and self.sums_are_roots
        return base and self.lambda_ok is not False


def _ip_parent(gcm: GCM, x: Sequence[int], y: Sequence[int]) -> Fraction:
    g = gcm.symmetrized()
    n = gcm.n
    return sum((x[i] * g[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j]), Fraction(0))


def gamma_decomposition(profile: GradingProfile, t: int) -> GammaReport:
    """Decompose gamma_t - (gamma_{t-1} + alpha_k) into successively maximal subroots."""
    if t < 2:
        raise GradingError("t must be at least 2")
    g_t = lowest_root(profile, t)
    g_prev = lowest_root(profile, t - 1)
    k = profile.k
    rest = [a - b for a, b in zip(g_t, g_prev)]
    rest[k] -= 1
    if rest[k] != 0 or any(x < 0 for x in rest):
        raise GradingError("gamma_t - gamma_{t-1} - alpha_k is not in Q+ of g^k")
    rs = profile.sub_root_system
    parts = maximal_subroot_decomposition(rs, rest) if any(rest) else []
    roots = rs.root_set()
    inert = True
    orth = True
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            x, y = parts[a], parts[b]
            s = tuple(p + q for p, q in zip(x, y))
            d1 = tuple(p - q for p, q in zip(x, y))
            d2 = tuple(q - p for p, q in zip(x, y))
            if s in roots or d1 in roots or d2 in roots:
                inert = False
            if _ip_parent(profile.gcm, x, y) != 0:
                orth = False
    has_simple = any(sum(p) == 1 for p in parts)
    rep = GammaReport(t, parts, inert, orth, has_simple)
    left = list(rest)
    for p in parts:
        if p not in maximal_subroots(rs, left):
            rep.maximal = False
        left = [a - b for a, b in zip(left, p)]
    supp = [frozenset(i for i, x in enumerate(p) if x) for p in parts]
    comp = [next(c for c, part in enumerate(profile.sub.parts) if s & set(part.nodes)) for s in supp]
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            if comp[a] == comp[b] and not supp[b] <= supp[a]:
                rep.nested = False
    deg1 = set(profile.roots_by_degree[1])
    for r in range(1, len(parts) + 1):
        for combo in itertools.combinations(parts, r):
            v = [int(i == k) for i in range(len(rest))]
            for p in combo:
                v = [x + y for x, y in zip(v, p)]
            if tuple(v) not in deg1:
                rep.sums_are_roots = False
    return rep


def prop2_check(profile: GradingProfile, t: int) -> GammaReport:
    """Closed form for lambda_t from lambda_{t-1}, lambda_1 and the beta parts."""
    rep = gamma_decomposition(profile, t)
    v1 = profile.highest_weight(1)
    vt = profile.highest_weight(t)
    vp = profile.highest_weight(t - 1)
    if None in (v1, vt, vp):
        rep.lambda_ok = False
        return rep
    # lambda_t = lambda_{t-1} + lambda_1 - sum(beta_i) as g^k weights
    sub = profile.sub
    bsum = [0] * profile.gcm.n
    for p in rep.parts:
        for i, x in enumerate(p):
            bsum[i] += x
    # the parts sit under the lowest root; -w0 carries them to the highest-weight side
    bw = tuple(opposite(c.simple_type, w) for c, w in zip(sub.parts, _weight_of(profile.gcm, sub, bsum)))
    want = tuple(
        tuple(a + b - c for a, b, c in zip(w1, wp, wb)) for w1, wp, wb in zip(v1.weights, vp.weights, bw)
    )
    rep.lambda_ok = want == vt.weights
    return rep


# --- structural checks --------------------------------------------------------


@dataclass
class CheckReport:
    results: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def add(self, name: str, ok: bool, note: str = "") -> None:
        self.results[name] = bool(ok)
        if note:
            self.notes[name] = note

    @property
    def ok(self) -> bool:
        return all(self.results.values())


def structural_checks(profile: GradingProfile) -> CheckReport:
    rep = CheckReport()
    shape = profile.shape
    top = profile.top
    for i in range(1, top + 1):
        rep.add(f"duality[{i}]", dual_sum(profile.pieces[i]) == profile.negative[i])
    if profile.mode == "finite":
        rs = build_root_system(profile.source.finite)
        sub_dim = sum(t.rank + 2 * len(build_root_system(t).positive_roots) for t in shape)
        total = sub_dim + 1 + 2 * sum(profile.dim(i) for i in range(1, top + 1))
        rep.add("dimension", total == rs.rank + 2 * len(rs.positive_roots))
        for i in range(1, top + 1):
            rep.add(f"irreducible[{i}]", len(profile.pieces[i]) == 1)
        theta = rs.highest_root
        lam = Irrep(shape, _weight_of(profile.gcm, profile.sub, theta))
        rep.add("top_is_theta", profile.pieces[top] == RepSum.of(lam))
        if profile.a_k > 1:
            rep.add("remark2", profile.dim(top - 1) * (top - 1) == profile.dim(1))
    else:
        for i in range(1, top + 1):
            if i % top:
                rep.add(f"irreducible[{i}]", len(profile.pieces[i]) == 1)
        rep.add("top_is_adjoint", profile.pieces[top] == adjoint(shape))
        rep.add("top_dim", profile.dim(top) == sum(t.rank + 2 * len(build_root_system(t).positive_roots) for t in shape))
        if max(profile.pieces) >= 2 * top:
            for i in range(1, top + 1):
                rep.add(f"period[{i}]", profile.pieces[i] == profile.pieces[i + top])
    low = Irrep(shape, profile.sub.weights)
    rep.add("lambda_minus_1", profile.negative[1] == RepSum.of(low))
    return rep
