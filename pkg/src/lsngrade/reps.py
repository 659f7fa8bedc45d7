"""Weight multiplicities, tensor products, Λ²/S², duals and the admission test.

Weights are integer tuples in fundamental-weight coordinates.  A representation of
a semisimple shape is a tuple of such tuples, one per component.
"""

from __future__ import annotations

import heapq

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Iterable, Mapping, Sequence

from .rootsys import RootSystem, SimpleType, build_root_system

W = tuple[int, ...]


class RepError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Irrep:
    shape: tuple[SimpleType, ...]
    weights: tuple[W, ...]

    def __post_init__(self) -> None:
        shape = tuple(self.shape)
        weights = tuple(tuple(int(x) for x in w) for w in self.weights)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "weights", weights)
        if len(shape) != len(weights):
            raise RepError("one weight per component is required")
        for t, w in zip(shape, weights):
            if len(w) != t.rank:
                raise RepError(f"weight {w} has the wrong length for {t}")
            if any(x < 0 for x in w):
                raise RepError(f"weight {w} is not dominant")

    @property
    def dim(self) -> int:
        out = 1
        for t, w in zip(self.shape, self.weights):
            out *= dim_of(t, w)
        return out

    def is_trivial(self) -> bool:
        return not any(any(w) for w in self.weights)

    def __str__(self) -> str:
        return " ⊗ ".join(f"{t}{list(w)}" for t, w in zip(self.shape, self.weights))


class RepSum:
    """Multiset of irreducibles over a common shape."""

    def __init__(self, shape: Sequence[SimpleType], items: Mapping[Irrep, int] | Iterable[tuple[Irrep, int]] = ()):
        self.shape = tuple(shape)
        self.counts: Counter[Irrep] = Counter()
        pairs = items.items() if isinstance(items, Mapping) else items
        for v, m in pairs:
            if v.shape != self.shape:
                raise RepError("constituent shape mismatch")
            if m < 0:
                raise RepError("negative multiplicity")
            if m:
                self.counts[v] += m

    @classmethod
    def of(cls, v: Irrep) -> "RepSum":
        return cls(v.shape, {v: 1})

    @property
    def dim(self) -> int:
        return sum(v.dim * m for v, m in self.counts.items())

    def __len__(self) -> int:
        return sum(self.counts.values())

    def items(self) -> list[tuple[Irrep, int]]:
        return sorted(self.counts.items())

    def single(self) -> Irrep | None:
        if len(self) == 1:
            return next(iter(self.counts))
        return None

    def __add__(self, other: "RepSum") -> "RepSum":
        if other.shape != self.shape:
            raise RepError("shape mismatch")
        return RepSum(self.shape, self.counts + other.counts)

    def __sub__(self, other: "RepSum") -> "RepSum":
        """Remove ``other``; it must be contained in ``self``."""
        out = Counter(self.counts)
        for v, m in other.counts.items():
            if out[v] < m:
                raise RepError(f"{v} is not contained with multiplicity {m}")
            out[v] -= m
        return RepSum(self.shape, +out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RepSum) and self.shape == other.shape and +self.counts == +other.counts

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.counts.items())))

    def __repr__(self) -> str:
        return f"RepSum({self})"

    def __str__(self) -> str:
        if not self.counts:
            return "0"
        parts = []
        for v, m in self.items():
            parts.append(f"{m}×({v})" if m > 1 else f"({v})")
        return " ⊕ ".join(parts)


# --- single-component kernels -----------------------------------------------------


@lru_cache(maxsize=None)
def _rs(t: SimpleType) -> RootSystem:
    return build_root_system(t)


@lru_cache(maxsize=None)
def _simple_fund(t: SimpleType) -> tuple[W, ...]:
    """alpha_i in fundamental coordinates (column i of the Cartan matrix)."""
    c = _rs(t).cartan
    n = t.rank
    return tuple(tuple(c[j][i] for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _pos_fund(t: SimpleType) -> tuple[W, ...]:
    c = _rs(t).cartan
    n = t.rank
    return tuple(
        tuple(sum(c[j][i] * a[i] for i in range(n)) for j in range(n)) for a in _rs(t).positive_roots
    )


def dominant_rep(t: SimpleType, mu: Sequence[int]) -> tuple[W, int, bool]:
    """Dominant W-conjugate of mu, the sign of the reflecting word, and a wall flag.

    The flag is True when the dominant conjugate has a zero coordinate, i.e. mu has a
    non-trivial stabilizer.
    """
    simple = _simple_fund(t)
    mu = list(mu)
    sign = 1
    while True:
        for i, x in enumerate(mu):
            if x < 0:
                a = simple[i]
                for j in range(len(mu)):
                    mu[j] -= x * a[j]
                sign = -sign
                break
        else:
            break
    return tuple(mu), sign, any(x == 0 for x in mu)


WEYL_ORDER_E = {6: 51840, 7: 2903040, 8: 696729600}


def weyl_order(t: SimpleType) -> int:
    n = t.rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2**n * factorial(n),
        "C": lambda: 2**n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E": lambda: WEYL_ORDER_E[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[t.family]()


@lru_cache(maxsize=None)
def _parabolic_order(t: SimpleType, zeros: frozenset[int]) -> int:
    from .diagram import GCM, classify

    if not zeros:
        return 1
    nodes = sorted(zeros)
    sub = GCM(tuple(tuple(_rs(t).cartan[i][j] for j in nodes) for i in nodes))
    out = 1
    for block in sub.blocks():
        out *= weyl_order(classify(sub.sub(block)).finite)
    return out


def orbit_size(t: SimpleType, mu: W) -> int:
    return weyl_order(t) // _parabolic_order(t, frozenset(i for i, x in enumerate(mu) if x == 0))


def orbit(t: SimpleType, mu: W) -> list[W]:
    """The W-orbit of a dominant weight."""
    simple = _simple_fund(t)
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for v in frontier:
            for i, x in enumerate(v):
                if x > 0:
                    a = simple[i]
                    w = tuple(v[j] - x * a[j] for j in range(len(v)))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    return sorted(seen)


def _root_coords(t: SimpleType, mu: Sequence[int]) -> tuple[Fraction, ...]:
    return _rs(t).fund_to_root(mu)


def _ip(t: SimpleType, x: Sequence, y: Sequence) -> Fraction:
    """(x, y) for fundamental-coordinate x, y, long roots of squared length 2."""
    xr = _root_coords(t, x)
    d = _rs(t).symmetrizer
    return sum((xr[i] * d[i] * y[i] for i in range(t.rank)), Fraction(0))


def _check_weight(t: SimpleType, lam: Sequence[int]) -> W:
    if len(lam) != t.rank:
        raise RepError(f"weight {tuple(lam)} has the wrong length for {t}")
    for x in lam:
        if Fraction(x).denominator != 1:
            raise RepError(f"weight {tuple(lam)} is not integral")
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise RepError(f"weight {lam} is not dominant")
    return lam


@lru_cache(maxsize=None)
def _int_form(t: SimpleType) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """L times the Gram matrix of fundamental weights, and L times the symmetrizer."""
    n = t.rank
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    f = [[_ip(t, a, b) for b in units] for a in units]
    sym = _rs(t).symmetrizer
    scale = 1
    for x in [v for row in f for v in row] + list(sym):
        scale = lcm(scale, Fraction(x).denominator)
    gram = tuple(tuple(int(v * scale) for v in row) for row in f)
    return gram, tuple(int(Fraction(x) * scale) for x in sym)


@lru_cache(maxsize=None)
def dominant_multiplicities(t: SimpleType, lam: W) -> dict[W, int]:
    """Freudenthal's recursion restricted to dominant weights."""
    lam = _check_weight(t, lam)
    n = t.rank
    pos = _pos_fund(t)
    rs = _rs(t)
    rho = (1,) * n
    # the Freudenthal ratio is scale-free, so work with an integral multiple of the form
    gram, d = _int_form(t)
    ip = lambda x, y: sum(x[i] * gram[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])
    lr = tuple(a + 1 for a in lam)
    top = ip(lr, lr)
    # dominant weights below lam, by depth
    depth: dict[W, int] = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a, ar in zip(pos, rs.positive_roots):
                nu = tuple(mu[j] - a[j] for j in range(n))
                if all(x >= 0 for x in nu) and nu not in depth:
                    depth[nu] = depth[mu] + sum(ar)
                    nxt.append(nu)
        frontier = nxt
    # depth found by BFS may not be minimal path length, so recompute exactly
    lam_root = _root_coords(t, lam)
    exact = {}
    for mu in depth:
        mr = _root_coords(t, mu)
        exact[mu] = sum(lam_root) - sum(mr)
    mult: dict[W, int] = {}
    for mu in sorted(exact, key=lambda m: (exact[m], m)):
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(mu[j] + rho[j] for j in range(n))
        den = top - ip(mr, mr)
        s = 0
        for a, ar in zip(pos, rs.positive_roots):
            k = 1
            # (nu, alpha) with nu in fundamental coordinates: sum nu_i d_i alpha_i
            while True:
                nu = tuple(mu[j] + k * a[j] for j in range(n))
                rep, _, _ = dominant_rep(t, nu)
                m = mult.get(rep, 0)
                if not m:
                    break
                s += m * sum(nu[i] * d[i] * ar[i] for i in range(n) if ar[i])
                k += 1
        val, r = divmod(2 * s, den)
        if r:
            raise RepError("Freudenthal produced a non-integral multiplicity")  # pragma: no cover
        if val:
            mult[mu] = val
    return mult


@lru_cache(maxsize=None)
def _full_weights(t: SimpleType, lam: W) -> tuple[tuple[W, int], ...]:
    out = []
    for mu, m in dominant_multiplicities(t, lam).items():
        for w in orbit(t, mu):
            out.append((w, m))
    out.sort()
    return tuple(out)


def freudenthal(t: SimpleType, lam: Sequence[int]) -> dict[W, int]:
    """All weights of V(lam) with multiplicities."""
    return dict(_full_weights(t, _check_weight(t, lam)))


@lru_cache(maxsize=None)
def dim_of(t: SimpleType, lam: W) -> int:
    from .rootsys import Weight, weyl_dim

    return weyl_dim(_rs(t), Weight.fund(lam))


def total_multiplicity(t: SimpleType, lam: Sequence[int]) -> int:
    """sum of multiplicities using orbit sizes (no orbit enumeration)."""
    return sum(m * orbit_size(t, mu) for mu, m in dominant_multiplicities(t, _check_weight(t, lam)).items())


def decompose_character(t: SimpleType, char: Mapping[W, int]) -> Counter[W]:
    """Strip-dominant decomposition of a W-invariant character given by its dominant part."""
    rest = Counter({mu: m for mu, m in char.items() if m and all(x >= 0 for x in mu)})
    out: Counter[W] = Counter()
    # removing V(top) only touches weights strictly below top, so a max-heap on height works
    heap = [(-_height(t, mu), tuple(-x for x in mu)) for mu in rest]
    heapq.heapify(heap)
    queued = set(rest)
    while heap:
        _, neg = heapq.heappop(heap)
        top = tuple(-x for x in neg)
        c = rest.pop(top, 0)
        if c == 0:
            continue
        if c < 0:
            raise RepError(f"negative multiplicity {c} at {top}")
        out[top] += c
        for mu, m in dominant_multiplicities(t, top).items():
            if mu == top:
                continue
            rest[mu] -= c * m
            if mu not in queued:
                queued.add(mu)
                heapq.heappush(heap, (-_height(t, mu), tuple(-x for x in mu)))
    return out


@lru_cache(maxsize=None)
def _height(t: SimpleType, mu: W) -> Fraction:
    return sum(_root_coords(t, mu))


@lru_cache(maxsize=None)
def tensor_simple(t: SimpleType, lam: W, mu: W) -> tuple[tuple[W, int], ...]:
    """Klimyk: V(lam) ⊗ V(mu) by shifting the weights of the smaller factor."""
    if dim_of(t, mu) > dim_of(t, lam):
        lam, mu = mu, lam
    n = t.rank
    acc: Counter[W] = Counter()
    for w, m in _full_weights(t, mu):
        v = tuple(lam[j] + w[j] + 1 for j in range(n))
        rep, sign, wall = dominant_rep(t, v)
        if wall:
            continue
        acc[tuple(x - 1 for x in rep)] += sign * m
    if any(c < 0 for c in acc.values()):  # pragma: no cover
        raise RepError("Klimyk produced a negative multiplicity")
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def _pair_character(t: SimpleType, lam: W, alt: bool) -> Counter[W]:
    """Dominant part of the Λ² or S² character, from pairs of weights."""
    wts = _full_weights(t, lam)
    n = t.rank
    char: Counter[W] = Counter()
    for a in range(len(wts)):
        wa, ma = wts[a]
        two = tuple(2 * x for x in wa)
        if all(x >= 0 for x in two):
            c = ma * (ma - 1) // 2 if alt else ma * (ma + 1) // 2
            if c:
                char[two] += c
        for b in range(a + 1, len(wts)):
            wb, mb = wts[b]
            s = tuple(wa[j] + wb[j] for j in range(n))
            if all(x >= 0 for x in s):
                char[s] += ma * mb
    return char


@lru_cache(maxsize=None)
def adams2_simple(t: SimpleType, lam: W) -> tuple[tuple[W, int], ...]:
    """Virtual decomposition of the doubled character: weights 2w of V(lam)."""
    n = t.rank
    acc: Counter[W] = Counter()
    for w, m in _full_weights(t, lam):
        rep, sign, wall = dominant_rep(t, tuple(2 * w[j] + 1 for j in range(n)))
        if not wall:
            acc[tuple(x - 1 for x in rep)] += sign * m
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def _half(t: SimpleType, lam: W, sign: int) -> tuple[tuple[W, int], ...]:
    # Λ²V = (V⊗V - ψ²V)/2 and S²V = (V⊗V + ψ²V)/2
    acc: Counter[W] = Counter(dict(tensor_simple(t, lam, lam)))
    for mu, c in adams2_simple(t, lam):
        acc[mu] += sign * c
    out = []
    for mu, c in sorted(acc.items()):
        if c % 2 or c < 0:  # pragma: no cover
            raise RepError(f"bad symmetric-power coefficient {c} at {mu}")
        if c:
            out.append((mu, c // 2))
    return tuple(out)


@lru_cache(maxsize=None)
def alt2_simple(t: SimpleType, lam: W) -> tuple[tuple[W, int], ...]:
    return _half(t, lam, -1)


@lru_cache(maxsize=None)
def sym2_simple(t: SimpleType, lam: W) -> tuple[tuple[W, int], ...]:
    return _half(t, lam, 1)


def pair_character(t: SimpleType, lam: W, alt: bool) -> Counter[W]:
    """Dominant part of the Λ² or S² character built directly from pairs of weights."""
    return _pair_character(t, lam, alt)


def dual_simple(t: SimpleType, lam: Sequence[int]) -> W:
    rep, _, _ = dominant_rep(t, tuple(-x for x in lam))
    return rep


@lru_cache(maxsize=None)
def opposition(t: SimpleType) -> tuple[int, ...]:
    """The permutation sigma with -w0(omega_i) = omega_sigma(i); it also permutes simple roots."""
    n = t.rank
    return tuple(dual_simple(t, tuple(int(i == j) for j in range(n))).index(1) for i in range(n))


def opposite(t: SimpleType, coords: Sequence) -> tuple:
    """-w0 applied to any vector given in fundamental-weight or simple-root coordinates."""
    sigma = opposition(t)
    out = [0] * t.rank
    for i, x in enumerate(coords):
        out[sigma[i]] = x
    return tuple(out)


def theta_fund(t: SimpleType) -> W:
    return _pos_fund(t)[-1]


# --- shape-level operations -----------------------------------------------------


def _combine(shape: tuple[SimpleType, ...], per_comp: list[Iterable[tuple[W, int]]]) -> RepSum:
    combos: list[tuple[tuple[W, ...], int]] = [((), 1)]
    for items in per_comp:
        items = list(items)
        combos = [(ws + (w,), m * c) for ws, m in combos for w, c in items]
    return RepSum(shape, [(Irrep(shape, ws), m) for ws, m in combos])


def tensor(a: Irrep, b: Irrep) -> RepSum:
    if a.shape != b.shape:
        raise RepError("tensor needs a common shape")
    return _combine(a.shape, [tensor_simple(t, x, y) for t, x, y in zip(a.shape, a.weights, b.weights)])


def tensor_sum(a: RepSum, b: RepSum) -> RepSum:
    out = RepSum(a.shape)
    for x, m in a.items():
        for y, c in b.items():
            for z, e in tensor(x, y).items():
                out = out + RepSum(a.shape, {z: m * c * e})
    return out


def _alt_sym(v: Irrep, alt: bool) -> RepSum:
    """Λ²(A⊗B) = Λ²A⊗S²B ⊕ S²A⊗Λ²B and S²(A⊗B) = S²A⊗S²B ⊕ Λ²A⊗Λ²B, recursively."""
    # (parity, factors): parity True means the partial product is a Λ² term
    state = [(alt_first, [f]) for alt_first, f in (
        (True, alt2_simple(v.shape[0], v.weights[0])),
        (False, sym2_simple(v.shape[0], v.weights[0])),
    )]
    for t, w in zip(v.shape[1:], v.weights[1:]):
        a, s = alt2_simple(t, w), sym2_simple(t, w)
        nxt = []
        for par, fs in state:
            nxt.append((par, fs + [s]))  # Λ²⊗S² stays Λ², S²⊗S² stays S²
            nxt.append((not par, fs + [a]))  # Λ²⊗Λ² is S², S²⊗Λ² is Λ²
        state = nxt
    out = RepSum(v.shape)
    for par, fs in state:
        if par == alt:
            out = out + _combine(v.shape, fs)
    return out


def alt2(v: Irrep) -> RepSum:
    return _alt_sym(v, True)


def sym2(v: Irrep) -> RepSum:
    return _alt_sym(v, False)


def dual(v: Irrep) -> Irrep:
    return Irrep(v.shape, tuple(dual_simple(t, w) for t, w in zip(v.shape, v.weights)))


def dual_sum(r: RepSum) -> RepSum:
    return RepSum(r.shape, {dual(v): m for v, m in r.items()})


def trivial(shape: Sequence[SimpleType]) -> Irrep:
    shape = tuple(shape)
    return Irrep(shape, tuple((0,) * t.rank for t in shape))


def adjoint(shape: Sequence[SimpleType]) -> RepSum:
    shape = tuple(shape)
    out = RepSum(shape)
    for c, t in enumerate(shape):
        ws = tuple(theta_fund(t) if i == c else (0,) * s.rank for i, s in enumerate(shape))
        out = out + RepSum.of(Irrep(shape, ws))
    return out


def shape_character(v: Irrep) -> Counter[tuple[W, ...]]:
    """Full weight multiset of an irreducible of a semisimple shape."""
    tables = [freudenthal(t, w) for t, w in zip(v.shape, v.weights)]
    char: Counter[tuple[W, ...]] = Counter({(): 1})
    for tab in tables:
        nxt: Counter[tuple[W, ...]] = Counter()
        for ws, m in char.items():
            for w, c in tab.items():
                nxt[ws + (w,)] += m * c
        char = nxt
    return char


def decompose_shape_character(shape: Sequence[SimpleType], char: Mapping[tuple[W, ...], int]) -> RepSum:
    """Strip-dominant over a semisimple shape; ``char`` needs only its dominant part."""
    shape = tuple(shape)
    rest = Counter({k: v for k, v in char.items() if v and all(all(x >= 0 for x in w) for w in k)})
    out: Counter[Irrep] = Counter()

    def key(ws: tuple[W, ...]):
        return sum(sum(_root_coords(t, w)) for t, w in zip(shape, ws))

    while rest:
        top = max(rest, key=lambda m: (key(m), m))
        c = rest[top]
        if c < 0:
            raise RepError(f"negative multiplicity {c} at {top}")
        out[Irrep(shape, top)] += c
        dom = [dominant_multiplicities(t, w) for t, w in zip(shape, top)]
        combos: list[tuple[tuple[W, ...], int]] = [((), 1)]
        for tab in dom:
            combos = [(ws + (w,), m * x) for ws, m in combos for w, x in tab.items()]
        for ws, m in combos:
            rest[ws] -= c * m
            if rest[ws] == 0:
                del rest[ws]
    return RepSum(shape, out)


# --- admission -----------------------------------------------------------------


@dataclass(frozen=True)
class Admission:
    accepted: bool
    nodes: tuple[int, ...] = ()  # 0-based cominuscule node per component
    degrees: tuple[int, ...] = ()
    reason: str = ""


def cominuscule_check(v: Irrep) -> Admission:
    from .diagram import cominuscule_nodes

    nodes, degs = [], []
    for c, (t, w) in enumerate(zip(v.shape, v.weights)):
        supp = [i for i, x in enumerate(w) if x]
        if len(supp) != 1:
            why = "trivial component" if not supp else "weight supported on more than one node"
            return Admission(False, reason=f"component {c + 1} ({t}): {why}")
        i = supp[0]
        if i not in cominuscule_nodes(t):
            return Admission(False, reason=f"component {c + 1} ({t}): node {i + 1} is not cominuscule")
        nodes.append(i)
        degs.append(w[i])
    return Admission(True, tuple(nodes), tuple(degs))
