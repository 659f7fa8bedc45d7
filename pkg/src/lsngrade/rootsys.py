"""Finite-type root systems in exact arithmetic.

Matrix convention used throughout the package: ``A[i][j] = <alpha_j, alpha_i^vee>``,
so row ``i`` of ``A`` applied to a root-coordinate vector gives its pairing with the
coroot of node ``i``.  Simple roots are numbered as in Bourbaki, 0-based in code.
Long roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]

_LEGAL_MIN = {"A": 1, "B": 2, "C": 2, "D": 3}


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        f, n = self.family, self.rank
        if not isinstance(n, int) or isinstance(n, bool):
            raise RootSystemError(f"rank must be an int, got {n!r}")
        ok = (
            (f in _LEGAL_MIN and n >= _LEGAL_MIN[f])
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "G" and n == 2)
        )
        if not ok:
            raise RootSystemError(f"illegal simple type {f}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip()
        try:
            return cls(text[0].upper(), int(text[1:]))
        except (IndexError, ValueError) as exc:
            raise RootSystemError(f"cannot parse simple type {text!r}") from exc


def classical_positive_count(t: SimpleType) -> int:
    n = t.rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, 0),
        "F": 24,
        "G": 6,
    }[t.family]


def dynkin_data(t: SimpleType) -> tuple[tuple[Fraction, ...], tuple[tuple[int, int], ...]]:
    """Squared lengths of the simple roots and the (0-based) edges of the diagram."""
    f, n = t.family, t.rank
    one, two = Fraction(1), Fraction(2)
    chain = tuple((i, i + 1) for i in range(n - 1))
    if f == "A":
        return (two,) * n, chain
    if f == "B":
        return (two,) * (n - 1) + (one,), chain
    if f == "C":
        return (one,) * (n - 1) + (two,), chain
    if f == "D":
        return (two,) * n, tuple((i, i + 1) for i in range(n - 2)) + ((n - 3, n - 1),)
    if f == "E":
        # 1-3-4-5-6-7-8 with 2 hanging off 4 (Bourbaki)
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return (two,) * n, tuple(edges)
    if f == "F":
        return (two, two, one, one), chain
    if f == "G":
        return (Fraction(2, 3), two), chain
    raise RootSystemError(f"unknown family {f}")  # pragma: no cover


def cartan_from_lengths(lengths: Sequence[Fraction], edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    n = len(lengths)
    gram = gram_from_lengths(lengths, edges)
    return tuple(
        tuple(int(2 * gram[i][j] / lengths[i]) for j in range(n)) for i in range(n)
    )


def gram_from_lengths(lengths: Sequence[Fraction], edges: Iterable[tuple[int, int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(lengths)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(lengths[i])
    for i, j in edges:
        # adjacent simple roots: (a_i, a_j) = -max(|a_i|^2, |a_j|^2)/2
        v = -max(lengths[i], lengths[j]) / 2
        g[i][j] = g[j][i] = v
    return tuple(tuple(r) for r in g)


def coroot_pairing(cartan: Sequence[Sequence[int]], beta: Sequence[int], i: int) -> int:
    """<beta, alpha_i^vee> for beta in simple-root coordinates."""
    row = cartan[i]
    return sum(row[j] * beta[j] for j in range(len(beta)) if beta[j])


def root_closure(
    cartan: Sequence[Sequence[int]],
    bound: Sequence[int | None] | None = None,
    max_height: int | None = None,
) -> list[Root]:
    """Positive roots from the string condition, sorted by height then coordinates.

    ``bound`` caps each coordinate (``None`` entries are free) and ``max_height`` caps
    the height; without either cap the loop only terminates for finite type.
    Strings through any root are unbroken in a Kac-Moody algebra, so the same loop
    serves affine matrices as long as a bound is given (imaginary roots included).
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found: set[Root] = set(simple)
    level = sorted(simple)
    out = list(level)
    h = 1
    while level and (max_height is None or h < max_height):
        h += 1
        nxt: set[Root] = set()
        for beta in level:
            for j in range(n):
                if bound is not None and bound[j] is not None and beta[j] + 1 > bound[j]:
                    continue
                p = 0
                down = list(beta)
                while True:
                    down[j] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - coroot_pairing(cartan, beta, j)
                if q > 0:
                    up = list(beta)
                    up[j] += 1
                    up_t = tuple(up)
                    if up_t not in found:
                        nxt.add(up_t)
        level = sorted(nxt)
        found.update(level)
        out.extend(level)
    return out


def height(beta: Sequence[int | Fraction]) -> int | Fraction:
    return sum(beta)


def leq(a: Sequence, b: Sequence) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Weight:
    """A weight with an explicit basis tag: ``"fund"`` or ``"root"``."""

    coords: tuple[Fraction, ...]
    basis: str = "fund"

    def __post_init__(self) -> None:
        if self.basis not in ("fund", "root"):
            raise RootSystemError(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def fund(cls, coords: Iterable) -> "Weight":
        return cls(tuple(coords), "fund")

    @classmethod
    def root(cls, coords: Iterable) -> "Weight":
        return cls(tuple(coords), "root")

    def to_fund(self, rs: "RootSystem") -> "Weight":
        if self.basis == "fund":
            return self
        return Weight(rs.root_to_fund(self.coords), "fund")

    def to_root(self, rs: "RootSystem") -> "Weight":
        if self.basis == "root":
            return self
        return Weight(rs.fund_to_root(self.coords), "root")

    def is_integral(self) -> bool:
        return self.basis == "fund" and all(c.denominator == 1 for c in self.coords)

    def is_dominant(self) -> bool:
        return self.basis == "fund" and all(c >= 0 for c in self.coords)


@dataclass(frozen=True)
class RootSystem:
    """A finite-type (possibly decomposable) root system.

    ``components`` lists the node indices of each simple block; ``types`` carries the
    Bourbaki type of each block when it is known.
    """

    cartan: tuple[tuple[int, ...], ...]
    lengths: tuple[Fraction, ...]
    positive_roots: tuple[Root, ...]
    components: tuple[tuple[int, ...], ...]
    types: tuple[SimpleType | None, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        return tuple(l / 2 for l in self.lengths)

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        d = self.symmetrizer
        return tuple(
            tuple(d[i] * self.cartan[i][j] for j in range(self.rank)) for i in range(self.rank)
        )

    @property
    def rho(self) -> Weight:
        return Weight.fund((1,) * self.rank)

    @property
    def highest_root(self) -> Root:
        if len(self.components) != 1:
            raise RootSystemError("highest root needs a simple root system")
        return self.positive_roots[-1]

    def highest_root_of(self, comp: int) -> Root:
        nodes = set(self.components[comp])
        best = None
        for r in self.positive_roots:
            if all(r[i] == 0 for i in range(self.rank) if i not in nodes):
                best = r
        assert best is not None
        return best

    def component_of(self, node: int) -> int:
        for c, nodes in enumerate(self.components):
            if node in nodes:
                return c
        raise IndexError(node)

    def root_set(self) -> frozenset[Root]:
        return _root_set(self)

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self.root_set()

    def root_to_fund(self, c: Sequence) -> tuple[Fraction, ...]:
        n = self.rank
        return tuple(
            sum((self.cartan[j][i] * Fraction(c[i]) for i in range(n)), Fraction(0)) for j in range(n)
        )

    def fund_to_root(self, f: Sequence) -> tuple[Fraction, ...]:
        inv = _inverse_cartan(self.cartan)
        n = self.rank
        return tuple(sum((inv[i][j] * Fraction(f[j]) for j in range(n)), Fraction(0)) for i in range(n))


@lru_cache(maxsize=None)
def _root_set(rs: RootSystem) -> frozenset[Root]:
    return frozenset(rs.positive_roots)


@lru_cache(maxsize=None)
def _inverse_cartan(cartan: tuple[tuple[int, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    import sympy

    inv = sympy.Matrix(cartan).inv()
    n = len(cartan)
    return tuple(
        tuple(Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(n)) for i in range(n)
    )


def _blocks(cartan: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
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
                if w not in seen and cartan[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def root_system_from_cartan(
    cartan: Sequence[Sequence[int]],
    lengths: Sequence[Fraction],
    types: Sequence[SimpleType | None] | None = None,
) -> RootSystem:
    cart = tuple(tuple(int(x) for x in row) for row in cartan)
    comps = _blocks(cart)
    roots = tuple(root_closure(cart))
    return RootSystem(
        cartan=cart,
        lengths=tuple(Fraction(l) for l in lengths),
        positive_roots=roots,
        components=comps,
        types=tuple(types) if types is not None else (None,) * len(comps),
    )


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    lengths, edges = dynkin_data(t)
    rs = root_system_from_cartan(cartan_from_lengths(lengths, edges), lengths, (t,))
    if len(rs.positive_roots) != classical_positive_count(t):
        raise RootSystemError(f"closure produced {len(rs.positive_roots)} roots for {t}")
    return rs


@lru_cache(maxsize=None)
def shape_root_system(shape: tuple[SimpleType, ...]) -> RootSystem:
    """Block-diagonal root system of a semisimple shape, components in the given order."""
    if not shape:
        raise RootSystemError("empty shape")
    sizes = [t.rank for t in shape]
    n = sum(sizes)
    cart = [[0] * n for _ in range(n)]
    lengths: list[Fraction] = []
    roots: list[Root] = []
    comps = []
    off = 0
    for t in shape:
        rs = build_root_system(t)
        for i in range(t.rank):
            for j in range(t.rank):
                cart[off + i][off + j] = rs.cartan[i][j]
        lengths.extend(rs.lengths)
        for r in rs.positive_roots:
            roots.append((0,) * off + r + (0,) * (n - off - t.rank))
        comps.append(tuple(range(off, off + t.rank)))
        off += t.rank
    roots.sort(key=lambda r: (sum(r), r))
    return RootSystem(
        cartan=tuple(tuple(r) for r in cart),
        lengths=tuple(lengths),
        positive_roots=tuple(roots),
        components=tuple(comps),
        types=tuple(shape),
    )


def _check_index(rs: RootSystem, i: int) -> None:
    if not 0 <= i < rs.rank:
        raise IndexError(f"node {i} out of range for rank {rs.rank}")


def pairing(rs: RootSystem, lam: Weight, i: int) -> Fraction:
    """<lam, alpha_i^vee>."""
    _check_index(rs, i)
    if lam.basis == "fund":
        return lam.coords[i]
    return sum((rs.cartan[i][j] * lam.coords[j] for j in range(rs.rank)), Fraction(0))


def component_scales(rs: RootSystem, scale) -> tuple[Fraction, ...]:
    """Expand a scalar or per-component scale into a per-node vector."""
    if scale is None:
        return (Fraction(1),) * rs.rank
    if isinstance(scale, (int, Fraction)):
        return (Fraction(scale),) * rs.rank
    scale = tuple(Fraction(s) for s in scale)
    if len(scale) != len(rs.components):
        raise RootSystemError("scale must have one entry per component")
    out = [Fraction(0)] * rs.rank
    for c, nodes in enumerate(rs.components):
        for v in nodes:
            out[v] = scale[c]
    return tuple(out)


def form(rs: RootSystem, x: Weight, y: Weight, scale=None) -> Fraction:
    """Invariant form (x, y); ``scale`` multiplies each component's form."""
    s = component_scales(rs, scale)
    xr = x.to_root(rs).coords
    yf = y.to_fund(rs).coords
    d = rs.symmetrizer
    # (alpha_i, Lambda_j) = delta_ij d_i
    return sum((xr[i] * d[i] * yf[i] * s[i] for i in range(rs.rank)), Fraction(0))


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    lam = lam.to_fund(rs)
    if not lam.is_integral():
        raise RootSystemError("weyl_dim needs an integral weight")
    if not lam.is_dominant():
        raise RootSystemError("weyl_dim needs a dominant weight")
    d = rs.symmetrizer
    num = Fraction(1)
    for a in rs.positive_roots:
        top = sum((a[i] * d[i] * (lam.coords[i] + 1) for i in range(rs.rank) if a[i]), Fraction(0))
        bot = sum((a[i] * d[i] for i in range(rs.rank) if a[i]), Fraction(0))
        num *= top / bot
    assert num.denominator == 1
    return int(num)


def subroot_chain(rs: RootSystem, alpha: Sequence[int], alpha_r: Sequence[int]) -> list[int]:
    """Simple-root indices i_1..i_m with alpha_r + a_{i_1} + .. + a_{i_t} a root for each t."""
    alpha, alpha_r = tuple(alpha), tuple(alpha_r)
    roots = rs.root_set()
    if alpha not in roots or alpha_r not in roots or not leq(alpha_r, alpha):
        raise RootSystemError(f"{alpha_r} is not a subroot of {alpha}")
    dead: set[Root] = set()

    def walk(cur: Root) -> list[int] | None:
        if cur == alpha:
            return []
        if cur in dead:
            return None
        for i in range(rs.rank):
            if cur[i] < alpha[i]:
                nxt = cur[:i] + (cur[i] + 1,) + cur[i + 1:]
                if nxt in roots:
                    rest = walk(nxt)
                    if rest is not None:
                        return [i] + rest
        dead.add(cur)
        return None

    chain = walk(alpha_r)
    if chain is None:
        raise RootSystemError(f"no chain from {alpha_r} to {alpha}")
    return chain


def maximal_subroots(rs: RootSystem, budget: Sequence[int]) -> list[Root]:
    """Roots below ``budget`` that are not strictly below another such root."""
    cands = [r for r in rs.positive_roots if leq(r, budget)]
    return [r for r in cands if not any(s != r and leq(r, s) for s in cands)]


def maximal_subroot_decomposition(rs: RootSystem, beta: Sequence[int]) -> list[Root]:
    beta = tuple(int(b) for b in beta)
    if any(b < 0 for b in beta) or not any(beta):
        raise RootSystemError(f"{beta} is not a nonzero element of Q+")
    out: list[Root] = []
    rest = list(beta)
    while any(rest):
        cands = maximal_subroots(rs, rest)
        if not cands:
            raise RootSystemError(f"{beta} is not a sum of roots")
        pick = min(cands, key=lambda r: (-sum(r), r))
        out.append(pick)
        rest = [a - b for a, b in zip(rest, pick)]
    return out
