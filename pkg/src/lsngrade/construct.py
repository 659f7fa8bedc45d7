"""Forward construction: build the graded pieces V_1, V_2, ... from a cominuscule V_1.

At step 1 the product is Λ²V_1; at step j > 1 it is V_1 ⊗ V_j.  Each product splits
into T_j and its complement.  The complement decides the next piece or the halt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diagram import (
    GCM,
    DiagramClass,
    affine_labels,
    classify,
    excise,
    extend,
    isomorphisms,
    untwisted_matrix,
)
from .reps import (
    Irrep,
    RepSum,
    adjoint,
    alt2,
    cominuscule_check,
    tensor,
    trivial,
)
from .rootsys import SimpleType, build_root_system, leq

MAX_STEPS = 6

ZERO, IRREDUCIBLE, ADJ_PLUS_TRIVIAL, OTHER = "zero", "irreducible", "adjoint+trivial", "other"


class ConstructError(ValueError):
    pass


@dataclass
class StepTrace:
    j: int
    product: RepSum
    T: RepSum
    Tc: RepSum
    verdict: str

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "product_dim": self.product.dim,
            "T": [_irrep_doc(v, m) for v, m in self.T.items()],
            "T_complement": [_irrep_doc(v, m) for v, m in self.Tc.items()],
            "verdict": self.verdict,
        }


def _irrep_doc(v: Irrep, m: int) -> dict:
    return {"weights": [list(w) for w in v.weights], "mult": m, "dim": v.dim}


@dataclass
class Outcome:
    mode: str
    shape: tuple[SimpleType, ...]
    v1: Irrep
    success: bool
    j: int
    seq: dict[int, RepSum] = field(default_factory=dict)
    traces: list[StepTrace] = field(default_factory=list)
    recognized: DiagramClass | None = None
    k: int | None = None
    reason: str = ""
    special: bool = False

    @property
    def type_string(self) -> str:
        return self.recognized.type_string if self.recognized else ""

    @property
    def k_label(self) -> int | None:
        if self.recognized is None or self.k is None:
            return None
        return self.recognized.node_label(self.k)


# --- T membership ---------------------------------------------------------------


def _root_coords(shape: Sequence[SimpleType], w) -> list[tuple[Fraction, ...]]:
    return [build_root_system(t).fund_to_root(c) for t, c in zip(shape, w)]


def t_membership(shape: Sequence[SimpleType], lam1, lam_i, mu, strict: bool) -> bool:
    """Is the constituent with highest weight mu in T?

    With beta = lam1 + lam_i - mu: strict means beta is a positive root of g^k; the
    relaxed test (steps after the first) accepts beta = 0 or beta below the highest
    root of a single component.
    """
    diff = [tuple(a + b - c for a, b, c in zip(x, y, z)) for x, y, z in zip(lam1, lam_i, mu)]
    beta = _root_coords(shape, diff)
    for b in beta:
        if any(x.denominator != 1 or x < 0 for x in b):
            raise ConstructError(f"lam1 + lam_i - mu = {beta} is not in Q+")
    beta = [tuple(int(x) for x in b) for b in beta]
    supp = [c for c, b in enumerate(beta) if any(b)]
    if not supp:
        return not strict
    if len(supp) > 1:
        return False
    c = supp[0]
    rs = build_root_system(shape[c])
    if strict:
        return rs.is_root(beta[c])
    return leq(beta[c], rs.highest_root)


def split_T(product: RepSum, lam1, lam_i, j: int) -> tuple[RepSum, RepSum]:
    t, tc = {}, {}
    for v, m in product.items():
        side = t if t_membership(product.shape, lam1, lam_i, v.weights, strict=(j == 1)) else tc
        side[v] = m
    return RepSum(product.shape, t), RepSum(product.shape, tc)


def classify_complement(tc: RepSum, shape: Sequence[SimpleType]) -> str:
    if len(tc) == 0:
        return ZERO
    if len(tc) == 1:
        return IRREDUCIBLE
    if tc == adjoint(shape) + RepSum.of(trivial(shape)):
        return ADJ_PLUS_TRIVIAL
    return OTHER


# --- the algorithms -------------------------------------------------------------


def run(mode: str, v1: Irrep, recognize_result: bool = True) -> Outcome:
    """Affine or finite algorithm from V_1."""
    if mode not in ("affine", "finite"):
        raise ConstructError(f"unknown mode {mode!r}")
    shape = v1.shape
    out = Outcome(mode=mode, shape=shape, v1=v1, success=False, j=1)
    out.seq[1] = RepSum.of(v1)
    if mode == "affine" and len(shape) == 1 and RepSum.of(v1) == adjoint(shape):
        # a special root: g_1 is already the adjoint module and the period is 1
        out.success, out.special = True, True
        if recognize_result:
            _recognize_special(out)
        return out
    adm = cominuscule_check(v1)
    if not adm.accepted:
        raise ConstructError(f"V_1 is not generalized cominuscule: {adm.reason}")
    lam1 = v1.weights
    vj = v1
    j = 1
    while True:
        if j > MAX_STEPS:
            raise ConstructError(f"no halt by step {MAX_STEPS}")  # pragma: no cover
        product = alt2(v1) if j == 1 else tensor(v1, vj)
        T, Tc = split_T(product, lam1, vj.weights, j)
        verdict = classify_complement(Tc, shape)
        out.traces.append(StepTrace(j, product, T, Tc, verdict))
        out.j = j
        if mode == "affine":
            # at j = 1 the complement may be the bare adjoint: Λ²V_1 need not hold a trivial
            if verdict == ADJ_PLUS_TRIVIAL or Tc == adjoint(shape):
                out.seq[j + 1] = adjoint(shape)
                out.j = j + 1
                out.success = True
                break
            if verdict == IRREDUCIBLE:
                vj = Tc.single()
                out.seq[j + 1] = Tc
                j += 1
                continue
            out.reason = f"T_{j} complement is {verdict}"
            break
        if verdict == ZERO:
            out.success = True
            break
        if Tc == adjoint(shape):
            # no finite grading has an adjoint piece past degree 1; iterating would cycle
            out.reason = f"T_{j} complement is the adjoint module"
            break
        if verdict == IRREDUCIBLE:
            vj = Tc.single()
            out.seq[j + 1] = Tc
            j += 1
            continue
        out.reason = f"T_{j} complement is {verdict}"
        break
    if out.success and recognize_result:
        recognize(out)
    return out


def extended_gcm(v1: Irrep) -> GCM:
    adm = cominuscule_check(v1)
    if not adm.accepted:
        raise ConstructError(adm.reason)
    attach = [(c, node, deg) for c, (node, deg) in enumerate(zip(adm.nodes, adm.degrees))]
    return extend(v1.shape, attach)


def recognize(out: Outcome) -> Outcome:
    g = extended_gcm(out.v1)
    knew = g.n - 1
    cls = classify(g, prefer=knew)
    if cls.kind != out.mode:
        raise ConstructError(f"{out.mode} run recognized a {cls.kind} diagram ({cls.type_string})")
    back = excise(g, knew)
    if back.shape != out.shape or back.weights != out.v1.weights:
        raise ConstructError("excising the appended node does not give back V_1")
    out.recognized = cls
    out.k = cls.node_map[knew]
    return out


def _recognize_special(out: Outcome) -> None:
    cls = classify(GCM(untwisted_matrix(out.shape[0])), prefer=0)
    out.recognized = cls
    out.k = cls.node_map[0]
    out.j = 1
    out.seq[1] = adjoint(out.shape)


# --- round trip -----------------------------------------------------------------


@dataclass
class RoundTrip:
    source: str
    k: int
    ok: bool
    messages: list[str] = field(default_factory=list)
    outcome: Outcome | None = None
    profile: object = None


def roundtrip(source: DiagramClass, k: int) -> RoundTrip:
    """Grade by alpha_k, feed g_1 forward, and compare everything that comes back."""
    from .grading import grade

    prof = grade(source, k)
    rt = RoundTrip(source.type_string, k, True, profile=prof)
    v1 = prof.pieces[1].single()
    if v1 is None:
        rt.ok = False
        rt.messages.append("g_1 is reducible")
        return rt
    out = run(source.kind, v1)
    rt.outcome = out
    if not out.success:
        rt.ok = False
        rt.messages.append(f"forward run inadmissible at j={out.j}: {out.reason}")
        return rt
    if out.type_string != source.type_string:
        rt.ok = False
        rt.messages.append(f"recognized {out.type_string}, expected {source.type_string}")
    if out.j != prof.top:
        rt.ok = False
        rt.messages.append(f"run stopped at j={out.j}, grading has {prof.top}")
    for i in range(1, min(out.j, prof.top) + 1):
        if out.seq.get(i) != prof.pieces[i]:
            rt.ok = False
            rt.messages.append(f"V_{i} = {out.seq.get(i)} but g_{i} = {prof.pieces[i]}")
    if not out.special:
        g = extended_gcm(v1)
        maps = isomorphisms(g.matrix, source.canonical.matrix)
        if not any(m[g.n - 1] == k for m in maps):
            rt.ok = False
            rt.messages.append("no isomorphism sends the appended node to alpha_k")
    return rt


def long_nodes(source: DiagramClass) -> list[int]:
    """Long simple roots that give a nonempty g^k (rank-one finite algebras have none)."""
    g = source.canonical
    if g.n == 1:
        return []
    return [i for i in range(g.n) if g.is_long(i)]


def is_special(source: DiagramClass, k: int) -> bool:
    """Special roots: label 1 in an untwisted affine diagram."""
    if source.kind != "affine" or source.affine.r != 1:
        return False
    return affine_labels(source.affine)[0][k] == 1


def roundtrip_scalars(rt: RoundTrip):
    """Scalar identities for a completed round trip: forward T pieces, reverse g_t and gamma_2."""
    from .grading import gamma_decomposition
    from .scalars import scalar_report

    prof, out = rt.profile, rt.outcome
    if out is None or not out.success or out.special:
        return None
    last = prof.top if prof.mode == "finite" else prof.top - 1
    seq = {t: prof.highest_weight(t) for t in range(1, last + 1)}
    seq = {t: v for t, v in seq.items() if v is not None}
    tpieces = {tr.j: tr.T for tr in out.traces}
    betas = None
    if prof.top >= 2 and 2 in seq:
        parts = gamma_decomposition(prof, 2).parts
        betas = [[tuple(p[n] for n in comp.nodes) for comp in prof.sub.parts] for p in parts]
    src = prof.source
    k = prof.k
    expected_t_k = expected_a_k = None
    if src.kind == "finite":
        e = tuple(int(i == k) for i in range(src.finite.rank))
        expected_t_k = build_root_system(src.finite).fund_to_root(e)[k]
    else:
        expected_a_k = affine_labels(src.affine)[0][k]
    return scalar_report(prof.mode, seq, tpieces, betas, prof.top, expected_t_k, expected_a_k)
