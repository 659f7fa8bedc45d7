"""Enumeration of candidate inputs and reconciliation against the golden table."""

from __future__ import annotations

import ast
import itertools
import operator
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .construct import ConstructError, Outcome, roundtrip, run
from .diagram import (
    AffineType,
    DiagramClass,
    affine_class,
    canonical_finite,
    cominuscule_nodes,
    finite_class,
    isomorphisms,
)
from .reps import Irrep, dual_simple
from .rootsys import SimpleType

MODES = ("finite", "affine")
MAX_COMPONENTS = 4


class GoldenError(ValueError):
    pass


# --- golden rows --------------------------------------------------------------


@dataclass(frozen=True)
class Expected:
    success: bool
    j: int
    type_string: str = ""
    k: int | None = None  # subscript as printed: 1-based finite, alpha_0-based affine

    def __str__(self) -> str:
        if self.success:
            return f"{self.type_string} k={self.k} j={self.j}"
        return f"inadmissible j={self.j}"


@dataclass(frozen=True)
class GoldenRow:
    shape: tuple[SimpleType, ...]
    weights: tuple[tuple[int, ...], ...]
    mode: str
    expected: Expected
    citation: str
    flags: tuple[str, ...] = ()
    params: tuple[tuple[str, int], ...] = ()

    @property
    def irrep(self) -> Irrep:
        return Irrep(self.shape, self.weights)

    @property
    def key(self) -> tuple:
        return (self.mode, canonical_input(self.shape, self.weights))

    def label(self) -> str:
        p = ",".join(f"{a}={b}" for a, b in self.params)
        return f"{self.citation}{' [' + p + ']' if p else ''}: {self.mode} {self.irrep}"


_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def _arith(expr: str, env: dict[str, int]) -> int:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        raise GoldenError(f"bad parameter expression {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


def _subst(text: str, env: dict[str, int]) -> str:
    return re.sub(r"\{([^}]*)\}", lambda m: str(_arith(m.group(1), env)), text)


def _parse_params(text: str) -> list[dict[str, int]]:
    """``n=1..6;m=2..4`` gives every combination; ``-`` gives one empty binding."""
    if text.strip() in ("", "-"):
        return [{}]
    names, ranges = [], []
    for part in text.split(";"):
        name, _, rng = part.partition("=")
        lo, _, hi = rng.partition("..")
        names.append(name.strip())
        ranges.append(range(int(lo), int(hi or lo) + 1))
    return [dict(zip(names, combo)) for combo in itertools.product(*ranges)]


def _parse_weight(token: str, t: SimpleType) -> tuple[int, ...]:
    token = token.strip()
    if token == "std":
        return (1,) + (0,) * (t.rank - 1)
    m = re.fullmatch(r"w(\d+):(\d+)", token)
    if m:
        node, deg = int(m.group(1)), int(m.group(2))
        if not 1 <= node <= t.rank:
            raise GoldenError(f"node {node} out of range for {t}")
        return tuple(deg if i == node - 1 else 0 for i in range(t.rank))
    w = tuple(int(x) for x in token.split(","))
    if len(w) != t.rank:
        raise GoldenError(f"weight {token} does not fit {t}")
    return w


def parse_expected(text: str) -> Expected:
    text = text.strip()
    m = re.fullmatch(r"inadmissible\s+j=(\d+)", text)
    if m:
        return Expected(False, int(m.group(1)))
    m = re.fullmatch(r"(\S+)\s+k=(\d+)\s+j=(\d+)", text)
    if not m:
        raise GoldenError(f"cannot parse expected outcome {text!r}")
    type_string = m.group(1)
    parse_class(type_string)
    return Expected(True, int(m.group(3)), type_string, int(m.group(2)))


def parse_class(type_string: str) -> DiagramClass:
    if "(" in type_string:
        return affine_class(AffineType.parse(type_string))
    t = SimpleType.parse(type_string)
    if not canonical_finite(t):
        raise GoldenError(f"{type_string} is not a canonical type name")
    return finite_class(t)


def parse_golden(lines: Iterable[str]) -> list[GoldenRow]:
    rows: list[GoldenRow] = []
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if not header_seen:
            header_seen = True
            if cols[0] == "shape":
                continue
        if len(cols) != 7:
            raise GoldenError(f"line {lineno}: expected 7 tab-separated columns, got {len(cols)}")
        shape_s, weight_s, mode, expected_s, citation, flags_s, params_s = (c.strip() for c in cols)
        if mode not in MODES:
            raise GoldenError(f"line {lineno}: mode must be finite or affine")
        if not citation:
            raise GoldenError(f"line {lineno}: empty citation")
        flags = tuple(f for f in flags_s.split(",") if f and f != "-")
        for env in _parse_params(params_s):
            try:
                shape = tuple(SimpleType.parse(s) for s in _subst(shape_s, env).split("+"))
                toks = _subst(weight_s, env).split("|")
                if len(toks) != len(shape):
                    raise GoldenError("one weight per component is required")
                weights = tuple(_parse_weight(tok, t) for tok, t in zip(toks, shape))
                expected = parse_expected(_subst(expected_s, env))
            except ValueError as exc:
                raise GoldenError(f"line {lineno} {env}: {exc}") from exc
            rows.append(GoldenRow(shape, weights, mode, expected, citation, flags, tuple(sorted(env.items()))))
    return rows


def load_golden(path: str | Path | None = None) -> list[GoldenRow]:
    if path is None:
        text = resources.files("lsngrade").joinpath("data/golden.tsv").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_golden(text.splitlines())


# --- canonical inputs and enumeration -------------------------------------------


def canonical_input(shape: Sequence[SimpleType], weights: Sequence[Sequence[int]]) -> tuple:
    """Sorted components, each replaced by the smaller of the weight and its dual."""
    comps = []
    for t, w in zip(shape, weights):
        w = tuple(w)
        comps.append((t.family, t.rank, min(w, dual_simple(t, w))))
    return tuple(sorted(comps))


def _component_options(max_rank: int, max_degree: int) -> list[tuple[SimpleType, tuple[int, ...]]]:
    out = []
    for n in range(1, max_rank + 1):
        for f in "ABCDE":
            try:
                t = SimpleType(f, n)
            except ValueError:
                continue
            if not canonical_finite(t):
                continue
            seen = set()
            for node in cominuscule_nodes(t):
                for d in range(1, max_degree + 1):
                    w = tuple(d if i == node else 0 for i in range(n))
                    w = min(w, dual_simple(t, w))
                    if w not in seen:
                        seen.add(w)
                        out.append((t, w))
    return out


def enumerate_inputs(max_total_rank: int, max_degree: int,
                     max_components: int = MAX_COMPONENTS) -> Iterator[tuple[tuple[SimpleType, ...], tuple, str]]:
    """Yield (shape, weights, mode), one per canonical input and mode."""
    if max_total_rank < 1 or max_degree < 1:
        raise ValueError("bounds must be at least 1")
    opts = _component_options(max_total_rank, max_degree)
    order = sorted(range(len(opts)), key=lambda i: (opts[i][0].family, opts[i][0].rank, opts[i][1]))
    opts = [opts[i] for i in order]
    for c in range(1, max_components + 1):
        for combo in itertools.combinations_with_replacement(range(len(opts)), c):
            if sum(opts[i][0].rank for i in combo) > max_total_rank:
                continue
            shape = tuple(opts[i][0] for i in combo)
            weights = tuple(opts[i][1] for i in combo)
            for mode in MODES:
                yield shape, weights, mode


# --- the survey -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _k_orbit(type_string: str, k: int) -> frozenset[int]:
    m = parse_class(type_string).canonical.matrix
    return frozenset(p[k] for p in isomorphisms(m, m))


def _canonical_k(type_string: str, label: int) -> int:
    cls = parse_class(type_string)
    return label - 1 if cls.kind == "finite" else label


def compare(row: GoldenRow, out: Outcome) -> list[str]:
    """Differences between a run and its golden expectation, empty when they agree."""
    exp = row.expected
    diffs = []
    if exp.success != out.success:
        got = str(out_expected(out))
        return [f"expected {exp}, got {got}"]
    if out.j != exp.j:
        diffs.append(f"j: expected {exp.j}, got {out.j}")
    if exp.success:
        if out.type_string != exp.type_string:
            diffs.append(f"type: expected {exp.type_string}, got {out.type_string}")
        elif out.k not in _k_orbit(exp.type_string, _canonical_k(exp.type_string, exp.k)):
            diffs.append(f"k: expected {exp.k} up to symmetry, got {out.k_label}")
    return diffs


def out_expected(out: Outcome) -> Expected:
    if out.success:
        return Expected(True, out.j, out.type_string, out.k_label)
    return Expected(False, out.j)


@dataclass
class CaseResult:
    label: str
    mode: str
    irrep: Irrep
    outcome: Outcome | None
    golden: GoldenRow | None = None
    diffs: list[str] = field(default_factory=list)
    roundtrip_ok: bool | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.diffs and not self.error and self.roundtrip_ok is not False


@dataclass
class SurveyReport:
    cases: list[CaseResult] = field(default_factory=list)
    uncovered: list[GoldenRow] = field(default_factory=list)

    @property
    def compared(self) -> list[CaseResult]:
        return [c for c in self.cases if c.golden is not None]

    @property
    def matches(self) -> list[CaseResult]:
        return [c for c in self.compared if c.ok]

    @property
    def mismatches(self) -> list[CaseResult]:
        return [c for c in self.compared if not c.ok]

    @property
    def novel(self) -> list[CaseResult]:
        return [c for c in self.cases if c.golden is None and c.outcome is not None and c.outcome.success]

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.novel

    def as_dict(self) -> dict:
        def case_doc(c: CaseResult) -> dict:
            return {
                "case": c.label,
                "got": str(out_expected(c.outcome)) if c.outcome else None,
                "expected": str(c.golden.expected) if c.golden else None,
                "flags": list(c.golden.flags) if c.golden else [],
                "diffs": c.diffs,
                "roundtrip": c.roundtrip_ok,
                "error": c.error,
            }

        return {
            "rows_run": len(self.cases),
            "compared": len(self.compared),
            "matches": len(self.matches),
            "mismatches": [case_doc(c) for c in self.mismatches],
            "novel_successes": [case_doc(c) for c in self.novel],
            "failures": [case_doc(c) for c in self.failures],
            "uncovered_golden": [r.label() for r in self.uncovered],
        }

    def summary(self) -> str:
        lines = [
            f"cases run: {len(self.cases)}",
            f"golden rows compared: {len(self.compared)}, matches: {len(self.matches)}, "
            f"mismatches: {len(self.mismatches)}",
            f"novel successes: {len(self.novel)}",
            f"golden rows outside the enumeration bounds: {len(self.uncovered)}",
        ]
        for c in self.failures:
            lines.append(f"  FAIL {c.label}: {'; '.join(c.diffs) or c.error or 'round trip failed'}")
        for c in self.novel:
            lines.append(f"  NOVEL {c.label}: {out_expected(c.outcome)}")
        return "\n".join(lines)


def _source_class(out: Outcome) -> DiagramClass:
    return parse_class(out.type_string)


def run_case(label: str, mode: str, v: Irrep, golden: GoldenRow | None = None,
             check_roundtrip: bool = True) -> CaseResult:
    res = CaseResult(label, mode, v, None, golden)
    try:
        out = run(mode, v)
    except ConstructError as exc:
        res.error = str(exc)
        return res
    res.outcome = out
    if golden is not None:
        res.diffs = compare(golden, out)
    if out.success and check_roundtrip:
        res.roundtrip_ok = roundtrip(_source_class(out), out.k).ok
    return res


def run_golden(golden: Sequence[GoldenRow], check_roundtrip: bool = True) -> SurveyReport:
    rep = SurveyReport()
    for row in golden:
        rep.cases.append(run_case(row.label(), row.mode, row.irrep, row, check_roundtrip))
    return rep


def run_survey(max_total_rank: int, max_degree: int, golden: Sequence[GoldenRow],
               check_roundtrip: bool = True) -> SurveyReport:
    """Run every enumerated input, compare with golden rows, and run every golden row too."""
    by_key: dict[tuple, GoldenRow] = {}
    for row in golden:
        by_key.setdefault(row.key, row)
    rep = SurveyReport()
    seen = set()
    for shape, weights, mode in enumerate_inputs(max_total_rank, max_degree):
        v = Irrep(shape, weights)
        key = (mode, canonical_input(shape, weights))
        seen.add(key)
        row = by_key.get(key)
        label = row.label() if row else f"{mode} {v}"
        rep.cases.append(run_case(label, mode, v, row, check_roundtrip))
    covered_rows = set()
    for row in golden:
        if row.key in seen:
            covered_rows.add(row.key)
            continue
        rep.uncovered.append(row)
        rep.cases.append(run_case(row.label(), row.mode, row.irrep, row, check_roundtrip))
    return rep
