"""Command-line entry point: run, grade, roundtrip, survey, scalars.

Machine output (``--json``) is a sorted-key JSON document carrying ``schema_version``;
the plain text output is rendered from the same document.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .construct import ConstructError, Outcome, is_special, long_nodes, roundtrip, roundtrip_scalars, run
from .diagram import DiagramError, catalog
from .grading import GradingError, gamma_decomposition, grade, lowest_root, structural_checks
from .reps import Irrep, RepError
from .rootsys import SimpleType, build_root_system
from .survey import GoldenError, load_golden, parse_class, run_golden, run_survey

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INADMISSIBLE, EXIT_VERIFY, EXIT_USAGE = 0, 2, 3, 64

FAMILIES = "ABCDEFG"


class UsageError(ValueError):
    pass


# --- input spec ----------------------------------------------------------------


@dataclass(frozen=True)
class InputSpec:
    mode: str
    components: tuple[tuple[str, int, tuple[int, ...]], ...]

    @property
    def shape(self) -> tuple[SimpleType, ...]:
        return tuple(SimpleType(f, r) for f, r, _ in self.components)

    @property
    def irrep(self) -> Irrep:
        return Irrep(self.shape, tuple(w for _, _, w in self.components))

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "components": [{"family": f, "rank": r, "weight": list(w)} for f, r, w in self.components],
        }


def parse_spec(doc: Any, mode_override: str | None = None) -> InputSpec:
    """Validate a decoded spec; errors name the offending field."""
    if not isinstance(doc, dict):
        raise UsageError("spec: expected an object with 'mode' and 'components'")
    mode = mode_override or doc.get("mode")
    if mode not in ("affine", "finite"):
        raise UsageError(f"mode: expected 'affine' or 'finite', got {mode!r}")
    comps = doc.get("components")
    if not isinstance(comps, list) or not comps:
        raise UsageError("components: expected a nonempty list")
    out = []
    for i, c in enumerate(comps):
        where = f"components[{i}]"
        if not isinstance(c, dict):
            raise UsageError(f"{where}: expected an object")
        fam, rank, w = c.get("family"), c.get("rank"), c.get("weight")
        if not isinstance(fam, str) or fam.upper() not in FAMILIES or len(fam) != 1:
            raise UsageError(f"{where}.family: expected one of {', '.join(FAMILIES)}")
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise UsageError(f"{where}.rank: expected a positive integer")
        fam = fam.upper()
        try:
            SimpleType(fam, rank)
            build_root_system(SimpleType(fam, rank))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"{where}: {fam}{rank} is not a simple type ({exc})") from None
        if not isinstance(w, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
            raise UsageError(f"{where}.weight: expected a list of integers")
        if len(w) != rank:
            raise UsageError(f"{where}.weight: expected {rank} entries, got {len(w)}")
        if any(x < 0 for x in w):
            raise UsageError(f"{where}.weight: entries must be nonnegative (dominant weight)")
        out.append((fam, rank, tuple(w)))
    return InputSpec(mode, tuple(out))


def load_spec(text: str, mode_override: str | None = None) -> InputSpec:
    """``text`` is inline JSON or a path to a JSON file."""
    src = text
    if not text.lstrip().startswith("{"):
        p = Path(text)
        if not p.is_file():
            raise UsageError(f"spec: {text!r} is neither inline JSON nor a readable file")
        src = p.read_text(encoding="utf-8")
    try:
        doc = json.loads(src)
    except json.JSONDecodeError as exc:
        raise UsageError(f"spec: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None
    return parse_spec(doc, mode_override)


# --- documents -------------------------------------------------------------------


def _constituents(rs) -> list[dict]:
    items = sorted(rs.items(), key=lambda vm: tuple(tuple(-x for x in w) for w in vm[0].weights))
    return [{"weights": [list(w) for w in v.weights], "mult": m, "dim": v.dim} for v, m in items]


def _trace_doc(tr) -> dict:
    return {
        "j": tr.j,
        "product_dim": tr.product.dim,
        "T": _constituents(tr.T),
        "T_complement": _constituents(tr.Tc),
        "verdict": tr.verdict,
    }


def scalar_doc(rep) -> dict | None:
    if rep is None:
        return None
    gs = rep.scalars
    return {
        "ok": rep.ok,
        "lambda1_norm": str(gs.norm),
        "c1": str(gs.c1),
        "t_k": None if gs.t_k is None else str(gs.t_k),
        "a_k": gs.a_k,
        "identities": [i.as_dict() for i in rep.identities],
    }


def _scalars_for(type_string: str, k: int):
    rt = roundtrip(parse_class(type_string), k)
    return roundtrip_scalars(rt), rt


def run_doc(spec: InputSpec) -> tuple[dict, int]:
    try:
        out = run(spec.mode, spec.irrep)
    except ConstructError as exc:
        doc = {"schema_version": SCHEMA_VERSION, "command": "run", "input": spec.as_dict(),
               "outcome": "inadmissible", "j": None, "reason": str(exc), "traces": []}
        return doc, EXIT_INADMISSIBLE
    doc = outcome_doc(out, spec)
    code = EXIT_OK if out.success else EXIT_INADMISSIBLE
    return doc, code


def outcome_doc(out: Outcome, spec: InputSpec) -> dict:
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "command": "run",
        "input": spec.as_dict(),
        "outcome": "success" if out.success else "inadmissible",
        "j": out.j,
        "traces": [_trace_doc(tr) for tr in out.traces],
        "pieces": {str(i): _constituents(v) for i, v in sorted(out.seq.items())},
    }
    if out.success:
        doc["type"] = out.type_string
        doc["k"] = {"index": out.k, "label": out.k_label}
        doc["special_root"] = out.special
        rep, _ = _scalars_for(out.type_string, out.k) if not out.special else (None, None)
        doc["scalars"] = scalar_doc(rep)
    else:
        doc["reason"] = out.reason
    return doc


def _k_from_label(cls, label: int) -> int:
    k = label - 1 if cls.kind == "finite" else label
    if not 0 <= k < cls.canonical.n:
        raise UsageError(f"k: {label} is not a node of {cls.type_string}")
    return k


def grade_doc(type_string: str, label: int) -> tuple[dict, int]:
    try:
        cls = parse_class(type_string)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"type: cannot parse {type_string!r} ({exc})") from None
    k = _k_from_label(cls, label)
    if not cls.canonical.is_long(k):
        raise UsageError(
            f"alpha_{label} of {cls.type_string} is a short root; gradings are only defined by long simple roots"
        )
    prof = grade(cls, k)
    checks = structural_checks(prof)
    if prof.mode == "finite":
        sub_dim = sum(t.rank + 2 * len(build_root_system(t).positive_roots) for t in prof.shape) + 1
        dims = {str(-i): prof.dim(i) for i in range(prof.top, 0, -1)}
        dims["0"] = sub_dim
        dims.update({str(i): prof.dim(i) for i in range(1, prof.top + 1)})
    else:
        dims = {str(i): prof.dim(i) for i in range(1, prof.top + 1)}
    gammas = {}
    for i in range(1, prof.top + 1):
        try:
            gammas[str(i)] = list(lowest_root(prof, i))
        except GradingError:
            gammas[str(i)] = None
    decomps = {}
    for i in range(2, prof.top + 1):
        try:
            g = gamma_decomposition(prof, i)
            decomps[str(i)] = {"parts": [list(p) for p in g.parts], "inert": g.inert, "orthogonal": g.orthogonal}
        except GradingError:
            pass
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "grade",
        "type": cls.type_string,
        "k": {"index": k, "label": label},
        "mode": prof.mode,
        "top": prof.top,
        "a_k": prof.a_k,
        "special_root": is_special(cls, k),
        "subalgebra": [str(t) for t in prof.shape],
        "dims": dims,
        "order": [int(x) for x in dims],
        "pieces": {str(i): _constituents(prof.pieces[i]) for i in range(1, prof.top + 1)},
        "lowest_roots": gammas,
        "gamma_parts": decomps,
        "checks": dict(sorted(checks.results.items())),
    }
    return doc, EXIT_OK if checks.ok else EXIT_VERIFY


def _classes(args) -> list:
    want = set()
    if args.all_finite:
        want.add("finite")
    if args.all_affine:
        want.add("affine")
    if not want:
        want = {"finite", "affine"}
    return [c for c in catalog(args.max_rank) if c.kind in want]


def roundtrip_doc(args) -> tuple[dict, int]:
    cases, failed = [], 0
    for cls in _classes(args):
        for k in long_nodes(cls):
            rt = roundtrip(cls, k)
            failed += not rt.ok
            cases.append({"type": cls.type_string, "k": cls.node_label(k), "ok": rt.ok, "messages": rt.messages})
    doc = {"schema_version": SCHEMA_VERSION, "command": "roundtrip", "cases": len(cases),
           "failures": [c for c in cases if not c["ok"]], "ok": failed == 0}
    return doc, EXIT_OK if failed == 0 else EXIT_VERIFY


def survey_doc(args) -> tuple[dict, int]:
    try:
        golden = load_golden(args.golden)
    except FileNotFoundError:
        raise UsageError(f"--golden: no such file {args.golden!r}") from None
    except GoldenError as exc:
        raise UsageError(f"--golden: {exc}") from None
    if args.max_rank is None:
        rep = run_golden(golden)
    else:
        if args.max_rank < 1 or args.max_degree < 1:
            raise UsageError("--max-rank and --max-degree must be positive")
        rep = run_survey(args.max_rank, args.max_degree, golden)
    doc = {"schema_version": SCHEMA_VERSION, "command": "survey", **rep.as_dict(), "ok": rep.ok,
           "summary": rep.summary()}
    return doc, EXIT_OK if rep.ok else EXIT_VERIFY


def scalars_doc(args) -> tuple[dict, int]:
    target = args.target
    if len(target) == 2 and not target[0].lstrip().startswith("{"):
        try:
            label = int(target[1])
        except ValueError:
            raise UsageError(f"k: expected an integer, got {target[1]!r}") from None
        gdoc, _ = grade_doc(target[0], label)
        type_string, k = gdoc["type"], gdoc["k"]["index"]
        echoed: dict = {"type": type_string, "k": label}
    elif len(target) == 1:
        spec = load_spec(target[0], args.mode)
        try:
            out = run(spec.mode, spec.irrep)
        except ConstructError as exc:
            return {"schema_version": SCHEMA_VERSION, "command": "scalars", "input": spec.as_dict(),
                    "outcome": "inadmissible", "reason": str(exc)}, EXIT_INADMISSIBLE
        if not out.success:
            return {"schema_version": SCHEMA_VERSION, "command": "scalars", "input": spec.as_dict(),
                    "outcome": "inadmissible", "j": out.j, "reason": out.reason}, EXIT_INADMISSIBLE
        type_string, k = out.type_string, out.k
        echoed = spec.as_dict()
    else:
        raise UsageError("scalars: give a spec, or a type string and a node label")
    rep, _ = _scalars_for(type_string, k)
    doc = {"schema_version": SCHEMA_VERSION, "command": "scalars", "input": echoed, "type": type_string,
           "scalars": scalar_doc(rep)}
    ok = rep is None or rep.ok
    return doc, EXIT_OK if ok else EXIT_VERIFY


# --- text rendering --------------------------------------------------------------


def _fmt_constituents(items: list[dict]) -> str:
    if not items:
        return "0"
    parts = []
    for c in items:
        w = "|".join(",".join(str(x) for x in comp) for comp in c["weights"])
        parts.append(f"{c['mult']}x[{w}]" if c["mult"] > 1 else f"[{w}]")
    return " + ".join(parts)


def render(doc: dict) -> str:
    cmd = doc.get("command")
    lines: list[str] = []
    if cmd == "run":
        for tr in doc.get("traces", []):
            lines.append(f"step {tr['j']}: T = {_fmt_constituents(tr['T'])}; "
                         f"complement = {_fmt_constituents(tr['T_complement'])} ({tr['verdict']})")
        if doc["outcome"] == "success":
            lines.append(f"success: {doc['type']}, k={doc['k']['label']}, j={doc['j']}")
        else:
            lines.append(f"inadmissible at j={doc['j']}: {doc.get('reason', '')}")
        sc = doc.get("scalars")
        if sc:
            lines.append(_render_scalars(sc))
    elif cmd == "grade":
        lines.append(f"{doc['type']} graded by alpha_{doc['k']['label']} ({doc['mode']}, top degree {doc['top']})")
        if doc["special_root"]:
            lines.append("alpha_k is a special root: g_1 is the adjoint module and the period is 1")
        lines.append("g^k = " + " + ".join(doc["subalgebra"]))
        lines.append("dims " + "/".join(str(doc["dims"][str(i)]) for i in doc["order"]))
        for i, items in doc["pieces"].items():
            lines.append(f"g_{i} = {_fmt_constituents(items)}  gamma_{i} = {doc['lowest_roots'][i]}")
        bad = [n for n, v in doc["checks"].items() if not v]
        lines.append("checks: all pass" if not bad else "checks failed: " + ", ".join(bad))
    elif cmd == "roundtrip":
        lines.append(f"{doc['cases']} round trips, {len(doc['failures'])} failures")
        for c in doc["failures"]:
            lines.append(f"  FAIL {c['type']} k={c['k']}: {'; '.join(c['messages'])}")
    elif cmd == "survey":
        lines.append(doc["summary"])
    elif cmd == "scalars":
        if "scalars" in doc:
            lines.append(f"{doc['type']}")
            lines.append(_render_scalars(doc["scalars"]) if doc["scalars"] else "special root: no identities")
        else:
            lines.append(f"inadmissible: {doc.get('reason', '')}")
    return "\n".join(lines)


def _render_scalars(sc: dict) -> str:
    head = f"(lambda_1, lambda_1) = {sc['lambda1_norm']}, c_1 = {sc['c1']}"
    head += f", t_k = {sc['t_k']}" if sc["t_k"] is not None else f", a_k = {sc['a_k']}"
    lines = [head]
    for i in sc["identities"]:
        mark = "ok" if i["ok"] else ("CONFLICT" if i.get("recorded_conflict") else "FAIL")
        if i["ok"] and i.get("recorded_conflict"):
            mark = "ok"
        lines.append(f"  [{mark}] {i['name']}: {i['direct']} vs {i['closed']}")
    return "\n".join(lines)


# --- argument parsing ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default, which means inadmissible here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lsngrade", description="Gradings of finite and affine Lie algebras by long simple roots.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q):
        q.add_argument("--json", action="store_true", help="machine-readable output")

    q = sub.add_parser("run", help="run the affine or finite algorithm from a V_1 spec")
    q.add_argument("spec", help="inline JSON or a JSON file")
    q.add_argument("--mode", choices=("affine", "finite"), help="override the input's mode")
    common(q)

    q = sub.add_parser("grade", help="grade an algebra by a long simple root")
    q.add_argument("type", help="type string such as E6 or E6(1)")
    q.add_argument("k", type=int, help="node label (Bourbaki for finite, alpha_0 based for affine)")
    common(q)

    q = sub.add_parser("roundtrip", help="grade, run forward and compare, for every long root")
    q.add_argument("--all-finite", action="store_true")
    q.add_argument("--all-affine", action="store_true")
    q.add_argument("--max-rank", type=int, default=8)
    common(q)

    q = sub.add_parser("survey", help="golden table, optionally with a bounded enumeration")
    q.add_argument("--golden", default=None, help="golden TSV (default: the bundled table)")
    q.add_argument("--max-rank", type=int, default=None, help="enumerate inputs up to this total rank")
    q.add_argument("--max-degree", type=int, default=3)
    common(q)

    q = sub.add_parser("scalars", help="scalar identity report for a spec or a (type, k) pair")
    q.add_argument("target", nargs="+", help="spec, or TYPE K")
    q.add_argument("--mode", choices=("affine", "finite"))
    common(q)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            doc, code = run_doc(load_spec(args.spec, args.mode))
        elif args.command == "grade":
            doc, code = grade_doc(args.type, args.k)
        elif args.command == "roundtrip":
            if args.max_rank < 1:
                raise UsageError("--max-rank must be positive")
            doc, code = roundtrip_doc(args)
        elif args.command == "survey":
            doc, code = survey_doc(args)
        else:
            doc, code = scalars_doc(args)
    except UsageError as exc:
        print(f"lsngrade: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RepError, DiagramError, GradingError) as exc:
        print(f"lsngrade: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(render(doc))
    if args.command == "run" and doc.get("scalars") and not doc["scalars"]["ok"]:
        print("lsngrade: warning: some scalar identities failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
