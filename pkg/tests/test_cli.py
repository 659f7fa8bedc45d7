import json
import subprocess
import sys

import pytest

from lsngrade.cli import (
    EXIT_INADMISSIBLE,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    load_spec,
    main,
    parse_spec,
)


def spec(mode, *comps):
    return json.dumps({"mode": mode, "components": [{"family": f, "rank": len(w), "weight": w} for f, w in comps]})


G2_SPEC = spec("finite", ("A", [3]))
E6_AFF = spec("affine", ("A", [1, 0]), ("A", [1, 0]), ("A", [1, 0]))


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv, "--json")
    return code, json.loads(out), err


def test_run_g2(capsys):
    code, doc, _ = call_json(capsys, "run", G2_SPEC)
    assert code == EXIT_OK
    assert (doc["outcome"], doc["type"], doc["j"], doc["k"]["label"]) == ("success", "G2", 2, 2)
    assert doc["schema_version"] == 1
    assert doc["scalars"]["ok"]


def test_run_e6_affine(capsys):
    code, doc, _ = call_json(capsys, "run", E6_AFF)
    assert code == EXIT_OK and doc["type"] == "E6(1)" and doc["k"]["label"] == 4 and doc["j"] == 3
    assert [t["verdict"] for t in doc["traces"]] == ["irreducible", "adjoint+trivial"]


def test_run_inadmissible(capsys):
    code, doc, _ = call_json(capsys, "run", spec("finite", ("E", [2, 0, 0, 0, 0, 0])))
    assert code == EXIT_INADMISSIBLE and doc["outcome"] == "inadmissible" and doc["j"] == 2


def test_run_rejects_non_cominuscule(capsys):
    code, doc, _ = call_json(capsys, "run", spec("finite", ("C", [0, 1, 0])))
    assert code == EXIT_INADMISSIBLE and doc["j"] is None and "cominuscule" in doc["reason"]


def test_run_text_output(capsys):
    code, out, _ = call(capsys, "run", G2_SPEC)
    assert code == EXIT_OK and "G2" in out


def test_run_from_file(tmp_path, capsys):
    p = tmp_path / "v.json"
    p.write_text(G2_SPEC)
    code, doc, _ = call_json(capsys, "run", str(p))
    assert code == EXIT_OK and doc["type"] == "G2"


def test_mode_override(capsys):
    code, doc, _ = call_json(capsys, "run", G2_SPEC, "--mode", "affine")
    assert code == EXIT_INADMISSIBLE


def test_determinism(capsys):
    _, first, _ = call(capsys, "run", E6_AFF, "--json")
    _, second, _ = call(capsys, "run", E6_AFF, "--json")
    assert first == second


def test_spec_echo_round_trip(capsys):
    _, doc, _ = call_json(capsys, "run", E6_AFF)
    assert parse_spec(doc["input"]) == load_spec(E6_AFF)


@pytest.mark.parametrize(
    "doc, where",
    [
        ([], "spec"),
        ({"mode": "both", "components": []}, "mode"),
        ({"mode": "finite", "components": []}, "components"),
        ({"mode": "finite", "components": [{"family": "Q", "rank": 1, "weight": [1]}]}, "components[0].family"),
        ({"mode": "finite", "components": [{"family": "A", "rank": 0, "weight": []}]}, "components[0].rank"),
        ({"mode": "finite", "components": [{"family": "E", "rank": 5, "weight": [0] * 5}]}, "components[0]"),
        ({"mode": "finite", "components": [{"family": "A", "rank": 2, "weight": [1]}]}, "components[0].weight"),
        ({"mode": "finite", "components": [{"family": "A", "rank": 1, "weight": [-1]}]}, "components[0].weight"),
        ({"mode": "finite", "components": [{"family": "A", "rank": 1, "weight": ["x"]}]}, "components[0].weight"),
    ],
)
def test_spec_diagnostics(doc, where):
    with pytest.raises(UsageError) as exc:
        parse_spec(doc)
    assert str(exc.value).startswith(where)


def test_weight_length_message():
    with pytest.raises(UsageError, match=r"components\[0\]\.weight: expected 2 entries, got 1"):
        parse_spec({"mode": "finite", "components": [{"family": "A", "rank": 2, "weight": [1]}]})


def test_usage_exit_codes(capsys):
    assert call(capsys, "run", "{not json")[0] == EXIT_USAGE
    assert call(capsys, "run", "/no/such/file.json")[0] == EXIT_USAGE
    assert call(capsys, "grade", "Q3", "1")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE


def test_grade_e6(capsys):
    code, doc, _ = call_json(capsys, "grade", "E6", "4")
    assert code == EXIT_OK
    assert [doc["dims"][str(i)] for i in doc["order"]] == [2, 9, 18, 20, 18, 9, 2]
    assert all(doc["checks"].values())


def test_grade_g2(capsys):
    code, doc, _ = call_json(capsys, "grade", "G2", "2")
    assert [doc["dims"][str(i)] for i in doc["order"]] == [1, 4, 4, 4, 1]


def test_grade_short_root_refused(capsys):
    code, _, err = call(capsys, "grade", "G2", "1")
    assert code == EXIT_USAGE and "short root" in err


def test_grade_affine(capsys):
    code, doc, _ = call_json(capsys, "grade", "D4(1)", "2")
    assert code == EXIT_OK and doc["top"] == 2 and not doc["special_root"]
    code, doc, _ = call_json(capsys, "grade", "D4(1)", "3")
    assert code == EXIT_OK and doc["special_root"] and doc["top"] == 1


def test_roundtrip_small(capsys):
    code, doc, _ = call_json(capsys, "roundtrip", "--all-finite", "--max-rank", "3")
    assert code == EXIT_OK
    assert code == EXIT_OK and call(capsys, "roundtrip", "--max-rank", "0")[0] == EXIT_USAGE


def test_scalars_command(capsys):
    code, doc, _ = call_json(capsys, "scalars", "E6", "4")
    assert code == EXIT_OK
    code, doc, _ = call_json(capsys, "scalars", G2_SPEC)
    assert code == EXIT_OK


def test_survey_golden_file(tmp_path, capsys):
    p = tmp_path / "g.tsv"
    p.write_text(
        "shape\tweight\tmode\texpected\tcitation\tflags\tparams\n"
        "A1\t3\tfinite\tG2 k=2 j=2\tcite\t-\t-\n"
        "E6\t2,0,0,0,0,0\tfinite\tinadmissible j=2\tcite\t-\t-\n"
    )
    code, doc, _ = call_json(capsys, "survey", "--golden", str(p))
    assert code == EXIT_OK and doc["matches"] == 2
    p.write_text(
        "shape\tweight\tmode\texpected\tcitation\tflags\tparams\n"
        "A1\t3\tfinite\tG2 k=1 j=2\tcite\t-\t-\n"
    )
    assert call(capsys, "survey", "--golden", str(p))[0] != EXIT_OK
    assert call(capsys, "survey", "--golden", str(tmp_path / "missing.tsv"))[0] == EXIT_USAGE


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lsngrade", "run", G2_SPEC, "--json"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["type"] == "G2"
