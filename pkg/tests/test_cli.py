import json
from pathlib import Path

import pytest

from quottaut import cli, gradedspace

ROOT = Path(__file__).resolve().parents[1]
EXAMPLE = ROOT / "configs" / "example.json"
RANK_ONE = ROOT / "configs" / "rank_one_E.json"


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


BASE = {
    "curve": {"genus": 0},
    "bundles": [{"label": "E", "rank": 2, "degree": 0, "h0": 2, "h1": 0}, {"label": "F", "rank": 1, "degree": 0}],
}


def test_example_quot_ext(tmp_path, capsys):
    doc = dict(BASE, queries=[{"kind": "quot-ext", "F": "F", "G": "F", "d": 2}])
    code, out, _ = run(["run", write(tmp_path, doc)], capsys)
    assert code == 0
    result = json.loads(out)["results"][0]
    assert result["value"] == {"0": 1}
    assert result["status"] == "proven" and result["euler"] == 1
    for key in ("query", "citation", "grading", "generic_tainted", "status"):
        assert key in result


def test_rank_one_e_exits_2(capsys):
    code, out, err = run(["run", RANK_ONE], capsys)
    assert code == 2 and out == ""
    payload = json.loads(err)
    assert "rk E >= 2" in payload["message"] and payload["query_index"] == 0


def test_not_covered_is_not_an_error(tmp_path, capsys):
    doc = dict(BASE, bundles=BASE["bundles"] + [{"label": "G", "rank": 2, "degree": 3, "splitting": [1, 2]}],
               queries=[{"kind": "vanishing", "factors": [["G", 2]], "d": 2}])
    code, out, _ = run(["run", write(tmp_path, doc)], capsys)
    assert code == 0
    assert json.loads(out)["results"][0]["verdict"]["kind"] == "NotCovered"


def test_strict_ambiguity_exits_3_and_generic_recovers(tmp_path, capsys):
    doc = {"curve": {"genus": 2}, "bundles": [{"label": "E", "rank": 2, "degree": 0}],
           "queries": [{"kind": "sym-coh", "bundle": "O_C", "d": 2}, {"kind": "quot-coh", "bundle": "O_C", "d": 2}]}
    path = write(tmp_path, doc)
    code, _, err = run(["run", path], capsys)
    assert code == 3 and json.loads(err)["query_index"] == 1
    code, out, _ = run(["run", path, "--policy", "generic"], capsys)
    assert code == 0
    results = json.loads(out)["results"]
    assert results[1]["generic_tainted"] is True and results[0]["generic_tainted"] is False


@pytest.mark.parametrize(
    "doc",
    [
        {"curve": {"genus": -1}},
        {"curve": {"genus": 0}, "bundles": [{"label": "A", "rank": 1, "degree": 0}] * 2},
        dict(BASE, queries=[{"kind": "quot-ext", "F": "nope", "G": "F", "d": 2}]),
        dict(BASE, queries=[{"kind": "frobnicate"}]),
        dict(BASE, queries=[{"kind": "quot-coh", "bundle": "F", "d": 0}]),
        dict(BASE, queries=[{"kind": "vanishing", "factors": [["F", 9]], "d": 2}]),
        dict(BASE, queries=[{"kind": "conjecture", "L": "F", "l": 5, "d": 2}]),
        dict(BASE, queries=[{"kind": "functor", "value": {"a": 1}, "d": 2}]),
        dict(BASE, queries=[{"kind": "oracle-verify", "max_dim": 20}]),
        dict(BASE, policy="lenient"),
    ],
)
def test_validation_errors_exit_2(tmp_path, capsys, doc):
    code, out, err = run(["run", write(tmp_path, doc)], capsys)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "ConfigError"


def test_missing_and_malformed_config(tmp_path, capsys):
    assert run(["run", tmp_path / "absent.json"], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run(["run", bad], capsys)[0] == 2


def test_output_is_deterministic_and_written(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert run(["run", EXAMPLE, "--output", first], capsys)[0] == 0
    assert run(["run", EXAMPLE, "--output", second], capsys)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    assert "generated_at" not in first.read_text()
    code, out, _ = run(["run", EXAMPLE, "--timestamps"], capsys)
    assert code == 0 and "generated_at" in json.loads(out)


def test_every_query_kind_in_example(capsys):
    code, out, _ = run(["run", EXAMPLE], capsys)
    results = json.loads(out)["results"]
    kinds = {r["kind"] for r in results}
    assert kinds == set(cli.QUERY_KINDS) - {"consistency"}
    statuses = {r["status"] for r in results}
    assert statuses == {"proven", "conjectural"}


def test_consistency_query(tmp_path, capsys):
    doc = dict(BASE, queries=[{"kind": "consistency", "genera": [0, 1], "ranks": [2], "d_max": 2, "degrees": [-1, 3]}])
    code, out, _ = run(["run", write(tmp_path, doc)], capsys)
    assert code == 0
    sweep = json.loads(out)["results"][0]["sweep"]
    assert sweep["passed"] == sweep["checks"] > 0 and sweep["failures"] == []


def test_table_and_latex(capsys):
    code, out, _ = run(["run", EXAMPLE, "--format", "table"], capsys)
    assert code == 0 and "NonzeroWitness" in out and "1 + 2q^2 + q^4" in out
    code, out, _ = run(["run", EXAMPLE, "--format", "latex"], capsys)
    assert code == 0 and out.startswith(r"\begin{tabular}") and "$1 + 2q$" in out


def test_graded_dim_round_trip_through_output(tmp_path, capsys):
    value = {"-2": 3, "0": 1, "5": 2}
    doc = dict(BASE, queries=[{"kind": "functor", "value": value, "d": 4}])
    code, out, _ = run(["run", write(tmp_path, doc)], capsys)
    assert code == 0
    echoed = json.loads(out)["results"][0]["value"]
    assert gradedspace.GradedDim.from_json(echoed) == gradedspace.GradedDim.from_json(value)


def test_verify_defaults(capsys):
    code, out, _ = run(["verify"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all ") and out.strip().endswith("checks passed")


def test_verify_max_k_zero(capsys):
    code, out, _ = run(["verify", "--max-k", "0", "--skip-consistency"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("all ")


def test_verify_catches_injected_bug(monkeypatch, capsys):
    monkeypatch.setattr(gradedspace, "ext_power",
                        lambda a, k: gradedspace._power_coefficient(a, k, geometric_parity=2))
    code, out, _ = run(["verify", "--skip-consistency"], capsys)
    assert code == 1
    counter = json.loads(out.strip().splitlines()[-1])["counterexample"]
    assert counter["basis"] == [["e0", 1]] and counter["k"] == 2


def test_verify_bounds(capsys):
    assert run(["verify", "--max-dim", "13"], capsys)[0] == 2


def test_oracle_verify(capsys):
    code, out, _ = run(["oracle", "verify", "--max-dim", "3", "--max-k", "3"], capsys)
    assert code == 0 and "checks passed" in out


def test_geometry_info(capsys):
    code, out, _ = run(["geometry", "info", "--genus", "1", "--rank", "2", "--d", "1"], capsys)
    assert code == 0
    info = json.loads(out)
    assert info["grading"] == "topological"
    assert info["poincare"] == {"0": 1, "1": 2, "2": 2, "3": 2, "4": 1}
    code, out, _ = run(["geometry", "info", "--space", "quot", "--rank", "3", "--d", "2"], capsys)
    assert json.loads(out)["dimension"] == 6
    assert run(["geometry", "info", "--rank", "0", "--d", "1"], capsys)[0] == 2
