import json
import subprocess
import sys
from pathlib import Path

import pytest

from hopfwreath import cli
from hopfwreath.groups import builtin_group, builtin_group_extension, check_group_embedding, group_algebra, kk_embed_group
from hopfwreath.hopf import check_axioms, group_likes, primitives
from hopfwreath.lie import builtin_lie, builtin_lie_extension, check_lie_embedding, enveloping_hopf, kk_embed_lie
from hopfwreath.smash import (
    algebra_isomorphism_to_group_algebra,
    crossed_product,
    wreath_group_algebra_check,
    primitive_bracket_check,
    trivial_action,
    wreath_hopf,
)
from hopfwreath.serialize import cocycle_from_json, lie_extension_from_json, load_json

DATA = Path(__file__).resolve().parent.parent / "data"


def invoke(capsysbinary, *argv):
    code = cli.main([*argv, "--json", "--no-timing"])
    out = capsysbinary.readouterr().out
    return code, json.loads(out)


def statuses(report):
    return {c["name"]: c["status"] for c in report["checks"]}


def details(report):
    return {c["name"]: c["detail"] for c in report["checks"]}


def test_check_axioms_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "check-axioms", "--group", "builtin:Q8")
    lib = check_axioms(group_algebra(builtin_group("Q8")))
    assert code == 0
    assert statuses(rep) == {f: lib.status(f) for f in lib.families()}
    assert {"coassociativity", "counit", "bialgebra", "antipode", "cocommutativity"} <= set(statuses(rep))


def test_check_axioms_lie_adds_confluence(capsysbinary):
    code, rep = invoke(capsysbinary, "check-axioms", "--lie", "heisenberg", "--N", "4")
    assert code == 0 and statuses(rep)["pbw-confluence"] == "pass"
    lib = check_axioms(enveloping_hopf(builtin_lie("heisenberg"), 4))
    assert all(statuses(rep)[f] == lib.status(f) for f in lib.families())


def test_wreath_group_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "wreath-group", "--A", "C2", "--Q", "C3")
    W = wreath_hopf("group", builtin_group("C2"), builtin_group("C3"))
    assert code == 0
    assert details(rep)["dimension"].startswith(f"{len(W.smash.basis)} ")


def test_wreath_lie_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "wreath-lie", "--A", "abelian-1", "--Q", "abelian-1", "--N", "3")
    W = wreath_hopf("lie", builtin_lie("abelian-1"), builtin_lie("abelian-1"), 3)
    assert code == 0
    assert details(rep)["primitive-dimension"].startswith(f"{len(primitives(W.smash))} ")


def test_kk_embed_group_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "kk-embed-group", "--ext", "D4/Z")
    ext = builtin_group_extension("D4/Z")
    lib = check_group_embedding(ext, kk_embed_group(ext))
    assert code == 0
    assert statuses(rep) == {k: "fail" if v else "pass" for k, v in lib.items()}


def test_kk_embed_lie_from_file(capsysbinary):
    code, rep = invoke(capsysbinary, "kk-embed-lie", "--ext", str(DATA / "heisenberg.json"), "--N", "4")
    ext = lie_extension_from_json(load_json(DATA / "heisenberg.json"))
    lib = check_lie_embedding(ext, kk_embed_lie(ext, 4), 4)
    assert code == 0
    assert statuses(rep) == {k: "fail" if v else "pass" for k, v in lib.items()}
    assert details(rep)["bracket"].startswith("9/9")


def test_smash_with_action_file(capsysbinary):
    code, rep = invoke(capsysbinary, "smash", "--H", "C3", "--Q", "C2", "--action", str(DATA / "c3_inversion.json"))
    assert code == 0 and all(s == "pass" for s in statuses(rep).values())


def test_crossed_matches_library(capsysbinary):
    path = DATA / "c4_cocycle.json"
    code, rep = invoke(capsysbinary, "crossed", "--H", "C2", "--Q", "C2", "--cocycle", str(path), "--compare", "C4")
    H = Q = group_algebra(builtin_group("C2"))
    C = crossed_product(trivial_action(Q, H), cocycle_from_json(load_json(path), Q, H))
    assert code == 0
    assert (statuses(rep)["isomorphic-to-kC4"] == "pass") == (
        algebra_isomorphism_to_group_algebra(C, builtin_group("C4")) is not None)


def test_crossed_reports_non_invertible_cocycle(capsysbinary):
    code, rep = invoke(capsysbinary, "crossed", "--H", "C2", "--Q", "C2", "--cocycle", str(DATA / "zero_cocycle.json"))
    assert code == 1 and statuses(rep) == {"cocycle-invertible": "fail"}


@pytest.mark.parametrize("ext", ["C4/C2", "heisenberg/center"])
def test_hker(capsysbinary, ext):
    code, rep = invoke(capsysbinary, "hker", "--ext", ext)
    assert code == 0 and all(s == "pass" for s in statuses(rep).values())


def test_group_likes_and_primitives_match_library(capsysbinary):
    code, rep = invoke(capsysbinary, "group-likes", "--group", "D4")
    assert code == 0 and details(rep)["independent"] == f"{len(group_likes(group_algebra(builtin_group('D4'))))} group-likes"
    code, rep = invoke(capsysbinary, "primitives", "--lie", "sl2", "--N", "3")
    n = len(primitives(enveloping_hopf(builtin_lie("sl2"), 3)))
    assert code == 0 and details(rep)["degree-one-span"].startswith(f"dim {n} ")


def test_conv_inverse(capsysbinary):
    code, rep = invoke(capsysbinary, "conv-inverse", "--lie", "affine-2dim")
    assert code == 0 and statuses(rep) == {"equals-antipode": "pass", "two-sided": "pass"}


def test_verify_theorem_g_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "verify-theorem-g", "--A", "builtin:C2", "--Q", "builtin:C2")
    lib = wreath_group_algebra_check(builtin_group("C2"), builtin_group("C2"))
    assert code == 0 and lib.ok
    assert "8-dim" in details(rep)["dimension"]


def test_verify_theorem_l_matches_library(capsysbinary):
    code, rep = invoke(capsysbinary, "verify-theorem-l", "--A", "affine-2dim", "--Q", "abelian-1")
    lib = primitive_bracket_check(builtin_lie("affine-2dim"), builtin_lie("abelian-1"), 4)
    assert code == 0
    assert details(rep)["commutator"] == f"{lib.counts['commutator']}/{lib.counts['commutator']} cases hold"


@pytest.mark.parametrize("ext", ["C4/C2", str(DATA / "c4_over_c2.json"), "affine/span-y"])
def test_round_trip(capsysbinary, ext):
    code, rep = invoke(capsysbinary, "round-trip", "--ext", ext)
    assert code == 0 and all(s == "pass" for s in statuses(rep).values())


# -- report format and exit codes ---------------------------------------------------


def test_json_report_schema_round_trips(capsysbinary):
    _, rep = invoke(capsysbinary, "kk-embed-group", "--ext", "C4/C2")
    assert set(rep) == {"command", "checks", "elapsed_ms"}
    assert rep["command"] == "kk-embed-group" and rep["elapsed_ms"] is None
    for c in rep["checks"]:
        assert {"name", "status", "witnesses"} <= set(c)
    r = cli.run(cli.RunConfig("kk-embed-group", {"ext": "C4/C2"}, timing=False))
    assert json.loads(cli.emit_report(r, "json")) == rep


def test_empty_report_is_header_only():
    text = cli.emit_report(cli.Report("noop"), "text").decode()
    assert text == "hopfwreath noop\n"
    assert cli.Report("noop").ok


def test_failing_check_prints_witness():
    r = cli.Report("demo").add("thing", False, [("a", "b")], "broken")
    text = cli.emit_report(r, "text").decode()
    assert "FAIL" in text and 'witness: ["a", "b"]' in text
    assert not r.ok


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "hopfwreath", "check-axioms", "--lie", "sl2", "--N", "3", "--json", "--no-timing"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b


def test_seed_comes_from_environment(monkeypatch):
    monkeypatch.setenv("HOPFWREATH_SEED", "7")
    assert cli.config_from_args(["check-axioms", "--lie", "sl2"]).seed == 7
    assert cli.config_from_args(["check-axioms", "--lie", "sl2", "--seed", "9"]).seed == 9
    monkeypatch.delenv("HOPFWREATH_SEED")
    assert cli.config_from_args(["check-axioms", "--lie", "sl2"]).seed == cli.DEFAULT_SEED


def test_malformed_json_reports_path(tmp_path, capsysbinary):
    bad = tmp_path / "bad.json"
    bad.write_text('{"basis": ["x", "y"], "brackets": [{"i": "x", "j": "w", "value": {}}]}')
    code, rep = invoke(capsysbinary, "check-axioms", "--lie", str(bad))
    assert code == 2
    name, message, witness = rep["checks"][0]["witnesses"][0]
    assert name == "ParseError" and witness == "$.brackets[0].j"


def test_unreadable_json_is_a_parse_error(tmp_path, capsysbinary):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code, rep = invoke(capsysbinary, "check-axioms", "--group", str(bad))
    assert code == 2 and rep["checks"][0]["witnesses"][0][0] == "ParseError"


def test_invalid_group_table_is_a_validation_error(tmp_path, capsysbinary):
    bad = tmp_path / "g.json"
    bad.write_text(json.dumps({"elements": ["e", "x"], "mul": [["e", "x"], ["x", "x"]]}))
    code, rep = invoke(capsysbinary, "check-axioms", "--group", str(bad))
    assert code == 2 and rep["checks"][0]["witnesses"][0][0] == "ValidationError"


def test_window_above_n_is_rejected(capsysbinary):
    for cmd in (["hker", "--ext", "heisenberg/center"], ["wreath-lie", "--A", "abelian-1", "--Q", "abelian-1"]):
        code, rep = invoke(capsysbinary, *cmd, "--N", "3", "--window", "4")
        assert code == 2 and "exceeds" in rep["checks"][0]["detail"]


def test_lie_commands_need_n_at_least_two(capsysbinary):
    code, _ = invoke(capsysbinary, "kk-embed-lie", "--ext", "heisenberg/center", "--N", "1")
    assert code == 2


def test_console_script_exit_code_on_failure():
    proc = subprocess.run([sys.executable, "-m", "hopfwreath", "crossed", "--H", "C2", "--Q", "C2",
                           "--cocycle", str(DATA / "zero_cocycle.json")], capture_output=True, text=True)
    assert proc.returncode == 1 and "FAIL" in proc.stdout
