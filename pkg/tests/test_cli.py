import json

from antictx import cli, ensembles, quantum
from antictx.cli import dispatch
from antictx.ensembles import FamilySpec


def fx(fixtures_dir, name):
    return str(fixtures_dir / name)


def test_validate_good_scenario(fixtures_dir):
    result = dispatch(["validate", fx(fixtures_dir, "specker.json")])
    assert result.exit_code == 0
    assert result.payload["valid"]


def test_validate_reports_violations(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"outcomes": ["a", "b"], "contexts": [["a", "b"], ["a"]]}))
    result = dispatch(["validate", str(bad)])
    assert result.exit_code == 1
    assert any(v["rule"] == "context-antichain" for v in result.payload["violations"])


def test_validate_unknown_key_is_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"outcomes": ["a"], "bogus": []}))
    result = dispatch(["validate", str(bad)])
    assert result.exit_code == 2


def test_missing_file_is_usage_error():
    assert dispatch(["validate", "/nonexistent/path.json"]).exit_code == 2


def test_usage_error_for_unknown_subcommand(capsys):
    result = dispatch(["frobnicate"])
    assert result.exit_code == 2


def test_value_functions_count_only(fixtures_dir):
    result = dispatch(
        ["value-functions", fx(fixtures_dir, "klyachko.json"), "--count-only"]
    )
    assert result.exit_code == 0
    assert result.payload == {"count": 11}


def test_value_functions_full_listing(fixtures_dir):
    result = dispatch(["value-functions", fx(fixtures_dir, "specker.json")])
    assert result.payload == {"count": 0, "value_functions": []}


def test_node_budget_exit_code(fixtures_dir):
    result = dispatch(
        ["value-functions", fx(fixtures_dir, "klyachko.json"), "--node-budget", "2"]
    )
    assert result.exit_code == 3


def test_classical_bound_ones(fixtures_dir):
    result = dispatch(
        ["classical-bound", fx(fixtures_dir, "klyachko.json"), "--coeffs", "ones"]
    )
    assert result.exit_code == 0
    assert result.payload["bound"] == "2"
    assert result.payload["value_function_count"] == 11


def test_classical_bound_empty_polytope(fixtures_dir):
    result = dispatch(
        ["classical-bound", fx(fixtures_dir, "specker.json"), "--coeffs", "ones"]
    )
    assert result.exit_code == 1
    assert result.payload["error"] == "empty-polytope"


def test_classical_bound_coeffs_file(fixtures_dir, tmp_path):
    coeffs = tmp_path / "coeffs.json"
    coeffs.write_text(json.dumps({"coeffs": {"0": "1", "2": "1"}}))
    result = dispatch(
        ["classical-bound", fx(fixtures_dir, "klyachko.json"), "--coeffs", str(coeffs)]
    )
    assert result.payload["bound"] == "2"


def test_state_bound(fixtures_dir):
    result = dispatch(
        ["state-bound", fx(fixtures_dir, "klyachko.json"), "--coeffs", "ones"]
    )
    assert result.exit_code == 0
    assert result.payload["value"] == "5/2"
    assert result.payload["point"]["0"] == "1/2"


def test_state_bound_infeasible(fixtures_dir):
    result = dispatch(
        ["state-bound", fx(fixtures_dir, "no_state.json"), "--coeffs", "ones"]
    )
    assert result.exit_code == 1
    assert result.payload["status"] == "infeasible"


def test_membership_not_member(fixtures_dir):
    result = dispatch(
        [
            "membership",
            fx(fixtures_dir, "klyachko.json"),
            "--state",
            fx(fixtures_dir, "klyachko_half_state.json"),
        ]
    )
    assert result.exit_code == 1
    assert result.payload == {"member": False, "reason": "not-member"}


def test_membership_member(fixtures_dir):
    result = dispatch(
        [
            "membership",
            fx(fixtures_dir, "antidist_example.json"),
            "--state",
            fx(fixtures_dir, "example3_third_state.json"),
        ]
    )
    assert result.exit_code == 0
    assert result.payload["member"] is True
    total = sum(
        json.loads(json.dumps(int(w["weight"].split("/")[0]))) / int(w["weight"].split("/")[1])
        if "/" in w["weight"]
        else int(w["weight"])
        for w in result.payload["weights"]
    )
    assert abs(total - 1) < 1e-9


def test_membership_invalid_state_is_usage_error(fixtures_dir, tmp_path):
    state = tmp_path / "state.json"
    state.write_text(json.dumps({"state": {str(i): "2/3" for i in range(5)}}))
    result = dispatch(
        ["membership", fx(fixtures_dir, "klyachko.json"), "--state", str(state)]
    )
    assert result.exit_code == 2


def test_quantum_scenario_matches_fixture(fixtures_dir):
    result = dispatch(["quantum-scenario", fx(fixtures_dir, "caves_vectors.json")])
    assert result.exit_code == 0
    expected = json.loads((fixtures_dir / "antidist_example.json").read_text())
    assert result.payload == expected


def test_check_anti_overlaps_negative():
    result = dispatch(["check-anti", "--overlaps", "1,0,0"])
    assert result.exit_code == 1
    assert result.payload["antidistinguishable"] is False


def test_check_anti_overlaps_rational_forms():
    result = dispatch(["check-anti", "--overlaps", "1/9,1/3,1/3"])
    assert result.exit_code == 0
    assert result.payload["antidistinguishable"] is True
    assert result.payload["boundary"] is True


def test_check_anti_triple_from_vectors(fixtures_dir):
    result = dispatch(
        [
            "check-anti",
            "--vectors",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--triple",
            "a1,a2,c1",
        ]
    )
    assert result.exit_code == 0
    assert result.payload["antidistinguishable"] is True


def test_check_anti_certificate(fixtures_dir):
    result = dispatch(
        ["check-anti", "--certificate", fx(fixtures_dir, "caves_certificate.json")]
    )
    assert result.exit_code == 0
    assert result.payload["valid"] is True


def test_check_anti_requires_exactly_one_mode():
    assert dispatch(["check-anti"]).exit_code == 2
    assert dispatch(["check-anti", "--overlaps", "0,0,0", "--certificate", "x"]).exit_code == 2


def test_antiset_verify(fixtures_dir):
    result = dispatch(
        [
            "antiset",
            "verify",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--members",
            "a1,a2,a3,a4",
            "--principal",
            "c1,c2,c3",
        ]
    )
    assert result.exit_code == 0
    assert result.payload["triple_count"] == 18
    assert result.payload["boundary_triples"] == 18


def test_antiset_verify_failed_triple(tmp_path):
    states = ensembles.generate_states(FamilySpec("hadamard", 2, "B0")).union(
        ensembles.generate_states(FamilySpec("standard_basis", 2))
    )
    path = tmp_path / "h2.json"
    path.write_bytes(quantum.save_states(states))
    result = dispatch(
        [
            "antiset",
            "verify",
            str(path),
            "--members",
            "00,01",
            "--principal",
            "e1,e2",
        ]
    )
    assert result.exit_code == 1
    assert result.payload["verified"] is False
    assert result.payload["failed_triple"]


def test_antiset_verify_weak_single_principal(tmp_path):
    states = ensembles.generate_states(FamilySpec("maroney", 5))
    path = tmp_path / "maroney.json"
    path.write_bytes(quantum.save_states(states))
    result = dispatch(
        ["antiset", "verify", str(path), "--members", "a1,a2,a3,a4", "--principal", "c"]
    )
    assert result.exit_code == 0
    assert result.payload["kind"] == "weak"
    assert result.payload["principal"] == "c"

    emitted = dispatch(
        ["inequality", "emit", "--vectors", str(path), "--members", "a1,a2,a3,a4",
         "--principal", "c"]
    )
    assert emitted.exit_code == 0
    assert emitted.payload["bound"] == "1"
    assert emitted.payload["side_constraints"] == [{"label": "c", "value": "1"}]


def test_inequality_missing_options_are_usage_errors(fixtures_dir):
    assert dispatch(["inequality", "emit"]).exit_code == 2
    assert dispatch(["inequality", "evaluate", "--rho", "mixed"]).exit_code == 2


def test_antiset_find(fixtures_dir):
    result = dispatch(
        [
            "antiset",
            "find",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--members",
            "a1,a2,a3,a4",
            "--principal",
            "c1,c2,c3",
        ]
    )
    assert result.exit_code == 0
    assert len(result.payload["antisets"]) == 1
    assert result.payload["antisets"][0]["members"] == ["a1", "a2", "a3", "a4"]


def test_inequality_emit_augment_evaluate(fixtures_dir, tmp_path):
    emit = dispatch(
        [
            "inequality",
            "emit",
            "--vectors",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--members",
            "a1,a2,a3,a4",
            "--principal",
            "c1,c2,c3",
        ]
    )
    assert emit.exit_code == 0
    assert emit.payload["bound"] == "1"
    ineq_path = tmp_path / "ineq.json"
    ineq_path.write_text(json.dumps(emit.payload))

    augmented = dispatch(
        [
            "inequality",
            "augment",
            "--ineq",
            str(ineq_path),
            "--add-context",
            "c1,c2,c3",
        ]
    )
    assert augmented.exit_code == 0
    assert augmented.payload["bound"] == "2"

    evaluated = dispatch(
        [
            "inequality",
            "evaluate",
            "--ineq",
            str(ineq_path),
            "--vectors",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--rho",
            "mixed",
        ]
    )
    assert evaluated.exit_code == 0
    assert evaluated.payload["violated"] is True
    assert abs(evaluated.payload["lhs"] - 4 / 3) < 1e-9


def test_inequality_text_output_is_pipeable_json(fixtures_dir, tmp_path, capsys):
    # emit/augment print the inequality document itself, so shell pipelines
    # can feed one command's stdout into the next command's --ineq
    code = cli.main(
        [
            "inequality",
            "emit",
            "--vectors",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--members",
            "a1,a2,a3,a4",
            "--principal",
            "c1,c2,c3",
        ]
    )
    assert code == 0
    emitted = capsys.readouterr().out
    ineq_path = tmp_path / "piped.json"
    ineq_path.write_text(emitted)

    code = cli.main(
        ["inequality", "augment", "--ineq", str(ineq_path), "--add-context", "c1,c2,c3"]
    )
    assert code == 0
    augmented = json.loads(capsys.readouterr().out)
    assert augmented["bound"] == "2"


def test_inequality_evaluate_not_violated(fixtures_dir, tmp_path):
    ineq = {
        "coefficients": {"a1": "1"},
        "bound": "2",
        "kind": "state-independent",
        "side_constraints": [],
        "provenance": "test",
    }
    path = tmp_path / "weak.json"
    path.write_text(json.dumps(ineq))
    result = dispatch(
        [
            "inequality",
            "evaluate",
            "--ineq",
            str(path),
            "--vectors",
            fx(fixtures_dir, "yu_oh_all.json"),
            "--rho",
            "label:a1",
        ]
    )
    assert result.exit_code == 1
    assert result.payload["violated"] is False


def test_generate_states_and_scenarios():
    result = dispatch(["generate", "yu_oh_rays"])
    assert result.exit_code == 0
    assert result.payload["dimension"] == 3
    assert len(result.payload["states"]) == 4

    result = dispatch(["generate", "hadamard", "--d", "3", "--subset", "B0"])
    assert len(result.payload["states"]) == 4

    result = dispatch(["generate", "klyachko"])
    assert result.payload["partial_contexts"] == [
        ["0", "1"],
        ["0", "4"],
        ["1", "2"],
        ["2", "3"],
        ["3", "4"],
    ]

    result = dispatch(["generate", "classical", "--n", "3"])
    assert result.payload["contexts"] == [["x1", "x2", "x3"]]


def test_generate_rejects_bad_parameters():
    assert dispatch(["generate", "mub", "--d", "4"]).exit_code == 2
    assert dispatch(["generate", "unknown_family"]).exit_code == 2


def test_json_and_text_report_identical_numbers(fixtures_dir, capsys):
    argv = ["classical-bound", fx(fixtures_dir, "klyachko.json"), "--coeffs", "ones"]
    code = cli.main(argv + ["--format", "json"])
    json_out = capsys.readouterr().out
    assert code == 0
    assert json.loads(json_out)["bound"] == "2"
    code = cli.main(argv + ["--format", "text"])
    text_out = capsys.readouterr().out
    assert "bound: 2" in text_out


def test_global_flags_accepted_before_subcommand(fixtures_dir):
    result = dispatch(
        ["--format", "json", "validate", fx(fixtures_dir, "specker.json")]
    )
    assert result.exit_code == 0
    assert result.fmt == "json"


def test_stdin_input(fixtures_dir, monkeypatch):
    import io

    blob = (fixtures_dir / "specker.json").read_bytes()
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(blob)))
    result = dispatch(["validate", "-"])
    assert result.exit_code == 0


def test_reproduce_all_rows_pass():
    result = dispatch(["reproduce"])
    assert result.exit_code == 0
    assert all(row["pass"] for row in result.payload)
    assert {row["example"] for row in result.payload} >= {
        "specker",
        "klyachko",
        "yu-oh",
        "mub-d5",
        "sic-d3",
    }


def test_reproduce_loose_tolerance_still_passes():
    result = dispatch(["reproduce", "--tolerance", "1e-2"])
    assert result.exit_code == 0
    assert all(row["pass"] for row in result.payload)


def test_reproduce_fault_injection_names_the_broken_row(monkeypatch):
    import numpy as np

    true_generate = ensembles.generate_states

    def corrupted(spec):
        states = true_generate(spec)
        if spec.family == "mub":
            vectors = states.vectors.copy()
            # norm-preserving corruption: swap two components of one vector
            vectors[7][0], vectors[7][1] = vectors[7][1], vectors[7][0]
            return quantum.PureStateSet(states.dimension, states.labels, vectors)
        return states

    monkeypatch.setattr(cli.ensembles, "generate_states", corrupted)
    result = dispatch(["reproduce"])
    assert result.exit_code == 1
    failing = [row["example"] for row in result.payload if not row["pass"]]
    assert failing == ["mub-d5"]
