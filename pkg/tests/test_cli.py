import json

from drinfeld.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestPhi:
    def test_phi_T2_formula(self, capsys):
        code, out, _ = run_cli(capsys, "phi", "--q", "5", "--r", "3", "--a", "T^2")
        assert code == 0
        doc = json.loads(out)
        assert doc["phi_a"] == (
            "T^2 + (T^25+T)*t^2 + (T^129+T^5)*t^3 + t^4 + (T^100+T^4)*t^5 + T^504*t^6"
        )

    def test_ascending_input_accepted(self, capsys):
        code, out, _ = run_cli(capsys, "phi", "--q", "5", "--r", "3", "--a", "1+2*T")
        assert code == 0
        assert json.loads(out)["a"] == "2*T+1"

    def test_custom_coefficients(self, capsys):
        code, out, _ = run_cli(capsys, "phi", "--q", "5", "--coeffs", "T;1", "--a", "T")
        assert code == 0
        assert json.loads(out)["phi_a"] == "T + t"


class TestCharpoly:
    def test_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "charpoly", "--q", "5", "--r", "3", "--p", "T+4")
        assert code == 0
        doc = json.loads(out)
        assert doc["coefficients"] == ["1", "0", "4*T+1"]
        assert doc["epsilon"] == "4"

    def test_mod_l(self, capsys):
        code, out, _ = run_cli(capsys, "charpoly", "--q", "5", "--r", "3",
                               "--p", "T+4", "--mod-l", "T+3")
        doc = json.loads(out)
        assert doc["mod_l"]["charpoly"] == ["4", "0", "1"]

    def test_bad_reduction_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "charpoly", "--q", "5", "--r", "3", "--p", "T")
        assert code == 2
        assert "bad reduction" in err

    def test_malformed_polynomial_names_token(self, capsys):
        code, _, err = run_cli(capsys, "charpoly", "--q", "5", "--r", "3", "--p", "T^2+&y")
        assert code == 2
        assert "&y" in err

    def test_reducible_prime_rejected(self, capsys):
        code, _, err = run_cli(capsys, "charpoly", "--q", "5", "--r", "3", "--p", "T^2+1")
        assert code == 2
        assert "not irreducible" in err


class TestTorsion:
    def test_frobenius_matrix_json(self, capsys):
        code, out, _ = run_cli(capsys, "torsion", "--q", "5", "--r", "3",
                               "--p", "T+4", "--l", "T+3")
        assert code == 0
        doc = json.loads(out)
        assert doc["splitting_degree"] == 24
        assert doc["kernel_dimension"] == 3
        assert doc["charpoly"] == ["4", "0", "1"]
        assert len(doc["frobenius_matrix"]) == 3


class TestNewtonInertia:
    def test_newton_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "newton", "--q", "5", "--r", "3",
                               "--a", "T+4", "--place", "T")
        assert code == 0
        doc = json.loads(out)
        assert doc["segments"] == [
            {"slope": [0, 1], "length": 24},
            {"slope": [1, 25], "length": 100},
        ]

    def test_newton_at_infinity(self, capsys):
        code, out, _ = run_cli(capsys, "newton", "--q", "5", "--r", "3",
                               "--a", "T", "--place", "inf")
        doc = json.loads(out)
        assert doc["segments"] == [{"slope": [-3, 124], "length": 124}]

    def test_inertia(self, capsys):
        code, out, _ = run_cli(capsys, "inertia", "--q", "5", "--r", "3", "--l", "T^2+2")
        assert json.loads(out)["inertia_order"] == 625


class TestSample:
    def test_schema_and_values(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, _, _ = run_cli(capsys, "sample", "--q", "7", "--r", "3",
                             "--l", "T+6", "--max-deg", "1", "--out", str(out_path))
        assert code == 0
        doc = json.loads(out_path.read_text())
        assert set(doc) == {"params", "samples", "tv_distance", "flags", "verdict", "reasons"}
        assert doc["params"] == {"p": 7, "e": 1, "q": 7, "r": 3, "l": "T+6", "max_deg": 1}
        assert len(doc["samples"]) == 5
        rec = doc["samples"][0]
        assert set(rec) == {"prime", "deg", "charpoly", "det_ok"}
        assert rec["det_ok"] is True
        assert doc["verdict"] in ("consistent", "flagged")

    def test_verdict_field_matches_flags(self, capsys):
        code, out, _ = run_cli(capsys, "sample", "--q", "7", "--r", "3",
                               "--l", "T+6", "--max-deg", "2")
        doc = json.loads(out)
        assert doc["verdict"] == "flagged"  # not enough mass at max_deg 2
        assert any("tv_distance" in r for r in doc["reasons"])


class TestOracleGL:
    def test_rank1(self, capsys):
        code, out, _ = run_cli(capsys, "oracle-gl", "--q", "5", "--r", "1", "--l", "T+4")
        doc = json.loads(out)
        assert doc["group_order"] == 4
        assert doc["cells"] == 4

    def test_f3_counts(self, capsys):
        code, out, _ = run_cli(capsys, "oracle-gl", "--q", "3", "--r", "3",
                               "--l", "T+1", "--backend", "A")
        doc = json.loads(out)
        assert doc["group_order"] == 11232


class TestVerify:
    def test_single_suite_exit_zero(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "charpoly",
                                 "--q", "5", "--r", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["pass"] is True
        assert doc["outcomes"][0]["suite"] == "charpoly"
        assert "[pass] charpoly" in err

    def test_unknown_suite_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--suite", "nonsense")
        assert code == 2
        assert "unknown suite" in err

    def test_byte_identical_repeated_runs(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            code, _, _ = run_cli(capsys, "verify", "--suite", "phi", "--q", "5",
                                 "--r", "3", "--seed", "7", "--out", str(path))
            assert code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_failure_payload_reproduces(self, capsys, monkeypatch):
        # force a deterministic failure and check the counterexample payload
        # is identical across two runs
        import drinfeld.verify as verify_mod

        def broken(cfg):
            ch = verify_mod._Checker()
            ch.equal(1 + 1, 3, "forced failure", {"a": 1})
            return ch

        monkeypatch.setitem(verify_mod.SUITES, "charpoly", broken)
        code1, out1, _ = run_cli(capsys, "verify", "--suite", "charpoly")
        code2, out2, _ = run_cli(capsys, "verify", "--suite", "charpoly")
        assert code1 == code2 == 1
        doc1, doc2 = json.loads(out1), json.loads(out2)
        assert doc1 == doc2
        ce = doc1["outcomes"][0]["counterexample"]
        assert ce["check"] == "forced failure"
        assert ce["expected"] == "3"
        assert ce["got"] == "2"
