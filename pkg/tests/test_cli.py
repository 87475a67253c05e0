import io
import json
import re
import subprocess
import sys

import pytest

from elpbank.cli import RunReport, parse_inputs, render_report, run
from elpbank.corpus import builtin
from elpbank.svp import BankPair, SvpCertificate


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def ex1_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("ex1")
    code, _ = call("corpus", "example1", "--a", "1/2", "--synthesize", "--export", str(d))
    assert code == 0
    return d


class TestCorpusCommand:
    def test_example3_end_to_end(self):
        code, out = call("corpus", "example3", "--synthesize", "--muep-verify", "--json")
        report = json.loads(out)
        assert code == 0
        bank = report["banks"]["synthesized"]
        assert bank["s"] == 5 and bank["kind"] == "quasi-tight"
        assert report["verdicts"]["exact"]["muep_exact"] == "holds"

    def test_tight_variant(self):
        code, out = call("corpus", "example3", "--tight", "--synthesize", "--json")
        assert code == 0 and json.loads(out)["banks"]["synthesized"]["kind"] == "tight"

    def test_table_has_factored_residual_and_scientific_grid(self):
        code, out = call("corpus", "example3", "--muep-verify", "--grid", "16")
        assert code == 0
        assert "1 - H G* = (" in out and "conj(" in out
        assert re.search(r"muep_grid_max_deviation\s+\d\.\d{2}e[+-]\d{2}", out)

    def test_json_is_byte_stable(self):
        first = call("corpus", "example2", "--synthesize", "--muep-verify", "--grid", "8", "--json")
        second = call("corpus", "example2", "--synthesize", "--muep-verify", "--grid", "8", "--json")
        assert first == second

    def test_unknown_parameter(self):
        assert call("corpus", "example1", "--a", "x")[0] == 2
        assert call("corpus", "example1")[0] == 2


class TestFileCommands:
    def test_svp_verify(self, ex1_dir):
        code, out = call("svp-verify", str(ex1_dir / "h.json"), str(ex1_dir / "cert.json"))
        assert code == 0 and "core_identity" in out

    def test_tampered_generator_exit_1(self, ex1_dir, tmp_path):
        cert = json.loads((ex1_dir / "cert.json").read_text())
        cert["L"][0][0]["coeff"][0]["num"] *= 3
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(cert))
        code, out = call("svp-verify", str(ex1_dir / "h.json"), str(bad), "--json")
        assert code == 1
        verdict = json.loads(out)["verdicts"]["exact"]["svp"]
        assert "vanish" in verdict or "residual" in verdict

    def test_muep_and_extract(self, ex1_dir, tmp_path):
        assert call("muep-verify", str(ex1_dir / "bank.json"), "--grid", "8")[0] == 0
        out_cert = tmp_path / "ext.json"
        assert call("extract-svp", str(ex1_dir / "bank.json"), "-o", str(out_cert))[0] == 0
        assert parse_inputs([str(out_cert)])["certificates"][0].J > 0

    def test_synthesize_writes_bank(self, ex1_dir, tmp_path):
        out_bank = tmp_path / "bank.json"
        code, _ = call("synthesize", str(ex1_dir / "h.json"), str(ex1_dir / "cert.json"), "-o", str(out_bank), "--grid", "8")
        assert code == 0
        assert parse_inputs([str(out_bank)])["banks"][0] == parse_inputs([str(ex1_dir / "bank.json")])["banks"][0]

    def test_apply_and_pr_check(self, ex1_dir, tmp_path):
        sig = tmp_path / "x.json"
        sig.write_text(json.dumps({"dim": 2, "samples": [{"k": [0, 0], "value": "1/3"}, {"k": [2, -1], "value": "-5"}]}))
        assert call("pr-check", str(ex1_dir / "bank.json"), str(sig))[0] == 0
        coeffs = tmp_path / "c.json"
        assert call("apply", str(ex1_dir / "bank.json"), str(sig), "-o", str(coeffs))[0] == 0
        assert len(json.loads(coeffs.read_text())["coefficients"]) == 11

    def test_polyphase_residual_subqmf(self, ex1_dir):
        for cmd in ("polyphase", "residual", "sub-qmf"):
            assert call(cmd, str(ex1_dir / "h.json"))[0] == 0


class TestInputErrors:
    def test_non_expanding(self):
        assert call("validate", "--lambda", "[[1,0],[0,1]]")[0] == 2

    def test_validate_ok(self, ex1_dir):
        assert call("validate", "--lambda", "[[1,1],[1,-1]]")[0] == 0
        assert call("validate", *[str(p) for p in sorted(ex1_dir.iterdir())])[0] == 0

    def test_radicand_not_squarefree(self, tmp_path):
        f = tmp_path / "h.json"
        f.write_text(json.dumps({"scheme": {"lambda": [[2]]}, "taps": [{"m": [0], "coeff": [{"num": 1, "den": 2, "rad": 12}]}]}))
        assert call("polyphase", str(f))[0] == 2

    def test_zero_tap(self, tmp_path):
        f = tmp_path / "h.json"
        f.write_text(json.dumps({"scheme": {"lambda": [[2]]}, "taps": [{"m": [0], "coeff": 0}]}))
        assert call("polyphase", str(f))[0] == 2

    def test_malformed_json_names_line(self, tmp_path, capsys):
        f = tmp_path / "h.json"
        f.write_text('{"taps":\n [}')
        assert call("polyphase", str(f))[0] == 2
        assert "line 2" in capsys.readouterr().err

    def test_missing_file_and_bad_command(self):
        assert call("polyphase", "/nonexistent.json")[0] == 2
        assert call("frobnicate")[0] == 2

    def test_not_lowpass(self, tmp_path):
        f = tmp_path / "h.json"
        f.write_text(json.dumps({"scheme": {"lambda": [[2]]}, "taps": [{"m": [0], "coeff": 1}]}))
        assert call("residual", str(f))[0] == 2


class TestRoundtrip:
    @pytest.mark.parametrize("name", ["haar", "example2", "example3"])
    def test_export_parse_structurally_equal(self, name, tmp_path):
        assert call("corpus", name, "--synthesize", "--export", str(tmp_path))[0] == 0
        e = builtin(name)
        parsed = parse_inputs([str(tmp_path / "h.json"), str(tmp_path / "cert.json"), str(tmp_path / "bank.json")])
        assert parsed["filters"][0] == e.lowpass
        assert parsed["certificates"][0] == SvpCertificate(e.certificate.K, e.certificate.L, parsed["certificates"][0].note)
        assert parsed["banks"][0] == e.synthesize()


class TestReport:
    def test_exit_zero_requires_all_exact_holds(self):
        r = RunReport("x")
        r.exact["a"] = "holds"
        r.record_numeric("grid", 1e-17, True)
        assert r.exit_code == 0
        r.exact["b"] = "fails: something"
        assert r.exit_code == 1

    def test_numeric_pass_does_not_rescue_exact_failure(self):
        r = RunReport("x")
        r.exact["muep_exact"] = "fails: entry (0, 1)"
        r.record_numeric("muep_grid_max_deviation", 0.0, True)
        assert r.exit_code == 1 and json.loads(render_report(r, "json"))["status"] == "fail"

    def test_timings_only_on_request(self):
        r = RunReport("x")
        r.timings["t"] = 0.5
        assert "timings" not in json.loads(render_report(r, "json"))
        assert "timings" in json.loads(render_report(r, "json", with_timings=True))

    def test_console_script(self):
        proc = subprocess.run([sys.executable, "-m", "elpbank.cli", "corpus", "haar", "--json"], capture_output=True, text=True)
        assert proc.returncode == 0 and json.loads(proc.stdout)["status"] == "pass"
