import json

import pytest

from caweave.cli import main

HYBRID = ["--poly", "1+x^2+x^5", "--seed", "11111", "--shifts", "0,17"]
LEN10 = ["--poly", "1+x^3+x^4", "--seed", "1111", "--shifts", "0,4"]
LEN14 = ["--poly", "1+x^2+x^3", "--seed", "111", "--shifts", "0,1"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestZech:
    def test_table(self, capsys):
        code, out, _ = run_cli(capsys, "zech", "--poly", "1+x+x^3")
        assert code == 0
        assert out.splitlines()[1].split()[1:] == ["inf", "3", "6", "1", "5", "4", "2"]

    def test_single(self, capsys):
        assert run_cli(capsys, "zech", "--poly", "1+x^3+x^4", "--t", "1")[1] == "12\n"
        assert run_cli(capsys, "zech", "--poly", "1+x+x^3", "--t", "0")[1] == "inf\n"

    def test_json_and_csv(self, capsys):
        _, out, _ = run_cli(capsys, "zech", "--poly", "1+x+x^3", "--format", "json")
        assert json.loads(out)["zech"] == ["inf", "3", "6", "1", "5", "4", "2"]
        _, out, _ = run_cli(capsys, "zech", "--poly", "1+x+x^3", "--format", "csv")
        assert out.splitlines()[:2] == ["t,zech", "0,inf"]

    def test_invalid(self, capsys):
        code, _, err = run_cli(capsys, "zech", "--poly", "1+x^2+x^4")
        assert code == 2 and "error" in err


class TestInterleave:
    def test_hybrid(self, capsys):
        code, out, _ = run_cli(capsys, "interleave", *HYBRID)
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "11101010100100001110011110100111011101000000110100110111100100"
        assert lines[1].startswith("period=62 lc=10 max_lc=true")

    def test_minpoly(self, capsys):
        _, out, _ = run_cli(capsys, "interleave", *LEN14)
        assert "lc=6" in out and "minpoly=(1+x^2+x^3)^2" in out

    def test_single_stream(self, capsys):
        _, out, _ = run_cli(capsys, "interleave", "--poly", "1+x^2+x^3", "--seed", "100", "--shifts", "0")
        assert out.splitlines()[0] == "1001110"

    def test_t_mismatch(self, capsys):
        assert run_cli(capsys, "interleave", *LEN14, "--t", "4")[0] == 2

    def test_bad_shifts(self, capsys):
        assert run_cli(capsys, "interleave", "--poly", "1+x^2+x^3", "--shifts", "0,a")[0] == 2


class TestSynth:
    def test_102(self, capsys):
        code, out, _ = run_cli(capsys, "synth", "--family", "102", *LEN10)
        assert code == 0
        assert "length=10" in out
        assert "recurrence_shifts=24,18,12,6" in out

    def test_102_csv(self, capsys):
        _, out, _ = run_cli(capsys, "synth", "--family", "102", *LEN14, "--format", "csv")
        rows = out.splitlines()
        assert rows[0] == "column_index,part_index,shift_or_ZERO"
        assert rows[1:5] == ["0,0,0", "0,1,1", "1,0,5", "1,1,ZERO"]

    def test_90150(self, capsys):
        code, out, _ = run_cli(capsys, "synth", "--family", "90150", *HYBRID)
        assert code == 0
        assert "rules=0111001110,1111111111" in out
        assert "verified=true,true" in out

    def test_90150_json(self, capsys):
        _, out, _ = run_cli(capsys, "synth", "--family", "90150", *HYBRID, "--format", "json")
        data = json.loads(out)
        assert data["rules"] == ["0111001110", "1111111111"]
        assert data["verified"] == [True, True]
        assert data["lengths"] == [10, 10]
        assert data["t"] == 2

    def test_degenerate_rejected(self, capsys):
        code, _, err = run_cli(capsys, "synth", "--family", "102", "--poly", "1+x^2+x^3", "--shifts", "0,4")
        assert code == 2 and "linear complexity" in err.lower()

    def test_render(self, capsys):
        _, out, _ = run_cli(capsys, "synth", "--family", "102", *LEN14, "--render")
        assert "█" in out

    def test_bad_cap(self, capsys):
        assert run_cli(capsys, "synth", "--family", "102", *LEN14, "--cap", "0")[0] == 2


class TestRun:
    def test_rule102(self, capsys):
        code, out, _ = run_cli(capsys, "run", "--rules", "102x3", "--init", "100", "--steps", "2")
        assert code == 0
        assert out.splitlines() == ["100", "101", "110"]

    def test_hybrid_null(self, capsys):
        _, out, _ = run_cli(capsys, "run", "--rules", "90,90,150", "--init", "100", "--steps", "1")
        assert out.splitlines() == ["100", "010"]

    def test_width_mismatch(self, capsys):
        assert run_cli(capsys, "run", "--rules", "102x3", "--init", "10", "--steps", "1")[0] == 2


class TestCompare:
    def test_both(self, capsys):
        _, out, _ = run_cli(capsys, "compare", *HYBRID, "--format", "json")
        data = json.loads(out)
        assert data["period"] == 62
        assert data["ca102_length"] == 62
        assert data["ca90150_length"] == 10


class TestReproduce:
    @pytest.mark.parametrize("table", ["table2a", "table2b", "table3a", "table3b", "table4", "table6", "table7a", "table7b", "ca102_len10", "ca102_len14", "ca102_len28"])
    def test_pass(self, capsys, table):
        code, out, _ = run_cli(capsys, "reproduce", table)
        assert code == 0
        assert all(ln.startswith("PASS") for ln in out.splitlines())

    def test_length_cells_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "table5", "--cells", "t3L3,t6L3")
        assert code == 0
        code, out, _ = run_cli(capsys, "reproduce", "table5", "--cells", "t3L3,t5L4")
        lines = out.splitlines()
        assert lines[0].startswith("PASS table5 t3L3")
        assert lines[1].startswith("FAIL table5 t5L4")
        assert code == 1

    def test_bad_cell(self, capsys):
        assert run_cli(capsys, "reproduce", "table5", "--cells", "t9L9")[0] == 2
        assert run_cli(capsys, "reproduce", "table5", "--cells", "x")[0] == 2


class TestPlumbing:
    def test_json_round_trip(self, capsys, tmp_path):
        _, out, _ = run_cli(capsys, "interleave", *HYBRID, "--format", "json")
        f = tmp_path / "spec.json"
        f.write_text(out)
        _, again, _ = run_cli(capsys, "interleave", "--spec", str(f), "--format", "json")
        assert again == out
        _, synth, _ = run_cli(capsys, "synth", "--family", "90150", "--spec", str(f), "--format", "json")
        assert json.loads(synth)["spec"] == json.loads(out)["spec"]

    def test_out_file(self, capsys, tmp_path):
        f = tmp_path / "z.txt"
        run_cli(capsys, "zech", "--poly", "1+x+x^3", "--t", "2", "--out", str(f))
        assert f.read_text() == "6\n"

    def test_deterministic(self, capsys):
        first = run_cli(capsys, "synth", "--family", "102", *LEN10, "--format", "json")
        assert run_cli(capsys, "synth", "--family", "102", *LEN10, "--format", "json") == first

    def test_missing_spec_file(self, capsys, tmp_path):
        assert run_cli(capsys, "interleave", "--spec", str(tmp_path / "none.json"))[0] == 2

    def test_env_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("CAWEAVE_MAX_L", "4")
        assert run_cli(capsys, "zech", "--poly", "1+x^2+x^5")[0] == 2

    def test_help_documents_formats(self, capsys):
        with pytest.raises(SystemExit):
            main(["--help"])
        out = capsys.readouterr().out
        assert "CAWEAVE_MAX_L" in out and "exit codes" in out
