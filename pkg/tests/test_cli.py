"""CLI tests: subcommands, output formats, and the exit-code contract."""

import pytest

from revarith.cli import main
from revarith.rnl import parse_netlist, write_netlist


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def fa_file(tmp_path):
    path = tmp_path / "fa.rnl"
    code = main(["gen", "full-adder", "-o", str(path)])
    assert code == 0
    return str(path)


class TestGen:
    def test_gen_to_stdout_parses_back(self, capsys):
        code, out, _ = run(capsys, "gen", "compressor42")
        assert code == 0
        assert parse_netlist(out).lines == 7

    def test_gen_ripple_to_file(self, tmp_path, capsys):
        path = tmp_path / "add4.rnl"
        code, _, _ = run(capsys, "gen", "ripple", "--bits", "4", "-o", str(path))
        assert code == 0
        assert parse_netlist(path.read_text()).lines == 13

    def test_ripple_requires_bits(self, capsys):
        code, _, err = run(capsys, "gen", "ripple")
        assert code == 2
        assert "requires --bits" in err

    def test_bits_rejected_for_fixed_families(self, capsys):
        code, _, err = run(capsys, "gen", "full-adder", "--bits", "3")
        assert code == 2


class TestSim:
    def test_full_adder_vector(self, fa_file, capsys):
        code, out, _ = run(capsys, "sim", fa_file, "--set", "A=1", "--set", "B=1", "--set", "Cin=1")
        assert code == 0
        assert out.strip() == "Sum=1 Cout=1"

    def test_missing_input(self, fa_file, capsys):
        code, _, err = run(capsys, "sim", fa_file, "--set", "A=1")
        assert code == 2
        assert "missing inputs" in err

    def test_bad_assignment_syntax(self, fa_file, capsys):
        code, _, err = run(capsys, "sim", fa_file, "--set", "A=2")
        assert code == 2


class TestVerify:
    def test_full_adder_passes(self, fa_file, capsys):
        code, out, _ = run(capsys, "verify", fa_file, "--spec", "fa", "--exhaustive")
        assert code == 0
        assert "PASS: 8 cases" in out

    def test_gen_then_verify_wallace(self, tmp_path, capsys):
        path = tmp_path / "mul8.rnl"
        assert main(["gen", "wallace", "--bits", "8", "-o", str(path)]) == 0
        code, out, _ = run(capsys, "verify", str(path), "--spec", "mul:8", "--exhaustive")
        assert code == 0
        assert "PASS: 65536 cases" in out

    def test_random_mode(self, tmp_path, capsys):
        path = tmp_path / "add8.rnl"
        assert main(["gen", "ripple", "--bits", "8", "-o", str(path)]) == 0
        code, out, _ = run(capsys, "verify", str(path), "--spec", "add:8", "--random", "500")
        assert code == 0
        assert "PASS: 500 cases" in out

    def test_failure_prints_first_counterexample(self, fa_file, tmp_path, capsys):
        # swap the two output labels so the netlist adds wrongly
        broken = (
            open(fa_file).read().replace("output 2 Sum 0", "output 2 Cout 1").replace(
                "output 3 Cout 1", "output 3 Sum 0"
            )
        )
        path = tmp_path / "broken.rnl"
        path.write_text(broken)
        code, out, _ = run(capsys, "verify", str(path), "--spec", "fa", "--exhaustive")
        assert code == 1
        assert "first counterexample: A=0 B=0 Cin=1" in out

    def test_unknown_spec(self, fa_file, capsys):
        code, _, err = run(capsys, "verify", fa_file, "--spec", "xor")
        assert code == 2


class TestMetrics:
    def test_kv_output(self, fa_file, capsys):
        code, out, _ = run(capsys, "metrics", fa_file, "--kv")
        assert code == 0
        lines = out.strip().splitlines()
        assert "total_gates=1" in lines
        assert "garbage_outputs=2" in lines
        assert "unit_delay=1" in lines
        assert "gates_by_kind.TSG=1" in lines

    def test_text_output(self, fa_file, capsys):
        code, out, _ = run(capsys, "metrics", fa_file)
        assert code == 0
        assert "total_gates" in out and "unit_delay" in out


class TestTruth:
    def test_csv_header_and_rows(self, fa_file, capsys):
        code, out, _ = run(capsys, "truth", fa_file)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "A,B,Cin,Sum,Cout"
        assert len(lines) == 9
        assert lines[1] == "0,0,0,0,0"
        assert lines[-1] == "1,1,1,1,1"

    def test_garbage_columns(self, fa_file, capsys):
        code, out, _ = run(capsys, "truth", fa_file, "--garbage")
        lines = out.strip().splitlines()
        assert lines[0] == "A,B,Cin,Sum,Cout,g0,g1"
        # garbage: line 0 passes A through, line 1 carries the Q output (A xor B)
        assert lines[2] == "0,0,1,1,0,0,0"
        assert lines[7] == "1,1,0,0,1,1,0"


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_arguments(self, capsys):
        assert run(capsys)[0] == 2

    def test_parse_error_reports_location(self, tmp_path, capsys):
        path = tmp_path / "bad.rnl"
        path.write_text("lines 0\n")
        code, _, err = run(capsys, "metrics", str(path))
        assert code == 2
        assert "line 1" in err

    def test_missing_file(self, capsys):
        assert run(capsys, "metrics", "/nonexistent/x.rnl")[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
