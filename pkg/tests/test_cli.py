"""Command-line client: rendering, exit codes, and JSON mode."""

import json

import pytest

from ngroups import group_dump, symmetric_group
from ngroups.cli import main

pytestmark = pytest.mark.filterwarnings("ignore::DeprecationWarning")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMembership:
    def test_member(self, capsys):
        code, out, _ = run(capsys, "membership", "[0,0,2]")
        assert code == 0
        assert "can belong" in out
        assert "identity: yes" in out

    def test_non_member_still_exits_zero(self, capsys):
        code, out, _ = run(capsys, "membership", "[0,0,1]")
        assert code == 0
        assert "cannot belong" in out

    def test_parse_error_exit_3(self, capsys):
        code, _, err = run(capsys, "membership", "[0,0")
        assert code == 3
        assert "parse" in err

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "--json", "membership", "[0,0,2]")
        assert code == 0
        body = json.loads(out)
        assert body["member"] is True

    def test_one_based_rendering(self, capsys):
        _, out, _ = run(capsys, "--one-based", "membership", "[0,0,2]")
        assert "[1,1,3]" in out

    def test_one_based_ignored_in_json(self, capsys):
        _, out, _ = run(capsys, "--json", "--one-based", "membership", "[0,0,2]")
        assert json.loads(out)["map"] == "[0,0,2]"


class TestSubcommands:
    def test_idempotents(self, capsys):
        code, out, _ = run(capsys, "idempotents", "3")
        assert code == 0
        assert "10 idempotents" in out

    def test_hclass(self, capsys):
        code, out, _ = run(capsys, "hclass", "[0,0,2]")
        assert code == 0
        assert "order 2" in out

    def test_max_ng(self, capsys):
        code, out, _ = run(capsys, "max-ng", "4")
        assert code == 0
        assert "order 6" in out

    def test_scan(self, capsys):
        code, out, _ = run(capsys, "scan", "3")
        assert code == 0
        assert "max NG order 2" in out
        assert "4 pools" in out

    def test_scan_cap_exit_4(self, capsys):
        code, _, err = run(capsys, "scan", "4")
        assert code == 4
        assert "cap-exceeded" in err

    def test_scan_bounded(self, capsys):
        code, out, _ = run(capsys, "scan", "4", "--bounded")
        assert code == 0
        assert "max NG order 6" in out

    def test_witness(self, capsys):
        code, out, _ = run(capsys, "witness", "4")
        assert code == 0
        assert "order 6" in out

    def test_rho_ok(self, capsys):
        code, out, _ = run(capsys, "rho", "[0,0,2]", "[2,2,0]")
        assert code == 0
        assert "quotient permutation group on 2 blocks" in out

    def test_rho_rejection_exit_5(self, capsys):
        code, out, _ = run(capsys, "rho", "[0,0,2]", "[1,1,2]")
        assert code == 5
        assert "no-identity" in out

    def test_semidirect(self, capsys):
        code, out, _ = run(capsys, "semidirect", "2,3")
        assert code == 0
        assert "order 12" in out

    def test_thm33_holds_exit_0(self, capsys):
        code, out, _ = run(capsys, "thm33", "2,3")
        assert code == 0
        assert "[holds]" in out


class TestFileCommands:
    @pytest.fixture()
    def s3file(self, tmp_path):
        path = tmp_path / "s3.json"
        path.write_text(json.dumps(group_dump(symmetric_group(3))))
        return str(path)

    def test_residual(self, capsys, s3file):
        code, out, _ = run(capsys, "residual", s3file, "--class", "p:2")
        assert code == 0
        assert "order 3" in out

    def test_radical(self, capsys, s3file):
        code, out, _ = run(capsys, "radical", s3file, "--class", "p:3")
        assert code == 0
        assert "order 3" in out

    def test_missing_file_exit_3(self, capsys):
        code, _, err = run(capsys, "residual", "/nonexistent.json", "--class", "p:2")
        assert code == 3

    def test_unparseable_file_exit_3(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = run(capsys, "residual", str(path), "--class", "p:2")
        assert code == 3
        assert "not valid JSON" in err

    def test_check_thm32_precondition_exit_6(self, capsys, s3file):
        code, out, _ = run(
            capsys, "check-thm32", s3file, "0,3,4", "0,3,4", "--class", "p:2"
        )
        assert code == 6
        assert "[precondition-failed]" in out

    def test_check_thm32_holds(self, capsys, s3file):
        code, out, _ = run(
            capsys, "check-thm32", s3file, "0,3,4", "0,1,2,3,4,5", "--class", "p:2"
        )
        assert code == 0
        assert "[holds]" in out


class TestUsage:
    def test_no_command_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_command_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_help_mentions_all_subcommands(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for cmd in (
            "membership", "idempotents", "hclass", "max-ng", "scan",
            "witness", "rho", "semidirect", "thm33", "residual",
            "radical", "check-thm32", "verify-all", "serve",
        ):
            assert cmd in out


class TestVerifyAll:
    def test_small_run(self, capsys):
        code, out, _ = run(capsys, "verify-all", "--max-n", "2")
        assert code == 0
        assert out.count("[PASS]") == 9
        assert "all criteria passed" in out
