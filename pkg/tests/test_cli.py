"""Tests for the command-line surface."""

import io
import json

import pytest

from app.config.settings import Settings
from app.controllers.cli_controller import (
    CLIController, EXIT_DOMAIN_ERROR, EXIT_MISMATCH, EXIT_OK,
    make_table, parse_matrix, parse_weight, split_label,
)
from app.models.monoid import Variant
from app.models.report import Mismatch, VerificationReport, VerificationSummary
from app.services.errors import UnknownVariantError, WeightFormatError
from app.services.verify import VerificationService
from main import build_parser, main


async def run(capsys, *argv):
    code = await main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestHelpers:
    def test_split_label(self):
        assert split_label("A1tilde~closure", None) == ("A1tilde", (Variant.CLOSURE, None))
        assert split_label("X_2", "cover") == ("X_2", (Variant.COVER, None))
        assert split_label("X_2~O", "cover") == ("X_2", (Variant.ORBIT, None))
        assert split_label("exp(pi i w2)~isogeny:Z", None) == ("exp(pi i w2)", (Variant.ISOGENY, "Z"))
        with pytest.raises(UnknownVariantError):
            split_label("X_2~normalization", None)

    def test_parse_weight(self):
        assert parse_weight("0,1,2", 3).coords == (0, 1, 2)
        with pytest.raises(WeightFormatError):
            parse_weight("0,1", 3)
        with pytest.raises(WeightFormatError):
            parse_weight("a,b,c", 3)

    def test_parse_matrix(self):
        assert parse_matrix("1,2;3,4") == [[1, 2], [3, 4]]
        with pytest.raises(WeightFormatError):
            parse_matrix("1,2;3")
        with pytest.raises(WeightFormatError):
            parse_matrix("1,x")

    def test_make_table(self):
        text = make_table([["class", "dim"], ["X_1", "4"]])
        assert text.splitlines() == ["|class|dim|", "|-----|---|", "|X_1  |4  |"]

    def test_shared_flags_after_subcommand(self):
        args = build_parser().parse_args(["table", "G2", "--format", "json"])
        assert args.format == "json"
        args = build_parser().parse_args(["--format", "latex", "table", "G2"])
        assert args.format == "latex"


class TestCommands:
    @pytest.mark.asyncio
    async def test_show(self, capsys):
        code, out, _ = await run(capsys, "show", "C3", "X_2", "--variant", "O")
        assert code == EXIT_OK
        assert "generators: 2w1, 2w2" in out.splitlines()

    @pytest.mark.asyncio
    async def test_show_cover_json(self, capsys):
        code, out, _ = await run(capsys, "show", "C3", "X_2~cover", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["variant"] == "cover"
        assert data["monoid"]["generators"] == ["2w1", "w2"]
        assert data["statistics"]["component_order"] == 2

    @pytest.mark.asyncio
    @pytest.mark.parametrize("argv,answer", [
        (("member", "E7", "4A1", "0,1,0,0,1,0,0"), "true"),
        (("member", "E7", "4A1", "0,1,0,0,0,0,0"), "false"),
        (("member", "G2", "A1tilde~closure", "1,0"), "false"),
        (("member", "G2", "A1tilde", "1,0"), "true"),
        (("member", "B3", "Z_2", "1,0,0", "--variant", "closure"), "false"),
    ])
    async def test_member(self, capsys, argv, answer):
        code, out, _ = await run(capsys, *argv)
        assert code == EXIT_OK
        assert out.strip() == answer

    @pytest.mark.asyncio
    @pytest.mark.parametrize("argv", [
        ("show", "C3", "X_9"),
        ("show", "H3", "X_1"),
        ("show", "E9", "A1"),
        ("member", "C3", "X_2", "1,0"),
        ("member", "C3", "X_2", "1,0,0", "--variant", "isogeny:Z"),
        ("show", "C3", "X_2~sideways"),
        ("table",),
        ("table", "G2", "--format", "yaml"),
        ("verify", "--max-coeff", "0"),
        ("snf", "1,2;3"),
    ])
    async def test_domain_errors(self, capsys, argv):
        code, out, err = await run(capsys, *argv)
        assert code == EXIT_DOMAIN_ERROR
        assert out == ""
        assert err.splitlines()[-1].startswith("error:")

    @pytest.mark.asyncio
    @pytest.mark.parametrize("group,label", [("C3", "X_2~cover"), ("E7", "4A1"), ("B3", "Z_2~closure")])
    async def test_shown_generators_are_members(self, capsys, group, label):
        code, out, _ = await run(capsys, "show", group, label, "--format", "json")
        assert code == EXIT_OK
        for coords in json.loads(out)["monoid"]["generator_coordinates"]:
            weight = ",".join(str(x) for x in coords)
            code, answer, _ = await run(capsys, "member", group, label, weight)
            assert (code, answer.strip()) == (EXIT_OK, "true")

    @pytest.mark.asyncio
    async def test_list(self, capsys):
        code, out, _ = await run(capsys, "list", "G2")
        assert code == EXIT_OK
        assert out.strip() == "G2: A1, A1tilde, exp(pi i w2), exp(2pi i/3 w1)"

    @pytest.mark.asyncio
    async def test_list_respects_rank_max(self, capsys):
        code, out, _ = await run(capsys, "list", "--rank-max", "2", "--format", "json")
        assert code == EXIT_OK
        assert set(json.loads(out)) == {"A1", "A2", "B2", "C2", "G2"}

    @pytest.mark.asyncio
    async def test_table_formats(self, capsys):
        code, out, _ = await run(capsys, "table", "G2", "--format", "json")
        assert code == EXIT_OK
        rows = {r["label"]: r for r in json.loads(out)["classes"]}
        assert rows["A1tilde"]["orbit"] == ["w1", "w2"]
        assert rows["A1tilde"]["normal_closure"] is False

        code, out, _ = await run(capsys, "table", "G2", "--format", "latex")
        assert code == EXIT_OK
        assert out.startswith(r"\begin{tabular}")
        assert r"A1tilde & $\omega_1, \omega_2$" in out

        code, out, _ = await run(capsys, "table", "C3")
        assert code == EXIT_OK
        assert out.splitlines()[0].startswith("|class")

    @pytest.mark.asyncio
    async def test_snf(self, capsys):
        code, out, _ = await run(capsys, "snf", "2,4,4;-6,6,12;10,-4,-16")
        assert code == EXIT_OK
        assert "divisors: [2, 6, 12]" in out

    @pytest.mark.asyncio
    async def test_verify_writes_report(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = await run(
            capsys, "verify", "--group", "C3", "--group", "G2", "--max-coeff", "3",
            "--workers", "2", "--executor", "thread", "--structure", "--output", str(target),
        )
        assert code == EXIT_OK
        assert "PASS" in out
        data = json.loads(target.read_text(encoding="utf-8"))
        assert data["passed"] is True
        assert "C3:X_2" in [r["class_id"] for r in data["reports"]]


class TestMismatchExitCode:
    @pytest.mark.asyncio
    async def test_failed_summary_exits_with_mismatch(self, monkeypatch):
        failing = VerificationSummary.merged([
            VerificationReport("A1:X_1", 2, ["O"], 3, [Mismatch("2w1", "O", True, False)])
        ])

        async def fake_verify_catalog(self, groups, structure=False, minima=False):
            return failing

        monkeypatch.setattr(VerificationService, "verify_catalog", fake_verify_catalog)
        out = io.StringIO()
        controller = CLIController(Settings(), out=out)
        assert await controller.cmd_verify(["A1"]) == EXIT_MISMATCH
        assert "MISMATCH A1:X_1 [O] 2w1: expected True, got False" in out.getvalue()
        assert "FAIL" in out.getvalue()
