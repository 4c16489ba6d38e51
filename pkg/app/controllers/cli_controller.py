"""
Command-line controller for the spherical monoid engine.

Routes parsed commands to the catalog, monoid and verification services and
renders their results. Data goes to the output stream (stdout by default);
diagnostics go through logging, which writes to stderr.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from app.config.settings import Settings
from app.models.catalog import ClassDescriptor
from app.models.lie import CartanType, Weight
from app.models.monoid import Variant, WeightMonoid
from app.services import intlat
from app.services.catalog import instantiate, list_groups, lookup, parse_group
from app.services.errors import UnknownVariantError, WeightFormatError
from app.services.monoid import class_statistics, lambda_O, lambda_O_hat, monoid_for, variant_name
from app.services.verify import VerificationService


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_MISMATCH = 2


def split_label(label: str, variant: Optional[str]) -> Tuple[str, Tuple[Variant, Optional[str]]]:
    """Resolve "label~variant" shorthand; the suffix wins over --variant."""
    if "~" in label:
        label, variant = label.split("~", 1)
    try:
        return label, Variant.parse(variant or "O")
    except ValueError as e:
        raise UnknownVariantError(str(e)) from None


def parse_weight(text: str, rank: int) -> Weight:
    try:
        weight = Weight.parse(text)
    except ValueError as e:
        raise WeightFormatError(str(e)) from None
    if weight.rank != rank:
        raise WeightFormatError(f"Expected {rank} coordinates, got {weight.rank}: {text!r}")
    return weight


def parse_matrix(text: str) -> List[List[int]]:
    """Parse "a,b;c,d" into rows."""
    try:
        rows = [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise WeightFormatError(f"Malformed integer matrix: {text!r}") from None
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise WeightFormatError(f"Matrix rows must be nonempty and of equal length: {text!r}")
    return rows


def generator_list(m: WeightMonoid) -> str:
    return ", ".join(g.label() for g in m.generators)


def _latex_weight(weight: Weight) -> str:
    return weight.label().replace("w", r"\omega_")


def _latex_escape(text: str) -> str:
    return text.replace("_", r"\_").replace("~", r"\~{}")


def make_table(rows: List[List[str]]) -> str:
    """Markdown-style table with columns padded to their widest cell."""
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]

    def render(row: Sequence[str]) -> str:
        return "|%s|" % "|".join("%-*s" % (widths[i], cell) for i, cell in enumerate(row))

    separator = "|%s|" % "|".join("-" * w for w in widths)
    return "\n".join([render(rows[0]), separator] + [render(r) for r in rows[1:]])


class CLIController:
    """
    Handles one command per invocation.

    Every cmd_* method writes its result to the output stream and returns the
    process exit code.
    """

    def __init__(self, config: Settings, out: Optional[TextIO] = None):
        self.config = config
        self.out = out or sys.stdout

    def _emit(self, text: str) -> None:
        self.out.write(text + "\n")

    def _emit_json(self, data: Any) -> None:
        self._emit(json.dumps(data, indent=2, sort_keys=True))

    async def dispatch(self, args) -> int:
        command = args.command
        logger.debug("Dispatching command", extra={"command": command})
        if command == "list":
            return self.cmd_list(args.group)
        if command == "show":
            return self.cmd_show(args.group, args.label, args.variant)
        if command == "member":
            return self.cmd_member(args.group, args.label, args.weight, args.variant)
        if command == "table":
            return self.cmd_table(args.group)
        if command == "verify":
            return await self.cmd_verify(args.group, minima=args.minima, structure=args.structure)
        if command == "snf":
            return self.cmd_snf(args.matrix)
        raise ValueError(f"Unknown command: {command}")

    # Queries

    def cmd_list(self, group: Optional[str] = None) -> int:
        groups = [parse_group(group)] if group else list_groups(self.config.engine.rank_max)
        listing = {str(t): [c.label for c in instantiate(t)] for t in groups}
        if self.config.output.format == "json":
            self._emit_json(listing)
        else:
            for name, labels in listing.items():
                self._emit(f"{name}: {', '.join(labels)}")
        return EXIT_OK

    def _resolve(self, group: str, label: str, variant: Optional[str]):
        t = parse_group(group)
        label, (kind, tag) = split_label(label, variant)
        return t, lookup(t, label), kind, tag

    def cmd_show(self, group: str, label: str, variant: Optional[str] = None) -> int:
        _, c, kind, tag = self._resolve(group, label, variant)
        m = monoid_for(c, kind, tag)
        name = variant_name(kind, tag)
        if self.config.output.format == "json":
            self._emit_json({
                "class": c.to_dict(),
                "variant": name,
                "monoid": m.to_dict(),
                "statistics": class_statistics(c),
            })
            return EXIT_OK
        stats = class_statistics(c)
        self._emit(f"class: {c.group} {c.label} ({c.kind.value})")
        self._emit(f"variant: {name}")
        self._emit(f"P+_w basis: {', '.join(b.label() for b in m.ambient_basis) or '-'}")
        self._emit(f"generators: {generator_list(m)}")
        self._emit(
            f"dimension: {stats['dimension']}  normal closure: {stats['normal_closure']}  "
            f"model: {stats['model']}"
        )
        return EXIT_OK

    def cmd_member(self, group: str, label: str, weight: str, variant: Optional[str] = None) -> int:
        t, c, kind, tag = self._resolve(group, label, variant)
        answer = monoid_for(c, kind, tag).contains(parse_weight(weight, t.rank))
        if self.config.output.format == "json":
            self._emit_json({"class_id": c.class_id, "variant": variant_name(kind, tag),
                             "weight": weight, "member": answer})
        else:
            self._emit("true" if answer else "false")
        return EXIT_OK

    # Tables

    def _table_rows(self, classes: List[ClassDescriptor]) -> List[Dict[str, Any]]:
        rows = []
        for c in classes:
            stats = class_statistics(c)
            rows.append({
                "label": c.label,
                "kind": c.kind.value,
                "J": list(c.J),
                "orbit": [g.label() for g in lambda_O(c).generators],
                "cover": [g.label() for g in lambda_O_hat(c).generators],
                "dimension": stats["dimension"],
                "normal_closure": c.normal_closure,
            })
        return rows

    def cmd_table(self, group: str) -> int:
        t = parse_group(group)
        classes = instantiate(t)
        fmt = self.config.output.format
        if fmt == "json":
            self._emit_json({"group": str(t), "classes": self._table_rows(classes)})
        elif fmt == "latex":
            self._emit(self._latex_table(t, classes))
        else:
            header = ["class", "kind", "lambda(O)", "lambda(O^)", "dim", "normal"]
            body = [
                [r["label"], r["kind"], ", ".join(r["orbit"]), ", ".join(r["cover"]),
                 str(r["dimension"]), "yes" if r["normal_closure"] else "no"]
                for r in self._table_rows(classes)
            ]
            self._emit(make_table([header] + body))
        return EXIT_OK

    @staticmethod
    def _latex_table(t: CartanType, classes: List[ClassDescriptor]) -> str:
        lines = [
            r"\begin{tabular}{|l|l|l|}",
            r"\hline",
            rf"${t}$ & $\lambda(\mathcal{{O}})$ & $\lambda(\hat{{\mathcal{{O}}}})$ \\",
            r"\hline",
        ]
        for c in classes:
            orbit = ", ".join(_latex_weight(g) for g in lambda_O(c).generators)
            cover = ", ".join(_latex_weight(g) for g in lambda_O_hat(c).generators)
            lines.append(rf"{_latex_escape(c.label)} & ${orbit}$ & ${cover}$ \\")
        lines += [r"\hline", r"\end{tabular}"]
        return "\n".join(lines)

    # Verification

    async def cmd_verify(self, groups: Optional[List[str]] = None,
                         minima: bool = False, structure: bool = False) -> int:
        engine = self.config.engine
        types = [parse_group(g) for g in groups] if groups else list_groups(engine.rank_max)
        service = VerificationService(
            workers=engine.workers, executor=engine.executor,
            bound=engine.verify_bound, chain_bound=engine.chain_bound,
        )
        summary = await service.verify_catalog(types, structure=structure, minima=minima)
        document = summary.to_sorted_json()

        if self.config.output.output_path:
            Path(self.config.output.output_path).write_text(document + "\n", encoding="utf-8")
        if self.config.output.format == "json":
            self._emit(document)
        else:
            for report in summary.reports:
                for mismatch in report.mismatches:
                    self._emit(
                        f"MISMATCH {report.class_id} [{mismatch.variant}] {mismatch.subject}: "
                        f"expected {mismatch.expected}, got {mismatch.got} {mismatch.detail}".rstrip()
                    )
            self._emit(
                f"checked {len(summary.reports)} reports, "
                f"{summary.mismatch_count} mismatches, "
                f"{'PASS' if summary.passed else 'FAIL'} in {summary.elapsed:.2f}s"
            )
        return EXIT_OK if summary.passed else EXIT_MISMATCH

    # Lattices

    def cmd_snf(self, matrix: str) -> int:
        snf = intlat.smith_normal_form(parse_matrix(matrix))
        if self.config.output.format == "json":
            self._emit_json(snf.to_dict())
            return EXIT_OK
        for name, rows in (("D", snf.D), ("U", snf.U), ("V", snf.V)):
            self._emit(f"{name}:")
            for row in rows:
                self._emit("  " + " ".join(f"{x:>4}" for x in row))
        self._emit(f"divisors: {snf.divisors}")
        return EXIT_OK
