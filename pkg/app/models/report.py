"""
Verification report models.

Reports are plain dataclasses serialized with dataclasses-json so that CI can
diff them; keys are emitted sorted.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from dataclasses_json import dataclass_json


@dataclass_json
@dataclass
class Mismatch:
    """
    One disagreement between the engine and an oracle.

    Attributes:
        subject: Weight label, or the name of a structural check
        variant: Monoid variant ("O", "cover", "closure", "isogeny:<tag>") or "structure"
        expected: Oracle answer
        got: Engine answer
        detail: Free-form context
    """
    subject: str
    variant: str
    expected: bool
    got: bool
    detail: str = ""


@dataclass_json
@dataclass
class VerificationReport:
    """Outcome of checking one class (or one named check) up to a bound."""
    class_id: str
    checked_bound: int
    variants: List[str] = field(default_factory=list)
    checked: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two reports on the same class."""
        return VerificationReport(
            class_id=self.class_id,
            checked_bound=max(self.checked_bound, other.checked_bound),
            variants=sorted(set(self.variants) | set(other.variants)),
            checked=self.checked + other.checked,
            mismatches=self.mismatches + other.mismatches,
            elapsed=self.elapsed + other.elapsed,
        )


@dataclass_json
@dataclass
class VerificationSummary:
    """All reports of a run, merged by class id."""
    reports: List[VerificationReport] = field(default_factory=list)
    elapsed: float = 0.0

    @classmethod
    def merged(cls, reports: List[VerificationReport], elapsed: float = 0.0) -> "VerificationSummary":
        by_id: Dict[str, VerificationReport] = {}
        for report in reports:
            current = by_id.get(report.class_id)
            by_id[report.class_id] = report if current is None else current.merge(report)
        return cls(reports=[by_id[k] for k in sorted(by_id)], elapsed=elapsed)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def mismatch_count(self) -> int:
        return sum(len(r.mismatches) for r in self.reports)

    def to_sorted_json(self) -> str:
        data: Dict[str, Any] = self.to_dict()
        data["passed"] = self.passed
        data["mismatch_count"] = self.mismatch_count
        return json.dumps(data, indent=2, sort_keys=True)
