"""Verification report: named checks with status and provenance."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

FORMAT_VERSION = "kervaire-report/1"

HARD = "hard"
PAPER = "paper-comparison"

PASS = "pass"
FAIL = "fail"
MISMATCH = "mismatch"


@dataclass(frozen=True)
class Check:
    name: str
    category: str
    computed: str
    expected: str
    status: str
    provenance: str

    def line(self) -> str:
        tag = {PASS: "PASS", FAIL: "FAIL", MISMATCH: "MISMATCH"}[self.status]
        exp = "" if self.expected == "n/a" else f" (expected {self.expected})"
        return f"[{tag:8}] {self.name}: {self.computed}{exp}"


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def hard(name: str, ok: bool, computed: Any, expected: Any = "n/a", provenance: str = "") -> Check:
    return Check(name, HARD, _fmt(computed), _fmt(expected), PASS if ok else FAIL, provenance)


def hard_equal(name: str, computed: Any, expected: Any, provenance: str = "") -> Check:
    return hard(name, computed == expected, computed, expected, provenance)


def compare(name: str, computed: Any, expected: Any, provenance: str) -> Check:
    """Comparison against a value stated in the source; never fails the run."""
    status = PASS if _fmt(computed) == _fmt(expected) else MISMATCH
    return Check(name, PAPER, _fmt(computed), _fmt(expected), status, provenance)


def note(name: str, computed: Any, provenance: str) -> Check:
    """A recorded value with nothing to compare against."""
    return Check(name, PAPER, _fmt(computed), "n/a", PASS, provenance)


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    sections: list[tuple[str, int]] = field(default_factory=list)  # (title, index of first check)
    notes: list[str] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def section(self, title: str, checks: Iterable[Check]) -> None:
        self.sections.append((title, len(self.checks)))
        self.checks.extend(checks)

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    @property
    def hard_failures(self) -> list[Check]:
        return [c for c in self.checks if c.category == HARD and c.status == FAIL]

    @property
    def mismatches(self) -> list[Check]:
        return [c for c in self.checks if c.status == MISMATCH]

    def exit_code(self) -> int:
        return 1 if self.hard_failures else 0

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_text(self) -> str:
        out = []
        starts = {i: t for t, i in self.sections}
        for n in self.notes:
            out.append(f"# {n}")
        for i, c in enumerate(self.checks):
            if i in starts:
                out.append("")
                out.append(f"== {starts[i]} ==")
            out.append(c.line())
        n_hard = sum(c.category == HARD for c in self.checks)
        out.append("")
        out.append(
            f"{n_hard - len(self.hard_failures)}/{n_hard} hard checks pass; "
            f"{len(self.mismatches)} paper-comparison mismatches"
        )
        return "\n".join(out) + "\n"

    def to_machine(self) -> str:
        starts = {i: t for t, i in self.sections}
        section = None
        rows = []
        for i, c in enumerate(self.checks):
            section = starts.get(i, section)
            rows.append({"section": section, **asdict(c)})
        doc = {
            "format": FORMAT_VERSION,
            "metadata": self.metadata,
            "notes": self.notes,
            "summary": {
                "checks": len(self.checks),
                "hard_failures": len(self.hard_failures),
                "mismatches": len(self.mismatches),
            },
            "checks": rows,
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
