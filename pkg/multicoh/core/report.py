"""
Check reports.

Every checker returns a Report: how many instances of each axiom were examined and the
violations found, each with a witness naming the failing instance.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from multicoh.core.ids import encode_id


def witness(*parts: Any) -> str:
    """
    Format a witness tuple for a report.

    >>> witness("sig", ("a", "b"), 3)
    'sig (a,b) 3'
    """
    return " ".join(encode_id(p) for p in parts)


@dataclass
class Violation:
    """A single failed axiom instance."""
    axiom: str
    witness: str
    detail: str = ""

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)


@dataclass
class Report:
    """
    Result of a checker run.

    ``checked`` keeps axiom names in first-seen order so renderings are stable.
    """
    subject: str
    checked: Dict[str, int] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def tick(self, axiom: str, count: int = 1) -> None:
        self.checked[axiom] = self.checked.get(axiom, 0) + count

    def fail(self, axiom: str, where: str, detail: str = "") -> None:
        self.checked.setdefault(axiom, 0)
        self.violations.append(Violation(axiom, where, detail))

    def expect(self, condition: bool, axiom: str, where: str, detail: str = "") -> bool:
        """
        Count one instance of an axiom and record a violation if the condition is false.

        Returns:
            The condition, so callers can skip dependent checks.
        """
        self.tick(axiom)
        if not condition:
            self.fail(axiom, where, detail)
        return condition

    def merge(self, other: "Report") -> "Report":
        """Add the counts and violations of another report to this one."""
        for axiom, count in other.checked.items():
            self.tick(axiom, count)
        self.violations.extend(other.violations)
        return self

    def extend(self, reports: Iterable["Report"]) -> "Report":
        for r in reports:
            self.merge(r)
        return self

    def axioms(self) -> List[str]:
        return list(self.checked)

    def failures_for(self, axiom: str) -> List[Violation]:
        return [v for v in self.violations if v.axiom == axiom]

    def failed_axioms(self) -> List[str]:
        seen: Dict[str, None] = {}
        for v in self.violations:
            seen.setdefault(v.axiom, None)
        return list(seen)

    def first_witness(self, axiom: str) -> Optional[str]:
        failures = self.failures_for(axiom)
        return failures[0].witness if failures else None

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "subject": self.subject,
            "passed": self.passed,
            "axioms": [
                {
                    "axiom": axiom,
                    "checked": count,
                    "failures": len(self.failures_for(axiom)),
                    "first_witness": self.first_witness(axiom),
                }
                for axiom, count in self.checked.items()
            ],
            "violations": [v.to_dict() for v in self.violations],
        }

    def render_text(self, max_violations: int = 20) -> str:
        """Human-readable rendering: one line per axiom, then the first violations."""
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for axiom, count in self.checked.items():
            failures = self.failures_for(axiom)
            status = "ok" if not failures else f"FAILED x{len(failures)}"
            line = f"  {axiom:<40} {count:>8} checked  {status}"
            if failures:
                line += f"  first: {failures[0].witness}"
            lines.append(line)
        for v in self.violations[:max_violations]:
            detail = f" ({v.detail})" if v.detail else ""
            lines.append(f"  ! {v.axiom} at {v.witness}{detail}")
        if len(self.violations) > max_violations:
            lines.append(f"  ... {len(self.violations) - max_violations} more")
        return "\n".join(lines)
