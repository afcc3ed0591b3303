"""Verification reports: named identity checks with max-norm residuals."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name:40s} residual={self.residual:.3e}{extra}"


@dataclass
class Report:
    title: str = ""
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, float(residual), bool(passed), detail))

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [f"== {self.title} ==" if self.title else "== report =="]
        lines += [c.line() for c in self.checks]
        verdict = "ALL PASS" if self.passed else f"FAILED: {', '.join(self.failures())}"
        lines.append(verdict)
        return "\n".join(lines)
