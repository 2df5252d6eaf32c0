"""Residual and verification reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

REPORT_LIMIT = 32


@dataclass(frozen=True)
class ResidualReport:
    """Sparse residual tensor: index tuple -> nonzero Scalar."""

    label: str
    entries: dict = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def count(self) -> int:
        return len(self.entries)

    def first(self, k: int = REPORT_LIMIT) -> list:
        return sorted(self.entries.items())[:k]

    def to_dict(self, limit: int = REPORT_LIMIT) -> dict:
        return {
            "label": self.label,
            "zero": self.is_zero,
            "nonzero_count": self.count,
            "entries": [{"index": list(idx), "value": str(v)} for idx, v in self.first(limit)],
        }


@dataclass
class Report:
    """Outcome of a check: pass/fail, the stage that decided it, and residual evidence."""

    name: str
    passed: bool
    stage: str = ""
    message: str = ""
    residuals: list = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, limit: int = REPORT_LIMIT) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.stage:
            out["stage"] = self.stage
        if self.message:
            out["message"] = self.message
        if self.residuals:
            out["residuals"] = [r.to_dict(limit) for r in self.residuals]
        if self.details:
            out["details"] = self.details
        return out

    def render_text(self, limit: int = REPORT_LIMIT) -> str:
        lines = [f"{self.name}: {self.status.upper()}"]
        if self.stage:
            lines.append(f"  stage: {self.stage}")
        if self.message:
            lines.append(f"  {self.message}")
        for key, value in self.details.items():
            lines.append(f"  {key}: {value}")
        for res in self.residuals:
            if res.is_zero:
                lines.append(f"  [{res.label}] residual identically zero")
                continue
            lines.append(f"  [{res.label}] {res.count} nonzero residual entries")
            for idx, value in res.first(limit):
                lines.append(f"    {idx}: {value}")
            if res.count > limit:
                lines.append(f"    ... {res.count - limit} more")
        return "\n".join(lines)
