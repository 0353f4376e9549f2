"""Collections of axiom verdicts with text and JSON renderings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .dsl import AxiomCheck
from .linalg import FieldSpec


@dataclass
class Report:
    title: str
    checks: list[AxiomCheck] = field(default_factory=list)
    children: list["Report"] = field(default_factory=list)
    flags: dict[str, Any] = field(default_factory=dict)
    field: FieldSpec | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks) and all(r.passed for r in self.children)

    def add(self, check: AxiomCheck) -> AxiomCheck:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def child(self, report: "Report") -> "Report":
        self.children.append(report)
        return report

    def all_checks(self, prefix: str = ""):
        for c in self.checks:
            yield f"{prefix}{c.name}", c
        for r in self.children:
            yield from r.all_checks(f"{prefix}{r.title}/")

    def check(self, name: str) -> AxiomCheck:
        """Look up a check by its (possibly nested) name."""
        for full, c in self.all_checks():
            if full == name or c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[tuple[str, AxiomCheck]]:
        return [(n, c) for n, c in self.all_checks() if not c.passed]

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = f"{pad}[{'PASS' if self.passed else 'FAIL'}] {self.title}"
        if self.flags:
            head += "  (" + ", ".join(f"{k}={v}" for k, v in self.flags.items()) + ")"
        lines = [head]
        for c in self.checks:
            lines.append(f"{pad}  {c.describe(self.field)}")
        for r in self.children:
            lines.append(r.render(indent + 1))
        return "\n".join(lines)

    def to_json(self) -> dict:
        fmt = self.field.format_scalar if self.field else str

        def check_json(c: AxiomCheck) -> dict:
            out = {"name": c.name, "passed": c.passed}
            if c.lhs:
                out["lhs"], out["rhs"] = c.lhs, c.rhs
            if isinstance(c.witness, dict):
                out["witness"] = {k: str(v) for k, v in c.witness.items()}
            elif c.witness is not None:
                i, j, a, b = c.witness
                out["witness"] = {"row": i, "col": j, "lhs": fmt(a), "rhs": fmt(b)}
            return out

        return {
            "title": self.title,
            "passed": self.passed,
            "flags": dict(self.flags),
            "checks": [check_json(c) for c in self.checks],
            "children": [r.to_json() for r in self.children],
        }
