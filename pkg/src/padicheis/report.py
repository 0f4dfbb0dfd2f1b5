"""Verdicts and run reports, with exact JSON and text serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = 1


@dataclass
class Verdict:
    name: str
    passed: bool
    witness: object = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        d = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = exact_str(self.witness)
        if self.checked:
            d["checked"] = self.checked
        if self.details:
            d["details"] = exact_str(self.details)
        return d


def exact_str(x) -> object:
    """Render a value with exact strings ("a/b", canonical p-adic text)."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): exact_str(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact_str(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((exact_str(v) for v in x), key=str)
    return str(x)


@dataclass
class Report:
    cmd: list[str]
    verdicts: list[Verdict] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    seed: int | None = None
    timing: float | None = None
    display: str | None = None  # text-mode rendering of values; not serialized

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "schema": SCHEMA,
            "cmd": list(self.cmd),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "values": exact_str(self.values),
            "seed": self.seed,
        }
        if timing and self.timing is not None:
            d["timing"] = round(self.timing, 6)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        verdicts = [
            Verdict(v["name"], v["pass"], v.get("witness"), v.get("checked", 0), v.get("details", {}))
            for v in d.get("verdicts", [])
        ]
        return cls(list(d["cmd"]), verdicts, dict(d.get("values", {})), d.get("seed"), d.get("timing"))


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [report.display] if report.display is not None else []
    for key, value in ({} if report.display is not None else exact_str(report.values)).items():
        lines.append(f"{key}: {value}" if len(report.values) > 1 or report.verdicts else str(value))
    for v in report.verdicts:
        line = f"{'PASS' if v.passed else 'FAIL'} {v.name}"
        if v.checked:
            line += f" ({v.checked} checked)"
        if v.witness is not None:
            line += f" witness={exact_str(v.witness)}"
        lines.append(line)
    return "\n".join(lines)


def parse(text: str) -> Report:
    return Report.from_dict(json.loads(text))
