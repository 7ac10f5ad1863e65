"""Verification reports: named checks with verdicts, witnesses and timings."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .ring import DomainError, PreconditionError, StructuralError

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
HEIGHT_NOTE = "heights stand in for grade (polynomial rings are Cohen-Macaulay)"
GRADED_NOTE = "graded-global verification"


@dataclass
class Check:
    name: str
    verdict: str
    witness: dict = field(default_factory=dict)
    millis: float = 0.0
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "verdict": self.verdict, "witness": self.witness}
        if self.note:
            out["note"] = self.note
        out["millis"] = round(self.millis, 3)
        return out


@dataclass
class VerificationReport:
    title: str
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)  # label -> millis, never printed as text

    def record(self, name: str, ok, witness: dict | None = None, note: str = "", millis: float = 0.0) -> Check:
        if ok is None or ok == SKIPPED:
            verdict = SKIPPED
        else:
            verdict = PASS if ok else FAIL
        witness = dict(witness or {})
        if verdict == FAIL and not witness:
            raise ValueError(f"failed check {name!r} needs a witness")
        chk = Check(name, verdict, witness, millis, note)
        self.checks.append(chk)
        return chk

    def run(self, name: str, fn, note: str = "") -> Check:
        """Run ``fn() -> (ok, witness)``; checked precondition failures become failed checks."""
        t0 = time.perf_counter()
        try:
            ok, witness = fn()
        except (PreconditionError, DomainError, StructuralError) as exc:
            ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
        return self.record(name, ok, witness, note, (time.perf_counter() - t0) * 1000)

    def skip(self, name: str, reason: str) -> Check:
        return self.record(name, None, {"reason": reason}, note=reason)

    def note(self, text: str):
        if text not in self.notes:
            self.notes.append(text)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def verdict(self, name: str) -> str:
        return self[name].verdict

    @property
    def overall(self) -> str:
        """``fail`` if any check failed, ``skipped`` if nothing ran, else ``pass``."""
        if any(c.verdict == FAIL for c in self.checks):
            return FAIL
        if all(c.verdict == SKIPPED for c in self.checks):
            return SKIPPED
        return PASS

    @property
    def passed(self) -> bool:
        return self.overall == PASS

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    def to_dict(self, timings: bool = True) -> dict:
        checks = []
        for c in self.checks:
            d = c.to_dict()
            if not timings:
                d.pop("millis")
            checks.append(d)
        out = {
            "title": self.title,
            "overall": self.overall,
            "checks": checks,
            "facts": self.facts,
            "notes": list(self.notes),
        }
        if timings and self.timings:
            out["timings"] = dict(self.timings)
        return out

    def to_text(self) -> str:
        lines = [f"report: {self.title}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            line = f"  {c.name.ljust(width)}  {c.verdict}"
            if c.verdict == SKIPPED and set(c.witness) == {"reason"}:
                reason = str(c.witness["reason"])
                line = f"  {c.name.ljust(width)}  {reason if reason.startswith(SKIPPED) else SKIPPED + ': ' + reason}"
            elif c.witness:
                line += "  " + _fmt_witness(c.witness)
            lines.append(line)
        for k, v in self.facts.items():
            lines.append(f"  fact {k} = {_fmt_value(v)}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        lines.append(f"  overall: {self.overall}")
        return "\n".join(lines)


def _fmt_value(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    return str(v)


def _fmt_witness(w: dict) -> str:
    return "; ".join(f"{k}={_fmt_value(v)}" for k, v in w.items())


def height_value(h):
    """JSON-friendly height: ints stay ints, the unit ideal reports "inf"."""
    return "inf" if h == float("inf") else int(h)
