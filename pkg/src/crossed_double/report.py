"""Structured pass/fail records for axiom checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Failure:
    axiom: str
    instance: tuple
    witness: Any = None
    kind: str = "axiom"

    def to_dict(self, dump=str) -> dict:
        return {"axiom": self.axiom, "instance": list(self.instance), "kind": self.kind, "witness": _plain(self.witness, dump)}


def _plain(x, dump):
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v, dump) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v, dump) for v in x]
    if x is None or isinstance(x, (str, bool)):
        return x
    return dump(x)


@dataclass
class ValidationReport:
    """Per-axiom instance counts plus every failing instance.

    ``kind`` on a failure is one of ``axiom``, ``derived`` (a proved consequence
    that should never fail on valid input), ``inferred`` (a natural identity not
    stated verbatim) or ``consequence`` (warning level, e.g. Yang-Baxter).
    """

    subject: str = ""
    counts: Dict[str, int] = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)
    max_failures_per_axiom: int = 20

    def check(self, axiom: str, instance: tuple, ok: bool, witness=None, kind: str = "axiom") -> bool:
        self.counts[axiom] = self.counts.get(axiom, 0) + 1
        if not ok:
            if sum(1 for f in self.failures if f.axiom == axiom) < self.max_failures_per_axiom:
                self.failures.append(Failure(axiom, tuple(instance), witness, kind))
            else:
                self.notes.setdefault("truncated", {}).setdefault(axiom, 0)
                self.notes["truncated"][axiom] += 1
        return ok

    def fail(self, axiom: str, instance: tuple, witness=None, kind: str = "axiom"):
        self.check(axiom, instance, False, witness, kind)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def axiom_ok(self) -> bool:
        """True when nothing failed apart from consequence-level warnings."""
        return all(f.kind == "consequence" for f in self.failures)

    def failed_axioms(self) -> List[str]:
        seen: List[str] = []
        for f in self.failures:
            if f.axiom not in seen:
                seen.append(f.axiom)
        return seen

    def first(self, axiom_prefix: str = "") -> Optional[Failure]:
        return next((f for f in self.failures if f.axiom.startswith(axiom_prefix)), None)

    def merge(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        for k, v in other.counts.items():
            self.counts[prefix + k] = self.counts.get(prefix + k, 0) + v
        for f in other.failures:
            self.failures.append(Failure(prefix + f.axiom, f.instance, f.witness, f.kind))
        self.skipped.extend(prefix + s for s in other.skipped)
        for k, v in other.notes.items():
            self.notes[prefix + k] = v
        return self

    def to_dict(self, dump=str) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "failures": [f.to_dict(dump) for f in self.failures],
            "skipped": sorted(self.skipped),
            "notes": _plain(self.notes, dump),
        }

    def summary(self) -> str:
        lines = [f"{self.subject or 'report'}: {'PASS' if self.ok else 'FAIL'}"]
        failed = {f.axiom for f in self.failures}
        for axiom, n in sorted(self.counts.items()):
            lines.append(f"  {'FAIL' if axiom in failed else 'ok  '} {axiom} ({n} instances)")
        for s in sorted(self.skipped):
            lines.append(f"  skip {s}")
        for f in self.failures[:10]:
            lines.append(f"  witness {f.axiom} at {f.instance}: {f.witness}")
        return "\n".join(lines)

    def __str__(self):
        return self.summary()
