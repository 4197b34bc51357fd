"""Machine-readable verification reports.

Every verification operation returns a :class:`Report`: an ordered list of
named checks with status ``pass`` / ``sampled-pass`` / ``fail`` /
``skipped``.  A failing check always carries a witness (basis keys or
serialised elements) sufficient to reproduce the failure.

Reports serialise to JSON lines, one check per line, in deterministic
order.  Timing is attached only on request so that default output is
byte-stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


def _jsonable(value):
    from .elements import Element, TensorElement

    if value is None or isinstance(value, (bool, int, str, float)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, Element):
        from .serialize import element_to_json

        return element_to_json(value)
    if isinstance(value, TensorElement):
        return {
            "domains": list(value.domains),
            "terms": [
                [_jsonable(list(k))] + list(c.to_tuple()) for k, c in value.items()
            ],
        }
    return repr(value)


@dataclass
class CheckResult:
    instance: str
    check: str
    status: str  # pass | sampled-pass | fail | skipped
    witness: Any = None
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "sampled-pass", "skipped")

    def to_json(self, timing: bool = False) -> str:
        payload = {
            "instance": self.instance,
            "check": self.check,
            "status": self.status,
        }
        if self.witness is not None:
            payload["witness"] = _jsonable(self.witness)
        if timing and self.elapsed is not None:
            payload["elapsed_s"] = round(self.elapsed, 6)
        return json.dumps(payload, sort_keys=True)


@dataclass
class Report:
    """Ordered collection of check results for one instance/operation."""

    instance: str = ""
    entries: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, ok: bool, status_ok: str = "pass", witness=None) -> None:
        status = status_ok if ok else "fail"
        self.entries.append(
            CheckResult(self.instance, check, status, witness if not ok else None)
        )

    def add_entry(self, entry: CheckResult) -> None:
        self.entries.append(entry)

    def skip(self, check: str, reason: str = "") -> None:
        self.entries.append(CheckResult(self.instance, check, "skipped", reason or None))

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if not e.ok]

    def status_of(self, check: str) -> str:
        for e in self.entries:
            if e.check == check:
                return e.status
        raise KeyError(check)

    def to_jsonl(self, timing: bool = False) -> str:
        return "\n".join(e.to_json(timing) for e in self.entries)

    def summary(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"[{e.status:>12}] {e.instance}: {e.check}")
        return "\n".join(lines)
