"""Check entries, reports, and their JSON/Markdown serialization.

JSON output is byte-stable for a fixed (config, seed): entries are sorted,
keys are sorted, and wall time is deliberately left out of the JSON view
(it stays on the in-memory report and in the Markdown rendering).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass
class CheckEntry:
    """One verified fact: a named check evaluated at labelled objects."""

    name: str
    at: tuple[str, ...]
    passed: bool
    dims: tuple[int, int] | None = None
    rank: int | None = None
    is_iso: bool | None = None
    factors: tuple[str, ...] | None = None
    details: str = ""

    def to_dict(self) -> dict:
        d: dict = {"map": self.name, "at": list(self.at), "pass": self.passed}
        if self.dims is not None:
            d["dims"] = list(self.dims)
        if self.rank is not None:
            d["rank"] = self.rank
        if self.is_iso is not None:
            d["is_iso"] = self.is_iso
        if self.factors:
            d["factors"] = list(self.factors)
        if self.details:
            d["details"] = self.details
        return d


@dataclass
class CheckReport:
    """Outcome of one battery run against one context."""

    battery: str
    context: str
    seed: int | None = None
    samples: int | None = None
    entries: list[CheckEntry] = field(default_factory=list)
    error: tuple[str, str] | None = None
    wall_time_s: float | None = None

    def add(self, entry: CheckEntry) -> None:
        self.entries.append(entry)

    def extend(self, entries) -> None:
        self.entries.extend(entries)

    @property
    def passed(self) -> bool:
        return self.error is None and all(e.passed for e in self.entries)

    def sorted_entries(self) -> list[CheckEntry]:
        return sorted(self.entries, key=lambda e: (e.name, e.at))

    def summary(self) -> dict:
        ok = sum(1 for e in self.entries if e.passed)
        return {"total": len(self.entries), "passed": ok, "failed": len(self.entries) - ok}

    def to_dict(self) -> dict:
        return {
            "battery": self.battery,
            "context": self.context,
            "seed": self.seed,
            "samples": self.samples,
            "entries": [e.to_dict() for e in self.sorted_entries()],
            "summary": self.summary(),
            "error": None if self.error is None else {"type": self.error[0], "message": self.error[1]},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        lines = [
            f"# {self.battery} battery",
            "",
            f"- context: {self.context}",
            f"- seed: {self.seed}",
            f"- samples: {self.samples}",
        ]
        if self.wall_time_s is not None:
            lines.append(f"- wall time: {self.wall_time_s:.3f}s")
        s = self.summary()
        lines.append(f"- result: {s['passed']}/{s['total']} checks passed")
        if self.error is not None:
            lines.append(f"- error: {self.error[0]}: {self.error[1]}")
        by_name: dict[str, list[CheckEntry]] = {}
        for e in self.sorted_entries():
            by_name.setdefault(e.name, []).append(e)
        for name, group in by_name.items():
            lines.extend(["", f"## {name}", ""])
            lines.append("| at | pass | dims | rank | is_iso | details |")
            lines.append("|---|---|---|---|---|---|")
            for e in group:
                dims = "" if e.dims is None else f"{e.dims[0]}x{e.dims[1]}"
                rank = "" if e.rank is None else str(e.rank)
                iso = "" if e.is_iso is None else str(e.is_iso).lower()
                ok = "yes" if e.passed else "NO"
                at = ", ".join(e.at)
                lines.append(f"| {at} | {ok} | {dims} | {rank} | {iso} | {e.details} |")
        return "\n".join(lines) + "\n"


# -- schema ------------------------------------------------------------------

_ENTRY_KEYS = {
    "map": str,
    "at": list,
    "pass": bool,
    "dims": list,
    "rank": int,
    "is_iso": bool,
    "factors": list,
    "details": str,
}
_ENTRY_REQUIRED = ("map", "at", "pass")
_REPORT_REQUIRED = ("battery", "context", "seed", "samples", "entries", "summary", "error")


def validate_report_dict(payload: dict) -> None:
    """Structural validation of a serialized report; raises ConfigError.

    This is the in-tree schema the JSON output round-trips through.
    """

    def fail(msg: str):
        raise ConfigError(f"report schema violation: {msg}")

    if not isinstance(payload, dict):
        fail("top level must be an object")
    missing = [k for k in _REPORT_REQUIRED if k not in payload]
    if missing:
        fail(f"missing keys {missing}")
    extra = set(payload) - set(_REPORT_REQUIRED)
    if extra:
        fail(f"unknown keys {sorted(extra)}")
    if not isinstance(payload["battery"], str) or not isinstance(payload["context"], str):
        fail("battery and context must be strings")
    for k in ("seed", "samples"):
        if payload[k] is not None and not isinstance(payload[k], int):
            fail(f"{k} must be an int or null")
    if not isinstance(payload["entries"], list):
        fail("entries must be a list")
    for i, e in enumerate(payload["entries"]):
        if not isinstance(e, dict):
            fail(f"entry {i} must be an object")
        for k in _ENTRY_REQUIRED:
            if k not in e:
                fail(f"entry {i} is missing {k!r}")
        for k, v in e.items():
            if k not in _ENTRY_KEYS:
                fail(f"entry {i} has unknown key {k!r}")
            want = _ENTRY_KEYS[k]
            if want is bool:
                if not isinstance(v, bool):
                    fail(f"entry {i} key {k!r} must be bool")
            elif want is int:
                if isinstance(v, bool) or not isinstance(v, int):
                    fail(f"entry {i} key {k!r} must be int")
            elif not isinstance(v, want):
                fail(f"entry {i} key {k!r} must be {want.__name__}")
        if "at" in e and not all(isinstance(x, str) for x in e["at"]):
            fail(f"entry {i} 'at' must contain strings")
        if "dims" in e and (
            len(e["dims"]) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e["dims"])
        ):
            fail(f"entry {i} 'dims' must be [source dim, target dim]")
        if "factors" in e and not all(isinstance(x, str) for x in e["factors"]):
            fail(f"entry {i} 'factors' must contain strings")
    s = payload["summary"]
    if not isinstance(s, dict) or set(s) != {"total", "passed", "failed"}:
        fail("summary must have exactly total/passed/failed")
    if any(isinstance(s[k], bool) or not isinstance(s[k], int) for k in s):
        fail("summary counts must be ints")
    if s["total"] != len(payload["entries"]) or s["passed"] + s["failed"] != s["total"]:
        fail("summary counts are inconsistent with entries")
    err = payload["error"]
    if err is not None:
        if not isinstance(err, dict) or set(err) != {"type", "message"}:
            fail("error must be null or {type, message}")
        if not all(isinstance(err[k], str) for k in err):
            fail("error fields must be strings")
