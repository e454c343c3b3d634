"""Axiom reports: named pass/fail entries with the first counterexample."""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import config


class AxiomFailure(AssertionError):
    """A construction that a theorem guarantees failed its own verification."""

    def __init__(self, report: "Report"):
        self.report = report
        super().__init__(report.summary())


@dataclass
class Entry:
    name: str
    passed: bool = True
    checked: int = 0
    failures: int = 0
    counterexample: dict | None = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "axiom": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "failures": self.failures,
        }
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    object_id: str
    mode: str = "full"
    entries: list[Entry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def entry(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def status(self, name: str) -> bool:
        return self.entry(name).passed

    def failed(self) -> list[str]:
        return [e.name for e in self.entries if not e.passed]

    def add(self, entry: Entry) -> Entry:
        self.entries.append(entry)
        return entry

    def flag(self, name: str, passed: bool, detail: dict | None = None, note: str = "") -> Entry:
        """Record a single yes/no condition."""
        e = Entry(name, passed, 1, 0 if passed else 1, None if passed else (detail or {}), note)
        return self.add(e)

    def merge(self, other: "Report", prefix: str) -> None:
        for e in other.entries:
            self.entries.append(
                Entry(f"{prefix}:{e.name}", e.passed, e.checked, e.failures, e.counterexample, e.note)
            )
        self.notes.extend(other.notes)
        if other.mode == "sampled":
            self.mode = "sampled"

    def to_dict(self) -> dict:
        return {
            "object": self.object_id,
            "mode": self.mode,
            "status": "pass" if self.ok else "fail",
            "entries": [e.to_dict() for e in self.entries],
            "notes": list(self.notes),
            "data": dict(self.data),
        }

    def to_json(self, timing: bool = False) -> str:
        d = self.to_dict()
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"{self.object_id} [{self.mode}]: {'PASS' if self.ok else 'FAIL'}"]
        for e in self.entries:
            line = f"  {'ok  ' if e.passed else 'FAIL'} {e.name} ({e.checked} checked)"
            if e.counterexample:
                cx = e.counterexample
                parts = [f"at {cx['at']}"] if "at" in cx else []
                parts += [f"{k} = {v}" for k, v in cx.items() if k != "at"]
                line += " -- " + "; ".join(parts)
            lines.append(line)
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)

    def summary(self) -> str:
        if self.ok:
            return f"{self.object_id}: all {len(self.entries)} axioms pass"
        bad = self.failed()
        first = self.entry(bad[0])
        return f"{self.object_id}: failed {', '.join(bad)}; first {first.name} {first.counterexample}"

    def require(self) -> "Report":
        if not self.ok:
            raise AxiomFailure(self)
        return self


def tuples(dims: Sequence[int], mode: str, salt: str = "") -> Iterator[tuple[int, ...]]:
    """Basis index tuples: all of them, or a deterministic 10% sample."""
    dims = list(dims)
    if mode == "full":
        yield from itertools.product(*[range(n) for n in dims])
        return
    total = math.prod(dims)
    if total == 0:
        return
    s = config.settings
    k = max(1, math.ceil(s.sample_fraction * total))
    k = min(k, s.max_samples, total)
    rng = random.Random(f"{s.sample_seed}:{salt}:{dims}")
    for flat in sorted(rng.sample(range(total), k)):
        out = []
        for n in reversed(dims):
            flat, r = divmod(flat, n)
            out.append(r)
        yield tuple(reversed(out))


class Checker:
    """Evaluates named identities over basis tuples and fills a report."""

    def __init__(self, report: Report, mode: str):
        self.report = report
        self.mode = mode

    def run(self, name: str, dims: Sequence[int], check: Callable[..., tuple | None],
            labels: Sequence[Sequence[str]] | None = None) -> Entry:
        """``check(*idx)`` returns None on success or a (lhs, rhs) pair of strings."""
        entry = Entry(name)
        for idx in tuples(dims, self.mode, salt=name):
            entry.checked += 1
            bad = check(*idx)
            if bad is not None:
                entry.failures += 1
                if entry.counterexample is None:
                    at = tuple(labels[i][j] for i, j in enumerate(idx)) if labels else idx
                    entry.passed = False
                    entry.counterexample = {"at": list(at), "lhs": bad[0], "rhs": bad[1]}
        return self.report.add(entry)


def timed(fn: Callable[[], Report]) -> Report:
    t0 = time.perf_counter()
    r = fn()
    r.seconds = time.perf_counter() - t0
    return r
