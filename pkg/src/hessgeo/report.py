"""Deterministic verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List

__version__ = "0.1.0"

__all__ = ["CheckResult", "VerificationReport", "__version__"]


@dataclass
class CheckResult:
    """One named check: max residual over samples against a tolerance.

    `status` is one of "checked" (pass = residual < tolerance), "assumed"
    (hypothesis recorded, never evaluated) and "informational" (reported,
    not gating).  Negative controls are phrased as exact-value identities so
    that pass = residual < tolerance holds for them too.
    """

    check_id: str
    claim: str
    residual: float
    tolerance: float
    samples: int
    status: str = "checked"

    @property
    def passed(self):
        if self.status != "checked":
            return True
        return self.residual < self.tolerance

    def as_dict(self):
        return {
            "check_id": self.check_id,
            "claim": self.claim,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "status": self.status,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    geometry: str
    seed: int
    entries: List[CheckResult] = field(default_factory=list)
    version: str = __version__

    def add(self, entry):
        self.entries.append(entry)

    def extend(self, entries):
        self.entries.extend(entries)

    def sorted_entries(self):
        return sorted(self.entries, key=lambda e: e.check_id)

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def as_dict(self):
        return {
            "version": self.version,
            "geometry": self.geometry,
            "seed": self.seed,
            "pass": self.passed,
            "entries": [e.as_dict() for e in self.sorted_entries()],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    def to_text(self):
        lines = [f"geometry: {self.geometry}  seed: {self.seed}  version: {self.version}"]
        for e in self.sorted_entries():
            if e.status == "checked":
                verdict = "PASS" if e.passed else "FAIL"
                lines.append(
                    f"[{verdict}] {e.check_id}: residual {e.residual:.3e} "
                    f"< {e.tolerance:.1e} ({e.samples} samples) -- {e.claim}"
                )
            else:
                lines.append(f"[{e.status.upper()}] {e.check_id}: {e.claim}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)
