"""Truthy check results that remember where a check failed."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    ok: bool
    where: object = None
    detail: str = ""
    failures: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failed(cls, where, detail: str = "", failures=()) -> "Verdict":
        return cls(False, where, detail, tuple(failures))

    @classmethod
    def collect(cls, outcomes) -> "Verdict":
        """Combine ``(label, bool)`` pairs; the first failing label is ``where``."""
        bad = tuple(label for label, ok in outcomes if not ok)
        if bad:
            return cls(False, bad[0], f"{len(bad)} identity(ies) failed", bad)
        return cls(True)
