from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass(frozen=True)
class Check:
    """One verdict inside a :class:`Report`.

    ``witness`` is only populated on failure and holds the first offending
    basis indices together with the two sides of the identity that disagreed.
    """

    name: str
    verdict: str
    witness: dict[str, Any] | None = None
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    @property
    def warnings(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if c.verdict == WARN)

    def __add__(self, other: Report) -> Report:
        return Report(self.checks + other.checks)

    def renamed(self, prefix: str) -> Report:
        return Report(tuple(Check(f"{prefix}{c.name}", c.verdict, c.witness, c.detail)
                            for c in self.checks))


def passed(name: str, detail: str | None = None) -> Report:
    return Report((Check(name, PASS, None, detail),))


def failed(name: str, witness: dict[str, Any] | None = None,
           detail: str | None = None) -> Report:
    return Report((Check(name, FAIL, witness, detail),))


def combine(reports: Iterable[Report]) -> Report:
    checks: tuple[Check, ...] = ()
    for r in reports:
        checks += r.checks
    return Report(checks)


def verdict(name: str, witness: dict[str, Any] | None, detail: str | None = None) -> Report:
    """Pass when ``witness`` is None, otherwise fail carrying it."""
    if witness is None:
        return passed(name)
    return failed(name, witness, detail)
