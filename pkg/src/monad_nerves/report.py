"""Violation records and check results shared by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Violation:
    """One failed instance of a law.

    ``structural`` marks reference/shape errors (unknown ids, missing table
    entries of the wrong type). Validators always list structural problems
    before law violations.
    """

    law: str
    instance: tuple = ()
    detail: str = ""
    structural: bool = False

    def __str__(self):
        where = ", ".join(map(repr, self.instance))
        text = f"{self.law} [{where}]"
        return f"{text}: {self.detail}" if self.detail else text


def structural_first(violations):
    return sorted(violations, key=lambda v: not v.structural)


@dataclass
class CheckResult:
    """Outcome of one named check with its witnesses.

    ``required=False`` results are reported but never change an overall
    verdict (optional axioms, open-question probes).
    """

    check: str
    status: str
    witnesses: list = field(default_factory=list)
    required: bool = True
    note: str = ""

    @property
    def passed(self):
        return self.status == PASS

    def as_dict(self):
        return {
            "check": self.check,
            "status": self.status,
            "required": self.required,
            "note": self.note,
            "witnesses": [str(w) for w in self.witnesses],
        }


def result_from(check, violations, required=True, note=""):
    violations = list(violations)
    return CheckResult(check, FAIL if violations else PASS, violations, required, note)


def overall_status(results):
    """fail if a required check failed, else inconclusive if one was, else pass."""
    required = [r for r in results if r.required]
    if any(r.status == FAIL for r in required):
        return FAIL
    if any(r.status == INCONCLUSIVE for r in required):
        return INCONCLUSIVE
    return PASS


class SearchBudgetExceeded(Exception):
    """Raised by a :class:`Budget` when an enumeration runs past its bound."""


class Budget:
    """Counter of candidate evaluations for the brute-force searches."""

    DEFAULT = 10**6

    def __init__(self, bound=DEFAULT):
        self.bound = bound
        self.spent = 0

    def spend(self, n=1):
        self.spent += n
        if self.bound is not None and self.spent > self.bound:
            raise SearchBudgetExceeded(f"search exceeded {self.bound} candidate evaluations")
