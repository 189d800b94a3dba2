"""Structured pass/fail records for individual certification checks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CertReport:
    """Outcome of one check.

    When ``expected`` is present the verdict is "pass" iff
    ``|measured - expected| <= tolerance``; otherwise the acceptance rule is
    check specific and spelled out in ``details``.
    """

    name: str
    measured: float
    expected: float | None
    tolerance: float
    verdict: str
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": self.measured,
            "expected": self.expected if self.expected is not None else "none",
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "details": self.details,
        }

    def __str__(self) -> str:
        exp = "none" if self.expected is None else f"{self.expected:.12g}"
        return (
            f"[{self.verdict.upper():4s}] {self.name}: measured={self.measured:.12g} "
            f"expected={exp} tol={self.tolerance:.1e}"
            + (f" ({self.details})" if self.details else "")
        )


def value_report(name: str, measured: float, expected: float, tolerance: float,
                 details: str = "", extra_ok: bool = True) -> CertReport:
    """Report whose verdict is |measured - expected| <= tolerance (and extra_ok)."""
    ok = abs(measured - expected) <= tolerance and extra_ok
    return CertReport(name, float(measured), float(expected), tolerance,
                      "pass" if ok else "fail", details)


def rule_report(name: str, measured: float, tolerance: float, ok: bool,
                details: str) -> CertReport:
    """Report with a check-specific rule; the rule must be stated in details."""
    return CertReport(name, float(measured), None, tolerance,
                      "pass" if ok else "fail", details)
