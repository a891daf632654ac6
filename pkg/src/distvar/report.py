from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Check:
    name: str
    worst_residual: float
    tolerance: float
    witness: Optional[tuple] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.worst_residual <= self.tolerance

    def to_dict(self):
        d = {
            "name": self.name,
            "passed": self.passed,
            "worst_residual": _finite_or_str(self.worst_residual),
            "tolerance": self.tolerance,
            "witness": None if self.witness is None else [[c.real, c.imag] for c in map(complex, self.witness)],
        }
        if self.detail:
            d["detail"] = self.detail
        return d


def _finite_or_str(x):
    x = float(x)
    return x if x == x and abs(x) != float("inf") else str(x)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def skip(self, name: str, reason: str):
        self.skipped.append({"name": name, "reason": reason})

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)
        self.skipped.extend(other.skipped)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "skipped": list(self.skipped),
        }
