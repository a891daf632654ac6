"""Default numerical tolerances.

Every tolerance used by the CLI lives here so that ``--strict`` can halve
all of them in one place.
"""

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    unitarity: float = 1e-10
    load_unitarity: float = 1e-8
    root_residual: float = 1e-9
    comparison: float = 1e-8
    same_variety: float = 1e-7
    defect: float = 1e-10
    boundary: float = 1e-4
    lemma: float = 1e-9
    palindrome: float = 1e-9
    gauge: float = 1e-8

    def halved(self) -> "Tolerances":
        return replace(self, **{f.name: getattr(self, f.name) / 2 for f in fields(self)})


DEFAULT = Tolerances()

# radius used to approach the unit circle from inside
BOUNDARY_RADIUS = 1.0 - 1e-6
