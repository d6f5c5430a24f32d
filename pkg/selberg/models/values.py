# selberg/models/values.py
"""
Numerical results paired with their error bounds.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal

MethodTag = Literal[
    "series",
    "continuation",
    "collapsed-integral",
    "dirichlet-poly",
    "smoothed",
    "random-series",
]

METHOD_TAGS = (
    "series",
    "continuation",
    "collapsed-integral",
    "dirichlet-poly",
    "smoothed",
    "random-series",
)


@dataclass(frozen=True)
class ApproxValue:
    """A complex value with an absolute error bound and the route that produced it"""
    value: complex
    err_bound: float
    method: MethodTag
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.err_bound >= 0:
            raise ValueError(f"err_bound must be nonnegative, got {self.err_bound}")
        if self.method not in METHOD_TAGS:
            raise ValueError(f"unknown method tag {self.method!r}")
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "err_bound", float(self.err_bound))

    def agrees_with(self, other: "ApproxValue", slack: float = 1.0) -> bool:
        """True when the two values differ by at most slack * (sum of bounds)."""
        return abs(self.value - other.value) <= slack * (self.err_bound + other.err_bound)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": [self.value.real, self.value.imag],
            "err_bound": self.err_bound,
            "method": self.method,
            "notes": list(self.notes),
        }
