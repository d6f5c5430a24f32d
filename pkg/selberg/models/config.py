# selberg/models/config.py
"""
Configuration models.

EvaluatorSettings holds the numerical knobs of the evaluator.
ExperimentConfig validates everything the command line (or a --config JSON
file) supplies before any computation starts.
"""

import hashlib
import json
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..utils.numbers import parse_complex, parse_complex_list, parse_floats, parse_range


@dataclass(frozen=True)
class EvaluatorSettings:
    """Numerical parameters shared by every evaluation route."""
    tolerance: float = 1e-9
    # below this abscissa log L is branch-tracked, above it the principal log is exact
    split_abscissa: float = 1.5
    # the collapsed integral is summed termwise beyond this abscissa
    series_abscissa: float = 3.0
    series_terms: int = 100_000
    dps: int = 20
    gauss_order: int = 10
    max_depth: int = 14
    custom_margin: float = 0.05
    pole_radius: float = 1e-8
    zero_threshold: float = 1e-12
    zero_proximity: float = 1e-5
    min_step: float = 1e-7
    max_step: float = 0.25

    def with_tolerance(self, tolerance: float) -> "EvaluatorSettings":
        return replace(self, tolerance=tolerance)


COMMANDS = (
    "eval",
    "poly-check",
    "smooth-check",
    "sample-q",
    "sample-qt",
    "compare",
    "fit-phases",
    "witness",
    "zeros-report",
    "mellin",
)

# fields that never change results and stay out of the config echo and hash
VOLATILE_FIELDS = {"threads", "log_level", "out", "csv", "phases_out", "config_file"}


def flag_name(field_name: str) -> str:
    return "--" + field_name.replace("_", "-")


class ExperimentConfig(BaseModel):
    """One validated experiment; field names map to flags (`prime_bound` <-> `--prime-bound`)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Literal[
        "eval",
        "poly-check",
        "smooth-check",
        "sample-q",
        "sample-qt",
        "compare",
        "fit-phases",
        "witness",
        "zeros-report",
        "mellin",
    ]
    l: str = "zeta"
    m: int = Field(0, ge=0)
    m_alt: Optional[int] = Field(None, ge=0)
    s: Optional[str] = None
    points: Optional[str] = None
    disk: Optional[str] = None
    rect: Optional[str] = None
    target: Optional[str] = None
    log_target: Optional[str] = None
    tau: Optional[str] = None
    T: Optional[float] = Field(None, gt=0)
    step: float = Field(0.05, gt=0)
    eps: float = Field(0.1, ge=0)
    y: List[float] = Field(default_factory=lambda: [100.0])
    X: List[float] = Field(default_factory=lambda: [64.0])
    N: int = Field(1_000_000, ge=2)
    n: int = Field(1000, ge=1)
    prime_bound: int = Field(10_000, ge=2)
    seed: int = Field(0, ge=0, lt=2**64)
    sweeps: int = Field(20, ge=1)
    circle_points: int = Field(64, ge=4)
    grid: Optional[int] = Field(None, ge=2)
    scheme: Literal["equispaced", "random"] = "equispaced"
    method: Literal["collapsed", "series", "continuation"] = "collapsed"
    slack: float = Field(0.5, ge=0)
    permutations: int = Field(199, ge=0)
    tolerance: float = Field(1e-9, gt=0)
    sigma: Optional[float] = None
    sigma0: Optional[float] = None
    gdh: bool = False
    zeros: Optional[str] = None
    threads: int = Field(1, ge=1)
    out: Optional[str] = None
    csv: Optional[str] = None
    phases_out: Optional[str] = None
    phases_in: Optional[str] = None
    log_level: str = "INFO"
    config_file: Optional[str] = None

    @field_validator("s")
    @classmethod
    def _check_s(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            parse_complex(value)
        return value

    @field_validator("points")
    @classmethod
    def _check_points(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not parse_complex_list(value):
            raise ValueError("no points given")
        return value

    @field_validator("disk")
    @classmethod
    def _check_disk(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            _, _, r = parse_floats(value, 3)
            if r <= 0:
                raise ValueError("disk radius must be positive")
        return value

    @field_validator("rect")
    @classmethod
    def _check_rect(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            x0, y0, x1, y1 = parse_floats(value, 4)
            if not (x0 < x1 and y0 < y1):
                raise ValueError("rectangle needs x0 < x1 and y0 < y1")
        return value

    @field_validator("tau")
    @classmethod
    def _check_tau(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            lo, _ = parse_range(value)
            if lo <= 0:
                raise ValueError("shift range must be positive")
        return value

    @field_validator("y", "X", mode="before")
    @classmethod
    def _split_list(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [float(v) for v in value.split(",") if v.strip()]
        if isinstance(value, (int, float)):
            return [float(value)]
        return value

    @field_validator("y", "X")
    @classmethod
    def _at_least_two(cls, value: List[float]) -> List[float]:
        if not value or min(value) < 2:
            raise ValueError("values must be >= 2")
        return value

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value!r}")
        return level

    @model_validator(mode="after")
    def _check_command_inputs(self) -> "ExperimentConfig":
        needs_region = {"poly-check", "smooth-check", "fit-phases", "witness", "zeros-report"}
        if self.command in needs_region and (self.disk is None) == (self.rect is None):
            raise ValueError("give exactly one of --disk or --rect")
        if self.command == "eval" and self.s is None:
            raise ValueError("--s is required for eval")
        if self.command in ("sample-q", "sample-qt", "compare") and self.points is None:
            raise ValueError("--points is required")
        one_target = (self.target is None) != (self.log_target is None)
        if self.command in ("fit-phases", "witness") and not one_target:
            raise ValueError("give exactly one of --target or --log-target")
        if self.command == "witness" and self.tau is None and self.T is None:
            raise ValueError("--tau or --T is required for witness")
        if self.log_target is not None and self.m != 0:
            raise ValueError("--log-target only makes sense with --m 0")
        if self.m_alt is not None and self.command != "compare":
            raise ValueError("--m-alt only applies to compare")
        if self.phases_in is not None and self.command != "fit-phases":
            raise ValueError("--phases-in only applies to fit-phases")
        return self

    def echo(self) -> Dict[str, Any]:
        """Result-relevant settings, embedded in every output."""
        return self.model_dump(mode="json", exclude=VOLATILE_FIELDS)

    def config_hash(self) -> str:
        payload = json.dumps(self.echo(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def shift_window(self) -> Optional[tuple]:
        if self.tau is not None:
            return parse_range(self.tau)
        if self.T is not None:
            return (self.T, 2.0 * self.T)
        return None

    def eval_point(self) -> complex:
        return parse_complex(self.s)

    def point_list(self) -> List[complex]:
        return parse_complex_list(self.points)
