# selberg/utils/numbers.py
"""
Parsing helpers for command-line numbers.

Complex numbers are written `a+bi` / `a-bi` with no spaces.
"""

from typing import List, Tuple


def parse_complex(text: str) -> complex:
    """
    Parse `a+bi`, `a-bi`, `a`, or `bi`.

    Raises:
        ValueError: on anything else (including embedded spaces)
    """
    raw = text.strip()
    if not raw or " " in raw:
        raise ValueError(f"not a complex number: {text!r}")
    if raw.endswith("i"):
        raw = raw[:-1] + "j"
    if "i" in raw or raw.endswith("jj"):
        raise ValueError(f"not a complex number: {text!r}")
    try:
        return complex(raw)
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}") from None


def format_complex(value: complex) -> str:
    sign = "+" if value.imag >= 0 else "-"
    return f"{value.real:.12g}{sign}{abs(value.imag):.12g}i"


def parse_complex_list(text: str) -> List[complex]:
    """Comma-separated complex numbers: `0.8,0.85+0.5i`."""
    return [parse_complex(part) for part in text.split(",") if part.strip()]


def parse_floats(text: str, count: int) -> Tuple[float, ...]:
    """Exactly `count` comma-separated reals."""
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def parse_range(text: str) -> Tuple[float, float]:
    """`a:b` with a < b."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"expected a:b, got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    if not lo < hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi
