"""Number formatting and SI-suffix parsing for the CLI and table renderers."""

from __future__ import annotations

import re

from .errors import InvalidArgumentError

__all__ = ["format_quantity", "parse_rate", "parse_size"]

NUMBER_FORMATS = ("auto", "sci", "fixed")

# Decimal (powers of 10) suffixes: drive vendors and the 1 TB / 100 MB/s
# arithmetic this toolkit reproduces are decimal, not binary.
_SIZE_SUFFIXES = {
    "": 1.0,
    "B": 1.0,
    "KB": 1e3,
    "MB": 1e6,
    "GB": 1e9,
    "TB": 1e12,
    "PB": 1e15,
}

_SIZE_RE = re.compile(r"^\s*([0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)\s*([A-Za-z]*)\s*$")


def format_quantity(value: float, mode: str = "auto") -> str:
    """Render a time/MTTDL quantity.

    ``sci``   -> 4 significant digits, compact exponent: 9.438E6, 2.000E2
    ``fixed`` -> two decimals: 4491.17, 0.66
    ``auto``  -> sci for magnitudes >= 1e4, fixed below
    """
    if mode == "auto":
        mode = "sci" if abs(value) >= 1e4 else "fixed"
    if mode == "fixed":
        return f"{value:.2f}"
    if mode == "sci":
        mantissa, exponent = f"{value:.3E}".split("E")
        return f"{mantissa}E{int(exponent)}"
    raise InvalidArgumentError(f"unknown number format: {mode!r}")


def parse_size(text: str) -> float:
    """Parse a byte quantity like '1TB', '750 GB', or a bare byte count."""
    match = _SIZE_RE.match(text)
    if not match:
        raise InvalidArgumentError(f"cannot parse size: {text!r}")
    number, suffix = match.groups()
    factor = _SIZE_SUFFIXES.get(suffix.upper())
    if factor is None:
        raise InvalidArgumentError(f"unknown size suffix in {text!r}")
    return float(number) * factor


def parse_rate(text: str) -> float:
    """Parse an I/O rate like '100MB/s' into bytes per second."""
    stripped = text.strip()
    if stripped.lower().endswith("/s"):
        stripped = stripped[:-2]
    return parse_size(stripped)
