"""JSON helpers shared by the report types."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

SCHEMA = "patstat/1"


def rational(x: Fraction | int) -> dict[str, str]:
    """Encode a rational as decimal strings so precision survives any JSON reader."""
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def parse_rational(obj: dict[str, str]) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def dumps(obj: Any) -> str:
    """Canonical encoding: fixed key order, repr floats, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"
