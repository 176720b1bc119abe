"""Extended integers: exact Python ints plus an absorbing TOP.

TOP is ``math.inf``.  Python ints never overflow, ``x + inf == inf`` and
``min(x, inf) == x``, so ordinary arithmetic already saturates; the helpers
here only exist for the places that need to be explicit about it.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

TOP = math.inf
ExtInt = Union[int, float]

# Magnitude every instance builder must stay under.
MAX_MAGNITUDE = 2**126


def is_top(x: ExtInt) -> bool:
    return x == TOP


def ext_add(*xs: ExtInt) -> ExtInt:
    total: ExtInt = 0
    for x in xs:
        if x == TOP:
            return TOP
        total += x
    return total


def ext_min(xs: Iterable[ExtInt]) -> ExtInt:
    return min(xs, default=TOP)


def normalize(x) -> ExtInt:
    """Coerce a scalar (numpy ints included) to int or TOP."""
    if x == TOP:
        return TOP
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"non-integral cost {x!r}")
        return int(x)
    return int(x)


def check_magnitude(x: ExtInt, what: str = "value") -> None:
    if x != TOP and abs(x) >= MAX_MAGNITUDE:
        raise OverflowError(f"{what} {x} exceeds the 127-bit ExtInt range")


def to_json(x: ExtInt):
    return "TOP" if x == TOP else int(x)


def from_json(x) -> ExtInt:
    return TOP if x == "TOP" else int(x)
