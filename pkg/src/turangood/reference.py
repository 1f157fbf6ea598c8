"""Transcribed closed forms used as cross-check targets.

Every expression here is stored as text in the RationalFunction grammar and
parsed on demand. Indices refer to the pinned 4-vertex basis F0..F10 of
:func:`turangood.graphs.f4_basis`. Nothing in this module is used to build
the certificate; it is only compared against.
"""

from __future__ import annotations

from functools import lru_cache

from .exactmath import RationalFunction, parse_rf

OPT = "12*((r-1)/r)^3"
ZYKOV_BOUND = "(r^3 - 6*r^2 + 11*r - 6)/r^3"

# weights multiplying the slack P0 and the squares P1..P3
WEIGHTS = {
    0: "18*(r^2 - 2*r + 1)/(3*r^2 - 11*r + 9)",
    1: "(3*r^3 - 10*r^2 + 7*r)/(3*r^5 - 11*r^4 + 9*r^3)",
    2: "(9*r^5 - 32*r^4 + 25*r^3)/(4*(3*r^5 - 11*r^4 + 9*r^3))",
    3: "(15*r^3 - 24*r^2 + 7*r)/(4*(3*r^5 - 11*r^4 + 9*r^3))",
}

# coefficient of F10 in the Zykov slack; F0..F9 all carry ZYKOV_BOUND
P0_F10 = "(-6*r^2 + 11*r - 6)/r^3"

EXPANSIONS = {
    1: {0: "6*r^2 - 12*r + 6", 1: "r^2 - 2*r + 1", 2: "1 - r", 3: "3 - 3*r", 8: "2", 9: "1"},
    2: {3: "3", 7: "1", 6: "-1", 8: "-4"},
    3: {
        3: "3*r^2 - 12*r + 12",
        7: "r^2 - 8*r + 12",
        6: "r^2 - 6*r + 12",
        8: "4*r^2 - 16*r + 16",
        9: "20 - 8*r",
        10: "24",
    },
}

_DEN = "(3*r^5 - 11*r^4 + 9*r^3)"
COEFFICIENTS = {
    0: OPT,
    1: f"(21*r^2 - 97*r + 108)*(r - 1)^3/{_DEN}",
    2: f"(18*r^3 - 111*r^2 + 205*r - 108)*(r - 1)^2/{_DEN}",
    3: OPT,
    4: f"18*(r - 1)^3*(r - 2)*(r - 3)/{_DEN}",
    5: f"18*(r - 1)^3*(r - 2)*(r - 3)/{_DEN}",
    6: f"(45*r^5 - 351*r^4 + 1035*r^3 - 1389*r^2 + 870*r - 216)/(2*{_DEN})",
    7: f"(30*r^4 - 180*r^3 + 371*r^2 - 327*r + 108)*(r - 1)/{_DEN}",
    8: OPT,
    9: OPT,
    10: OPT,
}

DELTA1 = "12 - 45/r + 111/(2*r^2) - 27/(2*r^3) - 21/r^4 + 24/r^5 + 3/(2*r^6) - 3/(2*r^7)"
DELTA2 = "12 - 54/r + 78/r^2 - 96/r^4 + 72/r^5 + 24/r^6 - 24/r^7"
OPT_MINUS_DELTA1 = "9/r - 39/(2*r^2) + 3/(2*r^3) + 21/r^4 - 24/r^5 - 3/(2*r^6) + 3/(2*r^7)"
OPT_MINUS_DELTA2 = "18/r - 42/r^2 - 12/r^3 + 96/r^4 - 72/r^5 - 24/r^6 + 24/r^7"
# lower bounds the two differences are claimed to exceed
DELTA1_FLOOR = "9/r - 39/(2*r^2)"
DELTA2_FLOOR = "18/r - 42/r^2 - 12/r^3"
# the closing inequality of the type-2 vertex argument appears with -48/r^2
# in one place and -42/r^2 in another; both are checked
TYPE2_CLOSING = "18/r - 48/r^2 - 12/r^3"
TYPE1_CLOSING = "9/r - 39/(2*r^2)"
CLOSING_TARGET = "1/r^4"


@lru_cache(maxsize=None)
def rf(text: str) -> RationalFunction:
    return parse_rf(text)


def expansion(j: int) -> list[RationalFunction]:
    """Reference coefficient vector of square j over F0..F10."""
    vec = [RationalFunction.const(0)] * 11
    for i, text in EXPANSIONS[j].items():
        vec[i] = rf(text)
    return vec


def coefficient_table() -> list[RationalFunction]:
    return [rf(COEFFICIENTS[i]) for i in range(11)]
