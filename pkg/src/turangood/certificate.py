"""Assemble and check the sum-of-squares certificate for the P3 density bound.

The bound reads

    d(P3, G) <= sum_i C_i(r) P(F_i, G),
    C_i = nu(P3, F_i) + p0 * Z_i + p1 * S1_i + p2 * S2_i + p3 * S3_i,

where Z is the Zykov slack (K4 density bound minus K4 density) and S1..S3 are
the scaled squares from :mod:`turangood.identify`. Every step is exact and
kept symbolic in r; integer scans are a second, independent check.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import __version__, reference
from .exactmath import R, RationalFunction, RayVerdict, parse_rf, positive_on_integer_ray, rf
from .flags import FlagVector, f4_coefficients, from_f4_coefficients
from .graphs import F4_NAMES, P3, Graph, count_subgraphs, f4_basis, f4_densities
from .identify import fixture_flags, load_fixture, named_square, square_shapes
from .turan import turan_k4_density, zykov_bound

REPORT_VERSION = 1
MIN_R = 4

# multipliers of the Zykov slack and of the three squares
CERTIFICATE_WEIGHTS = {
    0: "18*(r^2 - 2*r + 1)/(3*r^2 - 11*r + 9)",
    1: "(3*r^3 - 10*r^2 + 7*r)/(3*r^5 - 11*r^4 + 9*r^3)",
    2: "(9*r^5 - 32*r^4 + 25*r^3)/(4*(3*r^5 - 11*r^4 + 9*r^3))",
    3: "(15*r^3 - 24*r^2 + 7*r)/(4*(3*r^5 - 11*r^4 + 9*r^3))",
}


class CertificateMismatch(ValueError):
    def __init__(self, diffs: list[tuple[str, str, str]]) -> None:
        self.diffs = diffs
        lines = [f"  {name}: computed {got}, expected {want}" for name, got, want in diffs]
        super().__init__("certificate differs from reference:\n" + "\n".join(lines))


def opt_function() -> RationalFunction:
    return 12 * (rf(R - 1) / rf(R)) ** 3


def zykov_function() -> RationalFunction:
    return rf((R - 1) * (R - 2) * (R - 3)) / rf(R**3)


@lru_cache(maxsize=None)
def _parsed_weights() -> tuple[tuple[int, RationalFunction], ...]:
    return tuple((j, parse_rf(t)) for j, t in CERTIFICATE_WEIGHTS.items())


def weights() -> dict[int, RationalFunction]:
    return dict(_parsed_weights())


def p3_counts() -> list[int]:
    return [count_subgraphs(P3, f) for f in f4_basis()]


def build_p0() -> FlagVector:
    """Zykov slack: bound * (sum of all F_i) - K4."""
    bound = zykov_function()
    coeffs = [bound] * 11
    coeffs[10] = bound - 1
    return from_f4_coefficients(coeffs)


def build_squares(flags=None) -> dict[int, list[RationalFunction]]:
    flags = flags or fixture_flags()
    return {j: named_square(j, flags) for j in square_shapes()}


@dataclass(frozen=True)
class CoefficientTable:
    coeffs: tuple[RationalFunction, ...]

    def __getitem__(self, i: int) -> RationalFunction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def at(self, r: int | Fraction) -> list[Fraction]:
        return [c(r) for c in self.coeffs]

    def rendered(self) -> dict[str, str]:
        return {f"F{i}": c.render() for i, c in enumerate(self.coeffs)}


def assemble(
    squares: dict[int, list[RationalFunction]], w: dict[int, RationalFunction] | None = None
) -> CoefficientTable:
    w = w or weights()
    z = f4_coefficients(build_p0())
    nu = p3_counts()
    out = []
    for i in range(11):
        c = rf(nu[i]) + w[0] * z[i]
        for j, vec in squares.items():
            c = c + w[j] * vec[i]
        out.append(c)
    return CoefficientTable(tuple(out))


def fixture_diffs(table: CoefficientTable, squares: dict[int, list[RationalFunction]]) -> list[tuple[str, str, str]]:
    diffs = []
    for j, vec in squares.items():
        for i, (got, want) in enumerate(zip(vec, reference.expansion(j))):
            if got != want:
                diffs.append((f"P{j}[F{i}]", got.render(), want.render()))
    for i, (got, want) in enumerate(zip(table.coeffs, reference.coefficient_table())):
        if got != want:
            diffs.append((f"C[F{i}]", got.render(), want.render()))
    return diffs


def build_certificate(strict: bool = False) -> CoefficientTable:
    """Coefficient table from first principles; ``strict`` raises on any reference mismatch."""
    squares = build_squares()
    table = assemble(squares)
    if strict:
        diffs = fixture_diffs(table, squares)
        if diffs:
            raise CertificateMismatch(diffs)
    return table


def tight_set(table: CoefficientTable) -> list[int]:
    opt = opt_function()
    return [i for i, c in enumerate(table.coeffs) if c == opt]


# ---------------------------------------------------------------------------
# integer scan


@dataclass
class ScanRow:
    r: int
    max: Fraction
    argmax: list[int]
    ok: bool

    def as_dict(self) -> dict:
        return {"r": self.r, "max": str(self.max), "argmax": self.argmax, "ok": self.ok}


def _scan_chunk(args: tuple[tuple[RationalFunction, ...], list[int]]) -> list[ScanRow]:
    coeffs, rs = args
    opt = opt_function()
    rows = []
    for r in rs:
        vals = [c(r) for c in coeffs]
        top = max(vals)
        arg = [i for i, v in enumerate(vals) if v == top]
        rows.append(ScanRow(r, top, arg, top == opt(r)))
    return rows


def verify_max(rmin: int, rmax: int, table: CoefficientTable | None = None, workers: int = 1) -> list[ScanRow]:
    """Exact max and argmax of the coefficients at every integer r in [rmin, rmax]."""
    if rmin < MIN_R:
        raise ValueError(f"the certificate is only claimed for r >= {MIN_R}")
    if rmax < rmin:
        raise ValueError("empty r range")
    table = table or build_certificate()
    rs = list(range(rmin, rmax + 1))
    if workers <= 1 or len(rs) < 64:
        return _scan_chunk((table.coeffs, rs))
    step = -(-len(rs) // workers)
    chunks = [(table.coeffs, rs[k:k + step]) for k in range(0, len(rs), step)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_scan_chunk, chunks))
    return [row for part in parts for row in part]


# ---------------------------------------------------------------------------
# symbolic ray checks


def verify_weights() -> dict[int, RayVerdict]:
    return {j: positive_on_integer_ray(p, MIN_R) for j, p in weights().items()}


def verify_opt_gaps(table: CoefficientTable) -> dict[int, RayVerdict]:
    opt = opt_function()
    return {i: positive_on_integer_ray(opt - c, MIN_R) for i, c in enumerate(table.coeffs)}


def delta1_function() -> RationalFunction:
    return parse_rf(reference.DELTA1)


def delta2_function() -> RationalFunction:
    return parse_rf(reference.DELTA2)


@dataclass
class InequalityCheck:
    name: str
    expression: str
    verdict: RayVerdict | None = None
    identity: bool | None = None

    @property
    def ok(self) -> bool:
        if self.identity is not None:
            return self.identity
        return self.verdict is not None and self.verdict.strict

    def as_dict(self) -> dict:
        out: dict = {"name": self.name, "expression": self.expression, "ok": self.ok}
        if self.verdict is not None:
            out["verdict"] = self.verdict.as_dict()
        if self.identity is not None:
            out["identity"] = self.identity
        return out


def verify_closing_inequalities() -> list[InequalityCheck]:
    """Identities for OPT - delta_k and the strict scalar inequalities on r >= 4."""
    opt = opt_function()
    g1 = opt - delta1_function()
    g2 = opt - delta2_function()
    target = parse_rf(reference.CLOSING_TARGET)
    checks = [
        InequalityCheck("opt_minus_delta1_identity", (g1 - parse_rf(reference.OPT_MINUS_DELTA1)).render(),
                        identity=g1 == parse_rf(reference.OPT_MINUS_DELTA1)),
        InequalityCheck("opt_minus_delta2_identity", (g2 - parse_rf(reference.OPT_MINUS_DELTA2)).render(),
                        identity=g2 == parse_rf(reference.OPT_MINUS_DELTA2)),
    ]
    strict = {
        "delta1_gap": g1 - parse_rf(reference.DELTA1_FLOOR),
        "delta2_gap": g2 - parse_rf(reference.DELTA2_FLOOR),
        "type2_closing_48": parse_rf(reference.TYPE2_CLOSING) - target,
        "type2_closing_42": parse_rf(reference.DELTA2_FLOOR) - target,
        "type1_closing": parse_rf(reference.TYPE1_CLOSING) - target,
    }
    for name, f in strict.items():
        checks.append(InequalityCheck(name, f.render(), verdict=positive_on_integer_ray(f, MIN_R)))
    return checks


# ---------------------------------------------------------------------------
# finite graphs


def square_coefficient_bound(j: int, r: int | Fraction) -> Fraction:
    """Largest squared coefficient of the flag combination behind square j."""
    _, _, coeffs = square_shapes()[j]
    return max(c(r) ** 2 for c in coeffs)


@lru_cache(maxsize=None)
def finite_size_slack(r: int, n: int) -> Fraction:
    """epsilon(n) with d(P3, G) <= sum_i C_i(r) P(F_i, G) + epsilon(n) for K_{r+1}-free G.

    Two sources: the K4 density of a finite K_{r+1}-free graph may exceed the
    limiting bound (it is at most that of T_r(n)), and a square evaluated on a
    finite graph is only >= -6 max a_f^2 / (n - 3) because the two extension
    vertices must be distinct.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    w = weights()
    eps = w[0](r) * max(Fraction(0), turan_k4_density(r, n) - zykov_bound(r))
    for j in (1, 2, 3):
        eps += w[j](r) * 6 * square_coefficient_bound(j, r) / (n - 3)
    return eps


def assembled_bound(table: CoefficientTable, g: Graph, r: int) -> Fraction:
    return sum((c * p for c, p in zip(table.at(r), f4_densities(g))), Fraction(0))


def p3_density(g: Graph) -> Fraction:
    from .turan import count_p3_fast

    return Fraction(count_p3_fast(g), comb(g.n, 4))


# ---------------------------------------------------------------------------
# report


def f4_pinning_hash() -> str:
    text = "\n".join(f"F{i} {F4_NAMES[i]} {g.adj}" for i, g in enumerate(f4_basis()))
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass
class CertificateReport:
    rmin: int
    rmax: int
    table: CoefficientTable
    scan: list[ScanRow]
    weights: dict[int, RayVerdict]
    gaps: dict[int, RayVerdict]
    closing_inequalities: list[InequalityCheck]
    tight: list[int]
    fixture_matches: dict[str, bool]
    fixture_hashes: dict[str, str]
    diffs: list[tuple[str, str, str]]
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def math_ok(self) -> bool:
        return (
            all(row.ok for row in self.scan)
            and all(row.argmax == self.tight for row in self.scan)
            and all(v.ok for v in self.weights.values())
            and all(v.ok for v in self.gaps.values())
            and all(c.ok for c in self.closing_inequalities)
        )

    @property
    def fixtures_ok(self) -> bool:
        return all(self.fixture_matches.values())

    def as_dict(self, timing: bool = True) -> dict:
        out = {
            "version": REPORT_VERSION,
            "package_version": __version__,
            "r_range": [self.rmin, self.rmax],
            "verdict": {"math_ok": self.math_ok, "fixtures_ok": self.fixtures_ok},
            "coefficient_table": self.table.rendered(),
            "tight_set": self.tight,
            "per_r": [row.as_dict() for row in self.scan],
            "symbolic": {
                "p_nonneg": [dict(j=j, **v.as_dict()) for j, v in sorted(self.weights.items())],
                "opt_minus_C_nonneg": [dict(i=i, **v.as_dict()) for i, v in sorted(self.gaps.items())],
                "closing_inequalities": [c.as_dict() for c in self.closing_inequalities],
            },
            "fixtures": {
                "matches": self.fixture_matches,
                "hashes": self.fixture_hashes,
                "diffs": [{"entry": a, "computed": b, "reference": c} for a, b, c in self.diffs],
            },
        }
        if timing:
            out["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2) + "\n"


def certify(rmin: int = MIN_R, rmax: int = 1000, workers: int = 1) -> CertificateReport:
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    fixture = load_fixture()
    squares = build_squares(fixture.flags)
    table = assemble(squares)
    timing["assemble"] = time.perf_counter() - t0

    t = time.perf_counter()
    scan = verify_max(rmin, rmax, table, workers)
    timing["scan"] = time.perf_counter() - t

    t = time.perf_counter()
    wv = verify_weights()
    gv = verify_opt_gaps(table)
    s4 = verify_closing_inequalities()
    timing["symbolic"] = time.perf_counter() - t

    ref_sq = {j: reference.expansion(j) for j in squares}
    ref_c = reference.coefficient_table()
    matches = {f"P{j}": squares[j] == ref_sq[j] for j in sorted(squares)}
    matches["fixture_regression"] = all(squares[j] == fixture.expansions.get(j) for j in squares)
    matches["zykov_slack_F10"] = f4_coefficients(build_p0())[10] == parse_rf(reference.P0_F10)
    matches["weights"] = all(weights()[j] == parse_rf(reference.WEIGHTS[j]) for j in weights())
    matches["opt"] = opt_function() == parse_rf(reference.OPT)
    for i in range(11):
        matches[f"C_F{i}"] = table[i] == ref_c[i]
    timing["total"] = time.perf_counter() - t0
    return CertificateReport(
        rmin=rmin,
        rmax=rmax,
        table=table,
        scan=scan,
        weights=wv,
        gaps=gv,
        closing_inequalities=s4,
        tight=tight_set(table),
        fixture_matches=matches,
        fixture_hashes={"flag_identification": fixture.sha256, "f4_pinning": f4_pinning_hash()},
        diffs=fixture_diffs(table, squares),
        timing=timing,
    )

