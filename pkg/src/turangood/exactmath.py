"""Exact univariate polynomials and rational functions in ``r``.

Coefficients are :class:`fractions.Fraction`; no floating point is used
anywhere in this module. Rational functions are kept in a canonical form so
that structural equality is mathematical equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Union

Rational = Fraction
Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Evaluation at, or positivity check across, a pole."""


def _frac(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class Polynomial:
    """Polynomial in ``r`` with rational coefficients, ascending degree order.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()) -> None:
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Polynomial":
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial | Number") -> "Polynomial":
        other = _poly(other)
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial | Number") -> "Polynomial":
        return self + (-_poly(other))

    def __rsub__(self, other: Number) -> "Polynomial":
        return _poly(other) - self

    def __mul__(self, other: "Polynomial | Number") -> "Polynomial":
        other = _poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d, lead = other.degree, other.lc
        while len(rem) - 1 >= d and rem:
            shift = len(rem) - 1 - d
            f = rem[-1] / lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[shift + i] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __call__(self, x: Number) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, a: Number) -> "Polynomial":
        """Coefficients of ``p(s + a)`` as a polynomial in ``s`` (Taylor shift)."""
        a = _frac(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Polynomial(cs)

    def monic(self) -> "Polynomial":
        return self * (1 / self.lc) if self.coeffs else self

    def content(self) -> Fraction:
        """Positive rational c with ``self / c`` a primitive integer polynomial."""
        if not self.coeffs:
            return Fraction(0)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in self.coeffs), 0)
        return Fraction(num, den)

    def render(self, var: str = "r") -> str:
        """Fixed text grammar, e.g. ``3*r^5 - 11*r^4 + 9*r^3``."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = _fmt(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self.render()})"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly(x: "Polynomial | Number") -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


R = Polynomial([0, 1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list[Polynomial]:
    """Yun's algorithm: ``[q1, q2, ...]`` with ``p = lc * prod q_i**i``, q_i squarefree, coprime."""
    if p.degree <= 0:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    z = y - w.derivative()
    while w.degree > 0:
        g = poly_gcd(w, z)
        out.append(g)
        w = w // g
        y = z // g
        z = y - w.derivative()
    return out


# ---------------------------------------------------------------------------
# Sturm sequences


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        rem = seq[-2] % seq[-1]
        if rem.is_zero():
            break
        seq.append(-rem)
    return [q for q in seq if not q.is_zero()]


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign_right_of(q: Polynomial, a: Fraction) -> int:
    # sign of q on (a, a+eps): first nonzero Taylor coefficient at a
    for c in q.shift(a).coeffs:
        if c:
            return 1 if c > 0 else -1
    return 0


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def count_roots_right_of(p: Polynomial, a: Number) -> int:
    """Distinct real roots of ``p`` in the open ray ``(a, inf)``."""
    if p.degree <= 0:
        return 0
    a = _frac(a)
    seq = sturm_sequence(p)
    left = _sign_changes(_sign_right_of(q, a) for q in seq)
    right = _sign_changes(_sign(q.lc) for q in seq)
    return left - right


def count_roots_between(p: Polynomial, a: Number, b: Number) -> int:
    """Distinct real roots of ``p`` in the half-open interval ``(a, b]``."""
    a, b = _frac(a), _frac(b)
    if p.degree <= 0 or b <= a:
        return 0
    seq = sturm_sequence(p)
    left = _sign_changes(_sign_right_of(q, a) for q in seq)
    at_b = _sign_changes(_sign_right_of(q, b) for q in seq)
    return left - at_b


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every real root has absolute value below this bound."""
    lead = abs(p.lc)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RationalFunction:
    """``num / den`` with integer coefficients, reduced, ``lc(den) > 0``.

    Canonical form: gcd(num, den) = 1 as polynomials, both have integer
    coefficients, their contents are coprime and the denominator's leading
    coefficient is positive. Zero is ``0 / 1``.
    """

    num: Polynomial
    den: Polynomial

    @classmethod
    def make(cls, num: "Polynomial | Number", den: "Polynomial | Number" = 1) -> "RationalFunction":
        num, den = _poly(num), _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return cls(Polynomial(), Polynomial([1]))
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        cn, cd = num.content(), den.content()
        scale = cn / cd
        num = num * (1 / cn)
        den = den * (1 / cd)
        # now num, den primitive integer polys; fold the rational scale back in
        num = num * scale.numerator
        den = den * scale.denominator
        if den.lc < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def const(cls, c: Number) -> "RationalFunction":
        c = _frac(c)
        return cls(Polynomial([c.numerator]), Polynomial([c.denominator]))

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        return parse_rf(text)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RationalFunction | Number") -> "RationalFunction":
        o = _rf(other)
        return RationalFunction.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction | Number") -> "RationalFunction":
        return self + (-_rf(other))

    def __rsub__(self, other: Number) -> "RationalFunction":
        return _rf(other) - self

    def __mul__(self, other: "RationalFunction | Number") -> "RationalFunction":
        o = _rf(other)
        return RationalFunction.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction | Number") -> "RationalFunction":
        o = _rf(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction.make(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Number) -> "RationalFunction":
        return _rf(other) / self

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return RationalFunction.const(1) / (self ** -k)
        return RationalFunction.make(self.num ** k, self.den ** k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x: Number) -> Fraction:
        return rf_eval(self, x)

    def render(self, var: str = "r") -> str:
        if self.den == Polynomial([1]):
            return self.num.render(var)
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()})"


def _rf(x: "RationalFunction | Polynomial | Number") -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction.make(x)
    return RationalFunction.const(x)


def rf(x: "RationalFunction | Polynomial | Number") -> RationalFunction:
    """Coerce an int, Fraction or Polynomial to a RationalFunction."""
    return _rf(x)


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    ops = {"+": a.__add__, "-": a.__sub__, "*": a.__mul__, "/": a.__truediv__}
    try:
        return ops[op](b)
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None


def rf_eval(f: RationalFunction, x: Number) -> Fraction:
    d = f.den(x)
    if d == 0:
        raise PoleError(f"pole of {f.render()} at r = {x}")
    return f.num(x) / d


_TOKEN = re.compile(r"\s*(?:(\d+)|(r)|(.))")


def parse_rf(text: str) -> RationalFunction:
    """Parse the grammar produced by :meth:`RationalFunction.render` (and a little more)."""
    tokens: list[tuple[str, str]] = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("var", "r"))
        elif m.group(3) and not m.group(3).isspace():
            tokens.append(("op", m.group(3)))
    pos = 0

    def peek() -> tuple[str, str] | None:
        return tokens[pos] if pos < len(tokens) else None

    def take(kind: str, value: str | None = None) -> str:
        nonlocal pos
        tok = peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise ValueError(f"parse error at token {pos} in {text!r}")
        pos += 1
        return tok[1]

    def expr() -> RationalFunction:
        neg = False
        if peek() == ("op", "-"):
            take("op", "-")
            neg = True
        acc = term()
        if neg:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            op = take("op")
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> RationalFunction:
        acc = power()
        while peek() in (("op", "*"), ("op", "/")):
            op = take("op")
            f = power()
            acc = acc * f if op == "*" else acc / f
        return acc

    def power() -> RationalFunction:
        base = atom()
        if peek() == ("op", "^"):
            take("op", "^")
            base = base ** int(take("int"))
        return base

    def atom() -> RationalFunction:
        tok = peek()
        if tok is None:
            raise ValueError(f"unexpected end of {text!r}")
        if tok == ("op", "("):
            take("op", "(")
            e = expr()
            take("op", ")")
            return e
        if tok == ("op", "-"):
            take("op", "-")
            return -atom()
        if tok[0] == "int":
            return RationalFunction.const(int(take("int")))
        if tok[0] == "var":
            take("var")
            return RationalFunction.make(R)
        raise ValueError(f"unexpected token {tok[1]!r} in {text!r}")

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


# ---------------------------------------------------------------------------
# positivity on a ray


@dataclass(frozen=True)
class RayVerdict:
    """Outcome of :func:`positive_on_integer_ray`.

    ``status`` is ``"positive"`` (f > 0 on [r0, inf)), ``"nonnegative"``
    (f >= 0 there, with a zero somewhere) or ``"fails"``. For failures
    ``failing_r`` is the smallest integer >= r0 with f < 0 when one exists,
    and ``witness`` is an exact point where f < 0.
    """

    status: str
    method: str
    r0: int
    failing_r: int | None = None
    witness: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.status in ("positive", "nonnegative")

    @property
    def strict(self) -> bool:
        return self.status == "positive"

    def as_dict(self) -> dict:
        out = {"status": self.status, "method": self.method, "r0": self.r0}
        if self.failing_r is not None:
            out["failing_r"] = self.failing_r
        if self.witness is not None:
            out["witness"] = _fmt(self.witness)
        return out


def _poly_sign_on_ray(p: Polynomial, r0: Fraction) -> tuple[str, str]:
    """("positive" | "nonnegative" | "fails", method) for p on [r0, inf)."""
    if p.is_zero():
        return "nonnegative", "shift"
    shifted = p.shift(r0)
    if all(c >= 0 for c in shifted.coeffs):
        return ("positive" if shifted.coeffs[0] > 0 else "nonnegative"), "shift"
    if p.lc < 0:
        return "fails", "sturm"
    # p >= 0 on the ray iff no odd-multiplicity factor changes sign inside it
    for mult, q in enumerate(squarefree_decomposition(p), start=1):
        if mult % 2 == 1 and count_roots_right_of(q, r0) > 0:
            return "fails", "sturm"
    if p(r0) == 0 or count_roots_right_of(p, r0) > 0:
        return "nonnegative", "sturm"
    return "positive", "sturm"


def _negative_witness(f: RationalFunction, r0: Fraction) -> tuple[int | None, Fraction | None]:
    bound = max(cauchy_bound(f.num), r0) + 1
    r = int(r0) if r0.denominator == 1 else int(r0) + 1
    while r <= bound:
        if f(r) < 0:
            return r, Fraction(r)
        r += 1
    # negative only strictly between integers: bisect Sturm intervals for a point
    crit = sorted({r0, bound} | _root_brackets(f.num, r0, bound))
    for a, b in zip(crit, crit[1:]):
        mid = (a + b) / 2
        if f.den(mid) != 0 and f(mid) < 0:
            return None, mid
    return None, None


def _root_brackets(p: Polynomial, lo: Fraction, hi: Fraction) -> set[Fraction]:
    # endpoints of intervals each isolating one root of the squarefree part
    sq = p // poly_gcd(p, p.derivative()) if p.degree > 0 else p
    out: set[Fraction] = set()
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        k = count_roots_between(sq, a, b)
        if k == 0:
            continue
        if k == 1 and b - a < Fraction(1, 1 << 20):
            out.update((a, b))
            continue
        m = (a + b) / 2
        out.add(m)
        stack.extend([(a, m), (m, b)])
    return out


def positive_on_integer_ray(f: RationalFunction, r0: int) -> RayVerdict:
    """Certify the sign of ``f`` on every real ``r >= r0``.

    Fast path: substitute ``r = s + r0`` and check that all coefficients of
    numerator and denominator are nonnegative. Otherwise fall back to exact
    Sturm-sequence root counting. On failure, scan integers for a witness.
    """
    r0f = _frac(r0)
    den_status, _ = _poly_sign_on_ray(f.den, r0f)
    if den_status != "positive":
        raise PoleError(f"denominator of {f.render()} vanishes on [{r0}, inf)")
    status, method = _poly_sign_on_ray(f.num, r0f)
    if status != "fails":
        return RayVerdict(status, method, r0)
    failing_r, witness = _negative_witness(f, r0f)
    return RayVerdict("fails", "scan", r0, failing_r, witness)
