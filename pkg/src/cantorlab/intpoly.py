"""Exact univariate integer-polynomial arithmetic.

Coefficients are arbitrary-precision Python integers stored ascending by
power; the zero polynomial is the empty coefficient tuple and has no degree.
All values are immutable and every operation is a pure function, so they can
be shared freely between threads or tasks.

Rational scalars are plain :class:`fractions.Fraction` values, whose
normalised-numerator/positive-denominator representation matches what exact
evaluation needs.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

Rational = Fraction

__all__ = [
    "IntPoly",
    "Rational",
    "PolyParseError",
    "linear_combine",
    "mul",
    "compose",
    "eval_rat",
    "reverse",
    "divide_out_x",
    "exact_divides",
    "ContentPrimitive",
    "content_primitive",
    "squarefree_check",
    "parse_poly",
    "format_poly",
    "poly_to_coeff_strings",
    "poly_from_coeff_strings",
]


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial in canonical form: no trailing zero coefficient.

    ``coeffs[j]`` multiplies ``x**j``.  Construction canonicalises, so two
    equal polynomials always compare and hash equal.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(j * c for j, c in enumerate(self.coeffs))[1:])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return linear_combine(1, self, 1, other)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return linear_combine(1, self, -1, other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "IntPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = ONE
        for _ in range(exponent):
            result = mul(result, self)
        return result

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"IntPoly({self.coeffs!r})"


ZERO = IntPoly(())
ONE = IntPoly((1,))
X = IntPoly((0, 1))


def linear_combine(c1: int, p: IntPoly, c2: int, q: IntPoly) -> IntPoly:
    """Return ``c1*p + c2*q`` in canonical form."""
    width = max(len(p.coeffs), len(q.coeffs))
    return IntPoly(tuple(c1 * p.coeff(j) + c2 * q.coeff(j) for j in range(width)))


def mul(p: IntPoly, q: IntPoly) -> IntPoly:
    """Exact product by schoolbook convolution."""
    if p.is_zero or q.is_zero:
        return ZERO
    out = [0] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return IntPoly(tuple(out))


def compose(p: IntPoly, q: IntPoly) -> IntPoly:
    """Return the expansion of ``p(q(x))`` (Horner over polynomials)."""
    result = ZERO
    for c in reversed(p.coeffs):
        result = mul(result, q) + IntPoly((c,))
    return result


def eval_rat(p: IntPoly, x: Rational | int) -> Rational:
    """Exact value of ``p`` at the rational ``x`` (Horner)."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def reverse(p: IntPoly) -> IntPoly:
    """Reverse the coefficient sequence.

    If ``p(r) = 0`` with ``r != 0`` then ``reverse(p)(1/r) = 0``.  Requires a
    nonzero constant term, otherwise reversal would silently drop degree.
    """
    if p.constant == 0:
        raise ValueError("zero constant term: divide out x first")
    return IntPoly(tuple(reversed(p.coeffs)))


def divide_out_x(p: IntPoly, k: int) -> IntPoly:
    """Return ``p / x**k``; the k lowest coefficients must all be zero."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    low = p.coeffs[:k]
    if any(low):
        bad = next(j for j, c in enumerate(low) if c)
        raise ValueError(f"coefficient of x^{bad} is nonzero; cannot divide by x^{k}")
    return IntPoly(p.coeffs[k:])


def _divmod_qq(
    num: list[Fraction], den: list[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals; den must be trimmed, nonzero."""
    if len(num) < len(den):
        return [], list(num)
    quot = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    lead = den[-1]
    for i in reversed(range(len(quot))):
        c = rem[i + len(den) - 1] / lead
        quot[i] = c
        if c:
            for j, dj in enumerate(den):
                rem[i + j] -= c * dj
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def exact_divides(d: IntPoly, p: IntPoly) -> IntPoly | None:
    """Return the quotient q with ``p = d*q`` over the integers, else None.

    Division is performed over exact rationals; divisibility holds only when
    the remainder is exactly zero and the quotient has integer coefficients.
    """
    if d.is_zero:
        raise ValueError("division by the zero polynomial")
    if p.is_zero:
        return ZERO
    quot, rem = _divmod_qq(
        [Fraction(c) for c in p.coeffs], [Fraction(c) for c in d.coeffs]
    )
    if rem or any(c.denominator != 1 for c in quot):
        return None
    return IntPoly(tuple(int(c) for c in quot))


class ContentPrimitive(NamedTuple):
    content: int
    primitive: IntPoly
    sign: int


def content_primitive(p: IntPoly) -> ContentPrimitive:
    """Split ``p = sign * content * primitive`` with positive-leading primitive."""
    if p.is_zero:
        raise ValueError("zero polynomial has no content")
    content = math.gcd(*(abs(c) for c in p.coeffs))
    sign = 1 if p.leading > 0 else -1
    unit = sign * content
    return ContentPrimitive(content, IntPoly(tuple(c // unit for c in p.coeffs)), sign)


def squarefree_check(p: IntPoly) -> bool:
    """True iff gcd(p, p') is constant, i.e. p has no repeated root."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    a = [Fraction(c) for c in p.coeffs]
    b = [Fraction(c) for c in p.derivative().coeffs]
    while b:
        _, r = _divmod_qq(a, b)
        a, b = b, r
    return len(a) <= 1


# ---------------------------------------------------------------------------
# Text and JSON interchange.
#
# Machine form: JSON array of decimal integer strings, ascending by power,
# e.g. ["-5","18","-24","12"].  Human form: terms `c`, `c*x^k`, `x^k` joined
# by +/-, case-insensitive `x`.  Parsing round-trips the machine form
# bit-exactly; display uses descending powers.
# ---------------------------------------------------------------------------


class PolyParseError(ValueError):
    """Malformed polynomial text; ``token`` names the first offending piece."""

    def __init__(self, token: str, message: str | None = None):
        self.token = token
        super().__init__(message or f"malformed polynomial near {token!r}")


_INT_RE = re.compile(r"^-?\d+$")
_TERM_RE = re.compile(
    r"^(?:(?P<coef>\d+)\s*\*?\s*)?(?P<var>[xX])(?:\^(?P<exp>\d+))?$|^(?P<const>\d+)$"
)


def poly_from_coeff_strings(items: list) -> IntPoly:
    coeffs = []
    for item in items:
        if isinstance(item, int) and not isinstance(item, bool):
            coeffs.append(item)
            continue
        if not isinstance(item, str) or not _INT_RE.match(item.strip()):
            raise PolyParseError(str(item), f"not a decimal integer: {item!r}")
        coeffs.append(int(item))
    return IntPoly(tuple(coeffs))


def poly_to_coeff_strings(p: IntPoly) -> list[str]:
    return [str(c) for c in p.coeffs]


def _parse_expression(text: str) -> IntPoly:
    stripped = text.strip()
    if not stripped:
        raise PolyParseError(text, "empty polynomial expression")
    # Normalise leading sign, then split into (sign, term) pairs.
    body = stripped
    if body[0] not in "+-":
        body = "+" + body
    pieces = re.findall(r"([+-])\s*([^+-]+)", body)
    consumed = "".join(sign + term for sign, term in pieces)
    if re.sub(r"\s+", "", consumed) != re.sub(r"\s+", "", body):
        raise PolyParseError(stripped, f"cannot tokenise {stripped!r}")
    acc: dict[int, int] = {}
    for sign, raw in pieces:
        term = raw.strip()
        m = _TERM_RE.match(re.sub(r"\s+", "", term))
        if not m:
            raise PolyParseError(term)
        if m.group("const") is not None:
            power, coef = 0, int(m.group("const"))
        else:
            power = int(m.group("exp")) if m.group("exp") else 1
            coef = int(m.group("coef")) if m.group("coef") else 1
        acc[power] = acc.get(power, 0) + (coef if sign == "+" else -coef)
    width = max(acc) + 1
    return IntPoly(tuple(acc.get(j, 0) for j in range(width)))


def parse_poly(text: str) -> IntPoly:
    """Parse either the JSON coefficient-array form or a human expression."""
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise PolyParseError(s, f"bad JSON array: {exc}") from None
        if not isinstance(data, list):
            raise PolyParseError(s, "expected a JSON array")
        return poly_from_coeff_strings(data)
    return _parse_expression(s)


def format_poly(p: IntPoly) -> str:
    """Human rendering: descending powers, explicit signs, lowercase x."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for j in reversed(range(len(p.coeffs))):
        c = p.coeffs[j]
        if c == 0:
            continue
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            stem = "x" if j == 1 else f"x^{j}"
            body = stem if mag == 1 else f"{mag}{stem}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
