"""Algebraic certification with no probabilistic or floating-point step.

Provides Eisenstein irreducibility witnesses, exclusion of roots from the
algebraic integers, exact bisection root isolation in certified sign-change
brackets, conservative interval evaluation, and the two derivations that turn
a partition-form identity into a monic integer equation for the reciprocal
variable ``(1-t)/t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .intpoly import IntPoly, content_primitive, eval_rat, squarefree_check
from .intpoly import compose as poly_compose
from .partition import PartitionForm, elevate, expand, to_form

__all__ = [
    "RationalInterval",
    "EisensteinWitness",
    "NonIntegralityCertificate",
    "InconclusiveError",
    "is_prime",
    "eisenstein_check",
    "rational_root_free",
    "not_algebraic_integer",
    "isolate_root",
    "eval_interval",
    "interval_image",
    "beta_equation",
    "theorem_beta_equation",
]

# Witnesses below 3.317e24 make Miller-Rabin with these bases deterministic.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n below 3.3e24."""
    if n >= _MR_LIMIT:
        raise ValueError("primality test is deterministic only below 3.3e24")
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class RationalInterval:
    """Pair of exact rationals ``lo <= hi`` bracketing a value.

    ``exact`` marks a degenerate interval pinning the value precisely (only
    then may ``lo == hi``).  When the interval certifies a root, the target
    polynomial has strictly opposite signs at the endpoints; that is enforced
    at the operations that produce such intervals, not here.
    """

    lo: Fraction
    hi: Fraction
    exact: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.exact:
            if self.lo != self.hi:
                raise ValueError("exact interval must be degenerate")
        elif not self.lo < self.hi:
            raise ValueError("need lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def to_json_dict(self) -> dict:
        data = {"lo": str(self.lo), "hi": str(self.hi)}
        if self.exact:
            data["exact"] = True
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "RationalInterval":
        return cls(
            Fraction(data["lo"]), Fraction(data["hi"]), bool(data.get("exact", False))
        )


@dataclass(frozen=True)
class EisensteinWitness:
    """Irreducibility witness: prime dividing every non-leading coefficient
    but not the leading one, with its square missing the constant term."""

    poly: IntPoly
    prime: int

    def holds(self) -> bool:
        p, poly = self.prime, self.poly
        if poly.degree is None or poly.degree < 1 or not is_prime(p):
            return False
        return (
            all(c % p == 0 for c in poly.coeffs[:-1])
            and poly.leading % p != 0
            and poly.constant % (p * p) != 0
        )

    def to_json_dict(self) -> dict:
        return {"prime": str(self.prime)}


def eisenstein_check(poly: IntPoly, prime: int) -> EisensteinWitness | None:
    """Return a witness iff the criterion holds for ``poly`` at ``prime``.

    A witness certifies irreducibility over the rationals.  A composite
    ``prime`` is a usage error; mere failure of the divisibility pattern is
    the normal None outcome.
    """
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if poly.degree is None or poly.degree < 1:
        raise ValueError("need degree >= 1")
    witness = EisensteinWitness(poly, prime)
    return witness if witness.holds() else None


def rational_root_free(poly: IntPoly) -> bool:
    """True iff ``poly`` (degree 1..3) has no rational root.

    By the rational-root test on the primitive part; for degrees 2 and 3 this
    settles irreducibility over the rationals.  Degrees above 3 are out of
    scope here and raise.
    """
    deg = poly.degree
    if deg is None or deg < 1 or deg > 3:
        raise ValueError("rational-root irreducibility handles degrees 1..3 only")
    if poly.constant == 0:
        return False
    lead, const = abs(poly.leading), abs(poly.constant)
    num_divs = [d for d in range(1, const + 1) if const % d == 0]
    den_divs = [d for d in range(1, lead + 1) if lead % d == 0]
    for num in num_divs:
        for den in den_divs:
            for sign in (1, -1):
                if eval_rat(poly, Fraction(sign * num, den)) == 0:
                    return False
    return True


class InconclusiveError(Exception):
    """The available evidence cannot exclude an algebraic integer."""


@dataclass(frozen=True)
class NonIntegralityCertificate:
    """Evidence that no root of ``poly`` is an algebraic integer.

    ``poly`` is primitive and irreducible over the rationals (by the recorded
    Eisenstein witness, or by the rational-root test for degree <= 3), so up
    to sign it is the cleared minimal polynomial of each of its roots; a
    leading coefficient other than +-1 then rules out a monic integer
    minimal polynomial.
    """

    poly: IntPoly
    witness: EisensteinWitness | None
    reason: str


def not_algebraic_integer(
    poly: IntPoly, witness: EisensteinWitness | None = None
) -> NonIntegralityCertificate:
    """Certify that no root of ``poly`` is an algebraic integer.

    Requires ``poly`` primitive with ``|leading| != 1`` plus irreducibility
    evidence: a valid Eisenstein witness, or degree <= 3 with no rational
    root (degree 1 is vacuously irreducible).  Raises
    :class:`InconclusiveError` when the leading coefficient is a unit or no
    irreducibility route applies.
    """
    deg = poly.degree
    if deg is None or deg < 1:
        raise ValueError("need degree >= 1")
    if content_primitive(poly).content != 1:
        raise ValueError("polynomial must be primitive")
    if abs(poly.leading) == 1:
        raise InconclusiveError(
            "inconclusive: unit leading coefficient, root is an algebraic "
            "integer candidate"
        )
    if witness is not None:
        if witness.poly != poly or not witness.holds():
            raise ValueError("witness does not apply to this polynomial")
        return NonIntegralityCertificate(poly, witness, "eisenstein")
    if deg == 1:
        # gcd(leading, constant) = 1 with |leading| > 1: the root is a
        # non-integer rational, hence not an algebraic integer.
        return NonIntegralityCertificate(poly, None, "rational-non-integer")
    if deg <= 3 and rational_root_free(poly):
        return NonIntegralityCertificate(poly, None, "no-rational-root")
    raise InconclusiveError(
        "inconclusive: no Eisenstein witness and degree beyond the "
        "rational-root test"
    )


def isolate_root(
    poly: IntPoly, bracket: RationalInterval, width) -> RationalInterval:
    """Shrink a sign-change bracket below ``width`` by exact bisection.

    Preconditions: ``poly`` squarefree and strictly opposite signs at the
    bracket endpoints.  A midpoint evaluating to exactly zero short-circuits
    to a degenerate exact interval.
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if not squarefree_check(poly):
        raise ValueError("polynomial is not squarefree")
    lo, hi = bracket.lo, bracket.hi
    flo, fhi = eval_rat(poly, lo), eval_rat(poly, hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("no certified sign change on the bracket")
    while hi - lo > width:
        mid = (lo + hi) / 2
        fmid = eval_rat(poly, mid)
        if fmid == 0:
            return RationalInterval(mid, mid, exact=True)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return RationalInterval(lo, hi)


def eval_interval(poly: IntPoly, iv: RationalInterval) -> RationalInterval:
    """Conservative enclosure of ``poly`` over ``iv`` (interval Horner)."""
    lo = hi = Fraction(0)
    for c in reversed(poly.coeffs):
        products = (lo * iv.lo, lo * iv.hi, hi * iv.lo, hi * iv.hi)
        lo, hi = min(products) + c, max(products) + c
    return RationalInterval(lo, hi, exact=lo == hi)


def interval_image(poly: IntPoly, iv: RationalInterval) -> RationalInterval:
    """Exact image of ``poly`` over ``iv`` under certified monotonicity.

    The derivative is interval-evaluated over ``iv``; only when that
    enclosure excludes zero is the image taken from the endpoint values.
    Otherwise the caller must supply a narrower interval.
    """
    if poly.degree is None or poly.degree == 0:
        v = Fraction(poly.constant)
        return RationalInterval(v, v, exact=True)
    slope = eval_interval(poly.derivative(), iv)
    if slope.lo <= 0 <= slope.hi:
        raise ValueError(
            "monotonicity not certified on this interval; narrow it first"
        )
    va, vb = eval_rat(poly, iv.lo), eval_rat(poly, iv.hi)
    return RationalInterval(min(va, vb), max(va, vb))


def _monic_from_descending(raw: list[int]) -> IntPoly:
    """Build the monic polynomial from coefficients listed highest power first."""
    lead = raw[0]
    if lead == 0:
        raise ValueError("derivation degenerated: leading coefficient vanished")
    if abs(lead) != 1:
        raise ValueError(
            f"derivation is not monic-normalisable: leading coefficient {lead}"
        )
    coeffs = list(reversed(raw))
    if lead == -1:
        coeffs = [-c for c in coeffs]
    return IntPoly(tuple(coeffs))


def beta_equation(f: PartitionForm, target_num: int, target_den: int) -> IntPoly:
    """Monic integer equation for ``b = (1-t)/t`` forced by a form hitting a target.

    If ``expand(f)(t) = target_num/target_den`` then, scaling that identity
    against the binomial expansion of 1 and dividing through by ``t**n``,
    the number ``b`` satisfies the returned monic polynomial — so ``b`` (and
    with it ``1/t``) would be an algebraic integer.  The coefficient of
    ``b**(n-i)`` before normalisation is ``den*a_i - num*C(n, i)``; for the
    canonical target 1/2 the leading coefficient is ``2*a_0 - 1 = +-1``, and
    other targets raise when monic normalisation is impossible.
    """
    if target_den <= 0:
        raise ValueError("target denominator must be positive")
    n = f.n
    raw = [target_den * f.a[i] - target_num * comb(n, i) for i in range(n + 1)]
    return _monic_from_descending(raw)


def theorem_beta_equation(
    m: int, k_form: PartitionForm, max_level: int | None = None
) -> IntPoly:
    """Monic integer equation for ``b = (1-r)/r`` from the obstruction identity.

    The identity ``(1-r)**m = 2 * K(2r(1-r))``, with ``K`` given by
    ``k_form``, is rewritten with both sides as partition forms at a common
    level N: the composition with ``2x(1-x)`` is re-expressed by bounded
    level search (its constant-slot coefficient is K's, hence 0 or 1), the
    left side expands binomially, and dividing by ``r**N`` leaves
    coefficients ``C(N-m, i) - 2*c_i`` on ``b**(N-i)``.  The leading
    coefficient is ``1 - 2*c_0``, always a unit, so the output is monic after
    sign normalisation; it vanishes at ``b`` exactly when the identity holds
    at ``r``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    link = IntPoly((0, 2, -2))
    composed = poly_compose(expand(k_form), link)
    bound = max(2 * k_form.n, composed.degree or 0) if max_level is None else max_level
    c_form = None
    for level in range((composed.degree or 0), bound + 1):
        c_form = to_form(composed, level)
        if c_form is not None:
            break
    if c_form is None:
        raise ValueError(f"no partition form of the composition within {bound}")
    big = max(m, c_form.n)
    while c_form.n < big:
        c_form = elevate(c_form)
    raw = [comb(big - m, i) - 2 * c_form.a[i] for i in range(big + 1)]
    return _monic_from_descending(raw)
