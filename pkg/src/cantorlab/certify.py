"""End-to-end construction and independent re-checking of counterexample
certificates.

A certificate packages a pair of partition polynomials witnessing the
two-way reduction ``s = G(r)``, ``r = F(s)`` (with ``G`` fixed to
``2x(1-x)``), the minimal polynomial of ``r`` extracted from ``F(G(x)) = x``,
an Eisenstein witness showing the reciprocal polynomial is irreducible with
non-unit leading coefficient (so ``1/r`` is not an algebraic integer),
certified root brackets for ``r`` and ``s``, and a finite obstruction sweep
confirming that no identity ``(1-x)**(m+1) = 2x(1-x) * K(2x(1-x))`` holds at
``r`` for any partition polynomial ``K`` within the swept bounds.

Everything is exact; the verifier recomputes each invariant from the raw
polynomial data rather than trusting anything the builder recorded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, lcm
from typing import Iterator

from .algnum import (
    EisensteinWitness,
    InconclusiveError,
    RationalInterval,
    eisenstein_check,
    interval_image,
    is_prime,
    isolate_root,
    not_algebraic_integer,
)
from .intpoly import (
    IntPoly,
    X,
    _divmod_qq,
    content_primitive,
    divide_out_x,
    eval_rat,
    exact_divides,
    linear_combine,
    mul,
    reverse,
    squarefree_check,
)
from .intpoly import compose as poly_compose
from .partition import DEFAULT_MAX_LEVEL, PartitionForm, depth, expand, to_form

logger = logging.getLogger(__name__)

# The fixed second member of every certified pair: 2x(1-x), the measure
# polynomial of the two-word set {01, 10}.
G_FIXED = IntPoly((0, 2, -2))

DEFAULT_SWEEP_M = 4
DEFAULT_SWEEP_LEVEL = 5
DEFAULT_ROOT_WIDTH = Fraction(1, 10**30)
_GRID_DENOM = 64
_HALF = Fraction(1, 2)

__all__ = [
    "G_FIXED",
    "CertificationError",
    "ConditionReport",
    "check_f_conditions",
    "SweepReport",
    "obstruction_sweep",
    "Certificate",
    "build_certificate",
    "VerificationReport",
    "verify_certificate",
    "search_family",
]


class CertificationError(Exception):
    """A certification stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the three sufficient conditions on a candidate ``F``."""

    passed: bool
    failures: tuple[str, ...]


def check_f_conditions(f_poly: IntPoly, prime: int) -> ConditionReport:
    """Screen ``F``: no constant term, nonzero linear term, and a prime
    (odd) dividing every coefficient whose square does not divide them all.

    These conditions are the search filter only; final acceptance always
    rests on the direct Eisenstein check of the reciprocal polynomial, which
    is immune to any looseness here.
    """
    if prime == 2 or not is_prime(prime):
        raise ValueError(f"need an odd prime, got {prime}")
    failures = []
    if f_poly.constant != 0:
        failures.append("nonzero constant term")
    if f_poly.coeff(1) == 0:
        failures.append("zero linear term")
    if not all(c % prime == 0 for c in f_poly.coeffs):
        failures.append(f"{prime} does not divide all coefficients")
    elif all(c % (prime * prime) == 0 for c in f_poly.coeffs):
        failures.append(f"{prime * prime} divides all coefficients")
    return ConditionReport(not failures, tuple(failures))


@dataclass(frozen=True)
class SweepReport:
    """Result of an obstruction sweep.

    ``forms_checked`` counts the level-``max_level`` forms enumerated; every
    partition polynomial of any level up to the bound appears among them via
    degree elevation, and each is tested against every ``m <= max_m``.
    """

    max_m: int
    max_level: int
    forms_checked: int
    violations: int
    details: tuple[str, ...] = field(default=())

    def to_json_dict(self) -> dict:
        return {
            "max_m": self.max_m,
            "max_level": self.max_level,
            "violations": self.violations,
            "forms_checked": self.forms_checked,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SweepReport":
        return cls(
            int(data["max_m"]),
            int(data["max_level"]),
            int(data["forms_checked"]),
            int(data["violations"]),
        )


def _one_minus_x_power(k: int) -> IntPoly:
    out = IntPoly((1,))
    for _ in range(k):
        out = mul(out, IntPoly((1, -1)))
    return out


def _rem_vector(p: IntPoly, modulus: IntPoly) -> list[Fraction]:
    """Remainder of ``p`` modulo ``modulus`` over the rationals, zero-padded."""
    _, rem = _divmod_qq(
        [Fraction(c) for c in p.coeffs], [Fraction(c) for c in modulus.coeffs]
    )
    deg = modulus.degree
    return rem + [Fraction(0)] * (deg - len(rem))


def obstruction_sweep(
    r_minpoly: IntPoly,
    max_m: int = DEFAULT_SWEEP_M,
    max_level: int = DEFAULT_SWEEP_LEVEL,
) -> SweepReport:
    """Check ``r_minpoly`` divides no ``(1-x)**(m+1) - 2x(1-x)*K(2x(1-x))``.

    ``K`` ranges over all partition forms at level ``max_level`` (covering
    every lower level by elevation) and ``m`` over ``0..max_m``.  Any
    divisibility hit would mean a root of ``r_minpoly`` satisfies the
    forbidden identity and refutes the construction, so hits are re-confirmed
    by exact division before being reported.

    Divisibility is decided through remainders modulo ``r_minpoly``: the
    candidate is an integer linear combination of fixed basis polynomials
    ``2x(1-x) * g^i * (1-g)^(L-i)`` (``g = 2x(1-x)``), so its remainder is
    the same combination of precomputed basis remainders — one vector
    comparison per (form, m) instead of a polynomial division.
    """
    split = content_primitive(r_minpoly)
    if split.content != 1 or split.sign != 1:
        raise ValueError("r_minpoly must be primitive with positive leading coefficient")
    deg = r_minpoly.degree
    if deg is None or deg < 1:
        raise ValueError("r_minpoly must be nonconstant")
    if max_m < 0 or max_level < 0:
        raise ValueError("bounds must be nonnegative")

    level = max_level
    one_minus_g = linear_combine(1, IntPoly((1,)), -1, G_FIXED)
    g_pows = [IntPoly((1,))]
    og_pows = [IntPoly((1,))]
    for _ in range(level):
        g_pows.append(mul(g_pows[-1], G_FIXED))
        og_pows.append(mul(og_pows[-1], one_minus_g))
    basis = [mul(G_FIXED, mul(g_pows[i], og_pows[level - i])) for i in range(level + 1)]
    lhs = [_one_minus_x_power(m + 1) for m in range(max_m + 1)]

    basis_rems = [_rem_vector(b, r_minpoly) for b in basis]
    lhs_rems = [_rem_vector(p, r_minpoly) for p in lhs]
    scale = lcm(
        *(
            c.denominator
            for vec in basis_rems + lhs_rems
            for c in vec
        )
    )
    basis_int = [[int(c * scale) for c in vec] for vec in basis_rems]
    lhs_int = [[int(c * scale) for c in vec] for vec in lhs_rems]

    violations: list[str] = []
    forms_checked = 0
    ranges = [range(comb(level, i) + 1) for i in range(level + 1)]
    for a in product(*ranges):
        forms_checked += 1
        combo = [
            sum(a[i] * basis_int[i][j] for i in range(level + 1)) for j in range(deg)
        ]
        for m in range(max_m + 1):
            if combo != lhs_int[m]:
                continue
            # Remainders agree: confirm by exact division before reporting.
            rhs = IntPoly((0,))
            for i, ai in enumerate(a):
                if ai:
                    rhs = linear_combine(1, rhs, ai, basis[i])
            candidate = linear_combine(1, lhs[m], -1, rhs)
            if exact_divides(r_minpoly, candidate) is not None:
                violations.append(f"m={m} form={a}")
    return SweepReport(max_m, max_level, forms_checked, len(violations), tuple(violations))


@dataclass(frozen=True)
class Certificate:
    """Independently re-checkable evidence for one certified pair."""

    f_poly: IntPoly
    f_form: PartitionForm
    g_poly: IntPoly
    g_form: PartitionForm
    prime: int
    r_minpoly: IntPoly
    alpha_poly: IntPoly
    eisenstein: EisensteinWitness
    r_interval: RationalInterval
    s_interval: RationalInterval
    sweep: SweepReport
    version: int = 1

    def to_json_dict(self) -> dict:
        return {
            "F": [str(c) for c in self.f_poly.coeffs],
            "F_form": self.f_form.to_json_dict(),
            "G": [str(c) for c in self.g_poly.coeffs],
            "G_form": self.g_form.to_json_dict(),
            "p": str(self.prime),
            "r_minpoly": [str(c) for c in self.r_minpoly.coeffs],
            "alpha_poly": [str(c) for c in self.alpha_poly.coeffs],
            "eisenstein": self.eisenstein.to_json_dict(),
            "r_interval": self.r_interval.to_json_dict(),
            "s_interval": self.s_interval.to_json_dict(),
            "obstruction_sweep": self.sweep.to_json_dict(),
            "version": self.version,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Certificate":
        alpha = IntPoly(tuple(int(c) for c in data["alpha_poly"]))
        return cls(
            f_poly=IntPoly(tuple(int(c) for c in data["F"])),
            f_form=PartitionForm.from_json_dict(data["F_form"]),
            g_poly=IntPoly(tuple(int(c) for c in data["G"])),
            g_form=PartitionForm.from_json_dict(data["G_form"]),
            prime=int(data["p"]),
            r_minpoly=IntPoly(tuple(int(c) for c in data["r_minpoly"])),
            alpha_poly=alpha,
            eisenstein=EisensteinWitness(alpha, int(data["eisenstein"]["prime"])),
            r_interval=RationalInterval.from_json_dict(data["r_interval"]),
            s_interval=RationalInterval.from_json_dict(data["s_interval"]),
            sweep=SweepReport.from_json_dict(data["obstruction_sweep"]),
            version=int(data.get("version", 1)),
        )


def _grid_bracket(h: IntPoly) -> RationalInterval | None:
    """First sign-change bracket of ``h`` on the grid k/64, k = 1..63."""
    prev_k = None
    prev_sign = 0
    for k in range(1, _GRID_DENOM):
        v = eval_rat(h, Fraction(k, _GRID_DENOM))
        if v == 0:
            raise CertificationError(
                "root-isolation",
                f"grid point {k}/{_GRID_DENOM} is an exact root; "
                "rational roots are not certifiable here",
            )
        sign = 1 if v > 0 else -1
        if prev_sign and sign != prev_sign:
            return RationalInterval(
                Fraction(prev_k, _GRID_DENOM), Fraction(k, _GRID_DENOM)
            )
        prev_k, prev_sign = k, sign
    return None


def build_certificate(
    f_poly: IntPoly,
    prime: int,
    max_level: int = DEFAULT_MAX_LEVEL,
    sweep_m: int = DEFAULT_SWEEP_M,
    sweep_level: int = DEFAULT_SWEEP_LEVEL,
    root_width: Fraction = DEFAULT_ROOT_WIDTH,
) -> Certificate:
    """Run the full pipeline for ``F`` at the given prime.

    Stages, each raising a :class:`CertificationError` naming itself on
    failure: condition screening; partition forms for ``F`` and the fixed
    ``G``; extraction of the minimal polynomial from ``F(G(x)) - x``;
    squarefreeness; Eisenstein and leading-coefficient certification of the
    reciprocal polynomial; sign-change root isolation on the 1/64 grid;
    the certified image bracket for ``s``; and the obstruction sweep.
    """
    report = check_f_conditions(f_poly, prime)
    if not report.passed:
        raise CertificationError("conditions", "; ".join(report.failures))

    d = depth(f_poly, max_level)
    if d is None:
        raise CertificationError(
            "partition-form", f"no partition form of F within level {max_level}"
        )
    f_form = to_form(f_poly, d)
    g_form = to_form(G_FIXED, 2)
    assert f_form is not None and g_form is not None

    h = linear_combine(1, poly_compose(f_poly, G_FIXED), -1, X)
    if h.constant != 0 or h.coeff(1) == 0:
        raise CertificationError(
            "divide-out", "composition minus x lacks the zero/nonzero coefficient shape"
        )
    h1 = divide_out_x(h, 1)
    r_minpoly = content_primitive(h1).primitive

    if not squarefree_check(r_minpoly):
        raise CertificationError("squarefree", "extracted polynomial has repeated roots")

    alpha_poly = content_primitive(reverse(r_minpoly)).primitive
    witness = eisenstein_check(alpha_poly, prime)
    if witness is None:
        raise CertificationError(
            "eisenstein",
            f"criterion fails at {prime} on the reciprocal polynomial "
            "(possible despite the screening conditions)",
        )
    try:
        not_algebraic_integer(alpha_poly, witness)
    except InconclusiveError as exc:
        raise CertificationError("leading-coefficient", str(exc)) from None

    bracket = _grid_bracket(h)
    if bracket is None:
        raise CertificationError(
            "root-isolation", "no sign change of F(G(x)) - x on the 1/64 grid"
        )
    try:
        r_interval = isolate_root(r_minpoly, bracket, root_width)
        if r_interval.exact:
            raise ValueError("root is rational; not certifiable")
        guard = 0
        while _HALF in r_interval:
            if eval_rat(r_minpoly, _HALF) == 0:
                raise ValueError("1/2 is a root; not certifiable")
            guard += 1
            if guard > 10_000:
                raise ValueError("cannot separate root from 1/2")
            r_interval = isolate_root(r_minpoly, r_interval, r_interval.width / 2)
    except ValueError as exc:
        raise CertificationError("root-isolation", str(exc)) from None

    try:
        s_interval = interval_image(G_FIXED, r_interval)
    except ValueError as exc:
        raise CertificationError("interval-image", str(exc)) from None
    if not (0 < s_interval.lo and s_interval.hi < 1):
        raise CertificationError("interval-image", "image bracket escapes (0, 1)")

    sweep = obstruction_sweep(r_minpoly, sweep_m, sweep_level)
    if sweep.violations:
        raise CertificationError(
            "obstruction-sweep",
            f"{sweep.violations} divisibility violation(s): construction refuted",
        )

    return Certificate(
        f_poly=f_poly,
        f_form=f_form,
        g_poly=G_FIXED,
        g_form=g_form,
        prime=prime,
        r_minpoly=r_minpoly,
        alpha_poly=alpha_poly,
        eisenstein=witness,
        r_interval=r_interval,
        s_interval=s_interval,
        sweep=sweep,
    )


@dataclass(frozen=True)
class VerificationReport:
    """Per-invariant outcomes of an independent certificate re-check."""

    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> tuple[str, ...]:
        return tuple(f"{name}: {detail}" for name, ok, detail in self.checks if not ok)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Re-validate every certificate invariant from the raw data.

    Runs on polynomial primitives and inline divisibility checks only, so a
    doctored certificate fails regardless of how it was produced.  The
    obstruction sweep is re-run at the recorded bounds.
    """
    checks: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> bool:
        checks.append((name, ok, detail if not ok else "ok"))
        return ok

    check(
        "f-form",
        expand(cert.f_form) == cert.f_poly,
        "F_form does not expand to F",
    )
    check(
        "g-fixed",
        cert.g_poly == G_FIXED and expand(cert.g_form) == cert.g_poly,
        "G is not the fixed 2x(1-x) or G_form mismatches",
    )
    prime_ok = check(
        "prime", cert.prime != 2 and is_prime(cert.prime), "p must be an odd prime"
    )

    h = linear_combine(1, poly_compose(cert.f_poly, cert.g_poly), -1, X)
    if check("divide-out", h.constant == 0, "F(G(x)) - x has a constant term"):
        h1 = divide_out_x(h, 1)
        quotient = exact_divides(cert.r_minpoly, h1) if not cert.r_minpoly.is_zero else None
        check(
            "divisibility",
            quotient is not None
            and quotient.degree == 0
            and content_primitive(h1).primitive == cert.r_minpoly,
            "r_minpoly is not the primitive positive part of (F(G(x)) - x)/x",
        )
    else:
        check("divisibility", False, "skipped: divide-out failed")

    alpha_expected = (
        content_primitive(reverse(cert.r_minpoly)).primitive
        if cert.r_minpoly.constant != 0
        else None
    )
    check(
        "reciprocal",
        alpha_expected is not None and cert.alpha_poly == alpha_expected,
        "alpha_poly is not the sign-normalised coefficient reversal of r_minpoly",
    )

    alpha = cert.alpha_poly
    p = cert.prime
    eis_ok = (
        prime_ok
        and alpha.degree is not None
        and alpha.degree >= 1
        and all(c % p == 0 for c in alpha.coeffs[:-1])
        and alpha.leading % p != 0
        and alpha.constant % (p * p) != 0
        and cert.eisenstein.prime == p
        and cert.eisenstein.poly == alpha
    )
    check("eisenstein", eis_ok, "Eisenstein divisibility pattern fails on alpha_poly")
    check(
        "leading",
        abs(alpha.leading) != 1 and content_primitive(alpha).content == 1
        if not alpha.is_zero
        else False,
        "alpha_poly must be primitive with non-unit leading coefficient",
    )

    ri = cert.r_interval
    r_ok = (
        not ri.exact
        and 0 < ri.lo < ri.hi < 1
        and _HALF not in ri
        and eval_rat(cert.r_minpoly, ri.lo) * eval_rat(cert.r_minpoly, ri.hi) < 0
    )
    check("r-interval", r_ok, "no certified sign change inside (0,1) away from 1/2")

    if r_ok:
        va = eval_rat(cert.g_poly, ri.lo)
        vb = eval_rat(cert.g_poly, ri.hi)
        si = cert.s_interval
        check(
            "s-interval",
            si.lo == min(va, vb)
            and si.hi == max(va, vb)
            and 0 < si.lo
            and si.hi < 1,
            "s_interval is not the endpoint image of r_interval inside (0,1)",
        )
    else:
        check("s-interval", False, "skipped: r-interval failed")

    try:
        rerun = obstruction_sweep(cert.r_minpoly, cert.sweep.max_m, cert.sweep.max_level)
        sweep_ok = (
            rerun.violations == 0
            and cert.sweep.violations == 0
            and rerun.forms_checked == cert.sweep.forms_checked
        )
        detail = "sweep re-run disagrees or found violations"
    except ValueError as exc:
        sweep_ok, detail = False, f"sweep re-run impossible: {exc}"
    check("sweep", sweep_ok, detail)

    return VerificationReport(tuple(checks))


def search_family(
    prime: int,
    max_degree: int,
    coeff_bound: int,
    max_level: int = DEFAULT_MAX_LEVEL,
    sweep_m: int = DEFAULT_SWEEP_M,
    sweep_level: int = DEFAULT_SWEEP_LEVEL,
) -> Iterator[Certificate]:
    """Enumerate certifiable ``F`` with the fixed ``G``, in deterministic order.

    Candidates run over integer polynomials with zero constant term, degree
    1..max_degree and coefficients in [-coeff_bound, coeff_bound], ordered by
    degree then lexicographically by coefficient tuple.  Screening applies
    the three conditions, bounded partition-form validity, and a sign change
    of ``F(G(x)) - x`` on the 1/64 grid; candidates failing any certification
    stage are skipped with a log entry.  Equal parameters replay an
    identical certificate stream.
    """
    if prime == 2 or not is_prime(prime):
        raise ValueError(f"need an odd prime, got {prime}")
    if max_degree < 1 or coeff_bound < 1:
        raise ValueError("need max_degree >= 1 and coeff_bound >= 1")
    span = range(-coeff_bound, coeff_bound + 1)
    for deg in range(1, max_degree + 1):
        for tail in product(span, repeat=deg):
            if tail[-1] == 0:
                continue
            candidate = IntPoly((0,) + tail)
            if not check_f_conditions(candidate, prime).passed:
                continue
            if depth(candidate, max_level) is None:
                logger.info("skip %s: no partition form within %d", candidate, max_level)
                continue
            h = linear_combine(1, poly_compose(candidate, G_FIXED), -1, X)
            try:
                bracket = _grid_bracket(h)
            except CertificationError as exc:
                logger.info("skip %s: %s", candidate, exc)
                continue
            if bracket is None:
                logger.info("skip %s: no grid sign change", candidate)
                continue
            try:
                yield build_certificate(
                    candidate, prime, max_level, sweep_m, sweep_level
                )
            except CertificationError as exc:
                logger.info("skip %s: %s", candidate, exc)
