"""The partition-form calculus.

A level-``n`` partition form is a coefficient vector ``(a_0, ..., a_n)`` with
``0 <= a_i <= C(n, i)`` representing ``sum a_i * x^i * (1-x)^(n-i)``.  An
integer polynomial admitting such a form is a partition polynomial; these are
exactly the polynomials that arise as measures of clopen word sets (see
:mod:`cantorlab.clopen`).

Whether a polynomial is a partition polynomial is semi-decided here by a
bounded level search (default bound 64): representability at level ``n``
implies representability at every higher level via degree elevation, so
scanning levels upward finds the least one — the depth — whenever it lies
within the bound.  ``a_0 = p(0)`` and ``a_n = p(1)`` are level-independent,
which gives a cheap definite rejection when either falls outside ``{0, 1}``'s
reach; everything else is reported as "not found within the bound".
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .intpoly import ZERO, IntPoly, divide_out_x
from .intpoly import compose as poly_compose
from .intpoly import mul as poly_mul

DEFAULT_MAX_LEVEL = 64

__all__ = [
    "DEFAULT_MAX_LEVEL",
    "PartitionForm",
    "FormSearchExhausted",
    "to_form",
    "expand",
    "elevate",
    "depth",
    "dominates",
    "factor_out_x",
    "compose_form",
]


class FormSearchExhausted(Exception):
    """No partition form was found within the requested level bound."""


@dataclass(frozen=True)
class PartitionForm:
    """Coefficients ``a_0..a_n`` of a level-``n`` partition form.

    ``a[i]`` multiplies ``x^i (1-x)^(n-i)``; the binomial bounds
    ``0 <= a[i] <= C(n, i)`` are enforced at construction.
    """

    n: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if self.n < 0:
            raise ValueError("level must be nonnegative")
        if len(self.a) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients, got {len(self.a)}")
        for i, v in enumerate(self.a):
            if not 0 <= v <= comb(self.n, i):
                raise ValueError(
                    f"a_{i} = {v} outside [0, C({self.n},{i}) = {comb(self.n, i)}]"
                )

    def to_json_dict(self) -> dict:
        return {"n": self.n, "a": [str(v) for v in self.a]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PartitionForm":
        return cls(int(data["n"]), tuple(int(v) for v in data["a"]))


def to_form(p: IntPoly, n: int) -> PartitionForm | None:
    """Convert ``p`` to its unique level-``n`` form, or None if out of bounds.

    The candidate coefficients are ``a_i = sum_j c_j * C(n-j, i-j)`` (from
    ``x^j = x^j (x + (1-x))^(n-j)``); since the level-``n`` basis is linearly
    independent this is the only possible form, so a bound violation means
    "not representable at this level" — a normal outcome, not an error.
    """
    deg = p.degree
    if deg is not None and n < deg:
        raise ValueError(f"level {n} below degree {deg}")
    c = p.coeffs
    a = []
    for i in range(n + 1):
        ai = sum(c[j] * comb(n - j, i - j) for j in range(min(i, len(c) - 1) + 1))
        if not 0 <= ai <= comb(n, i):
            return None
        a.append(ai)
    return PartitionForm(n, tuple(a))


def expand(f: PartitionForm) -> IntPoly:
    """Expand a form back to standard coefficients."""
    x_pow = [IntPoly((1,))]
    y_pow = [IntPoly((1,))]
    for _ in range(f.n):
        x_pow.append(poly_mul(x_pow[-1], IntPoly((0, 1))))
        y_pow.append(poly_mul(y_pow[-1], IntPoly((1, -1))))
    total = ZERO
    for i, ai in enumerate(f.a):
        if ai:
            total = total + ai * poly_mul(x_pow[i], y_pow[f.n - i])
    return total


def elevate(f: PartitionForm) -> PartitionForm:
    """Rewrite at level n+1 by multiplying through by ``x + (1-x)``.

    The new coefficients are ``a'_i = a_i + a_{i-1}``; Pascal's rule keeps
    them within the level-(n+1) bounds, and the expansion is unchanged.
    """
    a = f.a
    lifted = tuple(
        (a[i] if i <= f.n else 0) + (a[i - 1] if i >= 1 else 0)
        for i in range(f.n + 2)
    )
    return PartitionForm(f.n + 1, lifted)


def depth(p: IntPoly, max_level: int = DEFAULT_MAX_LEVEL) -> int | None:
    """Least level admitting a form, or None if unknown beyond the bound.

    Representability is monotone in the level, so the first success of the
    upward scan is the depth.
    """
    for n in range((p.degree or 0), max_level + 1):
        if to_form(p, n) is not None:
            return n
    return None


def _default_pair_bound(p: IntPoly, q: IntPoly) -> int:
    return max(2 * ((p.degree or 0) + (q.degree or 0)), 64)


def dominates(p: IntPoly, q: IntPoly, max_level: int | None = None) -> int | None:
    """Least level where both forms exist with ``q``'s below ``p``'s.

    Returns the level, or None when no level up to the bound works.  A None
    is inconclusive in general (elevation preserves the componentwise
    inequality, but a first common level may lie beyond the bound); the two
    level-independent coefficients ``p(0), p(1)`` versus ``q(0), q(1)`` are
    the only cheap definite refutations and are implied by the scan.
    """
    bound = _default_pair_bound(p, q) if max_level is None else max_level
    start = max(p.degree or 0, q.degree or 0)
    for n in range(start, bound + 1):
        fp = to_form(p, n)
        if fp is None:
            continue
        fq = to_form(q, n)
        if fq is None:
            continue
        if all(b <= a for a, b in zip(fp.a, fq.a)):
            return n
    return None


def factor_out_x(p: IntPoly, max_level: int | None = None) -> IntPoly | None:
    """Divide a partition polynomial dominated by ``x`` through by ``x``.

    A partition polynomial is dominated by ``x`` exactly when its constant
    term vanishes and the quotient is itself a partition polynomial, in which
    case the quotient is returned.  None means not dominated: definitely so
    for a nonzero constant term or when a quotient endpoint value ``q(0)``,
    ``q(1)`` escapes {0, 1} (those form coefficients never change with the
    level), otherwise not established within the bound.
    """
    if p.is_zero:
        return ZERO
    if p.constant != 0:
        return None
    q = divide_out_x(p, 1)
    if q.constant not in (0, 1) or sum(q.coeffs) not in (0, 1):
        return None
    bound = _default_pair_bound(p, q) if max_level is None else max_level
    if depth(q, bound) is None:
        return None
    return q


def compose_form(
    p: IntPoly, q: IntPoly, max_level: int = DEFAULT_MAX_LEVEL
) -> PartitionForm:
    """Partition form of ``p(q(x))`` found by bounded level search.

    For genuine partition polynomials the composition is again one, with a
    form at level ``depth(p) * depth(q)`` (realised by taking independent
    word-block copies, see :func:`cantorlab.clopen.compose_witness`); the
    scan returns the least level.  Raises :class:`FormSearchExhausted` when
    the bound is too small, e.g. for inputs that were never partition
    polynomials.
    """
    composed = poly_compose(p, q)
    for n in range((composed.degree or 0), max_level + 1):
        f = to_form(composed, n)
        if f is not None:
            return f
    raise FormSearchExhausted(
        f"no partition form of the composition of {p} with {q} "
        f"within level {max_level}"
    )
