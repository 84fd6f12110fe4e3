"""Clopen subsets of binary sequence space as finite word sets.

Every clopen subset of the space of infinite 0/1 sequences depends on
finitely many coordinates, so it is faithfully represented by the set of
0/1 words of one fixed length ``n`` (leftmost character = coordinate 1).
Word sets are stored sorted and duplicate-free; all outputs that involve a
choice (realising a form, picking a dominated subset) take lexicographically
smallest words so repeated runs are byte-stable.

The weight census of a word set — how many words contain exactly ``i``
ones — is precisely a level-``n`` partition form, and the measure of the set
under the product measure with weight ``r`` on 1 is that form's expansion
evaluated at ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from .intpoly import IntPoly
from .partition import PartitionForm, expand

__all__ = [
    "ClopenSet",
    "measure_form",
    "realize",
    "dominated_subset",
    "compose_witness",
    "measure_spectrum",
]


@dataclass(frozen=True)
class ClopenSet:
    """A set of distinct binary words of one fixed length ``n``."""

    n: int
    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("word length must be nonnegative")
        seen = set(self.words)
        if len(seen) != len(self.words):
            raise ValueError("duplicate words")
        for w in self.words:
            if len(w) != self.n or any(ch not in "01" for ch in w):
                raise ValueError(f"not a 0/1 word of length {self.n}: {w!r}")
        object.__setattr__(self, "words", tuple(sorted(self.words)))

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "ClopenSet":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "ClopenSet":
        return cls(n, tuple("".join(bits) for bits in product("01", repeat=n)))

    @classmethod
    def cylinder(cls, pattern: str, n: int | None = None) -> "ClopenSet":
        """All length-``n`` words starting with ``pattern``."""
        length = len(pattern) if n is None else n
        if length < len(pattern):
            raise ValueError("ambient length shorter than the pattern")
        tails = product("01", repeat=length - len(pattern))
        return cls(length, tuple(pattern + "".join(t) for t in tails))

    @classmethod
    def coordinate_one(cls, i: int, n: int) -> "ClopenSet":
        """Words of length ``n`` whose ``i``-th coordinate (1-indexed) is 1."""
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} needs ambient length >= {i}, got {n}")
        words = tuple(
            w for w in ClopenSet.full(n).words if w[i - 1] == "1"
        )
        return cls(n, words)

    # -- set algebra -------------------------------------------------------

    def refine(self, n: int) -> "ClopenSet":
        """Re-express at a longer word length by appending free coordinates."""
        if n < self.n:
            raise ValueError("cannot refine to a shorter length")
        if n == self.n:
            return self
        tails = ["".join(t) for t in product("01", repeat=n - self.n)]
        return ClopenSet(n, tuple(w + t for w in self.words for t in tails))

    def _common(self, other: "ClopenSet") -> tuple[frozenset, frozenset, int]:
        n = max(self.n, other.n)
        return (
            frozenset(self.refine(n).words),
            frozenset(other.refine(n).words),
            n,
        )

    def union(self, other: "ClopenSet") -> "ClopenSet":
        a, b, n = self._common(other)
        return ClopenSet(n, tuple(a | b))

    def intersection(self, other: "ClopenSet") -> "ClopenSet":
        a, b, n = self._common(other)
        return ClopenSet(n, tuple(a & b))

    def difference(self, other: "ClopenSet") -> "ClopenSet":
        a, b, n = self._common(other)
        return ClopenSet(n, tuple(a - b))

    def complement(self) -> "ClopenSet":
        present = set(self.words)
        return ClopenSet(
            self.n, tuple(w for w in ClopenSet.full(self.n).words if w not in present)
        )

    def __or__(self, other: "ClopenSet") -> "ClopenSet":
        return self.union(other)

    def __and__(self, other: "ClopenSet") -> "ClopenSet":
        return self.intersection(other)

    def __sub__(self, other: "ClopenSet") -> "ClopenSet":
        return self.difference(other)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    # -- interchange -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "words": list(self.words)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ClopenSet":
        return cls(int(data["n"]), tuple(data["words"]))


def measure_form(a: ClopenSet) -> PartitionForm:
    """Weight census of the word set, as a level-``n`` partition form.

    ``a_i`` counts the words with exactly ``i`` ones; distinctness of words
    caps each count by ``C(n, i)``, so the form is automatically valid.
    """
    counts = [0] * (a.n + 1)
    for w in a.words:
        counts[w.count("1")] += 1
    return PartitionForm(a.n, tuple(counts))


def _lex_words_of_weight(n: int, weight: int, count: int) -> list[str]:
    """The ``count`` lexicographically smallest length-``n`` words of a weight."""
    words = []
    for rank in range(count):
        rem_rank, ones, chars = rank, weight, []
        for pos in range(n):
            with_zero = comb(n - pos - 1, ones)
            if rem_rank < with_zero:
                chars.append("0")
            else:
                rem_rank -= with_zero
                chars.append("1")
                ones -= 1
        words.append("".join(chars))
    return words


def realize(f: PartitionForm) -> ClopenSet:
    """A word set whose weight census is ``f``.

    Deterministic choice: within each weight class the lexicographically
    smallest words are taken, so ``measure_form(realize(f)) == f`` and equal
    forms realise to byte-identical sets.
    """
    words: list[str] = []
    for i, ai in enumerate(f.a):
        words.extend(_lex_words_of_weight(f.n, i, ai))
    return ClopenSet(f.n, tuple(words))


def dominated_subset(a: ClopenSet, f: PartitionForm) -> ClopenSet:
    """Subset of ``a`` whose weight census is ``f`` (same level required).

    Within each weight class the lexicographically smallest members of ``a``
    are kept.  Raises if ``f`` exceeds the census of ``a`` anywhere.
    """
    if f.n != a.n:
        raise ValueError(f"form level {f.n} differs from word length {a.n}")
    have = measure_form(a)
    for i, (want, got) in enumerate(zip(f.a, have.a)):
        if want > got:
            raise ValueError(
                f"not dominated at this level: needs {want} words of weight {i}, "
                f"set has {got}"
            )
    picked: list[str] = []
    for i, want in enumerate(f.a):
        pool = [w for w in a.words if w.count("1") == i]
        picked.extend(pool[:want])
    return ClopenSet(a.n, tuple(picked))


def compose_witness(b: ClopenSet, a: ClopenSet) -> ClopenSet:
    """Word set whose measure polynomial composes those of ``b`` and ``a``.

    Built from independent copies of ``a``: word ``i`` of the outer set acts
    on the ``i``-th block of ``a.n`` coordinates, requiring membership in
    ``a`` where the outer word has a 1 and in its complement where it has a 0.
    The per-outer-word pieces are pairwise disjoint (two outer words differ
    somewhere, forcing opposite block membership); this is asserted during
    construction.
    """
    comp = a.complement().words
    pieces: list[tuple[str, ...]] = []
    total = 0
    for e in b.words:
        pools = [a.words if bit == "1" else comp for bit in e]
        piece = tuple("".join(blocks) for blocks in product(*pools))
        pieces.append(piece)
        total += len(piece)
    merged = tuple(w for piece in pieces for w in piece)
    if len(set(merged)) != total:
        raise AssertionError("independent-copy pieces are not disjoint")
    return ClopenSet(b.n * a.n, merged)


def measure_spectrum(n: int) -> set[IntPoly]:
    """Measure polynomials of all subsets of length-``n`` words, by brute force.

    Enumerates all ``2**(2**n)`` subsets, so ``n <= 4`` is enforced (65536
    subsets at ``n = 4``).  The result equals the expansions of all valid
    level-``n`` forms; that equivalence is the subject of acceptance tests,
    so this enumeration stays deliberately independent of
    :func:`cantorlab.partition.to_form`.
    """
    if n > 4:
        raise ValueError("spectrum enumeration is capped at n = 4")
    if n < 0:
        raise ValueError("word length must be nonnegative")
    words = ClopenSet.full(n).words
    weights = [w.count("1") for w in words]
    censuses: set[tuple[int, ...]] = set()
    for mask in range(1 << len(words)):
        counts = [0] * (n + 1)
        m = mask
        while m:
            low = m & -m
            counts[weights[low.bit_length() - 1]] += 1
            m ^= low
        censuses.add(tuple(counts))
    return {expand(PartitionForm(n, census)) for census in censuses}
