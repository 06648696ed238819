"""Words over the generator alphabet {1..t} and their subword combinatorics.

A word is a plain tuple of ints; letter ``i`` names generator ``X_i`` and the
word ``(i1, ..., ik)`` names the product ``X_i1 X_i2 ... X_ik``.  The empty
word names the identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, groupby, product
from math import comb
from typing import Iterable, Iterator, Sequence

Word = tuple

__all__ = [
    "Word",
    "WordError",
    "SubwordCensus",
    "Lemma24Report",
    "check_word",
    "numeric_value",
    "compare",
    "k_subwords",
    "census",
    "is_ordered",
    "longest_constant_run",
    "ch_reducible",
    "lemma24_threshold",
    "ordered_words",
    "all_words",
    "verify_lemma24_exhaustive",
    "parse_word",
]


class WordError(ValueError):
    pass


def check_word(w: Sequence[int], t: int) -> Word:
    w = tuple(w)
    for letter in w:
        if not isinstance(letter, int) or not 1 <= letter <= t:
            raise WordError(f"letter {letter!r} outside alphabet 1..{t}")
    return w


def parse_word(text: str) -> Word:
    """``"2,1,1"`` or ``"211"`` (single-digit letters only) -> ``(2, 1, 1)``."""
    text = text.strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise WordError(f"cannot parse word {text!r}") from None


def numeric_value(w: Sequence[int], t: int) -> int:
    """The word read as a base-(t+1) integer, leftmost letter most significant.

    Letters run 1..t so digit 0 never occurs and the value is unique to the word.
    """
    v = 0
    for letter in w:
        if not 1 <= letter <= t:
            raise WordError(f"letter {letter!r} outside alphabet 1..{t}")
        v = v * (t + 1) + letter
    return v


def compare(u: Sequence[int], w: Sequence[int], t: int) -> int:
    """-1, 0 or 1 by numeric value.  Only defined for words of equal length."""
    if len(u) != len(w):
        raise WordError("numeric comparison is only defined between words of equal length")
    a, b = numeric_value(u, t), numeric_value(w, t)
    return (a > b) - (a < b)


def k_subwords(w: Sequence[int], k: int) -> list:
    if k < 1:
        raise WordError("subword length must be positive")
    w = tuple(w)
    return [w[i:i + k] for i in range(len(w) - k + 1)]


@dataclass(frozen=True)
class SubwordCensus:
    k: int
    total: int
    distinct: int
    classes: tuple  # distinct k-subwords in increasing numeric value


def census(w: Sequence[int], k: int) -> SubwordCensus:
    windows = k_subwords(w, k)
    # equal-length tuples of positive ints sort lexicographically == numerically
    classes = tuple(sorted(set(windows)))
    return SubwordCensus(k, len(windows), len(classes), classes)


def is_ordered(w: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(w, w[1:]))


def longest_constant_run(w: Sequence[int]) -> int:
    return max((sum(1 for _ in g) for _, g in groupby(w)), default=0)


def ch_reducible(w: Sequence[int], n: int) -> bool:
    """Syntactic Cayley-Hamilton criterion: a run of ``n`` equal letters."""
    return longest_constant_run(w) >= n


def lemma24_threshold(n: int, k: int) -> int:
    if n < 2:
        raise WordError("dimension must be at least 2")
    if not 1 <= k <= 2 * n - 2:
        raise WordError(f"k={k} outside [1, {2 * n - 2}]")
    return k if k <= n - 1 else 2 * n - k - 2


def ordered_words(length: int, t: int) -> Iterable[Word]:
    """Non-increasing words of the given length, in increasing numeric value."""
    # non-increasing tuples over t > ... > 1 come out in decreasing value
    words = list(combinations_with_replacement(range(t, 0, -1), length))
    return reversed(words)


def all_words(length: int, t: int) -> Iterator[Word]:
    """Every word of the given length in increasing numeric value."""
    return product(range(1, t + 1), repeat=length)


@dataclass(frozen=True)
class Lemma24Report:
    n: int
    t: int
    length: int
    margin: int
    words_enumerated: int
    words_checked: int
    min_slack: int | None
    violations: tuple  # (word, k, distinct, required)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_lemma24_exhaustive(n: int, t: int, length: int | None = None, margin: int = 2,
                              limit: int = 2_000_000) -> Lemma24Report:
    """Check every ordered, non-CH-reducible word of ``length`` (default 2n-1)
    has at least ``threshold + margin`` distinct k-subwords for all k <= 2n-2.

    ``length=2n-2, margin=1`` gives the shortened variant used for the 2n-3 bound.
    """
    if length is None:
        length = 2 * n - 1
    count = comb(length + t - 1, t - 1)
    if count > limit:
        raise WordError(f"{count} ordered words exceeds the enumeration limit {limit}")
    kmax = min(2 * n - 2, length)
    thresholds = {k: lemma24_threshold(n, k) for k in range(1, kmax + 1)}
    enumerated = checked = 0
    slack = None
    violations = []
    for w in ordered_words(length, t):
        enumerated += 1
        if ch_reducible(w, n):
            continue
        checked += 1
        for k, thr in thresholds.items():
            d = census(w, k).distinct
            s = d - (thr + margin)
            slack = s if slack is None else min(slack, s)
            if s < 0:
                violations.append((w, k, d, thr + margin))
    return Lemma24Report(n, t, length, margin, enumerated, checked, slack, tuple(violations))
