"""Per-instance check of the modified PBW property.

A word u of length l passes when its product lies in

    span{ ordered words w of length l with value(w) >= value(u) } + L_{l-1}.

Everything is done in the quotient L_l / L_{l-1}, whose coordinates are the
weights on the level-l basis tags, so each test is a small exact solve.
Words are visited in decreasing numeric value so the candidate set only ever
grows and one incremental basis serves the whole level.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import EchelonBasis
from .span_engine import Filtration, GeneratorSet
from .words import Word, all_words, is_ordered, numeric_value, ordered_words

__all__ = ["PbwReport", "PbwCounterexample", "check_pbw", "ordered_expansion", "replay_counterexample"]

HOLDS, FAILS, TRUNCATED = "holds", "fails", "truncated"


@dataclass(frozen=True)
class PbwCounterexample:
    word: Word
    length: int
    value: int
    candidates: tuple  # ordered words tried, all of value >= value(word)
    quotient_dim: int  # r_l - r_{l-1}


@dataclass(frozen=True)
class PbwReport:
    checked_up_to: int
    verdict: str
    counterexample: PbwCounterexample | None = None
    words_checked: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


def _level_words_desc(length: int, t: int):
    return reversed(list(all_words(length, t)))


def _ordered_desc(length: int, t: int) -> list:
    return list(reversed(list(ordered_words(length, t))))


def check_pbw(g: GeneratorSet, f: Filtration, up_to: int | None = None,
              word_limit: int = 500_000) -> PbwReport:
    """Decide the property for every word of length <= ``up_to`` (default 2n-1).

    ``word_limit`` caps the total number of words visited; hitting it gives a
    ``truncated`` verdict rather than a claim.
    """
    if up_to is None:
        up_to = 2 * g.n - 1
    f._check_depth(up_to)
    t = g.t
    checked = 0
    for l in range(1, up_to + 1):
        dim = f.rank_step(l)
        if dim == 0 or t == 1:
            # quotient is zero, or every word is ordered
            continue
        if checked + t ** l > word_limit:
            return PbwReport(l - 1, TRUNCATED, words_checked=checked)
        ordered = _ordered_desc(l, t)
        sub = EchelonBasis(dim, g.field)
        tried = []
        j = 0
        for u in _level_words_desc(l, t):
            checked += 1
            v = numeric_value(u, t)
            while j < len(ordered) and numeric_value(ordered[j], t) >= v:
                w = ordered[j]
                sub.insert(f.quotient_vector(w), w)
                tried.append(w)
                j += 1
            if is_ordered(u):
                continue
            if not sub.membership(f.quotient_vector(u)).member:
                ce = PbwCounterexample(u, l, v, tuple(tried), dim)
                return PbwReport(l, FAILS, ce, checked)
    return PbwReport(up_to, HOLDS, words_checked=checked)


def ordered_expansion(g: GeneratorSet, f: Filtration, u) -> list | None:
    """``[(coefficient, ordered word), ...]`` with u congruent to the sum mod
    L_{|u|-1} and every word of value >= value(u); None if impossible.

    Ordered u expands to itself.
    """
    u = tuple(u)
    if is_ordered(u):
        return [(g.field.one(), u)]
    l, t = len(u), g.t
    dim = f.rank_step(l)
    if dim == 0:
        return []
    v = numeric_value(u, t)
    sub = EchelonBasis(dim, g.field)
    for w in _ordered_desc(l, t):
        if numeric_value(w, t) < v:
            break
        sub.insert(f.quotient_vector(w), w)
    res = sub.membership(f.quotient_vector(u))
    if not res.member:
        return None
    return [(c, w) for c, w in zip(res.coefficients, sub.tags) if c]


def replay_counterexample(g: GeneratorSet, f: Filtration, ce: PbwCounterexample) -> bool:
    """True iff the stored word is still outside the span of its candidates."""
    t = g.t
    v = numeric_value(ce.word, t)
    if is_ordered(ce.word) or any(numeric_value(w, t) < v or not is_ordered(w) for w in ce.candidates):
        return False
    expected = [w for w in _ordered_desc(ce.length, t) if numeric_value(w, t) >= v]
    if sorted(expected) != sorted(ce.candidates):
        return False
    return ordered_expansion(g, f, ce.word) is None
