"""Certified rewriting of a word into words with few distinct k-subwords.

Given u of length m whose distinct k-subwords u_1 < ... < u_s (by value)
outnumber N >= r_k - r_{k-1}, the images of the u_i in L_k / L_{k-1} are
dependent, so for the least i with a dependency u_i is a combination of
u_j with j > i.  Splicing each u_j in place of one occurrence of u_i gives
words of larger value, and u is congruent to the combination mod L_{m-1}.

The loop runs as a worklist keyed on numeric value: every replacement
strictly raises the value, so the smallest pending word can never be
produced again and each word is expanded at most once.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .span_engine import Filtration, GeneratorSet
from .exact_linalg import EchelonBasis
from .pbw import ordered_expansion
from .words import Word, census, check_word, is_ordered, numeric_value

__all__ = [
    "NotApplicable",
    "RewriteStep",
    "RewriteCertificate",
    "Verdict",
    "rewrite_word",
    "verify_certificate",
]


class NotApplicable(Exception):
    """The rewriting hypotheses fail for this input; no certificate is produced."""


@dataclass(frozen=True)
class RewriteStep:
    """One expansion: ``word`` (carrying ``coefficient``) became ``results``.

    ``kind`` is ``"subword"`` (one occurrence of ``replaced`` at ``position``
    was swapped out), ``"order"`` (PBW reordering) or ``"vanish"`` (the
    replaced subword is zero mod L_{k-1}, so the word drops out).
    """

    word: Word
    coefficient: object
    kind: str
    position: int | None
    replaced: Word | None
    results: tuple  # (local coefficient, new word)


@dataclass
class RewriteCertificate:
    input: Word
    k: int
    N: int
    terms: list  # (coefficient, word)
    modulo_level: int
    t: int
    ordered: bool = False
    steps: list = dc_field(default_factory=list)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _minimal_dependent(f: Filtration, subwords: tuple, k: int):
    """Least index i with subwords[i] a combination of later ones mod L_{k-1}.

    Returns ``(i, [(coeff, subword), ...])`` or None.
    """
    vecs = [f.quotient_vector(s) for s in subwords]
    dim = len(vecs[0])
    sub = EchelonBasis(dim, f.gens.field)
    best = None
    for i in range(len(subwords) - 1, -1, -1):
        res = sub.insert(vecs[i], subwords[i]) if dim else None
        if dim == 0 or res.member:
            coeffs = () if dim == 0 else res.coefficients
            best = (i, [(c, w) for c, w in zip(coeffs, sub.tags) if c])
    return best


def rewrite_word(g: GeneratorSet, u, k: int, f: Filtration, N: int | None = None,
                 ordered: bool = False) -> RewriteCertificate:
    """Rewrite ``u`` mod L_{|u|-1} into words with at most N distinct k-subwords.

    N defaults to r_k - r_{k-1}; a smaller N is rejected because the
    dependency among subwords is then not guaranteed.  With ``ordered=True``
    every intermediate word is put in ordered form via the PBW property, so
    all terms come out ordered (NotApplicable if the property fails).
    """
    u = check_word(u, g.t)
    m, t = len(u), g.t
    if k < 1 or k > m:
        raise NotApplicable(f"need 1 <= k <= |u| = {m}, got k={k}")
    f._check_depth(m)
    step = f.rank_step(k)
    if N is None:
        N = step
    if N < step:
        raise NotApplicable(f"N={N} is below r_k - r_(k-1) = {step}")
    F = g.field
    one = F.one()
    cert = RewriteCertificate(u, k, N, [], m - 1, t, ordered)
    pending = {u: one}
    heap = [(numeric_value(u, t), u)]
    terms = {}
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w)
        if not c:
            continue
        if ordered and not is_ordered(w):
            exp = ordered_expansion(g, f, w)
            if exp is None:
                raise NotApplicable(f"word {w} has no ordered expansion (PBW property fails)")
            cert.steps.append(RewriteStep(w, c, "order", None, None, tuple(exp)))
            results = exp
        else:
            cen = census(w, k)
            if cen.distinct <= N:
                terms[w] = c
                continue
            found = _minimal_dependent(f, cen.classes, k)
            if found is None:
                raise NotApplicable(f"no subword of {w} depends on larger ones mod L_{k - 1}")
            i, combo = found
            old = cen.classes[i]
            pos = next(p for p in range(m - k + 1) if w[p:p + k] == old)
            results = [(a, w[:pos] + s + w[pos + k:]) for a, s in combo]
            kind = "subword" if results else "vanish"
            cert.steps.append(RewriteStep(w, c, kind, pos, old, tuple(results)))
        for a, nw in results:
            if nw in pending:
                pending[nw] = F.reduce(pending[nw] + c * a)
            else:
                pending[nw] = F.reduce(c * a)
                heapq.heappush(heap, (numeric_value(nw, t), nw))
    cert.terms = [(c, w) for w, c in sorted(terms.items(), key=lambda kv: numeric_value(kv[0], t)) if c]
    return cert


def verify_certificate(g: GeneratorSet, cert: RewriteCertificate, f: Filtration) -> Verdict:
    """Re-check a certificate from scratch.

    Checks term shapes and censuses, that every step strictly raises the
    numeric value, and that product(u) - sum c * product(term) is in L_{m-1}.
    """
    t = g.t
    m = len(cert.input)
    try:
        check_word(cert.input, t)
        f._check_depth(m)
    except ValueError as exc:
        return Verdict(False, str(exc))
    if cert.modulo_level != m - 1:
        return Verdict(False, f"modulo level {cert.modulo_level} != {m - 1}")
    if f.rank_step(cert.k) > cert.N:
        return Verdict(False, f"N={cert.N} below r_k - r_(k-1) = {f.rank_step(cert.k)}")
    F = g.field
    total = f.matrix(cert.input)
    for c, w in cert.terms:
        try:
            check_word(w, t)
        except ValueError as exc:
            return Verdict(False, str(exc))
        if len(w) != m:
            return Verdict(False, f"term {w} has length {len(w)}, expected {m}")
        d = census(w, cert.k).distinct
        if d > cert.N:
            return Verdict(False, f"term {w} has {d} distinct {cert.k}-subwords > N={cert.N}")
        if cert.ordered and not is_ordered(w):
            return Verdict(False, f"term {w} is not ordered")
        total = total - f.matrix(w).scale(F.reduce(c))
    for s in cert.steps:
        v = numeric_value(s.word, t)
        for _, nw in s.results:
            if len(nw) != m or numeric_value(nw, t) <= v:
                return Verdict(False, f"step {s.word} -> {nw} does not increase the value")
    if not f.in_level(total, m - 1):
        return Verdict(False, "u minus the combination is not in L_(m-1)")
    return Verdict(True)
