"""The filtration L_0 <= L_1 <= ... spanned by products of bounded length.

``build_filtration`` inserts the identity, then at each level multiplies every
generator into the products that grew the basis at the previous level.  That
is enough: Sigma * L_{i-1} is spanned mod L_{i-1} by Sigma times the level
i-1 representatives, since Sigma times anything shorter already lies in
L_{i-1}.

The tagged products inserted into the basis are linearly independent, so
every matrix in L_* has a unique coordinate vector over them.  Membership in
L_j is then just "no weight on tags longer than j".
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact_linalg import EchelonBasis, FieldError, FieldSpec, SquareMatrix
from .words import Word, all_words, check_word

__all__ = [
    "GeneratorSet",
    "Filtration",
    "Truncated",
    "LowerCombination",
    "build_filtration",
    "naive_ranks",
    "length",
    "reduce_word",
]


class Truncated(Exception):
    """The rank was still growing when ``max_len`` was reached."""

    def __init__(self, partial: "Filtration"):
        super().__init__(f"rank still growing at level {partial.levels} (ranks {partial.ranks})")
        self.partial = partial


@dataclass(frozen=True)
class GeneratorSet:
    field: FieldSpec
    mats: tuple
    names: tuple | None = None

    def __post_init__(self):
        if not self.mats:
            raise FieldError("a generator set needs at least one matrix")
        n = self.mats[0].n
        if n < 2:
            raise FieldError("matrices must be at least 2 x 2")
        for m in self.mats:
            if m.n != n or m.field != self.field:
                raise FieldError("all generators must share dimension and field")
        if self.names is not None and len(self.names) != len(self.mats):
            raise FieldError("one name per generator")

    @property
    def n(self) -> int:
        return self.mats[0].n

    @property
    def t(self) -> int:
        return len(self.mats)

    def identity(self) -> SquareMatrix:
        return SquareMatrix.identity(self.n, self.field)

    def product(self, w) -> SquareMatrix:
        """Matrix named by the word ``w`` (letter i is ``mats[i-1]``)."""
        out = self.identity()
        for letter in check_word(w, self.t):
            out = out @ self.mats[letter - 1]
        return out


@dataclass
class Filtration:
    """Result of ``build_filtration``.

    ``ranks`` is r_0, r_1, ..., r_c followed by one repeated r_c marking the
    plateau (for a truncated build there is no repeat).  ``new_words[i]`` are
    the tags added at level i, and ``products`` maps each tag to its matrix.
    """

    gens: GeneratorSet
    basis: EchelonBasis
    ranks: list
    new_words: list
    products: dict
    truncated: bool = False
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.gens.n

    @property
    def levels(self) -> int:
        """Highest level for which L_i is known."""
        return len(self.ranks) - 1 if self.truncated else float("inf")

    @property
    def length(self) -> int:
        if self.truncated:
            raise Truncated(self)
        return len(self.ranks) - 2

    @property
    def r_star(self) -> int:
        if self.truncated:
            raise Truncated(self)
        return self.ranks[-1]

    def rank(self, i: int) -> int:
        """r_i, extended past the plateau."""
        if i < 0:
            return 0
        if i > self.levels:
            raise Truncated(self)
        return self.ranks[min(i, len(self.ranks) - 1)]

    def rank_step(self, i: int) -> int:
        """r_i - r_{i-1}; zero past the plateau."""
        return self.rank(i) - self.rank(i - 1)

    def level_slice(self, i: int) -> slice:
        """Positions of the level-i tags in the coordinate vectors."""
        return slice(self.rank(i - 1), self.rank(i))

    def matrix(self, w) -> SquareMatrix:
        w = tuple(w)
        m = self.products.get(w)
        if m is None:
            m = self._cache.get(w)
        if m is None:
            if not w:
                m = self.gens.identity()
            else:
                m = self.gens.mats[w[0] - 1] @ self.matrix(w[1:])
            self._cache[w] = m
        return m

    def coordinates(self, m: SquareMatrix) -> tuple | None:
        """Coefficients of ``m`` over the basis tags, or None if outside L_*."""
        res = self.basis.membership(m)
        return res.coefficients if res.member else None

    def word_coordinates(self, w) -> tuple:
        w = tuple(w)
        key = ("coords", w)
        if key not in self._cache:
            self._check_depth(len(w))
            c = self.coordinates(self.matrix(w))
            if c is None:
                raise Truncated(self)
            self._cache[key] = c
        return self._cache[key]

    def quotient_vector(self, w) -> tuple:
        """Image of the product ``w`` in L_|w| / L_{|w|-1}, in level-|w| tag coordinates."""
        return self.word_coordinates(w)[self.level_slice(len(w))]

    def in_level(self, m: SquareMatrix, j: int) -> bool:
        """Whether ``m`` lies in L_j (L_{-1} is the zero space)."""
        c = self.coordinates(m)
        if c is None:
            if self.truncated:
                self._check_depth(j)
            return False
        return not any(c[self.rank(j):]) if j >= 0 else not any(c)

    def _check_depth(self, level: int):
        if level > self.levels:
            raise ValueError(f"filtration only built to level {self.levels}, need {level}")

    def tag_length(self, idx: int) -> int:
        return len(self.basis.tags[idx])


def build_filtration(g: GeneratorSet, max_len: int | None = None) -> Filtration:
    """Rank sequence and tagged basis of the algebra generated by ``g``.

    Raises ``Truncated`` (carrying the partial filtration) if the rank is
    still growing at ``max_len``.  The default cap n^2 can never be hit.
    """
    n = g.n
    if max_len is None:
        max_len = n * n
    basis = EchelonBasis(n * n, g.field)
    ident = g.identity()
    basis.insert(ident, ())
    products = {(): ident}
    ranks = [1]
    new_words = [[()]]
    frontier = [()]
    level = 0
    while True:
        if basis.rank == n * n:
            ranks.append(basis.rank)
            break
        if level == max_len:
            raise Truncated(Filtration(g, basis, ranks, new_words, products, truncated=True))
        level += 1
        grown = []
        for old in frontier:
            for letter in range(1, g.t + 1):
                w = (letter,) + old
                m = g.mats[letter - 1] @ products[old]
                if basis.insert(m, w).grew:
                    products[w] = m
                    grown.append(w)
        new_words.append(grown)
        ranks.append(basis.rank)
        if not grown:
            new_words.pop()
            break
        frontier = grown
    return Filtration(g, basis, ranks, new_words, products)


def naive_ranks(g: GeneratorSet, max_len: int | None = None) -> list:
    """Rank sequence from inserting all t^i words at every level (no shortcut).

    Same plateau convention as ``Filtration.ranks``.  Exponential; small cases only.
    """
    n = g.n
    if max_len is None:
        max_len = n * n
    basis = EchelonBasis(n * n, g.field)
    basis.insert(g.identity())
    ranks = [1]
    level = 0
    while level < max_len:
        level += 1
        before = basis.rank
        for w in all_words(level, g.t):
            basis.insert(g.product(w), w)
        ranks.append(basis.rank)
        if basis.rank == before:
            return ranks
    raise ValueError(f"rank still growing at level {max_len}")


def length(g: GeneratorSet, max_len: int | None = None) -> int:
    """c(Sigma): the least i with r_i = r_*."""
    return build_filtration(g, max_len).length


@dataclass(frozen=True)
class LowerCombination:
    """``word`` equals sum coefficient * product(tag) over tags shorter than the word."""

    word: Word
    terms: tuple  # (coefficient, tag)


def reduce_word(g: GeneratorSet, w, f: Filtration) -> LowerCombination | None:
    """Express the product ``w`` through shorter basis products, or None if
    it is independent of L_{|w|-1}."""
    w = check_word(w, g.t)
    if f.gens is not g and f.gens != g:
        raise ValueError("filtration was built for a different generator set")
    f._check_depth(len(w))
    coords = f.word_coordinates(w)
    cut = f.rank(len(w) - 1) if w else 0
    if any(coords[cut:]):
        return None
    tags = f.basis.tags
    return LowerCombination(w, tuple((c, tags[i]) for i, c in enumerate(coords[:cut]) if c))
