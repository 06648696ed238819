"""Generator families: the quantum plane, sl2 irreps, random sets, and a
search harness over Lie-closed sets for the 2n-3 sharpness question.

The quantum plane is realized over F_p with p = 1 mod n, which has a
primitive n-th root of unity q; all the rank statements involved only use
q^n = 1, primitivity and Cayley-Hamilton.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from .exact_linalg import EchelonBasis, FieldSpec, SquareMatrix, is_prime
from .span_engine import GeneratorSet, Truncated, build_filtration

__all__ = [
    "QuantumPlaneSpec",
    "FamilyResult",
    "quantum_plane_spec",
    "quantum_plane",
    "quantum_plane_basis",
    "sl2_irrep",
    "random_set",
    "is_lie_closed",
    "search_sharpness",
]

PRIME_SEARCH_CAP = 1_000_000


def _prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_primitive_root_of_unity(q: int, n: int, p: int) -> bool:
    return pow(q, n, p) == 1 and all(pow(q, n // r, p) != 1 for r in _prime_factors(n))


@dataclass(frozen=True)
class QuantumPlaneSpec:
    n: int
    p: int
    q: int

    def __post_init__(self):
        if self.n < 2 or not is_prime(self.p) or self.p % self.n != 1:
            raise ValueError(f"need n >= 2 and a prime p = 1 mod n, got n={self.n}, p={self.p}")
        if not _is_primitive_root_of_unity(self.q, self.n, self.p):
            raise ValueError(f"q={self.q} is not a primitive {self.n}-th root of unity mod {self.p}")


def quantum_plane_spec(n: int, p: int | None = None) -> QuantumPlaneSpec:
    """Smallest prime p = 1 (mod n) above n unless given; smallest primitive q."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if p is None:
        p = n + 1
        while not (p % n == 1 and is_prime(p)):
            p += 1
            if p > PRIME_SEARCH_CAP:
                raise ValueError(f"no prime = 1 mod {n} below {PRIME_SEARCH_CAP}")
    if not is_prime(p) or p % n != 1:
        raise ValueError(f"p={p} is not a prime congruent to 1 mod {n}")
    q = next(x for x in range(2, p) if _is_primitive_root_of_unity(x, n, p))
    return QuantumPlaneSpec(n, p, q)


def quantum_plane(n: int, p: int | None = None) -> GeneratorSet:
    """The pair (Y, X): X = diag(1, q, ..., q^(n-1)), Y the cyclic shift.

    Letter 1 is Y and letter 2 is X, so ordered words are X^i Y^j.
    """
    qp = quantum_plane_spec(n, p)
    F = FieldSpec.prime(qp.p)
    X = SquareMatrix.from_rows(
        ([pow(qp.q, i, qp.p) if i == j else 0 for j in range(n)] for i in range(n)), F)
    Y = SquareMatrix.from_rows(
        ([1 if (i == 0 and j == n - 1) or i == j + 1 else 0 for j in range(n)] for i in range(n)), F)
    assert X @ Y == (Y @ X).scale(qp.q), "XY != qYX"
    return GeneratorSet(F, (Y, X), ("Y", "X"))


def quantum_plane_basis(g: GeneratorSet) -> dict:
    """{(i, j): X^i Y^j} for 0 <= i, j <= n-1, for a set built by ``quantum_plane``."""
    Y, X = g.mats
    n = g.n
    return {(i, j): (X ** i) @ (Y ** j) for i in range(n) for j in range(n)}


def sl2_irrep(n: int, field: FieldSpec | None = None) -> GeneratorSet:
    """(E, F, H) of the n-dimensional irreducible sl2 representation.

    With highest weight w = n-1 and basis v_0..v_w: H v_i = (w-2i) v_i,
    F v_i = v_{i+1}, E v_i = i(w-i+1) v_{i-1}.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    field = field or FieldSpec.rationals()
    w = n - 1
    H = SquareMatrix.from_rows(([w - 2 * i if i == j else 0 for j in range(n)] for i in range(n)), field)
    E = SquareMatrix.from_rows(([j * (w - j + 1) if j == i + 1 else 0 for j in range(n)]
                                for i in range(n)), field)
    Fm = SquareMatrix.from_rows(([1 if i == j + 1 else 0 for j in range(n)] for i in range(n)), field)
    assert E.bracket(Fm) == H
    assert H.bracket(E) == E.scale(2)
    assert H.bracket(Fm) == Fm.scale(-2)
    return GeneratorSet(field, (E, Fm, H), ("E", "F", "H"))


def random_set(n: int, t: int, field: FieldSpec, seed: int, entry_range: int = 3) -> GeneratorSet:
    """Seeded random generators; rational entries are drawn from [-entry_range, entry_range]."""
    rng = random.Random(f"{n}:{t}:{field}:{seed}")
    if field.p:
        draw = lambda: rng.randrange(field.p)  # noqa: E731
    else:
        draw = lambda: rng.randint(-entry_range, entry_range)  # noqa: E731
    mats = tuple(SquareMatrix.from_rows([[draw() for _ in range(n)] for _ in range(n)], field)
                 for _ in range(t))
    return GeneratorSet(field, mats)


def is_lie_closed(g: GeneratorSet) -> bool:
    """Every bracket [X_i, X_j] lies in span(X_1, ..., X_t)."""
    span = EchelonBasis(g.n * g.n, g.field)
    for i, m in enumerate(g.mats):
        span.insert(m, (i + 1,))
    return all(span.membership(a.bracket(b)).member
               for i, a in enumerate(g.mats) for b in g.mats[i + 1:])


# -- sharpness search ------------------------------------------------------

@dataclass(frozen=True)
class FamilyResult:
    family: str
    n: int
    seed: int
    t: int
    field: str
    ranks: tuple
    c: int
    r_star: int
    gap_2n2: int
    gap_2n3: int

    def to_json(self) -> dict:
        d = asdict(self)
        d["ranks"] = list(self.ranks)
        return d

    @classmethod
    def from_json(cls, obj: dict) -> "FamilyResult":
        obj = dict(obj)
        obj["ranks"] = tuple(obj["ranks"])
        return cls(**obj)


@dataclass
class SearchOutcome:
    results: list
    rejected: int
    exhausted: bool

    def best_per_n(self) -> dict:
        best = {}
        for r in self.results:
            if r.n not in best or r.c > best[r.n].c:
                best[r.n] = r
        return best


_SEARCH_FIELD = FieldSpec.prime(10007)


def _random_invertible(n: int, rng: random.Random, F: FieldSpec) -> tuple:
    while True:
        M = SquareMatrix.from_rows([[rng.randrange(F.p) for _ in range(n)] for _ in range(n)], F)
        inv = _inverse(M)
        if inv is not None:
            return M, inv


def _inverse(M: SquareMatrix) -> SquareMatrix | None:
    F, n = M.field, M.n
    A = [list(r) + [F.one() if i == j else F.zero() for j in range(n)] for i, r in enumerate(M.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        s = F.inv(A[col][col])
        A[col] = [F.reduce(x * s) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                c = A[r][col]
                A[r] = [F.reduce(x - c * y) for x, y in zip(A[r], A[col])]
    return SquareMatrix.from_rows((row[n:] for row in A), F)


def _block_diag(blocks: list, F: FieldSpec) -> SquareMatrix:
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b.rows[i][j]
        off += b.n
    return SquareMatrix.from_rows(rows, F)


def _partitions(n: int, rng: random.Random) -> list:
    parts, left = [], n
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return parts


def _lie_candidate(n: int, seed: int) -> GeneratorSet:
    """A candidate set, usually but not always Lie-closed; the filter decides."""
    rng = random.Random(f"lie:{n}:{seed}")
    F = _SEARCH_FIELD
    kind = rng.choice(["sl2-sum", "borel", "commuting", "raw"])
    if kind == "raw":
        return random_set(n, 2, F, seed)
    if kind == "commuting":
        A = random_set(n, 1, F, seed).mats[0]
        B = A @ A + A.scale(rng.randrange(F.p))
        mats = [A, B]
    else:
        parts = _partitions(n, rng)
        trip = [[], [], []]
        for d in parts:
            if d == 1:
                for lst in trip:
                    lst.append(SquareMatrix(F, ((F.zero(),),)))
            else:
                E, Fm, H = sl2_irrep(d, F).mats
                for lst, m in zip(trip, (E, Fm, H)):
                    lst.append(m)
        E, Fm, H = (_block_diag(b, F) for b in trip)
        mats = [E, Fm, H] if kind == "sl2-sum" else [E, H]
    P, Pinv = _random_invertible(n, rng, F)
    mats = [P @ m @ Pinv for m in mats]
    return GeneratorSet(F, tuple(m for m in mats if not m.is_zero()) or (SquareMatrix.identity(n, F),))


def _candidate(family: str, n: int, seed: int) -> GeneratorSet:
    if family == "sl2":
        return sl2_irrep(n)
    if family == "lie-random":
        return _lie_candidate(n, seed)
    raise ValueError(f"unknown family {family!r}")


def _load_ledger(path) -> dict:
    done = {}
    p = Path(path)
    if p.exists():
        for line in p.read_text().splitlines():
            if line.strip():
                r = FamilyResult.from_json(json.loads(line))
                done[(r.family, r.n, r.seed)] = r
    return done


def search_sharpness(family: str, n_range, budget: int, seeds_per_n: int = 1,
                     ledger: str | Path | None = None) -> SearchOutcome:
    """Measure c over Lie-closed candidates and report gaps to 2n-2 and 2n-3.

    ``budget`` bounds the number of filtration builds in this call; results
    already in ``ledger`` (a JSON-lines file) are reused, not rebuilt.
    Nothing here claims sharpness.
    """
    done = _load_ledger(ledger) if ledger else {}
    results, rejected, builds = [], 0, 0
    seeds = [0] if family == "sl2" else range(seeds_per_n)
    for n in n_range:
        for seed in seeds:
            key = (family, n, seed)
            if key in done:
                results.append(done[key])
                continue
            if builds >= budget:
                return SearchOutcome(results, rejected, True)
            g = _candidate(family, n, seed)
            if not is_lie_closed(g):
                rejected += 1
                continue
            builds += 1
            try:
                f = build_filtration(g)
            except Truncated:
                continue
            r = FamilyResult(family, n, seed, g.t, str(g.field), tuple(f.ranks), f.length,
                             f.r_star, 2 * n - 2 - f.length, 2 * n - 3 - f.length)
            results.append(r)
            if ledger:
                with open(ledger, "a") as fh:
                    fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
    return SearchOutcome(results, rejected, False)
