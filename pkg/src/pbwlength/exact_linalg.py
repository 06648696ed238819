"""Exact field arithmetic, dense square matrices and incremental echelon bases.

Two fields are supported: the rationals (elements are ``fractions.Fraction``)
and prime fields F_p (elements are ``int`` residues in ``[0, p)``).  There is
no floating point anywhere in here.

Matrices are vectorized row-major: entry ``(i, j)`` of an n x n matrix is
coordinate ``i * n + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "FieldError",
    "FieldSpec",
    "SquareMatrix",
    "Membership",
    "EchelonBasis",
    "is_prime",
    "mat_mul",
    "char_poly",
    "poly_eval_matrix",
]


class FieldError(ValueError):
    """Raised for malformed scalars, non-prime moduli or mixed fields."""


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    # Miller-Rabin with the first 12 primes as witnesses is deterministic below 3.3e24.
    if p < 2:
        return False
    for b in _MR_BASES:
        if p % b == 0:
            return p == b
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals or a prime field."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == "prime":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise FieldError(f"modulus {self.p!r} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def __str__(self):
        return "Q" if self.kind == "rational" else f"F_{self.p}"

    # -- scalars ---------------------------------------------------------

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def reduce(self, x):
        """Normal form of an int or Fraction in this field."""
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} has no value mod {self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return x % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def parse(self, text) -> object:
        """Parse ``"a"``, ``"-a"`` or ``"a/b"`` (ints are accepted too)."""
        if isinstance(text, bool) or not isinstance(text, (str, int)):
            raise FieldError(f"entry {text!r} must be an integer or fraction string")
        if isinstance(text, int):
            return self.reduce(text)
        s = text.strip()
        num, sep, den = s.partition("/")
        try:
            a = int(num)
            b = int(den) if sep else 1
        except ValueError:
            raise FieldError(f"cannot parse {text!r} as an exact scalar") from None
        if b == 0:
            raise FieldError(f"zero denominator in {text!r}")
        if self.p and b % self.p == 0:
            raise FieldError(f"denominator of {text!r} vanishes mod {self.p}")
        return self.reduce(Fraction(a, b))

    def format(self, x) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "prime", "p": self.p} if self.p else {"kind": "rational"}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise FieldError("field must be an object with a 'kind' key")
        if obj["kind"] == "prime":
            return cls.prime(obj.get("p"))
        return cls(obj["kind"], obj.get("p"))


@dataclass(frozen=True)
class SquareMatrix:
    """Dense n x n matrix over a FieldSpec.  Entries are stored in normal form."""

    field: FieldSpec
    rows: tuple

    def __post_init__(self):
        n = len(self.rows)
        if n < 1 or any(len(r) != n for r in self.rows):
            raise FieldError("matrix must be square and non-empty")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field: FieldSpec) -> "SquareMatrix":
        return cls(field, tuple(tuple(field.reduce(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "SquareMatrix":
        return cls.from_rows(([int(i == j) for j in range(n)] for i in range(n)), field)

    @classmethod
    def zeros(cls, n: int, field: FieldSpec) -> "SquareMatrix":
        return cls.from_rows(([0] * n for _ in range(n)), field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: FieldSpec) -> "SquareMatrix":
        """Matrix unit E_ij with 0-based indices."""
        return cls.from_rows(([int((a, b) == (i, j)) for b in range(n)] for a in range(n)), field)

    @property
    def n(self) -> int:
        return len(self.rows)

    def vec(self) -> list:
        return [x for r in self.rows for x in r]

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def _check(self, other: "SquareMatrix"):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")
        if other.n != self.n:
            raise FieldError(f"dimension mismatch: {self.n} vs {other.n}")

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        red = self.field.reduce
        return SquareMatrix(self.field, tuple(
            tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "SquareMatrix":
        red = self.field.reduce
        c = red(c)
        return SquareMatrix(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows))

    def bracket(self, other: "SquareMatrix") -> "SquareMatrix":
        return self @ other - other @ self

    def __pow__(self, k: int) -> "SquareMatrix":
        out = SquareMatrix.identity(self.n, self.field)
        for _ in range(k):
            out = out @ self
        return out

    def to_strings(self) -> list:
        return [[self.field.format(x) for x in r] for r in self.rows]

    def __str__(self):
        cells = self.to_strings()
        w = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


def mat_mul(a: SquareMatrix, b: SquareMatrix) -> SquareMatrix:
    """Exact product ``a @ b``; both factors must share dimension and field."""
    if a._check(b) is NotImplemented:
        raise TypeError("mat_mul expects two SquareMatrix operands")
    red = a.field.reduce
    cols = list(zip(*b.rows))
    return SquareMatrix(a.field, tuple(
        tuple(red(sum(x * y for x, y in zip(r, c))) for c in cols) for r in a.rows))


def char_poly(a: SquareMatrix) -> list:
    """Coefficients ``[c0, ..., cn]`` of det(lambda*I - a), with ``cn == 1``.

    Berkowitz's algorithm: no divisions, so it is valid over F_p for any p,
    including p <= n where Faddeev-LeVerrier breaks down.
    """
    F = a.field
    red = F.reduce
    A = a.rows
    n = a.n
    # Coefficients are kept highest degree first while building.
    poly = [F.one(), red(-A[0][0])]
    for r in range(1, n):
        R = A[r][:r]
        S = [A[i][r] for i in range(r)]
        M = [row[:r] for row in A[:r]]
        col = [F.one(), red(-A[r][r])]
        v = S
        for _ in range(r):
            col.append(red(-sum(x * y for x, y in zip(R, v))))
            v = [red(sum(x * y for x, y in zip(row, v))) for row in M]
        # (r+2) x (r+1) lower-triangular Toeplitz matrix with first column ``col``
        poly = [red(sum(col[i - j] * poly[j] for j in range(min(i, r) + 1)))
                for i in range(r + 2)]
    return poly[::-1]


def poly_eval_matrix(coeffs: Sequence, a: SquareMatrix) -> SquareMatrix:
    """Horner evaluation of ``sum coeffs[i] * a**i``."""
    out = SquareMatrix.zeros(a.n, a.field)
    ident = SquareMatrix.identity(a.n, a.field)
    for c in reversed(coeffs):
        out = out @ a + ident.scale(c)
    return out


@dataclass(frozen=True)
class Membership:
    """Outcome of a span test.

    ``coefficients`` express the tested vector over the basis *words*
    (insertion order) and are set when ``member`` is true.  ``residual`` is
    the vector reduced against the basis and is set when it is not.
    """

    member: bool
    coefficients: tuple | None = None
    residual: tuple | None = None

    @property
    def grew(self) -> bool:
        return not self.member


@dataclass
class EchelonBasis:
    """Reduced row-echelon basis of a subspace of k^d, built one vector at a time.

    ``tags`` lists the inserted (independent) vectors in insertion order; each
    is a word naming the product that contributed it.  ``rows``/``pivots`` are
    the RREF rows sorted by pivot column, and ``row_origin[i]`` is the index
    into ``tags`` of the vector that created pivot ``i``.  ``combos[i]``
    writes ``rows[i]`` in terms of the inserted vectors, which is what makes
    coefficients relative to the tagged products available.
    """

    ambient_dim: int
    field: FieldSpec
    rows: list = dc_field(default_factory=list)
    pivots: list = dc_field(default_factory=list)
    tags: list = dc_field(default_factory=list)
    row_origin: list = dc_field(default_factory=list)
    combos: list = dc_field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.tags)

    def _as_vector(self, m) -> list:
        if isinstance(m, SquareMatrix):
            if m.field != self.field:
                raise FieldError(f"field mismatch: basis over {self.field}, matrix over {m.field}")
            v = m.vec()
        else:
            v = [self.field.reduce(x) for x in m]
        if len(v) != self.ambient_dim:
            raise FieldError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return v

    def _reduce(self, v: list):
        red = self.field.reduce
        v = list(v)
        weights = []
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            weights.append(c)
            if c:
                for j in range(piv, self.ambient_dim):
                    if row[j]:
                        v[j] = red(v[j] - c * row[j])
        return v, weights

    def _combine(self, weights) -> tuple:
        red = self.field.reduce
        out = [self.field.zero()] * self.rank
        for w, combo in zip(weights, self.combos):
            if w:
                for i, c in enumerate(combo):
                    if c:
                        out[i] = red(out[i] + w * c)
        return tuple(out)

    def membership(self, m) -> Membership:
        """Non-mutating span test for a matrix or coordinate vector."""
        v = self._as_vector(m)
        resid, weights = self._reduce(v)
        if any(resid):
            return Membership(False, residual=tuple(resid))
        return Membership(True, coefficients=self._combine(weights))

    def insert(self, m, tag=()) -> Membership:
        """Add ``m`` if it is independent; otherwise report its coefficients."""
        v = self._as_vector(m)
        resid, weights = self._reduce(v)
        if not any(resid):
            return Membership(True, coefficients=self._combine(weights))
        F = self.field
        red = F.reduce
        piv = next(j for j, x in enumerate(resid) if x)
        s = F.inv(resid[piv])
        new_row = [red(x * s) for x in resid]
        # resid = v - sum weights_i rows_i, written over the inserted vectors
        k = self.rank
        new_combo = [red(-c * s) for c in self._combine(weights)] + [s]
        for i, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[i] = [red(a - c * b) for a, b in zip(row, new_row)]
                old = self.combos[i] + [F.zero()]
                self.combos[i] = [red(a - c * b) for a, b in zip(old, new_combo)]
            else:
                self.combos[i] = self.combos[i] + [F.zero()]
        pos = sum(1 for p in self.pivots if p < piv)
        self.rows.insert(pos, new_row)
        self.pivots.insert(pos, piv)
        self.combos.insert(pos, new_combo)
        self.row_origin.insert(pos, k)
        self.tags.append(tuple(tag))
        return Membership(False, residual=tuple(resid))

    def row_tag(self, i: int):
        return self.tags[self.row_origin[i]]

    def copy(self) -> "EchelonBasis":
        return EchelonBasis(self.ambient_dim, self.field, [list(r) for r in self.rows],
                            list(self.pivots), list(self.tags), list(self.row_origin),
                            [list(c) for c in self.combos])
