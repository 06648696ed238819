"""Length bounds evaluated against a measured filtration.

Bounds that need the PBW property (2n-2, and 2n-3 for proper subalgebras or
Lie-closed sets) are only counted as "in force" when the caller supplies a
Holds verdict.  Paz's general bound always applies.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .span_engine import Filtration

__all__ = [
    "BoundsReport",
    "paz_general",
    "paz_condition",
    "prop31_condition",
    "rank_step",
    "full_sum_identity",
    "analyze",
]


def paz_general(n: int) -> int:
    """ceil((n^2 + 2) / 3)."""
    return -(-(n * n + 2) // 3)


def rank_step(ranks, k: int) -> int:
    """r_k - r_{k-1}, with ranks extended flat past the end of the list."""
    def r(i):
        return ranks[min(i, len(ranks) - 1)] if i >= 0 else 0
    return r(k) - r(k - 1)


def _threshold(n: int, k: int) -> int:
    return k if k <= n - 1 else 2 * n - k - 2


def paz_condition(n: int, k: int, ranks) -> bool:
    """Whether the k-th rank-growth condition (1 <= k <= 2n-2) holds."""
    if not 1 <= k <= 2 * n - 2:
        raise ValueError(f"k={k} outside [1, {2 * n - 2}]")
    return rank_step(ranks, k) <= _threshold(n, k)


def prop31_condition(n: int, k: int, ranks) -> bool:
    """Same conditions restricted to k <= 2n-3."""
    if not 1 <= k <= 2 * n - 3:
        raise ValueError(f"k={k} outside [1, {2 * n - 3}]")
    return paz_condition(n, k, ranks)


def full_sum_identity(n: int) -> int:
    """1 + 2 + ... + n + ... + 2 + 1, checked against n(n-1) + n = n^2."""
    s = sum(range(1, n + 1)) + sum(range(1, n))
    assert s == 2 * (n * (n - 1)) // 2 + n == n * n, n
    return s


@dataclass(frozen=True)
class BoundsReport:
    n: int
    ranks: tuple
    c_measured: int
    r_star: int
    prop25_condition_met_at: int | None
    prop25_bound: int
    prop31_condition_met_at: int | None
    prop31_bound: int
    thm32_applicable: bool
    lie_hypothesis: bool | None
    paz_general: int
    pbw_holds: bool | None
    bounds_in_force: dict
    audit: str
    consistent: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["ranks"] = list(self.ranks)
        for key in ("prop25", "prop31"):
            d[key] = {"condition_met_at": d.pop(f"{key}_condition_met_at"),
                      "implied_bound": d.pop(f"{key}_bound")}
        return d


def analyze(f: Filtration, pbw_holds: bool | None = None, lie_closed: bool | None = None,
            claim_proper_subalgebra: bool | None = None) -> BoundsReport:
    """Fill a BoundsReport for a complete filtration.

    ``claim_proper_subalgebra`` is only cross-checked against the measured
    r_* < n^2; the measurement decides applicability.
    """
    if f.truncated:
        raise ValueError("bounds need a complete (non-truncated) filtration")
    n = f.n
    full_sum_identity(n)
    ranks = tuple(f.ranks)
    c = f.length
    rs = f.r_star
    nn = n * n
    p25 = next((k for k in range(1, 2 * n - 1) if paz_condition(n, k, ranks)), None)
    p31 = next((k for k in range(1, 2 * n - 2) if prop31_condition(n, k, ranks)), None)
    proper = rs < nn
    lie_hyp = None if lie_closed is None else bool(
        lie_closed and (rank_step(ranks, 1) >= 3 or proper))

    # With no condition holding, the growth lower bounds sum to n^2 by level 2n-2.
    if p25 is None:
        r = ranks[min(2 * n - 2, len(ranks) - 1)]
        audit = "ok" if r == nn == rs else f"VIOLATED: r_(2n-2)={r}, r*={rs}"
    else:
        audit = "not triggered"

    inforce = {"paz_general": paz_general(n)}
    if pbw_holds:
        inforce["pbw_2n-2"] = 2 * n - 2
        if proper:
            inforce["proper_subalgebra_2n-3"] = 2 * n - 3
        if p31 is not None:
            inforce["prop31_2n-3"] = 2 * n - 3
        if lie_hyp:
            inforce["lie_2n-3"] = 2 * n - 3
    if claim_proper_subalgebra is not None and claim_proper_subalgebra != proper:
        audit += "; proper-subalgebra claim contradicts measured r*"
    consistent = all(b >= c for b in inforce.values()) and "VIOLATED" not in audit
    return BoundsReport(
        n=n, ranks=ranks, c_measured=c, r_star=rs,
        prop25_condition_met_at=p25, prop25_bound=2 * n - 2,
        prop31_condition_met_at=p31, prop31_bound=2 * n - 3,
        thm32_applicable=proper, lie_hypothesis=lie_hyp,
        paz_general=paz_general(n), pbw_holds=pbw_holds,
        bounds_in_force=inforce, audit=audit, consistent=consistent,
    )
