"""Exact calculators for rate and packet-number lower bounds.

Every DPDA obeys the rate floor R = S/(L'F) >= F/Z - 1.  At the minimal
rate, the packet number F is itself bounded from below at four memory
ratios:

    Z/F = 1/K       ->  F >= K
    Z/F = 2/K       ->  F >= ceil(K^2/4)   (attainable only for even K)
    Z/F = (K-2)/K   ->  F >= K(K-2) for odd K, K(K-2)/2 for even K
    Z/F = (K-1)/K   ->  F >= K(K-1)

The baseline subset-indexed scheme (``jcm``) always achieves the rate floor
but misses the packet-number floor at ratios 2/K and (K-2)/K; the
comparison helpers quantify the gap as exact rationals.

All arithmetic is arbitrary-precision integer / ``fractions.Fraction``;
no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import Dpda
from .validation import validate

__all__ = [
    "MEMORY_CASES",
    "rate_lower_bound",
    "min_f_bound",
    "applicable_cases",
    "jcm_params",
    "JcmParams",
    "compare_to_jcm",
    "JcmComparison",
    "BoundsReport",
    "bounds_for_case",
    "bounds_for_array",
    "format_table",
]

MEMORY_CASES = ("1/K", "2/K", "(K-2)/K", "(K-1)/K")


def rate_lower_bound(f: int, z: int) -> Fraction:
    """Minimal achievable rate (F - Z)/Z for an array with F rows, Z stars."""
    if z == 0:
        raise ValueError("Z must be positive")
    if not 1 <= z <= f:
        raise ValueError(f"require 1 <= Z <= F, got Z={z}, F={f}")
    return Fraction(f - z, z)


def min_f_bound(k: int, case: str) -> int:
    """Smallest packet number F admitting the minimal rate at a memory ratio.

    ``case`` is one of :data:`MEMORY_CASES`.  The 2/K value is the ceiling
    of K^2/4; for odd K that ceiling is not attainable (see
    :func:`bounds_for_case`, which flags it).  The (K-2)/K case requires
    K >= 3.
    """
    if case == "1/K":
        if k < 2:
            raise ValueError("1/K case requires K >= 2")
        return k
    if case == "2/K":
        if k < 2:
            raise ValueError("2/K case requires K >= 2")
        return -(-(k * k) // 4)
    if case == "(K-2)/K":
        if k < 3:
            raise ValueError("(K-2)/K case requires K >= 3")
        return k * (k - 2) if k % 2 else k * (k - 2) // 2
    if case == "(K-1)/K":
        if k < 2:
            raise ValueError("(K-1)/K case requires K >= 2")
        return k * (k - 1)
    raise ValueError(f"no packet-number bound for memory ratio case {case!r}")


def applicable_cases(k: int, z: int, f: int) -> tuple[str, ...]:
    """All covered memory-ratio cases matching Z/F for this K.

    At tiny K several cases can coincide numerically (e.g. 2/K equals
    (K-2)/K when K = 4); all matches are returned so callers can take the
    strongest bound.
    """
    ratio = Fraction(z, f)
    matches = []
    for case, target in (
        ("1/K", Fraction(1, k)),
        ("2/K", Fraction(2, k)),
        ("(K-2)/K", Fraction(k - 2, k) if k >= 3 else None),
        ("(K-1)/K", Fraction(k - 1, k)),
    ):
        if target is not None and ratio == target:
            matches.append(case)
    return tuple(matches)


@dataclass(frozen=True)
class JcmParams:
    """Baseline scheme parameters at (K, t): F, Z, S and the rate (K-t)/t."""

    f: int
    z: int
    s: int
    r: Fraction

    def to_json(self) -> dict:
        return {"f": self.f, "z": self.z, "s": self.s, "r": str(self.r)}


def jcm_params(k: int, t: int) -> JcmParams:
    """Exact baseline parameters: F = t*C(K,t), Z = t*C(K-1,t-1),
    S = (t+1)*C(K,t+1), R = (K-t)/t."""
    if not 1 <= t < k:
        raise ValueError(f"t must satisfy 1 <= t < K, got t={t}, K={k}")
    return JcmParams(
        f=t * comb(k, t),
        z=t * comb(k - 1, t - 1),
        s=(t + 1) * comb(k, t + 1),
        r=Fraction(k - t, t),
    )


@dataclass(frozen=True)
class JcmComparison:
    """Packet-number comparison of an array against the baseline at equal
    (K, memory ratio)."""

    k: int
    t: int
    f_ours: int
    f_jcm: int
    ratio: Fraction
    rate: Fraction

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "t": self.t,
            "f_ours": self.f_ours,
            "f_jcm": self.f_jcm,
            "ratio": str(self.ratio),
            "rate": str(self.rate),
        }


def compare_to_jcm(p: Dpda) -> JcmComparison:
    """Compare a valid array's packet number with the baseline's.

    Requires Z/F = t/K for an integer t in [1, K); otherwise the baseline
    has no instance at this memory ratio and ``ValueError`` is raised.
    """
    report = validate(p)
    if not report.valid:
        raise ValueError(f"array is not a valid DPDA (fails {report.first_failure})")
    if (p.k * p.z) % p.f:
        raise ValueError(
            f"memory ratio Z/F = {p.z}/{p.f} is not of the form t/K for K = {p.k}"
        )
    t = p.k * p.z // p.f
    if not 1 <= t < p.k:
        raise ValueError(f"t = {t} outside [1, K) for K = {p.k}")
    base = jcm_params(p.k, t)
    return JcmComparison(
        k=p.k,
        t=t,
        f_ours=p.f,
        f_jcm=base.f,
        ratio=Fraction(p.f, base.f),
        rate=Fraction(p.s, p.lp * p.f),
    )


@dataclass(frozen=True)
class BoundsReport:
    """Bounds at a (K, memory ratio) point, optionally scored for an array.

    ``case`` is the strongest covered memory-ratio case, or None when the
    ratio is not covered (then ``f_bound`` is None too).  Flags compare the
    achieved values with the bounds by exact equality.
    """

    k: int
    case: str | None
    rate_bound: Fraction
    f_bound: int | None
    notes: tuple[str, ...] = ()
    achieved_rate: Fraction | None = None
    achieved_f: int | None = None
    meets_rate_bound: bool | None = None
    meets_f_bound: bool | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "case": self.case,
            "rate_bound": str(self.rate_bound),
            "f_bound": self.f_bound if self.f_bound is not None else "not covered",
            "notes": list(self.notes),
            "achieved_rate": None if self.achieved_rate is None else str(self.achieved_rate),
            "achieved_f": self.achieved_f,
            "meets_rate_bound": self.meets_rate_bound,
            "meets_f_bound": self.meets_f_bound,
        }


def _case_ratio(k: int, case: str) -> Fraction:
    return {
        "1/K": Fraction(1, k),
        "2/K": Fraction(2, k),
        "(K-2)/K": Fraction(k - 2, k),
        "(K-1)/K": Fraction(k - 1, k),
    }[case]


def bounds_for_case(k: int, case: str) -> BoundsReport:
    """Rate and packet-number bounds at one covered memory-ratio case."""
    ratio = _case_ratio(k, case)
    f_bound = min_f_bound(k, case)
    notes: tuple[str, ...] = ()
    if case == "2/K" and k % 2:
        notes = ("packet-number floor attainable only for an even user count",)
    return BoundsReport(
        k=k,
        case=case,
        rate_bound=1 / ratio - 1,
        f_bound=f_bound,
        notes=notes,
    )


def bounds_for_array(p: Dpda) -> BoundsReport:
    """Score a valid array against its bounds.

    When several covered cases coincide at this (K, Z/F), the strongest
    (largest) packet-number floor is reported.
    """
    report = validate(p)
    if not report.valid:
        raise ValueError(f"array is not a valid DPDA (fails {report.first_failure})")
    rate_bound = rate_lower_bound(p.f, p.z)
    achieved_rate = Fraction(p.s, p.lp * p.f)
    cases = applicable_cases(p.k, p.z, p.f)
    best_case: str | None = None
    f_bound: int | None = None
    notes: tuple[str, ...] = ()
    if cases:
        bounds = [(min_f_bound(p.k, c), c) for c in cases]
        f_bound, best_case = max(bounds)
        if best_case == "2/K" and p.k % 2:
            notes = ("packet-number floor attainable only for an even user count",)
    return BoundsReport(
        k=p.k,
        case=best_case,
        rate_bound=rate_bound,
        f_bound=f_bound,
        notes=notes,
        achieved_rate=achieved_rate,
        achieved_f=p.f,
        meets_rate_bound=achieved_rate == rate_bound,
        meets_f_bound=None if f_bound is None else p.f == f_bound,
    )


def format_table(headers: list[str], rows: list[list[object]]) -> str:
    """Aligned-column text table; all cells rendered with ``str``."""
    cells = [[str(h) for h in headers]] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
