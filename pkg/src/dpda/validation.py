"""Witnessed condition checks for placement delivery arrays.

A structurally well-formed array is a DPDA when it satisfies:

* C0 - in every column, the star pattern repeats with period F down the
  L' bands;
* C1 - every column of the first F rows holds exactly Z stars;
* C2 - every slot id in [0, S) occurs at least once;
* C3 - the row of every coded entry holds a star in the sender's column;
* C4a - equal-slot entries lie in pairwise distinct rows and columns;
* C4b - for equal-slot entries at (j1,k1) and (j2,k2), both crossing cells
  (j1,k2) and (j2,k1) are stars.

Two housekeeping checks the delivery protocol relies on are verified
explicitly: one sender per slot, and slot ids contiguous from 0.

The rate-optimality conditions (every slot occurring exactly K*Z/F times,
every row holding exactly K*Z/F stars) and the per-user broadcast counts are
exposed separately.  All arithmetic is exact; a non-integer target makes a
verdict false, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Dpda, slot_cells, slot_senders

__all__ = [
    "ConditionCheck",
    "ValidationReport",
    "RateOptimality",
    "check_c0",
    "check_c1",
    "check_c2",
    "check_c3",
    "check_c4",
    "check_c4a",
    "check_c4b",
    "check_unique_sender",
    "check_slot_contiguity",
    "validate",
    "check_rate_optimal",
    "broadcast_counts",
]

CONDITION_ORDER = (
    "c0",
    "c1",
    "c2",
    "c3",
    "c4a",
    "c4b",
    "unique_sender",
    "slot_contiguity",
)


@dataclass(frozen=True)
class ConditionCheck:
    """Verdict for one condition; ``witness`` is the first violation found."""

    passed: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.passed


def check_c0(p: Dpda) -> ConditionCheck:
    """Stars must repeat with period F down every column.

    Witness: (row, column) of the first non-star cell whose in-band position
    is starred in another band of the same column.
    """
    for c in range(p.k):
        for h in range(p.f):
            cells = [p.grid[band * p.f + h][c] for band in range(p.lp)]
            if any(e is None for e in cells):
                for band, e in enumerate(cells):
                    if e is not None:
                        return ConditionCheck(False, (band * p.f + h, c))
    return ConditionCheck(True)


def check_c1(p: Dpda) -> ConditionCheck:
    """Every column of the first F rows holds exactly Z stars.

    Witness: (column, observed star count).
    """
    for c in range(p.k):
        stars = sum(1 for h in range(p.f) if p.grid[h][c] is None)
        if stars != p.z:
            return ConditionCheck(False, (c, stars))
    return ConditionCheck(True)


def check_c2(p: Dpda) -> ConditionCheck:
    """Every slot id in [0, S) occurs at least once.  Witness: (missing slot,)."""
    used = {e.slot for row in p.grid for e in row if e is not None}
    for s in range(p.s):
        if s not in used:
            return ConditionCheck(False, (s,))
    return ConditionCheck(True)


def check_c3(p: Dpda) -> ConditionCheck:
    """Each coded entry's row holds a star in its sender's column.

    Witness: (row, column, slot, sender) of the first offending entry.
    """
    for r, row in enumerate(p.grid):
        for c, e in enumerate(row):
            if e is not None and p.grid[r][e.sender] is not None:
                return ConditionCheck(False, (r, c, e.slot, e.sender))
    return ConditionCheck(True)


def _c4_scan(p: Dpda) -> tuple[ConditionCheck, ConditionCheck]:
    c4a = ConditionCheck(True)
    c4b = ConditionCheck(True)
    for s, cells in sorted(slot_cells(p).items()):
        for i in range(len(cells)):
            r1, c1 = cells[i]
            for r2, c2 in cells[i + 1:]:
                if r1 == r2 or c1 == c2:
                    if c4a.passed:
                        c4a = ConditionCheck(False, (s, r1, c1, r2, c2))
                    continue
                if p.grid[r1][c2] is not None or p.grid[r2][c1] is not None:
                    if c4b.passed:
                        c4b = ConditionCheck(False, (s, r1, c1, r2, c2))
        if not (c4a.passed or c4b.passed):
            break
    return c4a, c4b


def check_c4a(p: Dpda) -> ConditionCheck:
    """Equal-slot entries lie in distinct rows and distinct columns."""
    return _c4_scan(p)[0]


def check_c4b(p: Dpda) -> ConditionCheck:
    """The 2x2 subarray crossing two equal-slot entries has stars off-diagonal."""
    return _c4_scan(p)[1]


def check_c4(p: Dpda) -> ConditionCheck:
    """Both halves of the pair condition; witness from the first failing half."""
    c4a, c4b = _c4_scan(p)
    if not c4a.passed:
        return c4a
    return c4b


def check_unique_sender(p: Dpda) -> ConditionCheck:
    """All occurrences of one slot carry the same sender.

    Enforced at construction time for :class:`Dpda`, re-checked here so a
    report certifies it independently.  Witness: (row, column, slot).
    """
    seen: dict[int, int] = {}
    for r, row in enumerate(p.grid):
        for c, e in enumerate(row):
            if e is None:
                continue
            if seen.setdefault(e.slot, e.sender) != e.sender:
                return ConditionCheck(False, (r, c, e.slot))
    return ConditionCheck(True)


def check_slot_contiguity(p: Dpda) -> ConditionCheck:
    """Used slot ids form a gap-free range starting at 0.  Witness: (gap id,)."""
    used = sorted({e.slot for row in p.grid for e in row if e is not None})
    for i, s in enumerate(used):
        if s != i:
            return ConditionCheck(False, (i,))
    return ConditionCheck(True)


@dataclass(frozen=True)
class ValidationReport:
    """Per-condition verdicts plus the counting diagnostics of an array.

    ``slot_occurrences[s]`` is the number of cells carrying slot ``s``;
    ``row_integer_counts[i]`` the number of coded entries in row ``i``;
    ``column_star_counts[c]`` the stars in column ``c`` over all rows;
    ``broadcast_counts[k]`` the number of distinct slots sent by user ``k``.
    """

    c0: ConditionCheck
    c1: ConditionCheck
    c2: ConditionCheck
    c3: ConditionCheck
    c4a: ConditionCheck
    c4b: ConditionCheck
    unique_sender: ConditionCheck
    slot_contiguity: ConditionCheck
    slot_occurrences: tuple[int, ...]
    row_integer_counts: tuple[int, ...]
    column_star_counts: tuple[int, ...]
    broadcast_counts: tuple[int, ...]

    @property
    def valid(self) -> bool:
        return all(getattr(self, name).passed for name in CONDITION_ORDER)

    @property
    def first_failure(self) -> str | None:
        for name in CONDITION_ORDER:
            if not getattr(self, name).passed:
                return name
        return None

    def to_json(self) -> dict:
        out: dict = {}
        for name in CONDITION_ORDER:
            check: ConditionCheck = getattr(self, name)
            out[name] = {
                "passed": check.passed,
                "witness": list(check.witness) if check.witness else None,
            }
        out["valid"] = self.valid
        out["diagnostics"] = {
            "slot_occurrences": list(self.slot_occurrences),
            "row_integer_counts": list(self.row_integer_counts),
            "column_star_counts": list(self.column_star_counts),
            "broadcast_counts": list(self.broadcast_counts),
        }
        return out


def validate(p: Dpda) -> ValidationReport:
    """Check every condition and fill the counting diagnostics.

    On any array that passes all checks the exact rate inequality
    S*Z >= L'*F*(F-Z) must hold; its violation would mean a checker bug and
    raises ``AssertionError``.
    """
    cells = slot_cells(p)
    senders = slot_senders(p)
    occurrences = tuple(len(cells.get(s, ())) for s in range(p.s))
    row_ints = tuple(sum(1 for e in row if e is not None) for row in p.grid)
    col_stars = tuple(
        sum(1 for row in p.grid if row[c] is None) for c in range(p.k)
    )
    m = [0] * p.k
    for sender in senders.values():
        m[sender] += 1
    report = ValidationReport(
        c0=check_c0(p),
        c1=check_c1(p),
        c2=check_c2(p),
        c3=check_c3(p),
        c4a=check_c4a(p),
        c4b=check_c4b(p),
        unique_sender=check_unique_sender(p),
        slot_contiguity=check_slot_contiguity(p),
        slot_occurrences=occurrences,
        row_integer_counts=row_ints,
        column_star_counts=col_stars,
        broadcast_counts=tuple(m),
    )
    if report.valid and p.s * p.z < p.lp * p.f * (p.f - p.z):
        raise AssertionError(
            f"rate bound S*Z >= L'*F*(F-Z) violated on a validated array "
            f"({p.s}*{p.z} < {p.lp}*{p.f}*({p.f}-{p.z})); condition checks are buggy"
        )
    return report


@dataclass(frozen=True)
class RateOptimality:
    """Verdicts for the two conditions characterising the minimal rate F/Z - 1."""

    c2prime: bool
    c5: bool

    @property
    def rate_is_minimal(self) -> bool:
        return self.c2prime and self.c5

    def to_json(self) -> dict:
        return {
            "c2prime": self.c2prime,
            "c5": self.c5,
            "rate_is_minimal": self.rate_is_minimal,
        }


def check_rate_optimal(p: Dpda) -> RateOptimality:
    """Decide whether the array achieves the minimal rate F/Z - 1.

    ``c2prime`` holds iff every slot occurs exactly K*Z/F times, ``c5`` iff
    every row holds exactly K*Z/F stars; when K*Z is not divisible by F both
    are false.  Requires a valid array.
    """
    report = validate(p)
    if not report.valid:
        raise ValueError(f"array is not a valid DPDA (fails {report.first_failure})")
    if (p.k * p.z) % p.f:
        return RateOptimality(False, False)
    target = p.k * p.z // p.f
    c2prime = all(n == target for n in report.slot_occurrences)
    c5 = all(p.k - t == target for t in report.row_integer_counts)
    if c2prime and c5 and p.s * p.z != p.lp * p.f * (p.f - p.z):
        raise AssertionError(
            "rate-optimal array must satisfy S*Z == L'*F*(F-Z) exactly; "
            f"got {p.s}*{p.z} != {p.lp}*{p.f}*({p.f}-{p.z})"
        )
    return RateOptimality(c2prime, c5)


def broadcast_counts(p: Dpda) -> tuple[int, ...]:
    """Distinct slots sent by each user.

    Requires a valid array.  On rate-optimal arrays the counts obey the exact
    law m_k * K * Z == L' * F * (F - Z) for every user, i.e. all users
    broadcast equally often; a violation raises ``AssertionError``.
    """
    report = validate(p)
    if not report.valid:
        raise ValueError(f"array is not a valid DPDA (fails {report.first_failure})")
    counts = report.broadcast_counts
    if check_rate_optimal(p).rate_is_minimal:
        for k, m_k in enumerate(counts):
            if m_k * p.k * p.z != p.lp * p.f * (p.f - p.z):
                raise AssertionError(
                    f"user {k} broadcasts {m_k} slots, violating "
                    f"m_k*K*Z == L'*F*(F-Z) on a rate-optimal array"
                )
    return counts
