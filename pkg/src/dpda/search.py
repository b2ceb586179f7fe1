"""Exhaustive search for minimum-slot arrays at desk scale.

``exists_dpda`` decides whether a (K, 1, F, Z, S) array exists, returning a
witness when it does; ``search_min_s`` scans S upward to certify the exact
minimum.  The search is complete: star patterns (column star sets, exactly
Z per column) are enumerated first, then the coded cells are partitioned
into exactly S slot classes subject to the pair conditions and the
existence of a sender column.

Pruning never changes answers, only node counts:

* symmetry - only star patterns in canonical position under row and column
  permutation are extended (every pattern orbit contains exactly one);
* slot relabeling is quotiented away structurally (classes are numbered in
  first-cell order);
* capacity - a slot class can never exceed min(F, K-1, Z) cells, since its
  sender column must hold a star in every class row.

A hard cell-count guard (default 24, overridable per call or through the
``DPDA_CELLS_LIMIT`` environment variable) makes refusals explicit instead
of silently partial.

``canonicalize`` computes the exact orbit representative of a small L'=1
array under row permutation, column permutation with sender relabeling and
slot-id bijection: the arrangement whose entry sequence (stars before coded
entries, then by slot label and sender) is lexicographically least.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import factorial

from .core import STAR, Coded, Dpda, Entry, serialize_dpda

__all__ = [
    "DEFAULT_CELLS_LIMIT",
    "SearchSpaceError",
    "SearchResult",
    "exists_dpda",
    "search_min_s",
    "canonicalize",
]

DEFAULT_CELLS_LIMIT = 24
_CANON_CELLS_LIMIT = 36


class SearchSpaceError(RuntimeError):
    """The instance exceeds the configured exhaustive-search guard."""


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive run.

    ``minimal_s`` is set by :func:`search_min_s` only; an ``exists_dpda``
    witness carries its slot count in ``witness.s``.  ``exhausted`` is True
    when the whole space was covered (guard violations raise instead).
    """

    feasible: bool
    minimal_s: int | None
    witness: Dpda | None
    nodes_explored: int
    exhausted: bool

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "minimal_s": self.minimal_s,
            "witness": None if self.witness is None else serialize_dpda(self.witness),
            "nodes_explored": self.nodes_explored,
            "exhausted": self.exhausted,
        }


def _resolve_cells_limit(cells_limit: int | None) -> int:
    if cells_limit is not None:
        return cells_limit
    env = os.environ.get("DPDA_CELLS_LIMIT")
    if env is not None:
        return int(env)
    return DEFAULT_CELLS_LIMIT


def _pattern_canonical(rows: tuple[tuple[bool, ...], ...], f: int, k: int) -> bool:
    """True iff this star pattern is the canonical member of its orbit under
    row and column permutations.

    The canonical form permutes whichever dimension has the smaller
    factorial and sorts the other, which is invariant on the orbit.
    """
    if factorial(k) <= factorial(f):
        best = min(
            tuple(sorted(tuple(row[c] for c in perm) for row in rows))
            for perm in permutations(range(k))
        )
        return rows == best
    cols = tuple(tuple(rows[r][c] for r in range(f)) for c in range(k))
    best = min(
        tuple(sorted(tuple(col[r] for r in perm) for col in cols))
        for perm in permutations(range(f))
    )
    return cols == best


class _Class:
    __slots__ = ("cells", "rows", "cols", "senders")

    def __init__(self, r: int, c: int, senders: set[int]):
        self.cells = [(r, c)]
        self.rows = {r}
        self.cols = {c}
        self.senders = senders


def _partition_cells(star: list[list[bool]], f: int, k: int, z: int,
                     s_target: int, counter: list[int]) -> list[_Class] | None:
    """Partition the non-star cells into exactly ``s_target`` slot classes.

    Each class must have pairwise distinct rows and columns, stars at all
    crossing positions, and at least one feasible sender column (a column
    outside the class with stars in every class row).  Returns the classes
    in creation order, or None when no partition exists.
    """
    cells = [(r, c) for r in range(f) for c in range(k) if not star[r][c]]
    if len(cells) < s_target:
        return None
    cap = min(f, k - 1, z) if cells else 0
    star_cols_by_row = [
        frozenset(c for c in range(k) if star[r][c]) for r in range(f)
    ]
    classes: list[_Class] = []

    def extend(idx: int) -> bool:
        if idx == len(cells):
            return len(classes) == s_target
        remaining = len(cells) - idx
        if len(classes) + remaining < s_target:
            return False
        room = sum(cap - len(cl.cells) for cl in classes)
        room += (s_target - len(classes)) * cap
        if room < remaining:
            return False
        r, c = cells[idx]
        for cl in classes:
            if len(cl.cells) == cap or r in cl.rows or c in cl.cols:
                continue
            if any(not star[r][c2] or not star[r2][c] for r2, c2 in cl.cells):
                continue
            new_senders = {x for x in cl.senders if star[r][x]}
            new_senders.discard(c)
            if not new_senders:
                continue
            counter[0] += 1
            old_senders = cl.senders
            cl.cells.append((r, c))
            cl.rows.add(r)
            cl.cols.add(c)
            cl.senders = new_senders
            if extend(idx + 1):
                return True
            cl.cells.pop()
            cl.rows.discard(r)
            cl.cols.discard(c)
            cl.senders = old_senders
        if len(classes) < s_target:
            senders = set(star_cols_by_row[r])
            senders.discard(c)
            if senders:
                counter[0] += 1
                classes.append(_Class(r, c, senders))
                if extend(idx + 1):
                    return True
                classes.pop()
        return False

    return classes if extend(0) else None


def exists_dpda(k: int, f: int, z: int, s: int, *, cells_limit: int | None = None,
                prune_symmetry: bool = True) -> SearchResult:
    """Exhaustively decide whether a (K, 1, F, Z, S) array exists.

    Feasible results carry a witness (slots numbered in discovery order,
    each class's smallest feasible sender chosen).  The enumeration order is
    deterministic, so the returned witness is too.
    """
    if k < 2:
        raise ValueError(f"K must be >= 2, got {k}")
    if not 1 <= z <= f:
        raise ValueError(f"require 1 <= Z <= F, got Z={z}, F={f}")
    if s < 0:
        raise ValueError(f"S must be nonnegative, got {s}")
    limit = _resolve_cells_limit(cells_limit)
    if f * k > limit:
        raise SearchSpaceError(
            f"instance has {f * k} cells, above the exhaustive-search guard of "
            f"{limit}; raise cells_limit (or DPDA_CELLS_LIMIT) to insist"
        )
    counter = [0]
    for col_stars in product(combinations(range(f), z), repeat=k):
        rows = tuple(
            tuple(r in col_stars[c] for c in range(k)) for r in range(f)
        )
        counter[0] += 1
        if prune_symmetry and not _pattern_canonical(rows, f, k):
            continue
        star = [list(row) for row in rows]
        classes = _partition_cells(star, f, k, z, s, counter)
        if classes is None:
            continue
        # every non-star cell belongs to exactly one class, so filling the
        # classes over an all-star grid yields the complete array
        grid: list[list[Entry]] = [[STAR] * k for _ in range(f)]
        for slot, cl in enumerate(classes):
            sender = min(cl.senders)
            for r, c in cl.cells:
                grid[r][c] = Coded(slot, sender)
        witness = Dpda(k=k, lp=1, f=f, z=z, s=s,
                       grid=tuple(tuple(row) for row in grid))
        return SearchResult(True, None, witness, counter[0], True)
    return SearchResult(False, None, None, counter[0], True)


def search_min_s(k: int, f: int, z: int, s_max: int, *,
                 cells_limit: int | None = None,
                 prune_symmetry: bool = True) -> SearchResult:
    """Smallest S <= s_max admitting a (K, 1, F, Z, S) array, with witness.

    Scans S upward from zero so every smaller value is certified infeasible
    by exhaustion.  A found minimum below the exact rate floor
    S*Z >= F*(F-Z) would falsify this implementation and raises.
    """
    nodes = 0
    for s in range(s_max + 1):
        res = exists_dpda(k, f, z, s, cells_limit=cells_limit,
                          prune_symmetry=prune_symmetry)
        nodes += res.nodes_explored
        if res.feasible:
            if s * z < f * (f - z):
                raise AssertionError(
                    f"found S={s} below the rate floor F*(F-Z)/Z for "
                    f"(K,F,Z)=({k},{f},{z}); the search is unsound"
                )
            return SearchResult(True, s, res.witness, nodes, True)
    return SearchResult(False, None, None, nodes, True)


def _entry_key(e: Entry, slot_map: dict[int, int], fresh: list[int]) -> tuple[int, int, int]:
    if e is None:
        return (0, 0, 0)
    label = slot_map.get(e.slot)
    if label is None:
        label = fresh[0]
        slot_map[e.slot] = label
        fresh[0] += 1
    return (1, label, e.sender)


def _row_key(row: tuple[Entry, ...], slot_map: dict[int, int],
             next_label: int) -> tuple[tuple[tuple[int, int, int], ...], dict[int, int], int]:
    trial_map = dict(slot_map)
    fresh = [next_label]
    key = tuple(_entry_key(e, trial_map, fresh) for e in row)
    return key, trial_map, fresh[0]


def canonicalize(p: Dpda, *, cells_limit: int = _CANON_CELLS_LIMIT) -> Dpda:
    """Exact orbit representative of a valid L'=1 array.

    Minimizes the row-major entry sequence over row permutations, column
    permutations (senders relabeled along), and slot bijections; entries
    compare star-first, then by (slot label, sender).  Idempotent, and
    constant on each symmetry orbit.
    """
    if p.lp != 1:
        raise ValueError(f"canonicalization handles L'=1 arrays, got L'={p.lp}")
    if p.f * p.k > cells_limit or p.k > 8:
        raise SearchSpaceError(
            f"instance too large for exact canonicalization "
            f"({p.f}x{p.k} cells, guard {cells_limit}, K <= 8)"
        )
    best: list[tuple] | None = None

    def descend(rows: list[tuple[Entry, ...]], used: list[bool],
                slot_map: dict[int, int], next_label: int,
                acc: list[tuple]) -> None:
        nonlocal best
        depth = len(acc)
        if depth == len(rows):
            if best is None or acc < best:
                best = list(acc)
            return
        candidates = []
        for idx, row in enumerate(rows):
            if used[idx]:
                continue
            key, trial_map, label = _row_key(row, slot_map, next_label)
            candidates.append((key, idx, trial_map, label))
        # only rows achieving the minimal key can start the lex-min
        # completion; equal keys may bind slot labels differently, so ties
        # all branch
        low = min(c[0] for c in candidates)
        acc.append(low)
        if best is not None and acc > best[:depth + 1]:
            acc.pop()
            return
        for key, idx, trial_map, label in candidates:
            if key != low:
                continue
            used[idx] = True
            descend(rows, used, trial_map, label, acc)
            used[idx] = False
        acc.pop()

    for perm in permutations(range(p.k)):
        inv = [0] * p.k
        for new, old in enumerate(perm):
            inv[old] = new
        rows = [
            tuple(
                e if e is None else Coded(e.slot, inv[e.sender])
                for e in (p.grid[r][old] for old in perm)
            )
            for r in range(p.f)
        ]
        descend(rows, [False] * p.f, {}, 0, [])

    assert best is not None
    grid = tuple(
        tuple(STAR if kind == 0 else Coded(label, sender) for kind, label, sender in row_key)
        for row_key in best
    )
    return Dpda(k=p.k, lp=1, f=p.f, z=p.z, s=p.s, grid=grid)
