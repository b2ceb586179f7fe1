"""Data model and wire formats for D2D placement delivery arrays (DPDAs).

A DPDA is an (L'*F) x K array over star entries and coded entries ``s^k``:
a star marks a packet index cached by the column's user, while a coded entry
names a broadcast slot ``s`` together with the user ``k`` that transmits the
slot's XOR signal.  One array simultaneously encodes the cache placement and
the broadcast schedule of a device-to-device coded caching scheme.

Stars are represented as :data:`STAR` (``None``); coded entries as
:class:`Coded`.  Every value here is immutable, so instances may be freely
shared between threads.

Canonical text format (byte-stable)::

    DPDA K=4 L'=1 F=4 Z=2 S=4
    2^2 * * 1^1
    * 2^2 * 0^0
    3^3 * 1^1 *
    * 3^3 0^0 *

A JSON mirror with keys ``k, lp, f, z, s, grid`` (the grid holding the same
tokens) is provided for machine consumers.

This module checks structural well-formedness only (dimensions, entry
ranges, one sender per slot).  The semantic conditions C0-C4 live in
:mod:`dpda.validation`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

__all__ = [
    "STAR",
    "Coded",
    "Entry",
    "Dpda",
    "SchemeParams",
    "FormatError",
    "parse_dpda",
    "serialize_dpda",
    "dpda_to_json",
    "dpda_from_json",
    "slot_cells",
    "slot_senders",
    "permute_band_rows",
    "permute_columns",
    "relabel_slots",
]


class FormatError(ValueError):
    """Malformed DPDA text or JSON; messages carry row/column coordinates."""


@dataclass(frozen=True, slots=True)
class Coded:
    """Coded entry: a broadcast slot id and the user index that sends it."""

    slot: int
    sender: int


Entry = Coded | None
STAR: Entry = None  # star entries are represented as None

_CODED_TOKEN = re.compile(r"^(\d+)\^(\d+)$")


@dataclass(frozen=True)
class Dpda:
    """A (K, L', F, Z, S) placement delivery array.

    ``grid`` is a row-major (lp*f) x k matrix of entries.  Construction
    enforces the structural invariants: exact dimensions, slot ids in
    ``[0, s)``, sender indices in ``[0, k)``, and a single sender per slot.
    """

    k: int
    lp: int
    f: int
    z: int
    s: int
    grid: tuple[tuple[Entry, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 1 or self.lp < 1 or self.f < 1:
            raise FormatError("K, L' and F must all be >= 1")
        if self.z < 0 or self.s < 0:
            raise FormatError("Z and S must be nonnegative")
        grid = tuple(tuple(row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        if len(grid) != self.lp * self.f:
            raise FormatError(
                f"expected {self.lp * self.f} rows (L'*F), got {len(grid)}"
            )
        senders: dict[int, tuple[int, int, int]] = {}
        for r, row in enumerate(grid):
            if len(row) != self.k:
                raise FormatError(f"row {r}: expected {self.k} columns, got {len(row)}")
            for c, e in enumerate(row):
                if e is None:
                    continue
                if not isinstance(e, Coded):
                    raise FormatError(f"row {r}, column {c}: not a star or coded entry")
                if not 0 <= e.slot < self.s:
                    raise FormatError(
                        f"row {r}, column {c}: slot {e.slot} out of range [0,{self.s})"
                    )
                if not 0 <= e.sender < self.k:
                    raise FormatError(
                        f"row {r}, column {c}: sender {e.sender} out of range [0,{self.k})"
                    )
                seen = senders.get(e.slot)
                if seen is None:
                    senders[e.slot] = (e.sender, r, c)
                elif seen[0] != e.sender:
                    raise FormatError(
                        f"row {r}, column {c}: slot {e.slot} has sender {e.sender}, "
                        f"but row {seen[1]}, column {seen[2]} assigned sender {seen[0]}"
                    )

    @property
    def rows(self) -> int:
        return self.lp * self.f


@dataclass(frozen=True)
class SchemeParams:
    """Parameters of an F-division (K, M, N, L, L') coded caching scheme.

    Couples the array side (f, z, s) with the scheme side (n files, cache
    size m, l blocks per file) through the exact identity z*n == f*m.
    """

    k: int
    n: int
    m: int
    l: int
    lp: int
    f: int
    z: int
    s: int

    def __post_init__(self) -> None:
        if min(self.k, self.n, self.m, self.l, self.lp, self.f) < 1:
            raise ValueError("K, N, M, L, L' and F must all be >= 1")
        if self.z < 0 or self.s < 0:
            raise ValueError("Z and S must be nonnegative")
        if self.z * self.n != self.f * self.m:
            raise ValueError(
                f"memory coupling violated: Z*N = {self.z * self.n} != F*M = {self.f * self.m}"
            )
        if not 1 <= self.lp <= self.l:
            raise ValueError("L' must satisfy 1 <= L' <= L")
        if self.m * self.k < self.n:
            raise ValueError("infeasible memory: M*K < N")

    @classmethod
    def from_dpda(cls, p: Dpda, n: int, l: int) -> "SchemeParams":
        """Derive scheme parameters for ``n`` files of ``l`` blocks each.

        Requires z*n to be divisible by f so the cache size in files is an
        integer; use :func:`dpda.sim.simulate` for the general case.
        """
        if (p.z * n) % p.f:
            raise ValueError(f"Z*N = {p.z * n} is not divisible by F = {p.f}")
        return cls(k=p.k, n=n, m=p.z * n // p.f, l=l, lp=p.lp, f=p.f, z=p.z, s=p.s)


def _entry_token(e: Entry) -> str:
    return "*" if e is None else f"{e.slot}^{e.sender}"


def _parse_token(tok: str, r: int, c: int) -> Entry:
    if tok == "*":
        return STAR
    m = _CODED_TOKEN.match(tok)
    if m is None:
        raise FormatError(f"row {r}, column {c}: bad token {tok!r}")
    return Coded(slot=int(m.group(1)), sender=int(m.group(2)))


def parse_dpda(text: str | bytes) -> Dpda:
    """Parse the DPDA text format into a structurally well-formed array.

    Semantic conditions (C0-C4) are *not* checked here.  Raises
    :class:`FormatError` with row/column coordinates on malformed input.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise FormatError("empty input")
    header = lines[0].split()
    if len(header) != 6 or header[0] != "DPDA":
        raise FormatError(f"malformed header: {lines[0]!r}")
    fields = {}
    for part, key in zip(header[1:], ("K", "L'", "F", "Z", "S")):
        prefix = key + "="
        if not part.startswith(prefix) or not part[len(prefix):].isdigit():
            raise FormatError(f"malformed header field {part!r} (expected {prefix}<int>)")
        fields[key] = int(part[len(prefix):])
    k, lp, f, z, s = fields["K"], fields["L'"], fields["F"], fields["Z"], fields["S"]
    body = lines[1:]
    if lp < 1 or f < 1:
        raise FormatError("header requires L' >= 1 and F >= 1")
    if len(body) != lp * f:
        raise FormatError(f"expected {lp * f} body rows (L'*F), got {len(body)}")
    grid = []
    for r, line in enumerate(body):
        toks = line.split()
        if len(toks) != k:
            raise FormatError(f"row {r}: expected {k} tokens, got {len(toks)}")
        grid.append(tuple(_parse_token(t, r, c) for c, t in enumerate(toks)))
    return Dpda(k=k, lp=lp, f=f, z=z, s=s, grid=tuple(grid))


def serialize_dpda(p: Dpda) -> str:
    """Render ``p`` in the canonical text format (byte-stable, round-trips)."""
    out = [f"DPDA K={p.k} L'={p.lp} F={p.f} Z={p.z} S={p.s}"]
    out.extend(" ".join(_entry_token(e) for e in row) for row in p.grid)
    return "\n".join(out) + "\n"


def dpda_to_json(p: Dpda) -> dict:
    """JSON mirror of the text format (stable key order)."""
    return {
        "k": p.k,
        "lp": p.lp,
        "f": p.f,
        "z": p.z,
        "s": p.s,
        "grid": [[_entry_token(e) for e in row] for row in p.grid],
    }


def dpda_from_json(obj: str | Mapping) -> Dpda:
    """Parse the JSON mirror produced by :func:`dpda_to_json`."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, Mapping):
        raise FormatError("JSON mirror must be an object")
    try:
        k, lp, f, z, s = (int(obj[key]) for key in ("k", "lp", "f", "z", "s"))
        rows = obj["grid"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"JSON mirror missing or non-integer field: {exc}") from exc
    grid = []
    for r, row in enumerate(rows):
        grid.append(tuple(_parse_token(str(t), r, c) for c, t in enumerate(row)))
    return Dpda(k=k, lp=lp, f=f, z=z, s=s, grid=tuple(grid))


def slot_cells(p: Dpda) -> dict[int, list[tuple[int, int]]]:
    """Map each slot id to its (row, column) occurrences in row-major order."""
    cells: dict[int, list[tuple[int, int]]] = {}
    for r, row in enumerate(p.grid):
        for c, e in enumerate(row):
            if e is not None:
                cells.setdefault(e.slot, []).append((r, c))
    return cells


def slot_senders(p: Dpda) -> dict[int, int]:
    """Map each slot id occurring in ``p`` to its (unique) sender."""
    senders: dict[int, int] = {}
    for row in p.grid:
        for e in row:
            if e is not None:
                senders[e.slot] = e.sender
    return senders


def permute_band_rows(p: Dpda, order: Sequence[int]) -> Dpda:
    """Apply one permutation of the F rows identically to every band.

    ``order[h]`` names the old in-band row placed at in-band position ``h``.
    """
    if sorted(order) != list(range(p.f)):
        raise ValueError("order must be a permutation of range(F)")
    grid = tuple(
        p.grid[band * p.f + order[h]] for band in range(p.lp) for h in range(p.f)
    )
    return Dpda(k=p.k, lp=p.lp, f=p.f, z=p.z, s=p.s, grid=grid)


def permute_columns(p: Dpda, order: Sequence[int]) -> Dpda:
    """Reorder columns and relabel senders accordingly.

    ``order[c]`` names the old column placed at position ``c``; a coded
    entry's sender ``k`` becomes ``k``'s new position.
    """
    if sorted(order) != list(range(p.k)):
        raise ValueError("order must be a permutation of range(K)")
    inv = [0] * p.k
    for new, old in enumerate(order):
        inv[old] = new
    grid = tuple(
        tuple(
            e if e is None else Coded(e.slot, inv[e.sender])
            for e in (row[old] for old in order)
        )
        for row in p.grid
    )
    return Dpda(k=p.k, lp=p.lp, f=p.f, z=p.z, s=p.s, grid=grid)


def relabel_slots(p: Dpda, mapping: Sequence[int] | Mapping[int, int]) -> Dpda:
    """Apply a bijective slot-id relabeling (senders are unchanged)."""
    table = dict(enumerate(mapping)) if not isinstance(mapping, Mapping) else dict(mapping)
    used = {e.slot for row in p.grid for e in row if e is not None}
    if not used <= table.keys():
        raise ValueError(f"mapping does not cover used slots {sorted(used - table.keys())}")
    image = {table[s] for s in used}
    if len(image) != len(used) or any(not 0 <= v < p.s for v in image):
        raise ValueError("mapping must be injective into [0,S) on the used slots")
    grid = tuple(
        tuple(e if e is None else Coded(table[e.slot], e.sender) for e in row)
        for row in p.grid
    )
    return Dpda(k=p.k, lp=p.lp, f=p.f, z=p.z, s=p.s, grid=grid)
