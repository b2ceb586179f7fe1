"""Packet-level execution of the caching protocol encoded by a DPDA.

Placement fills each user's cache with the packets marked by stars in its
column; delivery sends one XOR signal per slot (slot s groups the entries
``s^k`` and is broadcast by user k); decoding lets every user recover its
requested blocks from the signals plus its own cache.

File content is synthetic but deterministic: byte ``o`` of packet
``(file i, block l, packet h)`` is ``(i*31 + l*17 + h*7 + o) mod 256``,
so independent runs (and independent implementations of this rule) agree
byte-for-byte without sharing a random generator.

Decoders re-derive each signal's constituent packet ids from the array and
the demand; the audit ``constituents`` field on :class:`Signal` exists for
inspection only and is never read during decoding.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Dpda, slot_cells, slot_senders

__all__ = [
    "PacketId",
    "Library",
    "Caches",
    "Demand",
    "Signal",
    "SimReport",
    "SimulationError",
    "make_library",
    "place",
    "user_cache_bytes",
    "deliver",
    "decode",
    "simulate",
]

PacketId = tuple[int, int, int]  # (file, block, packet)


class SimulationError(RuntimeError):
    """Protocol execution hit a state only an invalid array can produce."""


@dataclass(frozen=True, eq=False)
class Library:
    """Deterministic packetized corpus: n files, l blocks, f packets per block."""

    n: int
    l: int
    f: int
    packet_size: int
    _content: dict[PacketId, bytes] = field(repr=False)

    def packet(self, i: int, block: int, h: int) -> bytes:
        try:
            return self._content[(i, block, h)]
        except KeyError:
            raise ValueError(f"packet id {(i, block, h)} outside the library") from None


def make_library(n: int, l: int, f: int, packet_size: int = 64) -> Library:
    """Build the corpus; byte o of packet (i, l, h) is (i*31+l*17+h*7+o) mod 256."""
    if min(n, l, f, packet_size) < 1:
        raise ValueError("N, L, F and packet_size must all be >= 1")
    content = {}
    for i in range(n):
        for block in range(l):
            for h in range(f):
                base = i * 31 + block * 17 + h * 7
                content[(i, block, h)] = bytes((base + o) % 256 for o in range(packet_size))
    return Library(n=n, l=l, f=f, packet_size=packet_size, _content=content)


@dataclass(frozen=True, eq=False)
class Caches:
    """Per-user sets of cached packet ids."""

    users: tuple[frozenset[PacketId], ...]


def place(p: Dpda, lib: Library) -> Caches:
    """Fill caches: user j stores packet (i, l, h) of every file and block
    whenever row h of j's column is a star (first band)."""
    if lib.f != p.f:
        raise ValueError(f"library has {lib.f} packets per block, array needs {p.f}")
    users = []
    for j in range(p.k):
        starred = [h for h in range(p.f) if p.grid[h][j] is None]
        users.append(frozenset(
            (i, block, h)
            for i in range(lib.n)
            for block in range(lib.l)
            for h in starred
        ))
    return Caches(users=tuple(users))


def user_cache_bytes(lib: Library, caches: Caches, k: int) -> dict[PacketId, bytes]:
    """Materialize the actual cached content of user ``k``."""
    return {pid: lib.packet(*pid) for pid in caches.users[k]}


@dataclass(frozen=True)
class Demand:
    """Per-user requests: file indices ``d`` and start blocks ``b``."""

    d: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.d) != len(self.b):
            raise ValueError("d and b must have equal length")


def _check_demand(dem: Demand, k: int, n: int, l: int, lp: int) -> None:
    if len(dem.d) != k:
        raise ValueError(f"demand is for {len(dem.d)} users, array has {k}")
    for j, (dj, bj) in enumerate(zip(dem.d, dem.b)):
        if not 0 <= dj < n:
            raise ValueError(f"user {j}: file {dj} out of range [0,{n})")
        if not 0 <= bj <= l - lp:
            raise ValueError(f"user {j}: start block {bj} out of range [0,{l - lp}]")


@dataclass(frozen=True)
class Signal:
    """One broadcast: XOR payload for a slot, plus an audit-only constituent list."""

    slot: int
    sender: int
    payload: bytes
    constituents: tuple[PacketId, ...]


def _xor(a: bytes, b: bytes) -> bytes:
    return (int.from_bytes(a, "little") ^ int.from_bytes(b, "little")).to_bytes(len(a), "little")


def deliver(p: Dpda, caches: Caches, lib: Library, dem: Demand) -> list[Signal]:
    """Produce the S broadcast signals for a demand, in slot order.

    Signal s XORs, over every cell (i, j) carrying slot s, the packet
    (d_j, b_j + i//F, i mod F).  Every constituent must already sit in the
    sender's cache; a miss means the array is not a valid DPDA and raises
    :class:`SimulationError`.
    """
    _check_demand(dem, p.k, lib.n, lib.l, p.lp)
    cells = slot_cells(p)
    senders = slot_senders(p)
    signals = []
    for s in range(p.s):
        occ = cells.get(s)
        if not occ:
            raise SimulationError(f"slot {s} never occurs; cannot schedule its broadcast")
        sender = senders[s]
        payload = bytes(lib.packet_size)
        constituents = []
        for i, j in occ:
            pid = (dem.d[j], dem.b[j] + i // p.f, i % p.f)
            if pid not in caches.users[sender]:
                raise SimulationError(
                    f"sender {sender} lacks packet {pid} needed for slot {s} "
                    f"(entry at row {i}, column {j})"
                )
            constituents.append(pid)
            payload = _xor(payload, lib.packet(*pid))
        signals.append(Signal(slot=s, sender=sender, payload=payload,
                              constituents=tuple(constituents)))
    return signals


def decode(p: Dpda, cache_k: Mapping[PacketId, bytes], signals: Sequence[Signal],
           dem: Demand, k: int) -> dict[PacketId, bytes]:
    """Recover user ``k``'s requested packets (d_k, b_k + l, h) for l in
    [0, L'), h in [0, F).

    Uses only the array, the demand, the user's own cached bytes and the
    signal payloads; constituent ids are re-derived from the array, never
    read from the signals' audit lists.
    """
    by_slot = {sig.slot: sig for sig in signals}
    cells = slot_cells(p)
    recovered: dict[PacketId, bytes] = {}
    for i in range(p.lp * p.f):
        want: PacketId = (dem.d[k], dem.b[k] + i // p.f, i % p.f)
        e = p.grid[i][k]
        if e is None:
            if want not in cache_k:
                raise SimulationError(f"user {k} should have cached {want} but has not")
            recovered[want] = cache_k[want]
            continue
        try:
            payload = by_slot[e.slot].payload
        except KeyError:
            raise SimulationError(f"signal for slot {e.slot} missing") from None
        x = payload
        for i2, j2 in cells[e.slot]:
            if (i2, j2) == (i, k):
                continue
            other: PacketId = (dem.d[j2], dem.b[j2] + i2 // p.f, i2 % p.f)
            if other == want:
                # a side packet identical to the wanted one cancels inside
                # the XOR; valid arrays cannot produce this
                raise SimulationError(
                    f"slot {e.slot} mixes packet {want} twice; array is not decodable"
                )
            if other not in cache_k:
                raise SimulationError(
                    f"user {k} cannot remove uncached packet {other} from slot {e.slot}"
                )
            x = _xor(x, cache_k[other])
        recovered[want] = x
    return recovered


@dataclass(frozen=True)
class SimReport:
    """Outcome of one or many protocol runs on a fixed array and library."""

    success: bool
    packets_sent: int
    rate: Fraction
    trials: int
    failures: tuple[dict, ...]
    memory_files: Fraction

    def to_json(self) -> dict:
        return {
            "success": self.success,
            "packets_sent": self.packets_sent,
            "rate": str(self.rate),
            "trials": self.trials,
            "failures": list(self.failures),
            "memory_files": str(self.memory_files),
        }


def simulate(p: Dpda, n: int, l: int, packet_size: int = 64, *,
             demand: Demand | None = None, trials: int | None = None,
             seed: int = 0) -> SimReport:
    """Run place -> deliver -> decode and verify byte-exact recovery.

    Exactly one of ``demand`` (a single run) or ``trials`` (that many
    uniformly sampled demands, deterministic from ``seed``) must be given.
    The cache size in files, Z*N/F, is reported exactly as a fraction; it
    need not be an integer.
    """
    if l < p.lp:
        raise ValueError(f"need L >= L', got L={l}, L'={p.lp}")
    if (demand is None) == (trials is None):
        raise ValueError("provide exactly one of demand= or trials=")
    lib = make_library(n, l, p.f, packet_size)
    caches = place(p, lib)
    cache_bytes = [user_cache_bytes(lib, caches, k) for k in range(p.k)]
    if demand is not None:
        demands: Iterable[Demand] = [demand]
        count = 1
    else:
        if trials < 1:
            raise ValueError("trials must be >= 1")
        rng = random.Random(seed)
        demands = [
            Demand(
                d=tuple(rng.randrange(n) for _ in range(p.k)),
                b=tuple(rng.randrange(l - p.lp + 1) for _ in range(p.k)),
            )
            for _ in range(trials)
        ]
        count = trials
    failures: list[dict] = []
    sent: set[int] = set()
    for run, dem in enumerate(demands):
        try:
            signals = deliver(p, caches, lib, dem)
        except (SimulationError, ValueError) as exc:
            failures.append({"trial": run, "demand": [list(dem.d), list(dem.b)],
                             "error": str(exc)})
            continue
        sent.add(len(signals))
        for k in range(p.k):
            try:
                got = decode(p, cache_bytes[k], signals, dem, k)
            except SimulationError as exc:
                failures.append({"trial": run, "user": k, "error": str(exc)})
                continue
            for i in range(p.lp * p.f):
                pid: PacketId = (dem.d[k], dem.b[k] + i // p.f, i % p.f)
                if got.get(pid) != lib.packet(*pid):
                    failures.append({"trial": run, "user": k,
                                     "packet": list(pid), "error": "byte mismatch"})
    if len(sent) > 1:
        raise AssertionError(f"per-demand transmissions differ: {sorted(sent)}")
    packets_sent = sent.pop() if sent else 0
    return SimReport(
        success=not failures,
        packets_sent=packets_sent,
        rate=Fraction(packets_sent, p.lp * p.f),
        trials=count,
        failures=tuple(failures),
        memory_files=Fraction(p.z * n, p.f),
    )
