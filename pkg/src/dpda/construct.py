"""Deterministic builders for four DPDA families and the block-request lift.

Families (all rate-optimal, L' = 1):

* ``construct_jcm(K, t)`` - the subset-indexed baseline family with
  parameters (K, 1, t*C(K,t), t*C(K-1,t-1), (t+1)*C(K,t+1)), memory ratio
  t/K;
* ``construct_grid(q)`` - a (2q, 1, q^2, q, q^3-q^2) family at memory ratio
  1/q, meeting the K^2/4 packet-number floor for even user counts;
* ``construct_even(q)`` - a recursive (2q, 1, 2q(q-1), 2(q-1)^2, 2q) family
  at memory ratio (K-2)/K, K even;
* ``construct_odd(q)`` - a recursive (2q+1, 1, 4q^2-1, (2q-1)^2, 4q+2)
  family at memory ratio (K-2)/K, K odd.

``lift`` stacks slot-shifted copies of an L'=1 array to serve L'-block
requests at unchanged rate.

Symbolic slot labels (subset pairs, super combinations) are mapped to
numeric ids through the lexicographic subset ranking ``subset_rank``; the
chosen bijections are fixed so outputs are bit-reproducible.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

from .core import STAR, Coded, Dpda, Entry

__all__ = [
    "subset_rank",
    "subset_unrank",
    "construct_jcm",
    "construct_grid",
    "construct_even",
    "construct_odd",
    "lift",
]


def _ground_elements(ground: int | Sequence[int]) -> tuple[int, ...]:
    if isinstance(ground, int):
        if ground < 0:
            raise ValueError("ground-set size must be nonnegative")
        return tuple(range(ground))
    elems = tuple(ground)
    if any(b <= a for a, b in zip(elems, elems[1:])):
        raise ValueError("ground set must be strictly increasing")
    return elems


def subset_rank(ground: int | Sequence[int], subset: Sequence[int]) -> int:
    """Lexicographic rank of ``subset`` among the equal-size subsets of ``ground``.

    ``ground`` is either an integer n (meaning 0..n-1) or a strictly
    increasing sequence.  ``subset`` must be a nonempty, strictly increasing
    selection of ground elements.  Ranks run from 0 (the first g elements)
    to C(n, g) - 1.
    """
    elems = _ground_elements(ground)
    sub = tuple(subset)
    if not sub:
        raise ValueError("subset must be nonempty")
    if any(b <= a for a, b in zip(sub, sub[1:])):
        raise ValueError("subset must be strictly increasing")
    index = {e: i for i, e in enumerate(elems)}
    try:
        pos = [index[e] for e in sub]
    except KeyError as exc:
        raise ValueError(f"subset element {exc.args[0]} not in ground set") from exc
    n, g = len(elems), len(sub)
    rank = 0
    prev = -1
    for i, pi in enumerate(pos):
        for v in range(prev + 1, pi):
            rank += comb(n - 1 - v, g - 1 - i)
        prev = pi
    return rank


def subset_unrank(ground: int | Sequence[int], g: int, rank: int) -> tuple[int, ...]:
    """Inverse of :func:`subset_rank` for fixed subset size ``g``."""
    elems = _ground_elements(ground)
    n = len(elems)
    if not 1 <= g <= n:
        raise ValueError(f"subset size {g} out of range [1,{n}]")
    if not 0 <= rank < comb(n, g):
        raise ValueError(f"rank {rank} out of range [0,{comb(n, g)})")
    pos = []
    prev = -1
    for i in range(g):
        v = prev + 1
        while True:
            c = comb(n - 1 - v, g - 1 - i)
            if rank < c:
                break
            rank -= c
            v += 1
        pos.append(v)
        prev = v
    return tuple(elems[v] for v in pos)


def construct_jcm(k: int, t: int) -> Dpda:
    """Baseline family array for ``k`` users at memory ratio ``t/k``.

    Rows are indexed by (T, j) with T a t-subset of users and j in [0, t),
    laid out j-major with T in lexicographic order.  The entry in row (T, j)
    and column c not in T belongs to the slot of the (t+1)-subset
    U = T + {c}; the sender is the j-th element of U skipping c, and the
    slot id is (t+1) * subset_rank(k, U) + (position of the sender in U).
    """
    if not 1 <= t < k:
        raise ValueError(f"t must satisfy 1 <= t < K, got t={t}, K={k}")
    tsubsets = list(combinations(range(k), t))
    grid: list[tuple[Entry, ...]] = []
    for j in range(t):
        for tset in tsubsets:
            members = set(tset)
            row: list[Entry] = []
            for c in range(k):
                if c in members:
                    row.append(STAR)
                    continue
                u = tuple(sorted(tset + (c,)))
                f_rank = subset_rank(u, tset)
                sender = u[j] if j <= t - f_rank - 1 else u[j + 1]
                slot = (t + 1) * subset_rank(k, u) + u.index(sender)
                row.append(Coded(slot, sender))
            grid.append(tuple(row))
    return Dpda(
        k=k,
        lp=1,
        f=t * comb(k, t),
        z=t * comb(k - 1, t - 1),
        s=(t + 1) * comb(k, t + 1),
        grid=tuple(grid),
    )


def construct_grid(q: int) -> Dpda:
    """Grid family array for 2q users at memory ratio 1/q.

    Rows carry the base-q digits (i1, i0) of i in [0, q^2); columns the
    digits (k1, k0) of k in [0, 2q) with k1 in {0, 1}.  A cell is a star
    when digit i_{k1} equals k0.  A coded cell at (i, k) is labelled by the
    super combination ((b, x), {y, z}) and numbered
    b*q*C(q,2) + x*C(q,2) + subset_rank(q, {y, z}).
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    pair_count = comb(q, 2)
    grid: list[tuple[Entry, ...]] = []
    for i in range(q * q):
        i1, i0 = divmod(i, q)
        row: list[Entry] = []
        for col in range(2 * q):
            k1, k0 = divmod(col, q)
            digit = i0 if k1 == 0 else i1
            if digit == k0:
                row.append(STAR)
                continue
            if k1 == 0:
                b, x, pair, sender = 0, i1, (min(i0, k0), max(i0, k0)), q + i1
            else:
                b, x, pair, sender = 1, i0, (min(i1, k0), max(i1, k0)), i0
            slot = b * q * pair_count + x * pair_count + subset_rank(q, pair)
            row.append(Coded(slot, sender))
        grid.append(tuple(row))
    return Dpda(k=2 * q, lp=1, f=q * q, z=q, s=q**3 - q**2, grid=tuple(grid))


def _diag_block(n: int, entry: Coded, tail_col: Sequence[Entry],
                tail_pos: int) -> list[tuple[Entry, ...]]:
    """n x (n+2) block: ``entry`` on the diagonal, stars elsewhere, and the
    appended column at ``tail_pos`` (0 or 1) filled from ``tail_col``."""
    rows = []
    for r in range(n):
        left = tuple(entry if c == r else STAR for c in range(n))
        cols: list[Entry] = [STAR, STAR]
        cols[tail_pos] = tail_col[r]
        rows.append(left + tuple(cols))
    return rows


_EVEN_BASE: tuple[tuple[Entry, ...], ...] = (
    (Coded(2, 2), STAR, STAR, Coded(1, 1)),
    (STAR, Coded(2, 2), STAR, Coded(0, 0)),
    (Coded(3, 3), STAR, Coded(1, 1), STAR),
    (STAR, Coded(3, 3), Coded(0, 0), STAR),
)

_ODD_BASE: tuple[tuple[Entry, ...], ...] = (
    (STAR, Coded(0, 0), Coded(1, 0)),
    (Coded(3, 1), STAR, Coded(2, 1)),
    (Coded(4, 2), Coded(5, 2), STAR),
)


def construct_even(q: int) -> Dpda:
    """Even-user recursive family: (2q, 1, 2q(q-1), 2(q-1)^2, 2q).

    Grows the 4-user base two users at a time.  Each step appends two
    diagonal blocks (the two new slots) and a boundary column drawn from a
    running vector of previously introduced coded entries.
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    grid: list[tuple[Entry, ...]] = list(_EVEN_BASE)
    alpha: list[Coded] = [Coded(1, 1), Coded(0, 0), Coded(3, 3), Coded(2, 2)]
    for n in range(4, 2 * q, 2):
        rows = [row + (STAR, STAR) for row in grid]
        rows += _diag_block(n, Coded(n, n), alpha, 1)
        rows += _diag_block(n, Coded(n + 1, n + 1), alpha, 0)
        grid = rows
        alpha = alpha + [Coded(n + 1, n + 1), Coded(n, n)]
    return Dpda(
        k=2 * q, lp=1, f=2 * q * (q - 1), z=2 * (q - 1) ** 2, s=2 * q,
        grid=tuple(grid),
    )


def construct_odd(q: int) -> Dpda:
    """Odd-user recursive family: (2q+1, 1, 4q^2-1, (2q-1)^2, 4q+2).

    Grows the 3-user base two users at a time, appending four diagonal
    blocks per step (slots 2n..2n+3) with two alternating boundary vectors.
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    grid: list[tuple[Entry, ...]] = list(_ODD_BASE)
    beta: list[Coded] = [Coded(2, 1), Coded(4, 2), Coded(0, 0)]
    gamma: list[Coded] = [Coded(5, 2), Coded(1, 0), Coded(3, 1)]
    for n in range(3, 2 * q, 2):
        rows = [row + (STAR, STAR) for row in grid]
        rows += _diag_block(n, Coded(2 * n, n), beta, 1)
        rows += _diag_block(n, Coded(2 * n + 2, n + 1), beta, 0)
        rows += _diag_block(n, Coded(2 * n + 1, n), gamma, 1)
        rows += _diag_block(n, Coded(2 * n + 3, n + 1), gamma, 0)
        grid = rows
        beta = beta + [Coded(2 * n + 2, n + 1), Coded(2 * n, n)]
        gamma = gamma + [Coded(2 * n + 3, n + 1), Coded(2 * n + 1, n)]
    return Dpda(
        k=2 * q + 1, lp=1, f=4 * q * q - 1, z=(2 * q - 1) ** 2, s=4 * q + 2,
        grid=tuple(grid),
    )


def lift(p: Dpda, lp_new: int) -> Dpda:
    """Stack ``lp_new`` copies of an L'=1 array, shifting copy i's slots by i*S.

    Senders are unchanged; the result serves L'-block requests with S' =
    lp_new * S slots at the identical rate S/F.
    """
    if p.lp != 1:
        raise ValueError(f"lift requires an L'=1 array, got L'={p.lp}")
    if lp_new < 1:
        raise ValueError(f"lift factor must be >= 1, got {lp_new}")
    grid: list[tuple[Entry, ...]] = []
    for copy in range(lp_new):
        shift = copy * p.s
        for row in p.grid:
            grid.append(tuple(
                e if e is None else Coded(e.slot + shift, e.sender) for e in row
            ))
    return Dpda(k=p.k, lp=lp_new, f=p.f, z=p.z, s=lp_new * p.s, grid=tuple(grid))
