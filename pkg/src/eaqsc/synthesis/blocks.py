"""Blocked elimination passes.

Pivot qubits are grouped into blocks of ``m``. Inside a block, CNOTs among the
pivot columns make the block's X-columns run through nonzero ``m``-bit
patterns; whenever a target column matches the live pattern of a pivot it is
cleared by one gate. Afterwards the block is restored to the identity.

Patterns are ints with bit ``i`` standing for the block's ``i``-th row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..circuit import CNOT, CZ, P, BudgetRecord, ColumnState

MAX_BLOCK = 20


def select_block_size(n: int, alpha: float = 0.75) -> int:
    """``max(1, floor(alpha * log2 n))``, capped at 20."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    return min(MAX_BLOCK, max(1, math.floor(alpha * math.log2(n))))


@dataclass(frozen=True)
class ScheduleStep:
    src: int
    dst: int
    pattern: int  # content of column ``dst`` after the addition


@dataclass(frozen=True)
class BlockSchedule:
    m: int
    walk: tuple[ScheduleStep, ...]
    restore: tuple[tuple[int, int], ...]

    @property
    def patterns(self) -> list[int]:
        return [1 << i for i in range(self.m)] + [s.pattern for s in self.walk]

    @property
    def additions(self) -> int:
        return len(self.walk) + len(self.restore)


@lru_cache(maxsize=None)
def build_block_schedule(m: int) -> BlockSchedule:
    """Walk from the identity to the all-ones upper triangle ``D`` and back.

    Column ``j`` visits every pattern whose highest set bit is ``j`` by a Gray
    walk over combinations of columns ``0..j-1``; the reflected Gray code ends
    on the single top bit, which leaves column ``j`` equal to ``D``'s column.
    That is ``2^m - m - 1`` additions out and ``m - 1`` back.
    """
    if not 1 <= m <= MAX_BLOCK:
        raise ValueError(f"block size must be in [1, {MAX_BLOCK}], got {m}")
    cur = [1 << i for i in range(m)]
    walk = []
    for j in range(1, m):
        for t in range(1, 1 << j):
            src = (t & -t).bit_length() - 1
            cur[j] ^= cur[src]
            walk.append(ScheduleStep(src, j, cur[j]))
    restore = tuple((j - 1, j) for j in range(m - 1, 0, -1))
    return BlockSchedule(m, tuple(walk), restore)


def _coefficients(v: int, basis: list[int], upto: int) -> int:
    """Coordinates of ``v`` in the triangular basis ``basis[0..upto-1]``."""
    w = 0
    for i in range(upto - 1, -1, -1):
        if (v >> i) & 1:
            w |= 1 << i
            v ^= basis[i]
    if v:
        raise AssertionError("pattern outside the span of the block basis")
    return w


def _gray_rank(g: int) -> int:
    n = 0
    while g:
        n ^= g
        g >>= 1
    return n


class Recorder:
    """A ColumnState that logs every gate applied to it."""

    def __init__(self, state: ColumnState):
        self.state = state
        self.ops: list[tuple] = []

    def cnot(self, a: int, b: int) -> None:
        self.state.cnot(a, b)
        self.ops.append((CNOT, a, b))

    def cz(self, a: int, b: int) -> None:
        self.state.cz(a, b)
        self.ops.append((CZ, a, b))

    def h(self, a: int) -> None:
        self.state.h(a)
        self.ops.append(("H", a))

    def p(self, a: int) -> None:
        self.state.p(a)
        self.ops.append((P, a))

    def swap(self, a: int, b: int) -> None:
        self.state.swap(a, b)
        self.ops.append(("SWAP", a, b))


def _clear_block(rec: Recorder, qs: list[int], row0: int, targets: list[int],
                 mode: str, prune: bool) -> int:
    """Clear the block rows ``row0..row0+len(qs)-1`` of every target column.

    ``mode`` is ``"x"`` (X-columns, cleared with CNOT) or ``"z"`` (Z-columns,
    cleared with CZ). Returns the number of gates emitted.
    """
    st = rec.state
    mb = len(qs)
    mask = (1 << mb) - 1
    cols = st.xs if mode == "x" else st.zs
    gate = rec.cnot if mode == "x" else rec.cz
    needed: dict[int, list[int]] = {}
    for j in targets:
        pat = (cols[j] >> row0) & mask
        if pat:
            needed.setdefault(pat, []).append(j)
    if not needed:
        return 0
    start = len(rec.ops)
    cur = [1 << i for i in range(mb)]

    def clear(i: int) -> None:
        for j in needed.pop(cur[i], ()):
            gate(qs[i], j)

    def add(src: int, dst: int) -> None:
        rec.cnot(qs[src], qs[dst])
        cur[dst] ^= cur[src]

    for i in range(mb):
        clear(i)
    if prune:
        for j in range(1, mb):
            if not needed:
                break
            want = [pat for pat in needed if pat.bit_length() - 1 == j]
            if not want:
                continue
            coords = sorted((_coefficients(pat ^ (1 << j), cur, j) for pat in want), key=_gray_rank)
            here = _coefficients(cur[j] ^ (1 << j), cur, j)
            for w in coords:
                diff = w ^ here
                while diff:
                    low = diff & -diff
                    add(low.bit_length() - 1, j)
                    clear(j)
                    diff ^= low
                here = w
        for i in range(mb - 1, 0, -1):
            w = _coefficients(cur[i] ^ (1 << i), cur, i)
            while w:
                low = w & -w
                add(low.bit_length() - 1, i)
                w ^= low
    else:
        sched = build_block_schedule(mb)
        for step in sched.walk:
            add(step.src, step.dst)
            clear(step.dst)
        for src, dst in sched.restore:
            add(src, dst)
    if needed:
        raise AssertionError(f"patterns never produced: {sorted(needed)}")
    return len(rec.ops) - start


def blocked_clear(rec: Recorder, pivots: list[int], row0: int, targets: list[int],
                  mode: str, m: int, step: str, budgets: list[BudgetRecord] | None = None,
                  prune: bool = True) -> None:
    """Clear ``targets`` on the rows owned by ``pivots``.

    Pivot ``pivots[i]`` must have X-column equal to the unit vector of row
    ``row0 + i`` on those rows.
    """
    for b in range(0, len(pivots), m):
        qs = pivots[b:b + m]
        used = _clear_block(rec, qs, row0 + b, targets, mode, prune)
        if budgets is not None:
            mb = len(qs)
            budgets.append(BudgetRecord(step, b // m, used, (1 << mb) + len(targets) + 2 * mb * mb))


def blocked_symmetric_clear(rec: Recorder, pivots: list[int], row0: int, m: int,
                            step: str, budgets: list[BudgetRecord] | None = None,
                            prune: bool = True) -> None:
    """Zero the symmetric Z-block ``B`` on the pivot rows/columns.

    Phase gates clear the diagonal, CZs clear each block's own square, and the
    pattern walk clears each block's rows against all later pivot columns.
    """
    st = rec.state
    r = len(pivots)
    start = len(rec.ops)
    for i, q in enumerate(pivots):
        if (st.zs[q] >> (row0 + i)) & 1:
            rec.p(q)
    n_phase = len(rec.ops) - start
    per_block_bound = []
    for b in range(0, r, m):
        qs = pivots[b:b + m]
        mb = len(qs)
        block_start = len(rec.ops)
        for i in range(mb):
            for i2 in range(i + 1, mb):
                if (st.zs[qs[i2]] >> (row0 + b + i)) & 1:
                    rec.cz(qs[i], qs[i2])
        _clear_block(rec, qs, row0 + b, pivots[b + mb:], "z", prune)
        used = len(rec.ops) - block_start
        bound = mb * mb + r + (1 << mb) + 2 * mb * mb
        per_block_bound.append(bound)
        if budgets is not None:
            budgets.append(BudgetRecord(step, b // m, used, bound))
    if budgets is not None:
        total_bound = r + (m * m + r + (1 << m) + 2 * m * m) * math.ceil(r / m) if r else 0
        budgets.append(BudgetRecord(step + ":total", -1, len(rec.ops) - start, total_bound))
        budgets.append(BudgetRecord(step + ":phase", -1, n_phase, r))


def _lower_pass(rows: list[int], n: int, m: int) -> list[tuple[int, int]]:
    """Section-wise lower elimination with duplicate-subrow removal.

    Row operations ``(src, dst)`` mean ``rows[dst] ^= rows[src]``.
    """
    ops = []
    for lo in range(0, n, m):
        hi = min(lo + m, n)
        mask = ((1 << (hi - lo)) - 1) << lo
        seen: dict[int, int] = {}
        for r in range(lo, n):
            sub = rows[r] & mask
            if not sub:
                continue
            if sub in seen:
                rows[r] ^= rows[seen[sub]]
                ops.append((seen[sub], r))
            else:
                seen[sub] = r
        for col in range(lo, hi):
            diag = (rows[col] >> col) & 1
            for r in range(col + 1, n):
                if (rows[r] >> col) & 1:
                    if not diag:
                        rows[col] ^= rows[r]
                        ops.append((r, col))
                        diag = 1
                    rows[r] ^= rows[col]
                    ops.append((col, r))
    return ops


def column_ops_to_identity(M_rows: list[int], n: int, m: int) -> list[tuple[int, int]]:
    """Column additions ``(src, dst)`` (``col dst += col src``) turning the
    invertible ``n x n`` matrix with rows ``M_rows`` into the identity.

    Sectioned elimination with section width ``m`` gives ``O(n^2 / log n)``
    additions when ``m ~ log n``.
    """
    # column ops on M are row ops on M^T
    N = [sum(((M_rows[i] >> j) & 1) << i for i in range(n)) for j in range(n)]
    first = _lower_pass(N, n, m)
    NT = [sum(((N[i] >> j) & 1) << i for i in range(n)) for j in range(n)]
    second = _lower_pass(NT, n, m)
    if NT != [1 << i for i in range(n)]:
        raise AssertionError("matrix is singular")
    return first + [(dst, src) for src, dst in reversed(second)]
