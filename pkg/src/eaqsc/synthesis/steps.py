"""Standalone elimination steps on ``r x 2n`` matrices whose X-part starts with ``I_r``.

Each function returns the emitted gates and the transformed matrix, so the
steps can be checked one at a time against their algebraic effect.
"""

from __future__ import annotations

import numpy as np

from ..circuit import BudgetRecord, Circuit, ColumnState, Gate
from ..gf2 import BitMatrix
from .blocks import Recorder, blocked_clear, blocked_symmetric_clear, build_block_schedule


def _start(M: BitMatrix, m: int) -> tuple[Recorder, int, int]:
    if M.cols % 2:
        raise ValueError("matrix needs an even number of columns")
    n, r = M.cols // 2, M.rows
    if r > n:
        raise ValueError(f"{r} rows exceed {n} qubits")
    if m < 1:
        raise ValueError(f"block size must be positive, got {m}")
    a = M.to_array()
    if not np.array_equal(a[:, :r], np.eye(r, dtype=np.uint8)):
        raise ValueError("left X-block must be the identity")
    return Recorder(ColumnState.from_matrix(M)), n, r


def _result(rec: Recorder) -> tuple[Circuit, BitMatrix]:
    gates = [Gate(op[0], tuple(op[1:])) for op in rec.ops]
    return Circuit(rec.state.n, gates), rec.state.to_matrix()


def reduce_IA(M: BitMatrix, m: int, budgets: list[BudgetRecord] | None = None,
              prune: bool = True) -> tuple[Circuit, BitMatrix]:
    """``[I A | * O] -> [I O | * O]`` with CNOTs only."""
    rec, n, r = _start(M, m)
    if M.to_array()[:, n + r:].any():
        raise ValueError("Z-part columns right of the identity block must be zero")
    blocked_clear(rec, list(range(r)), 0, list(range(r, n)), "x", m, "reduce_IA", budgets, prune)
    return _result(rec)


def reduce_symmetric_B(M: BitMatrix, m: int, budgets: list[BudgetRecord] | None = None,
                       prune: bool = True) -> tuple[Circuit, BitMatrix]:
    """``[I O | B O] -> [I O | O O]`` for symmetric ``B``."""
    rec, n, r = _start(M, m)
    a = M.to_array()
    if a[:, r:n].any() or a[:, n + r:].any():
        raise ValueError("expected the shape [I O | B O]")
    if not BitMatrix.from_array(a[:, n:n + r]).is_symmetric():
        raise ValueError("B must be symmetric")
    blocked_symmetric_clear(rec, list(range(r)), 0, m, "reduce_symmetric_B", budgets, prune)
    return _result(rec)


def clear_C_by_cz(M: BitMatrix, m: int, budgets: list[BudgetRecord] | None = None,
                  prune: bool = True) -> tuple[Circuit, BitMatrix]:
    """``[I A | B C] -> [I A | B+AC^T O]`` with CZs."""
    rec, n, r = _start(M, m)
    blocked_clear(rec, list(range(r)), 0, list(range(r, n)), "z", m, "clear_C", budgets, prune)
    return _result(rec)


def clear_A_by_cnot(M: BitMatrix, m: int, budgets: list[BudgetRecord] | None = None,
                    prune: bool = True) -> tuple[Circuit, BitMatrix]:
    """``[I A | B C] -> [I O | B+CA^T C]`` with CNOTs."""
    rec, n, r = _start(M, m)
    blocked_clear(rec, list(range(r)), 0, list(range(r, n)), "x", m, "clear_A", budgets, prune)
    return _result(rec)


def identity_to_D(m: int) -> list[tuple[int, int]]:
    """Column additions ``(src, dst)`` walking ``I_m`` to the upper-triangular all-ones ``D``."""
    return [(s.src, s.dst) for s in build_block_schedule(m).walk]
