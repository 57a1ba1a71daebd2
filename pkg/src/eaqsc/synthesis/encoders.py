"""Encoder synthesis for stabilizer codes and entanglement-assisted codes.

Both pipelines reduce the standard form of the target check matrix to the
raw (unencoded) matrix using column operations only, then return the reversed
gate list as the encoder. Every intermediate checkpoint is audited; a failed
checkpoint raises :class:`AuditError` instead of emitting a wrong circuit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..circuit import (BudgetRecord, Circuit, ColumnState, Gate, SynthReport,
                       apply_circuit, reverse, row_space_equal, simplify)
from ..code import (CheckMatrix, StandardForm, raw_matrix, require_valid, same_code,
                    standard_form)
from ..errors import AuditError
from ..gf2 import BitMatrix, invert, mul, symplectic_gram
from .blocks import (Recorder, blocked_clear, blocked_symmetric_clear,
                     column_ops_to_identity, select_block_size)

DEFAULT_ALPHA = 0.75


@dataclass
class EncoderResult:
    circuit: Circuit
    report: SynthReport
    target: CheckMatrix
    raw: CheckMatrix
    standard: StandardForm

    def verify(self) -> bool:
        return verify_encoder(self.target, self.circuit)


def verify_encoder(H: CheckMatrix, circuit: Circuit) -> bool:
    """Does ``circuit`` map the raw matrix of ``H.params`` onto the code ``H``?

    For stabilizer codes this is row-space equality. With entanglement the
    pairing must match too, so both sides are compared in canonical form.
    """
    if circuit.n != H.n:
        raise ValueError(f"circuit has {circuit.n} qubits, code has {H.n}")
    image = apply_circuit(raw_matrix(H.params), circuit)
    if H.c == 0:
        return row_space_equal(image.mat, H.mat)
    return same_code(image, H)


class _Audit:
    def __init__(self, state: ColumnState):
        self.state = state
        self.gram0 = symplectic_gram(state.to_matrix())
        self.checks: list[tuple[str, bool]] = []

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        a = self.state.to_matrix().to_array()
        n = self.state.n
        return a[:, :n], a[:, n:]

    def check(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))
        if not ok:
            raise AuditError(f"synthesis checkpoint failed: {name}")

    def symplectic(self, after: str) -> None:
        self.check(f"gram_preserved:{after}", symplectic_gram(self.state.to_matrix()) == self.gram0)


def _bm(a: np.ndarray) -> BitMatrix:
    return BitMatrix.from_array(a)


def _zero(a: np.ndarray) -> bool:
    return not a.any()


def _finish(H: CheckMatrix, sf: StandardForm, rec: Recorder, audit: _Audit, m: int,
            budgets: list[BudgetRecord]) -> EncoderResult:
    reduction = Circuit(H.n, list(sf.pre_gates.gates) + [Gate(op[0], tuple(op[1:])) for op in rec.ops])
    encoder = simplify(reverse(reduction))
    report = SynthReport(encoder.counts(), m, audit.checks, budgets)
    return EncoderResult(encoder, report, H, raw_matrix(H.params), sf)


def _block_size(n: int, alpha: float, m: int | None) -> int:
    if m is not None:
        if m < 1:
            raise ValueError(f"block size must be positive, got {m}")
        return m
    return select_block_size(n, alpha)


def synth_stabilizer_encoder(H: CheckMatrix, alpha: float = DEFAULT_ALPHA,
                             m: int | None = None, prune: bool = True) -> EncoderResult:
    """Encoder for an ``[[n, k]]`` stabilizer code.

    The seed rows ``[O I | C^T O]`` ride along so the logical X operators are
    carried through the reduction.
    """
    if H.c != 0:
        raise ValueError("use synth_eaqsc_encoder for codes with entanglement")
    require_valid(H)
    n, r = H.n, H.s
    m = _block_size(n, alpha, m)
    sf = standard_form(H)
    a = sf.H.mat.to_array()
    X, Z = a[:, :n], a[:, n:]
    A, B, C = X[:, r:], Z[:, :r], Z[:, r:]
    seeds = np.zeros((n - r, 2 * n), dtype=np.uint8)
    seeds[:, r:n] = np.eye(n - r, dtype=np.uint8)
    seeds[:, n:n + r] = C.T
    state = ColumnState.from_matrix(_bm(np.vstack([a, seeds])))
    rec = Recorder(state)
    audit = _Audit(state)
    budgets: list[BudgetRecord] = []
    pivots = list(range(r))
    rest = list(range(r, n))

    blocked_clear(rec, pivots, 0, rest, "z", m, "clear_C", budgets, prune)
    X1, Z1 = audit.dense()
    B1 = _bm(Z1[:r, :r])
    audit.check("C_cleared", _zero(Z1[:r, r:]))
    audit.check("seed_CT_cleared_by_CZ", _zero(Z1[r:, :]))
    audit.check("B'=B+AC^T", B1 == _bm(B) + mul(_bm(A), _bm(C).T))
    audit.check("B'_symmetric", B1.is_symmetric())
    audit.symplectic("clear_C")

    blocked_clear(rec, pivots, 0, rest, "x", m, "clear_A", budgets, prune)
    X2, Z2 = audit.dense()
    audit.check("A_cleared", _zero(X2[:r, r:]))
    audit.check("B'_unchanged_by_A_pass", _bm(Z2[:r, :r]) == B1)
    audit.symplectic("clear_A")

    blocked_symmetric_clear(rec, pivots, 0, m, "clear_B", budgets, prune)
    X3, Z3 = audit.dense()
    audit.check("B_cleared", _zero(Z3))
    audit.symplectic("clear_B")

    for q in pivots:
        rec.h(q)
    expected = np.vstack([raw_matrix(H.params).mat.to_array(), np.hstack([np.zeros((n - r, r), np.uint8),
                          np.eye(n - r, dtype=np.uint8), np.zeros((n - r, n), np.uint8)])])
    audit.check("reached_raw_with_seeds", state.to_matrix() == _bm(expected))
    return _finish(H, sf, rec, audit, m, budgets)


def synth_eaqsc_encoder(H: CheckMatrix, alpha: float = DEFAULT_ALPHA,
                        m: int | None = None, prune: bool = True) -> EncoderResult:
    """Encoder for an ``[[n, k; c]]`` entanglement-assisted code with ``c > 0``."""
    if H.c == 0:
        raise ValueError("code has no entanglement; use synth_stabilizer_encoder")
    require_valid(H)
    n, s, c = H.n, H.s, H.c
    m = _block_size(n, alpha, m)
    sf = standard_form(H)
    state = ColumnState.from_matrix(sf.H.mat)
    rec = Recorder(state)
    audit = _Audit(state)
    budgets: list[BudgetRecord] = []
    st = slice(0, s)
    xr, zr = slice(s, s + c), slice(s + c, s + 2 * c)
    q1 = list(range(s))
    q2 = list(range(s, s + c))
    q3 = list(range(s + c, n))
    right = list(range(s, n))
    c1, c2, c3 = slice(0, s), slice(s, s + c), slice(s + c, n)

    a0 = sf.H.mat.to_array()
    X0, Z0 = a0[:, :n], a0[:, n:]
    A, B, C = _bm(X0[st, s:]), _bm(Z0[st, :s]), _bm(Z0[st, s:])

    # stabilizer rows: [I A | B C] -> [I O | B+CA^T O] -> [I O | O O]
    blocked_clear(rec, q1, 0, right, "x", m, "clear_A", budgets, prune)
    X, Z = audit.dense()
    audit.check("A_cleared", _zero(X[st, s:]))
    audit.check("B'=B+CA^T", _bm(Z[st, :s]) == B + mul(C, A.T))
    audit.check("pair_rows_M5_M6_reduced", _bm(Z[s:, :s]) == mul(_bm(X[s:, s:]), C.T))
    audit.symplectic("clear_A")

    blocked_clear(rec, q1, 0, right, "z", m, "clear_C", budgets, prune)
    X, Z = audit.dense()
    audit.check("C_cleared", _zero(Z[st, s:]))
    audit.check("pair_rows_left_Z_cleared", _zero(Z[s:, :s]))
    audit.check("B+CA^T_symmetric", _bm(Z[st, :s]).is_symmetric())
    audit.symplectic("clear_C")

    blocked_symmetric_clear(rec, q1, 0, m, "clear_B", budgets, prune)
    X, Z = audit.dense()
    audit.check("stabilizer_rows_are_[I O|O O]",
                np.array_equal(X[st], np.hstack([np.eye(s, dtype=np.uint8), np.zeros((s, n - s), np.uint8)]))
                and _zero(Z[st]))
    audit.check("pair_rows_left_block_zero", _zero(X[s:, c1]) and _zero(Z[s:, c1]))
    audit.symplectic("clear_B")

    M11, M12 = _bm(X[xr, c2]), _bm(X[xr, c3])
    M21, M22 = _bm(Z[xr, c2]), _bm(Z[xr, c3])
    M31, M32 = _bm(X[zr, c2]), _bm(X[zr, c3])
    M41, M42 = _bm(Z[zr, c2]), _bm(Z[zr, c3])
    xx_gram = mul(M11, M21.T) + mul(M12, M22.T) + mul(M21, M11.T) + mul(M22, M12.T)
    zz_gram = mul(M31, M41.T) + mul(M32, M42.T) + mul(M41, M31.T) + mul(M42, M32.T)
    xz_gram = mul(M11, M41.T) + mul(M12, M42.T) + mul(M21, M31.T) + mul(M22, M32.T)
    audit.check("pair_rows_XX_commute", xx_gram.is_zero())
    audit.check("pair_rows_ZZ_commute", zz_gram.is_zero())
    audit.check("pair_rows_XZ_identity", xz_gram == BitMatrix.identity(c))

    # right-multiply the M11 columns by M11^-1
    M11_inv = invert(M11)
    for src, dst in column_ops_to_identity(M11.row_ints(), c, m):
        rec.cnot(q2[src], q2[dst])
    X, Z = audit.dense()
    R = mul(M31, M11_inv)
    audit.check("M11_to_identity", _bm(X[xr, c2]) == BitMatrix.identity(c))
    audit.check("M31M11^-1", _bm(X[zr, c2]) == R)
    audit.check("M21M11^T", _bm(Z[xr, c2]) == mul(M21, M11.T))
    audit.check("M41M11^T", _bm(Z[zr, c2]) == mul(M41, M11.T))
    audit.symplectic("invert_M11")

    blocked_clear(rec, q2, s, q3, "x", m, "clear_M12", budgets, prune)
    X, Z = audit.dense()
    K2 = _bm(Z[xr, c2])
    K3 = _bm(X[zr, c3])
    audit.check("M12_cleared", _zero(X[xr, c3]))
    audit.check("K2=M21M11^T+M22M12^T", K2 == mul(M21, M11.T) + mul(M22, M12.T))
    audit.check("K2_symmetric", K2.is_symmetric())
    audit.check("K3=M32+M31M11^-1M12", K3 == M32 + mul(R, M12))
    audit.symplectic("clear_M12")

    blocked_clear(rec, q2, s, q3, "z", m, "clear_M22", budgets, prune)
    X, Z = audit.dense()
    L4 = _bm(Z[zr, c3])
    audit.check("M22_cleared", _zero(Z[xr, c3]))
    audit.check("L4=M42+M31M11^-1M22", L4 == M42 + mul(R, M22))
    audit.symplectic("clear_M22")

    blocked_symmetric_clear(rec, q2, s, m, "clear_K2", budgets, prune)
    X, Z = audit.dense()
    audit.check("K2_cleared", _zero(Z[xr]))
    audit.check("L2_becomes_identity", _bm(Z[zr, c2]) == BitMatrix.identity(c))
    audit.symplectic("clear_K2")

    for q in q2:
        rec.h(q)
    X, Z = audit.dense()
    audit.check("pair_blocks_swapped",
                _zero(X[xr]) and _bm(Z[xr, c2]) == BitMatrix.identity(c)
                and _bm(X[zr, c2]) == BitMatrix.identity(c) and _bm(Z[zr, c2]) == R)

    blocked_clear(rec, q2, s + c, q3, "x", m, "clear_K3", budgets, prune)
    X, Z = audit.dense()
    W = _bm(Z[zr, c2])
    audit.check("K3_cleared", _zero(X[zr, c3]))
    audit.check("W=M31M11^-1+L4K3^T", W == R + mul(L4, K3.T))
    audit.check("W_symmetric", W.is_symmetric())
    audit.symplectic("clear_K3")

    blocked_clear(rec, q2, s + c, q3, "z", m, "clear_L4", budgets, prune)
    blocked_symmetric_clear(rec, q2, s + c, m, "clear_W", budgets, prune)
    X, Z = audit.dense()
    audit.check("L4_and_W_cleared", _zero(Z[zr]))
    audit.symplectic("clear_L4_W")

    for q in q1 + q2:
        rec.h(q)
    audit.check("reached_raw", state.to_matrix() == raw_matrix(H.params).mat)
    return _finish(H, sf, rec, audit, m, budgets)


def synth_encoder(H: CheckMatrix, alpha: float = DEFAULT_ALPHA, m: int | None = None,
                  prune: bool = True) -> EncoderResult:
    """Dispatch on ``c``."""
    if H.c == 0:
        return synth_stabilizer_encoder(H, alpha, m, prune)
    return synth_eaqsc_encoder(H, alpha, m, prune)


def synth_naive_encoder(H: CheckMatrix) -> EncoderResult:
    """Baseline: the same reduction with blocks of one column.

    Every nonzero entry then costs its own gate and no pattern walk happens,
    which is plain column-by-column Gaussian reduction.
    """
    return synth_encoder(H, m=1)
