import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eaqsc.circuit import Circuit, ColumnState, Gate, apply_circuit
from eaqsc.code import CheckMatrix, CodeParams, blocks, random_code, raw_matrix, standard_form
from eaqsc.errors import AuditError, InvalidCodeError
from eaqsc.gf2 import BitMatrix
from eaqsc.synthesis import (build_block_schedule, clear_A_by_cnot, clear_C_by_cz,
                             column_ops_to_identity, identity_to_D, reduce_IA, reduce_symmetric_B,
                             select_block_size, synth_eaqsc_encoder, synth_encoder,
                             synth_naive_encoder, synth_stabilizer_encoder, verify_encoder)
from eaqsc.synthesis import encoders as encoders_mod
from oracles import dense_mul, dense_rank, gram

WORKED_A = [[1, 1, 1, 1], [1, 1, 1, 1], [1, 0, 0, 1]]


def col_matrix(cols, m):
    """Block state as an ``m x m`` array from column patterns (bit i = row i)."""
    return np.array([[(cols[j] >> i) & 1 for j in range(m)] for i in range(m)], dtype=np.uint8)


def ia_matrix(A, z_left=None):
    A = np.asarray(A, dtype=np.uint8)
    r, k = A.shape
    n = r + k
    a = np.zeros((r, 2 * n), dtype=np.uint8)
    a[:, :r] = np.eye(r, dtype=np.uint8)
    a[:, r:n] = A
    if z_left is not None:
        a[:, n:n + r] = z_left
    return BitMatrix.from_array(a)


def random_symmetric(r, rng):
    u = np.triu(rng.integers(0, 2, (r, r), dtype=np.uint8))
    return (u | u.T).astype(np.uint8)


class TestBlockSize:
    @pytest.mark.parametrize("n, alpha, m", [(2, 0.5, 1), (2, 0.99, 1), (1, 0.75, 1),
                                             (1024, 0.75, 7), (2**40, 0.9, 20), (64, 0.75, 4)])
    def test_examples(self, n, alpha, m):
        assert select_block_size(n, alpha) == m

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 1.5])
    def test_alpha_range(self, alpha):
        with pytest.raises(ValueError):
            select_block_size(16, alpha)

    def test_n_range(self):
        with pytest.raises(ValueError):
            select_block_size(0)


class TestSchedule:
    def test_m1(self):
        s = build_block_schedule(1)
        assert s.patterns == [1] and s.additions == 0

    def test_m2(self):
        s = build_block_schedule(2)
        assert sorted(s.patterns) == [1, 2, 3]
        assert s.additions <= 2**2 + 2 * 4

    def test_m3_includes_101(self):
        s = build_block_schedule(3)
        assert sorted(s.patterns) == list(range(1, 8))
        assert 0b101 in s.patterns

    def test_identity_to_D_m3(self):
        walk = identity_to_D(3)
        assert walk == [(0, 1), (0, 2), (1, 2), (0, 2)]
        cols = [1, 2, 4]
        seen = []
        for src, dst in walk:
            cols[dst] ^= cols[src]
            seen.append(col_matrix(cols, 3))
        expected = [
            [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 0], [0, 1, 1], [0, 0, 1]],
            [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
        ]
        assert [s.tolist() for s in seen] == expected
        assert expected[-1] == np.triu(np.ones((3, 3), dtype=int)).tolist()

    @pytest.mark.parametrize("m", range(1, 13))
    def test_coverage_and_budget(self, m):
        s = build_block_schedule(m)
        assert sorted(s.patterns) == list(range(1, 2**m))
        assert len(s.walk) == 2**m - m - 1
        assert s.additions <= 2**m + 2 * m * m
        cols = [1 << i for i in range(m)]
        for step in s.walk:
            cols[step.dst] ^= cols[step.src]
            assert cols[step.dst] == step.pattern
        for src, dst in s.restore:
            cols[dst] ^= cols[src]
        assert cols == [1 << i for i in range(m)]

    @pytest.mark.parametrize("m", [0, 21])
    def test_range(self, m):
        with pytest.raises(ValueError):
            build_block_schedule(m)

    def test_deterministic(self):
        assert build_block_schedule(5) == build_block_schedule(5)


class TestReduceIA:
    def test_zero_A(self):
        circ, out = reduce_IA(ia_matrix(np.zeros((3, 4))), 3)
        assert len(circ) == 0 and out == ia_matrix(np.zeros((3, 4)))

    @pytest.mark.parametrize("prune", [True, False])
    def test_worked_example_within_ten(self, prune):
        budgets = []
        circ, out = reduce_IA(ia_matrix(WORKED_A), 3, budgets, prune=prune)
        assert out == ia_matrix(np.zeros((3, 4)))
        assert all(g.kind == "CNOT" for g in circ)
        if prune:
            assert len(circ) <= (2**3 - 3 - 1) + 4 + (3 - 1)
        assert all(b.ok for b in budgets)

    def test_worked_example_block_states(self):
        circ, _ = reduce_IA(ia_matrix(WORKED_A), 3)
        cols = [1, 2, 4]
        states = [col_matrix(cols, 3).tolist()]
        for g in circ:
            a, b = g.qubits
            if b < 3:
                cols[b] ^= cols[a]
                states.append(col_matrix(cols, 3).tolist())
        eye = np.eye(3, dtype=int).tolist()
        s1 = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
        D = np.triu(np.ones((3, 3), dtype=int)).tolist()
        assert states[0] == eye and states[-1] == eye
        assert states[1] == s1
        assert D in states
        assert states.index(s1) < states.index(D)

    @pytest.mark.parametrize("seed", range(8))
    def test_random_12_by_8(self, seed):
        rng = np.random.default_rng(seed)
        A = rng.integers(0, 2, (12, 8), dtype=np.uint8)
        budgets = []
        circ, out = reduce_IA(ia_matrix(A), 3, budgets)
        assert out == ia_matrix(np.zeros((12, 8)))
        assert budgets and all(b.used <= 2**3 + 8 + 2 * 9 for b in budgets)
        assert sum(b.used for b in budgets) == len(circ)

    def test_rejects_shape(self):
        bad = ia_matrix(np.ones((2, 2)))
        arr = bad.to_array()
        arr[0, 0] = 0
        with pytest.raises(ValueError):
            reduce_IA(BitMatrix.from_array(arr), 2)
        arr = ia_matrix(np.ones((2, 2))).to_array()
        arr[0, -1] = 1
        with pytest.raises(ValueError):
            reduce_IA(BitMatrix.from_array(arr), 2)


class TestReduceSymmetricB:
    def test_zero(self):
        circ, _ = reduce_symmetric_B(ia_matrix(np.zeros((4, 2))), 2)
        assert len(circ) == 0

    def test_identity_needs_only_phases(self):
        circ, out = reduce_symmetric_B(ia_matrix(np.zeros((4, 2)), np.eye(4)), 2)
        assert [g.kind for g in circ] == ["P"] * 4
        assert out == ia_matrix(np.zeros((4, 2)))

    @pytest.mark.parametrize("seed", range(8))
    def test_random_12(self, seed):
        rng = np.random.default_rng(seed)
        B = random_symmetric(12, rng)
        budgets = []
        circ, out = reduce_symmetric_B(ia_matrix(np.zeros((12, 3)), B), 3, budgets)
        assert out == ia_matrix(np.zeros((12, 3)))
        r, m = 12, 3
        total = [b for b in budgets if b.step.endswith(":total")][0]
        assert total.used == len(circ)
        assert total.used <= r + (m * m + r + 2**m + 2 * m * m) * math.ceil(r / m)
        assert sum(g.kind == "P" for g in circ) <= r
        assert all(b.ok for b in budgets)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            reduce_symmetric_B(ia_matrix(np.zeros((2, 1)), [[0, 1], [0, 0]]), 2)


class TestClearPasses:
    def test_zero_C(self):
        rng = np.random.default_rng(0)
        M = ia_matrix(rng.integers(0, 2, (3, 3)), random_symmetric(3, rng))
        circ, out = clear_C_by_cz(M, 2)
        assert len(circ) == 0 and out == M

    def test_zero_A(self):
        a = ia_matrix(np.zeros((3, 3))).to_array()
        a[:, 9:] = np.random.default_rng(1).integers(0, 2, (3, 3))
        M = BitMatrix.from_array(a)
        circ, out = clear_A_by_cnot(M, 2)
        assert len(circ) == 0 and out == M

    @pytest.mark.parametrize("seed", range(6))
    def test_B_updates_match_oracle(self, seed):
        H = standard_form(random_code(CodeParams(12, 4, 0), seed)).H
        b = {k: v.to_array() for k, v in blocks(H).items()}
        n, r = 12, 8
        A, B, C = b["A"], b["B"], b["C"]

        circ, out = clear_A_by_cnot(H.mat, 3)
        o = out.to_array()
        assert all(g.kind == "CNOT" for g in circ)
        assert not o[:, r:n].any()
        Bp = o[:, n:n + r]
        assert np.array_equal(Bp, B ^ dense_mul(C, A.T))
        assert np.array_equal(Bp, Bp.T)

        circ, out = clear_C_by_cz(H.mat, 3)
        o = out.to_array()
        # helper CNOTs only walk the pivot block, targets are hit by CZ
        assert all(g.kind == "CZ" or (g.kind == "CNOT" and max(g.qubits) < r) for g in circ)
        assert not o[:, n + r:].any()
        Bpp = o[:, n:n + r]
        assert np.array_equal(Bpp, B ^ dense_mul(A, C.T))
        assert np.array_equal(Bpp, Bpp.T)


class TestColumnOps:
    @pytest.mark.parametrize("n", [1, 2, 5, 9, 16, 33])
    @pytest.mark.parametrize("m", [1, 2, 4])
    def test_reduces_to_identity(self, n, m):
        rng = np.random.default_rng(n * 10 + m)
        while True:
            a = rng.integers(0, 2, (n, n), dtype=np.uint8)
            if dense_rank(a) == n:
                break
        ops = column_ops_to_identity(BitMatrix.from_array(a).row_ints(), n, m)
        for src, dst in ops:
            a[:, dst] ^= a[:, src]
        assert np.array_equal(a, np.eye(n, dtype=np.uint8))
        assert len(ops) <= n * n

    def test_singular(self):
        with pytest.raises(AssertionError):
            column_ops_to_identity([0b11, 0b11], 2, 1)


CZERO = [CodeParams(8, 2), CodeParams(16, 4), CodeParams(12, 4), CodeParams(5, 1),
         CodeParams(3, 0), CodeParams(4, 4), CodeParams(1, 0), CodeParams(32, 8)]
CPOS = [CodeParams(8, 2, 2), CodeParams(3, 0, 1), CodeParams(4, 0, 2), CodeParams(6, 1, 1),
        CodeParams(16, 4, 3), CodeParams(10, 0, 5), CodeParams(9, 9 - 3, 3)]


class TestEncoders:
    @pytest.mark.parametrize("p", CZERO + CPOS)
    def test_raw_gives_empty_circuit(self, p):
        res = synth_encoder(raw_matrix(p))
        assert len(res.circuit) == 0
        assert len(synth_naive_encoder(raw_matrix(p)).circuit) == 0

    def test_single_hadamard(self):
        p = CodeParams(3, 1)
        H = apply_circuit(raw_matrix(p), Circuit(3, [Gate.h(1)]))
        res = synth_stabilizer_encoder(H)
        assert len(res.circuit) >= 1
        assert verify_encoder(H, res.circuit)

    @pytest.mark.parametrize("p", CZERO)
    @pytest.mark.parametrize("seed", range(3))
    def test_stabilizer_round_trip(self, p, seed):
        H = random_code(p, seed)
        res = synth_stabilizer_encoder(H)
        assert res.report.audit_ok
        assert not res.report.budget_violations
        img = apply_circuit(res.raw, res.circuit).mat.to_array()
        assert dense_rank(np.vstack([img, H.mat.to_array()])) == dense_rank(img) == p.n_rows
        assert any(name == "seed_CT_cleared_by_CZ" for name, _ in res.report.audit)

    @pytest.mark.parametrize("p", CPOS)
    @pytest.mark.parametrize("seed", range(3))
    def test_eaqsc_round_trip(self, p, seed):
        H = random_code(p, seed)
        res = synth_eaqsc_encoder(H)
        assert res.verify()
        names = {name for name, ok in res.report.audit if ok}
        assert {"K2_symmetric", "L2_becomes_identity", "W_symmetric", "reached_raw"} <= names
        assert not res.report.budget_violations
        img = apply_circuit(res.raw, res.circuit).mat.to_array()
        assert np.array_equal(gram(img), gram(H.mat.to_array()))

    @given(st.integers(1, 40), st.data())
    @settings(max_examples=40)
    def test_round_trip_property(self, n, data):
        c = data.draw(st.integers(0, n))
        k = data.draw(st.integers(0, n - c))
        H = random_code(CodeParams(n, k, c), data.draw(st.integers(0, 10**6)))
        m = data.draw(st.integers(1, 6))
        res = synth_encoder(H, m=m)
        assert res.verify()
        assert res.report.m == m
        assert not res.report.budget_violations

    def test_naive_round_trip(self):
        for p in CZERO[:4] + CPOS[:4]:
            H = random_code(p, 9)
            assert synth_naive_encoder(H).verify()

    def test_blocked_beats_naive_40_10_6(self):
        H = random_code(CodeParams(40, 10, 6), 0)
        blocked = synth_eaqsc_encoder(H, alpha=0.75)
        naive = synth_naive_encoder(H)
        assert blocked.verify() and naive.verify()
        assert blocked.report.total_without_swaps < naive.report.total_without_swaps

    def test_deterministic(self):
        H = random_code(CodeParams(24, 6, 2), 3)
        assert synth_encoder(H).circuit == synth_encoder(H).circuit

    def test_wrong_pipeline(self):
        with pytest.raises(ValueError):
            synth_stabilizer_encoder(random_code(CodeParams(4, 1, 1), 0))
        with pytest.raises(ValueError):
            synth_eaqsc_encoder(random_code(CodeParams(4, 1, 0), 0))

    def test_invalid_input(self):
        a = raw_matrix(CodeParams(3, 1)).mat.to_array()
        a[0] = a[1]
        with pytest.raises(InvalidCodeError):
            synth_encoder(CheckMatrix(CodeParams(3, 1), BitMatrix.from_array(a)))

    def test_bad_block_size(self):
        with pytest.raises(ValueError):
            synth_encoder(random_code(CodeParams(4, 1), 0), m=0)

    def test_deleted_gate_detected(self):
        # the only gate maps Z on qubit 0 to X; dropping it leaves the raw code
        p = CodeParams(2, 1)
        H = apply_circuit(raw_matrix(p), Circuit(2, [Gate.h(0)]))
        res = synth_encoder(H)
        assert verify_encoder(H, res.circuit)
        assert not verify_encoder(H, Circuit(2, res.circuit.gates[1:]))

    def test_verify_size_mismatch(self):
        with pytest.raises(ValueError):
            verify_encoder(raw_matrix(CodeParams(3, 1)), Circuit(2))

    def test_audit_failure_is_fatal(self, monkeypatch):
        monkeypatch.setattr(encoders_mod, "blocked_symmetric_clear", lambda *a, **k: None)
        H = random_code(CodeParams(10, 2, 2), 1)
        with pytest.raises(AuditError):
            synth_eaqsc_encoder(H)
        with pytest.raises(AuditError):
            synth_stabilizer_encoder(random_code(CodeParams(10, 2), 1))

    def test_gram_audit_after_every_step(self):
        res = synth_encoder(random_code(CodeParams(20, 5, 3), 0))
        steps = [name for name, _ in res.report.audit if name.startswith("gram_preserved")]
        assert len(steps) >= 8
