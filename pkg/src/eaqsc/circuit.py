"""Clifford gates acting on check matrices by column operations.

With a check matrix split as ``[H_X | H_Z]``:

* ``CNOT i j`` adds column i to column j of H_X and column j to column i of H_Z.
* ``CZ i j`` adds column i of H_X to column j of H_Z and column j of H_X to
  column i of H_Z.
* ``H i`` swaps column i of H_X with column i of H_Z.
* ``P i`` adds column i of H_X to column i of H_Z.
* ``SWAP i j`` exchanges qubits i and j in both halves.

Signs are not tracked, so every gate is its own inverse here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import FormatError
from .gf2 import BitMatrix, vstack

CNOT, CZ, H, P, SWAP = "CNOT", "CZ", "H", "P", "SWAP"
KINDS = (CNOT, CZ, H, P, SWAP)
TWO_QUBIT = frozenset({CNOT, CZ, SWAP})
_SYMMETRIC = frozenset({CZ, SWAP})


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.kind} needs two distinct qubits, got {self.qubits}")

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls(CNOT, (control, target))

    @classmethod
    def cz(cls, a: int, b: int) -> "Gate":
        return cls(CZ, (a, b))

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls(H, (q,))

    @classmethod
    def p(cls, q: int) -> "Gate":
        return cls(P, (q,))

    @classmethod
    def swap(cls, a: int, b: int) -> "Gate":
        return cls(SWAP, (a, b))

    def key(self) -> tuple:
        """Identity up to the symmetry of CZ and SWAP."""
        if self.kind in _SYMMETRIC:
            return (self.kind, tuple(sorted(self.qubits)))
        return (self.kind, self.qubits)

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


@dataclass
class Circuit:
    n: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        if max(g.qubits) >= self.n:
            raise ValueError(f"gate {g} out of range for {self.n} qubits")

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def counts(self) -> dict[str, int]:
        c = Counter(g.kind for g in self.gates)
        return {k: c.get(k, 0) for k in KINDS}

    def to_text(self) -> str:
        return "".join([f"qubits {self.n}\n"] + [f"{g}\n" for g in self.gates])

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        n = None
        gates: list[Gate] = []
        for lineno, raw in enumerate(text.split("\n"), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2 or parts[0] != "qubits" or not parts[1].isdigit():
                    raise FormatError(f"expected 'qubits <n>', got {line!r}", lineno)
                n = int(parts[1])
                continue
            kind, args = parts[0], parts[1:]
            if kind not in KINDS:
                raise FormatError(f"unknown gate {kind!r}", lineno)
            if not all(a.isdigit() for a in args):
                raise FormatError(f"bad qubit index in {line!r}", lineno)
            try:
                g = Gate(kind, tuple(int(a) for a in args))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
            if max(g.qubits) >= n:
                raise FormatError(f"qubit index out of range for {n} qubits", lineno)
            gates.append(g)
        if n is None:
            raise FormatError("missing 'qubits <n>' header", 1)
        return cls(n, gates)


def reverse(circ: Circuit) -> Circuit:
    """Inverse circuit: same gates, opposite order."""
    return Circuit(circ.n, list(reversed(circ.gates)))


def cz_decompose(g: Gate) -> list[Gate]:
    """CZ as ``H(target) CNOT(control, target) H(target)``."""
    if g.kind != CZ:
        raise ValueError(f"expected a CZ gate, got {g.kind}")
    a, b = g.qubits
    return [Gate.h(b), Gate.cnot(a, b), Gate.h(b)]


class ColumnState:
    """Check matrix held column-wise as Python ints (bit ``r`` = row ``r``).

    Every gate touches at most four columns, so gates cost O(1) big-int
    operations regardless of the number of rows.
    """

    __slots__ = ("n", "rows", "xs", "zs")

    def __init__(self, n: int, rows: int, xs: list[int], zs: list[int]):
        self.n = n
        self.rows = rows
        self.xs = xs
        self.zs = zs

    @classmethod
    def from_matrix(cls, M: BitMatrix) -> "ColumnState":
        if M.cols % 2:
            raise ValueError("check matrices need an even number of columns")
        n = M.cols // 2
        cols = M.col_ints()
        return cls(n, M.rows, cols[:n], cols[n:])

    def to_matrix(self) -> BitMatrix:
        return BitMatrix.from_col_ints(self.xs + self.zs, self.rows)

    def copy(self) -> "ColumnState":
        return ColumnState(self.n, self.rows, list(self.xs), list(self.zs))

    def cnot(self, a: int, b: int) -> None:
        self.xs[b] ^= self.xs[a]
        self.zs[a] ^= self.zs[b]

    def cz(self, a: int, b: int) -> None:
        self.zs[b] ^= self.xs[a]
        self.zs[a] ^= self.xs[b]

    def h(self, a: int) -> None:
        self.xs[a], self.zs[a] = self.zs[a], self.xs[a]

    def p(self, a: int) -> None:
        self.zs[a] ^= self.xs[a]

    def swap(self, a: int, b: int) -> None:
        xs, zs = self.xs, self.zs
        xs[a], xs[b] = xs[b], xs[a]
        zs[a], zs[b] = zs[b], zs[a]

    def apply(self, g: Gate) -> None:
        if max(g.qubits) >= self.n:
            raise IndexError(f"gate {g} out of range for {self.n} qubits")
        getattr(self, g.kind.lower())(*g.qubits)


def _split(M) -> tuple[BitMatrix, object]:
    if isinstance(M, BitMatrix):
        return M, None
    return M.mat, M


def _wrap(mat: BitMatrix, owner):
    return mat if owner is None else owner.with_matrix(mat)


def apply_gate(M, g: Gate):
    """Apply one gate's column action to a matrix (or CheckMatrix)."""
    mat, owner = _split(M)
    if mat.cols % 2:
        raise ValueError("check matrices need an even number of columns")
    n = mat.cols // 2
    if max(g.qubits) >= n:
        raise IndexError(f"gate {g} out of range for {n} qubits")
    out = mat.copy()
    if g.kind == CNOT:
        a, b = g.qubits
        out.add_col_(a, b)
        out.add_col_(n + b, n + a)
    elif g.kind == CZ:
        a, b = g.qubits
        out.add_col_(a, n + b)
        out.add_col_(b, n + a)
    elif g.kind == H:
        (a,) = g.qubits
        out.swap_cols_(a, n + a)
    elif g.kind == P:
        (a,) = g.qubits
        out.add_col_(a, n + a)
    else:
        a, b = g.qubits
        out.swap_cols_(a, b)
        out.swap_cols_(n + a, n + b)
    return _wrap(out, owner)


def apply_circuit(M, circ: Circuit):
    mat, owner = _split(M)
    if mat.cols != 2 * circ.n:
        raise ValueError(f"circuit on {circ.n} qubits cannot act on {mat.cols // 2} qubits")
    state = ColumnState.from_matrix(mat)
    for g in circ.gates:
        getattr(state, g.kind.lower())(*g.qubits)
    return _wrap(state.to_matrix(), owner)


def row_space_equal(Ma: BitMatrix, Mb: BitMatrix) -> bool:
    if Ma.cols != Mb.cols:
        raise ValueError(f"column counts differ: {Ma.cols} vs {Mb.cols}")
    ra, rb = Ma.rank(), Mb.rank()
    return ra == rb and vstack(Ma, Mb).rank() == ra


def simplify(circ: Circuit) -> Circuit:
    """Cancel pairs of identical gates separated only by gates on other qubits.

    Exact in the sign-free representation, where every gate is an involution
    and gates on disjoint qubits commute.
    """
    live: list[Gate | None] = []
    stacks: list[list[int]] = [[] for _ in range(circ.n)]
    for g in circ.gates:
        tops = {stacks[q][-1] if stacks[q] else -1 for q in g.qubits}
        if len(tops) == 1:
            i = tops.pop()
            if i >= 0 and live[i].key() == g.key() and set(live[i].qubits) == set(g.qubits):
                live[i] = None
                for q in g.qubits:
                    stacks[q].pop()
                continue
        for q in g.qubits:
            stacks[q].append(len(live))
        live.append(g)
    return Circuit(circ.n, [g for g in live if g is not None])


@dataclass
class BudgetRecord:
    """Gate count of one blocked elimination pass against its bound."""

    step: str
    block: int
    used: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.used <= self.bound


@dataclass
class SynthReport:
    counts: dict[str, int]
    m: int
    audit: list[tuple[str, bool]] = field(default_factory=list)
    budgets: list[BudgetRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def total_without_swaps(self) -> int:
        return self.total - self.counts.get(SWAP, 0)

    @property
    def audit_ok(self) -> bool:
        return all(ok for _, ok in self.audit)

    @property
    def budget_violations(self) -> list[BudgetRecord]:
        return [b for b in self.budgets if not b.ok]

    def to_dict(self) -> dict:
        return {
            "counts": dict(self.counts),
            "total": self.total,
            "m": self.m,
            "audit": [{"check": name, "pass": ok} for name, ok in self.audit],
            "budget_violations": len(self.budget_violations),
        }
