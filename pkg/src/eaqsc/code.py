"""Check matrices of stabilizer and entanglement-assisted stabilizer codes.

Rows are ordered as ``s`` stabilizer generators, then the ``c`` X-type
partners, then the ``c`` Z-type partners of the entangled pairs. With this
ordering a valid matrix satisfies ``mat Λ mat^T = J(s, c)`` where ``J`` pairs
row ``s + i`` with row ``s + c + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, ColumnState, Gate
from .errors import FormatError, InvalidCodeError
from .gf2 import BitMatrix, BitVector, invert, mul, symplectic_gram, SingularMatrixError

_PHI = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_PHI_INV = {v: k for k, v in _PHI.items()}


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    c: int = 0

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or self.c < 0:
            raise ValueError(f"invalid code parameters {self}")
        if self.n - self.k - self.c < 0:
            raise ValueError(f"n - k - c must be non-negative, got {self}")

    @property
    def s(self) -> int:
        return self.n - self.k - self.c

    @property
    def n_rows(self) -> int:
        return self.s + 2 * self.c

    def __str__(self) -> str:
        return f"[[{self.n},{self.k};{self.c}]]"


@dataclass
class CheckMatrix:
    params: CodeParams
    mat: BitMatrix

    def __post_init__(self):
        want = (self.params.n_rows, 2 * self.params.n)
        if self.mat.shape != want:
            raise InvalidCodeError(f"{self.params} needs a {want} matrix, got {self.mat.shape}")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def c(self) -> int:
        return self.params.c

    @property
    def s(self) -> int:
        return self.params.s

    def with_matrix(self, mat: BitMatrix) -> "CheckMatrix":
        return CheckMatrix(self.params, mat)

    def copy(self) -> "CheckMatrix":
        return CheckMatrix(self.params, self.mat.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CheckMatrix):
            return NotImplemented
        return self.params == other.params and self.mat == other.mat


def pairing_matrix(s: int, c: int) -> BitMatrix:
    """The symplectic Gram matrix J(s, c) a valid check matrix must have."""
    J = np.zeros((s + 2 * c, s + 2 * c), dtype=np.uint8)
    for i in range(c):
        J[s + i, s + c + i] = J[s + c + i, s + i] = 1
    return BitMatrix.from_array(J)


# -- Pauli strings ---------------------------------------------------------


def phi(pauli: str) -> BitVector:
    """Binary image ``(u | v)`` of a Pauli string, phases dropped."""
    try:
        pairs = [_PHI[ch] for ch in pauli.upper()]
    except KeyError as exc:
        raise ValueError(f"not a Pauli string: {pauli!r}") from exc
    x = [u for u, _ in pairs]
    z = [v for _, v in pairs]
    return BitVector.from_bits(x + z)


def phi_inv(e: BitVector) -> str:
    if e.len % 2:
        raise ValueError("Pauli images have even length")
    bits = e.to_array()
    n = e.len // 2
    return "".join(_PHI_INV[(int(bits[i]), int(bits[n + i]))] for i in range(n))


# -- construction ------------------------------------------------------------


def raw_matrix(params: CodeParams) -> CheckMatrix:
    """Check matrix of the unencoded state: Z on ancillas, X/Z pairs on the
    entangled qubits, nothing on the logical qubits."""
    n, s, c = params.n, params.s, params.c
    arr = np.zeros((params.n_rows, 2 * n), dtype=np.uint8)
    for i in range(s):
        arr[i, n + i] = 1
    for i in range(c):
        arr[s + i, s + i] = 1
        arr[s + c + i, n + s + i] = 1
    return CheckMatrix(params, BitMatrix.from_array(arr))


def random_code(params: CodeParams, seed: int, n_gates: int | None = None) -> CheckMatrix:
    """Valid random code: a seeded random CNOT/CZ/H/P circuit applied to the raw matrix.

    ``n_gates`` defaults to ``n**2``.
    """
    n = params.n
    raw = raw_matrix(params)
    if n_gates is None:
        n_gates = n * n
    rng = np.random.default_rng(seed)
    kinds = rng.integers(0, 4 if n > 1 else 2, size=n_gates)
    a = rng.integers(0, n, size=n_gates)
    b = rng.integers(0, max(n - 1, 1), size=n_gates)
    b = b + (b >= a)
    state = ColumnState.from_matrix(raw.mat)
    if n > 1:
        ops = (state.h, state.p, state.cnot, state.cz)
    else:
        ops = (state.h, state.p)
    for kind, qa, qb in zip(kinds.tolist(), a.tolist(), b.tolist()):
        if kind < 2:
            ops[kind](qa)
        else:
            ops[kind](qa, qb)
    return raw.with_matrix(state.to_matrix())


# -- validation --------------------------------------------------------------


@dataclass
class CodeAudit:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def failures(self) -> list[str]:
        return [name for name, passed in self.checks if not passed]

    def __getitem__(self, name: str) -> bool:
        for check, passed in self.checks:
            if check == name:
                return passed
        raise KeyError(name)


def _dense(M: BitMatrix) -> np.ndarray:
    return M.to_array()


def blocks(H: CheckMatrix) -> dict[str, BitMatrix]:
    """Named blocks ``A, B, C, M1..M6, M11`` of a matrix laid out like the standard form."""
    n, s, c = H.n, H.s, H.c
    a = _dense(H.mat)
    X, Z = a[:, :n], a[:, n:]
    st, xr, zr = slice(0, s), slice(s, s + c), slice(s + c, s + 2 * c)
    right = slice(s, n)
    left = slice(0, s)
    parts = {
        "A": X[st, right], "B": Z[st, left], "C": Z[st, right],
        "M1": X[xr, right], "M5": Z[xr, left], "M2": Z[xr, right],
        "M3": X[zr, right], "M6": Z[zr, left], "M4": Z[zr, right],
        "M11": X[xr, s:s + c],
    }
    return {k: BitMatrix.from_array(v) for k, v in parts.items()}


def is_standard_form(H: CheckMatrix) -> bool:
    n, s, c = H.n, H.s, H.c
    X = _dense(H.mat)[:, :n]
    if not np.array_equal(X[:s, :s], np.eye(s, dtype=np.uint8)):
        return False
    if X[s:, :s].any():
        return False
    try:
        invert(BitMatrix.from_array(X[s:s + c, s:s + c]))
    except SingularMatrixError:
        return False
    return True


def validate(H: CheckMatrix) -> CodeAudit:
    """Rank and commutation checks, plus the block identities for standard forms."""
    audit = CodeAudit()
    p = H.params
    audit.checks.append(("full_rank", H.mat.rank() == p.n_rows))
    gram_ok = symplectic_gram(H.mat) == pairing_matrix(p.s, p.c)
    audit.checks.append(("commutation", gram_ok))
    if is_standard_form(H):
        b = blocks(H)
        A, B, C = b["A"], b["B"], b["C"]
        M1, M2, M3, M4, M5, M6 = (b[f"M{i}"] for i in range(1, 7))
        t = lambda M: M.T  # noqa: E731
        audit.checks += [
            ("std_B_symmetric", (B + mul(C, t(A)) + t(B) + mul(A, t(C))).is_zero()),
            ("std_M5", M5 == mul(M1, t(C)) + mul(M2, t(A))),
            ("std_M6", M6 == mul(M3, t(C)) + mul(M4, t(A))),
            ("std_M1M2", (mul(M1, t(M2)) + mul(M2, t(M1))).is_zero()),
            ("std_M3M4", (mul(M3, t(M4)) + mul(M4, t(M3))).is_zero()),
            ("std_pairing", mul(M1, t(M4)) + mul(M2, t(M3)) == BitMatrix.identity(p.c)),
        ]
    return audit


def require_valid(H: CheckMatrix) -> None:
    audit = validate(H)
    if not audit.ok:
        raise InvalidCodeError(f"check matrix for {H.params} fails: {', '.join(audit.failures())}")


# -- standard form -----------------------------------------------------------


@dataclass
class StandardForm:
    H: CheckMatrix
    qubit_perm: list[int]
    pre_gates: Circuit


def standard_form(Hin: CheckMatrix) -> StandardForm:
    """Bring a valid check matrix to ``[I A | B C]`` shape with nonsingular ``M11``.

    Uses row operations that never mix the entangled pairs (stabilizer rows are
    combined among themselves and added to pair rows), plus recorded Hadamard
    and SWAP gates. The result therefore describes the same code with the same
    pairing.
    """
    require_valid(Hin)
    p = Hin.params
    n, s, c = p.n, p.s, p.c
    arr = _dense(Hin.mat).copy()
    perm = list(range(n))
    pre = Circuit(n)

    def hadamard(j: int) -> None:
        arr[:, [j, n + j]] = arr[:, [n + j, j]]
        pre.append(Gate.h(j))

    def swap(i: int, j: int) -> None:
        arr[:, [i, j]] = arr[:, [j, i]]
        arr[:, [n + i, n + j]] = arr[:, [n + j, n + i]]
        perm[i], perm[j] = perm[j], perm[i]
        pre.append(Gate.swap(i, j))

    # stabilizer rows: X-part to [I A]
    for piv in range(s):
        X = arr[piv:s, piv:n]
        col_hits = X.any(axis=0)
        if not col_hits.any():
            Z = arr[piv:s, n + piv:2 * n]
            zcols = Z.any(axis=0)
            if not zcols.any():
                raise InvalidCodeError("stabilizer rows are rank deficient")
            hadamard(piv + int(np.argmax(zcols)))
            col_hits = arr[piv:s, piv:n].any(axis=0)
        j = piv + int(np.argmax(col_hits))
        r = piv + int(np.argmax(arr[piv:s, j]))
        if r != piv:
            arr[[piv, r]] = arr[[r, piv]]
        if j != piv:
            swap(piv, j)
        hit = arr[:, piv].astype(bool)
        hit[piv] = False
        arr[hit] ^= arr[piv]

    # pair rows: pick qubits making the X-part of the X-type partners full rank.
    # The elimination runs on a scratch copy so the real rows are left untouched.
    work = arr[s:s + c].copy()
    pivots: list[int] = []
    owner: list[int] = []
    for t in range(c):
        for q, rr in zip(pivots, owner):
            if work[t, q]:
                work[t] ^= work[rr]
        free = [j for j in range(s, n) if j not in pivots]
        xs = [j for j in free if work[t, j]]
        if xs:
            j = xs[0]
        else:
            zs = [j for j in free if work[t, n + j]]
            if not zs:
                raise InvalidCodeError("entangled pair rows are rank deficient")
            j = zs[0]
            hadamard(j)
            work[:, [j, n + j]] = work[:, [n + j, j]]
        for u in range(c):
            if u != t and work[u, j]:
                work[u] ^= work[t]
        pivots.append(j)
        owner.append(t)
    for t in range(c):
        target, j = s + t, pivots[t]
        if j != target:
            swap(j, target)
            pivots = [j if q == target else q for q in pivots]

    H = CheckMatrix(p, BitMatrix.from_array(arr))
    if not is_standard_form(H):
        raise InvalidCodeError("could not reach standard form; input is inconsistent")
    return StandardForm(H, perm, pre)


def extend_to_full(H: CheckMatrix) -> BitMatrix:
    """Append the receiver's half of each entangled pair as extra columns."""
    n, s, c = H.n, H.s, H.c
    a = _dense(H.mat)
    bob_x = np.zeros((H.params.n_rows, c), dtype=np.uint8)
    bob_z = np.zeros((H.params.n_rows, c), dtype=np.uint8)
    for i in range(c):
        bob_x[s + i, i] = 1
        bob_z[s + c + i, i] = 1
    return BitMatrix.from_array(np.hstack([a[:, :n], bob_x, a[:, n:], bob_z]))


def canonical_form(H: CheckMatrix) -> BitMatrix:
    """Representative of the code's equivalence class under row operations
    that keep every row's role: stabilizer rows may be recombined freely and
    added to pair rows, pair rows are never mixed with each other."""
    s = H.s
    stab = H.mat.submatrix(rows=range(s)) if s else BitMatrix(0, H.mat.cols)
    R, pivots = stab.rref()
    R = R.submatrix(rows=range(len(pivots))) if pivots else BitMatrix(0, H.mat.cols)
    Rarr = R.to_array()
    rest = H.mat.to_array()[s:].copy()
    for i, pc in enumerate(pivots):
        hit = rest[:, pc].astype(bool)
        rest[hit] ^= Rarr[i]
    return BitMatrix.from_array(np.vstack([Rarr, rest]))


def same_code(Ha: CheckMatrix, Hb: CheckMatrix) -> bool:
    """Equality of codes up to role-preserving row operations."""
    return Ha.params == Hb.params and canonical_form(Ha) == canonical_form(Hb)


# -- text format -------------------------------------------------------------


def emit_check_matrix(H: CheckMatrix) -> str:
    n = H.n
    lines = [f"{H.n} {H.k} {H.c}"]
    for row in H.mat.to_array():
        bits = "".join("1" if b else "0" for b in row)
        lines.append(bits[:n] + "|" + bits[n:])
    return "\n".join(lines) + "\n"


def parse_check_matrix(text: str) -> CheckMatrix:
    header = None
    rows: list[str] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3 or not all(t.isdigit() for t in parts):
                raise FormatError(f"expected header 'n k c', got {line!r}", lineno)
            try:
                header = CodeParams(*map(int, parts))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
            continue
        n = header.n
        if len(line) != 2 * n + 1 or line[n] != "|":
            raise FormatError(f"row must have {n} bits, '|', {n} bits; got {line!r}", lineno)
        bad = set(line[:n] + line[n + 1:]) - {"0", "1"}
        if bad:
            raise FormatError(f"invalid character(s) {sorted(bad)} in row", lineno)
        rows.append(line[:n] + line[n + 1:])
        if len(rows) > header.n_rows:
            raise FormatError(f"too many rows: {header} has {header.n_rows}", lineno)
    if header is None:
        raise FormatError("missing header 'n k c'", 1)
    if len(rows) != header.n_rows:
        raise FormatError(f"expected {header.n_rows} rows, found {len(rows)}")
    if not rows:
        return CheckMatrix(header, BitMatrix(0, 2 * header.n))
    return CheckMatrix(header, BitMatrix.from_rows(rows))
