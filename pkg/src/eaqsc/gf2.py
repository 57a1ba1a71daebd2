"""Bit-packed linear algebra over GF(2).

Matrices are stored row-major in 64-bit words. Bit ``j`` of a row lives in
word ``j // 64`` at position ``j % 64`` (little-endian within the word), and
padding bits past the last column are always zero.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD = 64
_ONE = np.uint64(1)


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix that has no inverse over GF(2)."""


def _n_words(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def _pack(dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    words = _n_words(cols)
    padded = np.zeros((rows, words * WORD), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.dtype("<u8")).astype(np.uint64).reshape(rows, words)


def _unpack(data: np.ndarray, cols: int) -> np.ndarray:
    rows = data.shape[0]
    if rows == 0:
        return np.zeros((0, cols), dtype=np.uint8)
    raw = np.ascontiguousarray(data.astype(np.dtype("<u8"))).view(np.uint8)
    bits = np.unpackbits(raw.reshape(rows, -1), axis=1, bitorder="little")
    return bits[:, :cols]


def _parse_bits(bits) -> np.ndarray:
    if isinstance(bits, str):
        bits = bits.replace("|", "").replace(" ", "")
        if any(ch not in "01" for ch in bits):
            raise ValueError(f"bit string may only contain 0/1, got {bits!r}")
        return np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
    arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("entries must be 0 or 1")
    return arr.astype(np.uint8).reshape(-1)


class BitVector:
    """Packed binary vector of fixed length."""

    __slots__ = ("len", "data")

    def __init__(self, length: int, data: np.ndarray | None = None):
        if length < 0:
            raise ValueError("length must be non-negative")
        self.len = length
        if data is None:
            data = np.zeros(_n_words(length), dtype=np.uint64)
        self.data = data

    @classmethod
    def from_bits(cls, bits) -> "BitVector":
        arr = _parse_bits(bits)
        return cls(arr.size, _pack(arr.reshape(1, -1))[0])

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length)

    def to_array(self) -> np.ndarray:
        return _unpack(self.data.reshape(1, -1), self.len)[0]

    def to_string(self, split: bool = False) -> str:
        s = "".join("1" if b else "0" for b in self.to_array())
        if split:
            if self.len % 2:
                raise ValueError("split layout needs an even length")
            h = self.len // 2
            return s[:h] + "|" + s[h:]
        return s

    def weight(self) -> int:
        return int(np.bitwise_count(self.data).sum())

    def copy(self) -> "BitVector":
        return BitVector(self.len, self.data.copy())

    def __len__(self) -> int:
        return self.len

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(f"bit {j} out of range for length {self.len}")
        return int((self.data[j // WORD] >> np.uint64(j % WORD)) & _ONE)

    def __setitem__(self, j: int, value: int) -> None:
        if not 0 <= j < self.len:
            raise IndexError(f"bit {j} out of range for length {self.len}")
        mask = _ONE << np.uint64(j % WORD)
        if value & 1:
            self.data[j // WORD] |= mask
        else:
            self.data[j // WORD] &= ~mask

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.len != other.len:
            raise ValueError(f"length mismatch: {self.len} vs {other.len}")
        return BitVector(self.len, self.data ^ other.data)

    __add__ = __xor__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.len == other.len and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.len, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector({self.to_string()!r})"


class BitMatrix:
    """Dense GF(2) matrix with bit-packed rows.

    Parameters
    ----------
    rows, cols : int
        Shape of the matrix. Either may be zero.
    data : ndarray of uint64, shape (rows, words), optional
        Packed storage. Taken by reference; padding bits must be zero.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            data = np.zeros((rows, _n_words(cols)), dtype=np.uint64)
        self.data = data

    # -- construction -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        rows, cols = arr.shape
        return cls(rows, cols, _pack(arr.astype(np.uint8)))

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> "BitMatrix":
        """Build from bit strings (``'10|01'`` allowed) or 0/1 sequences."""
        parsed = [_parse_bits(r) for r in rows]
        if not parsed:
            return cls(0, cols or 0)
        width = parsed[0].size
        if any(p.size != width for p in parsed):
            raise ValueError("rows have different lengths")
        return cls.from_array(np.vstack(parsed))

    @classmethod
    def from_row_ints(cls, ints: Iterable[int], cols: int) -> "BitMatrix":
        """Rows given as Python ints, bit ``j`` of the int is column ``j``."""
        ints = list(ints)
        words = _n_words(cols)
        nbytes = words * 8
        buf = bytearray()
        for i, v in enumerate(ints):
            if v < 0 or v >> cols:
                raise ValueError(f"row {i} has bits beyond column {cols}")
            buf += v.to_bytes(nbytes, "little")
        data = np.frombuffer(bytes(buf), dtype=np.dtype("<u8")).astype(np.uint64)
        return cls(len(ints), cols, data.reshape(len(ints), words))

    def row_ints(self) -> list[int]:
        raw = np.ascontiguousarray(self.data.astype(np.dtype("<u8"))).tobytes()
        step = self.data.shape[1] * 8
        return [int.from_bytes(raw[i * step:(i + 1) * step], "little") for i in range(self.rows)]

    @classmethod
    def from_col_ints(cls, ints: Sequence[int], rows: int) -> "BitMatrix":
        """Columns given as Python ints, bit ``i`` of the int is row ``i``."""
        return cls.from_row_ints(ints, rows).T

    def col_ints(self) -> list[int]:
        return self.T.row_ints()

    def to_array(self) -> np.ndarray:
        return _unpack(self.data, self.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.data.copy())

    # -- element access -------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _check_row(self, i: int) -> None:
        if not 0 <= i < self.rows:
            raise IndexError(f"row {i} out of range for {self.rows} rows")

    def _check_col(self, j: int) -> None:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} out of range for {self.cols} columns")

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        self._check_row(i)
        self._check_col(j)
        return int((self.data[i, j // WORD] >> np.uint64(j % WORD)) & _ONE)

    def __setitem__(self, idx: tuple[int, int], value: int) -> None:
        i, j = idx
        self._check_row(i)
        self._check_col(j)
        mask = _ONE << np.uint64(j % WORD)
        if value & 1:
            self.data[i, j // WORD] |= mask
        else:
            self.data[i, j // WORD] &= ~mask

    def row(self, i: int) -> BitVector:
        self._check_row(i)
        return BitVector(self.cols, self.data[i].copy())

    def column_bits(self, j: int) -> np.ndarray:
        """Column ``j`` as a boolean array over the rows."""
        self._check_col(j)
        return ((self.data[:, j // WORD] >> np.uint64(j % WORD)) & _ONE).astype(bool)

    def submatrix(self, rows=None, cols=None) -> "BitMatrix":
        arr = self.to_array()
        if rows is not None:
            arr = arr[np.asarray(rows, dtype=int).reshape(-1)] if not isinstance(rows, slice) else arr[rows]
        if cols is not None:
            arr = arr[:, np.asarray(cols, dtype=int).reshape(-1)] if not isinstance(cols, slice) else arr[:, cols]
        return BitMatrix.from_array(arr)

    # -- elementary operations (in place) --------------------------------

    def add_row_(self, src: int, dst: int) -> None:
        self._check_row(src)
        self._check_row(dst)
        if src == dst:
            raise ValueError("src and dst rows must differ")
        self.data[dst] ^= self.data[src]

    def add_col_(self, src: int, dst: int) -> None:
        self._check_col(src)
        self._check_col(dst)
        if src == dst:
            raise ValueError("src and dst columns must differ")
        bit = (self.data[:, src // WORD] >> np.uint64(src % WORD)) & _ONE
        self.data[:, dst // WORD] ^= bit << np.uint64(dst % WORD)

    def swap_rows_(self, a: int, b: int) -> None:
        self._check_row(a)
        self._check_row(b)
        if a != b:
            self.data[[a, b]] = self.data[[b, a]]

    def swap_cols_(self, a: int, b: int) -> None:
        self._check_col(a)
        self._check_col(b)
        if a == b:
            return
        ba = (self.data[:, a // WORD] >> np.uint64(a % WORD)) & _ONE
        bb = (self.data[:, b // WORD] >> np.uint64(b % WORD)) & _ONE
        diff = ba ^ bb
        self.data[:, a // WORD] ^= diff << np.uint64(a % WORD)
        self.data[:, b // WORD] ^= diff << np.uint64(b % WORD)

    # -- algebra ----------------------------------------------------------

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __hash__(self) -> int:
        return hash((self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join("".join(map(str, r)) for r in self.to_array())
        return f"BitMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return not self.data.any()

    def rref(self, ncols: int | None = None) -> tuple["BitMatrix", list[int]]:
        """Reduced row echelon form and pivot columns.

        Only the first ``ncols`` columns are eligible as pivots; row operations
        still act on the full width.
        """
        R = self.copy()
        d = R.data
        ncols = self.cols if ncols is None else ncols
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == R.rows:
                break
            w, b = c // WORD, np.uint64(c % WORD)
            colbits = (d[r:, w] >> b) & _ONE
            hits = np.flatnonzero(colbits)
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                d[[r, p]] = d[[p, r]]
            mask = ((d[:, w] >> b) & _ONE).astype(bool)
            mask[r] = False
            d[mask] ^= d[r]
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            raise ValueError(f"symmetry needs a square matrix, got {self.shape}")
        return self == self.T

    def nullspace(self) -> "BitMatrix":
        """Basis of ``{x : M x = 0}`` as the rows of a matrix."""
        R, pivots = self.rref()
        arr = R.to_array()
        free = [j for j in range(self.cols) if j not in set(pivots)]
        basis = np.zeros((len(free), self.cols), dtype=np.uint8)
        for t, f in enumerate(free):
            basis[t, f] = 1
            for i, p in enumerate(pivots):
                basis[t, p] = arr[i, f]
        return BitMatrix.from_array(basis) if free else BitMatrix(0, self.cols)


def add_row(M: BitMatrix, src: int, dst: int) -> BitMatrix:
    """Return a copy of ``M`` with row ``src`` added into row ``dst``."""
    out = M.copy()
    out.add_row_(src, dst)
    return out


def add_col(M: BitMatrix, src: int, dst: int) -> BitMatrix:
    """Return a copy of ``M`` with column ``src`` added into column ``dst``."""
    out = M.copy()
    out.add_col_(src, dst)
    return out


def rank(M: BitMatrix) -> int:
    return M.rank()


def mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if A.cols != B.rows:
        raise ValueError(f"inner dimensions differ: {A.shape} @ {B.shape}")
    out = BitMatrix(A.rows, B.cols)
    for j in range(A.cols):
        mask = A.column_bits(j)
        if mask.any():
            out.data[mask] ^= B.data[j]
    return out


def invert(M: BitMatrix) -> BitMatrix:
    if M.rows != M.cols:
        raise ValueError(f"cannot invert a non-square {M.shape} matrix")
    n = M.rows
    aug = hstack(M, BitMatrix.identity(n))
    R, pivots = aug.rref(ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular over GF(2)")
    return R.submatrix(cols=slice(n, 2 * n))


def solve(M: BitMatrix, y: BitVector) -> BitVector | None:
    """Some ``x`` with ``M x = y``, or ``None`` if the system is inconsistent."""
    if y.len != M.rows:
        raise ValueError(f"rhs length {y.len} does not match {M.rows} rows")
    aug = hstack(M, BitMatrix(M.rows, 1, _pack(y.to_array().reshape(-1, 1))))
    R, pivots = aug.rref()
    if pivots and pivots[-1] == M.cols:
        return None
    arr = R.to_array()
    x = np.zeros(M.cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = arr[i, M.cols]
    return BitVector.from_bits(x)


def symplectic_product(u: BitVector, v: BitVector) -> int:
    """``u Λ v^T`` for vectors laid out as ``(x | z)``."""
    if u.len != v.len:
        raise ValueError(f"length mismatch: {u.len} vs {v.len}")
    if u.len % 2:
        raise ValueError("symplectic vectors need an even length")
    a, b = u.to_array(), v.to_array()
    n = u.len // 2
    return int((a[:n] @ b[n:] + a[n:] @ b[:n]) & 1)


def symplectic_gram(M: BitMatrix) -> BitMatrix:
    """``M Λ M^T`` for a matrix whose columns split as ``[X | Z]``."""
    if M.cols % 2:
        raise ValueError("check matrices need an even number of columns")
    n = M.cols // 2
    X = M.submatrix(cols=slice(0, n))
    Z = M.submatrix(cols=slice(n, 2 * n))
    return mul(X, Z.T) + mul(Z, X.T)


def is_symmetric(M: BitMatrix) -> bool:
    return M.is_symmetric()


def hstack(*mats: BitMatrix) -> BitMatrix:
    rows = {m.rows for m in mats}
    if len(rows) != 1:
        raise ValueError("hstack needs equal row counts")
    r = rows.pop()
    return BitMatrix.from_array(
        np.hstack([m.to_array() for m in mats]) if r else np.zeros((0, sum(m.cols for m in mats)), np.uint8)
    )


def vstack(*mats: BitMatrix) -> BitMatrix:
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise ValueError("vstack needs equal column counts")
    c = cols.pop()
    return BitMatrix.from_array(np.vstack([m.to_array().reshape(-1, c) for m in mats]))
