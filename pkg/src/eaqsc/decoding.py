"""Exact decoders for small codes.

Errors are length-``2n`` vectors ``(x | z)``. Internally a vector is a Python
int whose most significant bit is ``x_1``, so numeric order on the ints is the
lexicographic order on bit strings used for tie-breaking.

Both decoders enumerate exponentially many vectors and refuse instances above
fixed size limits with :class:`ResourceGuardError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .code import CheckMatrix
from .errors import InvalidCodeError, ResourceGuardError
from .gf2 import BitMatrix, BitVector, solve

XZ = "xz"
DEPOLARIZING = "depol"

EMLD_MAX_QUBITS = 10
DEMLD_MAX_BITS = 20
COSET_MAX_ROWS = 24

_CHUNK = 1 << 16


@dataclass(frozen=True)
class ChannelModel:
    """``kind`` is ``"xz"`` (independent X and Z flips) or ``"depol"``."""

    kind: str = XZ
    p: float = 0.1

    def __post_init__(self):
        if self.kind == XZ:
            hi = 0.5
        elif self.kind == DEPOLARIZING:
            hi = 0.75
        else:
            raise ValueError(f"unknown channel {self.kind!r}; use 'xz' or 'depol'")
        if not 0 <= self.p < hi:
            raise ValueError(f"p must lie in [0, {hi}) for the {self.kind} channel, got {self.p}")

    def weight_probabilities(self, n: int) -> list[float]:
        """Probability of one fixed error vector, indexed by its (generalized) weight."""
        p = self.p
        if self.kind == XZ:
            return [p ** w * (1 - p) ** (2 * n - w) for w in range(2 * n + 1)]
        return [(p / 3) ** w * (1 - p) ** (n - w) for w in range(n + 1)]


@dataclass
class DecodeResult:
    e: BitVector
    weight: int
    coset_probability: float | None = None

    def to_dict(self) -> dict:
        out = {"e": self.e.to_string(split=True), "weight": self.weight}
        if self.coset_probability is not None:
            out["coset_probability"] = self.coset_probability
        return out


# int <-> BitVector (MSB = first bit)

def _to_int(e: BitVector) -> int:
    s = e.to_string()
    return int(s, 2) if s else 0


def _from_int(v: int, length: int) -> BitVector:
    return BitVector.from_bits(format(v, f"0{length}b") if length else "")


def _row_keys(M: BitMatrix) -> list[int]:
    return [int("".join(map(str, row)), 2) for row in M.to_array()] if M.cols else [0] * M.rows


def _as_vector(e, length: int, what: str = "error") -> BitVector:
    if not isinstance(e, BitVector):
        e = BitVector.from_bits(e)
    if len(e) != length:
        raise ValueError(f"{what} has length {len(e)}, expected {length}")
    return e


# weights

def wt(e) -> int:
    """Hamming weight of the full ``2n`` vector."""
    e = e if isinstance(e, BitVector) else BitVector.from_bits(e)
    return e.weight()


def gw(e) -> int:
    """Number of qubits where ``x`` or ``z`` is set."""
    e = e if isinstance(e, BitVector) else BitVector.from_bits(e)
    if len(e) % 2:
        raise ValueError(f"error vectors have even length, got {len(e)}")
    a = e.to_array()
    n = len(e) // 2
    return int(np.count_nonzero(a[:n] | a[n:]))


def _weights(vals: np.ndarray, n: int, kind: str) -> np.ndarray:
    if kind == XZ:
        return np.bitwise_count(vals).astype(np.int64)
    mask = np.uint64((1 << n) - 1)
    return np.bitwise_count((vals >> np.uint64(n)) | (vals & mask)).astype(np.int64)


def error_probability(e, ch: ChannelModel) -> float:
    e = e if isinstance(e, BitVector) else BitVector.from_bits(e)
    if len(e) % 2:
        raise ValueError(f"error vectors have even length, got {len(e)}")
    n = len(e) // 2
    w = wt(e) if ch.kind == XZ else gw(e)
    return ch.weight_probabilities(n)[w]


# syndromes

def _syndrome_keys(H: CheckMatrix) -> list[int]:
    """Rows of ``H Lambda``: the syndrome bit is the parity of ``e & key``."""
    a = H.mat.to_array()
    n = H.n
    return _row_keys(BitMatrix.from_array(np.hstack([a[:, n:], a[:, :n]])))


def syndrome(e, H: CheckMatrix) -> BitVector:
    """Bit ``i`` is the symplectic product of ``e`` with row ``i``."""
    e = _as_vector(e, 2 * H.n)
    v = _to_int(e)
    return BitVector.from_bits([(v & g).bit_count() & 1 for g in _syndrome_keys(H)])


def _reduce_basis(keys: list[int]) -> list[int]:
    """Fully reduced echelon basis, pivots at each key's top bit."""
    basis: list[int] = []
    for v in keys:
        for b in basis:  # descending top bits
            v = min(v, v ^ b)
        if v:
            basis = sorted([min(b, b ^ v) for b in basis] + [v], reverse=True)
    return basis


def _span(basis: list[int], offset: int = 0) -> np.ndarray:
    out = np.zeros(1 << len(basis), dtype=np.uint64)
    out[0] = offset
    for i, b in enumerate(basis):
        out[1 << i:1 << (i + 1)] = out[:1 << i] ^ np.uint64(b)
    return out


def _check_rank(H: CheckMatrix) -> None:
    if H.mat.rank() != H.mat.rows:
        raise InvalidCodeError("check matrix must have full row rank")


def _solutions(H: CheckMatrix, y) -> np.ndarray:
    """All errors with syndrome ``y``, as ``e0 + ker``."""
    y = _as_vector(y, H.mat.rows, "syndrome")
    a = H.mat.to_array()
    G = BitMatrix.from_array(np.hstack([a[:, H.n:], a[:, :H.n]]).reshape(H.mat.rows, 2 * H.n))
    e0 = solve(G, y)
    if e0 is None:
        raise InvalidCodeError("syndrome is inconsistent with the check matrix")
    return _span(_row_keys(G.nullspace()), _to_int(e0))


def emld(H: CheckMatrix, y, ch: ChannelModel = ChannelModel()) -> DecodeResult:
    """Minimum-weight error with syndrome ``y``.

    Weight is ``wt`` for the X-Z channel and ``gw`` for the depolarizing
    channel. Ties go to the lexicographically smallest bit string.
    """
    if H.n > EMLD_MAX_QUBITS:
        raise ResourceGuardError(f"emld is limited to n <= {EMLD_MAX_QUBITS}, got n = {H.n}")
    _check_rank(H)
    sols = _solutions(H, y)
    w = _weights(sols, H.n, ch.kind)
    best = int(w.min())
    e = int(sols[w == best].min())
    return DecodeResult(_from_int(e, 2 * H.n), best)


# coset probabilities

class _RowSpace:
    def __init__(self, H: CheckMatrix, ch: ChannelModel):
        if H.mat.rows > COSET_MAX_ROWS:
            raise ResourceGuardError(
                f"coset enumeration is limited to s + 2c <= {COSET_MAX_ROWS}, got {H.mat.rows}")
        self.n = H.n
        self.ch = ch
        self.basis = _reduce_basis(_row_keys(H.mat))
        self.members = _span(self.basis)
        self.probs = ch.weight_probabilities(H.n)

    def canonical(self, vals: np.ndarray) -> np.ndarray:
        vals = vals.copy()
        for b in self.basis:
            p = np.uint64(b.bit_length() - 1)
            hit = ((vals >> p) & np.uint64(1)).astype(bool)
            vals[hit] ^= np.uint64(b)
        return vals

    def probability(self, reps: np.ndarray) -> list[float]:
        """Coset probabilities; each is an exact-rounded sum over weight classes."""
        out = []
        nw = len(self.probs)
        step = max(1, _CHUNK // max(1, len(self.members)))
        for i in range(0, len(reps), step):
            block = reps[i:i + step, None] ^ self.members[None, :]
            w = _weights(block, self.n, self.ch.kind)
            for row in w:
                counts = np.bincount(row, minlength=nw)
                out.append(math.fsum(int(c) * self.probs[k] for k, c in enumerate(counts) if c))
        return out


def coset_probability(e, H: CheckMatrix, ch: ChannelModel = ChannelModel()) -> float:
    """Total probability of ``e + Row(H)``."""
    e = _as_vector(e, 2 * H.n)
    rs = _RowSpace(H, ch)
    rep = rs.canonical(np.array([_to_int(e)], dtype=np.uint64))
    return rs.probability(rep)[0]


def all_coset_probabilities(H: CheckMatrix, ch: ChannelModel = ChannelModel()) -> dict[str, float]:
    """Probability of every coset of ``Row(H)`` in the full ``2n``-bit space, keyed by
    the canonical representative's bit string."""
    if 2 * H.n > DEMLD_MAX_BITS:
        raise ResourceGuardError(f"coset listing is limited to 2n <= {DEMLD_MAX_BITS}, got {2 * H.n}")
    _check_rank(H)
    rs = _RowSpace(H, ch)
    pivots = {b.bit_length() - 1 for b in rs.basis}
    free = [1 << j for j in range(2 * H.n) if j not in pivots]
    reps = _span(free)
    probs = rs.probability(reps)
    return {_from_int(int(r), 2 * H.n).to_string(): pr for r, pr in zip(reps, probs)}


def demld(H: CheckMatrix, y, ch: ChannelModel = ChannelModel()) -> DecodeResult:
    """Representative of the most probable ``Row(H)`` coset among errors with syndrome ``y``.

    Returns the lexicographically smallest solution inside the winning coset;
    equal-probability cosets are ordered by that same smallest solution.
    """
    if 2 * H.n > DEMLD_MAX_BITS:
        raise ResourceGuardError(f"demld is limited to 2n <= {DEMLD_MAX_BITS}, got {2 * H.n}")
    _check_rank(H)
    sols = np.sort(_solutions(H, y))
    rs = _RowSpace(H, ch)
    canon = rs.canonical(sols)
    uniq, first = np.unique(canon, return_index=True)
    probs = rs.probability(uniq)
    best = max(range(len(uniq)), key=lambda i: (probs[i], -int(sols[first[i]])))
    e = int(sols[first[best]])
    ev = _from_int(e, 2 * H.n)
    weight = wt(ev) if ch.kind == XZ else gw(ev)
    return DecodeResult(ev, weight, probs[best])


def sample_error(n: int, ch: ChannelModel, seed=None) -> BitVector:
    """Draw an error from the channel; reproducible for a fixed seed."""
    rng = np.random.default_rng(seed)
    if ch.kind == XZ:
        bits = (rng.random(2 * n) < ch.p).astype(np.uint8)
        return BitVector.from_bits(bits)
    p = ch.p
    pauli = rng.choice(4, size=n, p=[1 - p, p / 3, p / 3, p / 3])  # I, X, Y, Z
    x = np.isin(pauli, (1, 2)).astype(np.uint8)
    z = np.isin(pauli, (2, 3)).astype(np.uint8)
    return BitVector.from_bits(np.concatenate([x, z]))
