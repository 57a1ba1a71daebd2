"""scikit-learn style wrappers around the functional API."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .circuit import apply_circuit
from .code import CheckMatrix, CodeParams, parse_check_matrix
from .decoding import ChannelModel, demld, emld
from .gf2 import BitMatrix
from .synthesis import DEFAULT_ALPHA, synth_encoder, synth_naive_encoder


def check_binary_array(X, name: str = "X", ensure_min_samples: int = 1) -> np.ndarray:
    """2-D array of zeros and ones as ``uint8``."""
    arr = check_array(X, dtype=None, ensure_2d=True, ensure_min_samples=ensure_min_samples,
                      ensure_min_features=0, input_name=name)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0 and 1")
    return arr.astype(np.uint8)


def check_code(H, k: int | None = None, c: int = 0) -> CheckMatrix:
    """Accept a CheckMatrix, its text form, or a binary array plus ``k`` and ``c``."""
    if isinstance(H, CheckMatrix):
        return H
    if isinstance(H, str):
        return parse_check_matrix(H)
    arr = check_binary_array(H, "H", ensure_min_samples=0)
    if arr.shape[1] % 2:
        raise ValueError(f"check matrix needs an even number of columns, got {arr.shape[1]}")
    n = arr.shape[1] // 2
    if k is None:
        k = n + c - arr.shape[0]  # rows = n - k + c
    return CheckMatrix(CodeParams(n, k, c), BitMatrix.from_array(arr))


class EncoderSynthesizer(TransformerMixin, BaseEstimator):
    """Synthesize an encoder for a check matrix.

    Parameters
    ----------
    alpha : float
        Block size is ``floor(alpha * log2 n)``.
    method : {"blocked", "naive"}
        ``"naive"`` disables the pattern tables.
    k, c : int, optional
        Code parameters when ``fit`` receives a bare array.

    Attributes
    ----------
    circuit_ : Circuit
    report_ : SynthReport
    code_ : CheckMatrix
    """

    def __init__(self, alpha: float = DEFAULT_ALPHA, method: str = "blocked",
                 k: int | None = None, c: int = 0):
        self.alpha = alpha
        self.method = method
        self.k = k
        self.c = c

    def fit(self, H, y=None):
        if self.method not in ("blocked", "naive"):
            raise ValueError(f"method must be 'blocked' or 'naive', got {self.method!r}")
        code = check_code(H, self.k, self.c)
        res = synth_naive_encoder(code) if self.method == "naive" else synth_encoder(code, self.alpha)
        self.code_ = code
        self.result_ = res
        self.circuit_ = res.circuit
        self.report_ = res.report
        self.n_features_in_ = 2 * code.n
        return self

    def transform(self, X):
        """Apply the encoder's column action to each row of ``X``."""
        check_is_fitted(self, "circuit_")
        arr = check_binary_array(X, ensure_min_samples=0)
        if arr.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {arr.shape[1]} columns, expected {self.n_features_in_}")
        return apply_circuit(BitMatrix.from_array(arr), self.circuit_).to_array()

    def score(self, H=None, y=None) -> float:
        """1.0 when the encoder reproduces the fitted code, else 0.0."""
        check_is_fitted(self, "circuit_")
        return float(self.result_.verify())


class MaximumLikelihoodDecoder(BaseEstimator):
    """Exact decoder: minimum weight or, with ``degenerate=True``, most probable coset.

    Parameters
    ----------
    channel : {"xz", "depol"}
    p : float
    degenerate : bool
    """

    def __init__(self, channel: str = "xz", p: float = 0.1, degenerate: bool = False,
                 k: int | None = None, c: int = 0):
        self.channel = channel
        self.p = p
        self.degenerate = degenerate
        self.k = k
        self.c = c

    def fit(self, H, y=None):
        self.code_ = check_code(H, self.k, self.c)
        self.channel_ = ChannelModel(self.channel, self.p)
        self.n_features_in_ = self.code_.mat.rows
        return self

    def predict(self, Y) -> np.ndarray:
        """Decode each syndrome row to an error vector of length ``2n``."""
        check_is_fitted(self, "code_")
        arr = check_binary_array(Y, "Y", ensure_min_samples=0)
        if arr.shape[1] != self.n_features_in_:
            raise ValueError(f"syndromes have {arr.shape[1]} bits, expected {self.n_features_in_}")
        decode = demld if self.degenerate else emld
        out = np.zeros((arr.shape[0], 2 * self.code_.n), dtype=np.uint8)
        for i, y in enumerate(arr):
            out[i] = decode(self.code_, y.tolist(), self.channel_).e.to_array()
        return out
