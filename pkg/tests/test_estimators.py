import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from eaqsc.code import CodeParams, emit_check_matrix, random_code, raw_matrix
from eaqsc.decoding import ChannelModel, demld, emld
from eaqsc.estimators import (EncoderSynthesizer, MaximumLikelihoodDecoder, check_binary_array,
                              check_code)


class TestValidation:
    def test_binary_array(self):
        out = check_binary_array([[1, 0], [0, 1]])
        assert out.dtype == np.uint8

    def test_bool(self):
        assert check_binary_array(np.array([[True, False]])).tolist() == [[1, 0]]

    @pytest.mark.parametrize("bad", [[[2, 0]], [[0.5, 1]], [1, 0]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            check_binary_array(bad)

    def test_code_from_array(self):
        H = random_code(CodeParams(6, 1, 2), 0)
        assert check_code(H.mat.to_array(), c=2) == H
        assert check_code(H.mat.to_array(), k=1, c=2) == H

    def test_code_from_text(self):
        H = random_code(CodeParams(5, 1, 0), 0)
        assert check_code(emit_check_matrix(H)) == H

    def test_code_odd_columns(self):
        with pytest.raises(ValueError):
            check_code(np.zeros((1, 3), dtype=np.uint8))


class TestEncoderSynthesizer:
    def test_params(self):
        est = EncoderSynthesizer(alpha=0.5, method="naive")
        assert est.get_params() == {"alpha": 0.5, "method": "naive", "k": None, "c": 0}
        assert clone(est).get_params() == est.get_params()
        est.set_params(alpha=0.6)
        assert est.alpha == 0.6

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            EncoderSynthesizer().transform([[0, 1]])

    @pytest.mark.parametrize("method", ["blocked", "naive"])
    def test_fit_transform_reproduces_code(self, method):
        H = random_code(CodeParams(12, 3, 2), 1)
        est = EncoderSynthesizer(method=method).fit(H)
        assert est.score() == 1.0
        raw = raw_matrix(H.params).mat.to_array()
        img = est.transform(raw)
        assert img.shape == raw.shape
        assert est.report_.total == len(est.circuit_)

    def test_fit_array(self):
        H = random_code(CodeParams(8, 2, 0), 4)
        est = EncoderSynthesizer().fit(H.mat.to_array())
        assert est.code_ == H

    def test_bad_method(self):
        with pytest.raises(ValueError):
            EncoderSynthesizer(method="fast").fit(raw_matrix(CodeParams(2, 1)))

    def test_transform_width(self):
        est = EncoderSynthesizer().fit(raw_matrix(CodeParams(2, 1)))
        with pytest.raises(ValueError):
            est.transform([[0, 1]])


class TestDecoder:
    H = random_code(CodeParams(4, 1, 1), 3)

    def test_params(self):
        d = MaximumLikelihoodDecoder(channel="depol", p=0.2, degenerate=True)
        assert d.get_params()["channel"] == "depol"

    def test_bad_channel(self):
        with pytest.raises(ValueError):
            MaximumLikelihoodDecoder(p=0.9).fit(self.H)

    @pytest.mark.parametrize("degenerate, fn", [(False, emld), (True, demld)])
    def test_predict_matches_functions(self, degenerate, fn):
        d = MaximumLikelihoodDecoder(p=0.1, degenerate=degenerate).fit(self.H)
        Y = np.random.default_rng(0).integers(0, 2, (5, self.H.mat.rows), dtype=np.uint8)
        out = d.predict(Y)
        assert out.shape == (5, 2 * self.H.n)
        for y, e in zip(Y, out):
            assert e.tolist() == fn(self.H, y.tolist(), ChannelModel("xz", 0.1)).e.to_array().tolist()

    def test_predict_width(self):
        d = MaximumLikelihoodDecoder().fit(self.H)
        with pytest.raises(ValueError):
            d.predict([[0]])

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            MaximumLikelihoodDecoder().predict([[0, 0]])
