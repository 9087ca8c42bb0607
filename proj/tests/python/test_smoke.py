import os
import tempfile

import numpy as np
import pytest

import ewspb


def test_transform_round_trip():
    spec = ewspb.Spec(gop=16, width=64, height=64)
    rng = np.random.default_rng(7)
    gop = rng.uniform(-100, 100, size=(16, 64, 64))
    coeffs = ewspb.forward(gop, spec)
    back = ewspb.inverse(coeffs, spec)
    assert np.max(np.abs(back - gop)) < 1e-6


def test_weight_table_layout():
    spec = ewspb.Spec(gop=16, width=64, height=64)
    table = ewspb.weight_table(spec)
    assert len(table["rows"]) == 16
    assert len(table["cols"]) == 10
    values = np.asarray(table["values"])
    assert values.shape == (16, 10)
    assert values.argmax() == 0  # (LLLL, LL3) dominates
    # LH == HL at the coarsest level in every row
    assert np.allclose(values[:, 1], values[:, 2])


def test_zerotree_scan1_is_100():
    spec = ewspb.Spec(gop=8, width=16, height=16, tlevels=3, slevels=2)
    coeffs = np.zeros((8, 16, 16))
    coeffs[0, 1, 1] = 900.0
    coeffs[3, 9, 9] = 3.0
    for tree in ("ewspb", "asym"):
        assert ewspb.zerotree_ratios(coeffs, spec, tree=tree, scan=1) == 100.0


def test_file_codec_round_trip():
    with tempfile.TemporaryDirectory() as d:
        raw = os.path.join(d, "in.yuv")
        stream = os.path.join(d, "out.ews")
        recon = os.path.join(d, "out.yuv")
        ewspb.make_synthetic(raw, seed=3, frames=16, width=64, height=64)
        ewspb.encode_file(raw, stream, 64, 64, bitrate_kbps=2000.0)
        ewspb.decode_file(stream, recon)
        assert os.path.getsize(recon) == os.path.getsize(raw)
        assert ewspb.psnr_files(raw, recon, 64, 64) > 28.0


def test_invalid_input_raises():
    spec = ewspb.Spec(gop=8, width=16, height=16, tlevels=3, slevels=2)
    with pytest.raises(Exception):
        ewspb.forward(np.zeros((4, 16, 16)), spec)
