import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzycolor.colorspace import (
    D65,
    LabColor,
    RgbColor,
    WhitePoint,
    XyzColor,
    lab_to_srgb,
    lab_to_xyz,
    rho,
    srgb_to_lab,
    srgb_to_xyz,
    xyz_to_lab,
)


def test_black_is_zero_stimulus():
    assert srgb_to_xyz(RgbColor(0, 0, 0)) == XyzColor(0.0, 0.0, 0.0)


def test_white_maps_to_d65():
    xyz = srgb_to_xyz(RgbColor(255, 255, 255))
    assert np.allclose(xyz, D65, atol=1e-3)


def test_red_is_first_matrix_column():
    # linear (1, 0, 0) picks out the red primary column of the published matrix
    assert np.allclose(srgb_to_xyz((255, 0, 0)), (0.4124564, 0.2126729, 0.0193339), atol=1e-12)


def test_srgb_rejects_out_of_range():
    with pytest.raises(ValueError):
        srgb_to_xyz((256, 0, 0))
    with pytest.raises(ValueError):
        srgb_to_xyz((-1, 0, 0))


def test_white_point_to_lab():
    assert xyz_to_lab(D65) == LabColor(100.0, 0.0, 0.0)


def test_custom_white_point():
    w = WhitePoint(0.9642, 1.0, 0.8251)
    assert xyz_to_lab(w, w) == LabColor(100.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        xyz_to_lab((0.5, 0.5, 0.5), (1.0, 0.0, 1.0))


def test_black_to_lab():
    lab = xyz_to_lab((0.0, 0.0, 0.0))
    assert abs(lab.l) < 1e-9
    assert lab.a == 0.0 and lab.b == 0.0


def test_mid_gray_matches_cube_root_formula():
    xyz = tuple(0.18 * v for v in D65)
    expected_l = 116 * 0.18 ** (1 / 3) - 16
    lab = xyz_to_lab(xyz)
    assert abs(lab.l - expected_l) < 1e-9
    assert abs(lab.a) < 1e-9 and abs(lab.b) < 1e-9


def test_lab_to_xyz_white_and_black():
    assert np.allclose(lab_to_xyz((100.0, 0.0, 0.0)), D65, atol=1e-12)
    assert np.allclose(lab_to_xyz((0.0, 0.0, 0.0)), 0.0, atol=1e-12)


def test_linear_branch_is_continuous():
    t = 216 / 24389
    below, above = xyz_to_lab(np.array([[t, t, t], [t * (1 + 1e-12)] * 3]) * np.asarray(D65))
    assert abs(below[0] - above[0]) < 1e-6


def test_round_trip_random(rng):
    xyz = rng.uniform(0, 1.2, size=(1000, 3)) * np.asarray(D65)
    lab = xyz_to_lab(xyz)
    assert np.max(np.abs(xyz_to_lab(lab_to_xyz(lab)) - lab)) < 1e-9


@settings(max_examples=200)
@given(st.lists(st.floats(0.0, 1.5, allow_nan=False), min_size=3, max_size=3))
def test_round_trip_property(ratios):
    xyz = np.asarray(ratios) * np.asarray(D65)
    lab = np.asarray(xyz_to_lab(xyz))
    back = np.asarray(xyz_to_lab(np.asarray(lab_to_xyz(lab))))
    assert np.max(np.abs(back - lab)) < 1e-9


def test_gray_axis_monotone():
    gray = np.repeat(np.arange(256.0)[:, None], 3, axis=1)
    y = srgb_to_xyz(gray)[:, 1]
    assert np.all(np.diff(y) >= 0)


def test_batch_and_single_agree():
    pix = np.array([[12, 200, 99], [255, 128, 0]])
    batch = srgb_to_lab(pix)
    for row, lab in zip(pix, batch):
        assert np.allclose(srgb_to_lab(tuple(row)), lab)


def test_srgb_round_trip_through_lab():
    pix = np.array([[0, 0, 0], [255, 255, 255], [12, 200, 99], [255, 128, 0], [1, 2, 3]], dtype=np.uint8)
    assert np.array_equal(lab_to_srgb(srgb_to_lab(pix.astype(float))), pix)


def test_rho_examples():
    x = (10.0, -2.0, 7.0)
    assert rho(x, x) == 0.0
    assert rho((50, 0, 0), (50, 3, 4)) == 5.0
    assert rho(x, (40, 5, -1)) == pytest.approx(math.sqrt(30**2 + 7**2 + 8**2), abs=1e-12)


lab_points = st.tuples(
    st.floats(0, 100, allow_nan=False), st.floats(-128, 128, allow_nan=False), st.floats(-128, 128, allow_nan=False)
)


@given(lab_points, lab_points, lab_points)
def test_rho_is_a_metric(x, y, z):
    assert rho(x, y) >= 0
    assert rho(x, y) == rho(y, x)
    if x == y:
        assert rho(x, y) == 0
    else:
        # squares of sub-1e-154 gaps underflow to zero
        assert rho(x, y) > 0 or max(abs(p - q) for p, q in zip(x, y)) < 1e-150
    assert rho(x, z) <= rho(x, y) + rho(y, z) + 1e-9
