"""sRGB -> XYZ -> CIELAB conversions and the Euclidean color-element distance.

All clustering math happens in CIELAB. RGB appears only when images are read
or written. Every conversion accepts a single color (a 3-sequence or one of
the named tuples below) or an array of shape ``(..., 3)``. Single colors come
back as the matching named tuple, arrays come back as float64 arrays.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

__all__ = [
    "RgbColor",
    "XyzColor",
    "LabColor",
    "WhitePoint",
    "D65",
    "SRGB_TO_XYZ",
    "XYZ_TO_SRGB",
    "srgb_to_xyz",
    "xyz_to_srgb",
    "xyz_to_lab",
    "lab_to_xyz",
    "srgb_to_lab",
    "lab_to_srgb",
    "rho",
]


class RgbColor(NamedTuple):
    """8-bit sRGB triple, channels in ``[0, 255]``."""

    r: int
    g: int
    b: int


class XyzColor(NamedTuple):
    """CIE XYZ tristimulus values, scaled so the white point has ``y = 1``."""

    x: float
    y: float
    z: float


class LabColor(NamedTuple):
    """A color element in CIELAB."""

    l: float  # noqa: E741
    a: float
    b: float


class WhitePoint(NamedTuple):
    xn: float
    yn: float
    zn: float


D65 = WhitePoint(0.95047, 1.0, 1.08883)

# IEC 61966-2-1 primaries, D65. Row sums reproduce D65 to 1e-7.
SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)

# CIE cube-root cutoff and the slope of the matching linear segment. The exact
# rational forms make the two branches meet continuously, which is what lets
# lab_to_xyz invert xyz_to_lab to rounding error.
_EPSILON = 216.0 / 24389.0  # 0.008856...
_SLOPE = 841.0 / 108.0  # 7.787...
_OFFSET = 16.0 / 116.0
_F_CUT = 6.0 / 29.0  # f(_EPSILON)


def _as_array(c: ArrayLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(c, dtype=np.float64)
    if arr.shape[-1:] != (3,):
        raise ValueError(f"expected trailing dimension 3, got shape {arr.shape}")
    return arr, arr.ndim == 1


def _white(w: ArrayLike) -> np.ndarray:
    wa = np.asarray(w, dtype=np.float64)
    if wa.shape != (3,) or not np.all(wa > 0):
        raise ValueError(f"white point must be three positive values, got {w!r}")
    return wa


def _decode_gamma(v: np.ndarray) -> np.ndarray:
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def _encode_gamma(v: np.ndarray) -> np.ndarray:
    v = np.clip(v, 0.0, 1.0)
    return np.where(v <= 0.0031308, 12.92 * v, 1.055 * v ** (1 / 2.4) - 0.055)


def srgb_to_xyz(c: ArrayLike):
    """Decode 8-bit sRGB to D65-relative XYZ.

    Channels outside ``[0, 255]`` raise ``ValueError``.
    """
    arr, single = _as_array(c)
    if np.any(arr < 0) or np.any(arr > 255):
        raise ValueError("sRGB channels must lie in [0, 255]")
    linear = _decode_gamma(arr / 255.0)
    xyz = linear @ SRGB_TO_XYZ.T
    return XyzColor(*xyz.tolist()) if single else xyz


def xyz_to_srgb(c: ArrayLike) -> np.ndarray:
    """Encode XYZ as 8-bit sRGB, clamping out-of-gamut values.

    Always returns a ``uint8`` array of shape ``(..., 3)``.
    """
    arr, _ = _as_array(c)
    linear = arr @ XYZ_TO_SRGB.T
    return np.rint(_encode_gamma(linear) * 255.0).astype(np.uint8)


def _f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _EPSILON, np.cbrt(t), _SLOPE * t + _OFFSET)


def _f_inv(f: np.ndarray) -> np.ndarray:
    return np.where(f > _F_CUT, f**3, (f - _OFFSET) / _SLOPE)


def xyz_to_lab(c: ArrayLike, w: ArrayLike = D65):
    """Convert XYZ to CIELAB relative to white point ``w``.

    Ratios above the cutoff use the cube-root law; below it the standard
    linear segment keeps the transform total (black maps to ``L = 0``).
    """
    arr, single = _as_array(c)
    ratios = arr / _white(w)
    fx, fy, fz = (_f(ratios[..., k]) for k in range(3))
    lab = np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)
    return LabColor(*lab.tolist()) if single else lab


def lab_to_xyz(c: ArrayLike, w: ArrayLike = D65):
    """Inverse of :func:`xyz_to_lab`."""
    arr, single = _as_array(c)
    fy = (arr[..., 0] + 16.0) / 116.0
    fx = fy + arr[..., 1] / 500.0
    fz = fy - arr[..., 2] / 200.0
    xyz = np.stack([_f_inv(fx), _f_inv(fy), _f_inv(fz)], axis=-1) * _white(w)
    return XyzColor(*xyz.tolist()) if single else xyz


def srgb_to_lab(c: ArrayLike, w: ArrayLike = D65):
    arr, single = _as_array(c)
    lab = np.asarray(xyz_to_lab(np.asarray(srgb_to_xyz(arr)), w))
    return LabColor(*lab.tolist()) if single else lab


def lab_to_srgb(c: ArrayLike, w: ArrayLike = D65) -> np.ndarray:
    """Lab to clamped 8-bit sRGB (``uint8`` array)."""
    arr, _ = _as_array(c)
    return xyz_to_srgb(np.asarray(lab_to_xyz(arr, w)))


def rho(x, y) -> float:
    """Euclidean distance between two color elements, in Delta-E units."""
    return math.sqrt((x[0] - y[0]) ** 2 + (x[1] - y[1]) ** 2 + (x[2] - y[2]) ** 2)
