"""Loading color data (PNG, binary PPM, CSV) and writing segmentation images."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from os import PathLike
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .colorspace import D65, lab_to_srgb, srgb_to_lab

__all__ = [
    "Dataset",
    "DatasetError",
    "load_image",
    "load_csv",
    "load_dataset",
    "save_csv",
    "emit_segmentation",
]

IMAGE_SUFFIXES = {".png", ".ppm"}

# Pillow modes that carry 8 bits per channel.
_EIGHT_BIT_MODES = {"1", "L", "LA", "P", "PA", "RGB", "RGBA", "RGBX"}


class DatasetError(ValueError):
    pass


@dataclass
class Dataset:
    """Color elements in Lab, row-major when they came from an image."""

    lab: np.ndarray
    width: int | None = None
    height: int | None = None
    source: str = ""

    def __post_init__(self):
        self.lab = np.asarray(self.lab, dtype=np.float64).reshape(-1, 3)
        if len(self.lab) == 0:
            raise DatasetError(f"{self.source or 'dataset'}: no color elements")
        if (self.width is None) != (self.height is None):
            raise DatasetError("width and height must be given together")
        if self.width is not None and self.width * self.height != len(self.lab):
            raise DatasetError(
                f"geometry {self.width}x{self.height} does not match {len(self.lab)} elements"
            )

    def __len__(self) -> int:
        return len(self.lab)

    @property
    def has_geometry(self) -> bool:
        return self.width is not None


def _check_header(path: Path, head: bytes) -> None:
    if head[:8] == b"\x89PNG\r\n\x1a\n":
        # IHDR is always first: bit depth sits at byte 24.
        if len(head) < 25 or head[24] > 8:
            raise DatasetError(f"{path}: unsupported PNG bit depth; need 8-bit channels")
    elif head[:2] == b"P6":
        pass
    elif head[:1] == b"P":
        raise DatasetError(f"{path}: only binary PPM (P6) is supported")
    else:
        raise DatasetError(f"{path}: not a PNG or PPM file")


def load_image(path: str | PathLike, white=D65) -> Dataset:
    """Read an 8-bit PNG or binary PPM (P6) into Lab, row-major."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            _check_header(path, fh.read(32))
        with Image.open(path) as img:
            if img.mode not in _EIGHT_BIT_MODES:
                raise DatasetError(f"{path}: unsupported pixel format {img.mode!r}; need 8-bit channels")
            rgb = np.asarray(img.convert("RGB"), dtype=np.uint8)
    except (OSError, UnidentifiedImageError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise DatasetError(f"{path}: file not found") from None
        raise DatasetError(f"{path}: cannot read image ({exc})") from None
    height, width = rgb.shape[:2]
    if width * height == 0:
        raise DatasetError(f"{path}: image has no pixels")
    lab = srgb_to_lab(rgb.reshape(-1, 3).astype(np.float64), white)
    return Dataset(lab, width, height, str(path))


def load_csv(path: str | PathLike) -> Dataset:
    """Read ``L,a,b`` rows; a leading ``L,a,b`` header line is allowed."""
    path = Path(path)
    rows = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"{path}: cannot open ({exc.strerror})") from None
    with fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            cells = [cell.strip() for cell in row]
            if lineno == 1 and [c.lower() for c in cells] == ["l", "a", "b"]:
                continue
            if len(cells) != 3:
                raise DatasetError(f"{path}:{lineno}: expected 3 values, got {len(cells)}")
            try:
                L, a, b = (float(c) for c in cells)
            except ValueError:
                raise DatasetError(f"{path}:{lineno}: not a number in {','.join(cells)!r}") from None
            if not (0.0 <= L <= 100.0) or not np.isfinite(a) or not np.isfinite(b):
                raise DatasetError(f"{path}:{lineno}: L must be in [0, 100] and a, b finite")
            rows.append((L, a, b))
    if not rows:
        raise DatasetError(f"{path}: no color elements")
    return Dataset(np.array(rows), source=str(path))


def load_dataset(path: str | PathLike) -> Dataset:
    """Dispatch on file extension: ``.png``, ``.ppm`` or ``.csv``."""
    suffix = Path(path).suffix.lower()
    if suffix in IMAGE_SUFFIXES:
        return load_image(path)
    if suffix == ".csv":
        return load_csv(path)
    raise DatasetError(f"{path}: unsupported input type {suffix!r} (expected png, ppm or csv)")


def save_csv(dataset: Dataset, path: str | PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["L", "a", "b"])
        writer.writerows(dataset.lab.tolist())


def emit_segmentation(result, dataset: Dataset, path: str | PathLike, white=D65) -> None:
    """Write a PNG where every pixel shows its cluster's center color.

    ``result`` needs ``labels`` (one per element) and ``centers`` (``c x 3`` Lab).
    """
    if not dataset.has_geometry:
        raise DatasetError(f"{dataset.source or 'dataset'}: no image geometry to segment")
    labels = np.asarray(result.labels)
    if labels.shape != (len(dataset),):
        raise DatasetError(f"got {labels.shape[0]} labels for {len(dataset)} pixels")
    palette = lab_to_srgb(np.asarray(result.centers), white)
    pixels = palette[labels].reshape(dataset.height, dataset.width, 3)
    Image.fromarray(pixels, "RGB").save(path, format="PNG")
