"""Fuzzy color balls: signed distance, relative membership and the reference palette.

A fuzzy color is a ball in CIELAB with a center and a just-noticeable-difference
(JND) radius. An element inside a ball belongs to it fully. An element that
sits outside every ball gets a membership to each one that depends on how far
it is from all of them.

The functions here are scalar and written for clarity. The clustering code
evaluates the same rules in bulk through :mod:`fuzzycolor.kernels`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from os import PathLike
from typing import Iterator, Sequence

import jsonschema
import numpy as np

from .colorspace import LabColor, rho

__all__ = [
    "SURFACE_TOL",
    "FuzzyColor",
    "ReferencePalette",
    "PaletteError",
    "DegenerateDistanceError",
    "delta",
    "contains",
    "membership",
    "membership_vector",
    "load_palette",
    "parse_palette",
    "default_palette",
    "nearest_reference",
]

# Signed distances up to this value count as "inside"; absorbs rounding for
# elements that sit exactly on a ball surface.
SURFACE_TOL = 1e-9

PALETTE_SIZE = 13

PALETTE_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "L": {"type": "number"},
            "a": {"type": "number"},
            "b": {"type": "number"},
            "jnd": {"type": "number"},
        },
        "required": ["name", "L", "a", "b", "jnd"],
    },
}


class PaletteError(ValueError):
    """Malformed or invalid reference palette document."""


class DegenerateDistanceError(ArithmeticError):
    """Relative membership was requested with a non-positive fuzzy distance."""


@dataclass(frozen=True)
class FuzzyColor:
    """A ball ``<center, jnd>`` in CIELAB."""

    center: LabColor
    jnd: float
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "center", LabColor(*map(float, self.center)))
        object.__setattr__(self, "jnd", float(self.jnd))
        if not self.jnd >= 0:
            raise ValueError(f"jnd must be non-negative, got {self.jnd}")


def delta(fc: FuzzyColor, x) -> float:
    """Signed distance from ``x`` to the surface of ``fc``; negative inside."""
    return rho(fc.center, x) - fc.jnd


def contains(fc: FuzzyColor, x, literal: bool = False) -> bool:
    """Containment test used by the membership cases.

    By default ``x`` is inside when ``delta <= 0`` (within one JND of the
    center). ``literal=True`` uses the looser ``delta <= jnd`` reading, i.e.
    within two JNDs of the center.
    """
    d = delta(fc, x)
    return d <= fc.jnd if literal else d <= SURFACE_TOL


def _owner(colors: Sequence[FuzzyColor], x, literal: bool) -> int | None:
    """Index of the ball that claims ``x`` outright, or None.

    When balls overlap, the one with the smallest signed distance (``x`` deepest
    inside) wins, lowest index on ties.
    """
    best, best_d = None, math.inf
    for k, fc in enumerate(colors):
        if contains(fc, x, literal):
            d = delta(fc, x)
            if d < best_d:
                best, best_d = k, d
    return best


def membership(i: int, colors: Sequence[FuzzyColor], x, literal: bool = False) -> float:
    """Membership of color element ``x`` to ``colors[i]`` relative to the whole set.

    1 if ``x`` is inside ball ``i``; 0 if it is inside another ball; otherwise
    ``1 / sum_j(delta_i / delta_j)``.
    """
    if not 0 <= i < len(colors):
        raise IndexError(f"fuzzy color index {i} out of range for {len(colors)} colors")
    owner = _owner(colors, x, literal)
    if owner is not None:
        return 1.0 if owner == i else 0.0
    deltas = [delta(fc, x) for fc in colors]
    if min(deltas) <= 0:
        raise DegenerateDistanceError(f"non-positive fuzzy distance {min(deltas)!r}")
    d_i = deltas[i]
    return 1.0 / sum(d_i / d_j for d_j in deltas)


def membership_vector(colors: Sequence[FuzzyColor], x, literal: bool = False) -> list[float]:
    if not colors:
        raise ValueError("membership needs at least one fuzzy color")
    return [membership(i, colors, x, literal) for i in range(len(colors))]


@dataclass(frozen=True)
class ReferencePalette:
    """Thirteen named reference fuzzy colors, in a fixed order."""

    entries: tuple[FuzzyColor, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != PALETTE_SIZE:
            raise PaletteError(f"palette must have exactly {PALETTE_SIZE} entries, got {len(entries)}")
        names = [e.name for e in entries]
        if any(not n for n in names):
            raise PaletteError("every palette entry needs a name")
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise PaletteError(f"duplicate palette names: {', '.join(dupes)}")
        for e in entries:
            if not e.jnd > 0:
                raise PaletteError(f"palette entry {e.name!r} has non-positive jnd {e.jnd}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[FuzzyColor]:
        return iter(self.entries)

    def __getitem__(self, k: int) -> FuzzyColor:
        return self.entries[k]

    @property
    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    @property
    def centers(self) -> np.ndarray:
        return np.array([e.center for e in self.entries], dtype=np.float64)

    @property
    def jnds(self) -> np.ndarray:
        return np.array([e.jnd for e in self.entries], dtype=np.float64)

    def to_document(self) -> list[dict]:
        return [
            {"name": e.name, "L": e.center.l, "a": e.center.a, "b": e.center.b, "jnd": e.jnd}
            for e in self.entries
        ]


def parse_palette(doc) -> ReferencePalette:
    """Validate an already-decoded palette document (list of entry objects)."""
    try:
        jsonschema.validate(doc, PALETTE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise PaletteError(f"palette document invalid: {exc.message}") from None
    try:
        entries = [FuzzyColor(LabColor(e["L"], e["a"], e["b"]), e["jnd"], e["name"]) for e in doc]
    except ValueError as exc:
        raise PaletteError(str(exc)) from None
    return ReferencePalette(tuple(entries))


def load_palette(source: str | PathLike) -> ReferencePalette:
    """Read and validate a palette JSON file: an array of ``{name, L, a, b, jnd}``."""
    try:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PaletteError(f"cannot parse palette {source}: {exc}") from None
    return parse_palette(doc)


_DEFAULT: ReferencePalette | None = None


def default_palette() -> ReferencePalette:
    """The built-in palette: ten Munsell hues at value 5 / chroma 10, plus white, black, gray."""
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("fuzzycolor.data").joinpath("reference_palette.json").read_text("utf-8")
        _DEFAULT = parse_palette(json.loads(text))
    return _DEFAULT


def nearest_reference(palette: Sequence[FuzzyColor], x) -> int:
    """Index of the palette ball with the smallest signed distance to ``x``."""
    deltas = [delta(fc, x) for fc in palette]
    return int(np.argmin(deltas))
