"""Fuzzy color model and fuzzy clustering for color data."""

from .clustering import ClusterConfig, ClusterResult, cluster, harden
from .colorspace import LabColor, lab_to_xyz, rho, srgb_to_lab, srgb_to_xyz, xyz_to_lab
from .fuzzy_color import FuzzyColor, ReferencePalette, default_palette, delta, load_palette, membership, membership_vector
from .kernels import BACKEND

__version__ = "0.1.0"
