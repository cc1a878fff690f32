"""Backend selection for the bulk kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy fallback. Set ``FUZZYCOLOR_BACKEND`` to ``python`` or ``cython`` to
force one (forcing ``cython`` without a built extension is an ImportError).
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

_MODULES = {"cython": "fuzzycolor._ckernels", "python": "fuzzycolor._kernels_py"}


def load_backend(name: str) -> ModuleType:
    if name not in _MODULES:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {sorted(_MODULES)}")
    return importlib.import_module(_MODULES[name])


def available_backends() -> list[str]:
    found = []
    for name in _MODULES:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _select() -> tuple[str, ModuleType]:
    requested = os.environ.get("FUZZYCOLOR_BACKEND", "auto").lower()
    if requested != "auto":
        return requested, load_backend(requested)
    try:
        return "cython", load_backend("cython")
    except ImportError:
        return "python", load_backend("python")


BACKEND, _impl = _select()

delta_matrix = _impl.delta_matrix
membership_matrix = _impl.membership_matrix
weighted_centers = _impl.weighted_centers
objective = _impl.objective
