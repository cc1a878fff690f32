"""Machine-readable run report (JSON)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

SCHEMA_VERSION = 1


@dataclass
class CentroidEntry:
    L: float
    a: float
    b: float
    jnd: float | None
    nearest_reference: str


@dataclass
class RunReport:
    algorithm: str
    config: dict
    input: dict
    iterations: int
    converged: bool
    j_history: list[float]
    centroids: list[CentroidEntry]
    cluster_counts: list[int]
    j_clamped_history: list[float] | None = None
    seeded_centroids: int = 0
    reseeded: list[list[int]] = field(default_factory=list)
    kernel_backend: str = ""
    duration_seconds: float = 0.0
    schema_version: int = SCHEMA_VERSION

    def to_dict(self, include_duration: bool = True) -> dict:
        d = asdict(self)
        if not include_duration:
            d.pop("duration_seconds")
        return d

    def dumps(self, include_duration: bool = True) -> str:
        return json.dumps(self.to_dict(include_duration), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema_version {version!r}")
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown report fields: {', '.join(sorted(unknown))}")
        kwargs = dict(d)
        kwargs["centroids"] = [CentroidEntry(**c) for c in d["centroids"]]
        return cls(**kwargs)

    @classmethod
    def loads(cls, text: str) -> RunReport:
        return cls.from_dict(json.loads(text))
