"""Run configuration for the randomized verification runs."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path

DEFAULT_CONFIG = Path(__file__).resolve().parents[2] / "configs" / "fuzz.json"


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 20250101
    # single-edge additions to H_n^{a,b}
    perturbation_samples: int = 1000
    # random dense graphs above the size threshold
    edge_samples: int = 200
    # random connected graphs for the shift property
    kelmans_graphs: int = 1000
    kelmans_max_n: int = 30
    kelmans_shifts_per_graph: int = 3
    hillclimb_max_steps: int = 500
    rho_margin: float = 1e-10
    agree_tol: float = 1e-9

    @classmethod
    def load(cls, path: str | os.PathLike | None = None) -> "FuzzConfig":
        path = Path(path) if path is not None else DEFAULT_CONFIG
        if not path.exists():
            return cls()
        data = json.loads(path.read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def worker_count() -> int:
    return max(1, int(os.environ.get("ABFACTOR_WORKERS", "1")))
