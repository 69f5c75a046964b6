"""Run options shared by the CLI and the scripts."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from typing import Mapping, Optional

ENV_PREFIX = "SYMDOUBLE_"


@dataclass
class RunConfig:
    precision_bits: int = 128
    depth: int = 64
    max_len: Optional[int] = None
    grid: Optional[str] = None
    seed: int = 0
    mode: str = "float"
    format: str = "csv"
    out: Optional[str] = None
    iterations: int = 1_000_000

    @classmethod
    def from_env(cls, environ: Mapping[str, str] = os.environ) -> "RunConfig":
        """Defaults, overridden by ``SYMDOUBLE_<FIELD>`` variables (e.g. ``SYMDOUBLE_SEED=7``)."""
        cfg = cls()
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            kind = f.type if isinstance(f.type, str) else f.type.__name__
            setattr(cfg, f.name, int(raw) if "int" in kind else raw)
        return cfg

    def echo(self) -> str:
        return " ".join(f"{k}={v}" for k, v in asdict(self).items() if v is not None)
