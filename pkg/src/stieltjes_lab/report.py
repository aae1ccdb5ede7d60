"""Residual bookkeeping shared by the identity checks and the CLI."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class VerificationReport:
    """Residual summary of one identity over one parameter set.

    ``passed`` holds exactly when ``max_residual <= tolerance``; a NaN
    residual never passes.
    """

    identity: str
    params: str
    grid_size: int
    max_residual: float
    mean_residual: float
    tolerance: float
    passed: bool
    wall_time: float

    FIELDS = (
        "identity",
        "params",
        "grid_size",
        "max_residual",
        "mean_residual",
        "tolerance",
        "passed",
        "wall_time",
    )

    @classmethod
    def from_residuals(cls, identity, params, residuals, tolerance, started=None):
        r = np.asarray(list(residuals), dtype=float)
        elapsed = 0.0 if started is None else time.perf_counter() - started
        if r.size == 0:
            return cls(identity, params, 0, 0.0, 0.0, tolerance, True, elapsed)
        worst = float(np.max(r)) if not np.isnan(r).any() else math.nan
        mean = float(np.mean(r))
        ok = bool(worst <= tolerance)
        return cls(identity, params, int(r.size), worst, mean, tolerance, ok, elapsed)

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self):
        flag = "PASS" if self.passed else "FAIL"
        return (
            f"{flag} {self.identity} [{self.params}] n={self.grid_size} "
            f"max={self.max_residual:.3e} mean={self.mean_residual:.3e} tol={self.tolerance:.1e}"
        )
