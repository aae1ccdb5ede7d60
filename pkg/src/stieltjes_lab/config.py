"""Run configuration: defaults, ``key = value`` files and grid parsing."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field

from .errors import ConfigError
from .quadrature import QuadraturePolicy
from .stieltjes import EvalGrid

THREADS_ENV = "STIELTJES_LAB_THREADS"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all subcommands.

    ``tolerance`` is the base tolerance of the quadrature-versus-closed-form
    checks; every other check scales its own nominal tolerance by
    ``tolerance / 1e-8``.
    """

    tolerance: float = 1e-8
    re_min: float = -3.0
    re_max: float = 3.0
    step: float = 0.25
    im: tuple = (0.5, 1.0, 2.0)
    budget: int = 2000
    output: str | None = None
    format: str = "csv"
    threads: int | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if not self.step > 0:
            raise ConfigError(f"step must be positive, got {self.step}")
        if self.re_max < self.re_min:
            raise ConfigError("re_max must not be below re_min")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.budget < 16:
            raise ConfigError(f"budget must be at least 16, got {self.budget}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError(f"threads must be positive, got {self.threads}")

    def scaled(self, nominal: float) -> float:
        """Tolerance for a check whose default is ``nominal``."""
        return nominal * self.tolerance / 1e-8

    def grid(self) -> EvalGrid:
        return EvalGrid.rect(self.re_min, self.re_max, self.step, self.im)

    def policy(self) -> QuadraturePolicy:
        return QuadraturePolicy(abscissae_budget=self.budget)

    def workers(self) -> int:
        n = self.threads or os.cpu_count() or 1
        cap = os.environ.get(THREADS_ENV)
        if cap:
            try:
                n = min(n, max(1, int(cap)))
            except ValueError as exc:
                raise ConfigError(f"{THREADS_ENV} must be an integer, got {cap!r}") from exc
        return n


def parse_float_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(t) for t in text.split(","))


def _convert(key: str, raw: str):
    kind = {f.name: f.type for f in dataclasses.fields(RunConfig)}[key]
    if key == "im":
        return parse_float_list(raw)
    if key in ("output", "format"):
        return raw
    if key in ("budget", "threads"):
        return int(raw)
    if "float" in str(kind):
        return float(raw)
    return raw


_KEYS = {f.name for f in dataclasses.fields(RunConfig)}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Raises
    ------
    ConfigError
        With the file, line number and field of the first bad line.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, raw = (t.strip() for t in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown field {key!r}")
            try:
                out[key] = _convert(key, raw)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {raw!r}") from exc
    return out


def build_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then file values, then explicit overrides (``None`` means unset)."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return RunConfig(**merged)


@dataclass(frozen=True)
class GridSpec:
    """Grid text of the form ``re=LO:HI:STEP;im=A,B,...``."""

    re_min: float
    re_max: float
    step: float
    im: tuple = field(default_factory=tuple)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "=" not in chunk:
                raise ConfigError(f"bad grid component {chunk!r}")
            k, v = (t.strip() for t in chunk.split("=", 1))
            parts[k] = v
        try:
            lo, hi, step = (float(t) for t in parts["re"].split(":"))
            ims = parse_float_list(parts.get("im", ""))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"bad grid {text!r}; expected re=LO:HI:STEP;im=A,B") from exc
        if not step > 0 or hi < lo:
            raise ConfigError(f"bad grid range in {text!r}")
        return cls(lo, hi, step, ims)

    def points(self) -> list:
        n = int(round((self.re_max - self.re_min) / self.step))
        xs = [self.re_min + i * self.step for i in range(n + 1)]
        return [complex(x, y) for y in self.im for x in xs]
