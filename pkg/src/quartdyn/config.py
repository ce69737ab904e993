"""Plain-text configuration files: lines of "key = value", '#' comments.

Recognised keys: viewport (4 reals: xmin xmax ymin ymax), resolution
(2 integers), max_iter, period_max, bailout_constant, output_path.
Unknown keys are rejected; command-line flags override file values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

from .errors import ConfigError
from .grid import GridSpec


@dataclass(frozen=True)
class Config:
    viewport: Tuple[float, float, float, float] = (-3.0, 3.0, -2.0, 2.0)
    resolution: Tuple[int, int] = (512, 512)
    max_iter: int = 800
    period_max: int = 14
    bailout_constant: float = 10.0
    output_path: str = "out.ppm"

    def grid_spec(self) -> GridSpec:
        xmin, xmax, ymin, ymax = self.viewport
        if not (xmax > xmin and ymax > ymin):
            raise ConfigError("viewport must satisfy xmin < xmax and ymin < ymax")
        center = complex((xmin + xmax) / 2.0, (ymin + ymax) / 2.0)
        return GridSpec(center, xmax - xmin, ymax - ymin, *self.resolution)


def _parse_reals(value: str, n: int, key: str):
    parts = value.replace(",", " ").split()
    if len(parts) != n:
        raise ConfigError(f"key '{key}' needs {n} values, got {len(parts)}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"key '{key}': {exc}") from exc


def _parse_ints(value: str, n: int, key: str):
    reals = _parse_reals(value, n, key)
    out = tuple(int(r) for r in reals)
    if any(o != r for o, r in zip(out, reals)):
        raise ConfigError(f"key '{key}' needs integers")
    return out


def parse_config(path: str, base: Optional[Config] = None) -> Config:
    cfg = base or Config()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "viewport":
            cfg = replace(cfg, viewport=_parse_reals(value, 4, key))
        elif key == "resolution":
            cfg = replace(cfg, resolution=_parse_ints(value, 2, key))
        elif key == "max_iter":
            cfg = replace(cfg, max_iter=_parse_ints(value, 1, key)[0])
        elif key == "period_max":
            cfg = replace(cfg, period_max=_parse_ints(value, 1, key)[0])
        elif key == "bailout_constant":
            cfg = replace(cfg, bailout_constant=_parse_reals(value, 1, key)[0])
        elif key == "output_path":
            cfg = replace(cfg, output_path=value)
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg
