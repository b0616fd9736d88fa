"""Environment-driven defaults and tagged diagnostics.

Defaults can be overridden through environment variables (optionally loaded
from a ``.env`` file by the CLI) and then by command-line flags:

- ``BORDERED_DCS_TOL``          compatibility tolerance (default 1e-8)
- ``BORDERED_DCS_SEED``         seed for randomized checks (default 42)
- ``BORDERED_DCS_H``            finite-difference step (default 1e-5)
- ``BORDERED_DCS_WORKERS``      faces evaluated in parallel (default 1)
- ``BORDERED_DCS_REPORTS_DIR``  base folder for timestamped reports
- ``BORDERED_DCS_VERBOSE`` / ``BORDERED_DCS_DEBUG``  per-edge/per-face tracing
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Optional


DEFAULT_TOL = 1e-8
DEFAULT_SEED = 42
DEFAULT_H = 1e-5
DEFAULT_REPORTS_DIRNAME = "data_reports"


def _env_flag(name: str) -> bool:
    return (os.getenv(name) or "").strip().lower() in {"1", "true", "yes", "on"}


def _env_float(name: str, default: float, *, positive: bool = True) -> float:
    value = (os.getenv(name) or "").strip()
    if not value:
        return default
    try:
        parsed = float(value)
    except Exception:
        return default
    if positive and not parsed > 0:
        return default
    return parsed


def _env_int(name: str, default: int, *, minimum: int = 0) -> int:
    value = (os.getenv(name) or "").strip()
    if not value:
        return default
    try:
        parsed = int(value)
    except Exception:
        return default
    if parsed < minimum:
        return default
    return parsed


_verbose_override: Optional[bool] = None


def set_verbose(enabled: Optional[bool]) -> None:
    global _verbose_override
    _verbose_override = enabled


def verbose_enabled() -> bool:
    if _verbose_override is not None:
        return _verbose_override
    return _env_flag("BORDERED_DCS_VERBOSE") or _env_flag("BORDERED_DCS_DEBUG")


def log(tag: str, message: str) -> None:
    """Write one ``[tag] message`` diagnostic line to stderr."""
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)


def trace(tag: str, message: str) -> None:
    if verbose_enabled():
        log(tag, message)


@dataclass(frozen=True)
class Settings:
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    h: float = DEFAULT_H
    workers: int = 1
    reports_dir: str = DEFAULT_REPORTS_DIRNAME

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            tol=_env_float("BORDERED_DCS_TOL", DEFAULT_TOL),
            seed=_env_int("BORDERED_DCS_SEED", DEFAULT_SEED),
            h=_env_float("BORDERED_DCS_H", DEFAULT_H),
            workers=_env_int("BORDERED_DCS_WORKERS", 1, minimum=1),
            reports_dir=(os.getenv("BORDERED_DCS_REPORTS_DIR") or "").strip() or DEFAULT_REPORTS_DIRNAME,
        )
