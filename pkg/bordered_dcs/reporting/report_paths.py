from __future__ import annotations

from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from bordered_dcs.settings import DEFAULT_REPORTS_DIRNAME


def _timestamp_folder_name(now: Optional[datetime] = None) -> str:
    return (now or datetime.now()).strftime("%Y%m%d_%H%M%S")


def ensure_timestamped_report_dir(
    base_dir: Union[str, Path] = DEFAULT_REPORTS_DIRNAME,
    *,
    now: Optional[datetime] = None,
) -> Path:
    """Create and return ``<base_dir>/<YYYYMMDD_HHMMSS>/`` as an absolute path."""

    base = Path(base_dir).expanduser()
    out_dir = base / _timestamp_folder_name(now)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir.resolve()


def default_report_path(
    subcommand: str,
    *,
    suffix: str = ".json",
    base_dir: Union[str, Path] = DEFAULT_REPORTS_DIRNAME,
    now: Optional[datetime] = None,
) -> Path:
    """Report file for one subcommand under a new timestamped directory."""

    if not suffix.startswith("."):
        suffix = f".{suffix}"
    out_dir = ensure_timestamped_report_dir(base_dir, now=now)
    return out_dir / f"{subcommand}{suffix}"
