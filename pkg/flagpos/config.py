"""Настройки: переменные окружения, затем необязательный flagpos.yml, затем значения по умолчанию."""

from __future__ import annotations

import os
import pathlib
from functools import lru_cache
from typing import Dict, Optional

from .utils import get_env_int, log_info


_CONFIG_ENV = "FLAGPOS_CONFIG"
_GOLDEN_ENV = "FLAGPOS_GOLDEN_DIR"
_JOBS_ENV = "FLAGPOS_JOBS"
_SEED_ENV = "FLAGPOS_SEED"

_LABEL_CONVENTIONS = ("auto", "untwisted", "twisted")
_DEFAULT_DIMENSION_CAP = 6


def _repo_root() -> pathlib.Path:
    return pathlib.Path(__file__).resolve().parent.parent


@lru_cache(maxsize=1)
def config_path() -> Optional[pathlib.Path]:
    """Путь к YAML-конфигу; None если файла нет."""

    value = os.environ.get(_CONFIG_ENV)
    if value:
        path = pathlib.Path(value).expanduser().resolve()
        if not path.exists():
            raise RuntimeError(f"Config file not found: {path}")
        return path
    default = _repo_root() / "flagpos.yml"
    return default if default.exists() else None


@lru_cache(maxsize=1)
def file_settings() -> Dict[str, object]:
    path = config_path()
    if path is None:
        return {}
    try:
        import yaml  # type: ignore
    except Exception as exc:
        raise RuntimeError("PyYAML is required to read flagpos.yml. Install 'pyyaml'") from exc

    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise RuntimeError(f"{path}: expected a mapping of settings")
    unknown = set(data) - {"jobs", "seed", "golden_dir", "dimension_cap", "label_convention"}
    if unknown:
        raise RuntimeError(f"{path}: unsupported settings {sorted(unknown)}")
    log_info(f"settings loaded from {path}")
    return dict(data)


def _file_int(key: str, default: int) -> int:
    value = file_settings().get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise RuntimeError(f"Setting '{key}' must be an integer, got {value!r}")
    return value


@lru_cache(maxsize=1)
def default_jobs() -> int:
    """Число воркеров по умолчанию для --jobs."""

    value = get_env_int(_JOBS_ENV)
    if value is None:
        value = _file_int("jobs", 1)
    if value < 1:
        raise RuntimeError(f"jobs must be >= 1, got {value}")
    return value


@lru_cache(maxsize=1)
def default_seed() -> int:
    value = get_env_int(_SEED_ENV)
    return value if value is not None else _file_int("seed", 0)


@lru_cache(maxsize=1)
def golden_dir() -> pathlib.Path:
    """Directory with versioned golden files."""

    value = os.environ.get(_GOLDEN_ENV) or file_settings().get("golden_dir")
    if value:
        path = pathlib.Path(str(value)).expanduser()
        if not path.is_absolute() and config_path() is not None:
            path = config_path().parent / path
        return path.resolve()
    return (_repo_root() / "golden" / "v1").resolve()


@lru_cache(maxsize=1)
def dimension_cap() -> int:
    return _file_int("dimension_cap", _DEFAULT_DIMENSION_CAP)


@lru_cache(maxsize=1)
def label_convention() -> str:
    value = str(file_settings().get("label_convention", "auto"))
    if value not in _LABEL_CONVENTIONS:
        raise RuntimeError(f"label_convention must be one of {_LABEL_CONVENTIONS}, got {value!r}")
    return value


def reset() -> None:
    """Сбросить кэши (тесты меняют окружение через monkeypatch)."""

    for fn in (config_path, file_settings, default_jobs, default_seed, golden_dir, dimension_cap, label_convention):
        fn.cache_clear()


__all__ = [
    "config_path",
    "file_settings",
    "default_jobs",
    "default_seed",
    "golden_dir",
    "dimension_cap",
    "label_convention",
    "reset",
]
