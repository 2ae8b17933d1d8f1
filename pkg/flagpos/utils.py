#!/usr/bin/env python3
from __future__ import annotations

import os
import sys
from typing import Optional


_verbose_override: Optional[bool] = None


def set_verbose(flag: Optional[bool]) -> None:
    """Включить/выключить информационные логи (None -- вернуться к FLAGPOS_VERBOSE)."""
    global _verbose_override
    _verbose_override = flag


def is_verbose() -> bool:
    if _verbose_override is not None:
        return _verbose_override
    return get_env_bool("FLAGPOS_VERBOSE", False)


def log_info(msg: str) -> None:
    """Логирование информационных сообщений (только в verbose-режиме)."""
    if is_verbose():
        print(f"[INFO] {msg}", file=sys.stderr)


def log_warn(msg: str) -> None:
    """Логирование предупреждений."""
    print(f"[WARN] {msg}", file=sys.stderr)


def log_error(msg: str) -> None:
    """Логирование ошибок."""
    print(f"[ERROR] {msg}", file=sys.stderr)


def get_env_bool(name: str, default: bool = False) -> bool:
    """
    Получить булево значение из переменной окружения.

    Args:
        name: Имя переменной окружения
        default: Значение по умолчанию

    Returns:
        Булево значение
    """
    val = os.environ.get(name)
    if val is None:
        return default
    return str(val).strip().lower() in {"1", "true", "yes", "on"}


def get_env_int(name: str, default: Optional[int] = None) -> Optional[int]:
    """
    Получить целое значение из переменной окружения.

    Raises:
        ValueError: Если значение не является целым числом
    """
    val = os.environ.get(name)
    if val is None or not val.strip():
        return default
    try:
        return int(val.strip())
    except ValueError as exc:
        raise ValueError(f"{name} must be an integer, got {val!r}") from exc
