from __future__ import annotations

from dataclasses import dataclass
import logging
import os
from pathlib import Path


CONFIG_FILE = Path("symdef.conf")
CONFIG_KEYS = (
    "SYMDEF_STORE_PATH",
    "SYMDEF_CACHE",
    "SYMDEF_MAX_PERIOD",
    "SYMDEF_MAX_DEGREE",
    "SYMDEF_WORKERS",
    "SYMDEF_LOG_LEVEL",
)
_BOOLEANS = {"on": True, "true": True, "1": True, "yes": True, "off": False, "false": False, "0": False, "no": False}


@dataclass(frozen=True)
class Settings:
    store_path: Path
    cache_enabled: bool
    max_period: int
    max_degree: int
    workers: int
    log_level: int

    @staticmethod
    def load(path: Path = CONFIG_FILE) -> "Settings":
        values = _load_config_values(path)
        max_period = _int_setting(values, "SYMDEF_MAX_PERIOD", default=6)
        workers = _int_setting(values, "SYMDEF_WORKERS", default=1)
        if max_period < 1:
            raise RuntimeError(f"SYMDEF_MAX_PERIOD must be at least 1, got {max_period}.")
        if workers < 1:
            raise RuntimeError(f"SYMDEF_WORKERS must be at least 1, got {workers}.")
        return Settings(
            store_path=Path(_get_setting(values, "SYMDEF_STORE_PATH", "data/symdef.msgpack").strip() or "data/symdef.msgpack"),
            cache_enabled=_bool_setting(values, "SYMDEF_CACHE", default=True),
            max_period=max_period,
            max_degree=_int_setting(values, "SYMDEF_MAX_DEGREE", default=2),
            workers=workers,
            log_level=_level_setting(values, "SYMDEF_LOG_LEVEL", default="WARNING"),
        )


def _load_config_values(path: Path) -> dict[str, str]:
    values = _parse_config_file(path) if path.exists() else {}
    for key in CONFIG_KEYS:
        env_value = os.getenv(key)
        if env_value is not None:
            values[key] = env_value
    return values


def _get_setting(values: dict[str, str], key: str, default: str) -> str:
    return str(values.get(key, default))


def _int_setting(values: dict[str, str], key: str, *, default: int) -> int:
    raw = _get_setting(values, key, str(default)).strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise RuntimeError(f"{key} must be an integer, got {raw!r}.") from exc
    if value < 0:
        raise RuntimeError(f"{key} must be zero or greater, got {value}.")
    return value


def _bool_setting(values: dict[str, str], key: str, *, default: bool) -> bool:
    raw = _get_setting(values, key, "").strip().lower()
    if not raw:
        return default
    if raw not in _BOOLEANS:
        raise RuntimeError(f"{key} must be on or off, got {raw!r}.")
    return _BOOLEANS[raw]


def _level_setting(values: dict[str, str], key: str, *, default: str) -> int:
    raw = _get_setting(values, key, default).strip().upper() or default
    level = logging.getLevelName(raw)
    if not isinstance(level, int):
        raise RuntimeError(f"{key} must be a logging level name, got {raw!r}.")
    return level


def _parse_config_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw_line in path.read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            continue
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values
