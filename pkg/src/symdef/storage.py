from __future__ import annotations

import copy
from pathlib import Path
import time
from typing import Any

import msgpack


STORE_VERSION = 1

DEFAULT_STORE: dict[str, Any] = {
    "meta": {"version": STORE_VERSION},
    "sequences": {},
    "logs": [],
}


class StoreResetError(RuntimeError):
    """The store file could not be used and was replaced by the defaults."""

    def __init__(self, reason: str, backup: Path) -> None:
        super().__init__(f"{reason} Corrupt copy: {backup}")
        self.backup = backup


class MessagePackStore:
    """Result cache: `sequences` maps a cache key to {str(n): value}.

    A missing file loads as the defaults and is only written once something
    marks the store dirty, so read-only runs leave the disk alone.
    """

    def __init__(self, path: Path) -> None:
        self.path = path
        self._dirty = False
        self.data: dict[str, Any] = {}

    @property
    def dirty(self) -> bool:
        return self._dirty

    def load(self) -> None:
        if not self.path.exists():
            self.use_defaults()
            return
        raw = self.path.read_bytes()
        try:
            loaded = msgpack.unpackb(raw, raw=False, strict_map_key=False)
        except (msgpack.UnpackException, ValueError) as exc:
            raise self._reset(raw, "Store file was unreadable and was reset.") from exc
        if not isinstance(loaded, dict):
            raise self._reset(raw, "Store root was not a mapping and was reset.")
        self.data = loaded
        if _fill_missing(self.data, DEFAULT_STORE):
            self._dirty = True

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        staged = self.path.with_suffix(self.path.suffix + ".tmp")
        staged.write_bytes(msgpack.packb(self.data, use_bin_type=True))
        staged.replace(self.path)
        self._dirty = False

    def save_if_dirty(self) -> bool:
        if not self._dirty:
            return False
        self.save()
        return True

    def touch(self) -> None:
        self._dirty = True

    def use_defaults(self) -> None:
        """Fresh in-memory defaults; nothing is read or written."""
        self.data = copy.deepcopy(DEFAULT_STORE)
        self._dirty = False

    def cached_sequence(self, key: str) -> dict[str, int]:
        return self.data["sequences"].setdefault(key, {})

    def _reset(self, raw: bytes, reason: str) -> StoreResetError:
        backup = _free_backup_path(self.path)
        backup.write_bytes(raw)
        self.use_defaults()
        self.save()
        return StoreResetError(reason, backup)


def _free_backup_path(path: Path) -> Path:
    stamp = time.strftime("%Y%m%d-%H%M%S")
    candidate = path.with_name(f"{path.name}.corrupt-{stamp}")
    suffix = 1
    while candidate.exists():
        suffix += 1
        candidate = path.with_name(f"{path.name}.corrupt-{stamp}-{suffix}")
    return candidate


def _fill_missing(target: dict[str, Any], defaults: dict[str, Any]) -> bool:
    """Add default keys recursively; a value of the wrong container type is replaced."""
    changed = False
    for key, default in defaults.items():
        current = target.get(key)
        if key not in target or (isinstance(default, (dict, list)) and not isinstance(current, type(default))):
            target[key] = copy.deepcopy(default)
            changed = True
        elif isinstance(default, dict):
            changed = _fill_missing(current, default) or changed
    return changed
