from __future__ import annotations

from pathlib import Path
import sys

import pytest


ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))


@pytest.fixture
def workspace(tmp_path: Path, monkeypatch) -> Path:
    """Run from an empty directory with no SYMDEF_* variables set."""
    from symdef.config import CONFIG_KEYS

    monkeypatch.chdir(tmp_path)
    for key in CONFIG_KEYS:
        monkeypatch.delenv(key, raising=False)
    return tmp_path
