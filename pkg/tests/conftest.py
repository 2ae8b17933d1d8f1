import json
import sys
from pathlib import Path

import pytest


# Корень репозитория в sys.path для локального импорта пакета
REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from flagpos import config  # noqa: E402
from flagpos.utils import set_verbose  # noqa: E402

GOLDEN_DIR = REPO_ROOT / "golden" / "v1"


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch):
    for name in ("FLAGPOS_CONFIG", "FLAGPOS_GOLDEN_DIR", "FLAGPOS_JOBS", "FLAGPOS_SEED", "FLAGPOS_VERBOSE"):
        monkeypatch.delenv(name, raising=False)
    config.reset()
    set_verbose(None)
    yield
    config.reset()
    set_verbose(None)


@pytest.fixture
def golden():
    def load(name):
        return json.loads((GOLDEN_DIR / f"{name}.json").read_text(encoding="utf-8"))

    return load


@pytest.fixture
def settings_file(tmp_path, monkeypatch):
    """Записать flagpos.yml во временный каталог и подключить его через FLAGPOS_CONFIG."""

    def write(text):
        path = tmp_path / "flagpos.yml"
        path.write_text(text, encoding="utf-8")
        monkeypatch.setenv("FLAGPOS_CONFIG", str(path))
        config.reset()
        return path

    return write
