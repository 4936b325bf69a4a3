import importlib.util
from pathlib import Path

import pytest

from idp.verify import default_golden_dir, golden_render

GOLDEN = default_golden_dir()
FILES = sorted(p.name for p in GOLDEN.glob("*.txt"))


def _transcription():
    path = Path(__file__).resolve().parents[1] / "scripts" / "make_golden.py"
    spec = importlib.util.spec_from_file_location("make_golden", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod.golden_files()


def test_golden_set_is_complete():
    assert len(FILES) == 4 * 3 * 4 + 6 + 5


@pytest.mark.parametrize("name", FILES)
def test_engine_matches_golden(name):
    assert golden_render(name) == (GOLDEN / name).read_text()


def test_transcription_matches_files():
    files = _transcription()
    assert sorted(files) == FILES
    for name, text in files.items():
        assert (GOLDEN / name).read_text() == text


def test_unknown_name():
    assert golden_render("nonsense.txt") is None
