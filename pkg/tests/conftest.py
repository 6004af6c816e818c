import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # tests/util.py

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = Path(os.environ.get("GRAPHTOK_DATA", REPO_ROOT / "data"))

FLORES_CODES = {"en": "eng_Latn", "ta": "tam_Taml", "si": "sin_Sinh", "hi": "hin_Deva"}


def find_flores_files() -> dict[str, Path] | None:
    """FLORES+ dev files for en/ta/si/hi under $GRAPHTOK_DATA/flores, if present."""
    base = DATA_DIR / "flores"
    out: dict[str, Path] = {}
    for code, flores in FLORES_CODES.items():
        for cand in (
            base / "dev" / f"{flores}.dev",
            base / f"{flores}.dev",
            base / f"{code}.dev",
            base / f"dev.{code}",
            base / f"{code}.txt",
        ):
            if cand.is_file():
                out[code] = cand
                break
        else:
            return None
    return out


def find_samanantar_ta() -> Path | None:
    env = os.environ.get("GRAPHTOK_SAMANANTAR_TA")
    if env and Path(env).is_file():
        return Path(env)
    for cand in (DATA_DIR / "samanantar.ta.txt", DATA_DIR / "samanantar" / "ta.txt"):
        if cand.is_file():
            return cand
    return None


@pytest.fixture(scope="session")
def flores():
    files = find_flores_files()
    if files is None:
        pytest.skip(
            "FLORES+ dev data not found (set GRAPHTOK_DATA or place files under "
            f"{DATA_DIR / 'flores'}; see README)"
        )
    from graphtok.corpus import ParallelCorpus

    return ParallelCorpus.from_files({c: str(p) for c, p in files.items()})


@pytest.fixture(scope="session")
def samanantar_ta():
    path = find_samanantar_ta()
    if path is None:
        pytest.skip(
            "Samanantar Tamil corpus not found (set GRAPHTOK_SAMANANTAR_TA or place "
            f"it at {DATA_DIR / 'samanantar.ta.txt'}; see README)"
        )
    from graphtok.corpus import read_lines

    return read_lines(path)
