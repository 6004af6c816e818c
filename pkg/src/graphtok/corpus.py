"""Corpus ingestion and seeded sampling.

Corpora are newline-delimited UTF-8 plain text, one sentence per line.
Parallel data is one file per language with index alignment.  Files with
invalid UTF-8 are rejected with the offending line number rather than
decoded lossily, so metrics are never computed on mutated text.
"""

from __future__ import annotations

import random
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable


class CorpusError(ValueError):
    pass


def read_lines(path, nfc: bool = False) -> list[str]:
    """Read corpus lines strictly.

    Trailing newlines are stripped; other whitespace is preserved.  ``nfc``
    opts into NFC normalization at ingestion (off by default because
    normalization changes codepoint counts).
    """
    data = Path(path).read_bytes()
    lines: list[str] = []
    for lineno, raw in enumerate(data.split(b"\n"), start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path}: line {lineno}: invalid UTF-8 ({exc.reason})") from exc
        lines.append(line.rstrip("\r"))
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline, not an empty final sentence
    if nfc:
        lines = [unicodedata.normalize("NFC", line) for line in lines]
    return lines


@dataclass
class ParallelCorpus:
    """Line-aligned multilingual sentences, one list per language code."""

    languages: list[str]
    lines: dict[str, list[str]]

    def __post_init__(self) -> None:
        if not self.languages:
            raise CorpusError("parallel corpus needs at least one language")
        counts = {lang: len(self.lines[lang]) for lang in self.languages}
        first = counts[self.languages[0]]
        for lang, n in counts.items():
            if n != first:
                raise CorpusError(
                    f"misaligned parallel corpus: {self.languages[0]} has {first} lines "
                    f"but {lang} has {n}"
                )
        for lang in self.languages:
            for i, line in enumerate(self.lines[lang], start=1):
                if not line:
                    raise CorpusError(f"{lang}: line {i} is empty")

    def __len__(self) -> int:
        return len(self.lines[self.languages[0]])

    @classmethod
    def from_files(cls, paths: dict[str, str], nfc: bool = False) -> "ParallelCorpus":
        langs = list(paths)
        return cls(languages=langs, lines={lang: read_lines(paths[lang], nfc) for lang in langs})


def sample_lines(lines: list[str], n: int, seed: int) -> list[str]:
    """Uniform sample of ``n`` lines without replacement, original order kept.

    Selection sampling over the seeded Mersenne Twister: one pass, taking
    line i with probability (still needed)/(still remaining), which is exact
    and stable across platforms and Python versions.
    """
    total = len(lines)
    if n > total:
        raise CorpusError(f"cannot sample {n} lines from a corpus of {total}")
    rng = random.Random(seed)
    out: list[str] = []
    needed = n
    for i, line in enumerate(lines):
        remaining = total - i
        if needed > 0 and rng.random() * remaining < needed:
            out.append(line)
            needed -= 1
    return out


def corpus_digest(path) -> str:
    import hashlib

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_lines(path, lines: Iterable[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line)
            f.write("\n")
