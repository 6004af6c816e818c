"""Shared test helpers: fuzz-text generation and independent oracles."""

from __future__ import annotations

import random
import unicodedata

# Mixed-script character pools for fuzz corpora.
ASCII = "abcdefghij XYZ.,!?'0123456789"
TAMIL = "அஆஇகஙசடணதநபமயரலவழளறனஜஷஸஹ்ாிீுெேோ"
SINHALA = "අආඉකගඟචජඤටඩණතදනපබමඹයරලවශෂසහළෆ්ාැිුෙොෟ"
DEVANAGARI = "अआइकखगघङचछजझटठडढणतथदधनपफबभमयरलवशषसह्ािीुेो"
CJK = "中文字漢語日本語한국어"
EMOJI = ["😀", "🦄", "👍🏽", "👩‍👩‍👧", "🇺🇸", "✨"]
SINHALA_ZWJ = ["ක්‍ර", "ශ්‍ර", "ක්‍ව"]

POOLS = [ASCII, TAMIL, SINHALA, DEVANAGARI, CJK]


def fuzz_line(rng: random.Random, min_len: int = 1, max_len: int = 40) -> str:
    out: list[str] = []
    n = rng.randint(min_len, max_len)
    while len(out) < n:
        roll = rng.random()
        if roll < 0.80:
            pool = POOLS[rng.randrange(len(POOLS))]
            out.append(pool[rng.randrange(len(pool))])
        elif roll < 0.88:
            out.append(" ")
        elif roll < 0.94:
            out.append(rng.choice(EMOJI))
        else:
            out.append(rng.choice(SINHALA_ZWJ))
    line = "".join(out).strip()
    return line or "x"


def fuzz_corpus(rng: random.Random, lines: int = 16) -> list[str]:
    # duplication keeps pair counts above the merge threshold
    base = [fuzz_line(rng) for _ in range(lines)]
    return base + base[: max(1, lines // 2)]


def codepoint_count_oracle(text: str) -> int:
    """Independent codepoint dumper: fixed-width UTF-32 re-encoding."""
    return len(text.encode("utf-32-le")) // 4


def gpt2_split_oracle(text: str) -> list[str]:
    """Category-scan re-derivation of the GPT-2 pre-tokenizer pattern.

    Implements the published alternation by hand over unicodedata categories
    (letters %L, numbers %N, whitespace, other), including the optional
    leading space and the trailing-whitespace lookahead, without any regex
    engine.  Used to cross-check the compiled pattern.
    """
    def is_l(ch: str) -> bool:
        return unicodedata.category(ch).startswith("L")

    def is_n(ch: str) -> bool:
        return unicodedata.category(ch).startswith("N")

    def is_s(ch: str) -> bool:
        # regex \s over the BMP-ish test pools: Unicode whitespace
        return ch.isspace()

    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        # contractions: 's 't 're 've 'm 'll 'd (case-sensitive)
        for c in ("'s", "'t", "'re", "'ve", "'m", "'ll", "'d"):
            if text.startswith(c, i):
                out.append(c)
                i += len(c)
                break
        else:
            start = i
            j = i + 1 if text[i] == " " else i
            if j < n and is_l(text[j]):
                while j < n and is_l(text[j]):
                    j += 1
                out.append(text[start:j])
                i = j
            elif j < n and is_n(text[j]):
                while j < n and is_n(text[j]):
                    j += 1
                out.append(text[start:j])
                i = j
            elif j < n and not is_s(text[j]):
                while j < n and not is_s(text[j]) and not is_l(text[j]) and not is_n(text[j]):
                    j += 1
                out.append(text[start:j])
                i = j
            elif is_s(text[i]):
                j = i
                while j < n and is_s(text[j]):
                    j += 1
                if j < n and j - i > 1:
                    # \s+(?!\S) backs off one space before a non-space
                    out.append(text[i : j - 1])
                    i = j - 1
                else:
                    out.append(text[i:j])
                    i = j
            else:
                # leading space followed by space: handled by the \s branch
                out.append(text[i])
                i += 1
    return out
