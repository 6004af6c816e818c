"""Character-level tokenizers: UTF-8 bytes, codepoints, or grapheme clusters.

These are the tokenizer-free baselines: byte tokens count the UTF-8
encoding, codepoint tokens count Unicode scalar values, and grapheme tokens
count user-perceived characters.  ``specials_per_sequence`` adds that many
synthetic per-sequence markers to the token count, mirroring reference
tokenizers that wrap every sentence in start/end tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from .segmentation import (
    DEFAULT_POLICY,
    SegmentationPolicy,
    count_graphemes,
    iter_grapheme_strings,
)

UTF8_BYTE = "utf8_byte"
CODEPOINT = "codepoint"
GRAPHEME = "grapheme"
CHAR_MODES = (UTF8_BYTE, CODEPOINT, GRAPHEME)

SEQUENCE_START = "<s>"
SEQUENCE_END = "</s>"


@dataclass(frozen=True)
class CharLevelMode:
    mode: str
    policy: SegmentationPolicy = DEFAULT_POLICY
    specials_per_sequence: int = 0

    def __post_init__(self) -> None:
        if self.mode not in CHAR_MODES:
            raise ValueError(f"unknown char-level mode {self.mode!r}; expected one of {CHAR_MODES}")
        if self.specials_per_sequence not in (0, 1, 2):
            raise ValueError("specials_per_sequence must be 0, 1, or 2")


def char_tokenize(text: str, mode: CharLevelMode) -> list:
    """Tokenize ``text``; byte tokens are ``bytes`` of length one.

    With ``specials_per_sequence`` 1 an end marker is appended; with 2 a
    start marker is prepended as well.
    """
    if mode.mode == UTF8_BYTE:
        enc = text.encode("utf-8")
        tokens: list = [enc[i : i + 1] for i in range(len(enc))]
    elif mode.mode == CODEPOINT:
        tokens = list(text)
    else:
        tokens = list(iter_grapheme_strings(text, mode.policy))
    if mode.specials_per_sequence == 2:
        tokens.insert(0, SEQUENCE_START)
    if mode.specials_per_sequence >= 1:
        tokens.append(SEQUENCE_END)
    return tokens


def char_detokenize(tokens: list) -> str:
    """Reassemble tokens to text, dropping the sequence markers."""
    parts: list[str] = []
    buf = bytearray()
    for tok in tokens:
        if isinstance(tok, bytes):
            buf.extend(tok)
            continue
        if buf:
            parts.append(bytes(buf).decode("utf-8"))
            buf.clear()
        if tok in (SEQUENCE_START, SEQUENCE_END):
            continue
        parts.append(tok)
    if buf:
        parts.append(bytes(buf).decode("utf-8"))
    return "".join(parts)


def char_token_count(text: str, mode: CharLevelMode) -> int:
    """Token count without materializing the tokens."""
    if mode.mode == UTF8_BYTE:
        n = len(text.encode("utf-8"))
    elif mode.mode == CODEPOINT:
        n = len(text)
    else:
        n = count_graphemes(text, mode.policy)
    return n + mode.specials_per_sequence
