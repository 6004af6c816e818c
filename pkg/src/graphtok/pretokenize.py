"""Pre-tokenization: split text into chunks before subword training.

Named presets reproduce the main pre-tokenizer families used by public
language models:

``whitespace``
    Split on Unicode whitespace; separators are dropped.  Stands in for the
    sentencepiece-style models (T5/mT5/mBART/NLLB and friends).
``whitespace_punct``
    Whitespace split, then every punctuation or symbol codepoint is isolated
    as its own pre-token (BERT/mBERT behaviour).
``gpt2_regex``
    The GPT-2 pre-tokenization pattern, bit-exact.
``gpt4_llama3_regex``
    The pattern shared by the GPT-4 and Llama 3 tokenizers, bit-exact.
``identity``
    The whole input as one pre-token.

The regex presets tile the input (whitespace runs are matched too), so the
pre-tokens concatenate back to the input exactly.  Whitespace presets drop
separators.  A ``custom_regex`` spec runs a user-supplied pattern the same
way the regex presets do.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

import regex

# Published pattern of the GPT-2 byte-level pre-tokenizer.
GPT2_PATTERN = r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""

# Published pattern shared by the GPT-4 and Llama 3 tokenizers.
GPT4_LLAMA3_PATTERN = r"""(?i:'s|'t|'re|'ve|'m|'ll|'d)|[^\r\n\p{L}\p{N}]?\p{L}+|\p{N}{1,3}| ?[^\s\p{L}\p{N}]+[\r\n]*|\s*[\r\n]+|\s+(?!\S)|\s+"""

WHITESPACE = "whitespace"
WHITESPACE_PUNCT = "whitespace_punct"
GPT2_REGEX = "gpt2_regex"
GPT4_LLAMA3_REGEX = "gpt4_llama3_regex"
IDENTITY = "identity"
CUSTOM_REGEX = "custom_regex"

PRESET_NAMES = (WHITESPACE, WHITESPACE_PUNCT, GPT2_REGEX, GPT4_LLAMA3_REGEX, IDENTITY)

_PRESET_ALIASES = {
    "whitespace": WHITESPACE,
    "whitespace_punct": WHITESPACE_PUNCT,
    "gpt2": GPT2_REGEX,
    "gpt2_regex": GPT2_REGEX,
    "gpt4_llama3": GPT4_LLAMA3_REGEX,
    "gpt4_llama3_regex": GPT4_LLAMA3_REGEX,
    "identity": IDENTITY,
}


@dataclass(frozen=True)
class PreToken:
    """A contiguous chunk of the source text.

    ``start`` and ``end`` are codepoint offsets; ``text`` equals the source
    substring at ``[start, end)`` and is never empty.
    """

    text: str
    start: int
    end: int


@dataclass(frozen=True)
class PretokenizerSpec:
    """Which pre-tokenization rule to apply.

    ``pattern`` is only meaningful for ``custom_regex``; the regex presets
    carry their published patterns implicitly.  ``drops_whitespace`` is
    derived from the kind and says whether separator codepoints are absent
    from the output.
    """

    kind: str
    pattern: str | None = None
    _compiled: object = field(default=None, compare=False, repr=False, init=False)

    def __post_init__(self) -> None:
        if self.kind not in (*PRESET_NAMES, CUSTOM_REGEX):
            raise ValueError(
                f"unknown pretokenizer kind {self.kind!r}; expected one of "
                f"{', '.join((*PRESET_NAMES, CUSTOM_REGEX))}"
            )
        if self.kind == CUSTOM_REGEX:
            if not self.pattern:
                raise ValueError("custom_regex spec requires a pattern")
            object.__setattr__(self, "_compiled", _compile(self.pattern))
        elif self.pattern is not None:
            raise ValueError(f"pattern is only accepted for custom_regex, not {self.kind!r}")
        elif self.kind == GPT2_REGEX:
            object.__setattr__(self, "_compiled", _compile(GPT2_PATTERN))
        elif self.kind == GPT4_LLAMA3_REGEX:
            object.__setattr__(self, "_compiled", _compile(GPT4_LLAMA3_PATTERN))

    @property
    def drops_whitespace(self) -> bool:
        return self.kind in (WHITESPACE, WHITESPACE_PUNCT)

    @property
    def effective_pattern(self) -> str | None:
        """The regex actually run, for regex-based kinds."""
        if self.kind == GPT2_REGEX:
            return GPT2_PATTERN
        if self.kind == GPT4_LLAMA3_REGEX:
            return GPT4_LLAMA3_PATTERN
        if self.kind == CUSTOM_REGEX:
            return self.pattern
        return None


def _compile(pattern: str):
    try:
        return regex.compile(pattern, regex.V1)
    except regex.error as exc:
        raise ValueError(f"cannot compile pre-tokenizer pattern: {exc}") from exc


def preset_spec(name: str) -> PretokenizerSpec:
    """Return the spec for a named preset.

    Accepts the five preset names plus the short aliases ``gpt2`` and
    ``gpt4_llama3``.
    """
    kind = _PRESET_ALIASES.get(name)
    if kind is None:
        raise ValueError(
            f"unknown preset {name!r}; valid presets: "
            + ", ".join(("whitespace", "whitespace_punct", "gpt2", "gpt4_llama3", "identity"))
        )
    return PretokenizerSpec(kind=kind)


_WS_RUN = regex.compile(r"\S+")


def _split_whitespace(text: str) -> list[PreToken]:
    return [PreToken(m.group(), m.start(), m.end()) for m in _WS_RUN.finditer(text)]


def _is_punct_or_symbol(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _split_whitespace_punct(text: str) -> list[PreToken]:
    out: list[PreToken] = []
    for m in _WS_RUN.finditer(text):
        run, base = m.group(), m.start()
        start = 0
        for i, ch in enumerate(run):
            if _is_punct_or_symbol(ch):
                if start < i:
                    out.append(PreToken(run[start:i], base + start, base + i))
                out.append(PreToken(ch, base + i, base + i + 1))
                start = i + 1
        if start < len(run):
            out.append(PreToken(run[start:], base + start, base + len(run)))
    return out


def pretokenize(text: str, spec: PretokenizerSpec) -> list[PreToken]:
    """Split ``text`` into pre-tokens in source order.

    Regex kinds cover every codepoint of the input; whitespace kinds leave
    only whitespace uncovered; ``identity`` returns the whole (non-empty)
    input as a single pre-token.
    """
    if spec.kind == IDENTITY:
        return [PreToken(text, 0, len(text))] if text else []
    if spec.kind == WHITESPACE:
        return _split_whitespace(text)
    if spec.kind == WHITESPACE_PUNCT:
        return _split_whitespace_punct(text)
    compiled = spec._compiled
    return [PreToken(m.group(), m.start(), m.end()) for m in compiled.finditer(text) if m.group()]


def pretoken_texts(text: str, spec: PretokenizerSpec) -> list[str]:
    """Pre-token strings only (hot-path helper)."""
    if spec.kind == IDENTITY:
        return [text] if text else []
    if spec.kind == WHITESPACE:
        return _WS_RUN.findall(text)
    if spec.kind == WHITESPACE_PUNCT:
        return [p.text for p in _split_whitespace_punct(text)]
    return [g for g in spec._compiled.findall(text) if g]


def count_pretokens(text: str, spec: PretokenizerSpec) -> int:
    return len(pretoken_texts(text, spec))
