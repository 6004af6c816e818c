"""Extended grapheme cluster segmentation with an abugida-friendly tailoring.

Two segmentation policies are provided:

``extended_default``
    The standard extended-grapheme-cluster boundary rules, *without* the
    newer Indic-conjunct joining: a virama stays attached to the consonant
    before it, but a break is still allowed between a virama and a following
    consonant (so Devanagari "धन्यवाद" splits as ध | न् | य | वा | द).

``extended_abugida_tailored``
    ``extended_default`` plus one extra rule: never break between a
    zero-width joiner (U+200D) and an immediately following letter of the
    same South/Southeast Asian script block.  This keeps Sinhala conjuncts
    such as ක + ් + ZWJ + ර + ී together as one cluster.

The boundary engine is a single left-to-right scan over Grapheme_Cluster_Break
classes (see :mod:`graphtok.unicode_data`); Hangul syllables AC00..D7A3 are
classified arithmetically.
"""

from __future__ import annotations

import unicodedata
from bisect import bisect_right
from dataclasses import dataclass

from .unicode_data import (
    EXTPICT_ENDS,
    EXTPICT_STARTS,
    GCB_CONTROL,
    GCB_CR,
    GCB_EXTEND,
    GCB_L,
    GCB_LF,
    GCB_LV,
    GCB_LVT,
    GCB_OTHER,
    GCB_PREPEND,
    GCB_RANGE_CLASSES,
    GCB_RANGE_ENDS,
    GCB_RANGE_STARTS,
    GCB_REGIONAL_INDICATOR,
    GCB_SPACINGMARK,
    GCB_T,
    GCB_V,
    GCB_ZWJ,
)

EXTENDED_DEFAULT = "extended_default"
EXTENDED_ABUGIDA_TAILORED = "extended_abugida_tailored"

_HANGUL_S_START = 0xAC00
_HANGUL_S_END = 0xD7A3
_ZWJ = 0x200D

# Block ranges eligible for the ZWJ tailoring: the nine Indic scripts plus
# Sinhala (U+0900..U+0DFF are contiguous blocks), Thai, Lao, Myanmar, Khmer.
_SOUTH_SEA_BLOCKS = (
    (0x0900, 0x0DFF),
    (0x0E00, 0x0EFF),
    (0x1000, 0x109F),
    (0x1780, 0x17FF),
)

_gcb_cache: dict[int, int] = {}


def _gcb_class(cp: int) -> int:
    cls = _gcb_cache.get(cp)
    if cls is None:
        if _HANGUL_S_START <= cp <= _HANGUL_S_END:
            cls = GCB_LV if (cp - _HANGUL_S_START) % 28 == 0 else GCB_LVT
        else:
            i = bisect_right(GCB_RANGE_STARTS, cp) - 1
            if i >= 0 and cp <= GCB_RANGE_ENDS[i]:
                cls = GCB_RANGE_CLASSES[i]
            else:
                cls = GCB_OTHER
        _gcb_cache[cp] = cls
    return cls


def _is_extpict(cp: int) -> bool:
    i = bisect_right(EXTPICT_STARTS, cp) - 1
    return i >= 0 and cp <= EXTPICT_ENDS[i]


def _sea_block(cp: int) -> tuple[int, int] | None:
    for lo, hi in _SOUTH_SEA_BLOCKS:
        if lo <= cp <= hi:
            return (lo, hi)
    return None


@dataclass(frozen=True)
class SegmentationPolicy:
    """Which grapheme boundary rule set to apply."""

    mode: str = EXTENDED_ABUGIDA_TAILORED

    def __post_init__(self) -> None:
        if self.mode not in (EXTENDED_DEFAULT, EXTENDED_ABUGIDA_TAILORED):
            raise ValueError(
                f"unknown segmentation mode {self.mode!r}; expected "
                f"{EXTENDED_DEFAULT!r} or {EXTENDED_ABUGIDA_TAILORED!r}"
            )

    @property
    def tailored(self) -> bool:
        return self.mode == EXTENDED_ABUGIDA_TAILORED


DEFAULT_POLICY = SegmentationPolicy(EXTENDED_ABUGIDA_TAILORED)


@dataclass(frozen=True)
class GraphemeSegmentation:
    """Ordered grapheme clusters of a text with codepoint spans.

    ``clusters`` is a list of ``(text, start, end)`` triples whose spans are
    disjoint, sorted, and tile ``[0, len(source))``; concatenating the texts
    reproduces the source exactly.
    """

    clusters: tuple[tuple[str, int, int], ...]
    policy: SegmentationPolicy

    def texts(self) -> list[str]:
        return [c[0] for c in self.clusters]

    def __len__(self) -> int:
        return len(self.clusters)


def grapheme_breaks(text: str, tailored: bool) -> list[int]:
    """Return cluster start offsets of ``text`` (plus the final offset).

    Empty text yields ``[0]``.
    """
    n = len(text)
    breaks = [0]
    if n == 0:
        return breaks
    cls = _gcb_class
    prev_cp = ord(text[0])
    prev = cls(prev_cp)
    ri_run = 1 if prev == GCB_REGIONAL_INDICATOR else 0
    # True when the text immediately before the current position matches
    # Extended_Pictographic Extend* ZWJ (the GB11 left-hand side).
    pict_pending = _is_extpict(prev_cp)
    pict_at_zwj = False
    for i in range(1, n):
        cp = ord(text[i])
        cur = cls(cp)
        if prev == GCB_CR and cur == GCB_LF:
            brk = False
        elif prev in (GCB_CONTROL, GCB_CR, GCB_LF) or cur in (GCB_CONTROL, GCB_CR, GCB_LF):
            brk = True
        elif prev == GCB_L and cur in (GCB_L, GCB_V, GCB_LV, GCB_LVT):
            brk = False
        elif prev in (GCB_LV, GCB_V) and cur in (GCB_V, GCB_T):
            brk = False
        elif prev in (GCB_LVT, GCB_T) and cur == GCB_T:
            brk = False
        elif cur in (GCB_EXTEND, GCB_ZWJ) or cur == GCB_SPACINGMARK:
            brk = False
        elif prev == GCB_PREPEND:
            brk = False
        elif prev == GCB_ZWJ and pict_at_zwj and _is_extpict(cp):
            brk = False
        elif (
            tailored
            and prev == GCB_ZWJ
            and i >= 2
            and unicodedata.category(text[i]).startswith("L")
            and (block := _sea_block(cp)) is not None
            and _sea_block(ord(text[i - 2])) == block
        ):
            brk = False
        elif prev == GCB_REGIONAL_INDICATOR and cur == GCB_REGIONAL_INDICATOR and ri_run % 2 == 1:
            brk = False
        else:
            brk = True
        if brk:
            breaks.append(i)

        ri_run = ri_run + 1 if cur == GCB_REGIONAL_INDICATOR else 0
        if cur == GCB_ZWJ:
            pict_at_zwj = pict_pending
            pict_pending = False
        elif _is_extpict(cp):
            pict_pending = True
            pict_at_zwj = False
        elif cur == GCB_EXTEND:
            pict_at_zwj = False
            # pict_pending survives Extend (GB11 allows Extend* before ZWJ)
        else:
            pict_pending = False
            pict_at_zwj = False
        prev = cur
    breaks.append(n)
    return breaks


def iter_grapheme_strings(text: str, policy: SegmentationPolicy = DEFAULT_POLICY) -> list[str]:
    """Cluster texts only, without span bookkeeping (hot-path helper)."""
    breaks = grapheme_breaks(text, policy.tailored)
    return [text[breaks[i] : breaks[i + 1]] for i in range(len(breaks) - 1)]


def segment_graphemes(text: str, policy: SegmentationPolicy = DEFAULT_POLICY) -> GraphemeSegmentation:
    """Split ``text`` into extended grapheme clusters under ``policy``."""
    breaks = grapheme_breaks(text, policy.tailored)
    clusters = tuple(
        (text[breaks[i] : breaks[i + 1]], breaks[i], breaks[i + 1])
        for i in range(len(breaks) - 1)
    )
    return GraphemeSegmentation(clusters=clusters, policy=policy)


def count_graphemes(text: str, policy: SegmentationPolicy = DEFAULT_POLICY) -> int:
    return len(grapheme_breaks(text, policy.tailored)) - 1


def count_codepoints(text: str) -> int:
    """Number of Unicode scalar values in ``text``."""
    return len(text)


def utf8_byte_length(text: str) -> int:
    """Length of the UTF-8 encoding of ``text`` in bytes."""
    return len(text.encode("utf-8"))
