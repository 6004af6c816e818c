import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtok.segmentation import (
    DEFAULT_POLICY,
    GraphemeSegmentation,
    SegmentationPolicy,
    count_codepoints,
    iter_grapheme_strings,
    segment_graphemes,
    utf8_byte_length,
)
from util import codepoint_count_oracle

DEFAULT = SegmentationPolicy("extended_default")
TAILORED = SegmentationPolicy("extended_abugida_tailored")

# ක + ් + ZWJ + ර + ී: five codepoints, one user-perceived Sinhala conjunct
SINHALA_ZWJ = "ක්‍රී"


class TestGoldens:
    def test_ascii_single_letters(self):
        assert segment_graphemes("hello", TAILORED).texts() == ["h", "e", "l", "l", "o"]

    def test_tamil_thank_you(self):
        # 5 codepoints, 3 perceived characters; the pulli binds backward
        seg = segment_graphemes("நன்றி", TAILORED)
        assert seg.texts() == ["ந", "ன்", "றி"]
        assert count_codepoints("நன்றி") == 5

    def test_hindi_thank_you(self):
        # virama binds backward only: न् stays separate from य
        seg = segment_graphemes("धन्यवाद", TAILORED)
        assert seg.texts() == ["ध", "न्", "य", "वा", "द"]
        assert count_codepoints("धन्यवाद") == 7

    def test_sinhala_thank_you(self):
        assert len(segment_graphemes("ස්තූතියි", TAILORED)) == 4
        assert count_codepoints("ස්තූතියි") == 8

    def test_sinhala_zwj_conjunct_single_cluster_when_tailored(self):
        assert count_codepoints(SINHALA_ZWJ) == 5
        assert segment_graphemes(SINHALA_ZWJ, TAILORED).texts() == [SINHALA_ZWJ]
        # the default rules break after the joiner
        assert len(segment_graphemes(SINHALA_ZWJ, DEFAULT)) == 2

    def test_zwj_tailoring_needs_matching_script_block(self):
        # joiner followed by a Latin letter still breaks under both policies
        text = "ක්‍x"
        assert len(segment_graphemes(text, TAILORED)) == 2
        assert len(segment_graphemes(text, DEFAULT)) == 2

    def test_emoji_and_flags(self):
        assert segment_graphemes("👩‍👩‍👧", TAILORED).texts() == ["👩‍👩‍👧"]
        assert segment_graphemes("🇺🇸🇫🇷", TAILORED).texts() == ["🇺🇸", "🇫🇷"]

    def test_crlf_and_hangul(self):
        assert segment_graphemes("a\r\nb", DEFAULT).texts() == ["a", "\r\n", "b"]
        assert segment_graphemes("한국", DEFAULT).texts() == ["한", "국"]

    def test_empty_text(self):
        seg = segment_graphemes("", TAILORED)
        assert seg.clusters == ()


class TestCounts:
    @pytest.mark.parametrize("text,expected", [("", 0), ("hi", 2), ("நன்றி", 5)])
    def test_count_codepoints(self, text, expected):
        assert count_codepoints(text) == expected
        assert count_codepoints(text) == codepoint_count_oracle(text)

    @pytest.mark.parametrize("text,expected", [("hi", 2), ("த", 3), ("", 0)])
    def test_utf8_byte_length(self, text, expected):
        assert utf8_byte_length(text) == expected

    def test_byte_length_dominates_codepoints(self):
        for text in ("ঀ", "hello", "நன்றி", "👍🏽"):
            assert utf8_byte_length(text) >= count_codepoints(text)


def _policy_pair():
    return (DEFAULT, TAILORED)


class TestInvariants:
    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=60))
    def test_concatenation_identity(self, text):
        for policy in _policy_pair():
            seg = segment_graphemes(text, policy)
            assert "".join(seg.texts()) == text

    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=60))
    def test_spans_tile_the_text(self, text):
        for policy in _policy_pair():
            seg = segment_graphemes(text, policy)
            pos = 0
            for cluster, start, end in seg.clusters:
                assert start == pos and end > start
                assert text[start:end] == cluster
                pos = end
            assert pos == len(text)

    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=60))
    def test_tailoring_only_coarsens(self, text):
        default_breaks = {start for _, start, _ in segment_graphemes(text, DEFAULT).clusters}
        tailored_breaks = {start for _, start, _ in segment_graphemes(text, TAILORED).clusters}
        assert tailored_breaks <= default_breaks

    @settings(max_examples=200, deadline=None)
    @given(st.text(max_size=60))
    def test_codepoint_count_additivity(self, text):
        seg = segment_graphemes(text, TAILORED)
        assert count_codepoints(text) == sum(count_codepoints(c) for c in seg.texts())

    @settings(max_examples=200, deadline=None)
    @given(st.text(max_size=60))
    def test_unit_hierarchy(self, text):
        for policy in _policy_pair():
            clusters = len(segment_graphemes(text, policy))
            assert utf8_byte_length(text) >= count_codepoints(text) >= clusters

    @settings(max_examples=200, deadline=None)
    @given(st.text(min_size=1, max_size=40))
    def test_idempotence(self, text):
        for policy in _policy_pair():
            for cluster in iter_grapheme_strings(text, policy):
                assert iter_grapheme_strings(cluster, policy) == [cluster]


def test_unknown_policy_rejected():
    with pytest.raises(ValueError):
        SegmentationPolicy("locale_tailored")


def test_default_policy_is_tailored():
    assert DEFAULT_POLICY.tailored
    assert isinstance(segment_graphemes("x"), GraphemeSegmentation)
