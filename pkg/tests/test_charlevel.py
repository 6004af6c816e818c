import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphtok.charlevel import CharLevelMode, char_detokenize, char_token_count, char_tokenize
from util import fuzz_line

BYTE = CharLevelMode("utf8_byte")
CP = CharLevelMode("codepoint")
GR = CharLevelMode("grapheme")


class TestGoldens:
    def test_ascii_bytes(self):
        assert len(char_tokenize("hi", BYTE)) == 2

    def test_tamil_codepoints(self):
        assert len(char_tokenize("நன்றி", CP)) == 5

    def test_tamil_graphemes(self):
        assert len(char_tokenize("நன்றி", GR)) == 3

    def test_specials_added_per_sequence(self):
        assert char_token_count("hi", CharLevelMode("codepoint", specials_per_sequence=2)) == 4
        assert char_token_count("hi", CharLevelMode("codepoint", specials_per_sequence=1)) == 3

    def test_invalid_mode_and_specials(self):
        with pytest.raises(ValueError):
            CharLevelMode("utf16")
        with pytest.raises(ValueError):
            CharLevelMode("codepoint", specials_per_sequence=3)


class TestInvariants:
    @settings(max_examples=200, deadline=None)
    @given(st.text(max_size=50))
    def test_mode_hierarchy(self, text):
        assert (
            char_token_count(text, BYTE)
            >= char_token_count(text, CP)
            >= char_token_count(text, GR)
        )

    @settings(max_examples=100, deadline=None)
    @given(st.text(alphabet=st.characters(max_codepoint=127), max_size=50))
    def test_ascii_modes_agree(self, text):
        counts = {char_token_count(text, m) for m in (BYTE, CP, GR)}
        assert len(counts) == 1

    def test_lossless_detokenize(self):
        rng = random.Random(3)
        for _ in range(200):
            line = fuzz_line(rng)
            for mode_name in ("utf8_byte", "codepoint", "grapheme"):
                for specials in (0, 1, 2):
                    mode = CharLevelMode(mode_name, specials_per_sequence=specials)
                    tokens = char_tokenize(line, mode)
                    assert len(tokens) == char_token_count(line, mode)
                    assert char_detokenize(tokens) == line
