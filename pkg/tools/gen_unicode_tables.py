#!/usr/bin/env python3
"""Regenerate src/graphtok/unicode_data.py from the regex module's Unicode tables.

Run from the repository root:

    python tools/gen_unicode_tables.py

The output module holds compressed codepoint ranges for the
Grapheme_Cluster_Break property and for Extended_Pictographic.  The Hangul
syllable block (AC00..D7A3) is excluded from the tables because its LV/LVT
classes are computed arithmetically at runtime.
"""

import sys
from datetime import date, timezone, datetime

import regex

GCB_CLASSES = [
    # (name, constant) -- order defines the numeric class ids.
    "CR",
    "LF",
    "Control",
    "Extend",
    "ZWJ",
    "Regional_Indicator",
    "Prepend",
    "SpacingMark",
    "L",
    "V",
    "T",
    "LV",
    "LVT",
]

HANGUL_SYLLABLE_START = 0xAC00
HANGUL_SYLLABLE_END = 0xD7A3

# Two contiguous scalar-value stretches, skipping the surrogate gap.
PLANES = [(0x0000, 0xD7FF), (0xE000, 0x10FFFF)]


def property_ranges(pattern: str) -> list[tuple[int, int]]:
    """Return sorted (start, end) inclusive codepoint ranges matching pattern."""
    pat = regex.compile(pattern, regex.V1)
    ranges: list[tuple[int, int]] = []
    for lo, hi in PLANES:
        chunk = "".join(map(chr, range(lo, hi + 1)))
        for m in pat.finditer(chunk):
            start, end = m.span()
            ranges.append((lo + start, lo + end - 1))
    # merge adjacent
    merged: list[list[int]] = []
    for s, e in sorted(ranges):
        if merged and s == merged[-1][1] + 1:
            merged[-1][1] = e
        else:
            merged.append([s, e])
    return [(s, e) for s, e in merged]


def drop_hangul_syllables(ranges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    for s, e in ranges:
        if e < HANGUL_SYLLABLE_START or s > HANGUL_SYLLABLE_END:
            out.append((s, e))
            continue
        if s < HANGUL_SYLLABLE_START:
            out.append((s, HANGUL_SYLLABLE_START - 1))
        if e > HANGUL_SYLLABLE_END:
            out.append((HANGUL_SYLLABLE_END + 1, e))
    return out


def main() -> None:
    gcb_ranges: list[tuple[int, int, int]] = []
    for class_id, name in enumerate(GCB_CLASSES):
        ranges = property_ranges(rf"\p{{Grapheme_Cluster_Break={name}}}+")
        if name in ("LV", "LVT"):
            ranges = drop_hangul_syllables(ranges)
        for s, e in ranges:
            gcb_ranges.append((s, e, class_id))
        print(f"{name}: {len(ranges)} ranges", file=sys.stderr)
    gcb_ranges.sort()

    # Surrogates never appear in well-formed text but must not crash lookups;
    # UCD assigns them Control.
    gcb_ranges.append((0xD800, 0xDFFF, GCB_CLASSES.index("Control")))
    gcb_ranges.sort()

    extpict = property_ranges(r"\p{Extended_Pictographic}+")
    print(f"Extended_Pictographic: {len(extpict)} ranges", file=sys.stderr)

    with open("src/graphtok/unicode_data.py", "w", encoding="utf-8") as f:
        f.write('"""Unicode property range tables (generated by tools/gen_unicode_tables.py).\n\n')
        f.write("Do not edit by hand; regenerate instead.\n")
        f.write(f"Source data: regex {regex.__version__} Unicode tables.\n")
        f.write('"""\n\n')
        for class_id, name in enumerate(GCB_CLASSES):
            f.write(f"GCB_{name.upper()} = {class_id}\n")
        f.write(f"GCB_OTHER = {len(GCB_CLASSES)}\n\n")
        f.write("# (start, end, class) inclusive ranges, sorted by start.\n")
        f.write("GCB_RANGE_STARTS = (\n")
        for i in range(0, len(gcb_ranges), 12):
            f.write("    " + " ".join(f"{s:#x}," for s, _, _ in gcb_ranges[i : i + 12]) + "\n")
        f.write(")\n\n")
        f.write("GCB_RANGE_ENDS = (\n")
        for i in range(0, len(gcb_ranges), 12):
            f.write("    " + " ".join(f"{e:#x}," for _, e, _ in gcb_ranges[i : i + 12]) + "\n")
        f.write(")\n\n")
        f.write("GCB_RANGE_CLASSES = (\n")
        for i in range(0, len(gcb_ranges), 24):
            f.write("    " + " ".join(f"{c}," for _, _, c in gcb_ranges[i : i + 24]) + "\n")
        f.write(")\n\n")
        f.write("EXTPICT_STARTS = (\n")
        for i in range(0, len(extpict), 12):
            f.write("    " + " ".join(f"{s:#x}," for s, _ in extpict[i : i + 12]) + "\n")
        f.write(")\n\n")
        f.write("EXTPICT_ENDS = (\n")
        for i in range(0, len(extpict), 12):
            f.write("    " + " ".join(f"{e:#x}," for _, e in extpict[i : i + 12]) + "\n")
        f.write(")\n")
    print("wrote src/graphtok/unicode_data.py", file=sys.stderr)


if __name__ == "__main__":
    main()
