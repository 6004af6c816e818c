"""Compression ratio and tokenization parity, with pre-tokenization bounds.

Compression ratio (CR) divides the original sequence length (in codepoints,
UTF-8 bytes, or grapheme clusters) by the tokenized sequence length.
Tokenization parity (TP) divides one language's token count by the aligned
pivot language's count; parity means a value close to 1.

Because training can never learn a token longer than a pre-token, replacing
token counts with pre-token counts turns CR into the ceiling ``cr_max`` and
TP into the floor ``tp_min`` for any tokenizer sharing that pre-tokenizer.

Aggregation is ``micro`` (ratio of corpus totals, scale invariant) or
``macro`` (mean of per-line ratios).  Rows record the raw counts so micro
values can be re-derived.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .corpus import ParallelCorpus
from .pretokenize import PretokenizerSpec, count_pretokens
from .segmentation import DEFAULT_POLICY, SegmentationPolicy, count_graphemes

CODEPOINT = "codepoint"
UTF8_BYTE = "utf8_byte"
GRAPHEME = "grapheme"
LENGTH_UNITS = (CODEPOINT, UTF8_BYTE, GRAPHEME)

MICRO = "micro"
MACRO = "macro"
AGGREGATIONS = (MICRO, MACRO)

REPORT_COLUMNS = (
    "tokenizer",
    "language",
    "metric",
    "value",
    "numerator",
    "denominator",
    "unit",
    "aggregation",
)


@dataclass(frozen=True)
class LengthUnit:
    unit: str = CODEPOINT
    policy: SegmentationPolicy = DEFAULT_POLICY

    def __post_init__(self) -> None:
        if self.unit not in LENGTH_UNITS:
            raise ValueError(f"unknown length unit {self.unit!r}; expected one of {LENGTH_UNITS}")

    def measure(self, text: str) -> int:
        if self.unit == CODEPOINT:
            return len(text)
        if self.unit == UTF8_BYTE:
            return len(text.encode("utf-8"))
        return count_graphemes(text, self.policy)


@dataclass(frozen=True)
class MetricsRow:
    tokenizer: str
    language: str
    metric: str
    value: float
    numerator: int
    denominator: int
    unit: str
    aggregation: str


@dataclass
class MetricsReport:
    rows: list[MetricsRow] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def add(self, row: MetricsRow) -> None:
        self.rows.append(row)

    def note_excluded(self, key: str, count: int) -> None:
        if count:
            self.diagnostics[key] = self.diagnostics.get(key, 0) + count


def _aggregate(numerators: Sequence[int], denominators: Sequence[int], aggregation: str, what: str) -> float:
    if aggregation not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {aggregation!r}; expected micro or macro")
    if not numerators:
        raise ValueError(f"{what}: no lines to aggregate")
    if aggregation == MICRO:
        total = sum(denominators)
        if total == 0:
            raise ValueError(f"{what}: zero denominator total")
        return sum(numerators) / total
    ratios = []
    for i, (num, den) in enumerate(zip(numerators, denominators), start=1):
        if den == 0:
            raise ValueError(f"{what}: zero denominator on line {i}")
        ratios.append(num / den)
    return sum(ratios) / len(ratios)


def compression_ratio(
    texts: Sequence[str],
    token_counts: Sequence[int],
    unit: LengthUnit = LengthUnit(),
    aggregation: str = MICRO,
) -> float:
    """Original length over tokenized length.

    ``texts`` and ``token_counts`` are aligned per line; every count must be
    at least 1.
    """
    if len(texts) != len(token_counts):
        raise ValueError(f"{len(texts)} texts but {len(token_counts)} token counts")
    for i, c in enumerate(token_counts, start=1):
        if c < 1:
            raise ValueError(f"token count on line {i} is {c}; counts must be >= 1")
    lengths = [unit.measure(t) for t in texts]
    return _aggregate(lengths, list(token_counts), aggregation, "compression_ratio")


def tokenization_parity(
    corpus: ParallelCorpus,
    tokenize: Callable[[str], int],
    lang: str,
    pivot: str,
    aggregation: str = MICRO,
) -> float:
    """Token count of ``lang`` over the aligned ``pivot`` count."""
    for code in (lang, pivot):
        if code not in corpus.lines:
            raise ValueError(f"language {code!r} not in corpus (has {corpus.languages})")
    lang_counts = [tokenize(t) for t in corpus.lines[lang]]
    pivot_counts = [tokenize(t) for t in corpus.lines[pivot]]
    return _aggregate(lang_counts, pivot_counts, aggregation, "tokenization_parity")


@dataclass(frozen=True)
class RatioDetail:
    value: float
    numerator: int
    denominator: int
    excluded_lines: int = 0


def cr_max_detail(
    spec: PretokenizerSpec,
    texts: Sequence[str],
    unit: LengthUnit = LengthUnit(),
    aggregation: str = MICRO,
) -> RatioDetail:
    """Compression-ratio ceiling: per-line pre-token counts as token counts.

    The numerator is always the full original length, even for presets that
    drop whitespace.  Lines yielding zero pre-tokens are excluded and counted
    in ``excluded_lines``.
    """
    lengths: list[int] = []
    counts: list[int] = []
    excluded = 0
    for text in texts:
        n = count_pretokens(text, spec)
        if n == 0:
            excluded += 1
            continue
        lengths.append(unit.measure(text))
        counts.append(n)
    value = _aggregate(lengths, counts, aggregation, "cr_max")
    return RatioDetail(value, sum(lengths), sum(counts), excluded)


def cr_max(
    spec: PretokenizerSpec,
    texts: Sequence[str],
    unit: LengthUnit = LengthUnit(),
    aggregation: str = MICRO,
) -> float:
    return cr_max_detail(spec, texts, unit, aggregation).value


def tp_min(
    spec: PretokenizerSpec,
    corpus: ParallelCorpus,
    lang: str,
    pivot: str,
    aggregation: str = MICRO,
) -> float:
    """Parity floor: per-line pre-token counts as token counts."""
    return tokenization_parity(
        corpus, lambda text: count_pretokens(text, spec), lang, pivot, aggregation
    )


def _format_value(v: float) -> str:
    return f"{v:.2f}"


def emit_report(rows: Iterable[MetricsRow], format: str = "tsv") -> str:
    """Render rows as TSV, JSON, or a markdown table.

    Values display with two decimals (full precision is preserved in JSON);
    the fixed column order is tokenizer, language, metric, value, numerator,
    denominator, unit, aggregation.
    """
    rows = list(rows)
    if format == "tsv":
        lines = ["\t".join(REPORT_COLUMNS)]
        for r in rows:
            lines.append(
                "\t".join(
                    (r.tokenizer, r.language, r.metric, _format_value(r.value),
                     str(r.numerator), str(r.denominator), r.unit, r.aggregation)
                )
            )
        return "\n".join(lines) + "\n"
    if format == "json":
        payload = [
            {
                "tokenizer": r.tokenizer,
                "language": r.language,
                "metric": r.metric,
                "value": r.value,
                "numerator": r.numerator,
                "denominator": r.denominator,
                "unit": r.unit,
                "aggregation": r.aggregation,
            }
            for r in rows
        ]
        return json.dumps(payload, ensure_ascii=False, indent=1) + "\n"
    if format == "md":
        lines = [
            "| " + " | ".join(REPORT_COLUMNS) + " |",
            "|" + "|".join(["---"] * len(REPORT_COLUMNS)) + "|",
        ]
        for r in rows:
            lines.append(
                "| "
                + " | ".join(
                    (r.tokenizer, r.language, r.metric, _format_value(r.value),
                     str(r.numerator), str(r.denominator), r.unit, r.aggregation)
                )
                + " |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}; expected tsv, json, or md")
