"""graphtok: grapheme-aware subword tokenization and evaluation toolkit.

Train BPE, grapheme pair encoding (GPE), WordPiece, and Unigram tokenizers
over configurable pre-tokenizers and atomic units; tokenize at the byte,
codepoint, or grapheme level; and measure compression ratio and tokenization
parity together with the bounds that pre-tokenization alone imposes.
"""

from ._kernels import IMPLEMENTATION as kernel_implementation
from .charlevel import CharLevelMode, char_detokenize, char_token_count, char_tokenize
from .corpus import CorpusError, ParallelCorpus, read_lines, sample_lines, write_lines
from .metrics import (
    LengthUnit,
    MetricsReport,
    MetricsRow,
    RatioDetail,
    compression_ratio,
    cr_max,
    cr_max_detail,
    emit_report,
    tokenization_parity,
    tp_min,
)
from .pretokenize import (
    GPT2_PATTERN,
    GPT4_LLAMA3_PATTERN,
    PreToken,
    PretokenizerSpec,
    count_pretokens,
    preset_spec,
    pretokenize,
)
from .segmentation import (
    GraphemeSegmentation,
    SegmentationPolicy,
    count_codepoints,
    count_graphemes,
    segment_graphemes,
    utf8_byte_length,
)
from .subword import (
    MergeRule,
    ModelFormatError,
    TokenizerModel,
    Vocabulary,
    decode,
    encode,
    load_model,
    save_model,
)
from .trainers import train_bpe, train_gpe, train_unigram, train_wordpiece

__version__ = "0.1.0"

__all__ = [
    "CharLevelMode",
    "CorpusError",
    "GPT2_PATTERN",
    "GPT4_LLAMA3_PATTERN",
    "GraphemeSegmentation",
    "LengthUnit",
    "MergeRule",
    "MetricsReport",
    "MetricsRow",
    "ModelFormatError",
    "ParallelCorpus",
    "PreToken",
    "PretokenizerSpec",
    "RatioDetail",
    "SegmentationPolicy",
    "TokenizerModel",
    "Vocabulary",
    "char_detokenize",
    "char_token_count",
    "char_tokenize",
    "compression_ratio",
    "count_codepoints",
    "count_graphemes",
    "count_pretokens",
    "cr_max",
    "cr_max_detail",
    "decode",
    "emit_report",
    "encode",
    "kernel_implementation",
    "load_model",
    "preset_spec",
    "pretokenize",
    "read_lines",
    "sample_lines",
    "save_model",
    "segment_graphemes",
    "tokenization_parity",
    "tp_min",
    "train_bpe",
    "train_gpe",
    "train_unigram",
    "train_wordpiece",
    "utf8_byte_length",
    "write_lines",
]
