"""Subword tokenizer models: vocabulary, merge rules, encode/decode, files.

A :class:`TokenizerModel` bundles everything needed to tokenize text: the
algorithm tag, a pre-tokenizer spec, the atomic-unit mode (UTF-8 bytes,
codepoints, or grapheme clusters), the vocabulary, merge rules or unigram
piece scores, and the unknown-handling policy.

Token contents are ``str`` except for raw byte tokens, which are ``bytes``.
Under the ``byte_fallback`` policy the vocabulary reserves 256 single-byte
tokens right after the specials, so any text is encodable losslessly.  In
model files byte tokens are written as ``<0xNN>`` escapes; any other token
whose text contains the ``<0x`` marker is stored fully byte-escaped, which
keeps the mapping unambiguous in both directions.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from . import _kernels
from .pretokenize import CUSTOM_REGEX, PretokenizerSpec, pretoken_texts
from .segmentation import DEFAULT_POLICY, SegmentationPolicy, grapheme_breaks, iter_grapheme_strings

Token = Union[str, bytes]

ALGORITHMS = ("bpe", "gpe", "wordpiece", "unigram")
ATOMIC_MODES = ("byte", "codepoint", "grapheme")
BYTE_FALLBACK = "byte_fallback"
UNK_TOKEN = "unk_token"
UNKNOWN_POLICIES = (BYTE_FALLBACK, UNK_TOKEN)

DEFAULT_UNK_MARKER = "<unk>"
WP_PREFIX = "##"
FORMAT_VERSION = 1

_ESCAPED = re.compile(r"^(?:<0x[0-9A-Fa-f]{2}>)+$")


class ModelFormatError(ValueError):
    """A model file violates the schema or its internal invariants."""


def escape_token(tok: Token) -> str:
    """Serialize a token content to its model-file string form."""
    if isinstance(tok, bytes):
        try:
            text = tok.decode("utf-8")
        except UnicodeDecodeError:
            return "".join(f"<0x{b:02X}>" for b in tok)
        if "<0x" in text or len(tok) == 1:
            return "".join(f"<0x{b:02X}>" for b in tok)
        return text
    if "<0x" in tok:
        return "".join(f"<0x{b:02X}>" for b in tok.encode("utf-8"))
    return tok


def unescape_token(s: str, bytes_mode: bool) -> Token:
    """Inverse of :func:`escape_token`.

    ``bytes_mode`` says whether plain strings denote raw bytes (byte-mode
    models) or text.  In text-mode models a single ``<0xNN>`` group is a
    reserved fallback byte token; escaped text tokens always span several
    groups (they contain the four-character ``<0x`` marker).
    """
    if _ESCAPED.match(s):
        raw = bytes(int(s[k + 3 : k + 5], 16) for k in range(0, len(s), 6))
        if bytes_mode or len(raw) == 1:
            return raw
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ModelFormatError(f"escaped token {s!r} is not valid UTF-8 text") from exc
    return s.encode("utf-8") if bytes_mode else s


class Vocabulary:
    """Bijection between token contents and dense integer ids."""

    __slots__ = ("_tokens", "_ids")

    def __init__(self, tokens: Iterable[Token]):
        self._tokens: list[Token] = list(tokens)
        self._ids: dict[Token, int] = {}
        for i, tok in enumerate(self._tokens):
            if tok in self._ids:
                raise ModelFormatError(f"duplicate vocabulary token {tok!r}")
            self._ids[tok] = i

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, tok: Token) -> bool:
        return tok in self._ids

    def id_of(self, tok: Token) -> int:
        return self._ids[tok]

    def get(self, tok: Token) -> int | None:
        return self._ids.get(tok)

    def token_of(self, idx: int) -> Token:
        return self._tokens[idx]

    def tokens(self) -> list[Token]:
        return list(self._tokens)


def atomize(pretoken: str, atomic_mode: str, policy: SegmentationPolicy | None) -> list[Token]:
    """Split a pre-token into atomic units."""
    if atomic_mode == "byte":
        enc = pretoken.encode("utf-8")
        return [enc[i : i + 1] for i in range(len(enc))]
    if atomic_mode == "codepoint":
        return list(pretoken)
    return iter_grapheme_strings(pretoken, policy or DEFAULT_POLICY)


@dataclass(frozen=True)
class MergeRule:
    """One learned merge: ``left + right -> result`` at creation rank."""

    left: Token
    right: Token
    result: Token
    rank: int


@dataclass
class TokenizerModel:
    algorithm: str
    pretokenizer: PretokenizerSpec
    atomic_mode: str
    segmentation_policy: SegmentationPolicy | None
    vocab: Vocabulary
    merges: list[MergeRule] | None
    piece_scores: dict[str, float] | None
    unknown_policy: str
    specials: list[str]
    trainer_settings: dict = field(default_factory=dict)

    # derived encode tables
    _byte_base: int = field(init=False, default=-1, repr=False)
    _unk_id: int = field(init=False, default=-1, repr=False)
    _ranks: dict = field(init=False, default_factory=dict, repr=False)
    _max_piece_atoms: int = field(init=False, default=0, repr=False)
    _unk_logprob: float = field(init=False, default=0.0, repr=False)
    _cache: dict = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._validate()
        self._build_tables()

    # -- validation ----------------------------------------------------

    def _validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ModelFormatError(f"unknown algorithm tag {self.algorithm!r}")
        if self.atomic_mode not in ATOMIC_MODES:
            raise ModelFormatError(f"unknown atomic_mode {self.atomic_mode!r}")
        if self.unknown_policy not in UNKNOWN_POLICIES:
            raise ModelFormatError(f"unknown unknown_policy {self.unknown_policy!r}")
        if self.algorithm == "gpe" and self.atomic_mode != "grapheme":
            raise ModelFormatError("gpe models require atomic_mode='grapheme'")
        if self.atomic_mode == "grapheme" and self.segmentation_policy is None:
            raise ModelFormatError("grapheme atomic_mode requires a segmentation policy")
        if self.algorithm == "wordpiece" and self.atomic_mode != "codepoint":
            raise ModelFormatError("wordpiece models use atomic_mode='codepoint'")
        for k, sp in enumerate(self.specials):
            if "<0x" in sp:
                raise ModelFormatError(f"special token {sp!r} may not contain the <0x escape marker")
            if self.vocab.get(sp) != k:
                raise ModelFormatError(f"special token {sp!r} missing from vocabulary slot {k}")
        if self.unknown_policy == BYTE_FALLBACK:
            base = len(self.specials)
            for b in range(256):
                tok = self.vocab.token_of(base + b) if base + b < len(self.vocab) else None
                if tok != bytes([b]):
                    raise ModelFormatError(
                        "byte_fallback models must reserve the 256 byte tokens "
                        f"at ids {base}..{base + 255}"
                    )
        if self.unknown_policy == UNK_TOKEN:
            marker = self.trainer_settings.get("unk_token", DEFAULT_UNK_MARKER)
            if marker not in self.specials:
                raise ModelFormatError(f"unk_token policy requires the {marker!r} special")
        if self.merges is not None:
            for rule in self.merges:
                for side, tok in (("left", rule.left), ("right", rule.right), ("result", rule.result)):
                    if tok not in self.vocab:
                        raise ModelFormatError(
                            f"merge rule {rule.rank} ({escape_token(rule.left)!r}, "
                            f"{escape_token(rule.right)!r}): {side} token not in vocabulary"
                        )
        if self.piece_scores is not None:
            for piece in self.piece_scores:
                if piece not in self.vocab:
                    raise ModelFormatError(f"piece {piece!r} scored but not in vocabulary")

    def _build_tables(self) -> None:
        if self.unknown_policy == BYTE_FALLBACK:
            self._byte_base = len(self.specials)
        else:
            marker = self.trainer_settings.get("unk_token", DEFAULT_UNK_MARKER)
            self._unk_id = self.vocab.id_of(marker)
        if self.merges is not None:
            for rule in self.merges:
                key = (self.vocab.id_of(rule.left), self.vocab.id_of(rule.right))
                if key not in self._ranks:
                    self._ranks[key] = (rule.rank, self.vocab.id_of(rule.result))
        if self.piece_scores is not None:
            self._max_piece_atoms = max(
                (self._piece_atom_count(p) for p in self.piece_scores), default=1
            )
            floor = min(self.piece_scores.values(), default=0.0)
            self._unk_logprob = floor - 10.0

    def _piece_atom_count(self, piece: str) -> int:
        if self.atomic_mode == "grapheme":
            return len(grapheme_breaks(piece, self.segmentation_policy.tailored)) - 1
        return len(piece)

    # -- encoding -------------------------------------------------------

    @property
    def unk_id(self) -> int | None:
        return self._unk_id if self._unk_id >= 0 else None

    def _fallback_ids(self, text: str) -> list[int]:
        if self.unknown_policy == BYTE_FALLBACK:
            return [self._byte_base + b for b in text.encode("utf-8")]
        return [self._unk_id]

    def _encode_pretoken(self, pt: str) -> list[int]:
        cached = self._cache.get(pt)
        if cached is None:
            if self.algorithm in ("bpe", "gpe"):
                cached = self._encode_merge(pt)
            elif self.algorithm == "wordpiece":
                cached = self._encode_wordpiece(pt)
            else:
                cached = self._encode_unigram(pt)
            self._cache[pt] = cached
        return cached

    def _encode_merge(self, pt: str) -> list[int]:
        vocab_get = self.vocab.get
        ids: list[int] = []
        for atom in atomize(pt, self.atomic_mode, self.segmentation_policy):
            idx = vocab_get(atom)
            if idx is None:
                ids.extend(self._fallback_ids(atom if isinstance(atom, str) else atom.decode("utf-8", "replace")))
            else:
                ids.append(idx)
        if self._ranks:
            ids = _kernels.apply_merges_seq(ids, self._ranks)
        return ids

    def _encode_wordpiece(self, pt: str) -> list[int]:
        vocab_get = self.vocab.get
        ids: list[int] = []
        pos = 0
        n = len(pt)
        while pos < n:
            end = n
            idx = None
            while end > pos:
                cand = pt[pos:end] if pos == 0 else WP_PREFIX + pt[pos:end]
                idx = vocab_get(cand)
                if idx is not None:
                    break
                end -= 1
            if idx is None:
                return self._fallback_ids(pt)  # whole pre-token falls back
            ids.append(idx)
            pos = end
        return ids

    def _encode_unigram(self, pt: str) -> list[int]:
        if self.atomic_mode == "grapheme":
            offs = tuple(grapheme_breaks(pt, self.segmentation_policy.tailored))
        else:
            offs = tuple(range(len(pt) + 1))
        pieces, _ = _kernels.unigram_viterbi(
            pt, offs, self.piece_scores, max(self._max_piece_atoms, 1), self._unk_logprob
        )
        ids: list[int] = []
        for piece in pieces:
            if piece in self.piece_scores:
                ids.append(self.vocab.id_of(piece))
            else:
                ids.extend(self._fallback_ids(piece))
        return ids

    def encode(self, text: str) -> list[int]:
        """Tokenize ``text`` to a flat id sequence."""
        ids: list[int] = []
        for pt in pretoken_texts(text, self.pretokenizer):
            ids.extend(self._encode_pretoken(pt))
        return ids

    def token_count(self, text: str) -> int:
        return len(self.encode(text))

    # -- decoding -------------------------------------------------------

    def decode(self, ids: Iterable[int]) -> str:
        """Map ids back to text.

        With regex or identity pre-tokenizers the token texts tile the
        original input, so under ``byte_fallback`` this inverts ``encode``
        exactly.  Whitespace-dropping pre-tokenizers do not preserve
        separators in-band: word-initial pieces are rejoined with single
        spaces (WordPiece continuations attach via their ``##`` marker;
        for merge/unigram models every piece starts a group, so words split
        into several tokens come back space-separated).
        """
        size = len(self.vocab)
        specials = set(self.specials)
        joined_groups: list[str] = []
        buf = bytearray()
        pending = ""

        def flush_bytes() -> None:
            nonlocal pending
            if buf:
                pending += bytes(buf).decode("utf-8", "replace")
                buf.clear()

        def close_group() -> None:
            nonlocal pending
            flush_bytes()
            if pending:
                joined_groups.append(pending)
                pending = ""

        wordpiece = self.algorithm == "wordpiece"
        for idx in ids:
            if not isinstance(idx, int) or not 0 <= idx < size:
                raise ValueError(f"token id out of range: {idx!r} (vocabulary size {size})")
            tok = self.vocab.token_of(idx)
            if isinstance(tok, bytes):
                buf.extend(tok)
                continue
            flush_bytes()
            if wordpiece and tok.startswith(WP_PREFIX) and tok not in specials:
                pending += tok[len(WP_PREFIX) :]
            else:
                close_group()
                pending = tok
        close_group()
        if self.pretokenizer.drops_whitespace:
            return " ".join(joined_groups)
        return "".join(joined_groups)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        doc: dict = {
            "format_version": FORMAT_VERSION,
            "algorithm": self.algorithm,
            "pretokenizer": {"kind": self.pretokenizer.kind},
            "atomic_mode": self.atomic_mode,
            "segmentation_policy": self.segmentation_policy.mode if self.segmentation_policy else None,
            "unknown_policy": self.unknown_policy,
            "specials": list(self.specials),
            "vocab": [[escape_token(tok), i] for i, tok in enumerate(self.vocab.tokens())],
            "trainer_settings": self.trainer_settings,
        }
        if self.pretokenizer.kind == CUSTOM_REGEX:
            doc["pretokenizer"]["pattern"] = self.pretokenizer.pattern
        if self.merges is not None:
            doc["merges"] = [[escape_token(r.left), escape_token(r.right)] for r in self.merges]
        if self.piece_scores is not None:
            doc["piece_scores"] = [[escape_token(p), lp] for p, lp in sorted(self.piece_scores.items())]
        return doc


def encode(model: TokenizerModel, text: str) -> list[int]:
    return model.encode(text)


def decode(model: TokenizerModel, ids: Iterable[int]) -> str:
    return model.decode(ids)


def save_model(model: TokenizerModel, path) -> None:
    """Write the model to ``path`` as a single UTF-8 JSON document."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(model.to_json_dict(), f, ensure_ascii=False, indent=1)
        f.write("\n")


def load_model(path) -> TokenizerModel:
    """Read a model file, validating the schema and all invariants."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"not a valid model file: {exc}") from exc
    return model_from_json_dict(doc)


def model_from_json_dict(doc: dict) -> TokenizerModel:
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ModelFormatError("not a model file: missing format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {doc['format_version']!r} (expected {FORMAT_VERSION})"
        )
    try:
        algorithm = doc["algorithm"]
        pre = doc["pretokenizer"]
        spec = PretokenizerSpec(kind=pre["kind"], pattern=pre.get("pattern"))
        atomic_mode = doc["atomic_mode"]
        policy_mode = doc.get("segmentation_policy")
        policy = SegmentationPolicy(policy_mode) if policy_mode else None
        unknown_policy = doc["unknown_policy"]
        specials = list(doc["specials"])
        vocab_entries = doc["vocab"]
        trainer_settings = doc.get("trainer_settings", {})
    except KeyError as exc:
        raise ModelFormatError(f"model file missing field {exc.args[0]!r}") from exc

    if algorithm not in ALGORITHMS:
        raise ModelFormatError(f"unknown algorithm tag {algorithm!r}")
    bytes_mode = atomic_mode == "byte"

    tokens: list[Token | None] = [None] * len(vocab_entries)
    for entry in vocab_entries:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ModelFormatError(f"malformed vocab entry {entry!r}")
        text, idx = entry
        if not isinstance(idx, int) or not 0 <= idx < len(tokens) or tokens[idx] is not None:
            raise ModelFormatError(f"vocab ids must be dense and unique (bad entry {entry!r})")
        if idx < len(specials):
            tokens[idx] = text  # specials stored literally
        else:
            tokens[idx] = unescape_token(text, bytes_mode)
    vocab = Vocabulary(tokens)  # type: ignore[arg-type]

    merges = None
    if "merges" in doc:
        merges = []
        # specials never participate in merges, so they stay out of the lookup
        lookup = {escape_token(t): t for t in vocab.tokens()[len(specials):]}
        for rank, pair in enumerate(doc["merges"]):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ModelFormatError(f"malformed merge entry {pair!r}")
            left_s, right_s = pair
            left = lookup.get(left_s)
            right = lookup.get(right_s)
            if left is None or right is None:
                raise ModelFormatError(
                    f"merge rule {rank} ({left_s!r}, {right_s!r}) references a token "
                    "absent from the vocabulary"
                )
            if algorithm == "wordpiece" and isinstance(right, str):
                result = left + (right[2:] if right.startswith(WP_PREFIX) else right)
            else:
                result = left + right
            if result not in vocab:
                raise ModelFormatError(
                    f"merge rule {rank} ({left_s!r}, {right_s!r}): result token "
                    "absent from the vocabulary"
                )
            merges.append(MergeRule(left=left, right=right, result=result, rank=rank))

    piece_scores = None
    if "piece_scores" in doc:
        piece_scores = {}
        for entry in doc["piece_scores"]:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ModelFormatError(f"malformed piece_scores entry {entry!r}")
            piece = unescape_token(entry[0], False)
            piece_scores[piece] = float(entry[1])

    return TokenizerModel(
        algorithm=algorithm,
        pretokenizer=spec,
        atomic_mode=atomic_mode,
        segmentation_policy=policy,
        vocab=vocab,
        merges=merges,
        piece_scores=piece_scores,
        unknown_policy=unknown_policy,
        specials=specials,
        trainer_settings=trainer_settings,
    )
