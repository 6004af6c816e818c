"""Trainers for the four subword algorithms.

All trainers share the same shape: stream the corpus once to count distinct
pre-tokens, atomize them (bytes, codepoints, or grapheme clusters), then run
the algorithm's training loop over the weighted distinct words.  The heavy
loops live in :mod:`graphtok._kernels`.

Determinism: distinct words are processed in sorted order, pair selection
breaks ties on the lexicographically smallest ``(left, right)`` contents, and
all counts are exact integers, so two runs on the same corpus and settings
produce identical models regardless of worker count or kernel implementation.

The requested ``vocab_size`` covers everything: specials, the 256 reserved
byte tokens when ``byte_fallback`` is active, the atomic alphabet, and the
learned merges or pieces.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable

from . import _kernels
from .pretokenize import PretokenizerSpec, pretoken_texts
from .segmentation import DEFAULT_POLICY, SegmentationPolicy, grapheme_breaks
from .subword import (
    BYTE_FALLBACK,
    DEFAULT_UNK_MARKER,
    UNK_TOKEN,
    MergeRule,
    TokenizerModel,
    Vocabulary,
    WP_PREFIX,
    atomize,
)

MIN_PAIR_FREQUENCY = 2
UNIGRAM_SEED_FACTOR = 8
UNIGRAM_MAX_PIECE_ATOMS = 16
UNIGRAM_EM_ITERATIONS = 2
UNIGRAM_SHRINK_FACTOR = 0.75


def count_pretokens(corpus: Iterable[str], spec: PretokenizerSpec, workers: int = 1) -> Counter:
    """Frequency of each distinct pre-token across the corpus lines."""
    counts: Counter = Counter()
    if workers <= 1:
        for line in corpus:
            counts.update(pretoken_texts(line, spec))
        return counts
    lines = corpus if isinstance(corpus, list) else list(corpus)
    chunk = max(1, (len(lines) + workers - 1) // workers)
    parts = [lines[i : i + chunk] for i in range(0, len(lines), chunk)]

    def count_part(part: list[str]) -> Counter:
        c: Counter = Counter()
        for line in part:
            c.update(pretoken_texts(line, spec))
        return c

    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part_counts in pool.map(count_part, parts):  # reduced in chunk order
            counts.update(part_counts)
    return counts


def _resolve_specials(unknown_policy: str, specials: Iterable[str]) -> list[str]:
    out = list(specials)
    if unknown_policy == UNK_TOKEN and DEFAULT_UNK_MARKER not in out:
        out.insert(0, DEFAULT_UNK_MARKER)
    return out


def _wp_atomize(word: str) -> list[str]:
    return [word[0]] + [WP_PREFIX + ch for ch in word[1:]]


def _atomize_words(
    word_counts: Counter, atomic_mode: str, policy: SegmentationPolicy | None, wordpiece: bool
) -> tuple[list[list], list[int]]:
    words = sorted(word_counts)
    if wordpiece:
        return [_wp_atomize(w) for w in words], [word_counts[w] for w in words]
    return [atomize(w, atomic_mode, policy) for w in words], [word_counts[w] for w in words]


def _train_merge_family(
    algorithm: str,
    corpus: Iterable[str],
    spec: PretokenizerSpec,
    vocab_size: int,
    atomic_mode: str,
    policy: SegmentationPolicy | None,
    unknown_policy: str,
    specials: Iterable[str],
    min_pair_frequency: int,
    workers: int,
) -> TokenizerModel:
    wordpiece = algorithm == "wordpiece"
    specials = _resolve_specials(unknown_policy, specials)
    word_counts = count_pretokens(corpus, spec, workers)
    if not word_counts:
        raise ValueError("empty corpus: no pre-tokens found")
    atom_words, freqs = _atomize_words(word_counts, atomic_mode, policy, wordpiece)

    fallback = unknown_policy == BYTE_FALLBACK
    if atomic_mode == "byte" and fallback:
        contents: list = [bytes([b]) for b in range(256)]
        alphabet_extra = 0  # the reserved byte block doubles as the alphabet
    else:
        alphabet = sorted({atom for w in atom_words for atom in w})
        contents = list(alphabet)
        alphabet_extra = len(alphabet)

    reserved = len(specials) + (256 if fallback else 0)
    minimum = reserved + alphabet_extra
    if vocab_size < minimum:
        if algorithm == "gpe":
            overflow = minimum - vocab_size
            raise ValueError(
                f"unique graphemes exceed the vocabulary budget by {overflow}: "
                f"{alphabet_extra} seed graphemes plus {reserved} reserved tokens "
                f"need at least {minimum}, got vocab_size={vocab_size}"
            )
        raise ValueError(
            f"vocab_size={vocab_size} too small: need at least {minimum} "
            f"({alphabet_extra} alphabet + {reserved} reserved tokens)"
        )

    atom_ids = {c: i for i, c in enumerate(contents)}
    kernel_words = [[atom_ids[a] for a in w] for w in atom_words]
    budget = vocab_size - minimum
    merges_local = _kernels.merge_train_core(
        kernel_words, freqs, contents, budget, wordpiece, min_pair_frequency, set(specials)
    )

    tokens: list = list(specials)
    if fallback and atomic_mode != "byte":
        tokens.extend(bytes([b]) for b in range(256))
    base = len(tokens)
    tokens.extend(contents)
    merges = [
        MergeRule(left=contents[a], right=contents[b], result=contents[r], rank=k)
        for k, (a, b, r) in enumerate(merges_local)
    ]

    settings = {
        "requested_vocab_size": vocab_size,
        "actual_vocab_size": len(tokens),
        "min_pair_frequency": min_pair_frequency,
        "tie_break": "smallest_pair_contents",
        "pair_counting": "adjacent_overlapping",
    }
    if unknown_policy == UNK_TOKEN:
        settings["unk_token"] = DEFAULT_UNK_MARKER

    return TokenizerModel(
        algorithm=algorithm,
        pretokenizer=spec,
        atomic_mode=atomic_mode,
        segmentation_policy=policy,
        vocab=Vocabulary(tokens),
        merges=None if wordpiece else merges,
        piece_scores=None,
        unknown_policy=unknown_policy,
        specials=specials,
        trainer_settings=settings,
    )


def train_bpe(
    corpus: Iterable[str],
    spec: PretokenizerSpec,
    vocab_size: int,
    atomic_mode: str = "byte",
    *,
    segmentation_policy: SegmentationPolicy | None = None,
    unknown_policy: str = BYTE_FALLBACK,
    specials: Iterable[str] = (),
    min_pair_frequency: int = MIN_PAIR_FREQUENCY,
    workers: int = 1,
) -> TokenizerModel:
    """Byte pair encoding: greedily merge the most frequent adjacent pair.

    Merges never cross pre-token boundaries; training stops at ``vocab_size``
    or when the best pair occurs fewer than ``min_pair_frequency`` times.
    """
    if atomic_mode == "grapheme" and segmentation_policy is None:
        segmentation_policy = DEFAULT_POLICY
    if atomic_mode != "grapheme":
        segmentation_policy = None
    return _train_merge_family(
        "bpe", corpus, spec, vocab_size, atomic_mode, segmentation_policy,
        unknown_policy, specials, min_pair_frequency, workers,
    )


def train_gpe(
    corpus: Iterable[str],
    spec: PretokenizerSpec,
    vocab_size: int,
    policy: SegmentationPolicy = DEFAULT_POLICY,
    *,
    unknown_policy: str = BYTE_FALLBACK,
    specials: Iterable[str] = (),
    min_pair_frequency: int = MIN_PAIR_FREQUENCY,
    workers: int = 1,
) -> TokenizerModel:
    """Grapheme pair encoding: BPE whose atoms and seed vocabulary are
    grapheme clusters, so no token ever splits a cluster.

    The unique clusters of the training data seed the vocabulary; if they
    alone exceed the budget the trainer errors rather than truncating.
    """
    return _train_merge_family(
        "gpe", corpus, spec, vocab_size, "grapheme", policy,
        unknown_policy, specials, min_pair_frequency, workers,
    )


def train_wordpiece(
    corpus: Iterable[str],
    spec: PretokenizerSpec,
    vocab_size: int,
    *,
    unknown_policy: str = BYTE_FALLBACK,
    specials: Iterable[str] = (),
    min_pair_frequency: int = MIN_PAIR_FREQUENCY,
    workers: int = 1,
) -> TokenizerModel:
    """WordPiece: the merge loop of BPE, but pair selection maximizes
    ``count(pair) / (count(left) * count(right))`` and continuation pieces
    carry the ``##`` prefix.  Encoding is greedy longest-match-first.
    """
    return _train_merge_family(
        "wordpiece", corpus, spec, vocab_size, "codepoint", None,
        unknown_policy, specials, min_pair_frequency, workers,
    )


def train_unigram(
    corpus: Iterable[str],
    spec: PretokenizerSpec,
    vocab_size: int,
    atomic_mode: str = "codepoint",
    *,
    segmentation_policy: SegmentationPolicy | None = None,
    unknown_policy: str = BYTE_FALLBACK,
    specials: Iterable[str] = (),
    workers: int = 1,
    seed_factor: int = UNIGRAM_SEED_FACTOR,
    max_piece_atoms: int = UNIGRAM_MAX_PIECE_ATOMS,
    em_iterations: int = UNIGRAM_EM_ITERATIONS,
    shrink_factor: float = UNIGRAM_SHRINK_FACTOR,
) -> TokenizerModel:
    """Unigram language model tokenizer.

    Seeds with the most frequent substrings (ranked by frequency times
    length, capped at ``seed_factor * vocab_size`` pieces of at most
    ``max_piece_atoms`` atoms), runs hard EM with Viterbi segmentation, and
    iteratively prunes the pieces whose removal costs the least likelihood
    until the vocabulary budget is met.  Single-atom pieces are never pruned
    so coverage of the training data is preserved.
    """
    if atomic_mode not in ("codepoint", "grapheme"):
        raise ValueError("unigram supports codepoint or grapheme atoms")
    if atomic_mode == "grapheme":
        segmentation_policy = segmentation_policy or DEFAULT_POLICY
    else:
        segmentation_policy = None
    specials = _resolve_specials(unknown_policy, specials)
    word_counts = count_pretokens(corpus, spec, workers)
    if not word_counts:
        raise ValueError("empty corpus: no pre-tokens found")

    words = sorted(word_counts)
    freqs = [word_counts[w] for w in words]
    if atomic_mode == "grapheme":
        offsets = [tuple(grapheme_breaks(w, segmentation_policy.tailored)) for w in words]
    else:
        offsets = [tuple(range(len(w) + 1)) for w in words]

    atom_counts: dict[str, int] = {}
    for w, offs, f in zip(words, offsets, freqs):
        for i in range(len(offs) - 1):
            atom = w[offs[i] : offs[i + 1]]
            atom_counts[atom] = atom_counts.get(atom, 0) + f
    banned = set(specials)
    atoms = {a: c for a, c in atom_counts.items() if a not in banned}

    fallback = unknown_policy == BYTE_FALLBACK
    reserved = len(specials) + (256 if fallback else 0)
    target_pieces = vocab_size - reserved
    if target_pieces < len(atoms):
        raise ValueError(
            f"vocab_size={vocab_size} too small: need at least "
            f"{reserved + len(atoms)} ({len(atoms)} atoms + {reserved} reserved tokens)"
        )

    def offsets_of(piece: str) -> tuple[int, ...]:
        if atomic_mode == "grapheme":
            return tuple(grapheme_breaks(piece, segmentation_policy.tailored))
        return tuple(range(len(piece) + 1))

    def atoms_in(piece: str) -> int:
        return len(offsets_of(piece)) - 1

    sub_counts = _kernels.unigram_seed_counts(words, offsets, freqs, max_piece_atoms)
    seed_cap = max(seed_factor * vocab_size - len(atoms), 0)
    candidates = sorted(
        ((s, c) for s, c in sub_counts.items() if s not in banned),
        key=lambda item: (-item[1] * atoms_in(item[0]), item[0]),
    )[:seed_cap]

    pieces: dict[str, int] = dict(atoms)
    for s, c in candidates:
        pieces[s] = c
    if len(pieces) < target_pieces:
        raise ValueError(
            f"seed vocabulary ({len(pieces)} pieces) is smaller than the requested "
            f"piece budget ({target_pieces}); corpus too small for vocab_size={vocab_size}"
        )

    logp = _normalize(pieces)
    counts: dict[str, int] = dict(pieces)
    while True:
        for _ in range(em_iterations):
            counts, _ll = _kernels.unigram_em_counts(
                words, offsets, freqs, logp, max_piece_atoms, _unk_penalty(logp)
            )
            logp = _normalize({p: counts.get(p, 0) for p in logp})
        if len(logp) <= target_pieces:
            break
        next_size = max(target_pieces, int(len(logp) * shrink_factor))
        logp = _prune(logp, counts, atoms, next_size, max_piece_atoms, offsets_of)

    counts, _ll = _kernels.unigram_em_counts(
        words, offsets, freqs, logp, max_piece_atoms, _unk_penalty(logp)
    )
    piece_scores = _normalize({p: counts.get(p, 0) for p in logp})

    tokens: list = list(specials)
    if fallback:
        tokens.extend(bytes([b]) for b in range(256))
    tokens.extend(sorted(piece_scores))

    settings = {
        "requested_vocab_size": vocab_size,
        "actual_vocab_size": len(tokens),
        "seed_factor": seed_factor,
        "max_piece_atoms": max_piece_atoms,
        "em_iterations": em_iterations,
        "shrink_factor": shrink_factor,
    }
    if unknown_policy == UNK_TOKEN:
        settings["unk_token"] = DEFAULT_UNK_MARKER

    return TokenizerModel(
        algorithm="unigram",
        pretokenizer=spec,
        atomic_mode=atomic_mode,
        segmentation_policy=segmentation_policy,
        vocab=Vocabulary(tokens),
        merges=None,
        piece_scores=piece_scores,
        unknown_policy=unknown_policy,
        specials=specials,
        trainer_settings=settings,
    )


def _normalize(counts: dict[str, int]) -> dict[str, float]:
    """Integer counts to log-probabilities; zero-count entries get a floor."""
    total = sum(counts.values())
    log_total = math.log(total) if total > 0 else 0.0
    out: dict[str, float] = {}
    floor = None
    for p in sorted(counts):
        c = counts[p]
        if c > 0:
            lp = math.log(c) - log_total
            out[p] = lp
            if floor is None or lp < floor:
                floor = lp
    floor = (floor if floor is not None else 0.0) - 10.0
    for p in sorted(counts):
        if counts[p] <= 0:
            out[p] = floor
    return out


def _unk_penalty(logp: dict[str, float]) -> float:
    return (min(logp.values()) if logp else 0.0) - 10.0


def _prune(
    logp: dict[str, float],
    counts: dict[str, int],
    atoms: dict[str, int],
    next_size: int,
    max_piece_atoms: int,
    offsets_of,
) -> dict[str, float]:
    """Drop the multi-atom pieces whose removal costs the least likelihood.

    The cost of removing piece p is approximated per occurrence as the gap
    between its own score and the best alternative segmentation of its text
    using the remaining pieces.  Single-atom pieces are never dropped.
    """
    unk = _unk_penalty(logp)
    scored: list[tuple[float, str]] = []
    for p in sorted(logp):
        if p in atoms:
            continue
        own = logp.pop(p)
        _alt_pieces, alt = _kernels.unigram_viterbi(p, offsets_of(p), logp, max_piece_atoms, unk)
        logp[p] = own
        loss = counts.get(p, 0) * (own - alt)
        scored.append((loss, p))
    keep_multi = max(next_size - len(atoms), 0)
    scored.sort(key=lambda item: (-item[0], item[1]))
    kept = {p for _, p in scored[:keep_multi]}
    return {p: lp for p, lp in logp.items() if p in atoms or p in kept}
