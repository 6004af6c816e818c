"""Pure-Python hot kernels for trainer inner loops and encoding.

The compiled extension :mod:`graphtok._speedups` implements the same four
functions with identical semantics; :mod:`graphtok._kernels` picks one at
import time.  Both implementations must produce bit-identical output for the
same input, so keep arithmetic on Python objects (exact ints, IEEE doubles
with a fixed accumulation order) in both.

Conventions:

* ``merge_train_core`` works in a local id space: ``contents[i]`` is the
  token content (``str`` or ``bytes``) for local id ``i``; atoms come first
  and merge results are appended.
* Pair counts are over all adjacent (overlapping) id pairs, weighted by
  word frequency.
* Selection order: highest count first (WordPiece: highest score
  ``count / (count(left) * count(right))``), ties broken by lexicographically
  smallest ``(left, right)`` content pair.
"""

from __future__ import annotations

import heapq

IMPLEMENTATION = "python"


def merge_train_core(
    words: list[list[int]],
    freqs: list[int],
    contents: list,
    budget: int,
    wordpiece: bool,
    min_pair_count: int,
    banned_contents: set,
) -> list[tuple[int, int, int]]:
    """Greedy pair-merge loop shared by the BPE-family trainers.

    ``words`` (mutated in place) are atom-id sequences of the distinct
    pre-tokens, ``freqs`` their corpus frequencies.  ``budget`` caps how many
    new vocabulary entries may be created.  Returns merge rules as
    ``(left_id, right_id, result_id)`` in creation order; ``contents`` is
    extended with the new tokens' contents.  Results whose content is in
    ``banned_contents`` (reserved markers) are never created.
    """
    contents_index = {c: i for i, c in enumerate(contents)}
    pair_counts: dict[tuple[int, int], int] = {}
    pair_words: dict[tuple[int, int], set[int]] = {}
    token_counts: dict[int, int] = {}
    pairs_by_token: dict[int, set[tuple[int, int]]] = {}

    for widx, w in enumerate(words):
        f = freqs[widx]
        if wordpiece:
            for t in w:
                token_counts[t] = token_counts.get(t, 0) + f
        for k in range(len(w) - 1):
            p = (w[k], w[k + 1])
            pair_counts[p] = pair_counts.get(p, 0) + f
            s = pair_words.get(p)
            if s is None:
                pair_words[p] = s = set()
            s.add(widx)

    def score_of(p: tuple[int, int], count: int) -> float:
        return count / (token_counts[p[0]] * token_counts[p[1]])

    heap: list = []

    def push(p: tuple[int, int]) -> None:
        count = pair_counts.get(p, 0)
        if count <= 0:
            return
        a, b = p
        if wordpiece:
            key = -score_of(p, count)
        else:
            key = -count
        heapq.heappush(heap, (key, contents[a], contents[b], a, b))

    for p in pair_counts:
        if wordpiece:
            a, b = p
            pairs_by_token.setdefault(a, set()).add(p)
            pairs_by_token.setdefault(b, set()).add(p)
        push(p)

    merges: list[tuple[int, int, int]] = []
    merged_pairs: set[tuple[int, int]] = set()
    created = 0

    while heap:
        key, _ca, _cb, a, b = heapq.heappop(heap)
        p = (a, b)
        count = pair_counts.get(p, 0)
        if count < min_pair_count or p in merged_pairs:
            continue
        if wordpiece:
            if -key != score_of(p, count):
                continue
        else:
            if -key != count:
                continue

        if wordpiece:
            rc = contents[a] + _strip_wp(contents[b])
        else:
            rc = contents[a] + contents[b]
        if rc in banned_contents:
            merged_pairs.add(p)
            continue
        r = contents_index.get(rc)
        if r is None:
            if created >= budget:
                break
            r = len(contents)
            contents.append(rc)
            contents_index[rc] = r
            created += 1
        merges.append((a, b, r))
        merged_pairs.add(p)

        touched: set[tuple[int, int]] = set()
        for widx in sorted(pair_words.get(p, ())):
            w = words[widx]
            n = len(w)
            if n < 2:
                continue
            new_w: list[int] = []
            k = 0
            hit = False
            while k < n:
                if k < n - 1 and w[k] == a and w[k + 1] == b:
                    new_w.append(r)
                    k += 2
                    hit = True
                else:
                    new_w.append(w[k])
                    k += 1
            if not hit:
                continue
            f = freqs[widx]
            for k in range(n - 1):
                q = (w[k], w[k + 1])
                pair_counts[q] -= f
                touched.add(q)
            for k in range(len(new_w) - 1):
                q = (new_w[k], new_w[k + 1])
                pair_counts[q] = pair_counts.get(q, 0) + f
                s = pair_words.get(q)
                if s is None:
                    pair_words[q] = s = set()
                s.add(widx)
                if wordpiece:
                    pairs_by_token.setdefault(q[0], set()).add(q)
                    pairs_by_token.setdefault(q[1], set()).add(q)
                touched.add(q)
            if wordpiece:
                for t in w:
                    token_counts[t] -= f
                for t in new_w:
                    token_counts[t] = token_counts.get(t, 0) + f
            words[widx] = new_w
        pair_words.pop(p, None)

        if wordpiece:
            # counts of a, b (and r) changed: every pair touching them rescored
            for t in (a, b, r):
                touched.update(pairs_by_token.get(t, ()))
        for q in touched:
            if q not in merged_pairs:
                push(q)

    return merges


def _strip_wp(content: str) -> str:
    return content[2:] if content.startswith("##") else content


def apply_merges_seq(ids: list[int], ranks: dict[tuple[int, int], tuple[int, int]]) -> list[int]:
    """Apply merge rules to an atom-id sequence, lowest rank first."""
    while len(ids) >= 2:
        best_rank = -1
        best_a = best_b = best_r = 0
        for k in range(len(ids) - 1):
            hit = ranks.get((ids[k], ids[k + 1]))
            if hit is not None and (best_rank < 0 or hit[0] < best_rank):
                best_rank = hit[0]
                best_a, best_b, best_r = ids[k], ids[k + 1], hit[1]
        if best_rank < 0:
            break
        out: list[int] = []
        k = 0
        n = len(ids)
        while k < n:
            if k < n - 1 and ids[k] == best_a and ids[k + 1] == best_b:
                out.append(best_r)
                k += 2
            else:
                out.append(ids[k])
                k += 1
        ids = out
    return ids


def unigram_seed_counts(
    words: list[str],
    offsets: list[tuple[int, ...]],
    freqs: list[int],
    max_len: int,
) -> dict[str, int]:
    """Weighted occurrence counts of all multi-atom substrings up to ``max_len`` atoms.

    ``offsets[w]`` holds the atom boundary offsets of ``words[w]`` (including
    0 and len); substrings always span whole atoms.
    """
    counts: dict[str, int] = {}
    for word, offs, f in zip(words, offsets, freqs):
        m = len(offs) - 1
        for i in range(m):
            top = min(m, i + max_len)
            for j in range(i + 2, top + 1):
                sub = word[offs[i] : offs[j]]
                counts[sub] = counts.get(sub, 0) + f
    return counts


def unigram_viterbi(
    word: str,
    offs: tuple[int, ...],
    logp: dict[str, float],
    max_len: int,
    unk_logprob: float,
) -> tuple[list[str], float]:
    """Best piece segmentation of one pre-token.

    Atoms missing from ``logp`` may be emitted alone at ``unk_logprob``.
    Ties prefer the longer final piece.  Returns the piece strings (unknown
    atoms appear as their text) and the total log-probability.
    """
    m = len(offs) - 1
    neg = float("-inf")
    best = [neg] * (m + 1)
    best[0] = 0.0
    back = [0] * (m + 1)
    for j in range(1, m + 1):
        lo = max(0, j - max_len)
        bj = neg
        bi = -1
        for i in range(lo, j):
            si = best[i]
            if si == neg:
                continue
            piece = word[offs[i] : offs[j]]
            lp = logp.get(piece)
            if lp is None:
                if j - i != 1:
                    continue
                lp = unk_logprob
            s = si + lp
            if s > bj:
                bj = s
                bi = i
        best[j] = bj
        back[j] = bi
    if best[m] == neg:  # unreachable: single atoms always allowed
        return [word], unk_logprob
    pieces: list[str] = []
    j = m
    while j > 0:
        i = back[j]
        pieces.append(word[offs[i] : offs[j]])
        j = i
    pieces.reverse()
    return pieces, best[m]


def unigram_em_counts(
    words: list[str],
    offsets: list[tuple[int, ...]],
    freqs: list[int],
    logp: dict[str, float],
    max_len: int,
    unk_logprob: float,
) -> tuple[dict[str, int], float]:
    """One hard-EM expectation pass: Viterbi-segment every word, count pieces.

    Returns integer piece counts (frequency-weighted) and the total
    log-likelihood (fixed accumulation order: word order).
    """
    counts: dict[str, int] = {}
    total = 0.0
    for word, offs, f in zip(words, offsets, freqs):
        pieces, score = unigram_viterbi(word, offs, logp, max_len, unk_logprob)
        for piece in pieces:
            counts[piece] = counts.get(piece, 0) + f
        total += f * score
    return counts, total
