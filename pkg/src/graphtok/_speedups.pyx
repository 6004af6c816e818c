# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of graphtok._purepy.

Same algorithms, same selection rules, bit-identical output; typed loop
variables, C scratch buffers, and direct list indexing carry the speedup.
Counts stay exact Python integers and float arithmetic follows the same
expression shapes and accumulation order, so results match the pure-Python
kernels exactly.
"""

import heapq

from libc.stdlib cimport free, malloc

IMPLEMENTATION = "cython"


def merge_train_core(
    list words,
    list freqs,
    list contents,
    budget,
    bint wordpiece,
    min_pair_count,
    set banned_contents,
):
    """See graphtok._purepy.merge_train_core."""
    cdef dict contents_index = {c: i for i, c in enumerate(contents)}
    cdef dict pair_counts = {}
    cdef dict pair_words = {}
    cdef dict token_counts = {}
    cdef dict pairs_by_token = {}
    cdef list w, new_w
    cdef Py_ssize_t widx, k, n
    cdef object f, p, q, count

    for widx in range(len(words)):
        w = <list>words[widx]
        f = freqs[widx]
        if wordpiece:
            for t in w:
                token_counts[t] = token_counts.get(t, 0) + f
        n = len(w)
        for k in range(n - 1):
            p = (w[k], w[k + 1])
            pair_counts[p] = pair_counts.get(p, 0) + f
            s = pair_words.get(p)
            if s is None:
                s = set()
                pair_words[p] = s
            (<set>s).add(widx)

    def score_of(pair, count):
        return count / (token_counts[pair[0]] * token_counts[pair[1]])

    heap = []

    def push(pair):
        count = pair_counts.get(pair, 0)
        if count <= 0:
            return
        a, b = pair
        if wordpiece:
            key = -score_of(pair, count)
        else:
            key = -count
        heapq.heappush(heap, (key, contents[a], contents[b], a, b))

    for p in pair_counts:
        if wordpiece:
            a, b = p
            s = pairs_by_token.get(a)
            if s is None:
                s = set()
                pairs_by_token[a] = s
            (<set>s).add(p)
            s = pairs_by_token.get(b)
            if s is None:
                s = set()
                pairs_by_token[b] = s
            (<set>s).add(p)
        push(p)

    cdef list merges = []
    cdef set merged_pairs = set()
    created = 0
    cdef object a_id, b_id, r_id
    cdef set touched

    while heap:
        entry = heapq.heappop(heap)
        key = entry[0]
        a_id = entry[3]
        b_id = entry[4]
        p = (a_id, b_id)
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
            rc = contents[a_id] + _strip_wp(contents[b_id])
        else:
            rc = contents[a_id] + contents[b_id]
        if rc in banned_contents:
            merged_pairs.add(p)
            continue
        r_id = contents_index.get(rc)
        if r_id is None:
            if created >= budget:
                break
            r_id = len(contents)
            contents.append(rc)
            contents_index[rc] = r_id
            created += 1
        merges.append((a_id, b_id, r_id))
        merged_pairs.add(p)

        touched = set()
        for widx in sorted(pair_words.get(p, ())):
            w = <list>words[widx]
            n = len(w)
            if n < 2:
                continue
            new_w = []
            k = 0
            hit = False
            while k < n:
                if k < n - 1 and w[k] == a_id and w[k + 1] == b_id:
                    new_w.append(r_id)
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
                pair_counts[q] = pair_counts[q] - f
                touched.add(q)
            for k in range(len(new_w) - 1):
                q = (new_w[k], new_w[k + 1])
                pair_counts[q] = pair_counts.get(q, 0) + f
                s = pair_words.get(q)
                if s is None:
                    s = set()
                    pair_words[q] = s
                (<set>s).add(widx)
                if wordpiece:
                    s = pairs_by_token.get(q[0])
                    if s is None:
                        s = set()
                        pairs_by_token[q[0]] = s
                    (<set>s).add(q)
                    s = pairs_by_token.get(q[1])
                    if s is None:
                        s = set()
                        pairs_by_token[q[1]] = s
                    (<set>s).add(q)
                touched.add(q)
            if wordpiece:
                for t in w:
                    token_counts[t] = token_counts[t] - f
                for t in new_w:
                    token_counts[t] = token_counts.get(t, 0) + f
            words[widx] = new_w
        pair_words.pop(p, None)

        if wordpiece:
            for t in (a_id, b_id, r_id):
                extra = pairs_by_token.get(t)
                if extra is not None:
                    touched.update(extra)
        for q in touched:
            if q not in merged_pairs:
                push(q)

    return merges


def _strip_wp(content):
    return content[2:] if content.startswith("##") else content


def apply_merges_seq(list ids, dict ranks):
    """See graphtok._purepy.apply_merges_seq."""
    cdef Py_ssize_t k, n
    cdef long long best_rank
    cdef object best_a, best_b, best_r, hit
    cdef list out
    while len(ids) >= 2:
        best_rank = -1
        best_a = best_b = best_r = None
        n = len(ids)
        for k in range(n - 1):
            hit = ranks.get((ids[k], ids[k + 1]))
            if hit is not None and (best_rank < 0 or <long long>hit[0] < best_rank):
                best_rank = hit[0]
                best_a = ids[k]
                best_b = ids[k + 1]
                best_r = hit[1]
        if best_rank < 0:
            break
        out = []
        k = 0
        while k < n:
            if k < n - 1 and ids[k] == best_a and ids[k + 1] == best_b:
                out.append(best_r)
                k += 2
            else:
                out.append(ids[k])
                k += 1
        ids = out
    return ids


def unigram_seed_counts(list words, list offsets, list freqs, max_len):
    """See graphtok._purepy.unigram_seed_counts."""
    cdef dict counts = {}
    cdef Py_ssize_t i, j, m, top, t, cap = max_len
    cdef Py_ssize_t buf_cap = 256
    cdef Py_ssize_t *coffs = <Py_ssize_t *>malloc(buf_cap * sizeof(Py_ssize_t))
    cdef tuple offs
    cdef str word
    cdef object f, prev
    if coffs == NULL:
        raise MemoryError()
    try:
        for word_obj, offs_obj, f in zip(words, offsets, freqs):
            word = <str>word_obj
            offs = <tuple>offs_obj
            m = len(offs) - 1
            if m + 1 > buf_cap:
                free(coffs)
                buf_cap = m + 1
                coffs = <Py_ssize_t *>malloc(buf_cap * sizeof(Py_ssize_t))
                if coffs == NULL:
                    raise MemoryError()
            for t in range(m + 1):
                coffs[t] = <Py_ssize_t>offs[t]
            for i in range(m):
                top = i + cap
                if top > m:
                    top = m
                for j in range(i + 2, top + 1):
                    sub = word[coffs[i] : coffs[j]]
                    prev = counts.get(sub)
                    counts[sub] = f if prev is None else prev + f
    finally:
        free(coffs)
    return counts


cdef tuple _viterbi(str word, tuple offs, dict logp, Py_ssize_t cap, double unk_logprob):
    cdef Py_ssize_t m = len(offs) - 1
    cdef Py_ssize_t i, j, lo, t
    cdef double neg = float("-inf")
    cdef double bj, si, s, lp_val, final
    cdef double *best = NULL
    cdef Py_ssize_t *back = NULL
    cdef Py_ssize_t *coffs = NULL
    cdef object lp
    cdef list pieces
    best = <double *>malloc((m + 1) * sizeof(double))
    back = <Py_ssize_t *>malloc((m + 1) * sizeof(Py_ssize_t))
    coffs = <Py_ssize_t *>malloc((m + 1) * sizeof(Py_ssize_t))
    if best == NULL or back == NULL or coffs == NULL:
        free(best)
        free(back)
        free(coffs)
        raise MemoryError()
    try:
        for t in range(m + 1):
            coffs[t] = <Py_ssize_t>offs[t]
            best[t] = neg
            back[t] = 0
        best[0] = 0.0
        for j in range(1, m + 1):
            lo = j - cap
            if lo < 0:
                lo = 0
            bj = neg
            back[j] = -1
            for i in range(lo, j):
                si = best[i]
                if si == neg:
                    continue
                piece = word[coffs[i] : coffs[j]]
                lp = logp.get(piece)
                if lp is None:
                    if j - i != 1:
                        continue
                    lp_val = unk_logprob
                else:
                    lp_val = <double>lp
                s = si + lp_val
                if s > bj:
                    bj = s
                    back[j] = i
            best[j] = bj
        final = best[m]
        if final == neg:
            return [word], unk_logprob
        pieces = []
        j = m
        while j > 0:
            i = back[j]
            pieces.append(word[coffs[i] : coffs[j]])
            j = i
        pieces.reverse()
        return pieces, final
    finally:
        free(best)
        free(back)
        free(coffs)


def unigram_viterbi(str word, tuple offs, dict logp, max_len, double unk_logprob):
    """See graphtok._purepy.unigram_viterbi."""
    return _viterbi(word, offs, logp, <Py_ssize_t>max_len, unk_logprob)


def unigram_em_counts(list words, list offsets, list freqs, dict logp, max_len, double unk_logprob):
    """See graphtok._purepy.unigram_em_counts."""
    cdef dict counts = {}
    cdef double total = 0.0
    cdef Py_ssize_t cap = max_len
    cdef object f, prev, score
    cdef list pieces
    for word, offs, f in zip(words, offsets, freqs):
        pieces, score = _viterbi(<str>word, <tuple>offs, logp, cap, unk_logprob)
        for piece in pieces:
            prev = counts.get(piece)
            counts[piece] = f if prev is None else prev + f
        total += f * <double>score
    return counts, total
