"""Select the compiled kernel implementation, falling back to pure Python.

Set ``GRAPHTOK_PURE=1`` to force the pure-Python kernels even when the
compiled extension is available (used by the benchmark and the
cross-implementation determinism tests).
"""

from __future__ import annotations

import os

if os.environ.get("GRAPHTOK_PURE", "") not in ("", "0"):
    from graphtok import _purepy as _impl
else:
    try:
        from graphtok import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from graphtok import _purepy as _impl  # type: ignore[no-redef]

IMPLEMENTATION: str = _impl.IMPLEMENTATION
merge_train_core = _impl.merge_train_core
apply_merges_seq = _impl.apply_merges_seq
unigram_seed_counts = _impl.unigram_seed_counts
unigram_viterbi = _impl.unigram_viterbi
unigram_em_counts = _impl.unigram_em_counts
