#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Synthesizes a seeded mixed-script corpus, runs each trainer and a corpus
encode through both kernel implementations, reports wall times, and verifies
the outputs are identical (they must be bit-for-bit; the compiled path is
only allowed to be faster, never different).

    python benchmarks/bench_kernels.py [--lines 4000] [--vocab 1200]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from util import fuzz_line  # noqa: E402

from graphtok import _kernels, _purepy  # noqa: E402
from graphtok.pretokenize import preset_spec  # noqa: E402
from graphtok.trainers import train_bpe, train_gpe, train_unigram, train_wordpiece  # noqa: E402

try:
    from graphtok import _speedups
except ImportError:
    _speedups = None

KERNEL_NAMES = (
    "merge_train_core",
    "apply_merges_seq",
    "unigram_seed_counts",
    "unigram_viterbi",
    "unigram_em_counts",
)


def use_kernels(module) -> None:
    for name in KERNEL_NAMES:
        setattr(_kernels, name, getattr(module, name))


def make_corpus(lines: int, seed: int = 9) -> list[str]:
    rng = random.Random(seed)
    base = [fuzz_line(rng, 20, 80) for _ in range(lines // 2)]
    return base + base  # duplicates keep pair counts above the merge floor


def budgets(corpus: list[str], merges: int) -> dict[str, int]:
    """Vocabulary sizes leaving room for `merges` learned tokens per trainer."""
    from graphtok.segmentation import DEFAULT_POLICY, iter_grapheme_strings
    from graphtok.trainers import count_pretokens

    ws_words = sorted(count_pretokens(corpus, preset_spec("whitespace")))
    graphemes = {c for w in ws_words for c in iter_grapheme_strings(w, DEFAULT_POLICY)}
    wp_alpha = {w[0] for w in ws_words} | {"##" + ch for w in ws_words for ch in w[1:]}
    atoms = {ch for w in ws_words for ch in w}
    return {
        "bpe": 256 + merges,
        "gpe": 256 + len(graphemes) + merges,
        "wordpiece": 256 + len(wp_alpha) + merges,
        "unigram": 256 + len(atoms) + merges,
    }


def run_once(corpus: list[str], merges: int) -> dict[str, tuple[float, object]]:
    ws = preset_spec("whitespace")
    gpt2 = preset_spec("gpt2")
    sizes = budgets(corpus, merges)
    out: dict[str, tuple[float, object]] = {}

    t0 = time.perf_counter()
    bpe = train_bpe(corpus, gpt2, sizes["bpe"])
    out["train bpe (byte, gpt2)"] = (time.perf_counter() - t0, bpe.to_json_dict())

    t0 = time.perf_counter()
    gpe = train_gpe(corpus, ws, sizes["gpe"])
    out["train gpe (whitespace)"] = (time.perf_counter() - t0, gpe.to_json_dict())

    t0 = time.perf_counter()
    wp = train_wordpiece(corpus, ws, sizes["wordpiece"])
    out["train wordpiece"] = (time.perf_counter() - t0, wp.to_json_dict())

    t0 = time.perf_counter()
    uni = train_unigram(corpus, ws, sizes["unigram"])
    out["train unigram"] = (time.perf_counter() - t0, uni.to_json_dict())

    t0 = time.perf_counter()
    ids = [gpe.encode(line) for line in corpus]
    out["encode corpus (gpe)"] = (time.perf_counter() - t0, ids)
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lines", type=int, default=4000)
    parser.add_argument("--merges", type=int, default=1200, help="learned-token budget per trainer")
    args = parser.parse_args()

    if _speedups is None:
        print("compiled extension not available; nothing to compare", file=sys.stderr)
        return 1

    corpus = make_corpus(args.lines)
    print(f"corpus: {len(corpus)} lines, {args.merges} learned tokens per trainer")
    print(f"{'stage':<28}{'python':>10}{'cython':>10}{'speedup':>9}  outputs")

    use_kernels(_purepy)
    py = run_once(corpus, args.merges)
    use_kernels(_speedups)
    cy = run_once(corpus, args.merges)

    all_equal = True
    for stage in py:
        t_py, r_py = py[stage]
        t_cy, r_cy = cy[stage]
        equal = r_py == r_cy
        all_equal &= equal
        print(f"{stage:<28}{t_py:>9.2f}s{t_cy:>9.2f}s{t_py / t_cy:>8.1f}x  "
              f"{'identical' if equal else 'MISMATCH'}")
    if not all_equal:
        print("kernel outputs differ between implementations", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
