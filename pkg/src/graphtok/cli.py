"""The ``tok`` command line: reproducible tokenizer experiments.

Subcommands: ``sample`` (seeded corpus sampling), ``train``, ``encode``,
``decode``, ``pretok-audit`` (pre-tokenization bounds), ``eval`` (compression
ratio / parity of a trained model or a character-level mode), and
``reproduce`` (the full experiment bundle over FLORES+-shaped parallel data
plus a Tamil training corpus).

Every command accepts ``--config FILE`` with the same field names as its
flags (flags override the file).  Each written artifact gets a sidecar
``<path>.manifest.json`` recording the resolved settings, input digests, a
stable config digest, and wall time; TSV and markdown reports additionally
carry the seed and config digest on a leading ``#`` line.  Errors go to
stderr with an ``error:`` prefix and a nonzero exit code.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .charlevel import CharLevelMode
from .corpus import CorpusError, ParallelCorpus, corpus_digest, read_lines, sample_lines, write_lines
from .metrics import (
    MICRO,
    LengthUnit,
    MetricsReport,
    MetricsRow,
    cr_max_detail,
    emit_report,
    tokenization_parity,
    tp_min,
)
from .pretokenize import PretokenizerSpec, count_pretokens, preset_spec
from .segmentation import SegmentationPolicy
from .subword import ModelFormatError, TokenizerModel, load_model, save_model
from .trainers import train_bpe, train_gpe, train_unigram, train_wordpiece

DEFAULT_SEED = 42
FLORES_CODES = {"en": "eng_Latn", "ta": "tam_Taml", "si": "sin_Sinh", "hi": "hin_Deva"}


class CliError(Exception):
    pass


# -- plumbing ---------------------------------------------------------------


def _settings_digest(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _write_manifest(output_path: str, command: str, settings: dict, inputs: dict,
                    outputs: dict, started: float) -> dict:
    digest = _settings_digest({"command": command, "settings": settings, "inputs": inputs})
    manifest = {
        "tool": f"graphtok {__version__}",
        "command": command,
        "settings": settings,
        "inputs": inputs,
        "config_digest": digest,
        "outputs": outputs,
        "wall_time_s": round(time.monotonic() - started, 3),
    }
    path = Path(str(output_path) + ".manifest.json")
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    return manifest


def _write_report(path: str | None, report: MetricsReport, fmt: str, seed: int | None,
                  digest: str) -> None:
    body = emit_report(report.rows, fmt)
    if fmt in ("tsv", "md"):
        head = f"# seed={'-' if seed is None else seed} config={digest}"
        if report.diagnostics:
            head += f" diagnostics={json.dumps(report.diagnostics, sort_keys=True)}"
        body = head + "\n" + body
    if path:
        Path(path).write_text(body, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(body)


def _parse_corpus_args(pairs: list[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for pair in pairs:
        if "=" not in pair:
            raise CliError(f"--corpus expects LANG=PATH, got {pair!r}")
        lang, path = pair.split("=", 1)
        if lang in out:
            raise CliError(f"duplicate language {lang!r} in --corpus")
        out[lang] = path
    return out


def _spec_from_args(args) -> PretokenizerSpec:
    if getattr(args, "pattern", None):
        return PretokenizerSpec(kind="custom_regex", pattern=args.pattern)
    return preset_spec(args.preset)


def _merge_config(args: argparse.Namespace, parser_defaults: dict) -> argparse.Namespace:
    """Apply --config file values under explicit flags (flags win)."""
    if not getattr(args, "config", None):
        return args
    doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise CliError(f"config file {args.config} must hold a JSON object")
    for key, value in doc.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise CliError(f"config file {args.config}: unknown field {key!r}")
        if getattr(args, attr) == parser_defaults.get(attr):
            setattr(args, attr, value)
    return args


def _check_required(args: argparse.Namespace) -> None:
    for dest in getattr(args, "_required", ()):
        value = getattr(args, dest, None)
        if value is None or value == []:
            flag = "-n" if dest == "n" else "--" + dest.replace("_", "-")
            raise CliError(f"missing required {flag} (flag or config-file field)")


# -- subcommands ------------------------------------------------------------


def cmd_sample(args) -> int:
    started = time.monotonic()
    lines = read_lines(args.input, nfc=args.nfc)
    sampled = sample_lines(lines, args.n, args.seed)
    write_lines(args.output, sampled)
    settings = {"n": args.n, "seed": args.seed, "nfc": args.nfc}
    _write_manifest(args.output, "sample", settings,
                    {str(args.input): corpus_digest(args.input)},
                    {"lines_written": len(sampled)}, started)
    return 0


def _policy_from(name: str | None) -> SegmentationPolicy | None:
    return SegmentationPolicy(name) if name else None


def cmd_train(args) -> int:
    started = time.monotonic()
    spec = _spec_from_args(args)
    lines = read_lines(args.input, nfc=args.nfc)
    policy = _policy_from(args.policy)
    common = dict(unknown_policy=args.unknown_policy, workers=args.workers)
    if args.algorithm == "bpe":
        model = train_bpe(lines, spec, args.vocab_size, args.atomic_mode,
                          segmentation_policy=policy,
                          min_pair_frequency=args.min_pair_frequency, **common)
    elif args.algorithm == "gpe":
        model = train_gpe(lines, spec, args.vocab_size,
                          policy=policy or SegmentationPolicy(),
                          min_pair_frequency=args.min_pair_frequency, **common)
    elif args.algorithm == "wordpiece":
        model = train_wordpiece(lines, spec, args.vocab_size,
                                min_pair_frequency=args.min_pair_frequency, **common)
    elif args.algorithm == "unigram":
        model = train_unigram(lines, spec, args.vocab_size, args.atomic_mode
                              if args.atomic_mode in ("codepoint", "grapheme") else "codepoint",
                              segmentation_policy=policy, **common)
    else:
        raise CliError(f"unknown algorithm {args.algorithm!r}")
    save_model(model, args.output)
    settings = {
        "algorithm": args.algorithm,
        "preset": args.preset,
        "pattern": args.pattern,
        "vocab_size": args.vocab_size,
        "atomic_mode": model.atomic_mode,
        "policy": model.segmentation_policy.mode if model.segmentation_policy else None,
        "unknown_policy": args.unknown_policy,
        "min_pair_frequency": args.min_pair_frequency,
        "nfc": args.nfc,
        "seed": args.seed,
    }
    _write_manifest(args.output, "train", settings,
                    {str(args.input): corpus_digest(args.input)},
                    {"actual_vocab_size": len(model.vocab)}, started)
    return 0


def cmd_encode(args) -> int:
    model = load_model(args.model)
    lines = read_lines(args.input)
    with open(args.output, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(" ".join(map(str, model.encode(line))))
            f.write("\n")
    return 0


def cmd_decode(args) -> int:
    model = load_model(args.model)
    lines = read_lines(args.input)
    out: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        try:
            ids = [int(tok) for tok in line.split()] if line.strip() else []
        except ValueError:
            raise CliError(f"{args.input}: line {lineno}: malformed id line")
        try:
            out.append(model.decode(ids))
        except ValueError as exc:
            raise CliError(f"{args.input}: line {lineno}: {exc}")
    write_lines(args.output, out)
    return 0


def _load_parallel(corpus_paths: dict[str, str], nfc: bool) -> ParallelCorpus:
    return ParallelCorpus.from_files(corpus_paths, nfc=nfc)


def cmd_pretok_audit(args) -> int:
    started = time.monotonic()
    corpus_paths = _parse_corpus_args(args.corpus)
    presets = [p.strip() for p in args.presets.split(",") if p.strip()]
    unit = LengthUnit(args.unit)
    report = MetricsReport()
    parallel = _load_parallel(corpus_paths, args.nfc) if len(corpus_paths) > 1 else None
    for preset_name in presets:
        spec = preset_spec(preset_name)
        for lang, path in corpus_paths.items():
            texts = parallel.lines[lang] if parallel else read_lines(path, nfc=args.nfc)
            detail = cr_max_detail(spec, texts, unit, args.aggregation)
            report.add(MetricsRow(preset_name, lang, "CR_max", detail.value,
                                  detail.numerator, detail.denominator,
                                  args.unit, args.aggregation))
            report.note_excluded(f"{preset_name}/{lang}/zero_pretoken_lines", detail.excluded_lines)
        if parallel and args.pivot:
            for lang in corpus_paths:
                if lang == args.pivot:
                    continue
                value = tp_min(spec, parallel, lang, args.pivot, args.aggregation)
                num = sum(count_pretokens(t, spec) for t in parallel.lines[lang])
                den = sum(count_pretokens(t, spec) for t in parallel.lines[args.pivot])
                report.add(MetricsRow(preset_name, f"{lang}/{args.pivot}", "TP_min",
                                      value, num, den, "pretoken", args.aggregation))
    settings = {"presets": presets, "unit": args.unit, "aggregation": args.aggregation,
                "pivot": args.pivot, "nfc": args.nfc}
    inputs = {path: corpus_digest(path) for path in corpus_paths.values()}
    digest = _settings_digest({"command": "pretok-audit", "settings": settings, "inputs": inputs})
    _write_report(args.output, report, args.format, None, digest)
    if args.output:
        _write_manifest(args.output, "pretok-audit", settings, inputs,
                        {"rows": len(report.rows), "diagnostics": report.diagnostics}, started)
    return 0


def _token_counter(args):
    """Returns (label, tokenize: text -> count) from --model or --char-mode."""
    if args.model:
        model = load_model(args.model)
        return Path(args.model).stem, model.token_count
    if not args.char_mode:
        raise CliError("eval needs --model or --char-mode")
    mode = CharLevelMode(args.char_mode, policy=_policy_from(args.policy) or SegmentationPolicy(),
                         specials_per_sequence=args.specials_per_seq)
    from .charlevel import char_token_count

    return f"char:{args.char_mode}", lambda text: char_token_count(text, mode)


def cmd_eval(args) -> int:
    started = time.monotonic()
    corpus_paths = _parse_corpus_args(args.corpus)
    label, tokenize = _token_counter(args)
    unit = LengthUnit(args.unit)
    report = MetricsReport()
    parallel = _load_parallel(corpus_paths, args.nfc) if len(corpus_paths) > 1 else None
    counts_by_lang: dict[str, list[int]] = {}
    for lang, path in corpus_paths.items():
        texts = parallel.lines[lang] if parallel else read_lines(path, nfc=args.nfc)
        lengths: list[int] = []
        counts: list[int] = []
        excluded = 0
        for text in texts:
            n = tokenize(text)
            if n == 0:
                excluded += 1
                continue
            lengths.append(unit.measure(text))
            counts.append(n)
        if not counts:
            raise CliError(f"{lang}: no tokenizable lines")
        if args.aggregation == MICRO:
            value = sum(lengths) / sum(counts)
        else:
            value = sum(l / c for l, c in zip(lengths, counts)) / len(counts)
        report.add(MetricsRow(label, lang, "CR", value, sum(lengths), sum(counts),
                              args.unit, args.aggregation))
        report.note_excluded(f"{label}/{lang}/zero_token_lines", excluded)
        counts_by_lang[lang] = counts
    if parallel and args.pivot:
        for lang in corpus_paths:
            if lang == args.pivot:
                continue
            value = tokenization_parity(parallel, tokenize, lang, args.pivot, args.aggregation)
            num = sum(tokenize(t) for t in parallel.lines[lang])
            den = sum(tokenize(t) for t in parallel.lines[args.pivot])
            report.add(MetricsRow(label, f"{lang}/{args.pivot}", "TP", value,
                                  num, den, "token", args.aggregation))
    settings = {"model": args.model, "char_mode": args.char_mode,
                "specials_per_seq": args.specials_per_seq, "unit": args.unit,
                "aggregation": args.aggregation, "pivot": args.pivot, "nfc": args.nfc}
    inputs = {path: corpus_digest(path) for path in corpus_paths.values()}
    digest = _settings_digest({"command": "eval", "settings": settings, "inputs": inputs})
    _write_report(args.output, report, args.format, None, digest)
    if args.output:
        _write_manifest(args.output, "eval", settings, inputs,
                        {"rows": len(report.rows), "diagnostics": report.diagnostics}, started)
    return 0


# -- reproduce ----------------------------------------------------------------


def _find_flores_file(flores_dir: Path, code: str) -> Path:
    flores = FLORES_CODES[code]
    candidates = [
        flores_dir / "dev" / f"{flores}.dev",
        flores_dir / f"{flores}.dev",
        flores_dir / f"{code}.dev",
        flores_dir / f"dev.{code}",
        flores_dir / f"{code}.txt",
        flores_dir / f"{flores}.txt",
    ]
    for cand in candidates:
        if cand.is_file():
            return cand
    raise CliError(
        f"no FLORES+ dev file for {code!r} under {flores_dir}; tried: "
        + ", ".join(str(c) for c in candidates)
    )


def cmd_reproduce(args) -> int:
    started = time.monotonic()
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    flores_dir = Path(args.flores_dir)
    langs = ["en", "ta", "si", "hi"]
    files = {code: _find_flores_file(flores_dir, code) for code in langs}
    parallel = ParallelCorpus.from_files({c: str(p) for c, p in files.items()})
    unit = LengthUnit("codepoint")
    inputs = {str(p): corpus_digest(p) for p in files.values()}
    settings = {
        "seed": args.seed,
        "vocab_size": args.vocab_size,
        "train_lines": args.train_lines,
        "aggregation": args.aggregation,
        "flores_files": {c: str(p) for c, p in files.items()},
    }

    # 1. pre-tokenization bounds for the four preset families
    bounds = MetricsReport()
    for preset_name in ("gpt2", "gpt4_llama3", "whitespace", "whitespace_punct"):
        spec = preset_spec(preset_name)
        for lang in langs:
            detail = cr_max_detail(spec, parallel.lines[lang], unit, args.aggregation)
            bounds.add(MetricsRow(preset_name, lang, "CR_max", detail.value,
                                  detail.numerator, detail.denominator,
                                  "codepoint", args.aggregation))
        for lang in ("ta", "si", "hi"):
            value = tp_min(spec, parallel, lang, "en", args.aggregation)
            num = sum(count_pretokens(t, spec) for t in parallel.lines[lang])
            den = sum(count_pretokens(t, spec) for t in parallel.lines["en"])
            bounds.add(MetricsRow(preset_name, f"{lang}/en", "TP_min", value,
                                  num, den, "pretoken", args.aggregation))
    digest = _settings_digest({"command": "reproduce", "settings": settings, "inputs": inputs})
    _write_report(str(out_dir / "pretoken_bounds.tsv"), bounds, "tsv", args.seed, digest)

    # 2. character-level comparison (codepoint mode carries 2 per-sentence
    #    markers to mirror the reference byte-level tokenizers)
    charlevel = MetricsReport()
    for mode_name, specials in (("utf8_byte", 0), ("codepoint", 2), ("grapheme", 0)):
        mode = CharLevelMode(mode_name, specials_per_sequence=specials)
        from .charlevel import char_token_count

        tokenize = lambda text: char_token_count(text, mode)  # noqa: E731
        label = f"char:{mode_name}"
        for lang in langs:
            texts = parallel.lines[lang]
            lengths = [unit.measure(t) for t in texts]
            counts = [tokenize(t) for t in texts]
            value = (sum(lengths) / sum(counts) if args.aggregation == MICRO
                     else sum(l / c for l, c in zip(lengths, counts)) / len(counts))
            charlevel.add(MetricsRow(label, lang, "CR", value, sum(lengths),
                                     sum(counts), "codepoint", args.aggregation))
        for lang in ("ta", "si", "hi"):
            value = tokenization_parity(parallel, tokenize, lang, "en", args.aggregation)
            num = sum(tokenize(t) for t in parallel.lines[lang])
            den = sum(tokenize(t) for t in parallel.lines["en"])
            charlevel.add(MetricsRow(label, f"{lang}/en", "TP", value, num, den,
                                     "token", args.aggregation))
    _write_report(str(out_dir / "charlevel.tsv"), charlevel, "tsv", args.seed, digest)

    # 3. trainer comparison on the Tamil sample
    all_lines = read_lines(args.samanantar_ta)
    n = min(args.train_lines, len(all_lines))
    train_sample = sample_lines(all_lines, n, args.seed)
    settings["train_lines_used"] = n
    ws = preset_spec("whitespace")
    ta_texts = parallel.lines["ta"]
    trained = MetricsReport()

    def eval_cr(model: TokenizerModel, label: str) -> None:
        lengths = [unit.measure(t) for t in ta_texts]
        counts = [model.token_count(t) for t in ta_texts]
        value = (sum(lengths) / sum(counts) if args.aggregation == MICRO
                 else sum(l / c for l, c in zip(lengths, counts)) / len(counts))
        trained.add(MetricsRow(label, "ta", "CR", value, sum(lengths), sum(counts),
                               "codepoint", args.aggregation))

    # codepoint atoms match the plain-vanilla trainers this comparison targets
    bpe = train_bpe(train_sample, ws, args.vocab_size, atomic_mode="codepoint")
    save_model(bpe, out_dir / "bpe_ws.model.json")
    eval_cr(bpe, "bpe")
    uni = train_unigram(train_sample, ws, args.vocab_size)
    save_model(uni, out_dir / "unigram_ws.model.json")
    eval_cr(uni, "unigram")
    wp = train_wordpiece(train_sample, ws, args.vocab_size)
    save_model(wp, out_dir / "wordpiece_ws.model.json")
    eval_cr(wp, "wordpiece")
    gpe = train_gpe(train_sample, ws, args.vocab_size)
    save_model(gpe, out_dir / "gpe_ws.model.json")
    eval_cr(gpe, "gpe")

    bpe_gpt2 = train_bpe(train_sample, preset_spec("gpt2"), args.vocab_size,
                         atomic_mode="codepoint")
    save_model(bpe_gpt2, out_dir / "bpe_gpt2.model.json")
    eval_cr(bpe_gpt2, "bpe[gpt2-pretok]")
    gpt2_bound = cr_max_detail(preset_spec("gpt2"), ta_texts, unit, args.aggregation)
    trained.add(MetricsRow("bound[gpt2-pretok]", "ta", "CR_max", gpt2_bound.value,
                           gpt2_bound.numerator, gpt2_bound.denominator,
                           "codepoint", args.aggregation))
    _write_report(str(out_dir / "trained_cr.tsv"), trained, "tsv", args.seed, digest)

    inputs[str(args.samanantar_ta)] = corpus_digest(args.samanantar_ta)
    _write_manifest(str(out_dir / "reproduce"), "reproduce", settings, inputs,
                    {"reports": ["pretoken_bounds.tsv", "charlevel.tsv", "trained_cr.tsv"]},
                    started)
    return 0


# -- argument parsing ---------------------------------------------------------


def _add_common_report_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--unit", choices=["codepoint", "utf8_byte", "grapheme"], default="codepoint")
    p.add_argument("--aggregation", choices=["micro", "macro"], default="micro")
    p.add_argument("--format", choices=["tsv", "json", "md"], default="tsv")
    p.add_argument("--output", default=None, help="report path (default: stdout)")
    p.add_argument("--nfc", action="store_true", help="NFC-normalize corpus lines at ingestion")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, dict]]:
    """Build the CLI parser plus a per-command map of argument defaults.

    Required-by-contract arguments are declared optional here so a config
    file can supply them; :func:`_check_required` enforces presence after
    the merge.
    """
    parser = argparse.ArgumentParser(prog="tok", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"graphtok {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    defaults_by_command: dict[str, dict] = {}

    def finish(p: argparse.ArgumentParser, name: str, func, required: tuple[str, ...]) -> None:
        p.set_defaults(func=func, _required=required)
        defaults_by_command[name] = {
            a.dest: a.default for a in p._actions if a.dest not in ("help", "func")
        }

    p = sub.add_parser("sample", help="seeded uniform line sample of a corpus")
    p.add_argument("--config", default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--output", default=None)
    p.add_argument("-n", type=int, default=None, help="number of lines to keep")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--nfc", action="store_true")
    finish(p, "sample", cmd_sample, ("input", "output", "n"))

    p = sub.add_parser("train", help="train a tokenizer model")
    p.add_argument("--config", default=None)
    p.add_argument("--algorithm", choices=["bpe", "gpe", "wordpiece", "unigram"], default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--output", default=None, help="model file to write")
    p.add_argument("--preset", default="whitespace",
                   help="pre-tokenizer preset (whitespace, whitespace_punct, gpt2, gpt4_llama3, identity)")
    p.add_argument("--pattern", default=None, help="custom pre-tokenizer regex instead of a preset")
    p.add_argument("--vocab-size", type=int, default=None)
    p.add_argument("--atomic-mode", choices=["byte", "codepoint", "grapheme"], default=None)
    p.add_argument("--policy", choices=["extended_default", "extended_abugida_tailored"], default=None)
    p.add_argument("--unknown-policy", choices=["byte_fallback", "unk_token"], default="byte_fallback")
    p.add_argument("--min-pair-frequency", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--nfc", action="store_true")
    finish(p, "train", cmd_train, ("algorithm", "input", "output", "vocab_size"))

    p = sub.add_parser("encode", help="encode a text file to id lines")
    p.add_argument("--config", default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--output", default=None)
    finish(p, "encode", cmd_encode, ("model", "input", "output"))

    p = sub.add_parser("decode", help="decode id lines back to text")
    p.add_argument("--config", default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--output", default=None)
    finish(p, "decode", cmd_decode, ("model", "input", "output"))

    p = sub.add_parser("pretok-audit", help="pre-tokenization bounds (CR ceiling, parity floor)")
    p.add_argument("--config", default=None)
    p.add_argument("--presets", default="gpt2,gpt4_llama3,whitespace,whitespace_punct")
    p.add_argument("--corpus", action="append", default=None, metavar="LANG=PATH")
    p.add_argument("--pivot", default=None, help="pivot language for the parity floor")
    _add_common_report_args(p)
    finish(p, "pretok-audit", cmd_pretok_audit, ("corpus",))

    p = sub.add_parser("eval", help="compression ratio / parity of a model or char-level mode")
    p.add_argument("--config", default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--char-mode", choices=["utf8_byte", "codepoint", "grapheme"], default=None)
    p.add_argument("--specials-per-seq", type=int, default=0)
    p.add_argument("--policy", choices=["extended_default", "extended_abugida_tailored"], default=None)
    p.add_argument("--corpus", action="append", default=None, metavar="LANG=PATH")
    p.add_argument("--pivot", default=None)
    _add_common_report_args(p)
    finish(p, "eval", cmd_eval, ("corpus",))

    p = sub.add_parser("reproduce", help="run the full experiment bundle")
    p.add_argument("--config", default=None)
    p.add_argument("--flores-dir", default=None,
                   help="directory with FLORES+ dev files for en/ta/si/hi")
    p.add_argument("--samanantar-ta", default=None, help="Tamil training corpus, one sentence per line")
    p.add_argument("--output-dir", default=None)
    p.add_argument("--train-lines", type=int, default=150_000)
    p.add_argument("--vocab-size", type=int, default=5_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--aggregation", choices=["micro", "macro"], default="micro")
    finish(p, "reproduce", cmd_reproduce, ("flores_dir", "samanantar_ta", "output_dir"))

    return parser, defaults_by_command


def main(argv: list[str] | None = None) -> int:
    parser, defaults_by_command = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args, defaults_by_command[args.command])
        _check_required(args)
        return args.func(args)
    except (CliError, CorpusError, ModelFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
