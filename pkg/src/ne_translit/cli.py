"""Command-line interface: one executable for the whole workflow.

Subcommands: phonify, align-dump, train, transliterate, translate,
evaluate.  Batch commands read one item per line and write one line per
item, in input order, UTF-8 everywhere.  Usage errors exit 2; runtime
failures print a single-line diagnostic and exit 1.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import alignment, evaluation, kb as kb_mod, model as model_mod, phonology
from .decoder import Fallback, UNK_OUTPUT, viterbi
from .errors import ConfigError, NeTranslitError, UnseenPhonemeError
from .pipeline import PipelineConfig, parse_annotations, process_sentence

PROG = "ne-translit"

# Flat key = value config file; flags override these.
CONFIG_KEYS = {
    "smoothing_k": float,
    "em_iterations": int,
    "top_k": int,
    "fallback": str,
    "kb_persons": lambda v: v.lower() in ("1", "true", "yes", "on"),
}


def parse_config(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}: line {lineno}: expected key = value")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}: line {lineno}: unknown key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}: line {lineno}: bad value for {key!r}: {value!r}") from exc
    return values


def _setting(args, config, key, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _fallback_policy(value) -> Fallback:
    try:
        return Fallback(value)
    except ValueError as exc:
        raise ConfigError(f"unknown fallback policy {value!r}") from exc


def _open_input(args):
    path = getattr(args, "infile", None)
    if path:
        return open(path, "r", encoding="utf-8")
    return sys.stdin


def _info(args, message):
    if not args.quiet:
        print(message)


def cmd_phonify(args, config) -> int:
    stream = _open_input(args)
    try:
        for raw in stream:
            word = raw.strip()
            if not word:
                continue
            seq = phonology.phonify(word)
            print(f"{word}\t{seq.bracketed()}")
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0


def cmd_align_dump(args, config) -> int:
    entries, warnings = alignment.load_corpus(args.corpus)
    for warning in warnings:
        if not args.quiet:
            print(f"{PROG}: warning: {args.corpus}: {warning}", file=sys.stderr)
    iterations = int(_setting(args, config, "em_iterations", 10))
    try:
        costs = alignment.em_train_alignment(entries, iterations)
    except ValueError as exc:
        raise NeTranslitError(str(exc)) from exc
    aligned, skipped = alignment.build_aligned_corpus(entries, costs)
    for record in skipped:
        if not args.quiet:
            print(f"{PROG}: warning: skipped {record}", file=sys.stderr)
    counts = alignment.aligned_pair_counts(aligned)
    for (e, h), count in sorted(counts.items()):
        print(f"{e}\t{h}\t{count}")
    return 0


def cmd_train(args, config) -> int:
    entries, warnings = alignment.load_corpus(args.corpus)
    for warning in warnings:
        if not args.quiet:
            print(f"{PROG}: warning: {args.corpus}: {warning}", file=sys.stderr)
    iterations = int(_setting(args, config, "em_iterations", 10))
    smoothing_k = float(_setting(args, config, "smoothing_k", 0.1))
    try:
        costs = alignment.em_train_alignment(entries, iterations)
    except ValueError as exc:
        raise NeTranslitError(str(exc)) from exc
    aligned, skipped = alignment.build_aligned_corpus(entries, costs)
    for record in skipped:
        if not args.quiet:
            print(f"{PROG}: warning: skipped {record}", file=sys.stderr)
    usable = [pairs for pairs in aligned if pairs]
    if not usable:
        raise NeTranslitError("no usable entries after alignment")
    try:
        trained = model_mod.estimate(usable, smoothing_k)
    except ValueError as exc:
        raise NeTranslitError(str(exc)) from exc
    model_mod.save_model(trained, args.model_out)
    skipped_count = len(entries) - len(usable) + len(warnings)
    _info(args, f"trained on {len(usable)} entries ({skipped_count} skipped)")
    _info(
        args,
        f"vocabulary: {len(trained.e_vocab)} english phonemes, "
        f"{len(trained.h_vocab)} hindi phonemes",
    )
    _info(args, f"model written to {args.model_out}")
    return 0


def cmd_transliterate(args, config) -> int:
    trained = model_mod.load_model(args.model)
    top_k = int(_setting(args, config, "top_k", 10))
    policy = _fallback_policy(_setting(args, config, "fallback", "error"))
    stream = _open_input(args)
    try:
        for raw in stream:
            word = raw.strip()
            if not word:
                continue
            try:
                decoding = viterbi(trained, phonology.phonify_latin(word), top_k)
            except UnseenPhonemeError:
                if policy is Fallback.ERROR:
                    raise
                output = word if policy is Fallback.COPY_SOURCE else UNK_OUTPUT
                print(f"{word}\t{output}\t-")
                continue
            hindi = "".join(decoding.hindi_sequence)
            line = f"{word}\t{hindi}\t{decoding.score:.6f}"
            if args.trace:
                trace = " ".join(
                    f"{h}:{p:.6g}" for h, p in zip(decoding.hindi_sequence, decoding.per_position)
                )
                line += f"\t{trace}"
            print(line)
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0


def _load_kb_for(args) -> kb_mod.KnowledgeBase:
    allow_person = bool(args.kb_persons)
    if args.kb:
        return kb_mod.load_kb(args.kb, allow_person=allow_person)
    return kb_mod.load_seed_kb(allow_person=allow_person)


def cmd_translate(args, config) -> int:
    trained = model_mod.load_model(args.model)
    knowledge = _load_kb_for(args)
    pipeline_config = PipelineConfig(
        fallback=_fallback_policy(_setting(args, config, "fallback", "error")),
        top_k=int(_setting(args, config, "top_k", 10)),
        kb_persons=bool(args.kb_persons or config.get("kb_persons", False)),
    )
    decisions_out = open(args.decisions, "w", encoding="utf-8") if args.decisions else None
    stream = _open_input(args)
    try:
        for lineno, raw in enumerate(stream, start=1):
            line = raw.rstrip("\n")
            sentence, spans = parse_annotations(line, args.format)
            processed = process_sentence(sentence, spans, knowledge, trained, pipeline_config)
            print(processed.substituted)
            if decisions_out:
                for decision in processed.decisions:
                    span = decision.span
                    record = (
                        f"{lineno}\t{span.start}\t{span.end}\t{span.surface}"
                        f"\t{span.category.value}\t{decision.route.value}\t{decision.output}"
                    )
                    if decision.score is not None:
                        record += f"\t{decision.score:.6f}"
                    decisions_out.write(record + "\n")
    finally:
        if decisions_out:
            decisions_out.close()
        if stream is not sys.stdin:
            stream.close()
    return 0


def cmd_evaluate(args, config) -> int:
    gold = evaluation.load_gold(args.gold)
    system = evaluation.load_system(args.system)
    report = evaluation.evaluate(gold, system)
    sys.stdout.write(evaluation.render_report(report, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Translate or transliterate English named entities into Hindi.",
    )
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--quiet", action="store_true", help="suppress informational output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phonify", help="segment words (one per line) into phonemes")
    p.add_argument("--in", dest="infile", help="read words from a file instead of stdin")
    p.set_defaults(func=cmd_phonify)

    p = sub.add_parser("align-dump", help="train the aligner and dump pair counts")
    p.add_argument("corpus", help="parallel corpus: english<TAB>hindi per line")
    p.add_argument("--em-iterations", dest="em_iterations", type=int)
    p.set_defaults(func=cmd_align_dump)

    p = sub.add_parser("train", help="train a transliteration model from a parallel corpus")
    p.add_argument("corpus", help="parallel corpus: english<TAB>hindi per line")
    p.add_argument("model_out", help="where to write the model file")
    p.add_argument("--smoothing-k", dest="smoothing_k", type=float)
    p.add_argument("--em-iterations", dest="em_iterations", type=int)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("transliterate", help="transliterate words (one per line)")
    p.add_argument("--model", required=True)
    p.add_argument("--fallback", choices=[f.value for f in Fallback])
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--trace", action="store_true", help="append per-position scores")
    p.add_argument("--in", dest="infile", help="read words from a file instead of stdin")
    p.set_defaults(func=cmd_transliterate)

    p = sub.add_parser("translate", help="substitute entities in annotated sentences")
    p.add_argument("--model", required=True)
    p.add_argument("--kb", help=f"knowledge base file (default: ${kb_mod.SEED_KB_ENV_VAR} or the packaged seed)")
    p.add_argument("--format", choices=["inline", "columnar"], default="inline")
    p.add_argument("--fallback", choices=[f.value for f in Fallback])
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--kb-persons", action="store_true", help="let person names consult the KB")
    p.add_argument("--in", dest="infile", help="read sentences from a file instead of stdin")
    p.add_argument("--decisions", help="write one record per entity to this file")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("evaluate", help="score system outputs against gold translations")
    p.add_argument("--gold", required=True, help="english<TAB>category<TAB>hindi per line")
    p.add_argument("--system", required=True, help="one output per line, index-aligned")
    p.add_argument("--format", choices=["text", "tsv"], default="text")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    for stream in (sys.stdin, sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            try:
                stream.reconfigure(encoding="utf-8")
            except (ValueError, OSError):
                pass
    args = build_parser().parse_args(argv)
    try:
        config = parse_config(args.config) if args.config else {}
        return args.func(args, config)
    except NeTranslitError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
