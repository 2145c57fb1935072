"""Command line: ``screenparse train|parse|eval``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import report
from .caseframe import DEFAULT_BLOCKLIST, FrameConfig, load_compat_table
from .channel import CategoryChannel, train_channel
from .corpus import (
    CorpusError,
    bundled_corpus,
    evaluate,
    load_corpus,
    overall_interpretation_rate,
)
from .lexicon import ABSTRACT, Lexicon, LexiconError, tokenize
from .pipeline import Pipeline
from .srn import ModelFormatError, TrainConfig

log = logging.getLogger("screenparse")


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SCREENPARSE_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SCREENPARSE_SEED is not an integer: {env!r}") from None
    return 0


def _lexicon(args) -> Lexicon:
    if args.lexicon is None:
        return Lexicon.bundled()
    if not Path(args.lexicon).is_file():
        raise UsageError(f"lexicon not found: {args.lexicon}")
    return Lexicon.load(args.lexicon)


def _corpus(path, default_split):
    if path is None:
        return bundled_corpus(default_split)
    if not Path(path).is_file():
        raise UsageError(f"corpus not found: {path}")
    return load_corpus(path)


def _channel(args) -> CategoryChannel:
    lexicon = _lexicon(args)
    if args.models is None:
        channel = CategoryChannel.bundled()
        channel.lexicon = lexicon
        return channel
    if not Path(args.models).is_dir():
        raise UsageError(f"model directory not found: {args.models}")
    return CategoryChannel.load(args.models, lexicon)


def _frame_config(args) -> FrameConfig:
    blocklist = DEFAULT_BLOCKLIST
    if args.slot_blocklist is not None:
        names = [s.strip() for s in args.slot_blocklist.split(",") if s.strip()]
        try:
            blocklist = frozenset(ABSTRACT.canonical(n) for n in names)
        except KeyError as exc:
            raise UsageError(f"--slot-blocklist: {exc.args[0]}") from None
    compat = frozenset()
    if args.compat_table is not None:
        if not Path(args.compat_table).is_file():
            raise UsageError(f"compatibility table not found: {args.compat_table}")
        compat = load_compat_table(args.compat_table)
    return FrameConfig(blocklist, compat)


def _figures_dir(args) -> Path | None:
    if args.figures is None:
        return None
    d = Path(args.figures)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _emit_metrics(args, columns) -> None:
    if args.format == "jsonl":
        for split, m in columns.items():
            print(json.dumps({"split": split, **m.as_dict()}, sort_keys=True))
    else:
        print(report.metrics_table(columns.get("train"), columns.get("test")))


def cmd_train(args) -> int:
    train = _corpus(args.corpus, "train")
    test = _corpus(args.test_corpus, "test") if args.test_corpus else None
    lexicon = _lexicon(args)
    seed = _seed(args)
    overrides = {"learning_rate": args.lr, "epochs": args.epochs}
    config = TrainConfig(seed=seed, **{k: v for k, v in overrides.items() if v is not None})
    log.info("training on %d utterances, seed %d", len(train), seed)
    channel = CategoryChannel.untrained(lexicon, seed=seed, init_scale=config.init_scale)
    channel, train_metrics = train_channel(channel, train, config)
    out = Path(args.models or "models")
    channel.save(out)
    log.info("models written to %s", out)
    columns = {"train": train_metrics}
    if test is not None:
        columns["test"] = evaluate(channel, test)
    _emit_metrics(args, columns)
    figs = _figures_dir(args)
    if figs is not None:
        report.plot_metrics(columns, figs / "accuracy.png")
    return 0


def cmd_eval(args) -> int:
    channel = _channel(args)
    corpus = _corpus(args.corpus, "test")
    metrics = evaluate(channel, corpus)
    _emit_metrics(args, {"test": metrics})
    gold = [u.gold_surviving() for u in corpus]
    if any(g is not None for g in gold):
        pipe = Pipeline(channel, _frame_config(args))
        analyses = [pipe.analyze(u.tokens) for u in corpus]
        rate = overall_interpretation_rate(analyses, gold)
        if args.format == "jsonl":
            print(json.dumps({"overall_interpretation": rate.rate, "correct": rate.correct,
                              "scored": rate.scored, "skipped": rate.skipped}, sort_keys=True))
        else:
            print(report.rate_line(rate))
    elif args.format != "jsonl":
        print("overall interpretation: not computed (corpus has no keep column)")
    figs = _figures_dir(args)
    if figs is not None:
        report.plot_metrics({"test": metrics}, figs / "accuracy.png")
    return 0


def cmd_parse(args) -> int:
    channel = _channel(args)
    frame_config = _frame_config(args)
    if args.transcript in (None, "-"):
        lines = sys.stdin.read().splitlines()
    else:
        if not Path(args.transcript).is_file():
            raise UsageError(f"transcript not found: {args.transcript}")
        lines = Path(args.transcript).read_text(encoding="utf-8").splitlines()
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    pipe = Pipeline(channel, frame_config, trace=trace)
    figs = _figures_dir(args)
    first = True
    n = 0
    for line in lines:
        tokens = tokenize(line)
        if not tokens:
            continue
        for tok in tokens:
            pipe.process_token(tok)
        analysis = pipe.flush()
        if args.format == "jsonl":
            print(analysis.to_json())
        else:
            if not first:
                print()
            print(report.analysis_table(analysis))
        first = False
        if figs is not None:
            report.plot_activations(analysis, figs / f"utterance_{n:03d}.png")
        n += 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", help="lexicon file (default: bundled)")
    common.add_argument("--models", help="model directory (default: bundled models; "
                                         "train writes here, default ./models)")
    common.add_argument("--seed", type=int, help="random seed (fallback: $SCREENPARSE_SEED)")
    common.add_argument("--format", choices=("text", "jsonl"), default="text")
    common.add_argument("--figures", metavar="DIR", help="also write PNG figures to DIR")
    common.add_argument("--compat-table", help="allowed SYN<TAB>SEM slot pairs")
    common.add_argument("--slot-blocklist",
                        help="comma-separated group labels refused as slots (default: SG)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="screenparse", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[common], help="train the three tagging networks")
    p.add_argument("--corpus", help="annotated training corpus (default: bundled train split)")
    p.add_argument("--test-corpus", help="annotated corpus scored after training")
    p.add_argument("--lr", type=float, help="learning rate")
    p.add_argument("--epochs", type=int, help="training epochs")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("parse", parents=[common], help="analyse a transcript")
    p.add_argument("--transcript", help="one utterance per line (default: stdin)")
    p.add_argument("--trace", action="store_true",
                   help="log every hypothesis to stderr as pos<TAB>stage<TAB>summary")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", parents=[common], help="score models on an annotated corpus")
    p.add_argument("--corpus", help="annotated corpus (default: bundled test split)")
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(format="%(levelname)s: %(message)s",
                        level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, CorpusError, LexiconError, ModelFormatError,
            FileNotFoundError, ValueError) as exc:
        print(f"screenparse: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
