"""Annotated-corpus loading and the per-module accuracy metrics."""

from __future__ import annotations

from dataclasses import dataclass, asdict
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .lexicon import ABSTRACT, BASIC, CategoryInventory, Token


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class GoldTag:
    basic: str
    abstract: str
    start: bool
    keep: bool | None = None


@dataclass(frozen=True)
class AnnotatedUtterance:
    tokens: tuple[Token, ...]
    gold: tuple[GoldTag, ...]

    @property
    def has_keep(self) -> bool:
        return all(g.keep is not None for g in self.gold)

    def gold_surviving(self) -> tuple[int, ...] | None:
        if not self.has_keep:
            return None
        return tuple(t.position for t, g in zip(self.tokens, self.gold) if g.keep)

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)


def parse_corpus(text: str, source: str = "<corpus>", basic: CategoryInventory = BASIC,
                 abstract: CategoryInventory = ABSTRACT) -> list[AnnotatedUtterance]:
    utterances = []
    tokens: list[Token] = []
    gold: list[GoldTag] = []

    def close():
        if tokens:
            utterances.append(AnnotatedUtterance(tuple(tokens), tuple(gold)))
            tokens.clear()
            gold.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            close()
            continue
        if line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (4, 5):
            raise CorpusError(f"{source}:{lineno}: expected 4 or 5 tab-separated fields")
        surface, b, a, start = fields[:4]
        if not surface or " " in surface:
            raise CorpusError(f"{source}:{lineno}: bad surface {surface!r}")
        if b not in basic:
            raise CorpusError(f"{source}:{lineno}: unknown basic label {b!r}")
        if a not in abstract:
            raise CorpusError(f"{source}:{lineno}: unknown abstract label {a!r}")
        bits = fields[3:]
        if any(bit not in ("0", "1") for bit in bits):
            raise CorpusError(f"{source}:{lineno}: start/keep must be 0 or 1")
        keep = None if len(fields) == 4 else fields[4] == "1"
        tokens.append(Token.make(surface, len(tokens)))
        gold.append(GoldTag(basic.canonical(b), abstract.canonical(a), start == "1", keep))
    close()
    return utterances


def load_corpus(path: str | Path, basic: CategoryInventory = BASIC,
                abstract: CategoryInventory = ABSTRACT) -> list[AnnotatedUtterance]:
    path = Path(path)
    return parse_corpus(path.read_text(encoding="utf-8"), str(path), basic, abstract)


def bundled_corpus(split: str) -> list[AnnotatedUtterance]:
    """``split`` is ``"train"`` or ``"test"``."""
    name = f"data/desk_{split}.tsv"
    text = resources.files("screenparse").joinpath(name).read_text("utf-8")
    return parse_corpus(text, name)


def bundled_corpus_path(split: str):
    return resources.files("screenparse").joinpath(f"data/desk_{split}.tsv")


@dataclass(frozen=True)
class Metrics:
    basic: float
    abstract: float
    start: float
    combined: float
    words: int
    utterances: int

    def as_dict(self) -> dict:
        return asdict(self)


def score(predictions: Iterable[Sequence], corpus: Sequence[AnnotatedUtterance]) -> Metrics:
    """Accuracy of per-word (basic, abstract, start) predictions against gold."""
    n = nb = na = ns = nc = 0
    n_utt = 0
    for pred, utt in zip(predictions, corpus):
        n_utt += 1
        if len(pred) != len(utt.gold):
            raise ValueError("prediction length does not match utterance length")
        for (b, a, s), g in zip(pred, utt.gold):
            n += 1
            ok_b = b == g.basic
            ok_a = a == g.abstract
            nb += ok_b
            na += ok_a
            ns += bool(s) == g.start
            nc += ok_b and ok_a
    if n == 0:
        raise ValueError("cannot score an empty corpus")
    return Metrics(nb / n, na / n, ns / n, nc / n, n, n_utt)


def evaluate(channel, corpus: Sequence[AnnotatedUtterance]) -> Metrics:
    """Inference-mode accuracies; the channel's contexts are left as they were."""
    saved = channel.contexts()
    try:
        preds = []
        for utt in corpus:
            tagged = channel.tag(utt.tokens)
            preds.append([(w.basic, w.abstract, w.phrase_start) for w in tagged])
    finally:
        channel.restore(saved)
    return score(preds, corpus)


@dataclass(frozen=True)
class InterpretationRate:
    rate: float
    correct: int
    scored: int
    skipped: int


def overall_interpretation_rate(analyses, gold_surviving) -> InterpretationRate:
    """Share of utterances whose surviving-token positions equal the gold set.

    Utterances whose gold entry is ``None`` are skipped and tallied apart.
    """
    correct = scored = skipped = 0
    for analysis, gold in zip(analyses, gold_surviving):
        if gold is None:
            skipped += 1
            continue
        scored += 1
        correct += tuple(analysis.surviving_positions) == tuple(gold)
    if scored == 0:
        raise ValueError("no utterance with gold surviving tokens to score")
    return InterpretationRate(correct / scored, correct, scored, skipped)
