"""Category channel: three SRNs tagging basic category, group category and group start."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import srn
from .lexicon import ABSTRACT, BASIC, CategoryInventory, Lexicon, Token, encode_candidates

START_THRESHOLD = 0.5
MODEL_FILES = {
    "disambiguator": "disambiguator.srn",
    "abstractor": "abstractor.srn",
    "starter": "starter.srn",
}
HIDDEN = {"disambiguator": 14, "abstractor": 7, "starter": 7}


@dataclass(frozen=True)
class TaggedWord:
    token: Token
    basic: str
    basic_activations: tuple[float, ...]
    abstract: str
    abstract_activations: tuple[float, ...]
    phrase_start: bool
    start_activation: float
    semantic: str | None = field(default=None, compare=True)

    @property
    def position(self) -> int:
        return self.token.position

    @property
    def surface(self) -> str:
        return self.token.surface


class CategoryChannel:
    """BAS-SYN-DIS, ABS-SYN-CAT and SYN-PHR-START over one token stream.

    Contexts carry across the words of an utterance; call :meth:`reset`
    at every utterance boundary.
    """

    def __init__(self, lexicon: Lexicon, disambiguator: srn.SrnModel,
                 abstractor: srn.SrnModel, starter: srn.SrnModel,
                 basic: CategoryInventory = BASIC, abstract: CategoryInventory = ABSTRACT):
        self.lexicon = lexicon
        self.basic = basic
        self.abstract = abstract
        self.disambiguator = disambiguator
        self.abstractor = abstractor
        self.starter = starter
        expected = {
            "disambiguator": (basic.width, basic.width),
            "abstractor": (basic.width, abstract.width),
            "starter": (basic.width, 1),
        }
        for name, (n_in, n_out) in expected.items():
            m = getattr(self, name)
            if (m.n_in, m.n_out) != (n_in, n_out):
                raise ValueError(f"{name} has sizes {m.sizes}, expected in={n_in} out={n_out}")

    @classmethod
    def untrained(cls, lexicon: Lexicon, seed: int = 0, init_scale: float = 0.3,
                  basic: CategoryInventory = BASIC,
                  abstract: CategoryInventory = ABSTRACT) -> "CategoryChannel":
        rng = np.random.default_rng(seed)
        outs = {"disambiguator": basic.width, "abstractor": abstract.width, "starter": 1}
        models = {name: srn.SrnModel.initialized(basic.width, HIDDEN[name], outs[name],
                                                 rng, init_scale)
                  for name in MODEL_FILES}
        return cls(lexicon, basic=basic, abstract=abstract, **models)

    @property
    def models(self) -> dict[str, srn.SrnModel]:
        return {name: getattr(self, name) for name in MODEL_FILES}

    def copy(self) -> "CategoryChannel":
        return CategoryChannel(self.lexicon, self.disambiguator.copy(), self.abstractor.copy(),
                               self.starter.copy(), self.basic, self.abstract)

    def reset(self) -> "CategoryChannel":
        for m in self.models.values():
            m.reset_context()
        return self

    def contexts(self) -> tuple[np.ndarray, ...]:
        return tuple(m.context.copy() for m in self.models.values())

    def restore(self, contexts) -> None:
        for m, c in zip(self.models.values(), contexts):
            m.context = c.copy()

    def tag_word(self, token: Token) -> TaggedWord:
        lexical = encode_candidates(self.lexicon.lookup(token), self.basic)
        b_act = self.disambiguator.forward(lexical)
        basic = self.basic.argmax_label(b_act)
        chosen = self.basic.one_hot(basic)
        a_act = self.abstractor.forward(chosen)
        s_act = float(self.starter.forward(chosen)[0])
        return TaggedWord(
            token=token,
            basic=basic,
            basic_activations=tuple(float(v) for v in b_act),
            abstract=self.abstract.argmax_label(a_act),
            abstract_activations=tuple(float(v) for v in a_act),
            phrase_start=s_act >= START_THRESHOLD,
            start_activation=s_act,
        )

    def tag(self, tokens: Sequence[Token]) -> list[TaggedWord]:
        """Tag one whole utterance from fresh contexts."""
        self.reset()
        try:
            return [self.tag_word(t) for t in tokens]
        finally:
            self.reset()

    # -- persistence -------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for name, fname in MODEL_FILES.items():
            srn.save(getattr(self, name), directory / fname)

    @classmethod
    def load(cls, directory: str | Path, lexicon: Lexicon) -> "CategoryChannel":
        directory = Path(directory)
        models = {}
        for name, fname in MODEL_FILES.items():
            path = directory / fname
            if not path.is_file():
                raise FileNotFoundError(f"model file not found: {path}")
            models[name] = srn.load(path)
        return cls(lexicon, **models)

    @classmethod
    def bundled(cls) -> "CategoryChannel":
        root = resources.files("screenparse").joinpath("data/models")
        models = {name: srn.loads(root.joinpath(fname).read_text("utf-8"))
                  for name, fname in MODEL_FILES.items()}
        return cls(Lexicon.bundled(), **models)


def training_streams(channel: CategoryChannel, corpus) -> dict[str, list[list[tuple]]]:
    """Per-model (input, target) sequences; downstream nets see gold basic one-hots."""
    streams = {name: [] for name in MODEL_FILES}
    for utt in corpus:
        dis, abs_, sta = [], [], []
        for tok, gold in zip(utt.tokens, utt.gold):
            lexical = encode_candidates(channel.lexicon.lookup(tok), channel.basic)
            basic_hot = channel.basic.one_hot(gold.basic)
            dis.append((lexical, basic_hot))
            abs_.append((basic_hot, channel.abstract.one_hot(gold.abstract)))
            sta.append((basic_hot, np.array([1.0 if gold.start else 0.0])))
        streams["disambiguator"].append(dis)
        streams["abstractor"].append(abs_)
        streams["starter"].append(sta)
    return streams


def train_channel(channel: CategoryChannel, corpus, config: srn.TrainConfig | None = None):
    """Train each SRN on its own target stream and report train-set accuracy.

    Utterance order is reshuffled every epoch from ``config.seed`` so a
    fixed seed gives bit-identical weights.
    """
    from .corpus import evaluate

    config = config or srn.TrainConfig()
    corpus = list(corpus)
    if not corpus:
        raise ValueError("cannot train on an empty corpus")
    streams = training_streams(channel, corpus)
    rng = np.random.default_rng(config.seed)
    momenta = {name: srn.Momentum(m) for name, m in channel.models.items()}
    order = np.arange(len(corpus))
    for _ in range(config.epochs):
        rng.shuffle(order)
        for name, model in channel.models.items():
            seqs = streams[name]
            mom = momenta[name]
            for i in order:
                model.reset_context()
                for x, t in seqs[i]:
                    srn.sgd_step(model, x, t, config, mom)
    channel.reset()
    return channel, evaluate(channel, corpus)
