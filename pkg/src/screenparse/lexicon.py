"""Tokens, category inventories and the word -> candidate-category lexicon."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

import numpy as np


class TokenKind(str, enum.Enum):
    WORD = "Word"
    PAUSE = "PauseMarker"
    BRACKETED = "Bracketed"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: TokenKind
    position: int

    @classmethod
    def make(cls, surface: str, position: int) -> "Token":
        if surface == ".":
            kind = TokenKind.PAUSE
        elif len(surface) >= 2 and surface.startswith("[") and surface.endswith("]"):
            kind = TokenKind.BRACKETED
        else:
            kind = TokenKind.WORD
        return cls(surface, kind, position)


def tokenize(line: str) -> list[Token]:
    """Split one transcript line on whitespace into positioned tokens."""
    return [Token.make(s, i) for i, s in enumerate(line.split())]


class CategoryInventory:
    """Ordered label set padded to a fixed network width.

    Labels are addressed by full name ("Noun") or by the transcript
    abbreviation ("N"); both resolve to the same stable index.
    """

    def __init__(self, labels: Iterable[str], abbrevs: Iterable[str], width: int,
                 padding: Iterable[str] = ()):
        self.labels = tuple(labels)
        self.abbrevs = tuple(abbrevs)
        self.padding = tuple(padding)
        self.width = width
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("inventory labels must be unique")
        if len(self.abbrevs) != len(self.labels):
            raise ValueError("one abbreviation per label required")
        if width < len(self.labels):
            raise ValueError("width smaller than label count")
        self._index = {name: i for i, name in enumerate(self.labels)}
        self._index.update({ab: i for i, ab in enumerate(self.abbrevs)})

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"CategoryInventory({list(self.labels)!r}, width={self.width})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"label {label!r} not in inventory") from None

    def canonical(self, label: str) -> str:
        return self.labels[self.index(label)]

    def abbrev(self, label: str) -> str:
        return self.abbrevs[self.index(label)]

    def one_hot(self, label: str) -> np.ndarray:
        vec = np.zeros(self.width)
        vec[self.index(label)] = 1.0
        return vec

    def argmax_label(self, activations) -> str:
        # np.argmax returns the first maximum, so ties go to the lowest index
        acts = np.asarray(activations)[: len(self.labels)]
        return self.labels[int(np.argmax(acts))]


BASIC = CategoryInventory(
    ["Adjective", "Adverb", "Conjunction", "Determiner", "Interjection", "Numeral",
     "Noun", "Preposition", "Pronoun", "Verb", "Pause"],
    ["J", "A", "C", "D", "I", "M", "N", "R", "U", "V", "-"],
    width=13,
    padding=["OTHER", "UNUSED"],
)

ABSTRACT = CategoryInventory(
    ["Conjunction Group", "Interjection Group", "Modus Group", "Noun Group",
     "Prepositional Group", "Special Group", "Verb Group"],
    ["CG", "IG", "MG", "NG", "PG", "SG", "VG"],
    width=8,
    padding=["OTHER"],
)

OPEN_CLASS = frozenset({"Noun", "Verb", "Adjective", "Adverb"})


def encode_candidates(candidates: Iterable[str], inventory: CategoryInventory) -> np.ndarray:
    candidates = list(candidates)
    if not candidates:
        raise ValueError("candidate set is empty")
    vec = np.zeros(inventory.width)
    for label in candidates:
        vec[inventory.index(label)] = 1.0
    return vec


def decode_candidates(vector, inventory: CategoryInventory) -> frozenset[str]:
    bits = np.asarray(vector)[: len(inventory)]
    return frozenset(inventory.labels[i] for i in np.flatnonzero(bits > 0.5))


class LexiconError(ValueError):
    pass


class Lexicon:
    """Case-folded surface -> set of basic-category labels."""

    def __init__(self, entries: dict[str, frozenset[str]] | None = None,
                 inventory: CategoryInventory = BASIC):
        self.inventory = inventory
        self.entries: dict[str, frozenset[str]] = {}
        for surface, labels in (entries or {}).items():
            self.add(surface, labels)

    def add(self, surface: str, labels: Iterable[str]) -> None:
        labels = frozenset(self.inventory.canonical(lab) for lab in labels)
        if not labels:
            raise LexiconError(f"entry {surface!r} has no candidates")
        self.entries[surface.casefold()] = labels

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: str) -> bool:
        return surface.casefold() in self.entries

    def lookup(self, surface: str | Token) -> frozenset[str]:
        if isinstance(surface, Token):
            surface = surface.surface
        if not surface:
            raise ValueError("empty surface")
        tok = Token.make(surface, 0)
        if tok.kind is TokenKind.PAUSE:
            return frozenset({"Pause"})
        if tok.kind is TokenKind.BRACKETED:
            return frozenset({"Interjection"})
        return self.entries.get(surface.casefold(), OPEN_CLASS)

    @classmethod
    def parse(cls, text: str, inventory: CategoryInventory = BASIC,
              source: str = "<lexicon>") -> "Lexicon":
        lex = cls(inventory=inventory)
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1].strip():
                raise LexiconError(f"{source}:{lineno}: expected surface<TAB>labels")
            try:
                lex.add(parts[0], [p.strip() for p in parts[1].split(",") if p.strip()])
            except KeyError as exc:
                raise LexiconError(f"{source}:{lineno}: {exc.args[0]}") from None
        return lex

    @classmethod
    def load(cls, path: str | Path, inventory: CategoryInventory = BASIC) -> "Lexicon":
        path = Path(path)
        return cls.parse(path.read_text(encoding="utf-8"), inventory, str(path))

    @classmethod
    def bundled(cls) -> "Lexicon":
        text = resources.files("screenparse").joinpath("data/lexicon.tsv").read_text("utf-8")
        return cls.parse(text, BASIC, "lexicon.tsv")
