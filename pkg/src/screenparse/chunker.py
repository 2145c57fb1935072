"""Flat phrase-group chunking of a tagged word stream."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .channel import TaggedWord


@dataclass(frozen=True)
class PhraseGroup:
    words: tuple[TaggedWord, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("a phrase group needs at least one word")

    @property
    def abstract(self) -> str:
        return self.words[0].abstract

    @property
    def semantic(self) -> str | None:
        return self.words[0].semantic

    @property
    def span(self) -> tuple[int, int]:
        return self.words[0].position, self.words[-1].position

    @property
    def position(self) -> int:
        return self.words[0].position

    @property
    def lexical_start(self) -> str:
        return self.words[0].surface.casefold()

    @property
    def text(self) -> str:
        return " ".join(w.surface for w in self.words)


def opens_group(word: TaggedWord, current_label: str | None) -> bool:
    return current_label is None or word.phrase_start or word.abstract != current_label


def chunk(tagged: Sequence[TaggedWord]) -> list[PhraseGroup]:
    groups: list[list[TaggedWord]] = []
    last = None
    for w in tagged:
        if last is not None and w.position <= last:
            raise ValueError(f"position {w.position} out of order")
        last = w.position
        if opens_group(w, groups[-1][0].abstract if groups else None):
            groups.append([w])
        else:
            groups[-1].append(w)
    return [PhraseGroup(tuple(g)) for g in groups]


class Chunker:
    """Incremental form of :func:`chunk`.

    A group is handed back from :meth:`push` when its successor opens, and
    from :meth:`flush` at the end of the utterance.
    """

    def __init__(self):
        self.open: list[TaggedWord] = []
        self.last_position: int | None = None

    @property
    def current(self) -> PhraseGroup | None:
        return PhraseGroup(tuple(self.open)) if self.open else None

    def push(self, word: TaggedWord) -> PhraseGroup | None:
        if self.last_position is not None and word.position <= self.last_position:
            raise ValueError(f"position {word.position} arrived after {self.last_position}")
        self.last_position = word.position
        finished = None
        if opens_group(word, self.open[0].abstract if self.open else None):
            finished = self.current
            self.open = []
        self.open.append(word)
        return finished

    def drop_last(self) -> TaggedWord:
        """Retract the most recent word; it always sits in the open group."""
        if not self.open:
            raise IndexError("no open word to retract")
        return self.open.pop()

    def flush(self) -> PhraseGroup | None:
        finished = self.current
        self.open = []
        self.last_position = None
        return finished


def chunk_incremental(state: Chunker, word: TaggedWord) -> tuple[Chunker, PhraseGroup | None]:
    return state, state.push(word)
