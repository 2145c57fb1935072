"""Disfluency detectors and the pause / word / phrase error decisions.

All detectors are pure. Repairs always drop the earlier material and keep
the later phrasing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .channel import TaggedWord
from .chunker import PhraseGroup
from .lexicon import Token, TokenKind


class RepairKind(str, enum.Enum):
    PAUSE_DELETION = "PauseDeletion"
    WORD_REPAIR = "WordRepair"
    PHRASE_REPAIR = "PhraseRepair"


@dataclass(frozen=True)
class RepairEvent:
    kind: RepairKind
    removed_span: tuple[int, int]
    kept_span: tuple[int, int] | None
    evidence: tuple[str, ...]

    def __post_init__(self):
        if self.removed_span[0] > self.removed_span[1]:
            raise ValueError("removed span is empty")
        if self.kind is RepairKind.PAUSE_DELETION and self.kept_span is not None:
            raise ValueError("pause deletions keep nothing")

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "removed_span": list(self.removed_span),
            "kept_span": None if self.kept_span is None else list(self.kept_span),
            "evidence": list(self.evidence),
        }


def _token(item: Token | TaggedWord) -> Token:
    return item.token if isinstance(item, TaggedWord) else item


def is_pause(item: Token | TaggedWord) -> bool:
    return _token(item).kind is TokenKind.PAUSE


def is_interjection(item: Token | TaggedWord) -> bool:
    if _token(item).kind is TokenKind.BRACKETED:
        return True
    return isinstance(item, TaggedWord) and item.basic == "Interjection"


def pause_error(word: TaggedWord) -> RepairEvent | None:
    # deliberately ignores the word's tags apart from the interjection label
    evidence = []
    if is_pause(word):
        evidence.append("PAUSE?")
    if is_interjection(word):
        evidence.append("INTERJECTION?")
    if not evidence:
        return None
    pos = word.position
    return RepairEvent(RepairKind.PAUSE_DELETION, (pos, pos), None,
                       tuple(evidence) + ("PAUSE-ERROR?",))


def word_equal_lex(prev: TaggedWord, cur: TaggedWord) -> bool:
    return prev.surface.casefold() == cur.surface.casefold()


def word_equal_bas(prev: TaggedWord, cur: TaggedWord) -> bool:
    return prev.basic == cur.basic


def word_error(prev: TaggedWord, cur: TaggedWord) -> RepairEvent | None:
    if not word_equal_lex(prev, cur):
        return None
    evidence = ["LEX-WORD-EQ?"]
    if word_equal_bas(prev, cur):
        evidence.append("BAS-SYN-EQ?")
    evidence.append("WORD-ERROR?")
    return RepairEvent(RepairKind.WORD_REPAIR, (prev.position, prev.position),
                       (cur.position, cur.position), tuple(evidence))


def lex_start_equal(prev: PhraseGroup, cur: PhraseGroup) -> bool:
    return prev.lexical_start == cur.lexical_start


def abstract_equal(prev: PhraseGroup, cur: PhraseGroup) -> bool:
    return prev.abstract == cur.abstract


def semantic_equal(prev: PhraseGroup, cur: PhraseGroup) -> bool | None:
    """None when either group carries no semantic label."""
    if prev.semantic is None or cur.semantic is None:
        return None
    return prev.semantic == cur.semantic


def phrase_error(prev: PhraseGroup, cur: PhraseGroup) -> RepairEvent | None:
    """Repair iff the groups share abstract label and lexical start.

    ``cur`` only needs its first word; the pair must already be adjacent in
    the pause-filtered stream. A loaded semantic channel can veto.
    """
    if not (abstract_equal(prev, cur) and lex_start_equal(prev, cur)):
        return None
    evidence = ["ABS-SYN-EQ?", "LEX-START-EQ?"]
    sem = semantic_equal(prev, cur)
    if sem is False:
        return None
    if sem:
        evidence.append("ABS-SEM-EQ?")
    evidence.append("PHRASE-ERROR?")
    return RepairEvent(RepairKind.PHRASE_REPAIR, prev.span, cur.span, tuple(evidence))
