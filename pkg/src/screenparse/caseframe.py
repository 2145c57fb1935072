"""Case frames over corrected phrase groups, and the final utterance analysis."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .channel import TaggedWord
from .chunker import PhraseGroup
from .correction import RepairEvent
from .lexicon import ABSTRACT, Token

VERB_GROUP = "Verb Group"
DEFAULT_BLOCKLIST = frozenset({"Special Group"})


@dataclass
class Slot:
    key: str
    group: PhraseGroup
    incompatible: bool = False


@dataclass
class Frame:
    index: int
    verb_group: PhraseGroup | None = None
    slots: list[Slot] = field(default_factory=list)

    def keys(self) -> list[str]:
        return [s.key for s in self.slots]

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "verb_group": None if self.verb_group is None else _group_dict(self.verb_group),
            "slots": [dict(key=s.key, incompatible=s.incompatible, **_group_dict(s.group))
                      for s in self.slots],
        }


@dataclass(frozen=True)
class FrameConfig:
    blocklist: frozenset[str] = DEFAULT_BLOCKLIST
    compatible: frozenset[tuple[str, str]] = frozenset()


def load_compat_table(path: str | Path) -> frozenset[tuple[str, str]]:
    """Allowed (syntactic, semantic) pairs, one ``SYN<TAB>SEM`` per line."""
    pairs = set()
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected SYN_LABEL<TAB>SEM_LABEL")
        syn = parts[0].strip()
        if syn in ABSTRACT:
            syn = ABSTRACT.canonical(syn)
        pairs.add((syn, parts[1].strip()))
    return frozenset(pairs)


def slot_prefix(label: str) -> str:
    return ABSTRACT.abbrev(label) if label in ABSTRACT else label


def find_slot(frame: Frame, group: PhraseGroup) -> str:
    prefix = slot_prefix(group.abstract)
    n = sum(1 for s in frame.slots if s.key.rsplit("#", 1)[0] == prefix)
    return f"{prefix}#{n + 1}"


def slot_error(frame: Frame, group: PhraseGroup, key: str, config: FrameConfig = FrameConfig()) -> bool:
    if group.abstract in config.blocklist:
        return True
    if config.compatible and group.semantic is not None:
        return (group.abstract, group.semantic) not in config.compatible
    return False


def verb_error(frame: Frame, group: PhraseGroup) -> bool:
    return group.abstract == VERB_GROUP and frame.verb_group is not None


class FrameBuilder:
    """SLOT-FINDING, SLOT-ERROR? and VERB-ERROR? applied group by group."""

    def __init__(self, config: FrameConfig = FrameConfig()):
        self.config = config
        self.frames: list[Frame] = []

    @property
    def current(self) -> Frame:
        if not self.frames:
            self.frames.append(Frame(0))
        return self.frames[-1]

    def add(self, group: PhraseGroup) -> tuple[int, str, bool]:
        """Place one group; returns (frame index, slot key or "VERB", incompatible)."""
        frame = self.current
        if group.abstract == VERB_GROUP:
            if verb_error(frame, group):
                frame = Frame(len(self.frames))
                self.frames.append(frame)
            frame.verb_group = group
            return frame.index, "VERB", False
        key = find_slot(frame, group)
        bad = slot_error(frame, group, key, self.config)
        frame.slots.append(Slot(key, group, bad))
        return frame.index, key, bad


def _group_dict(group: PhraseGroup) -> dict:
    return {
        "abstract": ABSTRACT.abbrev(group.abstract),
        "span": list(group.span),
        "positions": [w.position for w in group.words],
        "text": group.text,
    }


def _word_dict(w: TaggedWord, kept: bool) -> dict:
    return {
        "position": w.position,
        "surface": w.surface,
        "kind": w.token.kind.value,
        "basic": w.basic,
        "abstract": w.abstract,
        "phrase_start": w.phrase_start,
        "start_activation": round(w.start_activation, 6),
        "kept": kept,
    }


@dataclass
class UtteranceAnalysis:
    tokens: tuple[Token, ...] = ()
    tagged: tuple[TaggedWord, ...] = ()
    groups: tuple[PhraseGroup, ...] = ()
    repairs: tuple[RepairEvent, ...] = ()
    frames: tuple[Frame, ...] = ()

    @property
    def surviving_positions(self) -> tuple[int, ...]:
        return tuple(w.position for g in self.groups for w in g.words)

    @property
    def surviving(self) -> tuple[Token, ...]:
        keep = set(self.surviving_positions)
        return tuple(t for t in self.tokens if t.position in keep)

    @property
    def surviving_text(self) -> str:
        return " ".join(t.surface for t in self.surviving)

    def __bool__(self) -> bool:
        return bool(self.tokens)

    def as_dict(self) -> dict:
        keep = set(self.surviving_positions)
        return {
            "utterance": " ".join(t.surface for t in self.tokens),
            "words": [_word_dict(w, w.position in keep) for w in self.tagged],
            "surviving": list(self.surviving_positions),
            "groups": [_group_dict(g) for g in self.groups],
            "repairs": [r.as_dict() for r in self.repairs],
            "frames": [f.as_dict() for f in self.frames],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))


def interpret(tokens: Iterable[Token], tagged: Iterable[TaggedWord],
              groups: Iterable[PhraseGroup], repairs: Iterable[RepairEvent],
              frames: Iterable[Frame]) -> UtteranceAnalysis:
    repairs = sorted(repairs, key=lambda r: (r.removed_span, r.kind.value))
    return UtteranceAnalysis(tuple(tokens), tuple(tagged), tuple(groups),
                             tuple(repairs), tuple(frames))
