"""Incremental message flow: tag -> pause filter -> chunk -> correct -> frame.

Each stage is a single-writer worker. Cell ``(stage, tick)`` consumes only
what cell ``(stage - 1, tick)`` produced, plus the worker's own state from
``(stage, tick - 1)``. Tick ``n`` (one past the last token) is the
end-of-utterance flush. Any execution order that respects these two
dependencies yields the same analysis.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, replace
from typing import Any, Callable, Iterable, Sequence

from .caseframe import FrameBuilder, FrameConfig, UtteranceAnalysis, interpret
from .channel import CategoryChannel, TaggedWord
from .chunker import Chunker, PhraseGroup
from .correction import RepairEvent, pause_error, phrase_error, word_error
from .lexicon import Token


class Stage(enum.IntEnum):
    TAGGED = 0
    FILTERED = 1
    CHUNKED = 2
    CORRECTED = 3
    FRAMED = 4

    @property
    def label(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class Hypothesis:
    position: int
    stage: Stage
    payload: Any

    def summary(self) -> str:
        p = self.payload
        if isinstance(p, TaggedWord):
            start = "+" if p.phrase_start else "-"
            return f"{p.surface} {p.basic}/{p.abstract}/{start}"
        if isinstance(p, PhraseGroup):
            return f"[{p.text}] {p.abstract}"
        if isinstance(p, RepairEvent):
            return f"{p.kind.value} removed={p.removed_span} kept={p.kept_span}"
        if isinstance(p, tuple):
            frame, key, bad = p
            return f"frame={frame} slot={key}" + (" incompatible" if bad else "")
        return repr(p)

    def trace_line(self) -> str:
        return f"{self.position}\t{self.stage.label}\t{self.summary()}"


def _sort_key(h: Hypothesis):
    return h.position, int(h.stage)


class _TagWorker:
    def __init__(self, channel: CategoryChannel):
        self.channel = channel
        self.channel.reset()
        self.tagged: list[TaggedWord] = []

    def step(self, token: Token):
        w = self.channel.tag_word(token)
        self.tagged.append(w)
        return [w], [Hypothesis(w.position, Stage.TAGGED, w)]

    def finish(self, _):
        self.channel.reset()
        return [], []

    def digest(self):
        return [c.tobytes().hex() for c in self.channel.contexts()], [
            (w.position, w.basic, w.abstract, w.phrase_start) for w in self.tagged]


class _FilterWorker:
    def __init__(self):
        self.events: list[RepairEvent] = []

    def step(self, words: list[TaggedWord]):
        out, hyps = [], []
        for w in words:
            event = pause_error(w)
            if event is None:
                out.append(w)
                hyps.append(Hypothesis(w.position, Stage.FILTERED, w))
            else:
                self.events.append(event)
                hyps.append(Hypothesis(w.position, Stage.FILTERED, event))
        return out, hyps

    def finish(self, words):
        return self.step(words)

    def digest(self):
        return list(self.events)


class _ChunkWorker:
    """Word-level repair plus chunking; emits (finished group, successor)."""

    def __init__(self):
        self.chunker = Chunker()
        self.prev: TaggedWord | None = None
        self.events: list[RepairEvent] = []

    def step(self, words: list[TaggedWord]):
        out, hyps = [], []
        for w in words:
            if self.prev is not None:
                event = word_error(self.prev, w)
                if event is not None:
                    self.chunker.drop_last()
                    self.events.append(event)
                    hyps.append(Hypothesis(self.prev.position, Stage.CHUNKED, event))
            finished = self.chunker.push(w)
            self.prev = w
            if finished is not None:
                out.append((finished, self.chunker.current))
                hyps.append(Hypothesis(finished.position, Stage.CHUNKED, finished))
        return out, hyps

    def finish(self, words):
        out, hyps = self.step(words)
        last = self.chunker.flush()
        if last is not None:
            out.append((last, None))
            hyps.append(Hypothesis(last.position, Stage.CHUNKED, last))
        return out, hyps

    def digest(self):
        return ([w.position for w in self.chunker.open],
                None if self.prev is None else self.prev.position, list(self.events))


class _CorrectWorker:
    """Phrase-level repair, decided as soon as the successor group opens.

    The decision hypothesis carries the successor's span as known at that
    moment; the analysis records the event again once the replacing group
    is complete.
    """

    def __init__(self):
        self.groups: list[PhraseGroup] = []
        self.events: list[RepairEvent] = []
        self.waiting: RepairEvent | None = None

    def step(self, items):
        out, hyps = [], []
        for group, successor in items:
            if self.waiting is not None:
                self.events.append(replace(self.waiting, kept_span=group.span))
                self.waiting = None
            event = phrase_error(group, successor) if successor is not None else None
            if event is None:
                self.groups.append(group)
                out.append(group)
                hyps.append(Hypothesis(group.position, Stage.CORRECTED, group))
            else:
                self.waiting = event
                hyps.append(Hypothesis(group.position, Stage.CORRECTED, event))
        return out, hyps

    def finish(self, items):
        out, hyps = self.step(items)
        if self.waiting is not None:
            self.events.append(self.waiting)
            self.waiting = None
        return out, hyps

    def digest(self):
        return [g.span for g in self.groups], list(self.events), self.waiting


class _FrameWorker:
    def __init__(self, config: FrameConfig):
        self.builder = FrameBuilder(config)

    def step(self, groups: list[PhraseGroup]):
        hyps = []
        for g in groups:
            placed = self.builder.add(g)
            hyps.append(Hypothesis(g.position, Stage.FRAMED, placed))
        return [], hyps

    def finish(self, groups):
        return self.step(groups)

    def digest(self):
        return [f.as_dict() for f in self.builder.frames]


class Pipeline:
    """Token-at-a-time analysis of one utterance at a time.

    ``trace`` is an optional callable receiving one
    ``pos<TAB>stage<TAB>summary`` line per hypothesis.
    """

    def __init__(self, channel: CategoryChannel, frame_config: FrameConfig = FrameConfig(),
                 trace: Callable[[str], None] | None = None):
        self.channel = channel
        self.frame_config = frame_config
        self.trace = trace
        self._begin()

    def _begin(self):
        self.tokens: list[Token] = []
        self.workers = [_TagWorker(self.channel), _FilterWorker(), _ChunkWorker(),
                        _CorrectWorker(), _FrameWorker(self.frame_config)]
        self.outbox: dict[tuple[int, int], list] = {}
        self.done: set[tuple[int, int]] = set()
        self.hypotheses: list[Hypothesis] = []
        self.closed_at: int | None = None

    # -- cell execution ----------------------------------------------------

    def ready(self, stage: int, tick: int) -> bool:
        if (stage, tick) in self.done:
            return False
        end = len(self.tokens) if self.closed_at is None else self.closed_at
        if tick > end or (tick == end and self.closed_at is None):
            return False
        if stage > 0 and (stage - 1, tick) not in self.done:
            return False
        return tick == 0 or (stage, tick - 1) in self.done

    def execute(self, stage: int, tick: int) -> list[Hypothesis]:
        if not self.ready(stage, tick):
            raise RuntimeError(f"cell ({stage}, {tick}) is not ready")
        worker = self.workers[stage]
        if stage == 0:
            inputs = self.tokens[tick] if tick < len(self.tokens) else None
        else:
            inputs = self.outbox.pop((stage - 1, tick))
        if tick == self.closed_at:
            out, hyps = worker.finish(inputs)
        else:
            out, hyps = worker.step(inputs)
        self.outbox[(stage, tick)] = out
        self.done.add((stage, tick))
        if stage == len(self.workers) - 1:
            self.outbox.pop((stage, tick))
        self.hypotheses.extend(hyps)
        if self.trace is not None:
            for h in sorted(hyps, key=_sort_key):
                self.trace(h.trace_line())
        return hyps

    def submit(self, token: Token) -> None:
        """Queue a token without running any stage."""
        if self.closed_at is not None:
            raise RuntimeError("utterance already closed")
        if self.tokens and token.position <= self.tokens[-1].position:
            raise ValueError(
                f"token position {token.position} after {self.tokens[-1].position}")
        self.tokens.append(token)

    def close(self) -> None:
        """Mark the end of the utterance so the flush cells become ready."""
        self.closed_at = len(self.tokens)

    def digest(self) -> str:
        """Fingerprint of all worker state and pending messages."""
        parts = [repr(w.digest()) for w in self.workers]
        parts.append(repr(sorted((k, repr(v)) for k, v in self.outbox.items())))
        parts.append(repr(sorted(h.trace_line() for h in self.hypotheses)))
        return hashlib.sha256("\n".join(parts).encode()).hexdigest()

    def result(self) -> UtteranceAnalysis:
        tag, filt, chunk, corr, frame = self.workers
        events = filt.events + chunk.events + corr.events
        return interpret(self.tokens, tag.tagged, corr.groups, events, frame.builder.frames)

    # -- public flow -------------------------------------------------------

    def process_token(self, token: Token) -> list[Hypothesis]:
        self.submit(token)
        tick = len(self.tokens) - 1
        hyps = []
        for stage in range(len(self.workers)):
            hyps.extend(self.execute(stage, tick))
        return sorted(hyps, key=_sort_key)

    def flush(self) -> UtteranceAnalysis:
        self.close()
        for stage in range(len(self.workers)):
            self.execute(stage, self.closed_at)
        analysis = self.result()
        self._begin()
        return analysis

    def analyze(self, tokens: Iterable[Token]) -> UtteranceAnalysis:
        """Batch mode: every stage runs over the whole utterance before the next."""
        for t in tokens:
            self.submit(t)
        self.close()
        for stage in range(len(self.workers)):
            for tick in range(self.closed_at + 1):
                self.execute(stage, tick)
        analysis = self.result()
        self._begin()
        return analysis

    def run_schedule(self, tokens: Sequence[Token],
                     schedule: Iterable[tuple[int, int]]) -> UtteranceAnalysis:
        for t in tokens:
            self.submit(t)
        self.close()
        for stage, tick in schedule:
            self.execute(stage, tick)
        missing = [(s, t) for s in range(len(self.workers))
                   for t in range(self.closed_at + 1) if (s, t) not in self.done]
        if missing:
            raise RuntimeError(f"schedule left cells unexecuted: {missing}")
        analysis = self.result()
        self._begin()
        return analysis


def correct_tagged(tagged: Sequence[TaggedWord],
                   frame_config: FrameConfig = FrameConfig()) -> UtteranceAnalysis:
    """Run the filter, chunk, correct and frame stages over pre-tagged words."""
    workers = [_FilterWorker(), _ChunkWorker(), _CorrectWorker(), _FrameWorker(frame_config)]
    msgs: Any = list(tagged)
    for w in workers:
        msgs, _ = w.finish(msgs)
    filt, chunk, corr, frame = workers
    tokens = [w.token for w in tagged]
    return interpret(tokens, tagged, corr.groups, filt.events + chunk.events + corr.events,
                     frame.builder.frames)
