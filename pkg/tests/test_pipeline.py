import random

import pytest
from hypothesis import given, settings, strategies as st

from screenparse import Pipeline, tokenize
from screenparse.caseframe import FrameConfig
from screenparse.chunker import chunk
from screenparse.correction import RepairEvent, RepairKind
from screenparse.lexicon import Token
from screenparse.pipeline import Stage

from helpers import CLEAN, CLEAN_SURVIVING, FAULTY, FAULTY_SURVIVING
from scheduling import count_schedules, explore


@pytest.fixture
def pipe(bundled_channel):
    return Pipeline(bundled_channel)


def feed(pipe, text):
    per_token = [pipe.process_token(t) for t in tokenize(text)]
    return per_token, pipe.flush()


def test_reference_utterances_incremental(pipe):
    _, a3 = feed(pipe, CLEAN)
    assert a3.surviving_text == CLEAN_SURVIVING
    _, a4 = feed(pipe, FAULTY)
    assert a4.surviving_text == FAULTY_SURVIVING
    phrase = [r for r in a4.repairs if r.kind is RepairKind.PHRASE_REPAIR]
    assert [(r.removed_span, r.kept_span) for r in phrase] == [((13, 14), (19, 22))]


def test_yeah_group_finalizes_when_i_arrives(pipe):
    toks = tokenize(CLEAN)
    assert not [h for h in pipe.process_token(toks[0]) if h.stage >= Stage.CHUNKED]
    hyps = pipe.process_token(toks[1])
    chunked = [h for h in hyps if h.stage is Stage.CHUNKED]
    assert [h.payload.text for h in chunked] == ["Yeah"]
    assert any(h.stage is Stage.FRAMED and h.position == 0 for h in hyps)


def test_hypotheses_sorted_and_monotone(pipe):
    per_token, _ = feed(pipe, FAULTY)
    for hyps in per_token:
        keys = [(h.position, int(h.stage)) for h in hyps]
        assert keys == sorted(keys)
    seen = {}
    for hyps in per_token:
        for h in hyps:
            assert h.stage >= seen.get(h.position, Stage.TAGGED)
            seen[h.position] = h.stage


def test_flush_empty_and_twice(pipe):
    assert not pipe.flush()
    feed(pipe, CLEAN)
    again = pipe.flush()
    assert not again and again.frames == ()


def test_flush_resets_contexts(pipe, bundled_channel):
    _, first = feed(pipe, FAULTY)
    _, second = feed(pipe, FAULTY)
    assert first.to_json() == second.to_json()


def test_out_of_order_rejected(pipe):
    pipe.process_token(Token.make("a", 3))
    with pytest.raises(ValueError):
        pipe.process_token(Token.make("b", 2))


def test_incremental_equals_batch_on_reference_utterances(bundled_channel):
    for text in (CLEAN, FAULTY):
        inc = feed(Pipeline(bundled_channel), text)[1]
        batch = Pipeline(bundled_channel).analyze(tokenize(text))
        assert inc.to_json() == batch.to_json()


def test_trace_format(bundled_channel):
    lines = []
    p = Pipeline(bundled_channel, trace=lines.append)
    feed(p, "Yeah . I need")
    assert lines
    stages = {s.label for s in Stage}
    for line in lines:
        pos, stage, summary = line.split("\t")
        assert int(pos) >= 0 and stage in stages and summary
    assert "0\tTagged\tYeah Adverb/Modus Group/+" in lines


def test_cell_not_ready_raises(pipe):
    pipe.submit(Token.make("a", 0))
    with pytest.raises(RuntimeError):
        pipe.execute(1, 0)
    with pytest.raises(RuntimeError):
        pipe.execute(0, 1)  # flush tick needs close()


def test_lookahead_bound(bundled_channel):
    """Each position's fate is known by the first word token after its group.

    Pause and bracketed tokens are filtered before chunking, so the closing
    trigger is the next word, not the next raw token.
    """
    toks = tokenize(FAULTY)
    p = Pipeline(bundled_channel)
    decided = {}
    for tick, t in enumerate(toks):
        for h in p.process_token(t):
            if h.stage is Stage.FILTERED and isinstance(h.payload, RepairEvent):
                decided.setdefault(h.position, tick)
            elif h.stage in (Stage.CHUNKED, Stage.CORRECTED) and isinstance(h.payload, RepairEvent):
                lo, hi = h.payload.removed_span
                for q in range(lo, hi + 1):
                    decided.setdefault(q, tick)
            elif h.stage is Stage.CORRECTED:
                for w in h.payload.words:
                    decided.setdefault(w.position, tick)
    tagged = p.flush().tagged
    words = [w for w in tagged if w.token.kind.value == "Word"]
    next_word = {a.position: b.position for a, b in zip(words, words[1:])}
    for group in chunk(words):
        trigger = next_word.get(group.words[-1].position)
        for w in group.words:
            if trigger is None:
                assert decided.get(w.position, len(toks)) <= len(toks)
            else:
                assert decided[w.position] <= trigger
    for w in tagged:
        if w.token.kind.value != "Word":
            assert decided[w.position] == w.position


def test_schedule_count_dp():
    assert count_schedules(2, 2) == 2
    assert count_schedules(2, 3) == 5  # Catalan
    assert count_schedules(3, 3) == 42


def test_all_schedules_agree_on_four_tokens(bundled_channel):
    toks = tokenize("at Monday . at")
    n_sets, n_edges, final = explore(Pipeline(bundled_channel), toks)
    assert n_sets == 252  # staircases in a 5 x 5 grid
    assert n_edges > n_sets
    reference = Pipeline(bundled_channel).analyze(toks)
    assert final.result().to_json() == reference.to_json()


def test_random_schedules(bundled_channel):
    rng = random.Random(5)
    toks = tokenize("when leaves please . [eh] a train")
    reference = Pipeline(bundled_channel).analyze(toks).to_json()
    for _ in range(50):
        p = Pipeline(bundled_channel)
        for t in toks:
            p.submit(t)
        p.close()
        order = []
        while True:
            ready = [(s, t) for s in range(5) for t in range(len(toks) + 1) if p.ready(s, t)]
            if not ready:
                break
            cell = rng.choice(ready)
            p.execute(*cell)
            order.append(cell)
        assert p.result().to_json() == reference
        replay = Pipeline(bundled_channel).run_schedule(toks, order)
        assert replay.to_json() == reference


def test_run_schedule_incomplete(bundled_channel):
    with pytest.raises(RuntimeError):
        Pipeline(bundled_channel).run_schedule(tokenize("a train"), [(0, 0)])


VOCAB = ["at", "Monday", "morning", "a", "train", "to", "Ulm", ".", "[eh]", "the",
         "when", "leaves", "please", "from", "not", "zzz"]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(VOCAB), max_size=25))
def test_incremental_equals_batch_random(words):
    from screenparse import CategoryChannel
    ch = CategoryChannel.bundled()
    toks = [Token.make(w, i) for i, w in enumerate(words)]
    inc = Pipeline(ch)
    for t in toks:
        inc.process_token(t)
    assert inc.flush().to_json() == Pipeline(ch).analyze(toks).to_json()


def test_frame_config_passed_through(bundled_channel):
    cfg = FrameConfig(frozenset(), frozenset())
    a = Pipeline(bundled_channel, cfg).analyze(tokenize("not at Monday"))
    assert not any(s.incompatible for f in a.frames for s in f.slots)
