import random

import pytest

from screenparse import Pipeline
from screenparse.corpus import (
    CorpusError,
    InterpretationRate,
    evaluate,
    load_corpus,
    overall_interpretation_rate,
    parse_corpus,
    score,
)
from screenparse.caseframe import UtteranceAnalysis
from screenparse.pipeline import correct_tagged

from helpers import stream


def test_single_token_example():
    (u,) = parse_corpus("train\tN\tNG\t0\n")
    assert u.tokens[0].surface == "train"
    g = u.gold[0]
    assert (g.basic, g.abstract, g.start, g.keep) == ("Noun", "Noun Group", False, None)
    assert u.gold_surviving() is None


def test_blocks_are_utterances():
    text = "a\tD\tNG\t1\t1\n\n\nb\tN\tNG\t0\t1\nc\tN\tNG\t0\t0\n"
    corpus = parse_corpus(text)
    assert len(corpus) == 2
    assert corpus[1].gold_surviving() == (0,)
    assert [t.position for t in corpus[1].tokens] == [0, 1]


@pytest.mark.parametrize("line, needle", [
    ("a\tQ\tNG\t1", "unknown basic label 'Q'"),
    ("a\tD\tXX\t1", "unknown abstract"),
    ("a\tD\tNG", "expected 4 or 5"),
    ("a\tD\tNG\t2", "0 or 1"),
])
def test_malformed_lines_named(line, needle):
    with pytest.raises(CorpusError) as exc:
        parse_corpus("ok\tN\tNG\t1\n" + line + "\n", "x.tsv")
    assert "x.tsv:2" in str(exc.value) and needle in str(exc.value)


def test_load_corpus_from_file(tmp_path):
    p = tmp_path / "c.tsv"
    p.write_text("# header\nI\tU\tNG\t1\t1\n")
    assert load_corpus(p)[0].text == "I"


def test_bundled_split_sizes(train_corpus, test_corpus):
    assert len(train_corpus) == 37 and len(test_corpus) == 58
    assert all(u.has_keep for u in train_corpus + test_corpus)


def test_perfect_predictions_score_full(train_corpus):
    preds = [[(g.basic, g.abstract, g.start) for g in u.gold] for u in train_corpus]
    m = score(preds, train_corpus)
    assert (m.basic, m.abstract, m.start, m.combined) == (1.0, 1.0, 1.0, 1.0)


def test_combined_counts_joint_correctness():
    corpus = parse_corpus("a\tD\tNG\t1\nb\tN\tNG\t0\n")
    m = score([[("Determiner", "Prepositional Group", True), ("Verb", "Noun Group", False)]],
              corpus)
    assert (m.basic, m.abstract, m.combined, m.start) == (0.5, 0.5, 0.0, 1.0)


def test_score_rejects_empty_and_mismatch():
    with pytest.raises(ValueError):
        score([], [])
    with pytest.raises(ValueError):
        score([[]], parse_corpus("a\tD\tNG\t1\n"))


def test_evaluate_invariant_to_order_and_leaves_channel(bundled_channel, test_corpus):
    before = bundled_channel.contexts()
    m1 = evaluate(bundled_channel, test_corpus)
    shuffled = list(test_corpus)
    random.Random(3).shuffle(shuffled)
    m2 = evaluate(bundled_channel, shuffled)
    assert m1 == m2
    assert m1.combined <= min(m1.basic, m1.abstract)
    after = bundled_channel.contexts()
    assert all((a == b).all() for a, b in zip(before, after))


FAULTY_GOLD_TAGS = ("when/A/MG/1 leaves/V/VG/1 please/A/MG/1 ./-/IG/1 [eh]/I/IG/1 a/D/NG/1 "
                 "train/N/NG/0 ./-/IG/1 from/R/PG/1 Regensburg/N/PG/0 to/R/PG/1 "
                 "Dortmund/N/PG/0 ./-/IG/1 at/R/PG/1 Monday/N/PG/0 [mm]/I/IG/1 "
                 "[ts]/I/IG/1 [u]/I/IG/1 ./-/IG/1 at/R/PG/1 Monday/N/PG/0 ./-/IG/1 "
                 "morning/N/PG/0")


def test_rate_reference_with_gold_tags():
    a = correct_tagged(stream(FAULTY_GOLD_TAGS))
    gold = (0, 1, 2, 5, 6, 8, 9, 10, 11, 19, 20, 22)
    assert overall_interpretation_rate([a], [gold]) == InterpretationRate(1.0, 1, 1, 0)


def test_rate_not_after_not_before_scored_wrong():
    a = correct_tagged(stream("not/A/SG/1 after/R/PG/1 ./-/IG/1 not/A/SG/1 "
                              "before/R/PG/1 nine/M/PG/0"))
    repaired_gold = (3, 4, 5)
    r = overall_interpretation_rate([a], [repaired_gold])
    assert r.rate == 0.0 and r.scored == 1


def test_rate_skips_missing_gold():
    a = correct_tagged(stream("a/D/NG/1"))
    r = overall_interpretation_rate([a, a], [None, (0,)])
    assert (r.correct, r.scored, r.skipped) == (1, 1, 1)
    with pytest.raises(ValueError):
        overall_interpretation_rate([], [])
    with pytest.raises(ValueError):
        overall_interpretation_rate([a], [None])


def test_bundled_models_interpretation_rate(bundled_channel, test_corpus):
    pipe = Pipeline(bundled_channel)
    analyses = [pipe.analyze(u.tokens) for u in test_corpus]
    rate = overall_interpretation_rate(analyses, [u.gold_surviving() for u in test_corpus])
    assert rate.scored == 58
    assert rate.rate > 0.8


def test_gold_keep_consistent_with_repair_rules(train_corpus, test_corpus):
    """The generator's keep column agrees with the rules applied to gold tags,
    except for the hand-written hard cases in the test split."""
    from screenparse.channel import TaggedWord
    mismatches = 0
    for u in train_corpus + test_corpus:
        ws = [TaggedWord(t, g.basic, (), g.abstract, (), g.start, float(g.start))
              for t, g in zip(u.tokens, u.gold)]
        if correct_tagged(ws).surviving_positions != u.gold_surviving():
            mismatches += 1
    assert mismatches == 3


def test_empty_analysis_has_no_survivors():
    assert overall_interpretation_rate([UtteranceAnalysis()], [()]).rate == 1.0
