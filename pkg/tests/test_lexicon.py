import numpy as np
import pytest
from hypothesis import given, strategies as st

from screenparse.lexicon import (
    ABSTRACT,
    BASIC,
    OPEN_CLASS,
    Lexicon,
    LexiconError,
    Token,
    TokenKind,
    decode_candidates,
    encode_candidates,
    tokenize,
)


def test_token_kinds():
    assert Token.make(".", 0).kind is TokenKind.PAUSE
    assert Token.make("[eh]", 1).kind is TokenKind.BRACKETED
    assert Token.make("train", 2).kind is TokenKind.WORD
    assert Token.make("..", 0).kind is TokenKind.WORD
    assert Token.make("[", 0).kind is TokenKind.WORD


def test_tokenize_positions():
    toks = tokenize("a train .  [eh] from")
    assert [t.position for t in toks] == [0, 1, 2, 3, 4]
    assert [t.kind for t in toks][2:4] == [TokenKind.PAUSE, TokenKind.BRACKETED]
    assert tokenize("   ") == []


def test_inventories_match_network_widths():
    assert len(BASIC) == 11 and BASIC.width == 13
    assert len(ABSTRACT) == 7 and ABSTRACT.width == 8
    assert BASIC.index("N") == BASIC.index("Noun")
    assert ABSTRACT.canonical("PG") == "Prepositional Group"


@pytest.mark.parametrize("surface, expected", [
    ("train", {"Noun"}),
    (".", {"Pause"}),
    ("morning", {"Adverb", "Noun"}),
    ("xyzzy", {"Noun", "Verb", "Adjective", "Adverb"}),
    ("[u]", {"Interjection"}),
    ("TRAIN", {"Noun"}),
])
def test_lookup(lexicon, surface, expected):
    assert lexicon.lookup(surface) == expected


def test_lookup_rejects_empty(lexicon):
    with pytest.raises(ValueError):
        lexicon.lookup("")


def test_lexicon_covers_reference_words(lexicon):
    from helpers import CLEAN, FAULTY
    for tok in tokenize(CLEAN + " " + FAULTY):
        if tok.kind is TokenKind.WORD:
            assert tok.surface in lexicon, tok.surface


def test_lexicon_parse_errors():
    with pytest.raises(LexiconError, match=":2:"):
        Lexicon.parse("# c\nfoo\n")
    with pytest.raises(LexiconError, match=":1:.*'Q'"):
        Lexicon.parse("foo\tQ\n")
    lex = Lexicon.parse("# comment\nFoo\tN,V\n\n")
    assert lex.lookup("foo") == {"Noun", "Verb"}


def test_encode_one_hot_and_pair():
    v = encode_candidates({"Noun"}, BASIC)
    assert v.shape == (13,) and v.sum() == 1 and v[BASIC.index("Noun")] == 1
    assert encode_candidates({"Adverb", "Noun"}, BASIC).sum() == 2


def test_encode_full_inventory_leaves_padding_zero():
    v = encode_candidates(BASIC.labels, BASIC)
    np.testing.assert_array_equal(v, [1] * 11 + [0, 0])


def test_encode_rejects_unknown_or_empty():
    with pytest.raises(KeyError):
        encode_candidates({"Gerund"}, BASIC)
    with pytest.raises(ValueError):
        encode_candidates(set(), BASIC)


label_sets = st.sets(st.sampled_from(BASIC.labels), min_size=1)


@given(label_sets)
def test_encode_decode_round_trip(labels):
    assert decode_candidates(encode_candidates(labels, BASIC), BASIC) == labels


@given(label_sets, label_sets)
def test_encode_injective(a, b):
    same = np.array_equal(encode_candidates(a, BASIC), encode_candidates(b, BASIC))
    assert same == (a == b)


@given(st.text(min_size=1, max_size=12).filter(lambda s: not s.isspace()))
def test_lookup_total_and_nonempty(s):
    result = Lexicon.bundled().lookup(s)
    assert result and result <= set(BASIC.labels)


def test_open_class_fallback_is_in_inventory():
    assert OPEN_CLASS <= set(BASIC.labels)
