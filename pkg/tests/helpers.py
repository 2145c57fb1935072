"""Builders for hand-made tag streams."""

from screenparse.channel import TaggedWord
from screenparse.lexicon import ABSTRACT, BASIC, Token

CLEAN = ("Yeah I need a train from Regensburg to Dortmund via Koeln . "
        "with at_least two hours time in Koeln")
FAULTY = ("when leaves please . [eh] a train . from Regensburg to Dortmund . "
        "at Monday [mm] [ts] [u] . at Monday . morning")
CLEAN_SURVIVING = ("Yeah I need a train from Regensburg to Dortmund via Koeln "
                  "with at_least two hours time in Koeln")
FAULTY_SURVIVING = "when leaves please a train from Regensburg to Dortmund at Monday morning"


def tw(surface, basic, abstract, start, position):
    b, a = BASIC.canonical(basic), ABSTRACT.canonical(abstract)
    b_act = tuple(0.9 if lab == b else 0.1 for lab in BASIC.labels) + (0.0, 0.0)
    a_act = tuple(0.9 if lab == a else 0.1 for lab in ABSTRACT.labels) + (0.0,)
    return TaggedWord(Token.make(surface, position), b, b_act, a, a_act, bool(start),
                      0.9 if start else 0.1)


def stream(spec):
    """``"at/R/PG/1 Monday/N/PG/0"`` -> list of TaggedWord."""
    out = []
    for i, item in enumerate(spec.split()):
        s, b, a, st = item.rsplit("/", 3)
        out.append(tw(s, b, a, st == "1", i))
    return out
