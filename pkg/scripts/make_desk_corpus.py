#!/usr/bin/env python3
"""Generate the synthetic railway-enquiry desk corpus (train/test TSV files).

Usage: python scripts/make_desk_corpus.py [--seed N] [--out DIR]

Every generated utterance is checked against the repair rules applied to its
gold tags; samples whose gold surviving set the rules would not reproduce are
redrawn. The hand-written HARD utterances are exempt on purpose: they are the
known failure cases (non-adjacent repairs, legitimate same-start phrases).
"""

import argparse
import random
import sys
from pathlib import Path

CITIES = ["Regensburg", "Dortmund", "Koeln", "Hamburg", "Munich", "Berlin", "Bonn",
          "Passau", "Nuremberg", "Frankfurt", "Mainz", "Ulm"]
UNKNOWN_CITIES = ["Augsburg", "Kassel", "Bremen"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
DAYPARTS = ["morning", "evening", "afternoon"]
NUMS = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
        "eleven", "twelve"]

# surface, basic, abstract, start, keep
CLEAN = """Yeah A MG 1 1|I U NG 1 1|need V VG 1 1|a D NG 1 1|train N NG 0 1|from R PG 1 1|
Regensburg N PG 0 1|to R PG 1 1|Dortmund N PG 0 1|via R PG 1 1|Koeln N PG 0 1|. - IG 1 0|
with R PG 1 1|at_least J PG 0 1|two M PG 0 1|hours N PG 0 1|time N PG 0 1|in R PG 1 1|
Koeln N PG 0 1"""

FAULTY = """when A MG 1 1|leaves V VG 1 1|please V VG 0 1|. - IG 1 0|[eh] I IG 1 0|a D NG 1 1|
train N NG 0 1|. - IG 1 0|from R PG 1 1|Regensburg N PG 0 1|to R PG 1 1|Dortmund N PG 0 1|
. - IG 1 0|at R PG 1 0|Monday N PG 0 0|[mm] I IG 1 0|[ts] I IG 1 0|[u] I IG 1 0|. - IG 1 0|
at R PG 1 1|Monday N PG 0 1|. - IG 1 0|morning A PG 0 1"""

# known failures of adjacency-restricted repair, kept for the test split
HARD = [
    # non-adjacent repair: "after" should give way to "before nine"
    """[eh] I IG 1 0|. - IG 1 0|in R PG 1 1|the D PG 0 1|morning N PG 0 1|at R PG 1 1|
ten M PG 0 1|. - IG 1 0|in R PG 1 1|any D PG 0 1|case N PG 0 1|not A SG 1 0|after R PG 1 0|
. - IG 1 0|not A SG 1 1|before R PG 1 1|nine M PG 0 1""",
    # two genuine prepositional groups sharing their first word
    """I U NG 1 1|need V VG 1 1|a D NG 1 1|train N NG 0 1|at R PG 1 1|Friday N PG 0 1|
at R PG 1 1|ten M PG 0 1""",
    # non-adjacent repair separated by a conjunction
    """we U NG 1 1|go V VG 1 1|to R PG 1 0|Bonn N PG 0 0|. - IG 1 0|or C CG 1 0|[eh] I IG 1 0|
to R PG 1 1|Mainz N PG 0 1""",
]


def parse_block(block):
    rows = []
    for item in block.replace("\n", "").split("|"):
        s, b, a, st, k = item.split()
        rows.append((s, b, a, int(st), int(k)))
    return rows


def group(abstract, words):
    return [(s, b, abstract, 1 if i == 0 else 0, 1) for i, (s, b) in enumerate(words)]


class Gen:
    def __init__(self, rng, unknown=False):
        self.rng = rng
        self.cities = CITIES + (UNKNOWN_CITIES if unknown else [])

    def city(self):
        return self.rng.choice(self.cities)

    def mg(self):
        return group("MG", [(self.rng.choice(["yeah", "yes", "okay", "well"]), "A")])

    def wh(self):
        return group("MG", [(self.rng.choice(["when", "where", "how"]), "A")])

    def subj(self):
        return group("NG", [(self.rng.choice(["I", "we", "I", "you"]), "U")])

    def obj(self):
        r = self.rng
        return group("NG", r.choice([
            [("a", "D"), ("train", "N")],
            [("the", "D"), ("next", "J"), ("train", "N")],
            [("an", "D"), ("early", "J"), ("connection", "N")],
            [("a", "D"), ("direct", "J"), ("connection", "N")],
            [("the", "D"), ("connection", "N")],
            [("a", "D"), ("ticket", "N")],
            [("a", "D"), ("cheap", "J"), ("ticket", "N")],
            [("a", "D"), ("seat", "N")],
            [(r.choice(NUMS[1:5]), "M"), ("tickets", "N")],
            [("one", "M"), ("ticket", "N")],
            [("the", "D"), ("last", "J"), ("train", "N")],
            [("a", "D"), ("return", "N"), ("ticket", "N")],
        ]))

    def verb(self, person=True):
        r = self.rng
        if person:
            opts = [[("need", "V")], [("want", "V")], [("would", "V"), ("like", "V")],
                    [("have", "V")], [("need", "V")], [("must", "V"), ("change", "V")],
                    [("can", "V"), ("get", "V")], [("would", "V"), ("like", "V")]]
        else:
            opts = [[("leaves", "V")], [("leaves", "V"), ("please", "V")], [("goes", "V")],
                    [("arrives", "V")], [("is", "V")], [("does", "V"), ("leave", "V")],
                    [("takes", "V")]]
        return group("VG", r.choice(opts))

    def pg(self, kind):
        r = self.rng
        if kind == "from":
            w = [("from", "R"), (self.city(), "N")]
        elif kind == "to":
            w = [("to", "R"), (self.city(), "N")]
        elif kind == "via":
            w = [("via", "R"), (self.city(), "N")]
        elif kind == "in":
            w = [("in", "R"), (self.city(), "N")]
        elif kind == "day":
            w = [(r.choice(["at", "on"]), "R"), (r.choice(DAYS), "N")]
            if r.random() < 0.45:
                w.append((r.choice(DAYPARTS), "A"))
        elif kind == "part":
            w = [("in", "R"), ("the", "D"), (r.choice(DAYPARTS), "N")]
        elif kind == "clock":
            w = [(r.choice(["at", "before", "after", "until"]), "R"), (r.choice(NUMS), "M")]
        elif kind == "with":
            w = [("with", "R"), ("at_least", "J"), (r.choice(NUMS[1:4]), "M"),
                 ("hours", "N"), ("time", "N")]
        elif kind == "for":
            w = [("for", "R"), (r.choice(NUMS[1:5]), "M"), ("persons", "N")]
        else:
            raise ValueError(kind)
        return group("PG", w)

    def pgs(self, n):
        r = self.rng
        kinds = ["from", "to", "via", "day", "part", "clock", "in", "with", "for"]
        chosen, out = [], []
        while len(chosen) < n:
            k = r.choice(kinds)
            if k in chosen and k not in ("clock",):
                continue
            chosen.append(k)
        for k in chosen:
            out.append(self.pg(k))
        return out

    def cg(self):
        return group("CG", [(self.rng.choice(["and", "or", "but"]), "C")])

    def sg(self):
        return group("SG", [(self.rng.choice(["not", "also", "perhaps", "only"]), "A")])

    def template(self, n_pg):
        r = self.rng
        t = r.randrange(6)
        groups = []
        if t == 0:
            if r.random() < 0.5:
                groups.append(self.mg())
            groups += [self.subj(), self.verb(), self.obj()] + self.pgs(n_pg)
        elif t == 1:
            groups += [self.wh(), self.verb(False), self.obj()] + self.pgs(n_pg)
        elif t == 2:
            groups += [self.subj(), self.verb()] + self.pgs(max(1, n_pg - 1))
            groups += [self.cg(), self.subj(), self.verb()] + self.pgs(1)
        elif t == 3:
            groups += [self.mg(), self.obj()] + self.pgs(n_pg)
        elif t == 4:
            groups += [self.subj(), self.verb(), self.obj()] + self.pgs(max(1, n_pg - 1))
            groups += [self.sg()] + self.pgs(1)
        else:
            groups += [self.wh(), self.verb(False), self.obj()] + self.pgs(max(1, n_pg - 1))
            groups += [self.cg(), self.obj()] + self.pgs(1)
        return groups

    def noise(self):
        r = self.rng
        if r.random() < 0.7:
            return [(".", "-", "IG", 1, 0)]
        toks = [(r.choice(["[eh]", "[mm]", "[ts]", "[hm]", "[u]"]), "I", "IG", 1, 0)]
        if r.random() < 0.5:
            toks.append((".", "-", "IG", 1, 0))
        return toks

    def reparandum(self, pg):
        r = self.rng
        words = [(s, b) for s, b, *_ in pg]
        if len(words) > 2 and r.random() < 0.5:
            words = words[:2]
        elif words[1][1] == "N" and words[1][0] in DAYS + self.cities and r.random() < 0.5:
            pool = DAYS if words[1][0] in DAYS else self.cities
            words = [words[0], (r.choice([x for x in pool if x != words[1][0]]), "N")]
        return [(s, b, a, st, 0) for s, b, a, st, _ in group("PG", words)]

    def utterance(self, n_pg, p_noise, p_repair, p_wordrep):
        r = self.rng
        out = []
        for gi, g in enumerate(self.template(n_pg)):
            if gi > 0 and r.random() < p_noise:
                out += self.noise()
            if g[0][2] == "PG" and r.random() < p_repair:
                out += self.reparandum(g)
                if r.random() < 0.8:
                    out += self.noise()
            if g[0][2] in ("NG", "VG") and r.random() < p_wordrep:
                s, b, a, _, _ = g[0]
                out.append((s, b, a, 1, 0))
            if g[0][2] == "PG" and g[-1][1] == "A" and r.random() < 0.5:
                g = g[:-1] + [(".", "-", "IG", 1, 0)] + g[-1:]
            out += g
        if r.random() < 0.3:
            out = self.noise()[:1] + out
        return out


def rules_keep(rows):
    """Surviving positions when the repair rules run over gold tags."""
    words = [(i, s, b, a, st) for i, (s, b, a, st, _) in enumerate(rows)
             if not (s == "." or s.startswith("[") or b == "I")]
    kept, prev = [], None
    for w in words:
        if prev is not None and prev[1].casefold() == w[1].casefold():
            kept.pop()
        kept.append(w)
        prev = w
    groups = []
    for w in kept:
        if not groups or w[4] or w[3] != groups[-1][0][3]:
            groups.append([w])
        else:
            groups[-1].append(w)
    out = []
    for gi, g in enumerate(groups):
        nxt = groups[gi + 1] if gi + 1 < len(groups) else None
        if nxt and nxt[0][3] == g[0][3] and nxt[0][1].casefold() == g[0][1].casefold():
            continue
        out.extend(w[0] for w in g)
    return out


def gold_keep(rows):
    return [i for i, r in enumerate(rows) if r[4]]


def draw(gen, n_pg_range, p_noise, p_repair, p_wordrep):
    while True:
        rows = gen.utterance(gen.rng.randint(*n_pg_range), p_noise, p_repair, p_wordrep)
        if rules_keep(rows) == gold_keep(rows):
            return rows


def write(path, utterances, header):
    lines = [f"# {header}", "# surface<TAB>basic<TAB>abstract<TAB>start<TAB>keep"]
    for rows in utterances:
        lines.append("")
        lines.extend("\t".join([s, b, a, str(st), str(k)]) for s, b, a, st, k in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return sum(len(u) for u in utterances)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=1994)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parents[1] / "src/screenparse/data")
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)

    train_gen = Gen(rng)
    train = [parse_block(CLEAN), parse_block(FAULTY)]
    while len(train) < 37:
        train.append(draw(train_gen, (1, 1), 0.12, 0.10, 0.05))

    test_gen = Gen(rng, unknown=True)
    test = [parse_block(h) for h in HARD]
    while len(test) < 58:
        test.append(draw(test_gen, (1, 3), 0.25, 0.15, 0.06))
    rng.shuffle(test)

    args.out.mkdir(parents=True, exist_ok=True)
    n_train = write(args.out / "desk_train.tsv", train, "desk corpus, train split")
    n_test = write(args.out / "desk_test.tsv", test, "desk corpus, test split")
    print(f"train: {len(train)} utterances, {n_train} tokens", file=sys.stderr)
    print(f"test: {len(test)} utterances, {n_test} tokens", file=sys.stderr)


if __name__ == "__main__":
    main()
