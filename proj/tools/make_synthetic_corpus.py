#!/usr/bin/env python3
"""Generate the synthetic evaluation fixtures under data/synthetic/.

Outputs:
  corpus.tsv        200 labeled topics across four genres
  base_lexicon.tsv  data/lexicon.tsv with 20% of the PO/NG words withheld
  provider.tsv      synonym fixture from which the withheld words can be recovered

Gold labels come from the construction rules below, not from the C++ code.
The output is a pure function of the seed and the files in data/.
"""

import argparse
import random
from pathlib import Path

GENRES = [  # (name, id prefix, topic count)
    ("tweet", "tw", 98),
    ("hotel", "ho", 32),
    ("product", "pr", 34),
    ("tv", "tv", 36),
]

NOUNS = {
    "tweet": ["الحكومة", "البلد", "الناس", "الشارع", "الماتش", "الجو", "الرئيس"],
    "hotel": ["الفندق", "الغرفة", "الموظفين", "الفطار", "الحمام", "الاستقبال", "المكان"],
    "product": ["الموبايل", "الجهاز", "المنتج", "البطارية", "الشاشة", "السعر"],
    "tv": ["المسلسل", "البرنامج", "الحلقة", "المذيع", "الفيلم", "التمثيل"],
}

INTROS = {
    "tweet": ["النهارده الصبح", "بصراحة يا جماعة"],
    "hotel": ["نزلت في الفندق الاسبوع اللي فات", "قضينا اجازة قصيرة"],
    "product": ["اشتريت الجهاز من شهر", "جربت المنتج كذا مرة"],
    "tv": ["شفت الحلقة امبارح", "تابعت الموسم كله"],
}

# Noun/adjective pairs with opposite polarity; each one is a negative conflict.
CONFLICT_PAIRS = [
    ("خدمة", "سيئة"), ("خدمة", "وحشة"), ("سعادة", "وهمية"), ("فساد", "اخلاقي"),
    ("نجاح", "وهمي"), ("جمال", "مزيف"), ("راحة", "مزيفة"),
]

# Evidence words for the three-case walkthrough stay in the base lexicon.
KEEP = {"فرحان", "سعيد", "مبتهج", "قوي", "عنيف", "حاد"}

# Topic mix, in percent of each genre.
MIX = [
    ("simple", 38), ("pair", 10), ("intensified", 10), ("negated", 12), ("idiom", 10),
    ("conflict", 8), ("position", 4), ("question", 4), ("wishful", 4),
]

DIACRITICS = ["َ", "ُ", "ِ", "ّ", "ْ", "ً"]
NOISE = ["!!", "...", "#مصر", "2014", "http://t.co/x1", "@user", "؟؟", ":)", "10/10", "OK"]


def read_tsv(path):
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append(line.split("\t"))
    return rows


def load_resources(data):
    lex = read_tsv(data / "lexicon.tsv")[1:]
    tags = {w: t for w, t in read_tsv(data / "tags.tsv")}
    idioms = [(p, pol) for p, pol, *_ in read_tsv(data / "idioms.tsv")]
    return lex, tags, idioms


def allocate(total, rng):
    counts = [total * pct // 100 for _, pct in MIX]
    i = 0
    while sum(counts) < total:
        counts[i % len(counts)] += 1
        i += 1
    kinds = [k for (k, _), c in zip(MIX, counts) for _ in range(c)]
    rng.shuffle(kinds)
    return kinds


def flip(p):
    return "NG" if p == "PO" else "PO"


def noisy_word(w, rng):
    """Spelling variation that normalization undoes."""
    if w.startswith("ا") and rng.random() < 0.3:
        w = rng.choice("أإ") + w[1:]
    if w.endswith("ي") and rng.random() < 0.2:
        w = w[:-1] + "ى"
    if len(w) > 2 and rng.random() < 0.2:
        k = rng.randrange(1, len(w))
        w = w[:k] + rng.choice(DIACRITICS) + w[k:]
    if len(w) > 3 and rng.random() < 0.08:
        k = rng.randrange(1, len(w) - 1)
        w = w[:k] + "ـ" + w[k:]
    return w


def render(words, rng):
    text = " ".join(noisy_word(w, rng) for w in words)
    if rng.random() < 0.2:
        text += " " + rng.choice(NOISE)
    return text


class Builder:
    def __init__(self, lex, tags, idioms, rng):
        self.rng = rng
        self.adj = {"PO": [], "NG": []}
        for w, _, _, p, _ in lex:
            if p in self.adj and tags.get(w) == "JJ":
                self.adj[p].append(w)
        self.idioms = idioms

    def word(self, p):
        return self.rng.choice(self.adj[p])

    def topic(self, kind, genre):
        rng = self.rng
        noun = rng.choice(NOUNS[genre])
        p = rng.choice(["PO", "NG"])
        if kind == "simple":
            return p, [noun, self.word(p)]
        if kind == "pair":
            a, b = self.word(p), self.word(p)
            while b == a:
                b = self.word(p)
            return p, [noun, a, "و", b]
        if kind == "intensified":
            return p, [noun, self.word(p), rng.choice(["جدا", "اوي", "للغاية"])]
        if kind == "negated":
            return flip(p), [noun, rng.choice(["مش", "ليس", "مش"]), self.word(p)]
        if kind == "idiom":
            phrase, pol = rng.choice(self.idioms)
            if rng.random() < 0.5:
                return pol, [noun] + phrase.split()
            return pol, phrase.split() + ["رغم", "ان", rng.choice(NOUNS[genre]), self.word(flip(pol))]
        if kind == "conflict":
            n, a = rng.choice(CONFLICT_PAIRS)
            return "NG", [noun, "فيه", n, a]
        if kind == "position":
            other = rng.choice(NOUNS[genre])
            return p, [noun, self.word(p), "لكن", "يوجد", self.word(flip(p)), "في", "بعض", other]
        if kind == "question":
            if rng.random() < 0.5:
                return "NG", ["هل", "يوجد", noun, self.word("PO")]
            return "NG", [rng.choice(["ليه", "ازاي"]), noun, self.word("NG")]
        if kind == "wishful":
            return "NG", [rng.choice(["يارب", "اتمني"]), noun, "يبقي", self.word("PO")]
        raise ValueError(kind)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--seed", type=int, default=11)
    ap.add_argument("--withhold", type=float, default=0.2)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    lex, tags, idioms = load_resources(args.data)
    out = args.data / "synthetic"
    out.mkdir(exist_ok=True)

    # Withheld words: drawn from the adjectives the corpus is built from.
    conflict_words = {w for pair in CONFLICT_PAIRS for w in pair}
    sentiment = [r for r in lex if r[3] in ("PO", "NG")]
    eligible = [r[0] for r in sentiment
                if tags.get(r[0]) == "JJ" and r[0] not in conflict_words and r[0] not in KEEP]
    n_withheld = round(args.withhold * len(sentiment))
    withheld = set(rng.sample(sorted(eligible), n_withheld))

    base = [r for r in lex if r[0] not in withheld]
    with open(out / "base_lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("word\tgloss\ttranslit\tpolarity\ttf\n")
        for r in base:
            f.write("\t".join(r) + "\n")

    kept = {"PO": [], "NG": []}
    for w, _, _, p, _ in base:
        if p in kept and tags.get(w) == "JJ":
            kept[p].append(w)
    with open(out / "provider.tsv", "w", encoding="utf-8") as f:
        f.write("# word\ttranslation\tsynonyms\tantonyms\n")
        for w, gloss, _, p, _ in sorted(r for r in sentiment if r[0] in withheld):
            syns = rng.sample(kept[p], 3)
            ants = rng.sample(kept[flip(p)], 1) if rng.random() < 0.3 else []
            f.write(f"{w}\t{gloss}\t{','.join(syns)}\t{','.join(ants)}\n")
        # A few corpus nouns with mixed evidence: conflict of synonyms.
        for noun in ["الجو", "السعر", "الشارع"]:
            f.write(f"{noun}\t\t{kept['PO'][0]},{kept['NG'][0]}\t\n")

    builder = Builder(lex, tags, idioms, rng)
    lines = ["id\tlabel\tgenre\ttext"]
    for genre, prefix, count in GENRES:
        for i, kind in enumerate(allocate(count, rng), start=1):
            label, words = builder.topic(kind, genre)
            text = render(words, rng)
            if rng.random() < 0.2:
                text = rng.choice(INTROS[genre]) + ". " + text
            lines.append(f"{prefix}-{i:03d}\t{label}\t{genre}\t{text}")
    (out / "corpus.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(lines) - 1} topics, {len(withheld)} withheld words")


if __name__ == "__main__":
    main()
