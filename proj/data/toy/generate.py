#!/usr/bin/env python3
"""Writes the toy corpus: categories.txt, train.csv and test.csv.

Documents mix topic words, a few words of another topic, shared filler
and made-up rare words. About one in ten documents
carries two labels. Fields are TAB separated: name, labels, text.
Re-running with the same seed rewrites identical files.
"""

import argparse
import pathlib
import random

TOPICS = {
    "sports": "match goal team coach league season player score referee stadium tournament striker keeper penalty "
              "transfer fans victory defeat championship training",
    "politics": "election parliament minister vote policy senate campaign budget reform party coalition law debate "
                "president governor ballot treaty cabinet opposition mandate",
    "technology": "software computer network server database algorithm processor cloud encryption startup device "
                  "browser compiler kernel storage protocol robot sensor battery chip",
    "cooking": "recipe oven flour butter garlic onion sauce simmer roast kitchen pepper salt dough bake spices "
               "tomato pasta grill dessert vinegar",
}

FILLER = ("the a of and to in is was for on with that this it as at by from about after over new more "
          "people year week report said today still very often")


SYLLABLES = "ba ko ri tu me sa lo vi ne da pu ge zo fi ka mu te ro la ni".split()


def lexicon(rng, size):
    words = set()
    while len(words) < size:
        words.add("".join(rng.choices(SYLLABLES, k=rng.randint(2, 4))))
    return sorted(words)


def document(rng, labels, rare):
    names = list(TOPICS)
    words = []
    for label in labels:
        vocab = TOPICS[label].split()
        words += rng.choices(vocab, k=rng.randint(6, 12))
    other = rng.choice([n for n in names if n not in labels])
    words += rng.choices(TOPICS[other].split(), k=rng.randint(0, 4))
    words += rng.choices(FILLER.split(), k=rng.randint(10, 18))
    words += rng.choices(rare, k=rng.randint(4, 10))
    rng.shuffle(words)
    sentence = " ".join(words)
    return sentence[0].upper() + sentence[1:] + "."


def corpus(rng, prefix, size, rare):
    names = list(TOPICS)
    rows = []
    for i in range(size):
        labels = [names[i % len(names)]]
        if rng.random() < 0.1:
            labels.append(rng.choice([n for n in names if n != labels[0]]))
        rows.append(f"{prefix}{i:03d}\t{','.join(labels)}\t{document(rng, labels, rare)}")
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--train", type=int, default=160)
    parser.add_argument("--test", type=int, default=80)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).parent)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    rare = lexicon(rng, 400)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "categories.txt").write_text("\n".join(TOPICS) + "\n")
    (args.out / "train.csv").write_text("\n".join(corpus(rng, "train", args.train, rare)) + "\n")
    (args.out / "test.csv").write_text("\n".join(corpus(rng, "test", args.test, rare)) + "\n")


if __name__ == "__main__":
    main()
