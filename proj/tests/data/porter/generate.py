#!/usr/bin/env python3
"""Regenerates vocabulary.tsv: word<TAB>stem pairs from NLTK's Porter
stemmer in ORIGINAL_ALGORITHM mode.

Words are every a-z token of the text files given on the command line plus
a fixed list of rule-specific cases.

    python3 generate.py <text files...> > vocabulary.tsv
"""
import re
import sys

from nltk.stem.porter import PorterStemmer

EXTRA = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization
predication operator feudalism decisiveness hopefulness callousness
formaliti sensitiviti sensibiliti triplicate formative formalize
electriciti electrical hopeful goodness revival allowance inference airliner
gyroscopic adjustable defensible irritant replacement adjustment dependent
adoption homologou communism activate angulariti homologous effective
bowdlerize probate rate cease controll roll generalizations oscillators
a i y by ay yy sky skies dying lying tying agreement abli logi
""".split()

words = set(EXTRA)
for path in sys.argv[1:]:
    with open(path, encoding="utf-8") as f:
        words.update(re.findall(r"[a-z]+", f.read().lower()))

stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
for word in sorted(words):
    print(f"{word}\t{stemmer.stem(word, to_lowercase=False)}")
