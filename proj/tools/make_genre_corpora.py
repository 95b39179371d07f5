#!/usr/bin/env python3
# Copyright 2026 The Gramcov Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the synthetic genre corpora under data/genre.

Two genres over the toy lexicon: "manual" (instructions: imperatives,
conditionals, modal passives) and "news" (past-tense reports: names,
reported speech, relatives, passives with agents, coordination). Each
genre gets a train and a test split of 400 sentences of 10 to 20 tokens.
"""

import argparse
import pathlib
import random

MIN_TOKENS = 10
MAX_TOKENS = 20

MANUAL_NOUNS = ["button", "cover", "battery", "card", "slot", "cable", "light",
                "device", "screen", "box", "plug", "lid", "switch"]
MANUAL_MODIFIERS = ["power", "battery", "card", "screen"]
MANUAL_ADJECTIVES = ["small", "large", "green", "red", "new", "main", "loose"]
MANUAL_VERBS = ["press", "remove", "insert", "check", "open", "close", "clean",
                "hold", "connect"]
MANUAL_PARTICLE_VERBS = [("switch", "off"), ("switch", "on"), ("turn", "off"),
                         ("turn", "on")]
MANUAL_PREPOSITIONS = ["into", "on", "in", "with", "from", "to", "near"]
MANUAL_ADVERBS = ["carefully", "firmly", "slowly", "again"]
MANUAL_STATES = ["hot", "loose", "red", "green"]
MANUAL_PARTICIPLES = ["removed", "closed", "checked", "cleaned", "connected",
                      "inserted", "opened", "pressed"]
MODALS = ["must", "should", "can"]
SUBJUNCTIONS = ["if", "when", "after"]

NEWS_NOUNS = ["minister", "company", "plant", "city", "government", "worker",
              "garden", "park"]
NEWS_PLURALS = ["ministers", "companies", "plants", "workers", "governments"]
NEWS_PLACES = ["berlin", "paris"]
NEWS_PEOPLE = ["john", "mary", "peter"]
NEWS_TITLES = ["mr", "dr"]
NEWS_SURNAMES = ["smith", "miller"]
NEWS_ADJECTIVES = ["old", "new", "local", "large", "main"]
NEWS_VERBS = ["visited", "closed", "found", "held", "cleaned", "opened"]
NEWS_SAY = ["said", "announced", "reported"]
NEWS_TIME = ["yesterday", "today"]
NUMERALS = ["two", "three", "five", "ten"]


def manual_np(rng, depth=0):
    words = ["the"]
    if rng.random() < 0.45:
        words.append(rng.choice(MANUAL_ADJECTIVES))
    if rng.random() < 0.3:
        words.append(rng.choice(MANUAL_MODIFIERS))
    words.append(rng.choice(MANUAL_NOUNS))
    if depth == 0 and rng.random() < 0.2:
        words += ["of", "the", rng.choice(MANUAL_NOUNS)]
    return words


def manual_pps(rng, count):
    words = []
    for _ in range(count):
        words += [rng.choice(MANUAL_PREPOSITIONS)] + manual_np(rng, depth=1)
    return words


def manual_imperative(rng):
    if rng.random() < 0.3:
        verb, particle = rng.choice(MANUAL_PARTICLE_VERBS)
        words = [verb, particle] + manual_np(rng)
    else:
        words = [rng.choice(MANUAL_VERBS)] + manual_np(rng)
    words += manual_pps(rng, 1 if rng.random() < 0.8 else 2)
    if rng.random() < 0.5:
        words.append(rng.choice(MANUAL_ADVERBS))
    return words


def manual_sentence(rng):
    kind = rng.random()
    if kind < 0.45:
        return manual_imperative(rng) + ["."]
    if kind < 0.7:
        condition = [rng.choice(SUBJUNCTIONS)] + manual_np(rng, depth=1)
        condition += ["is", rng.choice(MANUAL_STATES), ","]
        return condition + manual_imperative(rng) + ["."]
    if kind < 0.85:
        words = ["do", "not", rng.choice(MANUAL_VERBS)] + manual_np(rng)
        return words + manual_pps(rng, 1 if rng.random() < 0.8 else 2) + ["."]
    words = manual_np(rng) + [rng.choice(MODALS), "be", rng.choice(MANUAL_PARTICIPLES)]
    if rng.random() < 0.6:
        words.append(rng.choice(MANUAL_ADVERBS))
    return words + ["."]


def news_np(rng, allow_relative=True):
    kind = rng.random()
    if kind < 0.2:
        words = [rng.choice(NEWS_PEOPLE)]
    elif kind < 0.3:
        words = [rng.choice(NEWS_TITLES), rng.choice(NEWS_PEOPLE), rng.choice(NEWS_SURNAMES)]
    elif kind < 0.4:
        words = [rng.choice(NUMERALS), rng.choice(NEWS_PLURALS)]
    else:
        words = ["the"]
        if rng.random() < 0.4:
            words.append(rng.choice(NEWS_ADJECTIVES))
        words.append(rng.choice(NEWS_NOUNS))
        if allow_relative and rng.random() < 0.2:
            words += ["that", rng.choice(NEWS_VERBS)] + news_np(rng, False)
    return words


def news_place(rng):
    return ["in", rng.choice(NEWS_PLACES)]


def news_clause(rng):
    words = news_np(rng) + [rng.choice(NEWS_VERBS)] + news_np(rng, False)
    if rng.random() < 0.5:
        words += news_place(rng)
    if rng.random() < 0.4:
        words.append(rng.choice(NEWS_TIME))
    return words


def news_sentence(rng):
    kind = rng.random()
    if kind < 0.3:
        return news_clause(rng) + ["."]
    if kind < 0.5:
        words = news_np(rng, False) + [rng.choice(NEWS_SAY), "that"]
        return words + news_clause(rng) + ["."]
    if kind < 0.65:
        words = ["the", rng.choice(NEWS_NOUNS), "was", "visited", "by"]
        words += news_np(rng, False) + [rng.choice(NEWS_TIME)]
        return words + ["."]
    if kind < 0.8:
        return news_clause(rng) + ["and"] + news_clause(rng) + ["."]
    if kind < 0.9:
        words = ["there", "were", rng.choice(NUMERALS), rng.choice(NEWS_PLURALS)]
        return words + ["in", "the", rng.choice(NEWS_NOUNS)] + news_place(rng) + ["."]
    words = news_np(rng, False) + ["and"] + news_np(rng, False)
    return words + [rng.choice(NEWS_VERBS)] + news_np(rng) + news_place(rng) + ["."]


def sample(rng, make, count):
    sentences = []
    seen = set()
    while len(sentences) < count:
        words = make(rng)
        text = " ".join(words)
        if not MIN_TOKENS <= len(words) <= MAX_TOKENS or text in seen:
            continue
        seen.add(text)
        sentences.append(text)
    return sentences


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/genre", help="output directory")
    parser.add_argument("--size", type=int, default=400, help="sentences per split")
    parser.add_argument("--seed", type=int, default=20261016)
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for genre, make in (("manual", manual_sentence), ("news", news_sentence)):
        rng = random.Random(f"{args.seed}/{genre}")
        sentences = sample(rng, make, 2 * args.size)
        for split, part in (("train", sentences[:args.size]),
                            ("test", sentences[args.size:])):
            path = out / f"{genre}_{split}.txt"
            path.write_text("".join(s + "\n" for s in part))


if __name__ == "__main__":
    main()
