"""Independent oracles and corpus builders shared by the test modules.

The oracles deliberately re-derive expected results by brute force
(enumeration, direct counting) so the implementations they check cannot
leak into them.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter, defaultdict

from ne_translit.alignment import SKIP_PENALTY, ParallelEntry
from ne_translit.decoder import candidates
from ne_translit.model import BOS, EOS, TransliterationModel

NEG_INF = float("-inf")


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else NEG_INF


# --- monotone alignment oracle -------------------------------------------

def enumerate_monotone(e, h, costs):
    """Yield (pairs, score) for every monotone alignment of e and h.

    Scores accumulate move by move, exactly like a left-to-right walk.
    """
    log_skip = math.log(SKIP_PENALTY)

    def walk(i, j, pairs, score):
        if i == len(e) and j == len(h):
            yield list(pairs), score
            return
        if i < len(e) and j < len(h):
            pairs.append((e[i], h[j]))
            yield from walk(i + 1, j + 1, pairs, score + _log(costs.prob(e[i], h[j])))
            pairs.pop()
        if i < len(e):
            yield from walk(i + 1, j, pairs, score + log_skip)
        if j < len(h):
            yield from walk(i, j + 1, pairs, score + log_skip)

    yield from walk(0, 0, [], 0.0)


def best_monotone_score(e, h, costs) -> float:
    return max(score for _, score in enumerate_monotone(e, h, costs))


def score_alignment(e, h, pairs, costs) -> float:
    """Score of a specific alignment result: matches plus implied skips."""
    score = sum(_log(costs.prob(pe, ph)) for pe, ph in pairs)
    skips = (len(e) - len(pairs)) + (len(h) - len(pairs))
    return score + skips * math.log(SKIP_PENALTY)


# --- frequency-counting oracle (unsmoothed estimation) --------------------

def count_tables(aligned_corpus):
    """Emission and transition ratios by direct counting, nothing shared
    with the estimator."""
    pair_counts = Counter()
    h_counts = Counter()
    bigram_counts = Counter()
    prev_counts = Counter()
    for pairs in aligned_corpus:
        if not pairs:
            continue
        hs = [p.h for p in pairs]
        for p in pairs:
            pair_counts[(p.h, p.e)] += 1
            h_counts[p.h] += 1
        for prev, nxt in zip([BOS] + hs, hs + [EOS]):
            bigram_counts[(prev, nxt)] += 1
            prev_counts[prev] += 1
    emission = defaultdict(dict)
    for (h, e), c in pair_counts.items():
        emission[h][e] = c / h_counts[h]
    transition = defaultdict(dict)
    for (prev, nxt), c in bigram_counts.items():
        transition[prev][nxt] = c / prev_counts[prev]
    return dict(emission), dict(transition)


# --- exhaustive decoding oracle -------------------------------------------

def exhaustive_decode(model, keys, top_k=10):
    """Argmax over every candidate sequence, same objective and tie-break
    as the decoder: larger score wins, equal scores pick the
    code-point-smallest sequence."""
    lattice = [candidates(model, e, top_k) for e in keys]
    assert all(lattice), "oracle needs a candidate at every position"
    best_score, best_seq = NEG_INF, None
    for combo in itertools.product(*lattice):
        seq = tuple(c.h for c in combo)
        score = 0.0
        prev = BOS
        for h, c in zip(seq, combo):
            score = score + _log(model.transition_prob(prev, h))
            score = score + _log(c.emission)
            prev = h
        score = score + _log(model.transition_prob(prev, EOS))
        if best_seq is None or score > best_score or (score == best_score and seq < best_seq):
            best_score, best_seq = score, seq
    return best_seq, best_score


# --- random model construction --------------------------------------------

def _normalized_row(rng, targets, discrete):
    if discrete:
        weights = [rng.choice((1, 1, 2, 4)) for _ in targets]
    else:
        weights = [rng.uniform(0.05, 1.0) for _ in targets]
    total = sum(weights)
    return {t: w / total for t, w in zip(targets, weights)}


def build_random_model(rng: random.Random, n_h=5, n_e=6, discrete=False) -> TransliterationModel:
    """A valid unsmoothed model with random tables.

    discrete=True draws row weights from a tiny set so score ties are
    frequent and the tie-break actually gets exercised.
    """
    h_syms = [f"h{i}" for i in range(n_h)]
    e_syms = [f"e{i}" for i in range(n_e)]

    support = {h: {rng.choice(e_syms)} for h in h_syms}
    for e in e_syms:
        for h in rng.sample(h_syms, rng.randint(1, n_h)):
            support[h].add(e)
    emission = {h: _normalized_row(rng, sorted(es), discrete) for h, es in support.items()}

    transition = {}
    for prev in [BOS] + h_syms:
        pool = h_syms + [EOS] if prev != BOS else list(h_syms)
        targets = sorted(rng.sample(pool, rng.randint(1, len(pool))))
        transition[prev] = _normalized_row(rng, targets, discrete)

    model = TransliterationModel(
        emission=emission,
        transition=transition,
        emission_floor={h: 0.0 for h in emission},
        transition_floor={p: 0.0 for p in transition},
        e_vocab=frozenset(e_syms),
        h_vocab=frozenset(h_syms),
        smoothing_k=0.0,
    )
    model.validate()
    return model


def random_aligned_corpus(rng: random.Random, max_pairs=100):
    """Random per-entry aligned pair lists over small synthetic vocabularies."""
    from ne_translit.alignment import AlignedPair

    e_syms = [f"e{i}" for i in range(rng.randint(2, 8))]
    h_syms = [f"h{i}" for i in range(rng.randint(2, 8))]
    corpus = []
    budget = rng.randint(1, max_pairs)
    while budget > 0:
        length = rng.randint(1, min(6, budget))
        budget -= length
        corpus.append(
            [AlignedPair(rng.choice(e_syms), rng.choice(h_syms)) for _ in range(length)]
        )
    return corpus


# --- memorization corpus ---------------------------------------------------

# Consonant(+consonant)-vowel units; every English unit maps to exactly one
# Hindi akshara, so a model trained on names built from them is unambiguous.
CV_UNITS = [
    ("ra", "रा"), ("dhi", "धि"), ("ka", "का"), ("ma", "मा"), ("ta", "ता"),
    ("pa", "पा"), ("sa", "सा"), ("da", "दा"), ("ga", "गा"), ("ja", "जा"),
    ("la", "ला"), ("va", "वा"), ("sha", "शा"), ("cha", "चा"), ("ki", "की"),
    ("ti", "ती"), ("ni", "नी"), ("mi", "मी"), ("ri", "री"), ("si", "सी"),
    ("bu", "बू"), ("ku", "कू"), ("ru", "रू"), ("tu", "तू"), ("pu", "पू"),
]


def make_memorization_corpus(n=50, seed=7) -> list[ParallelEntry]:
    """n distinct (English, Hindi) names concatenated from CV_UNITS,
    always including Radhika."""
    rng = random.Random(seed)
    entries = {"radhika": ParallelEntry("Radhika", "राधिका")}
    while len(entries) < n:
        picks = [rng.choice(CV_UNITS) for _ in range(rng.randint(2, 4))]
        english = "".join(e for e, _ in picks)
        if english in entries:
            continue
        hindi = "".join(h for _, h in picks)
        entries[english] = ParallelEntry(english.capitalize(), hindi)
    return list(entries.values())
