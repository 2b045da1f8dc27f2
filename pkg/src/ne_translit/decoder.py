"""Viterbi decoding of English phoneme sequences into Hindi.

The decoded sequence maximizes the full path product: the start
transition, one emission and one incoming transition per position, and
the end transition.  Per-position composite scores (emission times both
neighboring transitions) are reported alongside as diagnostics.
Scores accumulate in log domain; ties pick the code-point-smallest
Hindi sequence so output is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import UnseenPhonemeError
from .model import BOS, EOS, TransliterationModel
from .phonology import PhonemeSequence, phonify_latin


class Fallback(Enum):
    """What to do when a word contains a phoneme the model has never seen."""

    ERROR = "error"
    COPY_SOURCE = "copy"
    UNK_MARKER = "unk"


UNK_OUTPUT = "<unk>"

NEG_INF = float("-inf")


@dataclass(frozen=True)
class Candidate:
    h: str
    emission: float

    def __post_init__(self):
        if self.emission <= 0.0:
            raise ValueError("candidate emission must be positive")


@dataclass(frozen=True)
class Decoding:
    """One decoded word: Hindi phonemes (one per English phoneme), the
    total log score, and the per-position composite scores."""

    hindi_sequence: tuple[str, ...]
    score: float
    per_position: tuple[float, ...]


def candidates(model: TransliterationModel, e: str, top_k: int = 10) -> list[Candidate]:
    """Hindi phonemes observed with e, best emission first.

    Smoothing-floor values do not count as observations; an empty list
    means the English phoneme is unknown to the model.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    found = [Candidate(h, row[e]) for h, row in model.emission.items() if e in row]
    found.sort(key=lambda c: (-c.emission, c.h))
    return found[:top_k]


def _log(p: float) -> float:
    return math.log(p) if p > 0.0 else NEG_INF


def viterbi(model: TransliterationModel, e_seq, top_k: int = 10) -> Decoding:
    """Best Hindi sequence for an English phoneme sequence.

    Accepts a PhonemeSequence or an iterable of already-folded keys.
    Raises UnseenPhonemeError when some position has no candidates;
    the caller decides the fallback policy.
    """
    keys = e_seq.keys() if isinstance(e_seq, PhonemeSequence) else [str(e) for e in e_seq]
    if not keys:
        raise ValueError("cannot decode an empty phoneme sequence")

    lattice = []
    for pos, e in enumerate(keys):
        cs = candidates(model, e, top_k)
        if not cs:
            raise UnseenPhonemeError(e, pos)
        lattice.append(cs)

    # states: h -> (score, prefix); ties keep the code-point-smallest prefix
    states: dict[str, tuple[float, tuple[str, ...]]] = {}
    for c in lattice[0]:
        sc = _log(model.transition_prob(BOS, c.h)) + _log(c.emission)
        _consider(states, c.h, sc, (c.h,))
    for pos in range(1, len(keys)):
        nxt: dict[str, tuple[float, tuple[str, ...]]] = {}
        for c in lattice[pos]:
            le = _log(c.emission)
            for h_prev, (psc, pseq) in states.items():
                sc = (psc + _log(model.transition_prob(h_prev, c.h))) + le
                _consider(nxt, c.h, sc, pseq + (c.h,))
        states = nxt

    best_score, best_seq = NEG_INF, None
    for h, (sc, seq) in states.items():
        total = sc + _log(model.transition_prob(h, EOS))
        if best_seq is None or total > best_score or (total == best_score and seq < best_seq):
            best_score, best_seq = total, seq
    if best_score == NEG_INF:
        # every path has a zero-probability transition, so all sequences tie;
        # the lexicographic tie-break reduces to the smallest candidate per slot
        best_seq = tuple(min(c.h for c in cs) for cs in lattice)

    per_position = []
    for i, h in enumerate(best_seq):
        h_prev = best_seq[i - 1] if i > 0 else BOS
        h_next = best_seq[i + 1] if i + 1 < len(best_seq) else EOS
        per_position.append(model.position_score(h_prev, h, h_next, keys[i]))
    return Decoding(best_seq, best_score, tuple(per_position))


def _consider(states, h, score, seq):
    cur = states.get(h)
    if cur is None or score > cur[0] or (score == cur[0] and seq < cur[1]):
        states[h] = (score, seq)


def decode_word(model: TransliterationModel, word: str, top_k: int = 10) -> Decoding:
    """Phonify a single Latin word and decode it."""
    return viterbi(model, phonify_latin(word), top_k)


def transliterate(
    model: TransliterationModel,
    word: str,
    fallback: Fallback = Fallback.ERROR,
    top_k: int = 10,
) -> str:
    """Latin word in, Hindi string out: segment, decode, concatenate.

    The fallback policy applies only to unseen-phoneme failures; words in
    the wrong script are always an error.
    """
    seq = phonify_latin(word)
    if not seq:
        return ""
    try:
        decoding = viterbi(model, seq, top_k)
    except UnseenPhonemeError:
        if fallback is Fallback.ERROR:
            raise
        return word if fallback is Fallback.COPY_SOURCE else UNK_OUTPUT
    return "".join(decoding.hindi_sequence)
