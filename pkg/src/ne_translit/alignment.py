"""Monotone phoneme alignment of parallel named entities.

Transliteration preserves order, so alignment is a dynamic program over
three moves: match one English phoneme with one Hindi phoneme, skip an
English phoneme, or skip a Hindi phoneme.  Match weights come from a
cost table trained by expectation-maximization over the corpus; skips
carry a fixed penalty so the table stays stable on tiny corpora.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusError, NeTranslitError
from .kb import EntityCategory
from .phonology import PhonemeSequence, phonify_devanagari, phonify_latin

# Probability charged for every skip move; not re-estimated by EM.
SKIP_PENALTY = 1e-4


@dataclass(frozen=True)
class ParallelEntry:
    """One training record: an English entity and its Hindi counterpart."""

    english: str
    hindi: str
    category: EntityCategory | None = None

    def __post_init__(self):
        if not self.english or not self.hindi:
            raise ValueError("both sides of a parallel entry must be non-empty")


@dataclass(frozen=True)
class AlignedPair:
    """One matched (English phoneme, Hindi phoneme) correspondence."""

    e: str
    h: str

    def __post_init__(self):
        if not self.e or not self.h:
            raise ValueError("aligned phonemes must be non-empty")


@dataclass
class AlignmentCostTable:
    """Match probabilities P(hindi phoneme | english phoneme).

    Rows are normalized per English phoneme; pairs absent from the table
    fall back to `default`.
    """

    probs: dict[str, dict[str, float]] = field(default_factory=dict)
    default: float = 1e-9

    @classmethod
    def uniform(cls) -> "AlignmentCostTable":
        """A table that scores every match the same (and above any skip)."""
        return cls({}, default=1.0)

    def prob(self, e: str, h: str) -> float:
        row = self.probs.get(e)
        if row is None:
            return self.default
        return row.get(h, self.default)

    def validate(self, tolerance: float = 1e-9) -> None:
        for e, row in self.probs.items():
            if not row:
                raise ValueError(f"empty cost row for {e!r}")
            total = sum(row.values())
            if abs(total - 1.0) > tolerance:
                raise ValueError(f"cost row for {e!r} sums to {total!r}")
            for h, p in row.items():
                if not 0.0 < p <= 1.0:
                    raise ValueError(f"cost for ({e!r}, {h!r}) out of range: {p!r}")


def _keys(seq) -> list[str]:
    if isinstance(seq, PhonemeSequence):
        return seq.keys()
    return [str(s) for s in seq]


_MATCH, _SKIP_E, _SKIP_H = 1, 2, 3


def align_monotone(e_seq, h_seq, costs: AlignmentCostTable) -> list[AlignedPair]:
    """Best monotone alignment of two phoneme sequences; match pairs only.

    Maximizes the product of match probabilities with SKIP_PENALTY per
    skipped phoneme.  Ties prefer match over skip-English over skip-Hindi,
    which also makes equal-length inputs under a uniform table align
    positionally.
    """
    e = _keys(e_seq)
    h = _keys(h_seq)
    m, n = len(e), len(h)
    neg = float("-inf")
    log_skip = math.log(SKIP_PENALTY)

    score = [[neg] * (n + 1) for _ in range(m + 1)]
    move = [[0] * (n + 1) for _ in range(m + 1)]
    score[0][0] = 0.0
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            best, mv = neg, 0
            if i > 0 and j > 0:
                p = costs.prob(e[i - 1], h[j - 1])
                s = score[i - 1][j - 1] + (math.log(p) if p > 0.0 else neg)
                if s > best:
                    best, mv = s, _MATCH
            if i > 0:
                s = score[i - 1][j] + log_skip
                if s > best:
                    best, mv = s, _SKIP_E
            if j > 0:
                s = score[i][j - 1] + log_skip
                if s > best:
                    best, mv = s, _SKIP_H
            score[i][j], move[i][j] = best, mv

    pairs: list[AlignedPair] = []
    i, j = m, n
    while i > 0 or j > 0:
        mv = move[i][j]
        if mv == _MATCH:
            pairs.append(AlignedPair(e[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif mv == _SKIP_E:
            i -= 1
        else:
            j -= 1
    pairs.reverse()
    return pairs


def _forward_backward(e: list[str], h: list[str], costs: AlignmentCostTable):
    """Total probability over all monotone alignments plus match posteriors."""
    m, n = len(e), len(h)
    eps = SKIP_PENALTY
    a = [[0.0] * (n + 1) for _ in range(m + 1)]
    a[0][0] = 1.0
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            v = 0.0
            if i > 0 and j > 0:
                v += a[i - 1][j - 1] * costs.prob(e[i - 1], h[j - 1])
            if i > 0:
                v += a[i - 1][j] * eps
            if j > 0:
                v += a[i][j - 1] * eps
            a[i][j] = v
    b = [[0.0] * (n + 1) for _ in range(m + 1)]
    b[m][n] = 1.0
    for i in range(m, -1, -1):
        for j in range(n, -1, -1):
            if i == m and j == n:
                continue
            v = 0.0
            if i < m and j < n:
                v += costs.prob(e[i], h[j]) * b[i + 1][j + 1]
            if i < m:
                v += eps * b[i + 1][j]
            if j < n:
                v += eps * b[i][j + 1]
            b[i][j] = v
    z = a[m][n]
    posteriors: list[tuple[str, str, float]] = []
    if z > 0.0:
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                w = a[i - 1][j - 1] * costs.prob(e[i - 1], h[j - 1]) * b[i][j]
                if w > 0.0:
                    posteriors.append((e[i - 1], h[j - 1], w / z))
    return z, posteriors


def entry_keys(entry: ParallelEntry) -> tuple[list[str], list[str]]:
    """Phonify both sides of an entry, token by token, into model keys."""
    e_keys: list[str] = []
    for token in entry.english.split():
        e_keys.extend(phonify_latin(token).keys())
    h_keys: list[str] = []
    for token in entry.hindi.split():
        h_keys.extend(phonify_devanagari(token).keys())
    return e_keys, h_keys


def _phonify_corpus(corpus) -> list[tuple[list[str], list[str]]]:
    prepared = []
    for entry in corpus:
        try:
            e_keys, h_keys = entry_keys(entry)
        except NeTranslitError:
            continue  # skipped entries are reported by build_aligned_corpus
        if e_keys and h_keys:
            prepared.append((e_keys, h_keys))
    return prepared


def corpus_log_likelihood(corpus, costs: AlignmentCostTable) -> float:
    """Sum of log total alignment probability over all usable entries."""
    total = 0.0
    for e_keys, h_keys in _phonify_corpus(corpus):
        z, _ = _forward_backward(e_keys, h_keys, costs)
        total += math.log(z) if z > 0.0 else float("-inf")
    return total


def em_train_alignment(corpus, iterations: int = 10) -> AlignmentCostTable:
    """Estimate match costs by EM over all monotone alignments.

    Starts uniform, then repeatedly collects posterior (soft) match counts
    for every entry and renormalizes them per English phoneme.  Entries
    that fail phonification are skipped, never fatal.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    prepared = _phonify_corpus(corpus)
    if not prepared:
        raise ValueError("no usable entries in the corpus")

    h_vocab = sorted({h for _, hk in prepared for h in hk})
    e_vocab = sorted({e for ek, _ in prepared for e in ek})
    u = 1.0 / len(h_vocab)
    costs = AlignmentCostTable({e: {h: u for h in h_vocab} for e in e_vocab})

    for _ in range(iterations):
        soft: dict[str, dict[str, float]] = defaultdict(lambda: defaultdict(float))
        for e_keys, h_keys in prepared:
            _, posteriors = _forward_backward(e_keys, h_keys, costs)
            for e, h, w in posteriors:
                soft[e][h] += w
        probs = {}
        for e, row in soft.items():
            total = sum(row.values())
            probs[e] = {h: c / total for h, c in sorted(row.items())}
        costs = AlignmentCostTable(probs)
    return costs


def build_aligned_corpus(
    corpus, costs: AlignmentCostTable
) -> tuple[list[list[AlignedPair]], list[str]]:
    """Hard-align every entry with the trained costs.

    Returns the per-entry aligned pair lists plus a record for each entry
    that had to be skipped (phonification failure or an empty side).
    """
    aligned: list[list[AlignedPair]] = []
    skipped: list[str] = []
    for entry in corpus:
        try:
            e_keys, h_keys = entry_keys(entry)
        except NeTranslitError as exc:
            skipped.append(f"{entry.english}\t{entry.hindi}: {exc}")
            continue
        if not e_keys or not h_keys:
            skipped.append(f"{entry.english}\t{entry.hindi}: no phonemes on one side")
            continue
        aligned.append(align_monotone(e_keys, h_keys, costs))
    return aligned, skipped


def aligned_pair_counts(aligned_corpus) -> Counter:
    """Counts of match pairs, for the inspection dump."""
    counts: Counter = Counter()
    for pairs in aligned_corpus:
        for p in pairs:
            counts[(p.e, p.h)] += 1
    return counts


def load_corpus(path) -> tuple[list[ParallelEntry], list[str]]:
    """Read a parallel corpus file.

    One entry per line, english<TAB>hindi with an optional third category
    column; '#' starts a comment.  Malformed lines become warnings, not
    errors, so one bad line cannot ruin a training run.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc
    entries: list[ParallelEntry] = []
    warnings: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) not in (2, 3) or not cols[0].strip() or not cols[1].strip():
            warnings.append(f"line {lineno}: expected english<TAB>hindi[<TAB>category]")
            continue
        category = None
        if len(cols) == 3:
            try:
                category = EntityCategory.parse(cols[2].strip())
            except ValueError:
                warnings.append(f"line {lineno}: unknown category {cols[2].strip()!r}")
                continue
        entries.append(ParallelEntry(cols[0].strip(), cols[1].strip(), category))
    return entries, warnings
