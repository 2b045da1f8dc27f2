"""Scoring of system outputs against gold entity translations.

An output counts as correct when it equals the gold Hindi after the same
normalization the knowledge base uses.  Accuracies are truncated (not
rounded) to five decimals, and the aggregate row is recomputed from the
summed counts rather than averaging per-category accuracies.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from pathlib import Path

from .errors import EvaluationError
from .kb import EntityCategory, normalize

# Display order of the per-category rows.
CATEGORY_ORDER = (EntityCategory.PERSON, EntityCategory.LOCATION, EntityCategory.ORGANIZATION)

AGGREGATE_LABEL = "All"


@dataclass(frozen=True)
class GoldRecord:
    english: str
    category: EntityCategory
    hindi: str

    def __post_init__(self):
        if not self.english or not self.hindi:
            raise ValueError("gold records need a non-empty entity and translation")


@dataclass(frozen=True)
class CategoryScore:
    total: int
    correct: int

    def __post_init__(self):
        if not 0 <= self.correct <= self.total:
            raise ValueError(f"bad counts: {self.correct}/{self.total}")

    @property
    def accuracy(self) -> float:
        """correct/total truncated to five decimals."""
        if self.total == 0:
            raise EvaluationError("cannot compute accuracy over zero records")
        return float(self.accuracy_text)

    @property
    def accuracy_text(self) -> str:
        quantized = (Decimal(self.correct) / Decimal(self.total)).quantize(
            Decimal("0.00001"), rounding=ROUND_DOWN
        )
        return f"{quantized:.5f}"


@dataclass(frozen=True)
class AccuracyReport:
    """Per-category scores in display order, plus the aggregate row."""

    categories: tuple[tuple[EntityCategory, CategoryScore], ...]
    overall: CategoryScore

    def score_for(self, category: EntityCategory) -> CategoryScore:
        for cat, score in self.categories:
            if cat is category:
                return score
        raise KeyError(category)


def evaluate(gold, system) -> AccuracyReport:
    """Score index-aligned system outputs against gold records."""
    gold = list(gold)
    system = list(system)
    if len(gold) != len(system):
        raise EvaluationError(f"{len(gold)} gold records vs {len(system)} system outputs")
    if not gold:
        raise EvaluationError("nothing to evaluate")

    totals = {cat: 0 for cat in CATEGORY_ORDER}
    corrects = {cat: 0 for cat in CATEGORY_ORDER}
    for record, output in zip(gold, system):
        totals[record.category] += 1
        if normalize(output) == normalize(record.hindi):
            corrects[record.category] += 1

    categories = tuple(
        (cat, CategoryScore(totals[cat], corrects[cat])) for cat in CATEGORY_ORDER if totals[cat]
    )
    overall = CategoryScore(sum(totals.values()), sum(corrects.values()))
    return AccuracyReport(categories, overall)


def render_report(report: AccuracyReport, format: str = "text") -> str:
    """Render as an aligned text table or as TSV; both end with a newline."""
    rows = [(cat.name.title(), score) for cat, score in report.categories]
    rows.append((AGGREGATE_LABEL, report.overall))
    if format == "tsv":
        lines = ["category\ttotal\tcorrect\taccuracy"]
        lines += [f"{name}\t{s.total}\t{s.correct}\t{s.accuracy_text}" for name, s in rows]
        return "\n".join(lines) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    header = ("Category", "Total", "Correct", "Accuracy")
    cells = [header] + [(name, str(s.total), str(s.correct), s.accuracy_text) for name, s in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(4)]
    lines = []
    for row in cells:
        left = row[0].ljust(widths[0])
        rest = "  ".join(row[i].rjust(widths[i]) for i in range(1, 4))
        lines.append(f"{left}  {rest}")
    return "\n".join(lines) + "\n"


def load_gold(path) -> list[GoldRecord]:
    """Read `english<TAB>category<TAB>gold_hindi` lines; '#' comments."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise EvaluationError(f"cannot read gold file {path}: {exc}") from exc
    records: list[GoldRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise EvaluationError(f"{path}: line {lineno}: expected english<TAB>category<TAB>hindi")
        english, cat_text, hindi = (c.strip() for c in cols)
        try:
            category = EntityCategory.parse(cat_text)
        except ValueError as exc:
            raise EvaluationError(f"{path}: line {lineno}: {exc}") from exc
        if not english or not hindi:
            raise EvaluationError(f"{path}: line {lineno}: empty entity or translation")
        records.append(GoldRecord(english, category, hindi))
    return records


def load_system(path) -> list[str]:
    """Read system outputs, one per line, index-aligned with the gold file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise EvaluationError(f"cannot read system file {path}: {exc}") from exc
    return text.splitlines()
