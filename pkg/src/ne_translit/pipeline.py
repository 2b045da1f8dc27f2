"""Sentence-level preprocessing: substitute each annotated entity.

Organizations and locations go through the knowledge base first and are
transliterated only on a miss; person names are transliterated directly.
Everything outside the annotated spans is left byte-for-byte unchanged,
so the output is the same sentence with Hindi entities dropped in place,
ready for a downstream MT system.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .decoder import Fallback, UNK_OUTPUT, viterbi
from .errors import AnnotationError, UnseenPhonemeError
from .kb import EntityCategory, KnowledgeBase
from .model import TransliterationModel
from .phonology import phonify_latin


class Route(Enum):
    KB_HIT = "KB_HIT"
    TRANSLITERATED = "TRANSLITERATED"
    FALLBACK = "FALLBACK"


@dataclass(frozen=True)
class EntitySpan:
    """A typed entity occurrence: [start, end) offsets into the sentence."""

    start: int
    end: int
    surface: str
    category: EntityCategory


@dataclass(frozen=True)
class EntityDecision:
    span: EntitySpan
    route: Route
    output: str
    score: float | None = None

    def __post_init__(self):
        if self.route is Route.TRANSLITERATED and self.score is None:
            raise ValueError("transliterated decisions must carry a score")
        if self.route is not Route.TRANSLITERATED and self.score is not None:
            raise ValueError("only transliterated decisions carry a score")


@dataclass(frozen=True)
class ProcessedSentence:
    original: str
    substituted: str
    decisions: tuple[EntityDecision, ...]


@dataclass
class PipelineConfig:
    fallback: Fallback = Fallback.ERROR
    top_k: int = 10
    kb_persons: bool = False  # extension: let person names consult the KB too


def validate_spans(sentence: str, spans) -> None:
    """Enforce span sanity: in bounds, sorted, non-overlapping, surface match."""
    prev_end = 0
    for span in spans:
        if not 0 <= span.start < span.end <= len(sentence):
            raise AnnotationError(f"span ({span.start}, {span.end}) out of bounds")
        if span.start < prev_end:
            raise AnnotationError(f"overlapping or unsorted span at offset {span.start}")
        if sentence[span.start : span.end] != span.surface:
            raise AnnotationError(
                f"span surface {span.surface!r} does not match the sentence at offset {span.start}"
            )
        prev_end = span.end


def parse_inline(line: str) -> tuple[str, list[EntitySpan]]:
    """Parse `[[surface|CAT]]` markers into a clean sentence plus spans."""
    out: list[str] = []
    spans: list[EntitySpan] = []
    i, pos = 0, 0
    while i < len(line):
        if line.startswith("[[", i):
            close = line.find("]]", i + 2)
            if close == -1:
                raise AnnotationError(f"unclosed entity marker at offset {i}")
            body = line[i + 2 : close]
            if "[[" in body:
                raise AnnotationError(f"nested entity marker inside the one at offset {i}")
            sep = body.rfind("|")
            if sep <= 0:
                raise AnnotationError(f"entity marker at offset {i} lacks a |category")
            surface, cat_text = body[:sep], body[sep + 1 :]
            try:
                category = EntityCategory.parse(cat_text)
            except ValueError as exc:
                raise AnnotationError(f"offset {i}: {exc}") from exc
            spans.append(EntitySpan(pos, pos + len(surface), surface, category))
            out.append(surface)
            pos += len(surface)
            i = close + 2
        elif line.startswith("]]", i):
            raise AnnotationError(f"unbalanced ]] at offset {i}")
        else:
            out.append(line[i])
            pos += 1
            i += 1
    return "".join(out), spans


def format_inline(sentence: str, spans) -> str:
    """Inverse of parse_inline for well-formed input."""
    validate_spans(sentence, spans)
    parts: list[str] = []
    last = 0
    for span in spans:
        parts.append(sentence[last : span.start])
        parts.append(f"[[{span.surface}|{span.category.value}]]")
        last = span.end
    parts.append(sentence[last:])
    return "".join(parts)


def parse_columnar(line: str) -> tuple[str, list[EntitySpan]]:
    """Parse `sentence<TAB>start,end,CAT...`; spans must be sorted."""
    fields = line.split("\t")
    sentence = fields[0]
    spans: list[EntitySpan] = []
    for rec in fields[1:]:
        parts = rec.split(",")
        if len(parts) != 3:
            raise AnnotationError(f"bad span record {rec!r}: expected start,end,CAT")
        try:
            start, end = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise AnnotationError(f"bad span offsets in {rec!r}") from exc
        try:
            category = EntityCategory.parse(parts[2])
        except ValueError as exc:
            raise AnnotationError(f"bad span record {rec!r}: {exc}") from exc
        if not 0 <= start < end <= len(sentence):
            raise AnnotationError(f"span ({start}, {end}) out of bounds")
        spans.append(EntitySpan(start, end, sentence[start:end], category))
    validate_spans(sentence, spans)
    return sentence, spans


def parse_annotations(line: str, format: str = "inline") -> tuple[str, list[EntitySpan]]:
    if format == "inline":
        return parse_inline(line)
    if format == "columnar":
        return parse_columnar(line)
    raise ValueError(f"unknown annotation format {format!r}")


def _transliterate_token(token, model, config):
    """Transliterate the letter runs of one token, copying everything else.

    Returns (output, summed log score, whether any run fell back).
    """
    out: list[str] = []
    score = 0.0
    fell_back = False
    i, n = 0, len(token)
    while i < n:
        if token[i].isalpha():
            j = i
            while j < n and token[j].isalpha():
                j += 1
            run = token[i:j]
            try:
                decoding = viterbi(model, phonify_latin(run), config.top_k)
                out.append("".join(decoding.hindi_sequence))
                score += decoding.score
            except UnseenPhonemeError:
                if config.fallback is Fallback.ERROR:
                    raise
                fell_back = True
                out.append(run if config.fallback is Fallback.COPY_SOURCE else UNK_OUTPUT)
            i = j
        else:
            out.append(token[i])
            i += 1
    return "".join(out), score, fell_back


def _decide(span, kb, model, config) -> EntityDecision:
    consult_kb = span.category in (EntityCategory.ORGANIZATION, EntityCategory.LOCATION) or (
        config.kb_persons and span.category is EntityCategory.PERSON
    )
    if consult_kb and kb is not None:
        hit = kb.lookup(span.surface, span.category)
        if hit is not None:
            return EntityDecision(span, Route.KB_HIT, hit)

    outputs: list[str] = []
    total = 0.0
    fell_back = False
    for token in span.surface.split():
        out, score, fb = _transliterate_token(token, model, config)
        outputs.append(out)
        total += score
        fell_back = fell_back or fb
    output = " ".join(outputs)
    if fell_back:
        return EntityDecision(span, Route.FALLBACK, output)
    return EntityDecision(span, Route.TRANSLITERATED, output, total)


def process_sentence(
    sentence: str,
    spans,
    kb: KnowledgeBase | None,
    model: TransliterationModel,
    config: PipelineConfig | None = None,
) -> ProcessedSentence:
    """Translate or transliterate every span and splice the results in.

    Characters outside the spans are preserved exactly; decisions come
    back in span order, one per span.
    """
    config = config or PipelineConfig()
    spans = list(spans)
    validate_spans(sentence, spans)
    decisions = [_decide(span, kb, model, config) for span in spans]
    substituted = sentence
    for decision in reversed(decisions):
        span = decision.span
        substituted = substituted[: span.start] + decision.output + substituted[span.end :]
    return ProcessedSentence(sentence, substituted, tuple(decisions))
