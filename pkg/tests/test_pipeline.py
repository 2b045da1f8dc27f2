import random

import pytest

from ne_translit.decoder import Fallback, UNK_OUTPUT
from ne_translit.errors import AnnotationError, UnseenPhonemeError
from ne_translit.kb import EntityCategory, KBEntry, KnowledgeBase, load_seed_kb
from ne_translit.pipeline import (
    EntityDecision,
    EntitySpan,
    PipelineConfig,
    Route,
    format_inline,
    parse_annotations,
    process_sentence,
)

INDIA_LINE = "[[India|LOC]] is a great country."


def test_parse_inline_india():
    sentence, spans = parse_annotations(INDIA_LINE, "inline")
    assert sentence == "India is a great country."
    assert spans == [EntitySpan(0, 5, "India", EntityCategory.LOCATION)]


def test_parse_inline_no_markers():
    sentence, spans = parse_annotations("Nothing to see here.", "inline")
    assert sentence == "Nothing to see here."
    assert spans == []


def test_parse_inline_two_spans_offsets():
    sentence, spans = parse_annotations("[[A|PER]] met [[B|PER]]", "inline")
    assert sentence == "A met B"
    assert spans == [
        EntitySpan(0, 1, "A", EntityCategory.PERSON),
        EntitySpan(6, 7, "B", EntityCategory.PERSON),
    ]


@pytest.mark.parametrize(
    "line",
    [
        "[[India|LOC is great",  # unclosed
        "stray ]] marker",
        "[[India]] unmarked",  # missing category
        "[[India|CITY]] bad category",
        "[[a [[b|PER]]|ORG]]",  # nested
    ],
)
def test_parse_inline_rejects_malformed(line):
    with pytest.raises(AnnotationError):
        parse_annotations(line, "inline")


def test_inline_round_trip():
    for line in (INDIA_LINE, "[[A|PER]] met [[B|PER]]", "plain text"):
        sentence, spans = parse_annotations(line, "inline")
        assert format_inline(sentence, spans) == line


def test_parse_columnar():
    line = "India is a great country.\t0,5,LOC"
    sentence, spans = parse_annotations(line, "columnar")
    assert sentence == "India is a great country."
    assert spans == [EntitySpan(0, 5, "India", EntityCategory.LOCATION)]


@pytest.mark.parametrize(
    "line",
    [
        "short\t0,99,LOC",  # out of bounds
        "some text\t0,4,LOC\t2,6,ORG",  # overlap
        "some text\t5,2,LOC",  # reversed offsets
        "some text\tx,2,LOC",
        "some text\t0,4",
    ],
)
def test_parse_columnar_rejects_malformed(line):
    with pytest.raises(AnnotationError):
        parse_annotations(line, "columnar")


def test_kb_hit_route(india_model):
    kb = load_seed_kb()
    sentence, spans = parse_annotations(INDIA_LINE, "inline")
    processed = process_sentence(sentence, spans, kb, india_model)
    assert processed.substituted == "भारत is a great country."
    decision = processed.decisions[0]
    assert decision.route is Route.KB_HIT
    assert decision.output == "भारत"
    assert decision.score is None


def test_kb_miss_transliterates(india_model):
    sentence, spans = parse_annotations(INDIA_LINE, "inline")
    processed = process_sentence(sentence, spans, KnowledgeBase(), india_model)
    assert processed.substituted == "इंडिया is a great country."
    decision = processed.decisions[0]
    assert decision.route is Route.TRANSLITERATED
    assert decision.score is not None


def test_zero_spans_leaves_sentence_unchanged(india_model):
    processed = process_sentence("No entities at all.", [], load_seed_kb(), india_model)
    assert processed.substituted == "No entities at all."
    assert processed.decisions == ()


def test_person_skips_the_kb_by_default(memorization_model):
    kb = KnowledgeBase([KBEntry("radhika", "गलत", EntityCategory.PERSON)])
    sentence, spans = parse_annotations("[[Radhika|PER]] sang.", "inline")
    processed = process_sentence(sentence, spans, kb, memorization_model)
    assert processed.decisions[0].route is Route.TRANSLITERATED
    assert processed.substituted == "राधिका sang."

    extended = process_sentence(
        sentence, spans, kb, memorization_model, PipelineConfig(kb_persons=True)
    )
    assert extended.decisions[0].route is Route.KB_HIT
    assert extended.substituted == "गलत sang."


def test_multi_token_entity_joined_with_single_spaces(memorization_model):
    line = "[[Radhika   Rama|PER]] arrived."
    sentence, spans = parse_annotations(line, "inline")
    processed = process_sentence(sentence, spans, KnowledgeBase(), memorization_model)
    assert processed.substituted == "राधिका रामा arrived."


def test_fallback_route_on_unseen_phoneme(india_model):
    sentence, spans = parse_annotations("[[Zanzibar|LOC]] calls.", "inline")
    with pytest.raises(UnseenPhonemeError):
        process_sentence(sentence, spans, KnowledgeBase(), india_model)

    copied = process_sentence(
        sentence, spans, KnowledgeBase(), india_model, PipelineConfig(fallback=Fallback.COPY_SOURCE)
    )
    assert copied.substituted == "Zanzibar calls."
    assert copied.decisions[0].route is Route.FALLBACK
    assert copied.decisions[0].score is None

    marked = process_sentence(
        sentence, spans, KnowledgeBase(), india_model, PipelineConfig(fallback=Fallback.UNK_MARKER)
    )
    assert marked.substituted == f"{UNK_OUTPUT} calls."


def test_punctuation_inside_entities_is_preserved(memorization_model):
    sentence, spans = parse_annotations("[[Radhika's|PER]] book.", "inline")
    processed = process_sentence(
        sentence, spans, KnowledgeBase(), memorization_model, PipelineConfig(fallback=Fallback.COPY_SOURCE)
    )
    # the Radhika run decodes; the apostrophe is copied; the bare s run is
    # unseen by the toy model and falls back to the source
    assert processed.substituted == "राधिका's book."
    assert processed.decisions[0].route is Route.FALLBACK


def test_non_entity_text_is_byte_identical(memorization_model, memorization_corpus):
    rng = random.Random(17)
    words = [e.english for e in memorization_corpus]
    for _ in range(25):
        left = "".join(rng.choice("abcdef .,!") for _ in range(rng.randint(0, 10)))
        right = "".join(rng.choice("xyz .,?") for _ in range(rng.randint(0, 10)))
        entity = rng.choice(words)
        sentence = f"{left}{entity}{right}"
        spans = [EntitySpan(len(left), len(left) + len(entity), entity, EntityCategory.PERSON)]
        processed = process_sentence(sentence, spans, None, memorization_model)
        assert processed.substituted.startswith(left)
        assert processed.substituted.endswith(right)
        assert len(processed.decisions) == len(spans)


def test_route_is_kb_hit_iff_lookup_succeeds(memorization_model, memorization_corpus):
    kb = KnowledgeBase(
        [
            KBEntry(entry.english.casefold(), "ज्ञात", EntityCategory.ORGANIZATION)
            for entry in memorization_corpus[:10]
        ]
    )
    for entry in memorization_corpus[:20]:
        sentence = f"{entry.english} works."
        spans = [EntitySpan(0, len(entry.english), entry.english, EntityCategory.ORGANIZATION)]
        processed = process_sentence(sentence, spans, kb, memorization_model)
        decision = processed.decisions[0]
        expected_hit = kb.lookup(entry.english, EntityCategory.ORGANIZATION) is not None
        assert (decision.route is Route.KB_HIT) == expected_hit


def test_decisions_come_back_in_span_order(memorization_model):
    line = "[[Radhika|PER]] met [[Rama|PER]] and [[Kama|PER]]."
    sentence, spans = parse_annotations(line, "inline")
    processed = process_sentence(sentence, spans, None, memorization_model)
    assert [d.span for d in processed.decisions] == spans


def test_span_validation_rejects_bad_spans(india_model):
    with pytest.raises(AnnotationError):
        process_sentence(
            "abc", [EntitySpan(0, 9, "abc", EntityCategory.PERSON)], None, india_model
        )
    with pytest.raises(AnnotationError):
        process_sentence(
            "abcdef",
            [
                EntitySpan(0, 4, "abcd", EntityCategory.PERSON),
                EntitySpan(2, 6, "cdef", EntityCategory.PERSON),
            ],
            None,
            india_model,
        )
    with pytest.raises(AnnotationError):
        process_sentence(
            "abcdef", [EntitySpan(0, 3, "xxx", EntityCategory.PERSON)], None, india_model
        )


def test_decision_score_invariants():
    span = EntitySpan(0, 1, "a", EntityCategory.PERSON)
    with pytest.raises(ValueError):
        EntityDecision(span, Route.KB_HIT, "x", score=1.0)
    with pytest.raises(ValueError):
        EntityDecision(span, Route.TRANSLITERATED, "x", score=None)
