"""English-to-Hindi named-entity translation and transliteration.

Knowledge-base translation for organization and location names, HMM
phoneme transliteration for everything else, packaged as a library, an
estimator-style API, and the ``ne-translit`` command-line tool.
"""

from .alignment import (
    AlignedPair,
    AlignmentCostTable,
    ParallelEntry,
    align_monotone,
    em_train_alignment,
    load_corpus,
)
from .decoder import Candidate, Decoding, Fallback, candidates, decode_word, transliterate, viterbi
from .errors import NeTranslitError
from .estimator import HmmTransliterator, NamedEntityTranslator
from .evaluation import AccuracyReport, GoldRecord, evaluate, render_report
from .kb import EntityCategory, KBEntry, KnowledgeBase, load_kb, load_seed_kb, normalize
from .model import BOS, EOS, TransliterationModel, estimate, load_model, save_model
from .phonology import (
    CharClass,
    Phoneme,
    PhonemeSequence,
    Script,
    classify_char,
    phonify,
    phonify_devanagari,
    phonify_latin,
    structure_of,
)
from .pipeline import (
    EntityDecision,
    EntitySpan,
    PipelineConfig,
    ProcessedSentence,
    Route,
    parse_annotations,
    process_sentence,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "AlignedPair",
    "AlignmentCostTable",
    "BOS",
    "Candidate",
    "CharClass",
    "Decoding",
    "EntityCategory",
    "EntityDecision",
    "EntitySpan",
    "EOS",
    "Fallback",
    "GoldRecord",
    "HmmTransliterator",
    "KBEntry",
    "KnowledgeBase",
    "NamedEntityTranslator",
    "NeTranslitError",
    "ParallelEntry",
    "Phoneme",
    "PhonemeSequence",
    "PipelineConfig",
    "ProcessedSentence",
    "Route",
    "Script",
    "TransliterationModel",
    "align_monotone",
    "candidates",
    "classify_char",
    "decode_word",
    "em_train_alignment",
    "estimate",
    "evaluate",
    "load_corpus",
    "load_kb",
    "load_model",
    "load_seed_kb",
    "normalize",
    "parse_annotations",
    "phonify",
    "phonify_devanagari",
    "phonify_latin",
    "process_sentence",
    "render_report",
    "save_model",
    "structure_of",
    "transliterate",
    "viterbi",
]
