"""Automata with data storage: recognition, approximation, coarse-to-fine search."""

from ._core import (
    Automaton,
    approximate,
    bundled_names,
    determinize_bounded,
    determinize_powerset,
    is_run,
    language_upto,
    load,
    load_bundled,
    loads,
    nbest,
    parse_word,
    predicate_free,
    recognize,
    runs,
    save,
    to_fsa,
    weight,
)

__all__ = [
    "Automaton",
    "approximate",
    "bundled_names",
    "determinize_bounded",
    "determinize_powerset",
    "is_run",
    "language_upto",
    "load",
    "load_bundled",
    "loads",
    "nbest",
    "parse_word",
    "predicate_free",
    "recognize",
    "runs",
    "save",
    "to_fsa",
    "weight",
]
