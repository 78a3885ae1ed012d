"""Grammar-guided genetic programming: GE, PGE, SGE and PSGE."""

from gramevo._core import (
    Grammar,
    GramevoError,
    evolve,
    map_genotype,
    parse_grammar,
    parse_grammar_file,
    update_probabilities,
)

__all__ = [
    "Grammar",
    "GramevoError",
    "evolve",
    "map_genotype",
    "parse_grammar",
    "parse_grammar_file",
    "update_probabilities",
]
