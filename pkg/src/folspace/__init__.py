"""First-order logic as a linear space over Hintikka constituents."""

from .logic import Vocabulary, parse_formula, parse_sentence, quantifier_rank, to_text

__version__ = "0.1.0"

__all__ = ["Vocabulary", "parse_formula", "parse_sentence", "quantifier_rank", "to_text", "__version__"]
