"""Square-free palindromes in arithmetic progressions: counting and lemma checks."""

__version__ = "0.1.0"
