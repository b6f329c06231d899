"""Toolkit for building labeled Arabic context-gloss pair datasets for word
sense disambiguation: lexicon parsing, pair labeling, target-word annotation
with human review, leakage-free splitting, supervised-signal tagging, and
prediction scoring."""

__version__ = "0.1.0"
