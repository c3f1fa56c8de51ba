"""Unigram tokenization for short, informal text.

The default pipeline lowercases, splits on Unicode whitespace, and trims
punctuation from the ends of each piece.  Pieces made entirely of
punctuation or symbol characters (emoticons such as ``:)`` or ``=(``) are
kept whole, since they carry sentiment.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass


@dataclass(frozen=True)
class TokenizerConfig:
    """Options for :func:`tokenize`.

    lowercase    fold the text to lowercase before splitting
    strip_punct  trim leading/trailing punctuation from each piece
                 (all-punctuation pieces are preserved intact)
    """

    lowercase: bool = True
    strip_punct: bool = True


def _is_punct(ch: str) -> bool:
    # Unicode punctuation (P*) and symbols (S*); the symbol classes keep
    # emoticons like "=)" and "<3" recognizable as punctuation runs.
    return unicodedata.category(ch)[0] in ("P", "S")


def _trim(piece: str) -> str:
    start, end = 0, len(piece)
    while start < end and _is_punct(piece[start]):
        start += 1
    while end > start and _is_punct(piece[end - 1]):
        end -= 1
    return piece[start:end]


def tokenize(text: str, config: TokenizerConfig = TokenizerConfig()) -> list[str]:
    """Split ``text`` into unigram terms.

    Deterministic; returns an empty list for text with no usable pieces.
    """
    if config.lowercase:
        text = text.lower()
    tokens = []
    for piece in text.split():
        if config.strip_punct and not all(_is_punct(ch) for ch in piece):
            piece = _trim(piece)
        if piece:
            tokens.append(piece)
    return tokens
