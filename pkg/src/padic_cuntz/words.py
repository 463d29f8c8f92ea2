"""Multiindex words over the letters {0, …, p−1}.

A word I = i₀…i_{k−1} is a plain tuple of ints.  The first letter i₀ is
the earliest-applied creator, so the creation monomial for I is
A†_{i_{k−1}}···A†_{i₀} (last letter outermost).  The same tuples address
p-adic disks through the two digit-order conventions in
``stepfunctions.word_to_center``.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .errors import InvalidDigitError

Word = tuple[int, ...]


def validate_word(word, p: int) -> Word:
    w = tuple(word)
    for d in w:
        if not isinstance(d, int) or not 0 <= d < p:
            raise InvalidDigitError(f"digit {d!r} out of range [0, {p})")
    return w


def parse_word(text: str, p: int) -> Word:
    """Parse concatenated digits ('012' → (0,1,2)); empty string is Ω's word."""
    if not text:
        return ()
    if not text.isdigit():
        raise InvalidDigitError(f"word {text!r} must be decimal digits")
    return validate_word((int(ch) for ch in text), p)


def word_str(word: Word) -> str:
    return "".join(str(d) for d in word)


def words_of_length(p: int, k: int) -> Iterator[Word]:
    """All words of length k, lexicographic."""
    return product(range(p), repeat=k)


def words_up_to(p: int, n: int) -> Iterator[Word]:
    """All words of length ≤ n, shortest first, lexicographic within length."""
    for k in range(n + 1):
        yield from words_of_length(p, k)


def count_words_up_to(p: int, n: int) -> int:
    return sum(p ** k for k in range(n + 1))
