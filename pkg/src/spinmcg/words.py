"""Dyer-Lashof words: admissibility, excess, Adem rewriting, generator sets.

A word I = (i_1, ..., i_k) of positive integers is admissible when
i_j <= 2 i_{j+1} for consecutive entries.  The excess e(I) = i_1 - (i_2 +
... + i_k) controls which applications Q^I x are polynomial generators:
the generator sets used here require e(I) strictly greater than the
degree of the base class.  Index 0 never occurs in a word; degree-zero
components are handled by the algebra layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterator, List, Tuple

from .spaces import (
    check_space,
    class_degree,
    class_prefix,
    indices_up_to,
)

Word = Tuple[int, ...]


def excess(word: Word) -> float:
    """i_1 - (i_2 + ... + i_k); +inf for the empty word."""
    if not word:
        return math.inf
    return word[0] - sum(word[1:])


def is_admissible(word: Word) -> bool:
    if any(i <= 0 for i in word):
        return False
    return all(a <= 2 * b for a, b in zip(word, word[1:]))


def word_degree(word: Word) -> int:
    return sum(word)


@lru_cache(maxsize=None)
def adem_word(r: int, s: int) -> FrozenSet[Word]:
    """Rewrite the inadmissible pair Q^r Q^s (r > 2s) as admissible pairs.

    Q^r Q^s = sum_i C(i-s-1, 2i-r) Q^(r+s-i) Q^i over F2.
    """
    if r <= 2 * s:
        raise ValueError("pair already admissible")
    out = set()
    for i in range((r + 1) // 2, r - s):
        if _binom2(i - s - 1, 2 * i - r):
            pair = (r + s - i, i)
            out.symmetric_difference_update({pair})
    return frozenset(out)


def _binom2(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & (n - k)) == 0 else 0


@lru_cache(maxsize=None)
def adem_normalize_word(word: Word) -> FrozenSet[Word]:
    """Normal form of a word as an F2 set of admissible words.

    Operates purely at the operation level (no instability); innermost
    inadmissible pairs are rewritten first.
    """
    if is_admissible(word):
        return frozenset({word})
    # rightmost (innermost) inadmissible pair
    pos = max(j for j in range(len(word) - 1) if word[j] > 2 * word[j + 1])
    head, (r, s), tail = word[:pos], word[pos:pos + 2], word[pos + 2:]
    result: set = set()
    for pair in adem_word(r, s):
        for w in adem_normalize_word(head + pair + tail):
            result.symmetric_difference_update({w})
    return frozenset(result)


@dataclass(frozen=True, order=True)
class QGenerator:
    """An admissible application Q^I x with strict excess over the base."""

    sort_key: Tuple[int, int, Word]
    word: Word
    index: int
    space: str

    @property
    def degree(self) -> int:
        return self.sort_key[0]

    def __str__(self) -> str:
        ops = " ".join(f"Q^{i}" for i in self.word)
        base = f"{class_prefix(self.space)}_{self.index}"
        return f"{ops} {base}" if ops else base


def make_generator(space: str, word: Word, index: int) -> QGenerator:
    degree = class_degree(space, index) + word_degree(word)
    return QGenerator((degree, index, word), word, index, space)


def is_generator(space: str, word: Word, index: int) -> bool:
    return is_admissible(word) and excess(word) > class_degree(space, index)


def _admissible_words_with_budget(budget: int) -> Iterator[Word]:
    """All admissible nonempty words of total degree <= budget."""
    # grow words from the right; prepending i_0 <= 2*i_1 keeps admissibility
    stack: List[Word] = [(i,) for i in range(1, budget + 1)]
    while stack:
        word = stack.pop()
        yield word
        used = word_degree(word)
        for i in range(1, min(2 * word[0], budget - used) + 1):
            stack.append((i,) + word)


def generator_set(space: str, max_degree: int, *, positive_only: bool = False) -> List[QGenerator]:
    """All Q^I x of total degree <= max_degree with e(I) > deg(x).

    Deterministic order: by degree, then base index, then word.  With
    positive_only the degree-zero class itself is dropped (its Q-words
    stay).
    """
    check_space(space)
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = []
    for index in indices_up_to(space, max_degree):
        base_deg = class_degree(space, index)
        if base_deg == 0 and positive_only:
            pass
        else:
            out.append(make_generator(space, (), index))
        budget = max_degree - base_deg
        for word in _admissible_words_with_budget(budget):
            if excess(word) > base_deg:
                out.append(make_generator(space, word, index))
    out.sort()
    return out


def generator_counts(space: str, max_degree: int, *, positive_only: bool = False) -> Dict[int, int]:
    counts: Dict[int, int] = {d: 0 for d in range(max_degree + 1)}
    for g in generator_set(space, max_degree, positive_only=positive_only):
        counts[g.degree] += 1
    return counts
