"""Words over the alphabet {0..s-1}, their integer indices, and codes.

Word ``(x_0, ..., x_{n-1})`` has index ``sum x_i * s**(n-1-i)``, so the
index reads the word as a base-s numeral with ``x_0`` most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_WORDS = 2 ** 20


def check_size(n: int, s: int, limit: int = MAX_WORDS) -> int:
    if s < 2:
        raise ValueError(f"alphabet size must be >= 2, got {s}")
    size = s ** n
    if size > limit:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"s^n = {s}^{n} = {size} words exceeds the budget of {limit}")
    return size


def word_index(word, s: int) -> int:
    idx = 0
    for x in word:
        idx = idx * s + x
    return idx


def index_word(idx: int, n: int, s: int) -> tuple:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        idx, out[i] = divmod(idx, s)
    return tuple(out)


@lru_cache(maxsize=32)
def digit_table(n: int, s: int) -> np.ndarray:
    """Read-only (s^n, n) array whose row k is the word with index k."""
    size = check_size(n, s)
    idx = np.arange(size, dtype=np.int64)
    out = np.empty((size, n), dtype=np.int16)
    for i in range(n - 1, -1, -1):
        out[:, i] = idx % s
        idx //= s
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def place_values(n: int, s: int) -> np.ndarray:
    return np.array([s ** (n - 1 - i) for i in range(n)], dtype=np.int64)


def neighbor_keys(digits: np.ndarray, cols, s: int) -> np.ndarray:
    """Row-major index of each word's letters at ``cols`` (a lookup-table row)."""
    key = np.zeros(digits.shape[0], dtype=np.int64)
    for c in cols:
        key = key * s + digits[:, c]
    return key


def format_word(word, s: int):
    """Digit string for s <= 10, otherwise a list of ints."""
    if s <= 10:
        return "".join(str(x) for x in word)
    return list(word)


def parse_word(text, s: int) -> tuple:
    if isinstance(text, str):
        if s > 10:
            raise ValueError("digit-string words need s <= 10")
        word = tuple(int(ch) for ch in text)
    else:
        word = tuple(int(x) for x in text)
    if any(not 0 <= x < s for x in word):
        raise ValueError(f"word {text!r} has a letter outside 0..{s - 1}")
    return word


@dataclass(frozen=True)
class Code:
    """A set of words of common length n over an alphabet of size s."""

    words: frozenset
    n: int
    s: int

    def __post_init__(self):
        words = frozenset(tuple(int(x) for x in w) for w in self.words)
        for w in words:
            if len(w) != self.n:
                raise ValueError(f"word {w} does not have length {self.n}")
            if any(not 0 <= x < self.s for x in w):
                raise ValueError(f"word {w} has a letter outside 0..{self.s - 1}")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, strings, s: int = 2) -> "Code":
        words = [parse_word(t, s) for t in strings]
        n = len(words[0]) if words else 0
        return cls(frozenset(words), n, s)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words))

    def __contains__(self, word):
        return tuple(word) in self.words

    def indices(self) -> list:
        return sorted(word_index(w, self.s) for w in self.words)

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s, "words": [format_word(w, self.s) for w in self]}

    @classmethod
    def from_json(cls, data: dict) -> "Code":
        s = int(data["s"])
        return cls(frozenset(parse_word(w, s) for w in data["words"]), int(data["n"]), s)
