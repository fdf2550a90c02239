"""Primitive subshifts of finite type and their block combinatorics.

A subshift of finite type (SFT) is the space of one-sided symbol
sequences over a finite alphabet whose adjacent pairs are allowed by a
0/1 transition matrix; the dynamics is the left shift.  Primitivity
(some matrix power entrywise positive) is required at construction so
that every locally constant potential has a unique equilibrium state
and a simple dominant eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BlockLengthError,
    NotPrimitiveError,
    NotSquareError,
    StrandedSymbolError,
)

# A block is a finite admissible word, represented as a tuple of symbols.
Block = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Sft:
    """A primitive subshift of finite type.

    The sequence space carries the usual metric ``2**-n`` by first
    disagreement; it never enters any computation here because every
    potential is locally constant.

    Parameters
    ----------
    alphabet_size : int
        Number of symbols; symbols are ``0 .. alphabet_size - 1``.
    transitions : array-like of shape (alphabet_size, alphabet_size)
        Entry ``(i, j)`` is 1 iff symbol ``j`` may follow symbol ``i``.
    """

    alphabet_size: int
    transitions: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.transitions)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != self.alphabet_size:
            raise NotSquareError(
                f"transition matrix must be {self.alphabet_size}x{self.alphabet_size}, "
                f"got shape {m.shape}"
            )
        if self.alphabet_size < 1:
            raise NotSquareError("alphabet_size must be a positive integer")
        if not np.isin(m, (0, 1)).all():
            raise NotSquareError("transition matrix entries must be 0 or 1")
        m = m.astype(np.int8)
        rows = m.sum(axis=1)
        cols = m.sum(axis=0)
        if (rows == 0).any():
            raise StrandedSymbolError(f"symbol {int(np.argmin(rows))} has no successor")
        if (cols == 0).any():
            raise StrandedSymbolError(f"symbol {int(np.argmin(cols))} has no predecessor")
        if not _is_primitive(m):
            raise NotPrimitiveError(
                "no power of the transition matrix up to the Wielandt bound "
                f"({wielandt_bound(self.alphabet_size)}) is entrywise positive"
            )
        m.flags.writeable = False
        object.__setattr__(self, "transitions", m)

    def __eq__(self, other):
        if not isinstance(other, Sft):
            return NotImplemented
        return self.alphabet_size == other.alphabet_size and np.array_equal(
            self.transitions, other.transitions
        )

    def __hash__(self):
        return hash((self.alphabet_size, self.transitions.tobytes()))

    def is_edge(self, i: int, j: int) -> bool:
        """True iff symbol ``j`` may follow symbol ``i``."""
        return bool(self.transitions[i, j])


def wielandt_bound(n: int) -> int:
    """Sharp exponent bound: an n x n primitive matrix has a positive power
    of exponent at most (n-1)^2 + 1."""
    return (n - 1) ** 2 + 1


def _is_primitive(m: np.ndarray) -> bool:
    # A is primitive iff A**w is positive for the Wielandt exponent w; repeated
    # squaring reaches an exponent >= w in O(log w) boolean matrix products.
    bound = wielandt_bound(m.shape[0])
    power = (m > 0).astype(np.int32)
    exponent = 1
    while exponent < bound:
        if power.all():
            return True
        power = ((power @ power) > 0).astype(np.int32)
        exponent *= 2
    return bool(power.all())


def build_sft(alphabet_size: int, transitions) -> Sft:
    """Validate and build a primitive SFT from a 0/1 transition matrix."""
    return Sft(alphabet_size, transitions)


def full_shift(alphabet_size: int) -> Sft:
    """The full shift on ``alphabet_size`` symbols (all transitions allowed)."""
    return Sft(alphabet_size, np.ones((alphabet_size, alphabet_size), dtype=np.int8))


def golden_mean_shift() -> Sft:
    """The golden-mean shift: two symbols, word ``11`` forbidden."""
    return Sft(2, [[1, 1], [1, 0]])


def is_admissible_block(sft: Sft, word) -> bool:
    """True iff every adjacent pair of ``word`` is an allowed transition."""
    word = tuple(word)
    if len(word) == 0:
        return False
    if any(s < 0 or s >= sft.alphabet_size for s in word):
        return False
    return all(sft.is_edge(word[i], word[i + 1]) for i in range(len(word) - 1))


def admissible_blocks(sft: Sft, k: int) -> list[Block]:
    """All admissible words of length ``k`` in lexicographic order."""
    if k < 1:
        raise BlockLengthError(f"block length must be >= 1, got {k}")
    blocks: list[Block] = [(s,) for s in range(sft.alphabet_size)]
    for _ in range(k - 1):
        blocks = [
            b + (s,)
            for b in blocks
            for s in range(sft.alphabet_size)
            if sft.is_edge(b[-1], s)
        ]
    return blocks


def topological_entropy(sft: Sft) -> float:
    """Topological entropy in nats: log of the Perron eigenvalue of the
    transition matrix."""
    from ._perron import log_perron_value

    logw = np.where(sft.transitions > 0, 0.0, -np.inf)
    return log_perron_value(logw)


def recode_to_edge_shift(sft: Sft, k: int) -> tuple[Sft, dict[Block, int]]:
    """Higher-block presentation on admissible ``k``-blocks.

    The recoded SFT has one symbol per admissible k-block, with a
    transition from block ``b`` to block ``c`` iff they overlap in k-1
    symbols and the joined (k+1)-word is admissible.  A memory-(k+1)
    potential on the original shift becomes edge-indexed (memory 2) on
    the recoding, and topological entropy is preserved.

    Returns the recoded SFT together with the block -> symbol index map.
    """
    if k < 1:
        raise BlockLengthError(f"block length must be >= 1, got {k}")
    blocks = admissible_blocks(sft, k)
    index = {b: i for i, b in enumerate(blocks)}
    n = len(blocks)
    m = np.zeros((n, n), dtype=np.int8)
    for b, i in index.items():
        for s in range(sft.alphabet_size):
            if not sft.is_edge(b[-1], s):
                continue
            c = b[1:] + (s,)
            j = index.get(c)
            if j is not None:
                m[i, j] = 1
    return Sft(n, m), index
