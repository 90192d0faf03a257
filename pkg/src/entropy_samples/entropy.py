"""
Shannon and N-gram entropy of model distributions and observed sequences.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, DomainError

_BASES = {"2": 2.0, "e": math.e, "10": 10.0}


def log_base(base) -> float:
    """Resolve a logarithm base given as 2, 10, math.e or the strings '2', 'e', '10'."""
    key = str(base).strip()
    if key in _BASES:
        return _BASES[key]
    try:
        value = float(base)
    except (TypeError, ValueError):
        value = None
    for b in _BASES.values():
        if value == b:
            return b
    raise DomainError(f"logarithm base must be one of 2, e, 10; got {base!r}")


@dataclass(frozen=True)
class SymbolSequence:
    symbols: np.ndarray
    alphabet_size: int

    def __post_init__(self):
        symbols = np.asarray(self.symbols)
        if symbols.ndim != 1:
            raise DataError("symbol sequence must be one-dimensional")
        if symbols.size and not np.issubdtype(symbols.dtype, np.integer):
            raise DataError("symbols must be integer ids")
        symbols = symbols.astype(np.int64, copy=True)
        if self.alphabet_size < 1:
            raise DomainError("alphabet size must be at least 1")
        bad = (symbols < 0) | (symbols >= self.alphabet_size)
        if bad.any():
            i = int(np.argmax(bad))
            raise DataError(f"symbol {symbols[i]} at position {i} outside "
                            f"alphabet of size {self.alphabet_size}")
        symbols.setflags(write=False)
        object.__setattr__(self, "symbols", symbols)

    def __len__(self):
        return int(self.symbols.size)


@dataclass(frozen=True)
class NgramTable:
    """Overlapping N-gram counts.

    Keys are tuples of symbol ids; blocks have length ``order - 1`` (the
    empty tuple for ``order == 1``) and joint keys have length ``order``.
    """

    order: int
    block_counts: dict
    joint_counts: dict
    total_ngrams: int


def shannon_entropy(probs, base=2) -> float:
    b = log_base(base)
    p = np.asarray(probs, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("probabilities must be a nonempty 1-D vector")
    if np.any(p < 0):
        raise DomainError("probabilities must be nonnegative")
    if abs(p.sum() - 1.0) > 1e-9:
        raise DomainError(f"probabilities sum to {p.sum()!r}, not 1")
    nz = p[p > 0]
    h = -float(np.sum(nz * np.log(nz))) / math.log(b)
    # clamp the -0.0 a deterministic source produces
    return max(h, 0.0)


def empirical_distribution(seq: SymbolSequence):
    """Relative frequencies over the declared alphabet, with the raw counts."""
    if len(seq) == 0:
        raise DomainError("cannot estimate probabilities from an empty sequence")
    counts = np.bincount(seq.symbols, minlength=seq.alphabet_size)
    return counts / len(seq), counts


def _count_windows(symbols, order, alphabet_size):
    """Unique length-``order`` windows and their counts, as (rows, counts)."""
    if order == 1:
        counts = np.bincount(symbols, minlength=alphabet_size)
        seen = np.flatnonzero(counts)
        return seen[:, None], counts[seen]
    windows = np.lib.stride_tricks.sliding_window_view(symbols, order)
    if order * math.log2(max(alphabet_size, 2)) < 62:
        weights = alphabet_size ** np.arange(order - 1, -1, -1, dtype=np.int64)
        codes, counts = np.unique(windows @ weights, return_counts=True)
        rows = (codes[:, None] // weights) % alphabet_size
        return rows, counts
    return np.unique(windows, axis=0, return_counts=True)


def build_ngram_table(seq: SymbolSequence, N: int) -> NgramTable:
    if N < 1:
        raise DomainError(f"N-gram order {N} must be at least 1")
    if len(seq) < N:
        raise DomainError(f"sequence of length {len(seq)} is shorter than N={N}")
    rows, counts = _count_windows(seq.symbols, N, seq.alphabet_size)
    joint, blocks = {}, {}
    for row, c in zip(rows.tolist(), counts.tolist()):
        key = tuple(row)
        joint[key] = c
        blocks[key[:-1]] = blocks.get(key[:-1], 0) + c
    return NgramTable(order=N, block_counts=blocks, joint_counts=joint,
                      total_ngrams=len(seq) - N + 1)


def ngram_entropy(table: NgramTable, base=2) -> float:
    """Conditional entropy of a symbol given its preceding N-1 symbols.

    -sum p(b, x) log p(x | b) with p(x | b) = count(b, x) / count(b).
    """
    b = log_base(base)
    if table.total_ngrams < 1:
        raise DomainError("N-gram table is empty")
    h = 0.0
    for key, c in table.joint_counts.items():
        h -= c * math.log(c / table.block_counts[key[:-1]])
    return max(h / (table.total_ngrams * math.log(b)), 0.0)


def plugin_entropy(seq: SymbolSequence, N: int = 1, base=2) -> float:
    return ngram_entropy(build_ngram_table(seq, N), base)
