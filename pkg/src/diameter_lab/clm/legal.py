"""Legal sequences of subsets (support-only abstraction of layer families).

Sets are subsets of the ground set ``{1..n}``.  Length means number of sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..caps import check_cap
from ..errors import InvalidComplex


@dataclass(frozen=True)
class LegalSequence:
    n: int
    sets: tuple

    def __post_init__(self):
        sets = tuple(frozenset(S) for S in self.sets)
        object.__setattr__(self, "sets", sets)
        ground = set(range(1, self.n + 1))
        for S in sets:
            if not S <= ground:
                raise InvalidComplex(f"{sorted(S)} is not a subset of 1..{self.n}")
        if not sets:
            raise InvalidComplex("a sequence needs at least one set")

    @property
    def length(self) -> int:
        return len(self.sets)

    def columns(self) -> tuple:
        """Membership pattern of every ground element, as a sorted tuple of bit tuples."""
        return _key(len(self.sets), [tuple(int(a in S) for S in self.sets)
                                      for a in range(1, self.n + 1)])


def _key(N, cols):
    return N, tuple(sorted(cols))


def is_convex(sets) -> bool:
    """``S_i & S_k <= S_j`` for all ``i < j < k``."""
    for i in range(len(sets)):
        for k in range(i + 2, len(sets)):
            common = sets[i] & sets[k]
            if common and any(not common <= sets[j] for j in range(i + 1, k)):
                return False
    return True


def _interval(col) -> bool:
    ones = [i for i, x in enumerate(col) if x]
    return not ones or ones[-1] - ones[0] + 1 == len(ones)


def _sub_intervals(col):
    """Every column that keeps a contiguous run of the ones of ``col`` (or none)."""
    ones = [i for i, x in enumerate(col) if x]
    N = len(col)
    yield (0,) * N
    for a in range(len(ones)):
        for b in range(a, len(ones)):
            yield tuple(1 if ones[a] <= i <= ones[b] else 0 for i in range(N))


class LegalChecker:
    """Recursive legality with memoization on relabeling-invariant keys.

    A sequence is determined up to relabeling by the multiset of its element
    columns, which is the memo key.  Proper subsequences are checked through
    the ``N`` one-set deletions; each of those already covers its own proper
    subsequences.
    """

    def __init__(self):
        self.memo = {}

    def legal(self, seq: LegalSequence) -> bool:
        check_cap("legal_n", seq.n, "ground set size")
        check_cap("legal_N", seq.length, "sequence length")
        return self._legal(*seq.columns())

    def _legal(self, N, cols):
        key = (N, cols)
        if key in self.memo:
            return self.memo[key]
        result = self._decide(N, cols)
        self.memo[key] = result
        return result

    def _decide(self, N, cols):
        if not cols:
            return N == 1
        if not all(_interval(c) for c in cols):
            return False
        if N > 1:
            for drop in range(N):
                sub = [c[:drop] + c[drop + 1:] for c in cols]
                if not self._legal(*_key(N - 1, sub)):
                    return False
        zero = (0,) * N
        if zero in cols:
            rest = list(cols)
            rest.remove(zero)
            if not self._legal(*_key(N, rest)):
                return False
        full = (1,) * N
        if full in cols:
            rest = list(cols)
            rest.remove(full)
            # S'_i <= S_i - a; convexity forces every new column to be an interval
            found = False
            for choice in product(*(list(_sub_intervals(c)) for c in rest)):
                if self._legal(*_key(N, list(choice))):
                    found = True
                    break
            if not found:
                return False
        return True


def legal_check(seq: LegalSequence, checker: LegalChecker | None = None) -> bool:
    return (checker or LegalChecker()).legal(seq)


def legal_double(seq: LegalSequence, i: int) -> LegalSequence:
    """Blocks ``A * m``, ``(A | B) * (i-1)m``, ``B * m`` with ``|A| = |B| = n + i``.

    ``seq`` (of length ``m`` on ``n`` elements) is assumed legal; only its
    length and ground size enter the construction.
    """
    if i < 1:
        raise ValueError("i must be at least 1")
    size = seq.n + i
    A = frozenset(range(1, size + 1))
    B = frozenset(range(size + 1, 2 * size + 1))
    m = seq.length
    sets = [A] * m + [A | B] * ((i - 1) * m) + [B] * m
    return LegalSequence(2 * size, tuple(sets))
