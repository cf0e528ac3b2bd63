"""Kendall-tau distance between two strict rankings of the same alternatives.

Rankings are sequences of alternative labels, best first. The distance is the
fraction of alternative pairs ordered oppositely by the two rankings: 0 for
identical orders, 1 for full reversal.
"""

from __future__ import annotations

from typing import Hashable, Sequence


class LengthMismatchError(ValueError):
    pass


class NotAPermutationError(ValueError):
    pass


def _positions(ranking: Sequence[Hashable]) -> dict[Hashable, int]:
    pos = {}
    for i, label in enumerate(ranking):
        if label in pos:
            raise NotAPermutationError(f"duplicate label {label!r}")
        pos[label] = i
    return pos


def _count_inversions(seq: list[int]) -> int:
    # merge sort, O(m log m)
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    inversions = _count_inversions(left) + _count_inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            inversions += len(left) - i
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return inversions


def discordant_pairs(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Number of alternative pairs ranked in opposite order by a and b."""
    if len(a) != len(b):
        raise LengthMismatchError(f"rankings have different lengths: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise ValueError("need at least 2 alternatives")
    pos_b = _positions(b)
    pos_a = _positions(a)
    if pos_a.keys() != pos_b.keys():
        missing = set(pos_a) ^ set(pos_b)
        raise NotAPermutationError(f"rankings are not over the same alternatives: {sorted(map(repr, missing))}")
    # walking a's order, b's positions form a permutation whose inversions
    # are exactly the discordant pairs
    return _count_inversions([pos_b[label] for label in a])


def kendall_tau_distance(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """Discordant-pair count divided by the number of pairs; in [0, 1]."""
    m = len(a)
    pairs = m * (m - 1) // 2
    return discordant_pairs(a, b) / pairs
