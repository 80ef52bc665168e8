"""Conjugacy classes of S_n and A_n under the intransitive subgroup.

Colour the points of {1..k} with 0 and those of {k+1..n} with 1.  Two
permutations are conjugate under Sym({1..k}) x Sym({k+1..n}) exactly when
their cycles, read as cyclic 0/1 words, form the same multiset of
necklaces.  This module lists those multisets directly, which is far
cheaper than enumerating the group once n reaches 10.

A class of even permutations splits into two classes of
M = (S_k x S_{n-k}) ∩ A_n precisely when the colour-preserving centraliser
contains no odd permutation.  That centraliser is generated by

* the rotation of a cycle by its colour period d (parity L - d), and
* the swap of two cycles carrying the same necklace (parity L),

so splitting can be read off the necklace data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterator

from .perm import Permutation

__all__ = ["ClassRep", "necklaces", "class_signature", "intransitive_class_reps", "count_classes"]


def _canon(word: tuple) -> tuple:
    return min(word[i:] + word[:i] for i in range(len(word)))


def _period(word: tuple) -> int:
    L = len(word)
    for d in range(1, L + 1):
        if L % d == 0 and word[d:] + word[:d] == word:
            return d
    return L


@lru_cache(maxsize=None)
def necklaces(L: int) -> tuple:
    """Canonical (minimal rotation) binary necklaces of length ``L``."""
    out = set()
    for m in range(1 << L):
        w = tuple((m >> i) & 1 for i in range(L))
        out.add(_canon(w))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _buckets(n: int) -> dict:
    # (zeros, ones) -> tuple of necklaces
    out = {}
    for L in range(1, n + 1):
        for w in necklaces(L):
            b = sum(w)
            out.setdefault((L - b, b), []).append(w)
    return {key: tuple(v) for key, v in out.items()}


def class_signature(x: Permutation, k: int) -> tuple:
    """Sorted necklace multiset of ``x`` (fixed points included)."""
    words = []
    for cyc in x.cycles(include_fixed=True):
        words.append(_canon(tuple(0 if p <= k else 1 for p in cyc)))
    return tuple(sorted(words, key=lambda w: (-len(w), w)))


def _multisets(n: int, k: int) -> Iterator[tuple]:
    buckets = _buckets(n)
    pairs = sorted(buckets, reverse=True)

    def rec(r0, r1, start):
        if r0 == 0 and r1 == 0:
            yield ()
            return
        for idx in range(start, len(pairs)):
            a, b = pairs[idx]
            if a > r0 or b > r1:
                continue
            words = buckets[(a, b)]
            m = 1
            while m * a <= r0 and m * b <= r1:
                for combo in combinations_with_replacement(words, m):
                    for rest in rec(r0 - m * a, r1 - m * b, idx + 1):
                        yield combo + rest
                m += 1

    yield from rec(k, n - k, 0)


def _is_crossing(word) -> bool:
    return 0 < sum(word) < len(word)


def _centraliser(words) -> tuple:
    """(order of colour-preserving centraliser, contains an odd element)."""
    counts = {}
    for w in words:
        counts[w] = counts.get(w, 0) + 1
    size = 1
    odd = False
    for w, m in counts.items():
        L = len(w)
        d = _period(w)
        size *= (L // d) ** m * factorial(m)
        if (L - d) % 2 == 1:
            odd = True
        if m >= 2 and L % 2 == 1:
            odd = True
    return size, odd


def _build(n: int, k: int, words) -> Permutation:
    cross = sorted((w for w in words if _is_crossing(w)), key=lambda w: (-len(w), w))
    mono = sorted((w for w in words if not _is_crossing(w)), key=lambda w: (-len(w), w))
    ordered = cross + mono
    if cross:
        w = cross[0]
        L = len(w)
        rots = [w[i:] + w[:i] for i in range(L)]
        ordered[0] = min(r for r in rots if r[0] == 0 and r[1] == 1)
    nxt = [1, k + 1]
    cycles = []
    for w in ordered:
        cyc = []
        for c in w:
            cyc.append(nxt[c])
            nxt[c] += 1
        cycles.append(cyc)
    return Permutation.from_cycles(cycles, n)


@dataclass(frozen=True)
class ClassRep:
    rep: Permutation
    size: int
    signature: tuple
    split: bool = False


def intransitive_class_reps(n: int, k: int, kind: str, crossing_only: bool = True) -> list:
    """Representatives of the M-classes of ``G \\ M`` (all of G if not ``crossing_only``).

    Every representative of a crossing class maps 1 to k+1.
    """
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    Nord = factorial(k) * factorial(n - k)
    out = []
    swap = Permutation.from_cycles([(2, 3)], n) if k >= 3 else None
    for words in _multisets(n, k):
        crossing = any(_is_crossing(w) for w in words)
        if crossing_only and not crossing:
            continue
        odd_perm = sum(len(w) - 1 for w in words) % 2 == 1
        if kind == "alt" and odd_perm:
            continue
        csize, has_odd = _centraliser(words)
        nsize = Nord // csize
        sig = tuple(sorted(words, key=lambda w: (-len(w), w)))
        rep = _build(n, k, words)
        if kind == "alt" and not has_odd:
            if swap is None:
                other = rep ^ Permutation.from_cycles([(k + 1, k + 2)], n)
            else:
                other = rep ^ swap
            out.append(ClassRep(rep, nsize // 2, sig, True))
            out.append(ClassRep(other, nsize // 2, sig, True))
        else:
            out.append(ClassRep(rep, nsize, sig, False))
    return out


def count_classes(n: int, k: int, kind: str) -> int:
    return len(intransitive_class_reps(n, k, kind))
