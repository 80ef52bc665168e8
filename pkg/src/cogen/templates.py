"""Cycle templates for elements of the intransitive subgroup M.

A template fixes the cycle lengths of ``y`` on {1..k} and on {k+1..n}
and pins named points: ``placements`` puts a point into cycle Θ_i,
``forbidden`` keeps a point out of Θ_i, and ``equations`` ask for
``p^(y^m) = q``.  Θ indices are 1-based and count the cycles on {1..k}
first, in the order given.

:func:`template_members` lists every element matching a template exactly
once, in a fixed depth-first order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator

from .errors import PreconditionError
from .perm import Permutation

__all__ = ["CycleTemplate", "template_members", "partitions"]


@dataclass(frozen=True)
class CycleTemplate:
    left: tuple
    right: tuple
    placements: dict = field(default_factory=dict)
    forbidden: dict = field(default_factory=dict)
    equations: tuple = ()
    note: str = ""

    @property
    def cycle_count(self) -> int:
        return len(self.left) + len(self.right)

    def parity(self, n: int) -> str:
        return "even" if (self.cycle_count - n) % 2 == 0 else "odd"

    def describe(self) -> str:
        return f"{'·'.join(map(str, self.left))} | {'·'.join(map(str, self.right))}"

    def to_json(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "placements": {str(p): i for p, i in sorted(self.placements.items())},
            "forbidden": {str(p): sorted(s) for p, s in sorted(self.forbidden.items())},
            "equations": [list(e) for e in self.equations],
            "note": self.note,
        }

    def check(self, n: int, k: int):
        if sum(self.left) != k or sum(self.right) != n - k:
            raise PreconditionError(f"template {self.describe()} does not fit k={k}, n-k={n - k}")
        if min(self.left + self.right, default=1) < 1:
            raise PreconditionError("cycle lengths must be positive")


def partitions(m: int, largest=None) -> Iterator[tuple]:
    """Partitions of ``m`` in decreasing-part order, largest parts first."""
    if largest is None:
        largest = m
    if m == 0:
        yield ()
        return
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def _fill_canonical(points: list, lengths: Counter):
    """All ways to split ``points`` into anonymous cycles with the given lengths."""
    if not points:
        yield []
        return
    p0, rest = points[0], points[1:]
    for L in sorted(lengths, reverse=True):
        if lengths[L] == 0:
            continue
        lengths[L] -= 1
        for arr in permutations(rest, L - 1):
            chosen = set(arr)
            remaining = [q for q in rest if q not in chosen]
            for tail in _fill_canonical(remaining, lengths):
                yield [(p0,) + arr] + tail
        lengths[L] += 1


def template_members(tpl: CycleTemplate, n: int, k: int) -> Iterator[Permutation]:
    tpl.check(n, k)
    lengths = list(tpl.left) + list(tpl.right)
    sides = [0] * len(tpl.left) + [1] * len(tpl.right)
    C = len(lengths)

    def side(p):
        if not 1 <= p <= n:
            raise PreconditionError(f"point {p} outside 1..{n}")
        return 0 if p <= k else 1

    place = {}
    for p, i in tpl.placements.items():
        if not 1 <= i <= C:
            raise PreconditionError(f"Θ_{i} does not exist")
        if side(p) != sides[i - 1]:
            return
        place[p] = i - 1
    forbid = {p: {i - 1 for i in s} for p, s in tpl.forbidden.items()}
    for p, s in forbid.items():
        side(p)
        if p in place and place[p] in s:
            return

    slots = [[None] * L for L in lengths]
    where = {}
    for p, m, q in tpl.equations:
        if p in where:
            ci, sl = where[p]
        else:
            ci = place.get(p)
            if ci is None:
                raise PreconditionError(f"equation point {p} has no cycle")
            if any(v is not None for v in slots[ci]):
                raise PreconditionError("equations must chain from a single anchor per cycle")
            sl = 0
            slots[ci][0] = p
            where[p] = (ci, 0)
        tgt = (sl + m) % lengths[ci]
        if q in where:
            if where[q] != (ci, tgt):
                return
            continue
        if side(q) != sides[ci] or place.get(q, ci) != ci or ci in forbid.get(q, ()):
            return
        if slots[ci][tgt] is not None:
            return
        slots[ci][tgt] = q
        where[q] = (ci, tgt)
        place.setdefault(q, ci)

    for ci in range(C):
        members = sorted(p for p, c in place.items() if c == ci)
        if members and all(v is None for v in slots[ci]):
            slots[ci][0] = members[0]
            where[members[0]] = (ci, 0)

    placed_cycles = [ci for ci in range(C) if any(v is not None for v in slots[ci])]
    free_cycles = [ci for ci in range(C) if ci not in placed_cycles]
    for p, s in forbid.items():
        if s & set(free_cycles):
            raise PreconditionError("forbidden constraints must refer to cycles holding a placed point")

    floating = Counter(ci for p, ci in place.items() if p not in where)
    free_slots = [(ci, j) for ci in placed_cycles for j in range(lengths[ci]) if slots[ci][j] is None]
    open_count = Counter(ci for ci, _ in free_slots)
    for ci, need in floating.items():
        if need > open_count[ci]:
            return
    pools = [
        [p for p in range(1, k + 1) if p not in where],
        [p for p in range(k + 1, n + 1) if p not in where],
    ]
    free_lengths = [Counter(), Counter()]
    for ci in free_cycles:
        free_lengths[sides[ci]][lengths[ci]] += 1

    used = set()
    left_open = dict(open_count)

    def build(free_parts):
        a = list(range(n))
        for ci in range(C):
            cyc = slots[ci]
            L = len(cyc)
            if ci in placed_cycles:
                for j in range(L):
                    a[cyc[j] - 1] = cyc[(j + 1) % L] - 1
        for cyc in free_parts:
            L = len(cyc)
            for j in range(L):
                a[cyc[j] - 1] = cyc[(j + 1) % L] - 1
        return Permutation._raw(tuple(a))

    def finish():
        rest0 = [p for p in pools[0] if p not in used]
        rest1 = [p for p in pools[1] if p not in used]
        for part0 in _fill_canonical(rest0, Counter(free_lengths[0])):
            for part1 in _fill_canonical(rest1, Counter(free_lengths[1])):
                yield build(part0 + part1)

    side_cycles = [[c for c in range(C) if sides[c] == sd] for sd in (0, 1)]
    free_set = set(free_cycles)

    def homes(p, sd):
        pc = place.get(p)
        bad = forbid.get(p, ())
        out = []
        for c in side_cycles[sd]:
            if (pc is None or pc == c) and c not in bad and (c in free_set or left_open.get(c, 0) > 0):
                out.append(c)
        return out

    def dfs(idx):
        if idx == len(free_slots):
            yield from finish()
            return
        ci, j = free_slots[idx]
        sd = sides[ci]
        # current slot counts as open while checking feasibility
        forced = []
        for p in pools[sd]:
            if p in used:
                continue
            h = homes(p, sd)
            if not h:
                return
            if h == [ci]:
                forced.append(p)
        left_open[ci] -= 1
        if len(forced) > left_open[ci] + 1:
            left_open[ci] += 1
            return
        choices = forced if len(forced) == left_open[ci] + 1 else pools[sd]
        for p in choices:
            if p in used:
                continue
            pc = place.get(p)
            if pc is not None and pc != ci:
                continue
            if ci in forbid.get(p, ()):
                continue
            used.add(p)
            slots[ci][j] = p
            yield from dfs(idx + 1)
            slots[ci][j] = None
            used.discard(p)
        left_open[ci] += 1

    yield from dfs(0)
