"""Permutation groups given by generators.

Exact orders come from a stabilizer chain with base points chosen in the
order 1, 2, ..., n (smallest moved point first).  The chain is grown from
random products and then either

* confirmed by a counting bound, when its order already equals the order
  of the full symmetric or alternating group containing the generators, or
* completed by a deterministic Schreier generator pass.

Either way the reported order is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DegreeMismatchError, PreconditionError
from .perm import Permutation, _compose_raw, _cycles_raw, _invert_raw

__all__ = [
    "PermutationGroup",
    "BlockSystem",
    "GenerationOutcome",
    "build_group",
    "order",
    "contains",
    "orbits",
    "is_transitive",
    "minimal_block_system",
    "is_primitive",
    "induced_block_cycle",
    "generates_pair",
    "generates",
    "m_class_reps",
    "symmetric_group",
    "alternating_group",
]

_SEED = 20240229


def _is_even_raw(a) -> bool:
    return sum(len(c) - 1 for c in _cycles_raw(a)) % 2 == 0


# -- stabilizer chain -----------------------------------------------------------

class StabChain:
    """Base, strong generators and explicit transversals (0-based, raw tuples)."""

    __slots__ = ("n", "ident", "base", "gens", "trans", "tinv")

    def __init__(self, n: int):
        self.n = n
        self.ident = tuple(range(n))
        self.base = []
        self.gens = []
        self.trans = []
        self.tinv = []

    def order(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def sift(self, g, start=0):
        base, tinv = self.base, self.tinv
        for i in range(start, len(base)):
            ui = tinv[i].get(g[base[i]])
            if ui is None:
                return g, i
            g = tuple(map(ui.__getitem__, g))
        return g, len(base)

    def contains_raw(self, g) -> bool:
        res, _ = self.sift(g)
        return res == self.ident

    def add(self, h, level):
        """Insert a strong generator ``h`` fixing the first ``level`` base points."""
        if level == len(self.base):
            b = next(i for i, v in enumerate(h) if i != v)
            self.base.append(b)
            self.gens.append([])
            self.trans.append({b: self.ident})
            self.tinv.append({b: self.ident})
        for i in range(level + 1):
            self.gens[i].append(h)
            self._extend(i, h)

    def _extend(self, i, h):
        tr, ti, gs = self.trans[i], self.tinv[i], self.gens[i]
        new = []
        for p, u in list(tr.items()):
            q = h[p]
            if q not in tr:
                w = tuple(map(h.__getitem__, u))
                tr[q] = w
                ti[q] = _invert_raw(w)
                new.append(q)
        while new:
            p = new.pop()
            u = tr[p]
            for s in gs:
                q = s[p]
                if q not in tr:
                    w = tuple(map(s.__getitem__, u))
                    tr[q] = w
                    ti[q] = _invert_raw(w)
                    new.append(q)

    def complete(self):
        """Deterministic Schreier-Sims pass; adds generators until every
        Schreier generator sifts to the identity."""
        ident = self.ident
        restart = True
        while restart:
            restart = False
            for i in reversed(range(len(self.base))):
                tr, ti = self.trans[i], self.tinv[i]
                for p in list(tr):
                    u = tr[p]
                    for s in list(self.gens[i]):
                        us = tuple(map(s.__getitem__, u))
                        h = tuple(map(ti[s[p]].__getitem__, us))
                        res, j = self.sift(h, i + 1)
                        if res != ident:
                            self.add(res, j)
                            restart = True
                            break
                    if restart:
                        break
                if restart:
                    break
        return self

    def elements(self) -> Iterator[tuple]:
        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for u in self.trans[i].values():
                yield from rec(i - 1, tuple(map(u.__getitem__, acc)))

        yield from rec(len(self.base) - 1, self.ident)


def _random_chain(gens_raw, n, rng, target=None, patience=12):
    chain = StabChain(n)
    ident = chain.ident
    gens_raw = [g for g in gens_raw if g != ident]
    for g in gens_raw:
        res, j = chain.sift(g)
        if res != ident:
            chain.add(res, j)
    if not gens_raw:
        return chain
    if target is not None and chain.order() == target:
        return chain
    # product replacement
    state = list(gens_raw)
    while len(state) < 8:
        state.extend(gens_raw)
    state = state[:10] if len(state) > 10 else state
    acc = ident
    m = len(state)

    def step():
        nonlocal acc
        i = rng.randrange(m)
        j = rng.randrange(m - 1)
        if j >= i:
            j += 1
        if rng.random() < 0.5:
            state[i] = tuple(map(state[j].__getitem__, state[i]))
        else:
            state[i] = tuple(map(state[i].__getitem__, state[j]))
        acc = tuple(map(state[i].__getitem__, acc))
        return acc

    for _ in range(20):
        step()
    misses = 0
    while misses < patience:
        g = step()
        res, j = chain.sift(g)
        if res == ident:
            misses += 1
        else:
            chain.add(res, j)
            misses = 0
            if target is not None and chain.order() == target:
                return chain
    return chain


def _exact_chain(gens_raw, n, seed=_SEED):
    """Stabilizer chain whose order is exact."""
    rng = random.Random(seed)
    all_even = all(_is_even_raw(g) for g in gens_raw)
    bound = factorial(n) // (2 if all_even and n > 1 else 1)
    chain = _random_chain(gens_raw, n, rng, target=bound)
    if chain.order() != bound:
        chain.complete()
    return chain


# -- low level orbit / block helpers ---------------------------------------------

def _orbit_raw(gens, n, start=0):
    seen = bytearray(n)
    seen[start] = 1
    stack = [start]
    out = [start]
    while stack:
        p = stack.pop()
        for g in gens:
            q = g[p]
            if not seen[q]:
                seen[q] = 1
                stack.append(q)
                out.append(q)
    return out


def _orbits_raw(gens, n):
    seen = bytearray(n)
    out = []
    for i in range(n):
        if not seen[i]:
            orb = _orbit_raw(gens, n, i)
            for p in orb:
                seen[p] = 1
            out.append(sorted(orb))
    return out


def _minimal_block_raw(gens, n, a, b):
    """Finest block system with ``a`` and ``b`` in the same block (union-find).

    Returns the root array; valid when the group is transitive.
    """
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        p, q = queue.pop()
        for g in gens:
            rp, rq = find(g[p]), find(g[q])
            if rp != rq:
                if rp < rq:
                    parent[rq] = rp
                else:
                    parent[rp] = rq
                queue.append((rp, rq))
    return [find(i) for i in range(n)]


def _block_size_raw(gens, n, a, b):
    roots = _minimal_block_raw(gens, n, a, b)
    r = roots[a]
    return sum(1 for v in roots if v == r), roots


def _primitive_raw(gens, n):
    """None when primitive, else the root array of a nontrivial block system."""
    for b in range(1, n):
        size, roots = _block_size_raw(gens, n, 0, b)
        if size < n:
            return roots
    return None


def _fast_generates(gens_raw, n, alt: bool) -> bool:
    """Decide whether the raw generators give S_n (``alt=False``) or A_n.

    Non-generation is certified by an orbit, a block system or parity;
    generation by a stabilizer chain whose order meets the bound.
    """
    evens = [_is_even_raw(g) for g in gens_raw]
    if alt:
        if not all(evens):
            return False
    elif all(evens):
        return False
    if n <= 2:
        return len(_orbit_raw(gens_raw, n)) == n if not alt else True
    if len(_orbit_raw(gens_raw, n)) != n:
        return False
    if _primitive_raw(gens_raw, n) is not None:
        return False
    target = factorial(n) // (2 if alt else 1)
    chain = _random_chain(gens_raw, n, random.Random(_SEED), target=target)
    if chain.order() == target:
        return True
    chain.complete()
    return chain.order() == target


# -- public types ----------------------------------------------------------------

@dataclass(frozen=True)
class BlockSystem:
    degree: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        pts = [p for b in blocks for p in b]
        if sorted(pts) != list(range(1, self.degree + 1)):
            raise ValueError("blocks do not partition the domain")
        if len({len(b) for b in blocks}) != 1:
            raise ValueError("blocks have unequal sizes")

    @classmethod
    def _from_roots(cls, roots) -> "BlockSystem":
        parts = {}
        for i, r in enumerate(roots):
            parts.setdefault(r, []).append(i + 1)
        return cls(len(roots), tuple(parts.values()))

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def is_trivial(self) -> bool:
        return self.block_size in (1, self.degree)

    def block_of(self, point: int) -> tuple:
        for b in self.blocks:
            if point in b:
                return b
        raise KeyError(point)

    def is_preserved_by(self, g: Permutation) -> bool:
        """Every block maps onto a block."""
        if g.degree != self.degree:
            raise DegreeMismatchError("degree mismatch")
        as_sets = {frozenset(b) for b in self.blocks}
        return all(frozenset(g.image(p) for p in b) in as_sets for b in self.blocks)

    def as_lists(self) -> list:
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class GenerationOutcome:
    verdict: str  # "Full" | "Alternating" | "Proper"
    order: int

    def generates(self, kind: str) -> bool:
        return (kind == "sym" and self.verdict == "Full") or (
            kind == "alt" and self.verdict == "Alternating"
        )


class PermutationGroup:
    """Group generated by a list of permutations of equal degree."""

    def __init__(self, generators: Sequence[Permutation], *, degree: Optional[int] = None):
        gens = list(generators)
        if not gens:
            if degree is None:
                raise PreconditionError("need at least one generator")
            gens = [Permutation.identity(degree)]
        n = gens[0].degree
        for g in gens:
            if g.degree != n:
                raise DegreeMismatchError("generators have different degrees")
        self.degree = n
        self.generators = tuple(gens)
        self._raw_gens = [g._a for g in gens]
        self._chain = None

    def __repr__(self):
        return f"PermutationGroup([{', '.join(map(str, self.generators))}], degree={self.degree})"

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = _exact_chain(self._raw_gens, self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError("degree mismatch")
        return self.chain.contains_raw(p._a)

    __contains__ = contains

    def elements(self) -> Iterator[Permutation]:
        for a in self.chain.elements():
            yield Permutation._raw(a)

    def orbits(self) -> list:
        return [tuple(p + 1 for p in o) for o in _orbits_raw(self._raw_gens, self.degree)]

    def orbit(self, point: int) -> tuple:
        return tuple(sorted(p + 1 for p in _orbit_raw(self._raw_gens, self.degree, point - 1)))

    def is_transitive(self) -> bool:
        return len(_orbit_raw(self._raw_gens, self.degree)) == self.degree

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def minimal_block_system(self, a: int, b: int) -> BlockSystem:
        return minimal_block_system(self, a, b)

    def is_primitive(self):
        return is_primitive(self)


def build_group(generators: Iterable[Permutation]) -> PermutationGroup:
    gens = list(generators)
    if not gens:
        raise PreconditionError("build_group needs a nonempty generator list")
    return PermutationGroup(gens)


def symmetric_group(n: int) -> PermutationGroup:
    if n == 1:
        return PermutationGroup([Permutation.identity(1)])
    gens = [Permutation.from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(1, n + 1))], n))
    return PermutationGroup(gens)


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return PermutationGroup([Permutation.identity(n)])
    gens = [Permutation.from_cycles([(1, 2, i)], n) for i in range(3, n + 1)]
    return PermutationGroup(gens)


def order(G: PermutationGroup) -> int:
    return G.order()


def contains(G: PermutationGroup, p: Permutation) -> bool:
    return G.contains(p)


def orbits(G: PermutationGroup) -> list:
    return G.orbits()


def is_transitive(G: PermutationGroup) -> bool:
    return G.is_transitive()


def minimal_block_system(G: PermutationGroup, a: int, b: int) -> BlockSystem:
    """Finest block system of the transitive group ``G`` joining ``a`` and ``b``."""
    if a == b:
        raise PreconditionError("a and b must differ")
    if not G.is_transitive():
        raise PreconditionError("minimal_block_system needs a transitive group")
    roots = _minimal_block_raw(G._raw_gens, G.degree, a - 1, b - 1)
    return BlockSystem._from_roots(roots)


def is_primitive(G: PermutationGroup):
    """``(True, None)`` or ``(False, witnessing nontrivial BlockSystem)``."""
    if G.degree < 2:
        raise PreconditionError("degree must be at least 2")
    if not G.is_transitive():
        raise PreconditionError("is_primitive needs a transitive group")
    roots = _primitive_raw(G._raw_gens, G.degree)
    if roots is None:
        return True, None
    return False, BlockSystem._from_roots(roots)


def induced_block_cycle(h: Permutation, cycle_index: int, B: BlockSystem) -> tuple:
    """The cycle that the ``cycle_index``-th cycle of ``h`` induces on blocks.

    Cycles are numbered from 0 in canonical order (by smallest point),
    fixed points included.  The result lists blocks starting from the block
    of the cycle's first point.
    """
    if not B.is_preserved_by(h):
        raise PreconditionError("h does not preserve the block system")
    cyc = h.cycles(include_fixed=True)[cycle_index]
    start = B.block_of(cyc[0])
    out = [start]
    cur = start
    while True:
        nxt = B.block_of(h.image(cur[0]))
        if nxt == start:
            break
        out.append(nxt)
        cur = nxt
    return tuple(out)


def generates_pair(x: Permutation, y: Permutation, kind: str) -> GenerationOutcome:
    """Exact order of ``<x, y>`` and the resulting verdict."""
    if x.degree != y.degree:
        raise DegreeMismatchError("degree mismatch")
    if kind not in ("sym", "alt"):
        raise PreconditionError(f"kind must be 'sym' or 'alt', not {kind!r}")
    evens = x.is_even() and y.is_even()
    if kind == "alt" and not evens:
        raise PreconditionError("odd generator with kind 'alt'")
    n = x.degree
    chain = _exact_chain([x._a, y._a], n)
    o = chain.order()
    if o == factorial(n):
        verdict = "Full"
    elif n > 1 and o == factorial(n) // 2 and evens:
        verdict = "Alternating"
    else:
        verdict = "Proper"
    return GenerationOutcome(verdict, o)


def generates(x: Permutation, y: Permutation, kind: str) -> bool:
    """Fast decision of ``<x, y> = G``; see ``_fast_generates``."""
    if x.degree != y.degree:
        raise DegreeMismatchError("degree mismatch")
    return _fast_generates([x._a, y._a], x.degree, kind == "alt")


# -- class representatives --------------------------------------------------------

def _brute_class_reps(G: PermutationGroup, M: PermutationGroup):
    """Orbits of M-conjugation on G \\ M by explicit enumeration."""
    n = G.degree
    mgens = [(g._a, _invert_raw(g._a)) for g in M.generators]
    seen = set()
    reps = []
    for a in sorted(G.chain.elements()):
        if a in seen or M.chain.contains_raw(a):
            continue
        seen.add(a)
        stack = [a]
        size = 1
        while stack:
            c = stack.pop()
            for h, hi in mgens:
                # conjugate c by h: (p^h)^(c^h) = (p^c)^h
                d = [0] * n
                for p, q in enumerate(c):
                    d[h[p]] = h[q]
                d = tuple(d)
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
                    size += 1
        reps.append((Permutation._raw(a), size))
    return reps


def m_class_reps(G: PermutationGroup, M: PermutationGroup, method: str = "auto", with_sizes: bool = False):
    """One representative per M-conjugacy class of ``G \\ M``.

    ``method="brute"`` enumerates G.  ``method="necklace"`` (chosen by
    ``"auto"`` whenever ``M`` is the stabiliser of ``{1..k}`` in
    ``G = S_n`` or ``A_n``) lists classes combinatorially, see
    :mod:`cogen.classes`.
    """
    if not M.is_subgroup_of(G):
        raise PreconditionError("M is not a subgroup of G")
    if M.order() == G.order():
        return []
    if method == "auto":
        method = "necklace" if _recognise_intransitive(G, M) is not None else "brute"
    if method == "brute":
        reps = _brute_class_reps(G, M)
    elif method == "necklace":
        from .classes import intransitive_class_reps

        rec = _recognise_intransitive(G, M)
        if rec is None:
            raise PreconditionError("necklace method needs M = Stab_G({1..k}) with G = S_n or A_n")
        n, k, kind = rec
        reps = [(r.rep, r.size) for r in intransitive_class_reps(n, k, kind)]
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return reps if with_sizes else [r for r, _ in reps]


def _recognise_intransitive(G, M):
    n = G.degree
    o = G.order()
    if o == factorial(n):
        kind = "sym"
    elif n > 2 and o == factorial(n) // 2:
        kind = "alt"
    else:
        return None
    orbs = M.orbits()
    if len(orbs) != 2:
        return None
    k = len(orbs[0])
    if orbs[0] != tuple(range(1, k + 1)):
        return None
    full = factorial(k) * factorial(n - k)
    if M.order() != (full if kind == "sym" else full // 2):
        return None
    return n, k, kind
