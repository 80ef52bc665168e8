import random
from itertools import combinations
from math import factorial, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogen.errors import DegreeMismatchError, PreconditionError
from cogen.groups import (
    BlockSystem,
    PermutationGroup,
    alternating_group,
    build_group,
    generates,
    generates_pair,
    induced_block_cycle,
    is_primitive,
    m_class_reps,
    minimal_block_system,
    symmetric_group,
)
from cogen.perm import Permutation, parse_cycles


def P(text, n):
    return parse_cycles(text, n)


def closure(gens):
    """Brute-force group closure by right multiplication."""
    n = gens[0].degree
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def young(n, k):
    return PermutationGroup([P("(1,2)", n), P("(" + ",".join(map(str, range(1, k + 1))) + ")", n),
                             P(f"({k + 1},{k + 2})", n)])


def test_build_group_examples():
    assert build_group([P("(1,2)", 5), P("(1,2,3,4,5)", 5)]).order() == 120
    assert build_group([Permutation.identity(4)]).order() == 1
    assert build_group([P("(1,2,3)", 3)]).order() == 3
    with pytest.raises(PreconditionError):
        build_group([])
    with pytest.raises(DegreeMismatchError):
        build_group([P("(1,2)", 3), P("(1,2)", 4)])


def test_order_examples():
    assert symmetric_group(6).order() == 720
    assert alternating_group(7).order() == 2520
    assert young(6, 4).order() == 48
    agl5 = PermutationGroup([P("(1,2,3,4,5)", 5), P("(2,3,5,4)", 5)])
    assert agl5.order() == 20


def test_membership_examples():
    s3 = build_group([P("(1,2)", 3), P("(1,2,3)", 3)])
    assert s3.contains(P("(1,3)", 3))
    M = young(6, 4)
    assert not M.contains(P("(1,5)", 6))
    assert M.contains(Permutation.identity(6))
    with pytest.raises(DegreeMismatchError):
        M.contains(P("(1,2)", 5))


def test_orbits_examples():
    assert PermutationGroup([P("(1,2,3,4,5,6)", 6)]).orbits() == [(1, 2, 3, 4, 5, 6)]
    assert young(6, 4).orbits() == [(1, 2, 3, 4), (5, 6)]
    assert PermutationGroup([Permutation.identity(3)]).orbits() == [(1,), (2,), (3,)]
    assert not young(6, 4).is_transitive()


@st.composite
def small_gensets(draw):
    n = draw(st.integers(2, 7))
    m = draw(st.integers(1, 3))
    return [Permutation(draw(st.permutations(range(1, n + 1)))) for _ in range(m)]


@settings(max_examples=60, deadline=None)
@given(small_gensets())
def test_order_matches_brute_closure(gens):
    G = PermutationGroup(gens)
    elems = closure(gens)
    assert G.order() == len(elems)
    assert set(G.elements()) == elems
    assert factorial(gens[0].degree) % G.order() == 0
    n = gens[0].degree
    rng = random.Random(len(elems))
    for _ in range(10):
        p = Permutation(rng.sample(range(1, n + 1), n))
        assert G.contains(p) == (p in elems)


def _brute_finest_blocks(gens, n, a, b):
    """Smallest preserved partition joining a and b, by scanning all set partitions."""
    best = None

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[first] + part[i]] + part[i + 1:]
            yield [[first]] + part

    for part in partitions(list(range(1, n + 1))):
        block_of = {p: frozenset(blk) for blk in part for p in blk}
        if block_of[a] != block_of[b]:
            continue
        ok = all(frozenset(g(p) for p in blk) == block_of[g(blk[0])] for g in gens for blk in part)
        if ok and (best is None or len(block_of[a]) < len(best[a])):
            best = block_of
    return sorted(sorted(s) for s in set(best.values()))


def test_minimal_block_system_examples():
    C6 = PermutationGroup([P("(1,2,3,4,5,6)", 6)])
    assert minimal_block_system(C6, 1, 3).as_lists() == [[1, 3, 5], [2, 4, 6]]
    assert minimal_block_system(C6, 1, 4).as_lists() == [[1, 4], [2, 5], [3, 6]]
    assert minimal_block_system(symmetric_group(6), 1, 2).as_lists() == [[1, 2, 3, 4, 5, 6]]
    for a, b in [(1, 3), (1, 4), (2, 6)]:
        assert minimal_block_system(C6, a, b).as_lists() == _brute_finest_blocks(C6.generators, 6, a, b)
    with pytest.raises(PreconditionError):
        minimal_block_system(young(6, 4), 1, 2)
    with pytest.raises(PreconditionError):
        minimal_block_system(C6, 2, 2)


def test_minimal_blocks_against_partition_scan():
    rng = random.Random(7)
    n = 6
    for _ in range(25):
        g = Permutation(rng.sample(range(1, n + 1), n))
        h = Permutation(rng.sample(range(1, n + 1), n))
        G = PermutationGroup([g, h])
        if not G.is_transitive():
            continue
        a, b = rng.sample(range(1, n + 1), 2)
        assert minimal_block_system(G, a, b).as_lists() == _brute_finest_blocks([g, h], n, a, b)


def test_is_primitive_examples():
    ok, B = is_primitive(PermutationGroup([P("(1,2,3,4,5,6)", 6)]))
    assert not ok and not B.is_trivial() and B.is_preserved_by(P("(1,2,3,4,5,6)", 6))
    assert is_primitive(symmetric_group(5)) == (True, None)
    assert is_primitive(PermutationGroup([P("(1,2,3,4,5)", 5)])) == (True, None)
    with pytest.raises(PreconditionError):
        is_primitive(young(6, 4))


def test_block_system_validation():
    with pytest.raises(ValueError):
        BlockSystem(4, ((1, 2), (3,), (4,)))
    with pytest.raises(ValueError):
        BlockSystem(4, ((1, 2), (2, 3)))


def test_induced_block_cycle_examples():
    h = P("(1,2,3,4,5,6)", 6)
    B2 = BlockSystem(6, ((1, 3, 5), (2, 4, 6)))
    B3 = BlockSystem(6, ((1, 4), (2, 5), (3, 6)))
    assert len(induced_block_cycle(h, 0, B2)) == 2
    assert len(induced_block_cycle(h, 0, B3)) == 3
    g = P("(1,4)", 6)
    assert len(induced_block_cycle(g, 0, B3)) == 1
    with pytest.raises(PreconditionError):
        induced_block_cycle(P("(1,2)", 6), 0, B3)


def _random_block_preserving(rng, n, d):
    """A random partition into blocks of size d and a random element preserving it."""
    pts = list(range(1, n + 1))
    rng.shuffle(pts)
    blocks = [pts[i:i + d] for i in range(0, n, d)]
    sigma = list(range(len(blocks)))
    rng.shuffle(sigma)
    images = [0] * n
    for i, blk in enumerate(blocks):
        tgt = list(blocks[sigma[i]])
        rng.shuffle(tgt)
        for p, q in zip(blk, tgt):
            images[p - 1] = q
    return BlockSystem(n, tuple(tuple(sorted(b)) for b in blocks)), Permutation(images)


def _is_prime(m):
    return m > 1 and all(m % q for q in range(2, int(m ** 0.5) + 1))


def test_block_lemmas_random():
    rng = random.Random(2024)
    checked = [0, 0, 0]
    for _ in range(4000):
        n = rng.choice([4, 6, 8, 9, 10, 12, 15])
        d = rng.choice([q for q in range(2, n) if n % q == 0])
        B, h = _random_block_preserving(rng, n, d)
        cycles = h.cycles(include_fixed=True)
        for i, c in enumerate(cycles):
            assert len(c) % len(induced_block_cycle(h, i, B)) == 0
            checked[0] += 1
        for c1, c2 in combinations(cycles, 2):
            if gcd(len(c1), len(c2)) != 1:
                continue
            for blk in B.blocks:
                if set(c1) & set(blk) and set(c2) & set(blk):
                    assert set(c1) | set(c2) <= set(blk)
                    checked[1] += 1
        for c in cycles:
            if _is_prime(len(c)) and all(gcd(len(c), len(o)) == 1 for o in cycles if o is not c):
                assert any(set(c) <= set(blk) for blk in B.blocks)
                checked[2] += 1
    assert all(checked)


def test_generates_pair_examples():
    assert generates_pair(P("(1,2)", 5), P("(1,2,3,4,5)", 5), "sym").verdict == "Full"
    assert generates_pair(P("(1,2,3)", 5), P("(1,2,3,4,5)", 5), "alt").verdict == "Alternating"
    e = Permutation.identity(4)
    out = generates_pair(e, e, "sym")
    assert out.verdict == "Proper" and out.order == 1
    with pytest.raises(PreconditionError):
        generates_pair(P("(1,2)", 5), P("(1,2,3)", 5), "alt")
    x = P("(1,5)", 6)
    for y in young(6, 4).elements():
        assert not generates_pair(x, y, "sym").generates("sym")


def test_fast_generation_agrees_with_order():
    rng = random.Random(3)
    for n in (4, 5, 6, 7, 8, 9, 10):
        for _ in range(60):
            x = Permutation(rng.sample(range(1, n + 1), n))
            y = Permutation(rng.sample(range(1, n + 1), n))
            for kind in ("sym", "alt"):
                if kind == "alt" and not (x.is_even() and y.is_even()):
                    continue
                assert generates(x, y, kind) == generates_pair(x, y, kind).generates(kind)


def test_m_class_reps_examples():
    G = symmetric_group(4)
    M = PermutationGroup([P("(1,2)", 4), P("(1,2,3)", 4)])
    reps = m_class_reps(G, M, with_sizes=True)
    assert sum(s for _, s in reps) == 18
    assert m_class_reps(G, G) == []
    with pytest.raises(PreconditionError):
        m_class_reps(M, G)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_necklace_reps_match_brute_force(n):
    for k in range(n // 2 + 1, n):
        for kind in ("sym", "alt"):
            if kind == "alt" and k < 3:
                continue
            G = symmetric_group(n) if kind == "sym" else alternating_group(n)
            gens = [P("(1,2)", n), P("(" + ",".join(map(str, range(1, k + 1))) + ")", n)]
            if n - k >= 2:
                gens += [P(f"({k + 1},{k + 2})", n), P("(" + ",".join(map(str, range(k + 1, n + 1))) + ")", n)]
            M = PermutationGroup(gens)
            if kind == "alt":
                M = PermutationGroup([g for g in M.elements() if g.is_even()] or [Permutation.identity(n)])
            brute = m_class_reps(G, M, method="brute", with_sizes=True)
            neck = m_class_reps(G, M, method="necklace", with_sizes=True)
            assert sum(s for _, s in neck) == G.order() - M.order()
            assert sorted(s for _, s in brute) == sorted(s for _, s in neck)
            # every necklace rep lies outside M, in G, and reps are pairwise non-conjugate
            seen = set()
            for r, size in neck:
                assert G.contains(r) and not M.contains(r)
                cls = frozenset(r ^ h for h in M.elements())
                assert len(cls) == size and not (cls & seen)
                seen |= cls


def _jordan_elements(n):
    yield P("(1,2)(3,4)", n)
    yield P("(1,2,3)", n)
    yield P("(1,2,3,4,5)", n)
    yield P("(1,2,3,4,5,6,7)", n)


def test_primitive_groups_with_jordan_element_contain_alt():
    rng = random.Random(28)
    n = 12
    seen_primitive = 0
    for j in _jordan_elements(n):
        for _ in range(15):
            g = Permutation(rng.sample(range(1, n + 1), n))
            H = PermutationGroup([j, g])
            if not H.is_transitive() or not is_primitive(H)[0]:
                continue
            seen_primitive += 1
            assert H.order() in (factorial(n) // 2, factorial(n))
    assert seen_primitive > 20
