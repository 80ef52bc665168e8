"""Witnesses y ∈ M with ⟨x, y⟩ = G for the intransitive subgroup M.

For ``x ∈ G \\ M`` the search first conjugates ``x`` inside ``M`` so that
1 maps to k+1, picks a case from the support of ``x`` on the two orbits
and from whether some power of ``x`` is a Jordan element, and then scans
a small family of cycle templates.  Each candidate is tested with the fast
generation check; the winner is re-verified with an exact order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain
from math import factorial, gcd
from typing import Iterator, Optional

from .errors import BudgetExceededError, InternalInconsistencyError, PreconditionError
from .groups import BlockSystem, PermutationGroup, generates, generates_pair
from .jordan import jordan_power
from .perm import Permutation, _moved_type, select_points
from .primes import InequalityCase, bertrand_pk, prime_p1, prime_p2
from .templates import CycleTemplate, partitions, template_members

__all__ = [
    "Scenario",
    "LemmaTag",
    "WitnessResult",
    "canonicalize",
    "dispatch",
    "templates_for",
    "candidate_family",
    "find_witness",
    "imprimitivity_certificate",
    "verify_witness",
    "default_budget",
    "CLOSURE_CLASSES",
]

TAGS = ("L3_2-search", "L3_6", "L3_7", "L4_1", "L4_2", "L4_3", "L4_4", "L4_5", "L4_6", "L4_7", "L4_8", "T4_9")
LemmaTag = str

# moved-point cycle types for which the point-selection recipes do not apply
_SMALL_TYPES = {(2, 3, 3), (3, 5), (3, 3, 3), (2, 2, 2, 2)}

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    raw = os.environ.get("COGEN_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(f"COGEN_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise PreconditionError("COGEN_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class Scenario:
    n: int
    k: int
    kind: str  # "sym" | "alt"

    def __post_init__(self):
        if self.kind not in ("sym", "alt"):
            raise PreconditionError(f"kind must be 'sym' or 'alt', not {self.kind!r}")
        if not (self.n > self.k and 2 * self.k > self.n):
            raise PreconditionError(f"need n > k > n/2, got n={self.n}, k={self.k}")
        if self.kind == "alt" and self.k < 3:
            raise PreconditionError("the alternating case needs k >= 3")

    @property
    def omega1(self) -> range:
        return range(1, self.k + 1)

    @property
    def omega2(self) -> range:
        return range(self.k + 1, self.n + 1)

    @property
    def case(self) -> str:
        """'A' when (G = A_n, n odd) or (G = S_n, n even); 'B' otherwise."""
        odd = self.n % 2 == 1
        return "A" if (self.kind == "alt") == odd else "B"

    def expected_m_order(self) -> int:
        full = factorial(self.k) * factorial(self.n - self.k)
        return full if self.kind == "sym" else full // 2

    def m_generators(self) -> list:
        n, k = self.n, self.k
        cyc = Permutation.from_cycles
        if self.kind == "sym":
            gens = [cyc([(1, 2)], n), cyc([tuple(range(1, k + 1))], n)]
            if n - k >= 2:
                gens += [cyc([(k + 1, k + 2)], n), cyc([tuple(range(k + 1, n + 1))], n)]
            return gens
        gens = [cyc([(1, 2, i)], n) for i in range(3, k + 1)]
        gens += [cyc([(k + 1, k + 2, i)], n) for i in range(k + 3, n + 1)]
        if n - k >= 2:
            gens.append(cyc([(1, 2), (k + 1, k + 2)], n))
        return gens

    @cached_property
    def M(self) -> PermutationGroup:
        return PermutationGroup(self.m_generators(), degree=self.n)

    @cached_property
    def G(self) -> PermutationGroup:
        from .groups import alternating_group, symmetric_group

        return symmetric_group(self.n) if self.kind == "sym" else alternating_group(self.n)

    def in_G(self, p: Permutation) -> bool:
        return p.degree == self.n and (self.kind == "sym" or p.is_even())

    def in_M(self, p: Permutation) -> bool:
        if not self.in_G(p):
            return False
        k = self.k
        return all(p.image(i) <= k for i in range(1, k + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "kind": self.kind}


# closure classes adjoined to M when M is not a maximal coclique at small degree
CLOSURE_CLASSES = {
    ("sym", 4, 3): "(1,4)(2,3)",
    ("alt", 5, 3): "(1,4)(2,3)",
    ("alt", 6, 4): "(1,5)(2,6)",
}


def closure_class_rep(s: Scenario) -> Optional[str]:
    if s.kind == "sym" and gcd(s.n, s.k) > 1:
        return f"(1,{s.k + 1})"
    return CLOSURE_CLASSES.get((s.kind, s.n, s.k))


@dataclass
class WitnessResult:
    outcome: str  # "Witness" | "NoWitness"
    tag: str
    y: Optional[Permutation] = None
    order_of_pair: Optional[int] = None
    certificate: Optional[dict] = None
    tests: int = 0
    conjugator: Optional[Permutation] = None

    @property
    def found(self) -> bool:
        return self.outcome == "Witness"

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "tag": self.tag, "tests": self.tests}
        if self.y is not None:
            out["y"] = str(self.y)
        if self.order_of_pair is not None:
            out["order_of_pair"] = self.order_of_pair
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


# -- canonical form --------------------------------------------------------------

def canonicalize(x: Permutation, s: Scenario):
    """``(h, x^h)`` with ``h ∈ M`` and ``1^(x^h) = k+1``."""
    n, k = s.n, s.k
    if x.degree != n:
        raise PreconditionError(f"x has degree {x.degree}, scenario has n={n}")
    crossing = [a for a in range(1, k + 1) if x.image(a) > k]
    if not crossing:
        raise PreconditionError("x lies in M (it maps Ω₁ into itself)")
    a = 1 if 1 in crossing else crossing[0]
    b = x.image(a)
    cycles = []
    if a != 1:
        cycles.append((1, a))
    if b != k + 1:
        cycles.append((k + 1, b))
    h = Permutation.from_cycles(cycles, n)
    if s.kind == "alt" and not h.is_even():
        # (2,3) fixes 1 and k+1, so the crossing pair is kept
        h = h * Permutation.from_cycles([(2, 3)], n)
    xp = x ^ h
    if xp.image(1) != k + 1:
        raise InternalInconsistencyError("canonicalize failed to move the crossing pair", trace={"x": str(x), "h": str(h)})
    return h, xp


def _split_support(x: Permutation, k: int):
    supp = x.support()
    return sorted(p for p in supp if p <= k), sorted(p for p in supp if p > k)


def _is_small(x: Permutation) -> bool:
    return len(x.support()) < 8 or _moved_type(x) in _SMALL_TYPES


def _k1_last(points, k):
    # try the candidates with k+1 fixed last
    return [p for p in points if p != k + 1] + [p for p in points if p == k + 1]


def dispatch(xp: Permutation, s: Scenario) -> LemmaTag:
    n, k = s.n, s.k
    if xp.image(1) != k + 1:
        raise PreconditionError("dispatch needs 1^x = k+1")
    if n <= 11:
        return "L3_2-search"
    if xp == Permutation.from_cycles([(1, k + 1)], n):
        return "T4_9"
    A1, A2 = _split_support(xp, k)
    a, b = len(A1), len(A2)
    has_jordan = jordan_power(xp) is not None
    small = _is_small(xp)
    if s.case == "A":
        if a == 1:
            if has_jordan:
                return "L4_1"
            if small:
                return "L3_7"
            if n - k <= 10:
                return "L3_6"
            return "L4_2"
        return "L4_3"
    if a == 1:
        if has_jordan:
            return "L4_6"
        if small:
            return "L3_7"
        if n - k <= 10:
            return "L3_6"
        return "L4_6"
    if b == 1:
        if has_jordan:
            return "L4_7"
        if small:
            return "L3_7"
        return "L4_8"
    if a == 2 and b == 2:
        return "L4_4"
    return "L4_5"


# -- template families --------------------------------------------------------------

def _rules(prime_rule: str):
    if prime_rule == "default":
        return "largest", "smallest"
    if prime_rule == "opposite":
        return "smallest", "largest"
    raise PreconditionError(f"prime_rule must be 'default' or 'opposite', not {prime_rule!r}")


def templates_for(tag: LemmaTag, xp: Permutation, s: Scenario, prime_rule: str = "default") -> list:
    """The cycle templates scanned for ``tag``, in order.

    Raises ``PreconditionError`` when the tag does not apply to ``xp``.
    Tags without a fixed shape (``L3_2-search`` and the small-k branch of
    ``L4_8``) return an empty list; their stream is the stratified scan of M.
    """
    n, k = s.n, s.k
    if tag not in TAGS:
        raise PreconditionError(f"unknown tag {tag!r}")
    if xp.image(1) != k + 1:
        raise PreconditionError("templates need 1^x = k+1")
    if tag == "L3_2-search":
        return []
    if n < 12:
        raise PreconditionError(f"{tag} needs n >= 12")
    pk_rule, p_rule = _rules(prime_rule)
    A1, A2 = _split_support(xp, k)
    a, b = len(A1), len(A2)
    transposition = xp == Permutation.from_cycles([(1, k + 1)], n)
    has_jordan = jordan_power(xp) is not None
    img = xp.image
    CT = CycleTemplate

    def need(cond, what):
        if not cond:
            raise PreconditionError(f"{tag}: {what}")

    if tag == "T4_9":
        need(transposition, "x must be (1,k+1)")
        return [CT((k,), (n - k,), note="k | n-k")]
    need(not transposition, "x must not be a transposition")

    if tag == "L4_1":
        need(s.case == "A" and a == 1 and has_jordan, "needs case A, one point in Ω₁ and a Jordan power")
        return [CT((k,), (n - k - 1, 1), {t: 3}, note=f"t={t}") for t in A2 if t != k + 1]

    if tag == "L4_2":
        need(s.case == "A" and a == 1 and not has_jordan and n - k > 10 and not _is_small(xp), "preconditions")
        p2 = prime_p2(n, k, p_rule)
        need(not isinstance(p2, InequalityCase), "no prime p2 available")
        p = p2.value
        s_, t, u, v = select_points(xp, k, "two")
        if (n - k) % p == 0:
            return [CT((k,), (p, n - k - p - 2, 1, 1),
                       {s_: 2, t: 2, img(t): 2, k + 1: 3, img(s_): 3, u: 4, v: 5}, note=f"p2={p}")]
        return [CT((k,), (p, n - k - p), {s_: 2, t: 2, img(t): 2, k + 1: 3, img(s_): 3}, note=f"p2={p}")]

    if tag == "L4_3":
        need(s.case == "A" and a >= 2, "needs case A and two points in Ω₁")
        p = bertrand_pk(k, pk_rule).value
        if k == p + 2 and n - k == p:
            left, right = (3, p - 1), (p,)
        else:
            left, right = (k - p, p), (n - k,)
        out = []
        for t in A1:
            if t == 1:
                continue
            forb = {img(t): {2}} if img(t) <= k and img(t) != 1 else {}
            out.append(CT(left, right, {1: 1, t: 2}, forb, note=f"pk={p}, t={t}"))
        return out

    if tag == "L4_4":
        need(s.case == "B" and a == 2 and b == 2, "needs two points on each side")
        t = A1[1] if A1[0] == 1 else A1[0]
        r = next(q for q in A2 if q != k + 1)
        return [CT((k,), (n - k,), {1: 1, k + 1: 2}, equations=((1, 2, t), (k + 1, 1, r)), note=f"t={t}, r={r}")]

    if tag == "L4_5":
        need(s.case == "B" and a >= 2 and b >= 2 and (a, b) != (2, 2), "support shape")
        p = bertrand_pk(k, pk_rule).value
        if p == n - k - 1 and p == k - p + 1:
            left, right = (p + 1, p - 2), (p, 1)
        else:
            left, right = (k - p, p), (n - k - 1, 1)
        out = []
        for t in A1:
            if t == 1:
                continue
            for r in A2:
                if r == k + 1 or img(t) == r:
                    continue
                forb = {img(t): {2}} if img(t) <= k and img(t) != 1 else {}
                out.append(CT(left, right, {1: 1, t: 2, k + 1: 3, r: 4}, forb, note=f"pk={p}, t={t}, r={r}"))
        return out

    if tag == "L4_6":
        need(s.case == "B" and a == 1, "needs case B and one point in Ω₁")
        if has_jordan:
            out = []
            for t in A2:
                if t == k + 1:
                    continue
                pre = xp.preimage(t)
                eqs = ((k + 1, 1, t), (t, 1, pre)) if pre != k + 1 else ((k + 1, 1, t),)
                out.append(CT((k,), (n - k,), {1: 1, k + 1: 2}, equations=eqs, note=f"t={t}"))
            return out
        need(n - k > 10 and not _is_small(xp), "needs n-k > 10 and a large support")
        p2 = prime_p2(n, k, p_rule)
        need(not isinstance(p2, InequalityCase), "no prime p2 available")
        p = p2.value
        i = 1 if (n - k - 1) % p != 0 else 2
        r, s_, t = select_points(xp, k, "one")
        place = {r: 2, t: 2, img(t): 2, k + 1: 3, img(r): 3, img(s_): 4, s_: 2 if p >= 5 else 3}
        return [CT((k,), (p, n - k - p - i, i), place, note=f"p2={p}, i={i}")]

    if tag == "L4_7":
        need(s.case == "B" and b == 1 and has_jordan, "needs case B, one point in Ω₂ and a Jordan power")
        out = []
        for t in A1:
            if t == 1:
                continue
            eqs = ((1, 1, t), (t, 1, img(t))) if img(t) != 1 else ((1, 1, t),)
            out.append(CT((k,), (n - k,), {1: 1}, equations=eqs, note=f"t={t}"))
        return out

    if tag == "L4_8":
        need(s.case == "B" and b == 1 and not has_jordan and not _is_small(xp), "preconditions")
        if k <= 9:
            return []
        p = prime_p1(n, k, p_rule).value
        i = 1 if (k - 1) % p != 0 else 2
        r, s_, t = select_points(xp, k, "one")
        place = {1: 1, r: 1, s_: 1, img(r): 2, t: 2, img(t): 2, img(s_): 3}
        return [CT((k - i - p, p, i), (n - k,), place, note=f"p1={p}, i={i}")]

    if tag == "L3_6":
        need(a == 1 and not has_jordan and n - k <= 10, "needs one point in Ω₁, no Jordan power, n-k <= 10")
        if s.case == "A":
            return [CT((k,), (n - k - 1, 1), {f: 3}, note=f"f={f}") for f in _k1_last(A2, k)]
        return [CT((k,), (n - k,))]

    if tag == "L3_7":
        need(_is_small(xp) and not has_jordan, "needs a small support and no Jordan power")
        if s.case == "A":
            out = []
            if n - k >= 2:
                out += [CT((k,), (n - k - 1, 1), {f: 3}, note=f"f={f}") for f in _k1_last(A2, k)]
            out += [CT((k - 1, 1), (n - k,), {f: 2}, note=f"f={f}") for f in A1]
            return out
        return [CT((k,), (n - k,))]

    raise PreconditionError(f"unhandled tag {tag}")  # pragma: no cover


def _stratified_members(s: Scenario, x: Permutation) -> Iterator[Permutation]:
    """All non-identity y ∈ M, fewest cycles first, skipping hopeless parities."""
    n, k = s.n, s.k
    types = [(L, R) for L in partitions(k) for R in partitions(n - k)]
    types.sort(key=lambda lr: (len(lr[0]) + len(lr[1]), [-v for v in lr[0]], [-v for v in lr[1]]))
    for L, R in types:
        if len(L) + len(R) == n:
            continue
        even = (len(L) + len(R) - n) % 2 == 0
        if s.kind == "alt" and not even:
            continue
        # two even generators only reach A_n
        if s.kind == "sym" and even and x.is_even():
            continue
        yield from template_members(CycleTemplate(L, R), n, k)


def candidate_family(tag: LemmaTag, xp: Permutation, s: Scenario, prime_rule: str = "default") -> Iterator[Permutation]:
    tpls = templates_for(tag, xp, s, prime_rule)
    if not tpls:
        return _stratified_members(s, xp)
    if s.kind == "alt":
        for tpl in tpls:
            if tpl.parity(s.n) != "even":
                raise InternalInconsistencyError(f"{tag} template {tpl.describe()} is odd", trace={"x": str(xp)})
    return chain.from_iterable(template_members(tpl, s.n, s.k) for tpl in tpls)


# -- search ---------------------------------------------------------------------

def find_witness(x: Permutation, s: Scenario, budget: Optional[int] = None, prime_rule: str = "default") -> WitnessResult:
    if budget is None:
        budget = default_budget()
    if x.is_identity():
        raise PreconditionError("x must not be the identity")
    if not s.in_G(x):
        raise PreconditionError(f"x = {x} is not in G")
    h, xp = canonicalize(x, s)
    hinv = ~h
    tag = dispatch(xp, s)
    n, k = s.n, s.k

    transposition = xp == Permutation.from_cycles([(1, k + 1)], n)
    if tag == "T4_9" and gcd(n, k) > 1:
        cert = _block_certificate(x, xp, s, hinv, prime_rule)
        return WitnessResult("NoWitness", tag, certificate=cert, conjugator=h)

    tested = 0
    for y in candidate_family(tag, xp, s, prime_rule):
        if tested >= budget:
            raise BudgetExceededError(
                f"no witness among {budget} candidates for x = {x} ({tag})",
                partial={"x": str(x), "tag": tag, "tested": tested},
            )
        tested += 1
        if generates(xp, y, s.kind):
            # the fast test only screens; the reported witness gets an exact order
            yo = y ^ hinv
            out = generates_pair(x, yo, s.kind)
            if not out.generates(s.kind):
                raise InternalInconsistencyError(
                    "fast generation test disagrees with exact order",
                    trace={"x": str(x), "y": str(yo), "order": out.order})
            return WitnessResult("Witness", tag, y=yo, order_of_pair=out.order, tests=tested, conjugator=h)

    if tag == "L3_2-search":
        rep = closure_class_rep(s)
        cert = {"kind": "exhaustive", "tested": tested, "closure_class": rep}
        if transposition and gcd(n, k) > 1:
            # the search is the proof here; the blocks show why it came up empty
            cert.update(_block_certificate(x, xp, s, hinv, prime_rule))
            cert["kind"] = "blocks"
        if rep is not None:
            from .classes import class_signature

            cls = Permutation.parse(rep, n)
            cert["in_closure_class"] = class_signature(x, k) == class_signature(cls, k)
        else:
            cert["in_closure_class"] = False
        return WitnessResult("NoWitness", tag, certificate=cert, tests=tested, conjugator=h)

    raise InternalInconsistencyError(
        f"family {tag} exhausted for x = {x}",
        trace={"x": str(x), "x_canonical": str(xp), "tag": tag, "tested": tested,
               "templates": [t.to_json() for t in templates_for(tag, xp, s, prime_rule)]},
    )


def _block_certificate(x, xp, s: Scenario, hinv, prime_rule) -> dict:
    if s.n >= 12:
        y0 = next(iter(candidate_family("T4_9", xp, s, prime_rule)))
    else:
        y0 = _k_cycle_pair(s)
    B = imprimitivity_certificate(s, y0)
    Bx = _conjugate_blocks(B, hinv)
    y = y0 ^ hinv
    if not (Bx.is_preserved_by(x) and Bx.is_preserved_by(y)):
        raise InternalInconsistencyError("block certificate failed", trace={"x": str(x)})
    return {"kind": "blocks", "y": str(y), "blocks": Bx.as_lists(), "closure_class": closure_class_rep(s)}


def _k_cycle_pair(s: Scenario) -> Permutation:
    n, k = s.n, s.k
    return Permutation.from_cycles([tuple(range(1, k + 1)), tuple(range(k + 1, n + 1))], n)


def _conjugate_blocks(B: BlockSystem, g: Permutation) -> BlockSystem:
    roots = [0] * B.degree
    for blk in B.blocks:
        imgs = [g.image(p) for p in blk]
        r = min(imgs)
        for q in imgs:
            roots[q - 1] = r - 1
    return BlockSystem._from_roots(roots)


def imprimitivity_certificate(s: Scenario, y: Permutation) -> BlockSystem:
    """Blocks Δ^(y^i) with Δ = 1^<y^t> ∪ (k+1)^<y^t>, t = gcd(n, k).

    There are t blocks, each of size n/t.  Both y and (1,k+1) preserve them.
    """
    n, k = s.n, s.k
    t = gcd(n, k)
    if t == 1:
        raise PreconditionError("gcd(n, k) = 1: M ∪ {(1,k+1)} has no joint block system")
    if not s.in_M(y) or sorted(len(c) for c in y.cycles(include_fixed=True)) != sorted((k, n - k)):
        raise PreconditionError("y must lie in M with cycle type k | n-k")
    yt = y ** t
    delta = set(yt.cycle_of(1)) | set(yt.cycle_of(k + 1))
    roots = [None] * n
    cur = delta
    for _ in range(t):
        r = min(cur)
        for p in cur:
            if roots[p - 1] is not None:
                raise InternalInconsistencyError("translates of Δ overlap", trace={"y": str(y)})
            roots[p - 1] = r - 1
        cur = {y.image(p) for p in cur}
    if cur != delta or None in roots:
        raise InternalInconsistencyError("translates of Δ do not tile the domain", trace={"y": str(y)})
    B = BlockSystem._from_roots(roots)
    x = Permutation.from_cycles([(1, k + 1)], n)
    if not (B.is_preserved_by(x) and B.is_preserved_by(y)):
        raise InternalInconsistencyError("block system is not preserved", trace={"y": str(y)})
    return B


def verify_witness(x: Permutation, y: Permutation, s: Scenario) -> bool:
    """Independent check: y ∈ M, admissible parities and ⟨x, y⟩ = G by exact order."""
    if x.degree != s.n or y.degree != s.n:
        return False
    if not s.in_M(y) or not s.in_G(x):
        return False
    return generates_pair(x, y, s.kind).generates(s.kind)
