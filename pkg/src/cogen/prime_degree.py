"""Prime degree: the affine group AGL_1(p) and coclique checks for S_p, A_p."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coclique import is_maximal_coclique, theorem_status
from .errors import OutOfDomainError, PreconditionError
from .groups import PermutationGroup, _orbit_raw, alternating_group, symmetric_group
from .perm import Permutation, _cycles_raw
from .primes import is_prime
from .witness import Scenario

__all__ = [
    "AffineGroup",
    "ExclusionCheck",
    "primitive_root",
    "build_agl1",
    "verify_agl_facts",
    "is_prime_power",
    "is_excluded_prime",
    "prime_degree_check",
]


def primitive_root(p: int) -> int:
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise AssertionError("unreachable")  # pragma: no cover


@dataclass
class AffineGroup:
    p: int
    root: int
    group: PermutationGroup

    def affine_map(self, a: int, b: int) -> Permutation:
        """v -> a v + b on points 1..p, where point i stands for i - 1."""
        if a % self.p == 0:
            raise PreconditionError("a must be a unit")
        return Permutation([(a * v + b) % self.p + 1 for v in range(self.p)])

    def translation(self) -> Permutation:
        return self.affine_map(1, 1)

    def multiplication(self) -> Permutation:
        return self.affine_map(self.root, 0)

    def even_part(self) -> PermutationGroup:
        """AGL_1(p) ∩ A_p, generated by the translation and v -> g^2 v."""
        return PermutationGroup([self.translation(), self.affine_map(self.root**2 % self.p, 0)])


def build_agl1(p: int) -> AffineGroup:
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if p < 3:
        raise PreconditionError("need p >= 3")
    g = primitive_root(p)
    A = AffineGroup(p, g, None)
    A.group = PermutationGroup([A.translation(), A.multiplication()])
    return A


def verify_agl_facts(p: int) -> dict:
    """Four structural facts about AGL_1(p), each checked directly."""
    if p > 101:
        raise OutOfDomainError("verify_agl_facts is limited to p <= 101")
    A = build_agl1(p)
    elems = [g._a for g in A.group.elements()]
    order_ok = len(elems) == p * (p - 1)

    # (i) regular on ordered pairs of distinct points
    pairs = {(a[0], a[1]) for a in elems}
    sharply = order_ok and len(pairs) == len(elems) and all(x != y for x, y in pairs)

    # (ii) the elements of order p and the identity form one cyclic group
    ident = tuple(range(p))
    order_p = [a for a in elems if a != ident and _cycles_raw(a) and len(_cycles_raw(a)[0]) == p]
    t = Permutation._raw(order_p[0]) if order_p else None
    powers = {(t ** i)._a for i in range(p)} if t is not None else set()
    unique_sylow = len(order_p) == p - 1 and powers == set(order_p) | {ident}

    # (iii) cycle shapes: a p-cycle, or d^((p-1)/d)·1 with d | p-1
    shapes_ok = True
    for a in elems:
        if a == ident:
            continue
        lens = [len(c) for c in _cycles_raw(a, include_fixed=True)]
        if lens == [p]:
            continue
        d = max(lens)
        fixed = lens.count(1)
        if not ((p - 1) % d == 0 and fixed == 1 and lens.count(d) == (p - 1) // d and len(lens) == (p - 1) // d + 1):
            shapes_ok = False
            break

    # (iv) a (p-1)-cycle fixes one point and generates that point's stabiliser,
    # so distinct cyclic groups mean distinct fixed points a != b; then
    # <y_a, y_b> is transitive with a point stabiliser of order p-1,
    # hence has order p(p-1) and equals M
    g = A.root
    gens_ok = True
    stab = {}
    for a in range(p):
        stab[a] = A.affine_map(g, (a - g * a) % p)
        if stab[a].image(a + 1) != a + 1 or len(stab[a].support()) != p - 1:
            gens_ok = False
    direct = p <= 23
    for a in range(p):
        for b in range(p):
            if a == b or not gens_ok:
                continue
            y1, y2 = stab[a], stab[b]
            if len(_orbit_raw([y1._a, y2._a], p, a)) != p:
                gens_ok = False
            elif direct and PermutationGroup([y1, y2]).order() != p * (p - 1):
                gens_ok = False
    return {
        "p": p,
        "order": len(elems),
        "sharply_2_transitive": sharply,
        "unique_sylow_p": unique_sylow,
        "element_shapes": shapes_ok,
        "two_cycles_generate": gens_ok,
        "two_cycles_method": "orbit-stabiliser" + (" and chain order" if direct else ""),
    }


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for r in range(2, q + 1):
        if q % r == 0:
            while q % r == 0:
                q //= r
            return q == 1
    return False  # pragma: no cover


@dataclass(frozen=True)
class ExclusionCheck:
    p: int
    excluded: bool
    witness: Optional[tuple] = None

    def to_json(self) -> dict:
        return {"p": self.p, "excluded": self.excluded, "witness": list(self.witness) if self.witness else None}


def is_excluded_prime(p: int) -> ExclusionCheck:
    """Whether p = (q^d - 1)/(q - 1) for a prime power q and d >= 2 (smallest q reported)."""
    if p < 5 or not is_prime(p):
        raise PreconditionError("need a prime p >= 5")
    # d >= 3 forces q^2 < p; d = 2 forces q = p - 1, the largest candidate
    q = 2
    while q * q < p:
        if is_prime_power(q):
            d, value = 3, 1 + q + q * q
            while value <= p:
                if value == p:
                    return ExclusionCheck(p, True, (q, d))
                d += 1
                value = value * q + 1
        q += 1
    if is_prime_power(p - 1):
        return ExclusionCheck(p, True, (p - 1, 2))
    return ExclusionCheck(p, False, None)


def prime_degree_check(p: int, kind: str, reduced: bool = False, budget: Optional[int] = None) -> dict:
    """Maximal-coclique verdicts for the constructible maximal subgroups of S_p or A_p."""
    if not is_prime(p) or p < 5:
        raise PreconditionError("need a prime p >= 5")
    if p > 7 and not reduced:
        raise OutOfDomainError("full sweeps are limited to p in {5, 7}; pass reduced=True for larger p")
    if kind not in ("sym", "alt"):
        raise PreconditionError(f"kind must be 'sym' or 'alt', not {kind!r}")
    G = symmetric_group(p) if kind == "sym" else alternating_group(p)
    full = p <= 7

    def row(name, H, S, symmetry, subgroup, **extra):
        out = {"subgroup": name, "order": H.order(), "maximal_subgroup": True}
        out.update(extra)
        if full:
            rep = is_maximal_coclique(S, kind, p, budget, symmetry=symmetry, subgroup=subgroup)
            out["maximal_coclique"] = rep.is_maximal
            out["extender"] = str(rep.extending_element) if rep.extending_element is not None else None
        else:
            out["maximal_coclique"] = None
        return out

    def nonid(H):
        return {g for g in H.elements() if not g.is_identity()} if full else set()

    rows = []
    for k in range(p // 2 + 1, p):
        s = Scenario(p, k, kind)
        st = theorem_status(p, k, kind)
        r = row(f"(S_{k} x S_{p - k}) ∩ G", s.M, nonid(s.M), s.M, s.M, predicted=st.maximal)
        r["agrees"] = r["maximal_coclique"] == st.maximal if full else None
        rows.append(r)
    A = build_agl1(p)
    H = A.group if kind == "sym" else A.even_part()
    r = row("AGL_1(p) ∩ G", H, nonid(H), H, H)
    if kind == "alt" and p in _AGL_NOT_MAXIMAL_IN_ALT:
        r["maximal_subgroup"] = False
        r["note"] = _AGL_NOT_MAXIMAL_IN_ALT[p]
    rows.append(r)
    if kind == "sym":
        Ap = alternating_group(p)
        rows.append(row("A_p", Ap, nonid(Ap), G, Ap))
    exceptions = [r["subgroup"] for r in rows if r["maximal_subgroup"] and r["maximal_coclique"] is False]
    omitted = ["Mathieu and projective actions are not constructed"]
    if not full:
        omitted.append(f"no element sweeps at p={p}: verdicts are left as null")
    return {
        "p": p,
        "kind": kind,
        "excluded_prime": is_excluded_prime(p).to_json(),
        "subgroups": rows,
        "exceptions": exceptions,
        "omitted": omitted,
    }


# AGL_1(p) ∩ A_p sits inside a larger proper subgroup of A_p for these p
_AGL_NOT_MAXIMAL_IN_ALT = {
    7: "contained in PSL_3(2) acting on the 7 points of the Fano plane",
    11: "contained in PSL_2(11) acting on 11 points",
    17: "contained in PΓL_2(16) = PSL_2(16):4 acting on the projective line",
    23: "contained in M_23",
}
