"""Cocliques in the generating graph Γ(G) of G = S_n or A_n.

Two non-identity elements are adjacent in Γ(G) when they generate G.
Checks here exploit two reductions when the caller supplies them:

* ``subgroup``: a proper subgroup H of G; pairs inside H never generate.
* ``symmetry``: a group whose conjugation action preserves the set, so
  only one element per orbit needs to be examined.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Iterable, Optional

from .classes import class_signature, intransitive_class_reps
from .errors import BudgetExceededError, OutOfDomainError, PreconditionError
from .groups import PermutationGroup, _recognise_intransitive, alternating_group, generates, symmetric_group
from .perm import Permutation, _compose_raw, _invert_raw
from .witness import CLOSURE_CLASSES, Scenario, default_budget, find_witness

__all__ = [
    "CocliqueReport",
    "ClosureSet",
    "TheoremStatus",
    "group_of_kind",
    "is_coclique",
    "is_maximal_coclique",
    "coclique_closure",
    "theorem_status",
    "graph_edges",
    "edges_to_csv",
    "edges_to_dot",
    "edges_to_json",
    "reproduce_lemma_3_2",
    "EXPECTED_SURVIVORS",
]


@dataclass
class CocliqueReport:
    is_coclique: bool
    is_maximal: Optional[bool] = None
    extending_element: Optional[Permutation] = None
    blocking_pair: Optional[tuple] = None
    elements_checked: int = 0

    def to_json(self) -> dict:
        out = {"is_coclique": self.is_coclique, "is_maximal": self.is_maximal, "checked": self.elements_checked}
        if self.extending_element is not None:
            out["extender"] = str(self.extending_element)
        if self.blocking_pair is not None:
            out["blocking_pair"] = [str(p) for p in self.blocking_pair]
        return out


def group_of_kind(kind: str, n: int) -> PermutationGroup:
    if kind == "sym":
        return symmetric_group(n)
    if kind == "alt":
        return alternating_group(n)
    raise PreconditionError(f"kind must be 'sym' or 'alt', not {kind!r}")


def _check_members(S, kind, n):
    for p in S:
        if p.degree != n:
            raise PreconditionError(f"{p} does not have degree {n}")
        if p.is_identity():
            raise PreconditionError("the identity is not a vertex of the generating graph")
        if kind == "alt" and not p.is_even():
            raise PreconditionError(f"{p} is not in A_{n}")


def _conj_raw(a, h, hi):
    # h^-1 a h
    return _compose_raw(_compose_raw(hi, a), h)


def _orbit_reps(S: set, symmetry: Optional[PermutationGroup]):
    """Orbit representatives of ``S`` under conjugation, smallest first."""
    if symmetry is None:
        return sorted(S)
    gens = [(g._a, _invert_raw(g._a)) for g in symmetry.generators]
    raw = {p._a for p in S}
    seen = set()
    reps = []
    for a in sorted(raw):
        if a in seen:
            continue
        seen.add(a)
        stack = [a]
        while stack:
            c = stack.pop()
            for h, hi in gens:
                d = _conj_raw(c, h, hi)
                if d not in raw:
                    raise PreconditionError("the set is not invariant under the given symmetry group")
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        reps.append(Permutation._raw(a))
    return reps


def _proper(H: Optional[PermutationGroup], kind: str, n: int) -> Optional[PermutationGroup]:
    if H is None:
        return None
    target = factorial(n) if kind == "sym" else factorial(n) // 2
    if H.order() >= target:
        raise PreconditionError("the subgroup hint must be a proper subgroup of G")
    return H


def is_coclique(S: Iterable[Permutation], kind: str, n: int, *, symmetry=None, subgroup=None) -> CocliqueReport:
    """No two distinct members of ``S`` generate G."""
    S = set(S)
    _check_members(S, kind, n)
    H = _proper(subgroup, kind, n)
    ordered = sorted(S)
    inside = {p: (H is not None and H.contains(p)) for p in ordered}
    checked = 0
    for u in _orbit_reps(S, symmetry):
        for v in ordered:
            if v == u or (inside[u] and inside[v]):
                continue
            checked += 1
            if generates(u, v, kind):
                pair = (u, v) if u < v else (v, u)
                return CocliqueReport(False, False, None, pair, checked)
    return CocliqueReport(True, None, None, None, checked)


def _outside_reps(S: set, kind: str, n: int, symmetry):
    """One element per symmetry-orbit of G \\ (S ∪ {1})."""
    G = group_of_kind(kind, n)
    if symmetry is not None:
        rec = _recognise_intransitive(G, symmetry)
        if rec is not None:
            nn, k, kd = rec
            reps = [r.rep for r in intransitive_class_reps(nn, k, kd, crossing_only=False)]
        else:
            reps = _orbit_reps(set(G.elements()), symmetry)
    else:
        reps = sorted(G.elements())
    return [g for g in reps if not g.is_identity() and g not in S]


def is_maximal_coclique(S: Iterable[Permutation], kind: str, n: int, budget: Optional[int] = None, *,
                        symmetry=None, subgroup=None) -> CocliqueReport:
    """Coclique check, then search for an element outside ``S`` with no partner in ``S``.

    With ``symmetry`` the outside elements are scanned up to conjugacy, see
    the module notes; the extender returned is the smallest such orbit
    representative.
    """
    if budget is None:
        budget = default_budget()
    S = set(S)
    rep = is_coclique(S, kind, n, symmetry=symmetry, subgroup=subgroup)
    if not rep.is_coclique:
        return rep
    ordered = sorted(S)
    tests = 0
    checked = rep.elements_checked
    for g in _outside_reps(S, kind, n, symmetry):
        partner = False
        for s in ordered:
            if tests >= budget:
                raise BudgetExceededError(
                    f"maximality sweep exceeded {budget} generation tests",
                    partial={"tests": tests, "last_element": str(g)},
                )
            tests += 1
            if generates(g, s, kind):
                partner = True
                break
        checked += 1
        if not partner:
            return CocliqueReport(True, False, g, None, checked)
    return CocliqueReport(True, True, None, None, checked)


# -- closures of the exceptional intransitive subgroups ----------------------------

@dataclass
class ClosureSet:
    base: Scenario
    extra_class: Permutation
    elements: frozenset
    certified: bool = False
    certificate: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "scenario": self.base.to_json(),
            "extra_class": str(self.extra_class),
            "size": len(self.elements),
            "elements": sorted(str(p) for p in self.elements),
            "certified": self.certified,
            "certificate": self.certificate,
        }


def _class_under(x: Permutation, M: PermutationGroup) -> set:
    gens = [(g._a, _invert_raw(g._a)) for g in M.generators]
    seen = {x._a}
    stack = [x._a]
    while stack:
        c = stack.pop()
        for h, hi in gens:
            d = _conj_raw(c, h, hi)
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return {Permutation._raw(a) for a in seen}


def coclique_closure(s: Scenario, certify_up_to: int = 10) -> ClosureSet:
    """``(M ∪ x^M) \\ {1}`` for the exceptional scenarios.

    Up to degree ``certify_up_to`` the set is checked to be a maximal
    coclique, and every element outside M without a partner in M is
    confirmed to lie in ``x^M``, which makes it the only maximal coclique
    containing M.  Larger degrees are returned uncertified.
    """
    n, k = s.n, s.k
    if s.kind == "sym" and gcd(n, k) > 1:
        rep = f"(1,{k + 1})"
    elif (s.kind, n, k) in CLOSURE_CLASSES:
        rep = CLOSURE_CLASSES[(s.kind, n, k)]
    else:
        raise PreconditionError(f"M is already a maximal coclique for {s.kind}({n},{k})")
    x = Permutation.parse(rep, n)
    M = s.M
    elements = {g for g in M.elements() if not g.is_identity()} | _class_under(x, M)
    out = ClosureSet(s, x, frozenset(elements))
    if n > certify_up_to:
        out.certificate = {"provenance": "paper-certified", "computed": False}
        return out
    report = is_maximal_coclique(elements, s.kind, n, symmetry=M, subgroup=M)
    sig = class_signature(x, k)
    stray = []
    for r in intransitive_class_reps(n, k, s.kind):
        if find_witness(r.rep, s).outcome == "NoWitness" and class_signature(r.rep, k) != sig:
            stray.append(str(r.rep))
    out.certified = bool(report.is_coclique and report.is_maximal and not stray)
    out.certificate = {
        "provenance": "computed",
        "coclique": report.is_coclique,
        "maximal": report.is_maximal,
        "extenders_outside_class": stray,
        "unique": not stray,
    }
    return out


@dataclass(frozen=True)
class TheoremStatus:
    maximal: bool
    reason: str

    def __str__(self):
        return "Maximal" if self.maximal else f"NotMaximal({self.reason})"


def theorem_status(n: int, k: int, kind: str) -> TheoremStatus:
    """Whether M = (S_k x S_{n-k}) ∩ G is a maximal coclique, from arithmetic alone."""
    if n < 4 or not (n > k and 2 * k > n):
        raise PreconditionError(f"need n >= 4 and n > k > n/2, got n={n}, k={k}")
    if kind == "sym":
        g = gcd(n, k)
        if g > 1:
            return TheoremStatus(False, f"gcd(n,k)={g}")
        if (n, k) == (4, 3):
            return TheoremStatus(False, "(n,k)=(4,3)")
        return TheoremStatus(True, "gcd(n,k)=1")
    if kind == "alt":
        if (n, k) in ((5, 3), (6, 4)):
            return TheoremStatus(False, f"(n,k)=({n},{k})")
        return TheoremStatus(True, "(n,k) not in {(5,3),(6,4)}")
    raise PreconditionError(f"kind must be 'sym' or 'alt', not {kind!r}")


# -- the generating graph ---------------------------------------------------------

def graph_edges(kind: str, n: int) -> list:
    """All generating pairs ``(u, v)`` with ``u < v``, sorted.

    Neighbourhoods are computed once per G-conjugacy class and carried
    to the rest of the class by conjugation.
    """
    if n > 7:
        raise OutOfDomainError("graph_edges is limited to n <= 7")
    if n < 2:
        raise PreconditionError("need n >= 2")
    G = group_of_kind(kind, n)
    elems = sorted(g._a for g in G.elements())
    ident = tuple(range(n))
    verts = [a for a in elems if a != ident]
    done = set()
    edges = set()
    for u in verts:
        if u in done:
            continue
        U = Permutation._raw(u)
        nbrs = [v for v in verts if v != u and generates(U, Permutation._raw(v), kind)]
        for h in elems:
            hi = _invert_raw(h)
            uh = _conj_raw(u, h, hi)
            if uh in done:
                continue
            done.add(uh)
            for v in nbrs:
                vh = _conj_raw(v, h, hi)
                edges.add((uh, vh) if uh < vh else (vh, uh))
    return [(Permutation._raw(a), Permutation._raw(b)) for a, b in sorted(edges)]


def edges_to_csv(edges) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u", "v"])
    for u, v in edges:
        w.writerow([str(u), str(v)])
    return buf.getvalue()


def edges_to_dot(edges, name: str = "Gamma") -> str:
    lines = [f"graph {name} {{"]
    verts = sorted({p for e in edges for p in e})
    ids = {p: i for i, p in enumerate(verts)}
    for p in verts:
        lines.append(f'  v{ids[p]} [label="{p}"];')
    for u, v in edges:
        lines.append(f"  v{ids[u]} -- v{ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edges_to_json(edges) -> str:
    return json.dumps([[str(u), str(v)] for u, v in edges])


# -- small-degree survivors ---------------------------------------------------------

# (kind, n, k, class representative) left over after searching every M-class
EXPECTED_SURVIVORS = (
    ("sym", 4, 3, "(1,4)(2,3)"),
    ("alt", 5, 3, "(1,4)(2,3)"),
    ("alt", 6, 4, "(1,5)(2,6)"),
    ("sym", 6, 4, "(1,5)"),
    ("sym", 8, 6, "(1,7)"),
    ("sym", 9, 6, "(1,7)"),
    ("sym", 10, 6, "(1,7)"),
    ("sym", 10, 8, "(1,9)"),
)


def _sig_key(kind, n, k, x):
    return (kind, n, k, class_signature(x, k))


def reproduce_lemma_3_2(max_n: int, min_n: int = 4, jobs: int = 1, progress=None) -> dict:
    """Search every M-class of G \\ M for n <= max_n and list those without a witness.

    Survivors are compared with :data:`EXPECTED_SURVIVORS` as classes (by
    necklace signature), so the choice of representative is irrelevant.
    """
    if not 4 <= max_n <= 11:
        raise PreconditionError("max_n must lie in 4..11")
    tasks = []
    for n in range(min_n, max_n + 1):
        for k in range(n // 2 + 1, n):
            for kind in ("sym", "alt"):
                if kind == "alt" and k < 3:
                    continue
                tasks.append((n, k, kind))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_survivors_for, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_survivors_for(t))
            if progress is not None:
                progress(t, results[-1])
    survivors = []
    per_case = {}
    for (n, k, kind), (found, classes, tests) in zip(tasks, results):
        per_case[f"{kind}({n},{k})"] = {"classes": classes, "tests": tests, "survivors": len(found)}
        survivors.extend(found)
    survivors.sort(key=lambda r: (r[1], r[2], r[0], r[3]))
    expected = [e for e in EXPECTED_SURVIVORS if min_n <= e[1] <= max_n]
    got = {_sig_key(kind, n, k, Permutation.parse(x, n)) for kind, n, k, x in survivors}
    want = {_sig_key(kind, n, k, Permutation.parse(x, n)) for kind, n, k, x in expected}
    return {
        "max_n": max_n,
        "survivors": [list(r) for r in survivors],
        "expected": [list(e) for e in expected],
        "match": got == want and len(survivors) == len(expected),
        "cases": per_case,
    }


def _survivors_for(task):
    n, k, kind = task
    s = Scenario(n, k, kind)
    found = []
    tests = 0
    reps = intransitive_class_reps(n, k, kind)
    for r in reps:
        res = find_witness(r.rep, s)
        tests += res.tests
        if res.outcome == "NoWitness":
            found.append((kind, n, k, str(r.rep)))
    return found, len(reps), tests
