"""Permutations of {1..n} under the right action.

Points are 1-based in the public API.  Products follow the exponent
convention: ``p ** (a * b) == (p ** a) ** b``, i.e. ``a`` is applied first,
and conjugation is ``x ^ h == ~h * x * h``.

Internally a permutation keeps a 0-based image tuple ``_a`` so that the
group algorithms can compose with plain tuple indexing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _iter_perms
from math import gcd
from typing import Iterable, Sequence

from .errors import DegreeMismatchError, ParseError, PreconditionError

__all__ = [
    "Permutation",
    "CycleType",
    "parse_cycles",
    "format_cycles",
    "compose",
    "conjugate",
    "cycle_type",
    "parity",
    "parity_by_transpositions",
    "parity_by_cycle_count",
    "support_and_fix",
    "select_points",
]


def _compose_raw(a, b):
    # point p goes to b[a[p]]
    return tuple(map(b.__getitem__, a))


def _invert_raw(a):
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _cycles_raw(a, include_fixed=False):
    n = len(a)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = 1
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = 1
            j = a[j]
        if include_fixed or len(cyc) > 1:
            out.append(cyc)
    return out


class Permutation:
    """An immutable permutation of ``{1, ..., degree}``.

    >>> x = Permutation.from_cycles([(1, 2, 3)], 4)
    >>> x.image(3)
    1
    >>> str(x * Permutation.from_cycles([(1, 2)], 4))
    '(1,3)'
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Iterable[int]):
        a = tuple(int(v) - 1 for v in images)
        n = len(a)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(a) != list(range(n)):
            raise ValueError(f"images {tuple(v + 1 for v in a)} are not a bijection of 1..{n}")
        self._a = a
        self._hash = None

    @classmethod
    def _raw(cls, a: tuple) -> "Permutation":
        # trusted constructor from a 0-based tuple
        p = object.__new__(cls)
        p._a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise ValueError("degree must be at least 1")
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        a = list(range(n))
        seen = set()
        for cyc in cycles:
            for v in cyc:
                if not 1 <= v <= n:
                    raise ValueError(f"point {v} outside 1..{n}")
                if v in seen:
                    raise ValueError(f"point {v} repeated")
                seen.add(v)
            for i, v in enumerate(cyc):
                a[v - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls._raw(tuple(a))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        return parse_cycles(text, n)

    # -- basic data --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple:
        """1-based image sequence: ``images[i - 1]`` is the image of ``i``."""
        return tuple(v + 1 for v in self._a)

    def image(self, point: int) -> int:
        return self._a[point - 1] + 1

    __call__ = image

    def preimage(self, point: int) -> int:
        return self._a.index(point - 1) + 1

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._a))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._a) != len(self._a):
            raise DegreeMismatchError(f"degrees {len(self._a)} and {len(other._a)} differ")
        return None

    def __mul__(self, other):
        bad = self._check(other)
        if bad is NotImplemented:
            return bad
        return Permutation._raw(_compose_raw(self._a, other._a))

    def __invert__(self):
        return Permutation._raw(_invert_raw(self._a))

    inverse = __invert__

    def __pow__(self, m: int):
        n = len(self._a)
        out = [0] * n
        for cyc in _cycles_raw(self._a, include_fixed=True):
            L = len(cyc)
            s = m % L
            for i, v in enumerate(cyc):
                out[v] = cyc[(i + s) % L]
        return Permutation._raw(tuple(out))

    def __xor__(self, h):
        """Conjugate: ``x ^ h`` is ``h^-1 x h``."""
        bad = self._check(h)
        if bad is NotImplemented:
            return bad
        # (p^h)^(x^h) = (p^x)^h
        out = [0] * len(self._a)
        ha = h._a
        for p, q in enumerate(self._a):
            out[ha[p]] = ha[q]
        return Permutation._raw(tuple(out))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._a == other._a

    def __lt__(self, other):
        return self._a < other._a

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._a)
        return self._hash

    def __reduce__(self):
        return (Permutation, (self.images,))

    # -- structure ---------------------------------------------------------

    def cycles(self, include_fixed: bool = False) -> list:
        """Cycles as 1-based tuples, each starting at its smallest point."""
        return [tuple(v + 1 for v in c) for c in _cycles_raw(self._a, include_fixed)]

    def cycle_of(self, point: int) -> tuple:
        c = [point]
        j = self.image(point)
        while j != point:
            c.append(j)
            j = self.image(j)
        return tuple(c)

    def cycle_type(self) -> "CycleType":
        return cycle_type(self)

    def parity(self) -> str:
        return parity(self)

    def is_even(self) -> bool:
        return parity(self) == "even"

    def support(self) -> frozenset:
        return frozenset(i + 1 for i, v in enumerate(self._a) if i != v)

    def fixed_points(self) -> frozenset:
        return frozenset(i + 1 for i, v in enumerate(self._a) if i == v)

    def order(self) -> int:
        out = 1
        for c in _cycles_raw(self._a):
            out = out * len(c) // gcd(out, len(c))
        return out

    def __str__(self):
        return format_cycles(self)

    def __repr__(self):
        return f"Permutation.parse({format_cycles(self)!r}, {self.degree})"


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, 1-cycles included, stored in decreasing order."""

    lengths: tuple

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(sorted(self.lengths, reverse=True)))
        if not self.lengths or min(self.lengths) < 1:
            raise ValueError("cycle lengths must be positive and nonempty")

    @property
    def total(self) -> int:
        return sum(self.lengths)

    @property
    def cycle_count(self) -> int:
        return len(self.lengths)

    @property
    def support_size(self) -> int:
        return sum(L for L in self.lengths if L > 1)

    def counts(self) -> dict:
        out = {}
        for L in self.lengths:
            out[L] = out.get(L, 0) + 1
        return out

    @classmethod
    def parse(cls, text: str) -> "CycleType":
        """Read ``"1^4·2·3^2"`` style notation (``.`` or ``*`` also separate)."""
        lengths = []
        for tok in re.split(r"[·.*\s]+", text.strip()):
            if not tok:
                continue
            base, _, exp = tok.partition("^")
            exp = exp.strip("()") or "1"
            lengths.extend([int(base)] * int(exp))
        return cls(tuple(lengths))

    def __str__(self):
        parts = []
        for L, c in sorted(self.counts().items()):
            parts.append(f"{L}^{c}" if c > 1 else f"{L}")
        return "·".join(parts)


# -- notation ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1,5)(2,6)"``.

    The empty string and ``"()"`` both denote the identity.  Points not
    named are fixed.
    """
    if degree < 1:
        raise ParseError("degree must be at least 1")
    pos = 0
    cycles = []
    seen = {}
    current = None
    expect_point = False
    end = len(text)
    while pos < end:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        lpar, rpar, comma, num = m.groups()
        if lpar:
            if current is not None:
                raise ParseError("nested '('", start)
            current = []
            expect_point = True
        elif rpar:
            if current is None:
                raise ParseError("unmatched ')'", start)
            if expect_point and current:
                raise ParseError("dangling ','", start)
            cycles.append(current)
            current = None
        elif comma:
            if current is None or expect_point:
                raise ParseError("misplaced ','", start)
            expect_point = True
        else:
            if current is None:
                raise ParseError("point outside parentheses", start)
            if not expect_point:
                raise ParseError("missing ',' between points", start)
            v = int(num)
            if v < 1 or v > degree:
                raise ParseError(f"point {v} outside 1..{degree}", start)
            if v in seen:
                raise ParseError(f"point {v} repeated", start)
            seen[v] = start
            current.append(v)
            expect_point = False
        pos = m.end()
    if current is not None:
        raise ParseError("unterminated cycle", end)
    return Permutation.from_cycles([c for c in cycles if c], degree)


def format_cycles(p: Permutation) -> str:
    """Canonical cycle notation; cycles ordered and rotated by smallest point."""
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


# -- functional forms ---------------------------------------------------------

def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``."""
    return a * b


def conjugate(x: Permutation, h: Permutation) -> Permutation:
    return x ^ h


def cycle_type(p: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in _cycles_raw(p._a, include_fixed=True)))


def parity_by_transpositions(p: Permutation) -> str:
    s = sum(len(c) - 1 for c in _cycles_raw(p._a))
    return "odd" if s % 2 else "even"


def parity_by_cycle_count(p: Permutation) -> str:
    # even iff the number of cycles (fixed points included) has the parity of n
    t = len(_cycles_raw(p._a, include_fixed=True))
    return "even" if (t - p.degree) % 2 == 0 else "odd"


def parity(p: Permutation) -> str:
    a = parity_by_transpositions(p)
    b = parity_by_cycle_count(p)
    if a != b:
        from .errors import InternalInconsistencyError

        raise InternalInconsistencyError(f"parity rules disagree on {p}")
    return a


def support_and_fix(p: Permutation) -> tuple:
    return p.support(), p.fixed_points()


# -- point selection -----------------------------------------------------------

_EXCLUDED_ONE = ("2·3^2", "3·5", "3^3")
_EXCLUDED_TWO = ("2^4",)


def _moved_type(p: Permutation) -> tuple:
    return tuple(sorted(len(c) for c in _cycles_raw(p._a)))


def select_points(x: Permutation, k: int, variant: str = "one") -> tuple:
    """Distinct support points of ``x`` avoiding ``1`` and ``k+1``.

    ``variant="one"`` returns ``(r, s, t)`` with ``r, r^x, s, s^x, t, t^x``
    pairwise distinct.  ``variant="two"`` returns ``(s, t, u, v)`` with
    ``s, s^x, t, t^x, u, v`` distinct and ``(u, v)`` not a 2-cycle of ``x``.

    The points are chosen by following the case split on the length of the
    cycle through 1; wherever that leaves a free choice the
    lexicographically smallest valid completion is taken.
    """
    n = x.degree
    if variant not in ("one", "two"):
        raise PreconditionError(f"unknown variant {variant!r}")
    if not (1 <= k < n) or x.image(1) != k + 1:
        raise PreconditionError("clause '1^x = k+1' violated")
    supp = x.support()
    if len(supp) < 8:
        raise PreconditionError("clause '|supp(x)| >= 8' violated")
    moved = _moved_type(x)
    if variant == "one" and moved in ((2, 3, 3), (3, 5), (3, 3, 3)):
        raise PreconditionError(f"clause 'C(x) not in {{1^(n-8)·2·3^2, 1^(n-8)·3·5, 1^(n-9)·3^3}}' violated by {cycle_type(x)}")
    if variant == "two" and moved == (2, 2, 2, 2):
        raise PreconditionError(f"clause 'C(x) != 1^(n-8)·2^4' violated by {cycle_type(x)}")

    orbit = x.cycle_of(1)
    L = len(orbit)
    avoid = {1, k + 1}
    T = sorted(supp - set(orbit))
    img = x.image

    def pw(m):
        return orbit[m % L]

    if variant == "one":
        if L >= 8:
            fixed = [pw(2), pw(4), pw(6)]
        elif L >= 6:
            fixed = [pw(2), pw(4)]
        elif L >= 4:
            fixed = [pw(2)]
        else:
            fixed = []
        free = 3 - len(fixed)
        used = set(avoid)
        for f in fixed:
            used.update((f, img(f)))
        for combo in _iter_perms(T, free):
            pts = list(used)
            ok = True
            for c in combo:
                pair = (c, img(c))
                if pair[0] in pts or pair[1] in pts or pair[0] == pair[1]:
                    ok = False
                    break
                pts.extend(pair)
            if ok:
                out = tuple(fixed) + combo
                _check_one(x, k, out)
                return out
        return _lex_one(x, k)

    # variant two
    if L >= 8:
        u, v, s, t = pw(2), pw(3), pw(4), pw(6)
        out = (s, t, u, v)
        _check_two(x, k, out)
        return out
    if L >= 6:
        u, v, s = pw(2), pw(3), pw(4)
        used = avoid | {u, v, s, img(s)}
        for t in T:
            if t not in used and img(t) not in used:
                out = (s, t, u, v)
                _check_two(x, k, out)
                return out
        return _lex_two(x, k)
    if L == 2:
        return _lex_two(x, k, pool=T)
    return _lex_two(x, k)


def _check_one(x, k, pts):
    r, s, t = pts
    pool = [r, x(r), s, x(s), t, x(t)]
    if len(set(pool)) != 6 or {1, k + 1} & set(pool) or not set(pool) <= x.support():
        raise PreconditionError(f"no valid (r, s, t) for {x}")


def _check_two(x, k, pts):
    s, t, u, v = pts
    pool = [s, x(s), t, x(t), u, v]
    if len(set(pool)) != 6 or {1, k + 1} & set(pool) or not set(pool) <= x.support():
        raise PreconditionError(f"no valid (s, t, u, v) for {x}")
    if x(u) == v and x(v) == u:
        raise PreconditionError(f"(u, v) = ({u}, {v}) is a cycle of {x}")


def _lex_one(x, k):
    cand = sorted(x.support() - {1, k + 1})
    for r, s, t in _iter_perms(cand, 3):
        pool = [r, x(r), s, x(s), t, x(t)]
        if len(set(pool)) == 6 and not ({1, k + 1} & set(pool)):
            return (r, s, t)
    raise PreconditionError(f"no valid (r, s, t) for {x}")


def _lex_two(x, k, pool=None):
    cand = sorted(pool if pool is not None else x.support() - {1, k + 1})
    for s, t in _iter_perms(cand, 2):
        base = [s, x(s), t, x(t)]
        if len(set(base)) != 4 or {1, k + 1} & set(base):
            continue
        rest = [c for c in cand if c not in base]
        for u, v in _iter_perms(rest, 2):
            if x(u) == v and x(v) == u:
                continue
            return (s, t, u, v)
    raise PreconditionError(f"no valid (s, t, u, v) for {x}")
