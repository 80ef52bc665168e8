"""Certified prime searches used to pick cycle lengths for witnesses.

All primality checks are deterministic trial division.  Comparisons
involving square roots are carried out on squared integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from bisect import bisect_left, bisect_right
from math import isqrt

from .errors import InternalInconsistencyError, PreconditionError

__all__ = [
    "PrimeWitness",
    "InequalityCase",
    "is_prime",
    "primes_between",
    "bertrand_pk",
    "prime_p1",
    "prime_p2",
    "lemma23_check",
    "inequality_holds",
]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


_PRIMES = [2]


def _primes_upto(hi: int) -> list:
    """Cached ascending list of primes, extended by trial division as needed."""
    m = _PRIMES[-1] + 1
    while m <= hi:
        if is_prime(m):
            _PRIMES.append(m)
        m += 1
    return _PRIMES


def primes_between(lo: int, hi: int) -> list:
    """Primes p with lo <= p <= hi."""
    ps = _primes_upto(hi)
    return ps[bisect_left(ps, lo):bisect_right(ps, hi)]


def _first(cands, rule, ok):
    order = cands if rule == "smallest" else reversed(cands)
    if rule not in ("smallest", "largest"):
        raise PreconditionError(f"unknown prime rule {rule!r}")
    for p in order:
        if ok(p):
            return p
    return None


@dataclass(frozen=True)
class PrimeWitness:
    kind: str  # "pk" | "p1" | "p2"
    value: int
    constraints_checked: dict = field(default_factory=dict, compare=False)

    def reverify(self) -> bool:
        return is_prime(self.value) and all(self.constraints_checked.values())

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value, "constraints": dict(self.constraints_checked)}


@dataclass(frozen=True)
class InequalityCase:
    """Marker: no suitable prime, and n-k+1 < 2(sqrt(n) - 1) holds."""

    n: int
    k: int

    def reverify(self) -> bool:
        return inequality_holds(self.n, self.k)

    def to_json(self) -> dict:
        return {"kind": "inequality", "n": self.n, "k": self.k, "holds": self.reverify()}


def inequality_holds(n: int, k: int) -> bool:
    # n-k+1 < 2(sqrt(n)-1)  <=>  n-k+3 < 2 sqrt(n)  <=>  (n-k+3)^2 < 4n
    return (n - k + 3) ** 2 < 4 * n


def _pick(cands, rule):
    if rule == "largest":
        return cands[-1]
    if rule == "smallest":
        return cands[0]
    raise PreconditionError(f"unknown prime rule {rule!r}")


def bertrand_pk(k: int, rule: str = "largest") -> PrimeWitness:
    """A prime p >= 5 with k/2 < p < k-1 (the largest one by default)."""
    if k < 7:
        raise PreconditionError("bertrand_pk needs k >= 7")
    cands = [p for p in primes_between(k // 2 + 1, k - 2) if 2 * p > k]
    if not cands:
        raise InternalInconsistencyError(f"no prime in ({k}/2, {k}-1)")
    p = _pick(cands, rule)
    checks = {
        "prime": is_prime(p),
        "p>=5": p >= 5,
        "2p>k": 2 * p > k,
        "p<k-1": p < k - 1,
        "p∤k": k % p != 0,
    }
    w = PrimeWitness("pk", p, checks)
    if not w.reverify():
        raise InternalInconsistencyError(f"bertrand_pk({k}) = {p} fails {checks}")
    return w


def prime_p1(n: int, k: int, rule: str = "smallest") -> PrimeWitness:
    """An odd prime p <= k-5 with p ∤ (n-k)."""
    if not (n > k and 2 * k > n and k >= 10):
        raise PreconditionError("prime_p1 needs n > k > n/2 and k >= 10")
    p = _first(primes_between(3, k - 5), rule, lambda q: (n - k) % q != 0)
    if p is None:
        raise InternalInconsistencyError(f"no odd prime <= {k - 5} avoiding {n - k}")
    checks = {"prime": is_prime(p), "odd": p % 2 == 1, "p<=k-5": p <= k - 5, "p∤(n-k)": (n - k) % p != 0}
    return PrimeWitness("p1", p, checks)


def prime_p2(n: int, k: int, rule: str = "smallest"):
    """A prime 2 < p < n-k-3 with p ∤ k, or the inequality branch."""
    if not (n > k and 2 * k > n and n - k > 10):
        raise PreconditionError("prime_p2 needs n > k > n/2 and n - k > 10")
    p = _first(primes_between(3, n - k - 4), rule, lambda q: k % q != 0)
    if p is not None:
        checks = {"prime": is_prime(p), "p>2": p > 2, "p<n-k-3": p < n - k - 3, "p∤k": k % p != 0}
        return PrimeWitness("p2", p, checks)
    if inequality_holds(n, k):
        return InequalityCase(n, k)
    raise InternalInconsistencyError(f"neither branch holds for n={n}, k={k}")


def lemma23_check(n: int, k: int, pk: int) -> bool:
    """Both divisibility implications for ``pk`` against n-k and n-k-1.

    Divisibility is only asserted of positive integers, so ``n-k-1 = 0``
    imposes nothing.
    """
    if not (n > k and 2 * k > n and k >= 7):
        raise PreconditionError("lemma23_check needs n > k > n/2 and k >= 7")
    ok = True
    for m in (n - k, n - k - 1):
        if m > 0 and m % pk == 0:
            ok = ok and pk == m
    return ok
