"""
Prime choices
=============

The primes used by the witness templates, each with its own check.
"""

from cogen.primes import bertrand_pk, lemma23_check, prime_p1, prime_p2

for k in (7, 12, 20):
    w = bertrand_pk(k)
    print(f"p_k for k={k}: {w.value} (reverified {w.reverify()})")

print("p1(19,10) =", prime_p1(19, 10).value)
print("p2(40,25) =", prime_p2(40, 25).value)
# no prime fits here, so the inequality branch is returned instead
print("p2(221,210) ->", prime_p2(221, 210))
print("lemma check (13,7,5):", lemma23_check(13, 7, 5))
