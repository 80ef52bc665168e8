"""
Prime degree
============

AGL_1(p), the excluded primes and the small-p coclique checks.
"""

from cogen.prime_degree import build_agl1, is_excluded_prime, prime_degree_check, verify_agl_facts

A = build_agl1(7)
print("AGL_1(7) has order", A.group.order())
print(verify_agl_facts(13))

for p in (5, 7, 11, 13, 31):
    e = is_excluded_prime(p)
    print(p, "excluded" if e.excluded else "qualifies", e.witness or "")

r = prime_degree_check(5, "alt")
for row in r["subgroups"]:
    print(f"  {row['subgroup']:<20} order {row['order']:>3}  maximal coclique: {row['maximal_coclique']}")
print("exceptions:", r["exceptions"])
