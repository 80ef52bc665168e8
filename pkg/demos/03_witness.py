"""
Witnesses
=========

For x outside M = (S_k x S_{n-k}) ∩ G, look for y in M with <x, y> = G.
When none exists, a certificate says why.
"""

from cogen.perm import parse_cycles
from cogen.witness import Scenario, find_witness, verify_witness

s = Scenario(13, 7, "alt")
x = parse_cycles("(1,8)(2,9)", 13)
r = find_witness(x, s)
print(f"{s.kind}({s.n},{s.k}) x={x}: {r.outcome} via {r.tag}, y={r.y}")
print("order of <x,y>:", r.order_of_pair, "verified:", verify_witness(x, r.y, s))

# a crossing transposition with gcd(n, k) > 1 preserves a block system
s = Scenario(12, 8, "sym")
r = find_witness(parse_cycles("(1,9)", 12), s)
print(f"sym(12,8) x=(1,9): {r.outcome}, blocks {r.certificate['blocks']}")

# small degree: exhaustive search
s = Scenario(6, 4, "alt")
r = find_witness(parse_cycles("(1,5)(2,6)", 6), s)
print("alt(6,4) x=(1,5)(2,6):", r.outcome, "closure class", r.certificate["closure_class"])
