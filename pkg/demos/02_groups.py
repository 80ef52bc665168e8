"""
Groups from generators
======================

Exact orders from a stabiliser chain, block systems and the pair test.
"""

from cogen.groups import PermutationGroup, generates_pair, is_primitive, minimal_block_system
from cogen.perm import parse_cycles

n = 6
C6 = PermutationGroup([parse_cycles("(1,2,3,4,5,6)", n)])
print("order of C6:", C6.order())
print("finest blocks joining 1 and 3:", minimal_block_system(C6, 1, 3).as_lists())

G = PermutationGroup([parse_cycles("(1,2)", n), parse_cycles("(1,2,3,4,5,6)", n)])
print("<(1,2), (1,...,6)> has order", G.order(), "primitive:", is_primitive(G)[0])

out = generates_pair(parse_cycles("(1,2,3)", 5), parse_cycles("(1,2,3,4,5)", 5), "alt")
print("<(1,2,3), (1,2,3,4,5)>:", out.verdict, out.order)
