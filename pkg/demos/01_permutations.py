"""
Permutations in cycle notation
==============================

Parsing, the right action, conjugation and parity on S_n.
"""

from cogen.perm import Permutation, parse_cycles, cycle_type

a = parse_cycles("(1,2,3)", 5)
b = parse_cycles("(1,2)", 5)

# the product a*b applies a first, then b
print("a*b =", a * b)
print("1^(a*b) =", (a * b)(1))

# x^h = h^-1 x h relabels the points of x by h
x = parse_cycles("(1,2)(3,4,5)", 5)
h = parse_cycles("(1,5)", 5)
print("x^h =", x ^ h, "type", cycle_type(x ^ h))

print("parity of (1,2,3)(4,5):", parse_cycles("(1,2,3)(4,5)", 6).parity())
print("identity prints as", Permutation.identity(4))
