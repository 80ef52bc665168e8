"""
Cocliques in the generating graph
=================================

Maximality of M, the closures at small degree and the survivor search.
"""

from cogen.coclique import coclique_closure, is_maximal_coclique, reproduce_lemma_3_2, theorem_status
from cogen.witness import Scenario

for n, k, kind in [(7, 5, "sym"), (6, 4, "sym"), (5, 3, "alt")]:
    s = Scenario(n, k, kind)
    S = {g for g in s.M.elements() if not g.is_identity()}
    rep = is_maximal_coclique(S, kind, n, symmetry=s.M, subgroup=s.M)
    print(f"{kind}({n},{k}): maximal={rep.is_maximal} predicted {theorem_status(n, k, kind)}"
          f" extender={rep.extending_element}")

c = coclique_closure(Scenario(6, 4, "sym"))
print("closure of sym(6,4):", len(c), "elements, certified", c.certified)

r = reproduce_lemma_3_2(8)
print("classes without a witness for n <= 8:")
for row in r["survivors"]:
    print("  ", *row)
print("matches the expected list:", r["match"])
