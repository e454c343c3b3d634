"""Group algebras as Hopf algebras, and what the axiom checker reports.

Run with ``python3 demos/01_group_algebras.py``.
"""

from hopfsquare import groups
from hopfsquare.exactla import GF, LinMap
from hopfsquare.hopfcore import FinHopf, cgkmm_degenerate, check_hopf, group_algebra, grouplikes, primitives

S3 = groups.symmetric(3)
H = group_algebra(S3, name="K[S3]")
print(f"K[S3] has basis {list(H.labels)}")
print(check_hopf(H).to_text())

# The same group over a prime field. In characteristic 2 the axioms still hold.
print(check_hopf(group_algebra(S3, GF(2), name="K[S3] over F2")).summary())

# Group-likes are exactly the group elements, and there are no primitives,
# so the algebra is rebuilt from its group-likes alone.
print(f"{len(grouplikes(H))} group-likes, {len(primitives(H))} primitives")
print(cgkmm_degenerate(H).to_text())

# Replacing the antipode by the identity breaks the antipode axiom. The report
# names a basis vector where the two sides differ.
identity = LinMap(H.dim, H.dim, fn=lambda i: {i: 1})
broken = FinHopf(H.field, H.labels, H.mult, H.unit, H.comult, H.counit, identity, H.grouplike, "broken")
rep = check_hopf(broken)
print(rep.summary())
cx = rep.entry("antipode").counterexample
print(f"antipode fails at basis index {cx['at']}: {cx['lhs']} != {cx['rhs']}")
