"""From a crossed module to a cat1 structure and an internal groupoid.

The running example is the inclusion of A3 into S3 with conjugation.
Run with ``python3 demos/02_crossed_modules.py``.
"""

from hopfsquare import examples, groups
from hopfsquare.xmod import check_crossed_module, groupoid_check, xmod_roundtrip, xmod_to_cat1

cm = examples.named_xmod("conj_a3_s3")
print(check_crossed_module(cm).to_text())

# The semidirect product X ⋊ B carries source, target and identity maps.
c = xmod_to_cat1(cm)
print(f"total algebra of the cat1 structure has dimension {c.graph.A1.dim}")

# Composable pairs of arrows form a pullback; its dimension counts pairs of
# group elements with matching source and target.
rep = groupoid_check(c)
print(rep.summary(), "pullback dimension", rep.data["pullback_dim"])

# Going to cat1 and back recovers the crossed module exactly after transport.
print(xmod_roundtrip(cm).summary())

# A trivial map from C2 into S3 with a trivial action is not a crossed module:
# the second crossed module axiom fails and the report names the offending pair.
bad = groups.GroupCrossedModule(groups.cyclic(2), groups.symmetric(3), (0,) * 6,
                                groups.trivial_action_table(groups.cyclic(2), groups.symmetric(3)))
rep = check_crossed_module(examples.lift_group_xmod(bad, validate=False))
print("failed:", rep.failed(), "at", rep.entry("CM2").counterexample["at"])
