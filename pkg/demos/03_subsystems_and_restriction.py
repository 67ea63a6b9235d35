"""Subsystems and restriction: two ways of producing new solutions.

A subsystem keeps the ambient space and intersects with a span; restriction
projects onto the common kernel of the subsystem and merges equal
projections.  Both preserve the vee-property, and restriction preserves the
coupling constant lambda^2 exactly.
"""

from fractions import Fraction as Q

from trigvee import extract, lambda_sq, restrict, subsystem, vee_check
from trigvee.catalog import pairing_profile
from trigvee.families import (
    covector_index,
    family_spec,
    generate,
    partition_span_indices,
    restricted_family,
)

# --- restriction of BC4 along a (2,2) partition -----------------------------
bc4 = generate(family_spec("BC", 4, r=1, s=1, q=1))
span = partition_span_indices(bc4, "BC", (2, 2))
res = restrict(bc4, subsystem(bc4, span))
print("BC4 -> (2,2) child:")
for a, c in zip(res.child.covectors, res.child.multiplicities):
    print("   %-12s multiplicity %s" % (tuple(map(str, a)), c))
table = restricted_family(family_spec("RestrictedBC", partition=(2, 2), r=1, s=1, q=1))
assert res.child.covectors == table.covectors
print("matches the closed-form table; lambda^2 =", lambda_sq(res.child), "=", lambda_sq(bc4))

# --- the E7 / A3 restriction gives the 4-dimensional 18-covector family ----
e7 = generate(family_spec("E7", t=1))


def pm(i, j, sign):
    v = [Q(0)] * 7
    v[i], v[j] = Q(1), Q(sign)
    return v


a3 = subsystem(e7, [covector_index(e7, pm(0, 1, -1)),
                    covector_index(e7, pm(1, 2, -1)),
                    covector_index(e7, pm(2, 3, -1))])
print("\nA3 subsystem of E7 has", len(a3.member_indices), "members")
child = restrict(e7, a3).child
fourdim = generate(family_spec("FourDim", r=1, s=4))
assert pairing_profile(child) == pairing_profile(fourdim)
print("E7 restricted along A3 is the FourDim(r=1, s=4) family; lambda^2 =", lambda_sq(child))

# --- subsystems are vee-systems in their own right ---------------------------
sub = subsystem(e7, [0, 5, 11, 40])
standalone = extract(e7, sub)
print("\nrandom subsystem:", len(sub.member_indices), "members, standalone vee:",
      vee_check(standalone, probe_flips=0).is_vee)
