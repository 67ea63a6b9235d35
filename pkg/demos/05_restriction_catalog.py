"""Enumerate all restrictions of a root-system family up to a given corank.

Span-closed subsets ("flats") are enumerated and grouped by intrinsic
invariants; one representative per class is restricted and verified in exact
arithmetic.  Every child keeps the parent's lambda^2.
"""

from trigvee.catalog import build_catalog
from trigvee.families import family_spec, generate

cfg = generate(family_spec("F4", r=1, s=1))
cat = build_catalog(cfg, "F4", "r=1,s=1", 3)
print("F4 restriction catalog up to corank 3, parent lambda^2 =", cat.parent_lambda_sq)
print("corank  members  class size  child dim  child size  lambda^2")
for e in cat.entries:
    mark = "" if e.lambda_verified else "  (dim-1 child: no wedge constraint)"
    print("  %d       %2d      %6d        %d        %3d       %s%s" % (
        e.corank, e.n_members, e.class_size, e.child_dim, e.covector_count, e.lambda_sq, mark))
