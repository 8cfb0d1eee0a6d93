"""Codifferentials of group presentations: braid and Steinberg families.

A presentation complex has one vertex, an edge per generator, and a
face per relator; its d1 matrix collects the exponent sums of each
relator.  Relators that are commutators contribute zero rows; the
braid relations contribute rows e_i - e_{i+1}; the Steinberg relations
contribute rows -e_(ik).  The expansion constants of these matrices
follow clean formulas in the rank n.
"""

from expansion_lab import (
    braid_presentation,
    check_incidence_rows,
    format_matrix,
    presentation_d1,
    presentation_text,
    reduce_mod_q,
    steinberg_presentation,
    xi_q_global,
    xi_z_global,
    xi_zq_global,
)

p = braid_presentation(4)
print("braid presentation, n = 4:")
print(f"  {presentation_text(p)}")
d1 = presentation_d1(p)
print("d1 (rows: relators, columns: generators):")
print(format_matrix(d1))

print("values over Q = values over Z (spanned kernels), and the mod-2")
print("value is dominated by the integer one:")
print()
print("family        n   Xi_Q = Xi_Z   Xi_Z2")
for name, build in (("braid", braid_presentation), ("steinberg", steinberg_presentation)):
    ns = range(3, 8) if name == "braid" else (3, 4)
    for n in ns:
        d1 = presentation_d1(build(n))
        check_incidence_rows(d1)
        q = xi_q_global(d1)
        z = xi_z_global(d1)
        assert q.value == z.value and z.exact
        z2 = xi_zq_global(reduce_mod_q(d1, 2))
        print(f"{name:<12} {n:>3}   {str(z.value):>8}      {z2.value}")
print()
print("braid values follow floor((n-1)/2); Steinberg values follow")
print("1/(n-2), and at these sizes the mod-2 value coincides with it.")
