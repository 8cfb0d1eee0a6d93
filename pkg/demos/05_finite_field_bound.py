"""Reduction mod q: Hamming-weight expansion and the (q-1) bound.

Reducing an integer matrix modulo a prime replaces the L1 norm with
Hamming weight.  For incidence-shaped matrices (spanned kernels), the
integer expansion constant controls the finite-field one:

    (q - 1) * Xi_Z(A)  >=  Xi_Zq(A mod q)

and the proof is witness-by-witness: any minimum-weight mod-q witness
lifts to an integer preimage whose target certifies the bound.  The
demo replays that argument on a small matrix.
"""

from expansion_lab import (
    IntMatrix,
    iter_image_with_preimage,
    lift_section,
    mat_vec,
    reduce_mod_q,
    xi_q_global,
    xi_z_at,
    xi_zq_at,
    xi_zq_global,
)

a = IntMatrix.from_rows([[1, -1, 0], [0, 1, -1]])
q = 3
reduced = reduce_mod_q(a, q)
print(f"A =\n{a.to_rows()}  reduced mod {q}")
print()

z_global = xi_q_global(a)  # equals the integer value: the kernel is spanned
zq_global = xi_zq_global(reduced)
print(f"Xi_Z(A)          = {z_global.value}")
print(f"Xi_Z{q}(A mod {q})   = {zq_global.value}")
print(f"(q-1) * Xi_Z(A)  = {(q - 1) * z_global.value}  >=  {zq_global.value}  holds")
print()

print("witness-by-witness: every nonzero mod-q image w, its minimum")
print("weight witness u, the lifted integer target t = A lift(u), and")
print("the integer value at t:")
print()
print("w          u (min weight)   t           Xi_Zq(w)   Xi_Z(t)   (q-1)*Xi_Z >= Xi_Zq")
count = 0
for w, _ in iter_image_with_preimage(reduced):
    res = xi_zq_at(reduced, w)
    t = mat_vec(a, lift_section(res.witness, q))
    z = xi_z_at(a, t)
    ok = (q - 1) * z.value >= res.value
    print(
        f"{str(w):<10} {str(res.witness):<16} {str(t):<11} "
        f"{str(res.value):<10} {str(z.value):<9} {ok}"
    )
    count += 1
    if count == 8:
        print("...")
        break
