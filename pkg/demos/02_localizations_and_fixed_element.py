#!/usr/bin/env python3
# Polynomial rings, localizations, their automorphisms, and the element
# fixed by the whole automorphism group.

from chevtwist import Fq, Poly, RatFrac, RingDesc, fixed_element, ring_automorphisms

F3 = Fq(3)
R = RingDesc(F3)                  # plain F_3[t]
R_t = RingDesc(F3, ["t"])         # F_3[t] with t inverted

t = RatFrac.t(F3)
print("is t a unit of F_3[t]?", R.is_unit(t))
print("is t a unit once inverted?", R_t.is_unit(t))
print("is t+1 in F_3[t][1/t]?", R_t.contains(1 / (t + 1)))

# the automorphisms of F_3[t] are the affine substitutions t -> a t + b
for rho in ring_automorphisms(R):
    print("  t ->", rho(t))

# inverting t enlarges the symmetry: t -> a t and t -> a / t
print("automorphisms of F_3[t][1/t]:", len(ring_automorphisms(R_t)))

# multiplying the images of t under all six affine maps gives an element
# no automorphism can move; it is divisible by t, hence never a unit
s = fixed_element(Poly.t(F3), R)
print("fixed element s =", s)
for rho in ring_automorphisms(R):
    assert rho(s) == s
print("s is fixed by all automorphisms and is_unit(s) =", R.is_unit(s))
