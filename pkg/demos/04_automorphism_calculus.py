#!/usr/bin/env python3
# Automorphisms in normal form (inner, ring, graph) and their algebra.

import random

from chevtwist import Fq, GroupAut, GroupCtx, GroupKind, aut_order_on, b_matrix, generators

F3, F9 = Fq(3), Fq(3, 2)
rng = random.Random(0)

sl3 = GroupCtx(GroupKind.sl(3), F9)
gens = generators(sl3)
rand = lambda: sl3.identity() * gens[rng.randrange(len(gens))] * gens[rng.randrange(len(gens))]

eps = GroupAut(sl3, graph="tinv")        # transpose inverse
rho = GroupAut(sl3, ring=1)              # entrywise Frobenius
x = rand()
ix = GroupAut(sl3, inner=x)              # conjugation by x

g = rand()
print("eps is an involution:", eps(eps(g)) == g)
print("eps and rho commute pointwise:", eps(rho(g)) == rho(eps(g)))

# composition stays in normal form; inner parts shift through outer parts
sigma = eps.compose(ix)
tau = GroupAut(sl3, inner=eps(x)).compose(eps)
print("sigma.conj_x == conj_{sigma(x)}.sigma as data:", sigma == tau)
print("and pointwise:", sigma(g) == tau(g))

# orders measured on the full finite group
from chevtwist import enumerate_group
sl2_9 = GroupCtx(GroupKind.sl(2), F9)
frob = GroupAut(sl2_9, ring=1)
print("order of Frobenius on SL_2(F_9):", aut_order_on(frob, enumerate_group(sl2_9).elements()))

# even orthogonal groups carry the reflection graph automorphism
so6 = GroupCtx(GroupKind.so_even(3), F3)
B = b_matrix(3, F3)
print("reflection matrix determinant:", B.det(), "(outside the group, so the twist is outer)")
tau_B = GroupAut(so6, graph="B")
h = so6.identity()
for _ in range(4):
    h = h * generators(so6)[rng.randrange(len(generators(so6)))]
print("conjugation by the reflection preserves membership:", tau_B(h).ctx == so6)
