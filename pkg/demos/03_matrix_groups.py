#!/usr/bin/env python3
# Classical matrix groups: forms, membership, generators, closure, centers.

from chevtwist import Fq, GroupCtx, GroupKind, center, enumerate_group, generators
from chevtwist.groups import order_sl, order_sp

F3 = Fq(3)

sl2 = GroupCtx(GroupKind.sl(2), F3)
print("SL_2(F_3) generator count:", len(generators(sl2)))
G = enumerate_group(sl2)
print("closure size:", G.order, "| formula:", order_sl(2, 3))

# the symplectic group of rank 2 over F_3, matrices preserving J
sp4 = GroupCtx(GroupKind.sp(2), F3)
print("Sp_4 form matrix:")
print(" ", str(sp4.form).replace(";", "\n  "))
G4 = enumerate_group(sp4)
print("|Sp_4(F_3)| =", G4.order, "| formula:", order_sp(2, 3))

# centers solved from the joint commutation system, then filtered
print("center of SL_2(F_3):", [str(z) for z in center(sl2)])
print("center of Sp_4(F_3) size:", len(center(sp4)))
so5 = GroupCtx(GroupKind.so_odd(2), F3)
print("center of SO_5(F_3):", [str(z) for z in center(so5)])

# projective kinds store canonical coset representatives: +I and -I agree
psp4 = GroupCtx(GroupKind.psp(2), F3)
neg = psp4.elem([[2 if i == j else 0 for j in range(4)] for i in range(4)])
print("in PSp_4, -I equals I:", neg == psp4.identity())
print("|PSp_4(F_3)| =", enumerate_group(psp4).order)
