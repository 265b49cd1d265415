#!/usr/bin/env python3
# Exact arithmetic in small finite fields: construction, Frobenius, text form.

from chevtwist import Fq

F3 = Fq(3)        # the prime field F_3; modulus recorded as t
F9 = Fq(3, 2)     # F_9 = F_3[w] with w^2 = -1 (least irreducible: t^2 + 1)
print("F9 modulus coefficients (constant term first):", F9.modulus)

i = F9.elem((0, 1))            # the class of the generator w
print("w * w =", i * i)        # -1, printed as 2
print("w^8  =", i ** 8)        # multiplicative order divides q - 1 = 8

# Frobenius x -> x^3 is the nontrivial field symmetry of F_9
print("frobenius(w) =", i.frobenius())        # w^3 = -w
print("frobenius twice is the identity:", i.frobenius(2) == i)

# every element is a polynomial in w with coefficients mod 3
for x in F9.elements():
    assert x ** 9 == x                        # the field-defining identity
print("all", F9.q, "elements satisfy x^q = x")

# text form round-trips through the parser
x = F9.elem((1, 2))
print("text form of (1,2):", x, "| parsed back equal:", F9.parse(str(x)) == x)
