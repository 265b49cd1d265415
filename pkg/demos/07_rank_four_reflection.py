#!/usr/bin/env python3
# The rank-4 even orthogonal group: reflection suite on SO_8.

from chevtwist import Fq, Poly, RingDesc, WitnessConfig, d4_tau_suite, fixed_element
from chevtwist.errors import TrialityUnsupported
from chevtwist.witness import FAMILY_SO_EVEN

F3 = Fq(3)
R = RingDesc(F3, ["t"])
s = fixed_element(Poly.from_elems(F3, [1, 1]), R)   # seed t + 1, a non-unit here
print("distinguished non-unit:", s)

cfg = WitnessConfig(ring=R, s=s, family=FAMILY_SO_EVEN, n=4)
report = d4_tau_suite(cfg, k_max=3)
for name, ok in report.checks:
    print(f"  {name}: {'ok' if ok else 'FAIL'}")
print("reflection order:", report.reflection_order)
print("suite passed:", report.passed)

# the order-three diagram symmetries live on the isogeny covers, not on
# the matrix group itself; asking for them is an explicit error
try:
    d4_tau_suite(cfg, graph="sigma")
except TrialityUnsupported as exc:
    print("rotation request rejected:", exc)
