"""Polynomials, fractions, localizations, ring automorphisms, fixed element."""

import random

import pytest

from chevtwist.errors import (
    NotInRing,
    NotStabilizing,
    Singular,
    UnitInput,
    ZeroPolynomial,
)
from chevtwist.gf import Fq
from chevtwist.errors import CapExceeded  # noqa: F401
from chevtwist.polyring import (
    Poly,
    RatFrac,
    RingAut,
    RingDesc,
    factorize,
    fixed_element,
    is_irreducible,
    parse_frac,
    parse_poly,
    poly_gcd,
    ring_automorphisms,
)

F3 = Fq(3, 1)
F9 = Fq(3, 2)


def P(text, field=F3):
    return parse_poly(field, text)


def test_gcd_common_root():
    g = poly_gcd(P("t^2+2"), P("t+2"))  # t^2 - 1 and t - 1 over F_3
    assert g == P("t+2")


def test_mul_identity():
    f = P("t^3+2*t")
    assert f * Poly.one(F3) == f


def test_divmod_long_division():
    q, r = divmod(P("t^2+1"), P("t+1"))
    assert q == P("t+2")
    assert r == P("2")
    # reconstruction oracle
    assert q * P("t+1") + r == P("t^2+1")


def test_divmod_random_reconstruction():
    rng = random.Random(7)
    for field in (F3, F9):
        for _ in range(40):
            f = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(0, 8))])
            g = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(1, 5))])
            if g.is_zero:
                continue
            q, r = divmod(f, g)
            assert q * g + r == f
            assert r.degree() < g.degree() or r.is_zero


def test_big_prime_field_product_matches_schoolbook():
    rng = random.Random(3)
    for _ in range(5):
        a = Poly(F3, [rng.randrange(3) for _ in range(40)])
        b = Poly(F3, [rng.randrange(3) for _ in range(35)])
        prod = a * b
        # quadratic oracle
        acc = Poly.zero(F3)
        for i, c in enumerate(a.coeffs):
            acc = acc + Poly(F3, (0,) * i + (c.code,)) * b
        assert prod == acc


def test_factorize_splits_and_irreducible():
    fac = factorize(P("t^2+2"))  # t^2 - 1 = (t+1)(t+2)
    assert fac == [(P("t+1"), 1), (P("t+2"), 1)]
    assert factorize(P("t^2+1")) == [(P("t^2+1"), 1)]
    assert factorize(P("2")) == []
    with pytest.raises(ZeroPolynomial):
        factorize(Poly.zero(F3))


def test_factorize_exhaustive_reconstruction():
    # every monic f over F_3 of degree <= 4 factors back to itself
    import itertools

    for deg in range(1, 5):
        for tail in itertools.product(range(3), repeat=deg):
            f = Poly(F3, tail + (1,))
            fac = factorize(f)
            prod = Poly.const(F3, f.leading_coeff())
            for irr, mult in fac:
                prod = prod * irr ** mult
            assert prod == f
            assert all(irr.is_monic() and is_irreducible(irr) for irr, _ in fac)


def test_fraction_canonicalization():
    rng = random.Random(11)
    for field in (F3, F9):
        for _ in range(60):
            f = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(0, 7))])
            g = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(1, 7))])
            if g.is_zero:
                continue
            x = RatFrac(f, g)
            assert x.den.is_monic()
            assert poly_gcd(x.num, x.den).degree() <= 0 or x.num.is_zero
            assert x * RatFrac(g) == RatFrac(f)


def test_fraction_field_axioms_on_samples():
    rng = random.Random(13)
    def rand_frac():
        f = Poly(F9, [rng.randrange(9) for _ in range(rng.randint(0, 4))])
        g = Poly(F9, [rng.randrange(9) for _ in range(rng.randint(1, 4))])
        return RatFrac(f, g) if not g.is_zero else RatFrac.one(F9)
    for _ in range(40):
        x, y, z = rand_frac(), rand_frac(), rand_frac()
        assert (x + y) * z == x * z + y * z
        if not x.is_zero:
            assert x / x == RatFrac.one(F9)


def test_ring_membership_and_units():
    R_t = RingDesc(F3, ["t"])
    t = RatFrac.t(F3)
    assert R_t.is_unit(t ** 5)
    assert not R_t.is_unit(t + 1)
    assert R_t.contains(1 / t)
    assert not R_t.contains(1 / (t + 1))
    with pytest.raises(NotInRing):
        R_t.is_unit(1 / (t + 1))
    R_plain = RingDesc(F3)
    assert R_plain.is_unit(RatFrac.const(F3, 2))
    assert not R_plain.is_unit(t)


def test_ring_desc_validation():
    with pytest.raises(ValueError):
        RingDesc(F3, ["t^2+2"])  # reducible
    with pytest.raises(ValueError):
        RingDesc(F3, ["2*t"])  # not monic
    with pytest.raises(ValueError):
        RingDesc(F3, ["t", "t"])  # duplicate


def test_ring_aut_validation():
    R = RingDesc(F3)
    RingAut(R, 0, (1, 1, 0, 1))  # t -> t + 1
    with pytest.raises(NotStabilizing):
        RingAut(R, 0, (0, 1, 1, 0))  # t -> 1/t leaves F_3[t]
    with pytest.raises(Singular):
        RingAut(R, 0, (1, 1, 1, 1))
    R_t = RingDesc(F3, ["t"])
    rho = RingAut(R_t, 0, (0, 1, 1, 0))  # t -> 1/t is fine on F_3[t][1/t]
    t = RatFrac.t(F3)
    assert rho(t) == 1 / t


def test_ring_aut_apply():
    R = RingDesc(F3)
    rho = RingAut(R, 0, (1, 1, 0, 1))
    t = RatFrac.t(F3)
    assert rho(t ** 2) == parse_frac(F3, "t^2+2*t+1")
    ident = RingAut.identity(R)
    assert ident(t ** 3 + 2) == t ** 3 + 2
    R_t = RingDesc(F3, ["t"])
    inv = RingAut(R_t, 0, (0, 1, 1, 0))
    assert inv(t + 1) == parse_frac(F3, "t+1 / t")


def test_ring_aut_apply_requires_membership():
    R = RingDesc(F3)
    rho = RingAut(R, 0, (1, 1, 0, 1))
    with pytest.raises(NotInRing):
        rho(1 / RatFrac.t(F3))


def test_ring_aut_respects_ring_structure():
    rng = random.Random(17)
    R_t = RingDesc(F9, ["t"])
    rho = RingAut(R_t, 1, (0, 2, 1, 0))
    def rand_member():
        num = Poly(F9, [rng.randrange(9) for _ in range(rng.randint(0, 5))])
        return RatFrac(num, Poly.t(F9) ** rng.randint(0, 3))
    for _ in range(30):
        x, y = rand_member(), rand_member()
        assert rho(x) + rho(y) == rho(x + y)
        assert rho(x) * rho(y) == rho(x * y)


def test_aut_group_f3t():
    R = RingDesc(F3)
    auts = ring_automorphisms(R)
    assert len(auts) == 6  # t -> a t + b with a in {1,2}, b in {0,1,2}
    assert any(a.is_identity for a in auts)
    images = {a(RatFrac.t(F3)) for a in auts}
    expected = {
        parse_frac(F3, text)
        for text in ["t", "t+1", "t+2", "2*t", "2*t+1", "2*t+2"]
    }
    assert images == expected


def test_aut_group_localized():
    R = RingDesc(F3, ["t"])
    auts = ring_automorphisms(R)
    # t -> a t and t -> a / t for a in {1, 2}
    assert len(auts) == 4


def test_aut_group_enumeration_cap():
    from chevtwist.errors import CapExceeded

    R81 = RingDesc(Fq(3, 4))
    with pytest.raises(CapExceeded):
        ring_automorphisms(R81)


def test_aut_group_composition_law_matches_pointwise():
    rng = random.Random(23)
    R = RingDesc(F9, ["t"])
    auts = ring_automorphisms(R)
    t = RatFrac.t(F9)
    samples = [t, t + 1, (t ** 2 + 2) / t, RatFrac.const(F9, F9.elem((1, 1)))]
    for _ in range(30):
        s1, s2 = rng.choice(auts), rng.choice(auts)
        comp = s1.compose(s2)
        for x in samples:
            assert comp(x) == s1(s2(x))


def test_fixed_element_f3t():
    s = fixed_element(Poly.t(F3), RingDesc(F3))
    assert s == parse_frac(F3, "2*t^6+2*t^4+2*t^2")
    assert s == RatFrac(Poly.from_elems(F3, [0, 0, 2, 0, 2, 0, 2]))


def test_fixed_element_is_fixed_and_nonunit():
    R = RingDesc(F3)
    s = fixed_element(Poly.t(F3), R)
    for sigma in ring_automorphisms(R):
        assert sigma(s) == s
    assert not R.is_unit(s)
    R_t = RingDesc(F3, ["t"])
    s2 = fixed_element(P("t+1"), R_t)
    for sigma in ring_automorphisms(R_t):
        assert sigma(s2) == s2
    assert not R_t.is_unit(s2)


def test_fixed_element_rejects_units():
    with pytest.raises(UnitInput):
        fixed_element(Poly.const(F3, 2), RingDesc(F3))
    with pytest.raises(UnitInput):
        fixed_element(Poly.t(F3), RingDesc(F3, ["t"]))


def test_poly_text_roundtrip():
    rng = random.Random(29)
    for field in (F3, F9):
        for _ in range(40):
            f = Poly(field, [rng.randrange(field.q) for _ in range(rng.randint(0, 6))])
            assert parse_poly(field, str(f)) == f
    x = parse_frac(F9, "t^2+(w+1)*t+2 / t^3")
    assert str(x) == "t^2+(w+1)*t+2 / t^3"
    assert parse_frac(F9, str(x)) == x
