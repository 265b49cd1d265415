"""Group contexts, forms, membership, generators, enumeration, centers."""

import random

import pytest

from chevtwist.errors import NoForm, NotProjective, SizeMismatch, Unsupported
from chevtwist.gf import Fq
from chevtwist.groups import (
    GroupCtx,
    GroupKind,
    canonical_rep,
    center,
    enumerate_group,
    form_matrix,
    generators,
    is_member,
    order_sl,
    order_sp,
    projective_canonicalize,
)
from chevtwist.matrices import Mat
from chevtwist.polyring import RatFrac, RingDesc

F3 = Fq(3, 1)
F9 = Fq(3, 2)


def test_kind_dimensions_and_bounds():
    assert GroupKind.sl(3).dim == 3
    assert GroupKind.sp(2).dim == 4
    assert GroupKind.so_odd(2).dim == 5
    assert GroupKind.so_even(3).dim == 6
    with pytest.raises(ValueError):
        GroupKind.so_even(2)
    with pytest.raises(ValueError):
        GroupKind.sl(1)
    assert not GroupKind.psl(2).in_classified_range
    assert GroupKind.psl(3).in_classified_range


def test_characteristic_two_rejected():
    with pytest.raises(Unsupported):
        GroupCtx(GroupKind.sl(2), Fq(2, 1))


def test_form_so_odd_5x5():
    ctx = GroupCtx(GroupKind.so_odd(2), F3)
    A = ctx.form
    expected = [
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 1],
    ]
    assert A == Mat([[F3.elem(v) for v in row] for row in expected])


def test_form_so_even_6x6():
    A = form_matrix(GroupKind.so_even(3), 3, F3)
    for i in range(3):
        for j in range(3):
            assert (A[i, 3 + j] == F3.one) == (i == j)
            assert (A[3 + i, j] == F3.one) == (i == j)
            assert A[i, j] == F3.zero and A[3 + i, 3 + j] == F3.zero


def test_form_sp_antisymmetric():
    A = form_matrix(GroupKind.sp(2), 2, F3)
    assert A.transpose() == -A
    assert A.det() == F3.one


def test_sl_has_no_form():
    with pytest.raises(NoForm):
        form_matrix(GroupKind.sl(3), 3, F3)


def test_membership_basics():
    ctx = GroupCtx(GroupKind.sl(2), F3)
    assert is_member(ctx, ctx.identity_mat())
    # diag(2,1) has determinant 2 over F_3
    assert not is_member(ctx, Mat([[F3.elem(2), F3.zero], [F3.zero, F3.one]]))
    ctx3 = GroupCtx(GroupKind.sl(3), F3)
    scalar2 = Mat([[F3.elem(2 if i == j else 0) for j in range(3)] for i in range(3)])
    assert not is_member(ctx3, scalar2)  # det = 8 = 2 over F_3
    with pytest.raises(SizeMismatch):
        is_member(ctx, Mat([[F3.one]]))


def test_membership_witness_so5_over_ring():
    R = RingDesc(F3)
    ctx = GroupCtx(GroupKind.so_odd(2), R)
    t = RatFrac.t(F3)
    one, zero = R.one, R.zero
    rows = [[one if i == j else zero for j in range(5)] for i in range(5)]
    rows[0][3] = -t
    rows[1][2] = t
    assert is_member(ctx, Mat(rows))


def test_membership_needs_ring_entries():
    R = RingDesc(F3)  # plain F_3[t], no inverted irreducibles
    ctx = GroupCtx(GroupKind.sl(2), R)
    t = RatFrac.t(F3)
    mat = Mat([[1 / t, R.zero], [R.zero, t]])
    assert mat.det() == R.one
    assert not is_member(ctx, mat)


def test_membership_multiplicative_closure():
    rng = random.Random(5)
    for ctx in [
        GroupCtx(GroupKind.sl(2), F9),
        GroupCtx(GroupKind.sp(2), F3),
        GroupCtx(GroupKind.so_odd(2), F3),
        GroupCtx(GroupKind.so_even(3), F3),
        GroupCtx(GroupKind.so_even(4), F3),
    ]:
        gens = generators(ctx)
        for _ in range(10):
            g = ctx.identity()
            h = ctx.identity()
            for _ in range(5):
                g = g * rng.choice(gens)
                h = h * rng.choice(gens)
            assert is_member(ctx, (g * h).mat)
            assert is_member(ctx, g.inverse().mat)


def test_generators_pass_membership():
    for ctx in [
        GroupCtx(GroupKind.sl(3), F3),
        GroupCtx(GroupKind.sp(2), F3),
        GroupCtx(GroupKind.so_odd(2), F3),
        GroupCtx(GroupKind.so_even(3), F3),
    ]:
        for g in generators(ctx):
            assert is_member(ctx, g.mat)


def test_generators_need_finite_scalars():
    with pytest.raises(Unsupported):
        generators(GroupCtx(GroupKind.sl(2), RingDesc(F3)))


def test_sl2_f3_closure_has_24_elements():
    G = enumerate_group(GroupCtx(GroupKind.sl(2), F3))
    assert G.order == 24 == order_sl(2, 3)


def test_psl2_f3_has_12_cosets():
    G = enumerate_group(GroupCtx(GroupKind.psl(2), F3))
    assert G.order == 12


def test_sp4_f3_closure_matches_formula():
    G = enumerate_group(GroupCtx(GroupKind.sp(2), F3))
    assert G.order == 51840 == order_sp(2, 3)


def test_sl2_f9_closure_matches_formula():
    G = enumerate_group(GroupCtx(GroupKind.sl(2), F9))
    assert G.order == 720 == order_sl(2, 9)


def test_enumeration_cap_is_an_error():
    from chevtwist.errors import CapExceeded

    with pytest.raises(CapExceeded):
        enumerate_group.__wrapped__(GroupCtx(GroupKind.sl(2), F3), 10)


def test_enumeration_deterministic():
    ctx = GroupCtx(GroupKind.sl(2), F3)
    a = enumerate_group.__wrapped__(ctx, 1_000_000)
    b = enumerate_group.__wrapped__(ctx, 1_000_000)
    assert (a.codes == b.codes).all()


def test_projective_canonicalize_collapses_center():
    ctx = GroupCtx(GroupKind.psp(2), F3)
    ident = ctx.identity()
    neg = ctx.elem([[2 if i == j else 0 for j in range(4)] for i in range(4)])
    assert ident == neg
    assert projective_canonicalize(neg) == projective_canonicalize(ident)


def test_projective_canonicalize_scalar_invariance():
    rng = random.Random(9)
    ctx = GroupCtx(GroupKind.psp(2), F3)
    gens = generators(ctx)
    for _ in range(10):
        g = ctx.identity()
        for _ in range(6):
            g = g * rng.choice(gens)
        scaled = canonical_rep(ctx, g.mat * F3.elem(2))
        assert scaled == g.mat
        assert canonical_rep(ctx, scaled) == scaled  # idempotent


def test_psl3_f3_center_scalars_trivial():
    # cube roots of unity over F_3: only 1, so canonicalization is identity
    ctx = GroupCtx(GroupKind.psl(3), F3)
    assert ctx.center_scalars() == [F3.one]
    mat = ctx.elem([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).mat
    assert canonical_rep(ctx, mat) == mat


def test_not_projective_error():
    g = GroupCtx(GroupKind.sl(2), F3).identity()
    with pytest.raises(NotProjective):
        projective_canonicalize(g)


def test_center_values():
    c_sl2 = center(GroupCtx(GroupKind.sl(2), F3))
    assert len(c_sl2) == 2  # scalar solutions of det = 1: +I and -I
    c_sp4 = center(GroupCtx(GroupKind.sp(2), F3))
    ident = GroupCtx(GroupKind.sp(2), F3).identity()
    neg = GroupCtx(GroupKind.sp(2), F3).elem(
        [[2 if i == j else 0 for j in range(4)] for i in range(4)]
    )
    assert set(c_sp4) == {ident, neg}
    c_so5 = center(GroupCtx(GroupKind.so_odd(2), F3))
    assert c_so5 == [GroupCtx(GroupKind.so_odd(2), F3).identity()]


def test_center_adjoint_projective_trivial():
    for kind in [GroupKind.psl(3), GroupKind.psp(2), GroupKind.pso_even(3)]:
        ctx = GroupCtx(kind, F3)
        assert center(ctx) == [ctx.identity()]


def test_center_adjoint_trivial_over_f9():
    for kind in [GroupKind.psl(3), GroupKind.so_odd(2)]:
        ctx = GroupCtx(kind, F9)
        assert center(ctx) == [ctx.identity()]


def test_grp_elem_rejects_non_member():
    ctx = GroupCtx(GroupKind.sl(2), F3)
    with pytest.raises(ValueError):
        ctx.elem([[1, 0], [0, 2]])


def test_matrix_text_roundtrip():
    ctx = GroupCtx(GroupKind.sl(2), F9)
    g = ctx.elem([[F9.elem((1, 1)), F9.one], [F9.zero, F9.elem((1, 1)) ** (-1)]])
    assert ctx.parse_elem(str(g)) == g
