"""Group automorphisms in normal form: inner part, ring part, graph part.

Application order is fixed: graph first, then ring, then inner.  The
composition law pushes inner parts to the left through the two exact
relations

    sigma . conj_x = conj_{sigma(x)} . sigma
    graph . ring   = ring . graph

both of which hold on the nose in these matrix realizations (ring maps
are entrywise, the transpose-inverse commutes with entrywise ring maps,
and the reflection matrix B has 0/1 entries fixed by every ring map).

Graph parts: "tinv" (transpose inverse) for the special linear kinds,
"B" (conjugation by the reflection matrix swapping the last hyperbolic
pair) for the even orthogonal kinds.  Other kinds admit no graph part.
"""

from __future__ import annotations

from .errors import (
    BadRank,
    IncompatibleKind,
    TrialityUnsupported,
)
from .gf import Fq
from .groups import GroupCtx, GrpElem, form_matrix, GroupKind
from .matrices import Mat
from .polyring import RingAut

GRAPH_PARTS = (None, "tinv", "B")

_GRAPH_FAMILIES = {
    "tinv": ("SL", "PSL"),
    "B": ("SOeven", "PSOeven"),
}


def b_matrix(n: int, scalars) -> Mat:
    """Reflection matrix for the even orthogonal graph automorphism.

    The permutation matrix swapping the last hyperbolic basis pair
    (coordinates n and 2n).  It is an involution, preserves the even
    orthogonal form, has determinant -1, and conjugation by it fixes
    the witness elements x_lambda.
    """
    if n < 3:
        raise BadRank("reflection matrix needs rank >= 3")
    if isinstance(scalars, Fq):
        one, zero = scalars.one, scalars.zero
    else:
        one, zero = scalars.one, scalars.zero
    size = 2 * n
    rows = [[one if i == j else zero for j in range(size)] for i in range(size)]
    rows[n - 1][n - 1] = zero
    rows[2 * n - 1][2 * n - 1] = zero
    rows[n - 1][2 * n - 1] = one
    rows[2 * n - 1][n - 1] = one
    B = Mat(rows)
    ident = Mat.identity(size, one, zero)
    assert B * B == ident, "reflection matrix is not an involution"
    A = form_matrix(GroupKind.so_even(n), n, scalars)
    assert B.transpose() * A * B == A, "reflection matrix breaks the form"
    return B


class GroupAut:
    """Composite automorphism of a group context, in normal form."""

    __slots__ = ("ctx", "inner", "ring", "graph")

    def __init__(self, ctx: GroupCtx, inner: GrpElem | None = None,
                 ring=None, graph: str | None = None):
        if graph in ("sigma", "sigma2"):
            raise TrialityUnsupported("order-three diagram symmetries are out of scope")
        if graph is not None:
            if graph not in _GRAPH_FAMILIES:
                raise IncompatibleKind(f"unknown graph part {graph!r}")
            if ctx.kind.family not in _GRAPH_FAMILIES[graph]:
                raise IncompatibleKind(
                    f"graph part {graph!r} is not an automorphism of {ctx.kind!r}"
                )
        if ring is not None:
            if ctx.is_finite:
                if not isinstance(ring, int):
                    raise IncompatibleKind("finite-field contexts take a Frobenius power")
                ring = ring % ctx.field.e
                if ring == 0:
                    ring = None
            else:
                if not isinstance(ring, RingAut):
                    raise IncompatibleKind("ring contexts take a RingAut")
                if ring.ring != ctx.scalars:
                    raise IncompatibleKind("ring automorphism of a different ring")
                if ring.is_identity:
                    ring = None
        if inner is not None:
            if inner.ctx != ctx:
                raise IncompatibleKind("inner part from a different context")
            if inner == ctx.identity():
                inner = None
        self.ctx = ctx
        self.inner = inner
        self.ring = ring
        self.graph = graph

    @classmethod
    def identity(cls, ctx: GroupCtx) -> "GroupAut":
        return cls(ctx)

    @property
    def is_identity(self) -> bool:
        return self.inner is None and self.ring is None and self.graph is None

    # -- application --

    def _apply_graph(self, mat: Mat) -> Mat:
        if self.graph is None:
            return mat
        if self.graph == "tinv":
            return mat.inverse().transpose()
        B = b_matrix(self.ctx.kind.n, self.ctx.scalars)
        return B * mat * B

    def _apply_ring(self, mat: Mat) -> Mat:
        if self.ring is None:
            return mat
        if isinstance(self.ring, int):
            k = self.ring
            return mat.map(lambda x: x.frobenius(k))
        return mat.map(self.ring)

    def outer_apply(self, g: GrpElem) -> GrpElem:
        """Graph then ring, without the inner part."""
        mat = self._apply_ring(self._apply_graph(g.mat))
        return GrpElem(self.ctx, mat, check=False)

    def __call__(self, g: GrpElem) -> GrpElem:
        if g.ctx != self.ctx:
            raise IncompatibleKind("element from a different context")
        out = self.outer_apply(g)
        if self.inner is not None:
            out = self.inner * out * self.inner.inverse()
        return out

    # -- composition --

    def compose(self, other: "GroupAut") -> "GroupAut":
        """self after other, renormalized.

        With self = conj_x . r1 . g1 and other = conj_y . r2 . g2, the
        inner part of other moves left through self's ring and graph
        parts, giving inner x * (r1.g1)(y), ring r1.r2, graph g1.g2.
        """
        if self.ctx != other.ctx:
            raise IncompatibleKind("automorphisms of different contexts")
        moved = self.outer_apply(other.inner) if other.inner is not None else None
        if self.inner is not None and moved is not None:
            inner = self.inner * moved
        else:
            inner = self.inner if moved is None else moved
        if self.ring is None:
            ring = other.ring
        elif other.ring is None:
            ring = self.ring
        elif isinstance(self.ring, int):
            ring = self.ring + other.ring
        else:
            ring = self.ring.compose(other.ring)
        if self.graph == other.graph:
            graph = None
        else:
            graph = self.graph if other.graph is None else other.graph
        return GroupAut(self.ctx, inner=inner, ring=ring, graph=graph)

    def __eq__(self, other):
        return (
            isinstance(other, GroupAut)
            and self.ctx == other.ctx
            and self.inner == other.inner
            and self.ring == other.ring
            and self.graph == other.graph
        )

    def __hash__(self):
        return hash((self.ctx, self.inner, self.ring, self.graph))

    def __repr__(self):
        parts = []
        if self.inner is not None:
            parts.append("inner")
        if self.ring is not None:
            parts.append(f"ring={self.ring!r}" if not isinstance(self.ring, int) else f"frob^{self.ring}")
        if self.graph is not None:
            parts.append(f"graph={self.graph}")
        return f"GroupAut({', '.join(parts) or 'id'})"


def aut_order_on(sigma: GroupAut, elems, cap: int = 64):
    """Least r >= 1 with sigma^r fixing every listed element; None past cap."""
    elems = list(elems)
    current = elems
    for r in range(1, cap + 1):
        current = [sigma(g) for g in current]
        if current == elems:
            return r
    return None


# ---------------------------------------------------------------------------
# text grammar: inner=<matrix>;ring=frob^r[,mobius(a,b,c,d)];graph=none|tinv|B


def render_group_aut(sigma: GroupAut) -> str:
    parts = []
    if sigma.inner is not None:
        parts.append(f"inner={sigma.inner.mat}")
    if sigma.ring is not None:
        if isinstance(sigma.ring, int):
            parts.append(f"ring=frob^{sigma.ring}")
        else:
            a, b, c, d = sigma.ring.mobius
            parts.append(f"ring=frob^{sigma.ring.frob},mobius({a},{b},{c},{d})")
    if sigma.graph is not None:
        parts.append(f"graph={sigma.graph}")
    return ";".join(parts) if parts else "id"


def parse_group_aut(text: str, ctx: GroupCtx) -> GroupAut:
    s = text.strip()
    if s in ("", "id", "identity"):
        return GroupAut.identity(ctx)
    # split on ';' but glue segments without '=' to the previous value
    # (matrix rows inside inner=... are themselves ';'-separated)
    raw = s.split(";")
    pairs = []
    for seg in raw:
        if "=" in seg.split(",")[0]:
            key, _, val = seg.partition("=")
            pairs.append([key.strip(), val])
        elif pairs:
            pairs[-1][1] += ";" + seg
        else:
            raise ValueError(f"cannot parse automorphism {text!r}")
    inner = None
    ring = None
    graph = None
    for key, val in pairs:
        if key == "inner":
            inner = ctx.parse_elem(val)
        elif key == "ring":
            ring = _parse_ring_part(val, ctx)
        elif key == "graph":
            val = val.strip()
            graph = None if val == "none" else val
        else:
            raise ValueError(f"unknown automorphism part {key!r}")
    return GroupAut(ctx, inner=inner, ring=ring, graph=graph)


def _parse_ring_part(val: str, ctx: GroupCtx):
    val = val.strip()
    frob = 0
    mobius = None
    for piece in _split_top(val):
        piece = piece.strip()
        if piece.startswith("frob^"):
            frob = int(piece[len("frob^"):])
        elif piece.startswith("frob"):
            frob = 1
        elif piece.startswith("mobius(") and piece.endswith(")"):
            body = piece[len("mobius("):-1]
            mobius = tuple(ctx.field.parse(x) for x in body.split(","))
            if len(mobius) != 4:
                raise ValueError("mobius needs four parameters")
        else:
            raise ValueError(f"unknown ring part {piece!r}")
    if ctx.is_finite:
        if mobius is not None:
            raise IncompatibleKind("mobius part needs a polynomial ring context")
        return frob
    if mobius is None:
        field = ctx.field
        mobius = (field.one, field.zero, field.zero, field.one)
    return RingAut(ctx.scalars, frob, mobius)


def _split_top(s: str):
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [x for x in out if x]
