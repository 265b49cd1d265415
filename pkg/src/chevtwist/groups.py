"""Classical matrix groups over finite fields or localizations of F_q[t].

Families: SL_n / PSL_n, Sp_2n / PSp_2n, SO_{2n+1}, SO_2n / PSO_2n, realized
with explicit bilinear forms:

  * symplectic:      J = [[0, I], [-I, 0]]
  * odd orthogonal:  A = [[0, I, 0], [I, 0, 0], [0, 0, 1]]
  * even orthogonal: A = [[0, I], [I, 0]]

Projective kinds work with canonical coset representatives modulo the
scalar center; representative selection minimizes the first nonzero entry
in a fixed total order on scalars, so equality of cosets is equality of
matrices.

Finite groups enumerate by breadth-first closure of root-subgroup
generators; the closure runs on uint8 code arrays with table-driven
matrix products, which keeps 10^4..10^5 element groups comfortable.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    NoForm,
    NotProjective,
    SizeMismatch,
    Unsupported,
)
from .gf import Fq, FqElem
from .matrices import Mat, parse_matrix, nullspace
from .polyring import RingDesc, parse_frac

FAMILIES = ("SL", "PSL", "Sp", "PSp", "SOodd", "SOeven", "PSOeven")
_PROJECTIVE = {"PSL", "PSp", "PSOeven"}
_FORMED = {"Sp", "PSp", "SOodd", "SOeven", "PSOeven"}
_MIN_RANK = {"SL": 2, "PSL": 2, "Sp": 2, "PSp": 2, "SOodd": 2, "SOeven": 3, "PSOeven": 3}

ENUM_CAP = 1_000_000
CENTER_ENUM_CAP = 10_000


@dataclass(frozen=True)
class GroupKind:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < _MIN_RANK[self.family]:
            raise ValueError(f"{self.family} needs rank >= {_MIN_RANK[self.family]}")

    @classmethod
    def sl(cls, n):
        return cls("SL", n)

    @classmethod
    def psl(cls, n):
        return cls("PSL", n)

    @classmethod
    def sp(cls, n):
        return cls("Sp", n)

    @classmethod
    def psp(cls, n):
        return cls("PSp", n)

    @classmethod
    def so_odd(cls, n):
        return cls("SOodd", n)

    @classmethod
    def so_even(cls, n):
        return cls("SOeven", n)

    @classmethod
    def pso_even(cls, n):
        return cls("PSOeven", n)

    @property
    def dim(self) -> int:
        if self.family in ("SL", "PSL"):
            return self.n
        if self.family == "SOodd":
            return 2 * self.n + 1
        return 2 * self.n

    @property
    def projective(self) -> bool:
        return self.family in _PROJECTIVE

    @property
    def formed(self) -> bool:
        return self.family in _FORMED

    @property
    def adjoint(self) -> bool:
        return self.family in ("PSL", "PSp", "SOodd", "PSOeven")

    @property
    def in_classified_range(self) -> bool:
        # the automorphism normal form is only complete for the linear
        # kinds from rank 3 up; rank 2 stays available as test plumbing
        if self.family in ("SL", "PSL"):
            return self.n >= 3
        return True

    def linear(self) -> "GroupKind":
        """The matrix group whose cosets a projective kind represents."""
        drop = {"PSL": "SL", "PSp": "Sp", "PSOeven": "SOeven"}
        if self.family in drop:
            return GroupKind(drop[self.family], self.n)
        return self

    def projectivization(self) -> "GroupKind":
        lift = {"SL": "PSL", "Sp": "PSp", "SOeven": "PSOeven", "SOodd": "SOodd"}
        if self.family not in lift:
            raise ValueError(f"{self.family} has no projective quotient here")
        return GroupKind(lift[self.family], self.n)

    def __repr__(self):
        return f"{self.family}({self.n})"


def form_matrix(kind: GroupKind, n: int, scalars) -> Mat:
    """The bilinear form attached to a formed kind, over the given scalars."""
    if not kind.formed:
        raise NoForm(f"{kind.family} carries no bilinear form")
    one, zero = _scalar_one_zero(scalars)
    if kind.family in ("Sp", "PSp"):
        rows = [[zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            rows[i][n + i] = one
            rows[n + i][i] = -one
        return Mat(rows)
    if kind.family == "SOodd":
        size = 2 * n + 1
        rows = [[zero] * size for _ in range(size)]
        for i in range(n):
            rows[i][n + i] = one
            rows[n + i][i] = one
        rows[2 * n][2 * n] = one
        return Mat(rows)
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = one
        rows[n + i][i] = one
    return Mat(rows)


def _scalar_one_zero(scalars):
    if isinstance(scalars, Fq):
        return scalars.one, scalars.zero
    if isinstance(scalars, RingDesc):
        return scalars.one, scalars.zero
    raise TypeError(f"unsupported scalar domain {scalars!r}")


class GroupCtx:
    """A group kind together with its scalar domain and form matrix."""

    __slots__ = ("kind", "scalars", "form", "_center_cache")

    def __init__(self, kind: GroupKind, scalars):
        field = scalars if isinstance(scalars, Fq) else scalars.field
        if field.p == 2:
            raise Unsupported("characteristic 2 is out of scope")
        self.kind = kind
        self.scalars = scalars
        self.form = form_matrix(kind, kind.n, scalars) if kind.formed else None
        self._center_cache = None
        if self.form is not None:
            _check_form_invariants(self.form, kind)

    @property
    def field(self) -> Fq:
        return self.scalars if isinstance(self.scalars, Fq) else self.scalars.field

    @property
    def is_finite(self) -> bool:
        return isinstance(self.scalars, Fq)

    @property
    def dim(self) -> int:
        return self.kind.dim

    @property
    def projective(self) -> bool:
        return self.kind.projective

    def scalar(self, value):
        """Coerce an int / field element / fraction into this ctx's scalars."""
        if self.is_finite:
            return self.field.elem(value)
        return self.scalars._as_frac(value)

    @property
    def one(self):
        return self.scalar(1)

    @property
    def zero(self):
        return self.scalar(0)

    def identity_mat(self) -> Mat:
        return Mat.identity(self.dim, self.one, self.zero)

    def identity(self) -> "GrpElem":
        return GrpElem(self, self.identity_mat(), check=False)

    def elem(self, rows, check: bool = True) -> "GrpElem":
        mat = rows if isinstance(rows, Mat) else Mat([[self.scalar(x) for x in r] for r in rows])
        return GrpElem(self, mat, check=check)

    def parse_elem(self, text: str) -> "GrpElem":
        if self.is_finite:
            return self.elem(parse_matrix(text, self.field.parse))
        field = self.field
        return self.elem(parse_matrix(text, lambda s: parse_frac(field, s)))

    def center_scalars(self):
        """Scalars lambda with lambda*I in the linear group of this kind."""
        if self._center_cache is None:
            out = []
            for lam in self.field.elements():
                if not lam:
                    continue
                if lam ** self.dim != self.field.one:
                    continue
                if self.kind.formed and lam * lam != self.field.one:
                    continue
                out.append(lam)
            self._center_cache = tuple(out)
        return [self.scalar(lam) for lam in self._center_cache]

    def _center_codes(self):
        self.center_scalars()
        return [lam.code for lam in self._center_cache]

    def quotient(self) -> "GroupCtx":
        return GroupCtx(self.kind.projectivization(), self.scalars)

    def __eq__(self, other):
        return (
            isinstance(other, GroupCtx)
            and self.kind == other.kind
            and self.scalars == other.scalars
        )

    def __hash__(self):
        return hash((self.kind, self.scalars))

    def __repr__(self):
        return f"GroupCtx({self.kind!r} over {self.scalars!r})"


def _check_form_invariants(form: Mat, kind: GroupKind):
    anti = kind.family in ("Sp", "PSp")
    t = form.transpose()
    assert t == (-form if anti else form), "form symmetry broken"
    assert form.det(), "form not invertible"


def is_member(ctx: GroupCtx, mat: Mat) -> bool:
    """det = 1, entries in the scalar ring, and form preservation."""
    if mat.nrows != ctx.dim or mat.ncols != ctx.dim:
        raise SizeMismatch(f"expected {ctx.dim}x{ctx.dim}, got {mat.nrows}x{mat.ncols}")
    if not ctx.is_finite:
        R = ctx.scalars
        if not all(R.contains(x) for row in mat.rows for x in row):
            return False
    if mat.det() != ctx.one:
        return False
    if ctx.form is not None:
        if mat.transpose() * ctx.form * mat != ctx.form:
            return False
    return True


def canonical_rep(ctx: GroupCtx, mat: Mat) -> Mat:
    """Canonical coset representative modulo the scalar center."""
    lams = ctx.center_scalars()
    if len(lams) == 1:
        return mat
    flat = [x for row in mat.rows for x in row]
    lead = next(x for x in flat if x)
    best = None
    best_key = None
    for lam in lams:
        key = _scalar_key(lam * lead)
        if best_key is None or key < best_key:
            best_key = key
            best = lam
    if best == ctx.one:
        return mat
    return mat * best


def _scalar_key(x):
    if isinstance(x, FqElem):
        return x.coeffs
    return x.sort_key()


class GrpElem:
    """Group member: a matrix plus its context.

    Projective contexts store the canonical coset representative, so
    equality and hashing are plain matrix comparisons.
    """

    __slots__ = ("ctx", "mat", "proj_canonical")

    def __init__(self, ctx: GroupCtx, mat: Mat, check: bool = True):
        if check and not is_member(ctx, mat):
            raise ValueError(f"matrix is not a member of {ctx!r}")
        if ctx.projective:
            mat = canonical_rep(ctx, mat)
        self.ctx = ctx
        self.mat = mat
        self.proj_canonical = ctx.projective

    def __mul__(self, other):
        if not isinstance(other, GrpElem):
            return NotImplemented
        if self.ctx != other.ctx:
            raise SizeMismatch("elements of different groups")
        return GrpElem(self.ctx, self.mat * other.mat, check=False)

    def inverse(self) -> "GrpElem":
        return GrpElem(self.ctx, self.mat.inverse(), check=False)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return GrpElem(self.ctx, self.mat ** k, check=False)

    def trace(self):
        return self.mat.trace()

    def is_identity(self) -> bool:
        return self == self.ctx.identity()

    def __eq__(self, other):
        return (
            isinstance(other, GrpElem)
            and self.ctx == other.ctx
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.ctx, self.mat))

    def __str__(self):
        return str(self.mat)

    def __repr__(self):
        return f"GrpElem({self.ctx.kind!r}, {self.mat})"


def projective_canonicalize(g: GrpElem) -> GrpElem:
    """Canonical coset representative; identity map on already-canonical input."""
    if not g.ctx.projective:
        raise NotProjective(f"{g.ctx.kind!r} is not a projective kind")
    return GrpElem(g.ctx, canonical_rep(g.ctx, g.mat), check=False)


# ---------------------------------------------------------------------------
# generators: one root subgroup element per root and nonzero parameter


def _unit_mat(ctx, entries):
    """Identity plus given (i, j, scalar) increments."""
    rows = [list(r) for r in ctx.identity_mat().rows]
    for i, j, v in entries:
        rows[i][j] = rows[i][j] + v
    return Mat(rows)


def generators(ctx: GroupCtx):
    """Root-subgroup generating set over a finite field, deterministic order."""
    if not ctx.is_finite:
        raise Unsupported("generators need finite scalars")
    field = ctx.field
    params = [a for a in field.elements() if a]
    fam, n = ctx.kind.family, ctx.kind.n
    out = []

    def emit(entries):
        out.append(GrpElem(ctx, _unit_mat(ctx, entries), check=True))

    if fam in ("SL", "PSL"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    for a in params:
                        emit([(i, j, a)])
        return out

    if fam in ("Sp", "PSp"):
        for i in range(n):
            for j in range(n):
                if i != j:
                    for a in params:
                        emit([(i, j, a), (n + j, n + i, -a)])
        for i in range(n):
            for j in range(i + 1, n):
                for a in params:
                    emit([(i, n + j, a), (j, n + i, a)])
                for a in params:
                    emit([(n + j, i, a), (n + i, j, a)])
        for i in range(n):
            for a in params:
                emit([(i, n + i, a)])
            for a in params:
                emit([(n + i, i, a)])
        return out

    # orthogonal kinds
    for i in range(n):
        for j in range(n):
            if i != j:
                for a in params:
                    emit([(i, j, a), (n + j, n + i, -a)])
    for i in range(n):
        for j in range(i + 1, n):
            for a in params:
                emit([(i, n + j, a), (j, n + i, -a)])
            for a in params:
                emit([(n + j, i, a), (n + i, j, -a)])
    if fam == "SOodd":
        last = 2 * n
        half = field.one / field.elem(2)
        for i in range(n):
            for a in params:
                emit([(i, last, a), (last, n + i, -a), (i, n + i, -(a * a) * half)])
            for a in params:
                emit([(n + i, last, a), (last, i, -a), (n + i, i, -(a * a) * half)])
    return out


# ---------------------------------------------------------------------------
# code-array machinery for finite enumeration


def mat_to_codes(mat: Mat) -> np.ndarray:
    return np.array([[x.code for x in row] for row in mat.rows], dtype=np.uint8)


def codes_to_mat(field: Fq, arr: np.ndarray) -> Mat:
    return Mat([[field.from_code(int(c)) for c in row] for row in arr])


def mul_stack(field: Fq, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(k,n,n) stack times a single (n,n) matrix, exact over F_q."""
    P = field._mul[A[:, :, :, None], B[None, None, :, :]]
    acc = P[:, :, 0, :]
    for j in range(1, A.shape[2]):
        acc = field._add[acc, P[:, :, j, :]]
    return acc


def mul_left_stack(field: Fq, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Single (n,n) matrix times a (k,n,n) stack."""
    P = field._mul[A[None, :, :, None], B[:, None, :, :]]
    acc = P[:, :, 0, :]
    for j in range(1, A.shape[1]):
        acc = field._add[acc, P[:, :, j, :]]
    return acc


def mul_pairwise(field: Fq, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Elementwise stack product: (k,n,n) times (k,n,n)."""
    P = field._mul[A[:, :, :, None], B[:, None, :, :]]
    acc = P[:, :, 0, :]
    for j in range(1, A.shape[2]):
        acc = field._add[acc, P[:, :, j, :]]
    return acc


def canonical_stack(ctx: GroupCtx, stack: np.ndarray) -> np.ndarray:
    lams = ctx._center_codes()
    if len(lams) <= 1:
        return stack
    field = ctx.field
    k = stack.shape[0]
    flat = stack.reshape(k, -1)
    rows = np.arange(k)
    pos = (flat != 0).argmax(axis=1)
    best = stack
    best_rank = field._rank[flat[rows, pos]]
    for lam in lams:
        if lam == 1:
            continue
        cand = field._mul[lam, stack]
        r = field._rank[cand.reshape(k, -1)[rows, pos]]
        mask = r < best_rank
        if mask.any():
            best = np.where(mask[:, None, None], cand, best)
            best_rank = np.where(mask, r, best_rank)
    return best


class FiniteGroup:
    """Fully enumerated finite matrix group, elements as uint8 code arrays."""

    def __init__(self, ctx: GroupCtx, codes: np.ndarray, index: dict):
        self.ctx = ctx
        self.codes = codes
        self.index = index
        self._inv = None
        self._cayley = None

    @property
    def order(self) -> int:
        return self.codes.shape[0]

    def elem(self, i: int) -> GrpElem:
        return GrpElem(self.ctx, codes_to_mat(self.ctx.field, self.codes[i]), check=False)

    def elements(self):
        return [self.elem(i) for i in range(self.order)]

    def key_of(self, arr: np.ndarray) -> bytes:
        return arr.tobytes()

    def index_of(self, g) -> int:
        if isinstance(g, GrpElem):
            arr = mat_to_codes(g.mat)
        elif isinstance(g, Mat):
            arr = mat_to_codes(canonical_rep(self.ctx, g) if self.ctx.projective else g)
        else:
            arr = g
        return self.index[arr.tobytes()]

    def indices_of_stack(self, stack: np.ndarray) -> np.ndarray:
        if self.ctx.projective:
            stack = canonical_stack(self.ctx, stack)
        idx = self.index
        return np.fromiter(
            (idx[a.tobytes()] for a in stack), dtype=np.int64, count=stack.shape[0]
        )

    def inverse_indices(self) -> np.ndarray:
        if self._inv is None:
            field = self.ctx.field
            out = np.empty(self.order, dtype=np.int64)
            for i in range(self.order):
                inv_mat = codes_to_mat(field, self.codes[i]).inverse()
                arr = mat_to_codes(inv_mat)
                if self.ctx.projective:
                    arr = mat_to_codes(canonical_rep(self.ctx, codes_to_mat(field, arr)))
                out[i] = self.index[arr.tobytes()]
            self._inv = out
        return self._inv

    def cayley(self, cap: int = 4096) -> np.ndarray:
        if self._cayley is None:
            if self.order > cap:
                raise CapExceeded(f"Cayley table for order {self.order} exceeds cap {cap}")
            field = self.ctx.field
            table = np.empty((self.order, self.order), dtype=np.int32)
            for i in range(self.order):
                prods = mul_left_stack(field, self.codes[i], self.codes)
                table[i] = self.indices_of_stack(prods)
            self._cayley = table
        return self._cayley


@functools.lru_cache(maxsize=32)
def enumerate_group(ctx: GroupCtx, cap: int = ENUM_CAP) -> FiniteGroup:
    """Breadth-first closure of the root generators; deterministic order."""
    if not ctx.is_finite:
        raise Unsupported("cannot enumerate over an infinite ring")
    field = ctx.field
    gens = [mat_to_codes(g.mat) for g in generators(ctx)]
    ident = mat_to_codes(ctx.identity().mat)
    elems = [ident]
    index = {ident.tobytes(): 0}
    frontier = ident[None, :, :]
    while frontier.shape[0]:
        prods = np.concatenate([mul_stack(field, frontier, g) for g in gens])
        if ctx.projective:
            prods = canonical_stack(ctx, prods)
        fresh = []
        for arr in prods:
            key = arr.tobytes()
            if key not in index:
                index[key] = len(elems)
                elems.append(arr)
                fresh.append(arr)
        if len(elems) > cap:
            raise CapExceeded(f"group enumeration exceeded cap {cap}")
        frontier = np.stack(fresh) if fresh else np.empty((0,) + ident.shape, dtype=np.uint8)
    return FiniteGroup(ctx, np.stack(elems), index)


# ---------------------------------------------------------------------------
# center: joint commutation system, solved linearly then filtered


def center(ctx: GroupCtx, enum_cap: int = CENTER_ENUM_CAP):
    """All members commuting with every generator (projectively for
    projective kinds: commuting up to a center scalar).

    Solved as a linear system on matrix entries, one sign branch per
    center scalar per generator, then filtered by membership.
    """
    if not ctx.is_finite:
        raise Unsupported("center computation needs finite scalars")
    field = ctx.field
    N = ctx.dim
    gens = [g.mat for g in generators(ctx)]
    lams = ctx.center_scalars() if ctx.projective else [ctx.one]

    def constraint_rows(basis_mats, g, lam):
        # rows of the map (a_k) -> sum_k a_k (M_k g - lam g M_k), flattened
        images = [(m * g) - (g * m) * lam for m in basis_mats]
        return [
            [img[r // N, r % N] for img in images] for r in range(N * N)
        ]

    std_basis = []
    for i in range(N):
        for j in range(N):
            rows = [[field.one if (r, c) == (i, j) else field.zero for c in range(N)] for r in range(N)]
            std_basis.append(Mat(rows))
    branches = [std_basis]
    for g in gens:
        new_branches = []
        for basis in branches:
            for lam in lams:
                kern = nullspace(constraint_rows(basis, g, lam))
                if not kern:
                    continue
                new_basis = []
                for vec in kern:
                    acc = None
                    for coef, m in zip(vec, basis):
                        term = m * coef
                        acc = term if acc is None else acc + term
                    new_basis.append(acc)
                new_branches.append(new_basis)
        branches = new_branches
        if not branches:
            break

    found = {}
    for basis in branches:
        dim = len(basis)
        if field.q ** dim > enum_cap:
            raise CapExceeded(f"center kernel of dimension {dim} too large to enumerate")
        import itertools as _it

        for coefs in _it.product(field.elements(), repeat=dim):
            acc = None
            for c, m in zip(coefs, basis):
                term = m * c
                acc = term if acc is None else acc + term
            if acc is None or all(not x for row in acc.rows for x in row):
                continue
            try:
                if not is_member(ctx, acc):
                    continue
            except SizeMismatch:
                continue
            g = GrpElem(ctx, acc, check=False)
            key = mat_to_codes(g.mat).tobytes()
            found.setdefault(key, g)
    ordered = sorted(found.items(), key=lambda kv: kv[0])
    return [g for _, g in ordered]


# ---------------------------------------------------------------------------
# classical order formulas (used as enumeration cross-checks)


def order_sl(n: int, q: int) -> int:
    gl = 1
    for i in range(n):
        gl *= q ** n - q ** i
    return gl // (q - 1)


def order_sp(n: int, q: int) -> int:
    """Order of Sp_2n(F_q)."""
    out = q ** (n * n)
    for i in range(1, n + 1):
        out *= q ** (2 * i) - 1
    return out
