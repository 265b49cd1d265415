"""Exact arithmetic in small finite fields F_q, q = p^e.

Elements are residue classes modulo a fixed monic irreducible of degree e
over F_p, stored as integer codes 0..q-1 (base-p digits = coefficients,
constant term first).  All operations go through tables precomputed at
field construction, which keeps everything exact and fast at the desk
scale this library targets (q <= 81 by default).

The modulus is the lexicographically least monic irreducible of degree e,
coefficients compared from the constant term up.  For e = 1 this yields
the polynomial t itself, so prime fields need no special casing.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import MixedFields, NotPrime, Unsupported

DEFAULT_CAP = 81

GEN_SYMBOL = "w"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- tiny polynomial helpers over F_p (tuples of ints, constant term first) --

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return _ptrim(a)


def _divides(d, a, p):
    """Does monic d divide a over F_p?"""
    return not _pmod(a, d, p)


def _is_irreducible_fp(f, p):
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            cand = tail + (1,)
            if _divides(cand, f, p):
                return False
    return True


def _least_irreducible(p, e):
    for tail in itertools.product(range(p), repeat=e):
        cand = tail + (1,)
        if _is_irreducible_fp(cand, p):
            return cand
    raise AssertionError("no irreducible found")  # cannot happen


class Fq:
    """Descriptor for F_{p^e}: modulus choice plus arithmetic tables."""

    def __init__(self, p: int, e: int = 1, cap: int = DEFAULT_CAP):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise Unsupported("extension degree must be >= 1")
        if e > 4:
            raise Unsupported("extension degree > 4 not supported")
        q = p ** e
        if q > cap:
            raise Unsupported(f"field size {q} exceeds cap {cap}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = _least_irreducible(p, e)
        self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        digits = [self._decode(c) for c in range(q)]
        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            da = digits[a]
            for b in range(a, q):
                db = digits[b]
                s = self._encode(tuple((x + y) % p for x, y in zip(da, db)))
                add[a, b] = add[b, a] = s
                m = self._encode(_pmod(_pmul(_ptrim(da), _ptrim(db), p), self.modulus, p) + (0,) * e)
                mul[a, b] = mul[b, a] = m
        neg = np.array([self._encode(tuple((-x) % p for x in digits[a])) for a in range(q)], dtype=np.uint8)
        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            row = mul[a]
            inv[a] = int(np.nonzero(row == 1)[0][0])
        frob = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            acc = 1
            for _ in range(p):
                acc = int(mul[acc, a])
            frob[a] = acc
        self._add = add
        self._mul = mul
        self._neg = neg
        self._inv = inv
        self._frob = frob
        # rank of each code in the coefficient-lexicographic total order
        order = sorted(range(q), key=lambda c: digits[c])
        rank = np.zeros(q, dtype=np.int32)
        for pos, c in enumerate(order):
            rank[c] = pos
        self._rank = rank

    # -- code <-> coefficient digits (little endian, length e) --

    def _decode(self, code: int):
        p, e = self.p, self.e
        out = []
        for _ in range(e):
            out.append(code % p)
            code //= p
        return tuple(out)

    def _encode(self, digits) -> int:
        code = 0
        for d in reversed(digits[: self.e]):
            code = code * self.p + d
        return code

    # -- element construction --

    def from_code(self, code: int) -> "FqElem":
        return FqElem(self, code % self.q)

    def elem(self, value) -> "FqElem":
        """Build an element from an int (embedded mod p) or coefficient seq."""
        if isinstance(value, FqElem):
            if value.field != self:
                raise MixedFields("element from a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        coeffs = coeffs + (0,) * (self.e - len(coeffs))
        return FqElem(self, self._encode(coeffs))

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    def elements(self):
        """All q elements, ordered lexicographically on coefficient tuples."""
        return [self.elem(c) for c in itertools.product(range(self.p), repeat=self.e)]

    def sort_key(self, x: "FqElem"):
        return x.coeffs

    # -- text form --

    def render(self, code: int) -> str:
        digits = self._decode(code)
        terms = []
        for k in range(self.e - 1, -1, -1):
            c = digits[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                var = GEN_SYMBOL if k == 1 else f"{GEN_SYMBOL}^{k}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return "+".join(terms) if terms else "0"

    def parse(self, text: str) -> "FqElem":
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ValueError("empty field element")
        digits = [0] * self.e
        for term in s.split("+"):
            if not term:
                raise ValueError(f"bad field element {text!r}")
            if GEN_SYMBOL in term:
                coefpart, _, varpart = term.partition(GEN_SYMBOL)
                coef = int(coefpart[:-1]) if coefpart else 1
                k = int(varpart[1:]) if varpart.startswith("^") else 1
            else:
                coef = int(term)
                k = 0
            if k >= self.e:
                raise ValueError(f"{text!r} has degree >= {self.e}")
            digits[k] = (digits[k] + coef) % self.p
        return self.elem(digits)

    def __eq__(self, other):
        return (
            isinstance(other, Fq)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"Fq({self.p}, {self.e})"


class FqElem:
    """Element of an Fq field; immutable, hashable, operator based."""

    __slots__ = ("field", "code")

    def __init__(self, field: Fq, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self):
        return self.field._decode(self.code)

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise MixedFields("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, int(self.field._add[self.code, o.code]))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        return FqElem(f, int(f._add[self.code, f._neg[o.code]]))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElem(self.field, int(self.field._mul[self.code, o.code]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.code == 0:
            raise ZeroDivisionError("division by zero field element")
        f = self.field
        return FqElem(f, int(f._mul[self.code, f._inv[o.code]]))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FqElem(self.field, int(self.field._neg[self.code]))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        f = self.field
        acc, base = 1, self.code
        while k:
            if k & 1:
                acc = int(f._mul[acc, base])
            base = int(f._mul[base, base])
            k >>= 1
        return FqElem(f, acc)

    def inverse(self):
        if self.code == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FqElem(self.field, int(self.field._inv[self.code]))

    def frobenius(self, k: int = 1) -> "FqElem":
        """x -> x^(p^k); k = e gives the identity."""
        if k < 0:
            raise ValueError("frobenius power must be >= 0")
        code = self.code
        for _ in range(k % self.field.e):
            code = int(self.field._frob[code])
        return FqElem(self.field, code)

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        return (
            isinstance(other, FqElem)
            and self.field == other.field
            and self.code == other.code
        )

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.code))

    def __str__(self):
        return self.field.render(self.code)

    def __repr__(self):
        return f"FqElem({self.field!r}, {self})"
