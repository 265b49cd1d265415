"""Polynomials F_q[t], reduced fractions, localizations, ring automorphisms.

Rings R with F_q[t] contained in R and R properly contained in F_q(t) are
represented exactly as localizations of F_q[t] at a finite set of monic
irreducibles (RingDesc).  Every intermediate ring of that shape is such a
localization, and finiteness of the denominator set encodes the proper
containment in F_q(t).

Factorization is trial division against sieve-generated irreducibles; all
inputs here stay at small degree, so no clever algorithms are needed.
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import (
    CapExceeded,
    MixedFields,
    NotInRing,
    NotStabilizing,
    Singular,
    UnitInput,
    Unsupported,
    ZeroPolynomial,
)
from .gf import Fq, FqElem

FACTOR_DEGREE_CAP = 64
_SIEVE_BUDGET = 2_000_000
VAR = "t"


class Poly:
    """Univariate polynomial over F_q, coefficients little endian in t."""

    __slots__ = ("field", "_codes")

    def __init__(self, field: Fq, codes):
        codes = list(codes)
        while codes and codes[-1] == 0:
            codes.pop()
        self.field = field
        self._codes = tuple(codes)

    # -- constructors --

    @classmethod
    def from_elems(cls, field: Fq, elems) -> "Poly":
        return cls(field, [field.elem(c).code for c in elems])

    @classmethod
    def zero(cls, field: Fq) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Fq) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def t(cls, field: Fq) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Fq, value) -> "Poly":
        return cls(field, (field.elem(value).code,))

    # -- basic structure --

    @property
    def coeffs(self):
        return tuple(self.field.from_code(c) for c in self._codes)

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._codes) - 1

    @property
    def is_zero(self) -> bool:
        return not self._codes

    @property
    def is_one(self) -> bool:
        return self._codes == (1,)

    def is_constant(self) -> bool:
        return len(self._codes) <= 1

    def leading_coeff(self) -> FqElem:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.field.from_code(self._codes[-1])

    def is_monic(self) -> bool:
        return bool(self._codes) and self._codes[-1] == 1

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lc = self._codes[-1]
        if lc == 1:
            return self
        inv = int(self.field._inv[lc])
        mul = self.field._mul
        return Poly(self.field, [int(mul[c, inv]) for c in self._codes])

    # -- arithmetic --

    def _check(self, other):
        if self.field != other.field:
            raise MixedFields("polynomials over different fields")

    def __add__(self, other):
        other = _as_poly(self.field, other)
        if other is None:
            return NotImplemented
        self._check(other)
        add = self.field._add
        a, b = self._codes, other._codes
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = int(add[out[i], c])
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field._neg
        return Poly(self.field, [int(neg[c]) for c in self._codes])

    def __sub__(self, other):
        other = _as_poly(self.field, other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(self.field, other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(self.field, other)
        if other is None:
            return NotImplemented
        self._check(other)
        a, b = self._codes, other._codes
        if not a or not b:
            return Poly.zero(self.field)
        f = self.field
        if f.e == 1 and len(a) >= 8 and len(b) >= 8:
            # prime field: exact integer convolution, reduced mod p
            conv = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
            return Poly(f, (conv % f.p).tolist())
        mul, add = f._mul, f._add
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = int(add[out[i + j], mul[x, y]])
        return Poly(f, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial; use RatFrac")
        acc = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __divmod__(self, other):
        other = _as_poly(self.field, other)
        if other is None:
            return NotImplemented
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        mul, add, neg, invt = f._mul, f._add, f._neg, f._inv
        db = other.degree()
        lead_inv = int(invt[other._codes[-1]])
        rem = list(self._codes)
        if len(rem) - 1 < db:
            return Poly.zero(f), self
        quot = [0] * (len(rem) - db)
        while len(rem) - 1 >= db and rem:
            c = int(mul[rem[-1], lead_inv])
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, bc in enumerate(other._codes):
                rem[shift + i] = int(add[rem[shift + i], neg[int(mul[c, bc])]])
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(f, quot), Poly(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def evaluate(self, x: FqElem) -> FqElem:
        acc = self.field.zero
        for code in reversed(self._codes):
            acc = acc * x + self.field.from_code(code)
        return acc

    def __bool__(self):
        return bool(self._codes)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self._codes == other._codes
        )

    def __hash__(self):
        return hash((self.field, self._codes))

    def sort_key(self):
        return (self.degree(), self._codes)

    # -- text form --

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self._codes) - 1, -1, -1):
            code = self._codes[k]
            if not code:
                continue
            c = self.field.render(code)
            if "+" in c:
                c = f"({c})"
            if k == 0:
                terms.append(c)
            else:
                var = VAR if k == 1 else f"{VAR}^{k}"
                terms.append(var if c == "1" else f"{c}*{var}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({self})"


def _as_poly(field, other):
    if isinstance(other, Poly):
        return other
    if isinstance(other, (int, FqElem)):
        return Poly.const(field, other)
    return None


def parse_poly(field: Fq, text: str) -> Poly:
    """Parse the c_k*t^k+...+c_0 grammar (whitespace tolerated)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out = Poly.zero(field)
    for term in _split_terms(s):
        coef_text, k = _split_power(term)
        c = field.parse(coef_text) if coef_text else field.one
        mono = Poly(field, (0,) * k + (1,)) if k else Poly.one(field)
        out = out + mono * c
    return out


def _split_terms(s):
    terms, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    terms.append("".join(cur))
    return [t for t in terms if t]


def _split_power(term):
    if VAR not in term:
        return term, 0
    head, _, tail = term.partition(VAR)
    k = int(tail[1:]) if tail.startswith("^") else 1
    if head.endswith("*"):
        head = head[:-1]
    return head, k


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    f._check(g)
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


@functools.lru_cache(maxsize=None)
def monic_irreducibles(field: Fq, degree: int):
    """All monic irreducibles of the given degree, lexicographic order."""
    if field.q ** degree > _SIEVE_BUDGET:
        raise Unsupported(f"irreducible sieve budget exceeded at degree {degree}")
    smaller = [
        irr for d in range(1, degree // 2 + 1) for irr in monic_irreducibles(field, d)
    ]
    out = []
    for tail in itertools.product(range(field.q), repeat=degree):
        cand = Poly(field, tail + (1,))
        if all(not (cand % irr).is_zero for irr in smaller):
            out.append(cand)
    return tuple(out)


def is_irreducible(f: Poly) -> bool:
    deg = f.degree()
    if deg < 1:
        return False
    if deg > FACTOR_DEGREE_CAP:
        raise Unsupported(f"degree {deg} beyond factorization cap")
    for d in range(1, deg // 2 + 1):
        for irr in monic_irreducibles(f.field, d):
            if (f % irr).is_zero:
                return False
    return True


def factorize(f: Poly):
    """Multiset of (monic irreducible, multiplicity); units give [].

    The leading coefficient times the product of the factors reconstructs
    the input exactly.
    """
    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree() > FACTOR_DEGREE_CAP:
        raise Unsupported(f"degree {f.degree()} beyond factorization cap")
    rem = f.monic()
    out = []
    d = 1
    while rem.degree() > 0:
        if 2 * d > rem.degree():
            out.append((rem, 1))
            break
        for irr in monic_irreducibles(f.field, d):
            mult = 0
            while True:
                q, r = divmod(rem, irr)
                if not r.is_zero:
                    break
                rem = q
                mult += 1
            if mult:
                out.append((irr, mult))
            if rem.degree() == 0:
                break
        d += 1
    return sorted(out, key=lambda fm: fm[0].sort_key())


class RatFrac:
    """Reduced fraction num/den of polynomials; den monic, gcd(num,den)=1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        field = num.field
        if den is None:
            den = Poly.one(field)
        if num.field != den.field:
            raise MixedFields("numerator and denominator over different fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = Poly.one(field)
        elif not den.is_one:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = num // g
                den = den // g
            lc = den.leading_coeff()
            if lc != field.one:
                inv = lc.inverse()
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, field: Fq) -> "RatFrac":
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field: Fq) -> "RatFrac":
        return cls(Poly.one(field))

    @classmethod
    def t(cls, field: Fq) -> "RatFrac":
        return cls(Poly.t(field))

    @classmethod
    def const(cls, field: Fq, value) -> "RatFrac":
        return cls(Poly.const(field, value))

    @property
    def field(self) -> Fq:
        return self.num.field

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def is_poly(self) -> bool:
        return self.den.is_one

    def is_constant(self) -> bool:
        return self.den.is_one and self.num.is_constant()

    def degree(self) -> int:
        """deg(num) - deg(den); -1 stands in for the zero fraction."""
        if self.is_zero:
            return -1
        return self.num.degree() - self.den.degree()

    def leading_ratio(self) -> FqElem:
        return self.num.leading_coeff() / self.den.leading_coeff()

    def _coerce(self, other):
        if isinstance(other, RatFrac):
            if other.field != self.field:
                raise MixedFields("fractions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFrac(other)
        if isinstance(other, (int, FqElem)):
            return RatFrac.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one and o.den.is_one:
            return RatFrac(self.num + o.num)
        return RatFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFrac(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one and o.den.is_one:
            return RatFrac(self.num * o.num)
        return RatFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero fraction")
        return RatFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "RatFrac":
        if self.is_zero:
            raise ZeroDivisionError("zero fraction has no inverse")
        return RatFrac(self.den, self.num)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = RatFrac.one(self.field)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, (int, FqElem, Poly)):
            other = self._coerce(other)
        return (
            isinstance(other, RatFrac)
            and self.field == other.field
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def sort_key(self):
        return (self.den.degree(), self.num.degree(), self.den._codes, self.num._codes)

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return f"{self.num} / {self.den}"

    def __repr__(self):
        return f"RatFrac({self})"


def parse_frac(field: Fq, text: str) -> RatFrac:
    if "/" in text:
        num_text, _, den_text = text.partition("/")
        return RatFrac(parse_poly(field, num_text), parse_poly(field, den_text))
    return RatFrac(parse_poly(field, text))


class RingDesc:
    """Localization of F_q[t] at a finite set of monic irreducibles.

    An empty denominator set means R = F_q[t].  Membership: f/g lies in R
    iff every irreducible factor of g is an inverted irreducible.
    """

    __slots__ = ("field", "denoms")

    def __init__(self, field: Fq, denoms=()):
        checked = []
        for d in denoms:
            if isinstance(d, str):
                d = parse_poly(field, d)
            if d.field != field:
                raise MixedFields("denominator over a different field")
            if not d.is_monic():
                raise ValueError(f"denominator {d} is not monic")
            if not is_irreducible(d):
                raise ValueError(f"denominator {d} is not irreducible")
            if d in checked:
                raise ValueError(f"duplicate denominator {d}")
            checked.append(d)
        self.field = field
        self.denoms = tuple(sorted(checked, key=lambda f: f.sort_key()))

    def contains(self, x) -> bool:
        x = self._as_frac(x)
        if x.den.is_one:
            return True
        return all(irr in self.denoms for irr, _ in factorize(x.den))

    def require_member(self, x) -> RatFrac:
        x = self._as_frac(x)
        if not self.contains(x):
            raise NotInRing(f"{x} is not in {self}")
        return x

    def is_unit(self, x) -> bool:
        """Unit test for x already in R (raises NotInRing otherwise)."""
        x = self.require_member(x)
        if x.is_zero:
            return False
        return all(irr in self.denoms for irr, _ in factorize(x.num))

    def is_unit_of(self, x) -> bool:
        """Unit test without the membership precondition: x and 1/x in R."""
        x = self._as_frac(x)
        if x.is_zero:
            return False
        return self.contains(x) and self.contains(x.inverse())

    def _as_frac(self, x) -> RatFrac:
        if isinstance(x, RatFrac):
            if x.field != self.field:
                raise MixedFields("fraction over a different field")
            return x
        if isinstance(x, Poly):
            return RatFrac(x)
        if isinstance(x, (int, FqElem)):
            return RatFrac.const(self.field, x)
        raise TypeError(f"cannot view {x!r} as a ring element")

    @property
    def zero(self) -> RatFrac:
        return RatFrac.zero(self.field)

    @property
    def one(self) -> RatFrac:
        return RatFrac.one(self.field)

    def __eq__(self, other):
        return (
            isinstance(other, RingDesc)
            and self.field == other.field
            and self.denoms == other.denoms
        )

    def __hash__(self):
        return hash((self.field, self.denoms))

    def __repr__(self):
        if not self.denoms:
            return f"RingDesc(F{self.field.q}[t])"
        inv = ", ".join(str(d) for d in self.denoms)
        return f"RingDesc(F{self.field.q}[t] localized at {{{inv}}})"


class RingAut:
    """Automorphism of a localization: Frobenius power plus a Moebius map.

    Acts on F_q by x -> x^(p^r) and on t by t -> (a t + b)/(c t + d), with
    a d - b c nonzero.  Construction verifies that the map sends the ring
    into itself: the image of t lies in R and every inverted irreducible
    maps to a unit of R.  Such a map has finite order, so stability of R
    under the map follows.
    """

    __slots__ = ("ring", "frob", "mobius", "_t_image")

    def __init__(self, ring: RingDesc, frob: int = 0, mobius=(1, 0, 0, 1)):
        field = ring.field
        a, b, c, d = (field.elem(x) for x in mobius)
        if not (a * d - b * c):
            raise Singular("Moebius parameters have zero determinant")
        # canonical representative modulo scalars: c in {0, 1}
        scale = c.inverse() if c else a.inverse()
        a, b, c, d = a * scale, b * scale, c * scale, d * scale
        self.ring = ring
        self.frob = frob % field.e
        self.mobius = (a, b, c, d)
        tpoly = Poly.t(field)
        num = tpoly * a + b
        den = tpoly * c + d
        t_image = RatFrac(num, den)
        if not ring.contains(t_image):
            raise NotStabilizing(f"t maps to {t_image}, outside {ring}")
        self._t_image = t_image
        for irr in ring.denoms:
            if not ring.is_unit_of(self._image_of_poly(irr)):
                raise NotStabilizing(f"inverted irreducible {irr} maps to a non-unit")

    @classmethod
    def identity(cls, ring: RingDesc) -> "RingAut":
        return cls(ring)

    @property
    def is_identity(self) -> bool:
        field = self.ring.field
        return self.frob == 0 and self.mobius == (field.one, field.zero, field.zero, field.one)

    def _image_of_poly(self, f: Poly) -> RatFrac:
        field = self.ring.field
        a, b, c, d = self.mobius
        tpoly = Poly.t(field)
        num_lin = tpoly * a + b
        den_lin = tpoly * c + d
        deg = f.degree()
        if deg <= 0:
            code = f._codes[0] if f._codes else 0
            return RatFrac.const(field, field.from_code(code).frobenius(self.frob))
        num = Poly.zero(field)
        den_pow = Poly.one(field)
        # Horner from the top coefficient; den_pow tracks (c t + d)^(deg - i)
        for code in reversed(f._codes):
            coef = field.from_code(code).frobenius(self.frob)
            num = num * num_lin + den_pow * coef
            den_pow = den_pow * den_lin
        return RatFrac(num, den_lin ** deg)

    def __call__(self, x) -> RatFrac:
        x = self.ring.require_member(x)
        img = self._image_of_poly(x.num)
        if not x.den.is_one:
            img = img / self._image_of_poly(x.den)
        return img

    def compose(self, other: "RingAut") -> "RingAut":
        """self after other."""
        if self.ring != other.ring:
            raise MixedFields("automorphisms of different rings")
        r1, r2 = self.frob, other.frob
        a2, b2, c2, d2 = (x.frobenius(r1) for x in other.mobius)
        a1, b1, c1, d1 = self.mobius
        # Moebius substitution composes contravariantly on parameter blocks
        a = a2 * a1 + b2 * c1
        b = a2 * b1 + b2 * d1
        c = c2 * a1 + d2 * c1
        d = c2 * b1 + d2 * d1
        return RingAut(self.ring, (r1 + r2), (a, b, c, d))

    def inverse(self) -> "RingAut":
        e = self.ring.field.e
        r = (-self.frob) % e
        a, b, c, d = self.mobius
        inv = (d, -b, -c, a)
        inv = tuple(x.frobenius(r) for x in inv)
        return RingAut(self.ring, r, inv)

    def order(self, cap: int = 10_000) -> int:
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity:
                return k
            acc = self.compose(acc)
        raise Unsupported("automorphism order exceeds cap")

    def __eq__(self, other):
        return (
            isinstance(other, RingAut)
            and self.ring == other.ring
            and self.frob == other.frob
            and self.mobius == other.mobius
        )

    def __hash__(self):
        return hash((self.ring, self.frob, self.mobius))

    def __repr__(self):
        a, b, c, d = self.mobius
        return f"RingAut(frob^{self.frob}, t -> ({a})t+({b}) / ({c})t+({d}))"


def ring_automorphisms(R: RingDesc, q_cap: int = 27):
    """All automorphisms of R, deterministic order, verified to be a group.

    The candidate pool has size e * (q^3 - q); fields past q_cap would
    make the stabilization filter crawl, so they are rejected outright.
    """
    field = R.field
    if field.q > q_cap:
        raise CapExceeded(f"automorphism enumeration capped at q <= {q_cap}")
    out = []
    for r in range(field.e):
        for mob in _pgl2_reps(field):
            try:
                out.append(RingAut(R, r, mob))
            except NotStabilizing:
                continue
    if len(out) <= 256:
        keys = {(s.frob, s.mobius) for s in out}
        for s in out:
            t = s.inverse()
            assert (t.frob, t.mobius) in keys, "automorphism set not inverse closed"
        for s in out:
            for t in out:
                u = s.compose(t)
                assert (u.frob, u.mobius) in keys, "automorphism set not closed"
    return out


def _pgl2_reps(field: Fq):
    """Coset representatives of PGL2(F_q): c in {0,1} first, then (a,b,d)."""
    elems = field.elements()
    reps = []
    one, zero = field.one, field.zero
    for b in elems:
        for d in elems:
            if d:
                reps.append((one, b, zero, d))
    for a in elems:
        for b in elems:
            for d in elems:
                if a * d - b:
                    reps.append((a, b, one, d))
    return reps


def fixed_element(f: Poly, R: RingDesc) -> RatFrac:
    """Product of the images of f under every automorphism of R.

    The result lies in R, is fixed pointwise by every automorphism of R,
    and is not a unit (any of its automorphic factors divides it).
    """
    if f.is_zero:
        raise ZeroPolynomial("fixed element needs a nonzero polynomial")
    frac = RatFrac(f)
    if R.is_unit(frac):
        raise UnitInput(f"{f} is a unit of {R}")
    auts = ring_automorphisms(R)
    s = RatFrac.one(R.field)
    for sigma in auts:
        s = s * sigma(frac)
    assert R.contains(s)
    assert not R.is_unit(s), "fixed element unexpectedly a unit"
    for sigma in auts:
        assert sigma(s) == s, "fixed element not fixed by the full group"
    return s
