"""Exact arithmetic over F_p: polynomials, Laurent polynomials in t and s
(s^2 = t), normalized rational functions, the degree valuation, the bar
involution t -> 1/t, and pi-adic expansion at the uniformizer pi = 1/t.

Polynomials over F_p are represented as trimmed tuples of ints in [0, p),
index = exponent.  All values are immutable; every operation is a pure
function, so everything here is safe to share between workers.
"""

from __future__ import annotations

import math
from functools import lru_cache

INF = math.inf


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError("modulus %r is not prime" % (p,))
    return p


@lru_cache(maxsize=None)
def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


# ---------------------------------------------------------------------------
# dense polynomial tuples over F_p  (index = exponent, trimmed)

def ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pdeg(a):
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def padd(a, b, p):
    n = max(len(a), len(b))
    return ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def pneg(a, p):
    return tuple((-x) % p for x in a)


def psub(a, b, p):
    return padd(a, pneg(b, p), p)


def pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return ptrim(out)


def pscale(a, c, p):
    c %= p
    if c == 0:
        return ()
    return ptrim([(x * c) % p for x in a])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    binv = inv_mod(b[-1], p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * binv) % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return ptrim(q), ptrim(a)


def pgcd(a, b, p):
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


def pmonic(a, p):
    if not a:
        return ()
    return pscale(a, inv_mod(a[-1], p), p)


def pshift(a, k):
    """Multiply by x^k (k >= 0)."""
    if not a:
        return ()
    return (0,) * k + tuple(a)


def preverse(a):
    """x^deg(a) * a(1/x), trimmed."""
    return ptrim(reversed(a))


def pevaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finite F_p-coefficient Laurent polynomial in the variable t or s.

    Canonical trimming: ``coeffs`` is empty iff the value is zero; the first
    and last coefficients are nonzero otherwise.  ``minexp`` is meaningless
    (kept 0) for the zero polynomial.
    """

    __slots__ = ("p", "var", "minexp", "coeffs")

    def __init__(self, p, coeffs, minexp=0, var="t"):
        self.p = p
        self.var = var
        coeffs = [c % p for c in coeffs]
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        minexp += lead
        coeffs = coeffs[lead:]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            minexp = 0
        self.minexp = minexp
        self.coeffs = tuple(coeffs)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, p, var="t"):
        return cls(p, (), 0, var)

    @classmethod
    def one(cls, p, var="t"):
        return cls(p, (1,), 0, var)

    @classmethod
    def const(cls, c, p, var="t"):
        return cls(p, (c,), 0, var)

    @classmethod
    def term(cls, c, k, p, var="t"):
        return cls(p, (c,), k, var)

    # -- basic structure ----------------------------------------------------
    def is_zero(self):
        return not self.coeffs

    @property
    def maxexp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.minexp + len(self.coeffs) - 1

    def coeff(self, k):
        i = k - self.minexp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("modulus mismatch: %d vs %d" % (self.p, other.p))
        if self.var != other.var:
            raise ValueError("variable mismatch: %s vs %s" % (self.var, other.var))

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.minexp, other.minexp)
        hi = max(self.maxexp, other.maxexp)
        return LaurentPoly(self.p,
                           [(self.coeff(k) + other.coeff(k)) % self.p
                            for k in range(lo, hi + 1)],
                           lo, self.var)

    def __neg__(self):
        return LaurentPoly(self.p, [(-c) % self.p for c in self.coeffs],
                           self.minexp, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        prod = pmul(self.coeffs, other.coeffs, self.p)
        return LaurentPoly(self.p, prod, self.minexp + other.minexp, self.var)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one(self.p, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.p == other.p
                and self.var == other.var and self.minexp == other.minexp
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.var, self.minexp, self.coeffs))

    # -- the operations named in the interface ------------------------------
    def involution(self):
        """The bar involution generated by t -> 1/t (s -> 1/s on the s-ring)."""
        if self.is_zero():
            return self
        return LaurentPoly(self.p, tuple(reversed(self.coeffs)),
                           -self.maxexp, self.var)

    def to_s_ring(self):
        """Substitute t = s^2: every exponent doubles."""
        if self.var != "t":
            raise ValueError("to_s_ring expects a polynomial in t")
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return LaurentPoly(self.p, out, 2 * self.minexp, "s")

    def from_s_ring(self):
        """Inverse of to_s_ring; requires all exponents even."""
        if self.var != "s":
            raise ValueError("from_s_ring expects a polynomial in s")
        if any(c and (self.minexp + i) % 2 for i, c in enumerate(self.coeffs)):
            raise ValueError("odd s-exponent present; not in the image of t = s^2")
        return LaurentPoly(self.p, self.coeffs[::2], self.minexp // 2, "t")

    def evaluate_at_one(self):
        return sum(self.coeffs) % self.p

    def to_ratfunc(self):
        if self.minexp >= 0:
            return RatFunc(self.p, pshift(self.coeffs, self.minexp), (1,), self.var)
        return RatFunc(self.p, tuple(self.coeffs), pshift((1,), -self.minexp), self.var)

    # -- text ----------------------------------------------------------------
    def __repr__(self):
        return "LaurentPoly(%s)" % render_laurent(self)

    def __str__(self):
        return render_laurent(self)


class RatFunc:
    """Normalized quotient of polynomials over F_p.

    Invariants: den != 0, gcd(num, den) = 1, den monic; zero is 0/1.
    """

    __slots__ = ("p", "var", "num", "den")

    def __init__(self, p, num, den, var="t", normalize=True):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if normalize:
            num = ptrim(c % p for c in num)
            den = ptrim(c % p for c in den)
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = (1,)
            else:
                g = pgcd(num, den, p)
                if pdeg(g) > 0:
                    num = pdivmod(num, g, p)[0]
                    den = pdivmod(den, g, p)[0]
                c = inv_mod(den[-1], p)
                num = pscale(num, c, p)
                den = pscale(den, c, p)
        self.p = p
        self.var = var
        self.num = tuple(num)
        self.den = tuple(den)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, p, var="t"):
        return cls(p, (), (1,), var, normalize=False)

    @classmethod
    def one(cls, p, var="t"):
        return cls(p, (1,), (1,), var, normalize=False)

    @classmethod
    def const(cls, c, p, var="t"):
        c %= p
        return cls(p, (c,) if c else (), (1,), var, normalize=False)

    @classmethod
    def from_laurent(cls, f):
        return f.to_ratfunc()

    # -- structure ----------------------------------------------------------
    def is_zero(self):
        return not self.num

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("modulus mismatch: %d vs %d" % (self.p, other.p))
        if self.var != other.var:
            raise ValueError("variable mismatch: %s vs %s" % (self.var, other.var))

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        self._check(other)
        p = self.p
        num = padd(pmul(self.num, other.den, p), pmul(other.num, self.den, p), p)
        return RatFunc(p, num, pmul(self.den, other.den, p), self.var)

    def __neg__(self):
        return RatFunc(self.p, pneg(self.num, self.p), self.den, self.var,
                       normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return RatFunc(self.p, pmul(self.num, other.num, self.p),
                       pmul(self.den, other.den, self.p), self.var)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.p, self.den, self.num, self.var)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.one(self.p, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.p == other.p
                and self.var == other.var and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.p, self.var, self.num, self.den))

    # -- valuation and friends ------------------------------------------------
    def valuation(self):
        """nu(num/den) = deg(den) - deg(num); +inf for zero."""
        if self.is_zero():
            return INF
        return pdeg(self.den) - pdeg(self.num)

    def involution(self):
        """Substitute t -> 1/t (or s -> 1/s), renormalized."""
        if self.is_zero():
            return self
        p = self.p
        dn, dd = pdeg(self.num), pdeg(self.den)
        num = preverse(self.num)
        den = preverse(self.den)
        if dd > dn:
            num = pshift(num, dd - dn)
        elif dn > dd:
            den = pshift(den, dn - dd)
        return RatFunc(p, num, den, self.var)

    def to_laurent(self):
        """Convert to a LaurentPoly; den must be a monomial c*t^k."""
        if self.is_zero():
            return LaurentPoly.zero(self.p, self.var)
        if ptrim(self.den[:-1]) != ():
            raise ValueError("not a Laurent polynomial: denominator %s"
                             % (render_poly(self.den, self.var),))
        c = inv_mod(self.den[-1], self.p)
        return LaurentPoly(self.p, pscale(self.num, c, self.p),
                           -pdeg(self.den), self.var)

    def is_laurent(self):
        return self.is_zero() or ptrim(self.den[:-1]) == ()

    def shift_pi(self, k):
        """Multiply by pi^k = t^(-k)."""
        if self.is_zero():
            return self
        if k >= 0:
            return RatFunc(self.p, self.num, pshift(self.den, k), self.var)
        return RatFunc(self.p, pshift(self.num, -k), self.den, self.var)

    def residue(self):
        """Image in the residue field O/pi*O = F_p; requires nu >= 0."""
        v = self.valuation()
        if v is INF:
            return 0
        if v < 0:
            raise ValueError("element not in the valuation ring (nu = %s)" % v)
        if v > 0:
            return 0
        return (self.num[-1] * inv_mod(self.den[-1], self.p)) % self.p

    def __repr__(self):
        return "RatFunc(%s)" % (self,)

    def __str__(self):
        if self.den == (1,):
            return render_poly(self.num, self.var)
        return "(%s)/(%s)" % (render_poly(self.num, self.var),
                              render_poly(self.den, self.var))


class LaurentInt:
    """Laurent polynomial in t with arbitrary-precision integer coefficients.

    Exact characteristic-0 arithmetic; long braid words blow the entries up
    to large integers, which is the point.
    """

    __slots__ = ("minexp", "coeffs")

    def __init__(self, coeffs, minexp=0):
        coeffs = list(coeffs)
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        minexp += lead
        coeffs = coeffs[lead:]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            minexp = 0
        self.minexp = minexp
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def term(cls, c, k):
        return cls((c,), k)

    def is_zero(self):
        return not self.coeffs

    @property
    def maxexp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.minexp + len(self.coeffs) - 1

    def coeff(self, k):
        i = k - self.minexp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.minexp, other.minexp)
        hi = max(self.maxexp, other.maxexp)
        return LaurentInt([self.coeff(k) + other.coeff(k) for k in range(lo, hi + 1)], lo)

    def __neg__(self):
        return LaurentInt([-c for c in self.coeffs], self.minexp)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return LaurentInt.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentInt(out, self.minexp + other.minexp)

    def __eq__(self, other):
        return (isinstance(other, LaurentInt) and self.minexp == other.minexp
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.minexp, self.coeffs))

    def reduce_mod(self, p, var="t"):
        return LaurentPoly(p, [c % p for c in self.coeffs], self.minexp, var)

    def __str__(self):
        return render_laurent_data(self.coeffs, self.minexp, "t")

    def __repr__(self):
        return "LaurentInt(%s)" % (self,)


# ---------------------------------------------------------------------------
# pi-adic expansion at pi = 1/t

def pi_adic_expand(x: RatFunc, k: int):
    """First k digits of x at pi = 1/t; requires nu(x) >= 0.

    Returns a tuple d with x - sum d[j]*pi^j of valuation >= k.
    """
    v = x.valuation()
    if v is not INF and v < 0:
        raise ValueError("pi-adic expansion requires nu(x) >= 0, got %s" % v)
    digits = []
    for _ in range(k):
        d = x.residue()
        digits.append(d)
        x = (x - RatFunc.const(d, x.p, x.var)).shift_pi(-1)
    return tuple(digits)


def laurent_prefix(x: RatFunc, bound: int) -> RatFunc:
    """The pi-adic Laurent prefix of x below pi^bound.

    Digits run from nu(x) (which may be negative) up to bound - 1; the
    result r satisfies nu(x - r) >= bound.  Used by lattice canonical forms.
    """
    v = x.valuation()
    if v is INF or v >= bound:
        return RatFunc.zero(x.p, x.var)
    v = int(v)
    y = x.shift_pi(-v)
    digits = pi_adic_expand(y, bound - v)
    out = RatFunc.zero(x.p, x.var)
    for j, d in enumerate(digits):
        if d:
            out = out + RatFunc.const(d, x.p, x.var).shift_pi(v + j)
    return out


# ---------------------------------------------------------------------------
# text rendering / parsing in the grammar  c*t^k  joined by +

def render_poly(coeffs, var="t"):
    return render_laurent_data(coeffs, 0, var)


def render_laurent(f: LaurentPoly):
    return render_laurent_data(f.coeffs, f.minexp, f.var)


def render_laurent_data(coeffs, minexp, var):
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        k = minexp + i
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(var if c == 1 else "%d*%s" % (c, var))
        else:
            terms.append("%s^%d" % (var, k) if c == 1 else "%d*%s^%d" % (c, var, k))
    return "+".join(terms) if terms else "0"


def parse_laurent(text, p, var="t"):
    """Parse the grammar `c*t^k` joined by `+` (e.g. `2+t+t^2`, `t^-1`)."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LaurentPoly.zero(p, var)
    out = LaurentPoly.zero(p, var)
    for term in text.split("+"):
        if not term:
            raise ValueError("empty term in %r" % text)
        c, k = 1, 0
        if "*" in term:
            cs, term = term.split("*", 1)
            c = int(cs)
        if term.startswith(var):
            rest = term[len(var):]
            if rest.startswith("^"):
                k = int(rest[1:])
            elif rest == "":
                k = 1
            else:
                raise ValueError("bad term %r" % term)
        else:
            c = c * int(term)
            k = 0
        out = out + LaurentPoly.term(c, k, p, var)
    return out
