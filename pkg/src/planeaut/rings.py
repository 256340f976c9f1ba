"""Exact coefficient rings.

Every ring here is a stateless descriptor whose methods operate on plain
Python values; coefficients are never wrapped in per-value objects, which
keeps the polynomial layer fast while staying exact (no floats anywhere).

    RationalField       values are fractions.Fraction
    PrimeField(p)       values are int in range(p), p prime
    LaurentRing(F)      values are dict {t-exponent: F-value}, no zero entries
    FunctionField(F)    values are (num, den) pairs of univariate coefficient
                        dicts over F, den monic, gcd(num, den) = 1

LaurentRing models K[t, 1/t]; FunctionField models K(t) and exists only so
that automorphisms with Laurent coefficients can be inverted by factoring
over a genuine field and checking the result back into K[t, 1/t].

The degree / valuation of 0 is the dedicated sentinel MINUS_INF, never an
integer.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    FieldExtensionRequiredError,
    NotInvertibleError,
    PoleAtZeroError,
    UnsupportedFieldError,
)


class _MinusInfinity:
    """Sentinel for deg(0) and v(0): below every integer, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return self is not other

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return self is other

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("cannot negate -inf")

    def __repr__(self):
        return "-inf"


MINUS_INF = _MinusInfinity()


def _iroot(x: int, n: int) -> int:
    """Floor of the n-th root of x >= 0."""
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or n == 1:
        return x
    r = 1 << ((x.bit_length() + n - 1) // n)
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            return r
        r = nr


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q with Fraction values."""

    characteristic = 0
    is_field = True

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def from_int(self, n: int):
        return Fraction(n)

    def is_unit(self, a):
        return a != 0

    def invert(self, a):
        if a == 0:
            raise NotInvertibleError("division by zero in Q")
        return Fraction(1) / a

    def pow(self, a, n: int):
        if n < 0:
            return self.invert(a) ** (-n)
        return a ** n

    def pth_root(self, a):
        raise UnsupportedFieldError("no Frobenius over Q")

    def sqrt(self, a):
        """Exact square root in Q, or None."""
        if a < 0:
            return None
        rn, rd = _iroot(a.numerator, 2), _iroot(a.denominator, 2)
        r = Fraction(rn, rd)
        return r if r * r == a else None

    def nth_roots(self, a, n: int):
        """All solutions x in Q of x^n = a."""
        if a == 0:
            return [self.zero]
        if a < 0 and n % 2 == 0:
            return []
        rn = _iroot(abs(a.numerator), n)
        rd = _iroot(a.denominator, n)
        r = Fraction(rn, rd)
        if r ** n != abs(a):
            return []
        if a < 0:
            return [-r]
        return [r, -r] if n % 2 == 0 else [r]

    def elements(self):
        raise UnsupportedFieldError("Q is infinite")

    def sample_stream(self):
        n = 0
        while True:
            yield Fraction(n)
            n += 1

    def split_sign(self, a):
        return (a < 0, -a if a < 0 else a)

    def to_str(self, a):
        return str(a)

    def needs_parens(self, a):
        return False

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p, p prime, with int values in range(p)."""

    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise UnsupportedFieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def from_int(self, n: int):
        return n % self.p

    def is_unit(self, a):
        return a % self.p != 0

    def invert(self, a):
        if a % self.p == 0:
            raise NotInvertibleError(f"division by zero in F{self.p}")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.invert(a), -n, self.p)
        return pow(a, n, self.p)

    def pth_root(self, a):
        # x -> x^p is the identity on F_p
        return a

    def sqrt(self, a):
        for x in range(self.p):
            if x * x % self.p == a % self.p:
                return x
        return None

    def nth_roots(self, a, n: int):
        a %= self.p
        return [x for x in range(self.p) if pow(x, n, self.p) == a]

    def elements(self):
        return range(self.p)

    def sample_stream(self):
        return iter(range(self.p))

    def split_sign(self, a):
        return (False, a)

    def to_str(self, a):
        return str(a)

    def needs_parens(self, a):
        return False

    def sort_key(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


class LaurentRing:
    """K[t, 1/t] over a base field K; values are {exponent: coefficient} dicts."""

    is_field = False

    def __init__(self, base):
        self.base = base
        self.characteristic = base.characteristic
        self.zero = {}
        self.one = {0: base.one}

    def term(self, exponent: int, coeff):
        return {} if self.base.is_zero(coeff) else {exponent: coeff}

    @property
    def t(self):
        return {1: self.base.one}

    def from_base(self, c):
        return self.term(0, c)

    def add(self, a, b):
        F = self.base
        out = dict(a)
        for e, c in b.items():
            s = F.add(out.get(e, F.zero), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        F = self.base
        return {e: F.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        F = self.base
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = F.add(out.get(e, F.zero), F.mul(ca, cb))
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return out

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n: int):
        return self.from_base(self.base.from_int(n))

    def is_unit(self, a):
        # units of K[t,1/t] are the nonzero monomials c*t^k
        return len(a) == 1

    def invert(self, a):
        if len(a) != 1:
            raise NotInvertibleError("not a unit of K[t,1/t]")
        ((e, c),) = a.items()
        return {-e: self.base.invert(c)}

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.invert(a), -n)
        out = self.one
        b = a
        while n:
            if n & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            n >>= 1
        return out

    def valuation(self, a):
        return min(a) if a else MINUS_INF

    def shift(self, a, k: int):
        """Multiply by t^k."""
        return {e + k: c for e, c in a.items()}

    def value_at_zero(self, a):
        v = self.valuation(a)
        if v is not MINUS_INF and v < 0:
            raise PoleAtZeroError(valuation=v)
        return a.get(0, self.base.zero)

    def specialize(self, a, c):
        """Evaluate at t = c, c a nonzero base-field value."""
        F = self.base
        acc = F.zero
        for e, coeff in a.items():
            acc = F.add(acc, F.mul(coeff, F.pow(c, e)))
        return acc

    def split_sign(self, a):
        if len(a) == 1:
            ((e, c),) = a.items()
            neg, mag = self.base.split_sign(c)
            if neg:
                return (True, {e: mag})
        return (False, a)

    def to_str(self, a):
        if not a:
            return "0"
        F = self.base
        parts = []
        for e in sorted(a, reverse=True):
            c = a[e]
            neg, mag = F.split_sign(c)
            if e == 0:
                body = F.to_str(mag)
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                body = tpow if F.eq(mag, F.one) else f"{F.to_str(mag)}*{tpow}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def needs_parens(self, a):
        return len(a) > 1

    def sort_key(self, a):
        return tuple((e, self.base.sort_key(c)) for e, c in sorted(a.items()))

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.base == self.base

    def __hash__(self):
        return hash(("laurent", self.base))

    def __repr__(self):
        return f"{self.base!r}[t,1/t]"


# ---------------------------------------------------------------------------
# Univariate coefficient-dict helpers, shared by FunctionField and the
# binary-form root extraction in endo.py.  A polynomial is {degree: coeff}
# with no zero entries.

def up_trim(F, d):
    return {e: c for e, c in d.items() if not F.is_zero(c)}

def up_deg(F, d):
    return max(d) if d else MINUS_INF

def up_add(F, a, b):
    out = dict(a)
    for e, c in b.items():
        s = F.add(out.get(e, F.zero), c)
        if F.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out

def up_neg(F, a):
    return {e: F.neg(c) for e, c in a.items()}

def up_sub(F, a, b):
    return up_add(F, a, up_neg(F, b))

def up_scale(F, a, c):
    if F.is_zero(c):
        return {}
    return {e: F.mul(x, c) for e, x in a.items()}

def up_mul(F, a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = F.add(out.get(e, F.zero), F.mul(ca, cb))
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out

def up_pow(F, a, n: int):
    out = {0: F.one}
    b = a
    while n:
        if n & 1:
            out = up_mul(F, out, b)
        b = up_mul(F, b, b)
        n >>= 1
    return out

def up_divmod(F, a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    db = up_deg(F, b)
    inv_lead = F.invert(b[db])
    q, r = {}, dict(a)
    while r and up_deg(F, r) >= db:
        dr = up_deg(F, r)
        c = F.mul(r[dr], inv_lead)
        q[dr - db] = c
        for e, x in b.items():
            s = F.sub(r.get(e + dr - db, F.zero), F.mul(x, c))
            if F.is_zero(s):
                r.pop(e + dr - db, None)
            else:
                r[e + dr - db] = s
    return q, r

def up_monic(F, a):
    if not a:
        return a
    return up_scale(F, a, F.invert(a[up_deg(F, a)]))

def up_gcd_monic(F, a, b):
    a, b = dict(a), dict(b)
    while b:
        a, b = b, up_divmod(F, a, b)[1]
    return up_monic(F, a)

def up_compose(F, a, b):
    """Substitution a(b) by Horner."""
    if not a:
        return {}
    acc = {}
    for k in range(max(a), -1, -1):
        acc = up_mul(F, acc, b)
        if k in a:
            acc = up_add(F, acc, {0: a[k]})
    return acc

def up_eval(F, a, x):
    acc = F.zero
    for e, c in a.items():
        acc = F.add(acc, F.mul(c, F.pow(x, e)))
    return acc

def up_to_str(F, a, var="t"):
    if not a:
        return "0"
    parts = []
    for e in sorted(a, reverse=True):
        c = F.to_str(a[e])
        parts.append(c if e == 0 else (f"{c}*{var}" if e == 1 else f"{c}*{var}^{e}"))
    return " + ".join(parts)


class FunctionField:
    """K(t) as normalized (num, den) pairs of univariate dicts over K.

    Internal only: used to invert Laurent-coefficient automorphisms by
    working over a field, then checking the result back into K[t,1/t].
    """

    is_field = True

    def __init__(self, base):
        self.base = base
        self.characteristic = base.characteristic
        self.zero = ({}, {0: base.one})
        self.one = ({0: base.one}, {0: base.one})

    def _norm(self, num, den):
        F = self.base
        if not num:
            return ({}, {0: F.one})
        if not den:
            raise ZeroDivisionError("zero denominator in K(t)")
        g = up_gcd_monic(F, num, den)
        if up_deg(F, g) != 0 or not F.eq(g.get(0, F.zero), F.one):
            num = up_divmod(F, num, g)[0]
            den = up_divmod(F, den, g)[0]
        lead = den[up_deg(F, den)]
        if not F.eq(lead, F.one):
            inv = F.invert(lead)
            num = up_scale(F, num, inv)
            den = up_scale(F, den, inv)
        return (num, den)

    def add(self, a, b):
        F = self.base
        return self._norm(
            up_add(F, up_mul(F, a[0], b[1]), up_mul(F, b[0], a[1])),
            up_mul(F, a[1], b[1]),
        )

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (up_neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        F = self.base
        return self._norm(up_mul(F, a[0], b[0]), up_mul(F, a[1], b[1]))

    def is_zero(self, a):
        return not a[0]

    def eq(self, a, b):
        return a == b

    def from_int(self, n: int):
        c = self.base.from_int(n)
        if self.base.is_zero(c):
            return self.zero
        return ({0: c}, {0: self.base.one})

    def is_unit(self, a):
        return bool(a[0])

    def invert(self, a):
        if not a[0]:
            raise NotInvertibleError("division by zero in K(t)")
        return self._norm(a[1], a[0])

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.invert(a), -n)
        out = self.one
        b = a
        while n:
            if n & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            n >>= 1
        return out

    def from_laurent(self, a: dict):
        v = min(a) if a else 0
        if v < 0:
            return self._norm({e - v: c for e, c in a.items()}, {-v: self.base.one})
        return self._norm(dict(a), {0: self.base.one})

    def to_laurent(self, a):
        """Back to a K[t,1/t] value, or None if the denominator is not a monomial."""
        num, den = a
        if not num:
            return {}
        if len(den) != 1:
            return None
        ((e, c),) = den.items()
        inv = self.base.invert(c)
        return {k - e: self.base.mul(x, inv) for k, x in num.items()}

    def pth_root(self, a):
        p = self.characteristic
        if p == 0:
            raise UnsupportedFieldError("no Frobenius over characteristic 0")
        out = []
        for part in a:
            if any(e % p for e in part):
                raise FieldExtensionRequiredError("p-th root leaves K(t)")
            out.append({e // p: self.base.pth_root(c) for e, c in part.items()})
        return self._norm(out[0], out[1])

    def sample_stream(self):
        """Infinitely many distinct values; over a finite base, polynomials in t
        enumerated by base-p digits, since from_int alone cycles mod p."""
        p = getattr(self.base, "p", None)
        if p is None:
            n = 0
            while True:
                yield self.from_int(n)
                n += 1
        else:
            n = 0
            while True:
                num, k, m = {}, 0, n
                while m:
                    if m % p:
                        num[k] = self.base.from_int(m % p)
                    m //= p
                    k += 1
                yield (num, {0: self.base.one}) if num else self.zero
                n += 1

    def split_sign(self, a):
        return (False, a)

    def to_str(self, a):
        F = self.base
        if len(a[1]) == 1 and 0 in a[1]:
            return up_to_str(F, a[0])
        return f"({up_to_str(F, a[0])})/({up_to_str(F, a[1])})"

    def needs_parens(self, a):
        return True

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.base == self.base

    def __hash__(self):
        return hash(("K(t)", self.base))

    def __repr__(self):
        return f"{self.base!r}(t)"


def field_from_name(name: str):
    """Parse a field descriptor: "Q" or "Fp:<prime>"."""
    if name == "Q":
        return RationalField()
    if name.startswith("Fp:"):
        try:
            p = int(name[3:])
        except ValueError:
            raise UnsupportedFieldError(f"bad field descriptor {name!r}") from None
        return PrimeField(p)
    raise UnsupportedFieldError(f"bad field descriptor {name!r}")
