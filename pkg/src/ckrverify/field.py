"""Exact arithmetic in the ordered field R(eps) of rational functions in eps.

Coefficients are restricted to the rationals, so every element is a quotient
of two polynomials over Q.  An element is stored in canonical form

    eps**order * num(eps) / den(eps)

with ``num(0) != 0``, ``den(0) == 1`` and ``gcd(num, den) == 1``.  Because
``eps`` is a positive infinitesimal, the sign of an element is the sign of
``num(0)``, and its standard part can be read off ``order`` and ``num(0)``.
"""

from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .errors import NonstdZeroDivision, NotFinite, PoleAtPoint

Rational = Fraction
#: Coefficient tuple, index k holds the coefficient of eps**k.  No trailing zeros.
EpsPoly = Tuple[Fraction, ...]

_ZERO_POLY: EpsPoly = ()
_ONE_POLY: EpsPoly = (Fraction(1),)


# -- polynomial helpers over Q ---------------------------------------------

def poly(coeffs: Iterable) -> EpsPoly:
    """Build a trimmed coefficient tuple from anything Fraction accepts."""
    out = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _trim(c: list) -> EpsPoly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(a: EpsPoly, b: EpsPoly) -> EpsPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _trim(out)


def psub(a: EpsPoly, b: EpsPoly) -> EpsPoly:
    n = max(len(a), len(b))
    out = list(a) + [Fraction(0)] * (n - len(a))
    for k, c in enumerate(b):
        out[k] -= c
    return _trim(out)


def pmul(a: EpsPoly, b: EpsPoly) -> EpsPoly:
    if not a or not b:
        return _ZERO_POLY
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pscale(a: EpsPoly, s) -> EpsPoly:
    if not s:
        return _ZERO_POLY
    return tuple(c * s for c in a)


def pshift(a: EpsPoly, k: int) -> EpsPoly:
    """Multiply by eps**k, k >= 0."""
    if not a or k == 0:
        return a
    return (Fraction(0),) * k + a


def pdivmod(a: EpsPoly, b: EpsPoly) -> Tuple[EpsPoly, EpsPoly]:
    if not b:
        raise NonstdZeroDivision("polynomial division by zero")
    if len(a) < len(b):
        return _ZERO_POLY, a
    rem = list(a)
    lead = b[-1]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    return _trim(q), _trim(rem[: len(b) - 1])


def pgcd(a: EpsPoly, b: EpsPoly) -> EpsPoly:
    """Monic gcd (leading coefficient 1)."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return _ZERO_POLY
    return pscale(a, 1 / a[-1])


def peval(a: EpsPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _low_order(a: EpsPoly) -> int:
    k = 0
    while not a[k]:
        k += 1
    return k


# -- the field element -----------------------------------------------------

Number = Union["NonstdNum", Fraction, int]


class NonstdNum:
    """An element of R(eps) in canonical form.  Immutable."""

    __slots__ = ("order", "num", "den")

    def __init__(self, order: int = 0, num: Sequence = (), den: Sequence = (1,)):
        num = poly(num)
        den = poly(den)
        if not den:
            raise NonstdZeroDivision("zero denominator")
        self._set(*_canonical(order, num, den))

    def _set(self, order, num, den):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("NonstdNum is immutable")

    @classmethod
    def _raw(cls, order: int, num: EpsPoly, den: EpsPoly) -> "NonstdNum":
        # trusted constructor: arguments already canonical
        self = object.__new__(cls)
        self._set(order, num, den)
        return self

    @classmethod
    def _make(cls, order: int, num: EpsPoly, den: EpsPoly) -> "NonstdNum":
        return cls._raw(*_canonical(order, num, den))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def sign(self) -> int:
        if not self.num:
            return 0
        return 1 if self.num[0] > 0 else -1

    def is_infinitesimal(self) -> bool:
        # zero counts as infinitesimal
        return not self.num or self.order >= 1

    def is_finite(self) -> bool:
        return not self.num or self.order >= 0

    def is_standard(self) -> bool:
        return not self.num or (self.order == 0 and len(self.num) == 1 and len(self.den) == 1)

    def standard_part(self) -> Fraction:
        if not self.num:
            return Fraction(0)
        if self.order < 0:
            raise NotFinite(f"{self} is infinite and has no standard part")
        if self.order > 0:
            return Fraction(0)
        return self.num[0]

    def eval_at(self, e) -> Fraction:
        e = Fraction(e)
        if e <= 0:
            raise ValueError("evaluation point must be positive")
        d = peval(self.den, e)
        if not d:
            raise PoleAtPoint(f"denominator of {self} vanishes at {e}")
        return e ** self.order * peval(self.num, e) / d

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        if not self.num:
            return self
        return NonstdNum._raw(self.order, tuple(-c for c in self.num), self.den)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other.inverse())

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(other, self.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = ONE, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def inverse(self) -> "NonstdNum":
        if not self.num:
            raise NonstdZeroDivision("division by zero in R(eps)")
        c = self.num[0]
        return NonstdNum._raw(-self.order, pscale(self.den, 1 / c), pscale(self.num, 1 / c))

    # -- comparison --------------------------------------------------------
    def cmp(self, other) -> int:
        other = _coerce(other)
        return _cmp(self, other)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_standard():
            return hash(self.standard_part())
        return hash((self.order, self.num, self.den))

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _cmp(self, other) < 0

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _cmp(self, other) <= 0

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _cmp(self, other) > 0

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _cmp(self, other) >= 0

    def __bool__(self):
        return bool(self.num)

    # -- display -----------------------------------------------------------
    def __repr__(self):
        return f"NonstdNum({self.order}, {_fmt_poly_list(self.num)}, {_fmt_poly_list(self.den)})"

    def __str__(self):
        if not self.num:
            return "0"
        n = _fmt_poly(pshift(self.num, self.order) if self.order > 0 else self.num)
        if self.order < 0:
            n = f"({n})/eps^{-self.order}" if self.order < -1 else f"({n})/eps"
        if len(self.den) == 1:
            return n
        return f"({n})/({_fmt_poly(self.den)})"


def _fmt_poly_list(p):
    return "[" + ", ".join(f"'{c}'" for c in p) + "]"


def _fmt_poly(p: EpsPoly) -> str:
    terms = []
    for k, c in enumerate(p):
        if not c:
            continue
        mono = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
        if mono and abs(c) == 1:
            s = mono
        elif mono:
            s = f"{abs(c)}*{mono}"
        else:
            s = str(abs(c))
        terms.append(("-" if c < 0 else "+", s))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sgn, s in terms[1:]:
        out += f" {sgn} {s}"
    return out


def _canonical(order: int, num: EpsPoly, den: EpsPoly):
    if not num:
        return 0, _ZERO_POLY, _ONE_POLY
    k = _low_order(num)
    if k:
        num = num[k:]
        order += k
    k = _low_order(den)
    if k:
        den = den[k:]
        order -= k
    if len(num) > 1 and len(den) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
    c = den[0]
    if c != 1:
        num = pscale(num, 1 / c)
        den = pscale(den, 1 / c)
    return order, num, den


def _coerce(x):
    if isinstance(x, NonstdNum):
        return x
    if isinstance(x, (int, Fraction)):
        return from_rational(x)
    return NotImplemented


def _add(a: NonstdNum, b: NonstdNum) -> NonstdNum:
    if not a.num:
        return b
    if not b.num:
        return a
    m = min(a.order, b.order)
    if a.den == b.den:
        num = padd(pshift(a.num, a.order - m), pshift(b.num, b.order - m))
        if len(a.den) == 1:
            if not num:
                return ZERO
            k = _low_order(num)
            return NonstdNum._raw(m + k, num[k:], a.den)
        return NonstdNum._make(m, num, a.den)
    num = padd(pshift(pmul(a.num, b.den), a.order - m), pshift(pmul(b.num, a.den), b.order - m))
    return NonstdNum._make(m, num, pmul(a.den, b.den))


def _mul(a: NonstdNum, b: NonstdNum) -> NonstdNum:
    if not a.num or not b.num:
        return ZERO
    order = a.order + b.order
    if len(a.den) == 1 and len(b.den) == 1:
        # product of polynomials with nonzero constant terms stays canonical
        return NonstdNum._raw(order, pmul(a.num, b.num), _ONE_POLY)
    an, ad, bn, bd = a.num, a.den, b.num, b.den
    g = pgcd(an, bd) if len(an) > 1 and len(bd) > 1 else _ONE_POLY
    if len(g) > 1:
        an, bd = pdivmod(an, g)[0], pdivmod(bd, g)[0]
    g = pgcd(bn, ad) if len(bn) > 1 and len(ad) > 1 else _ONE_POLY
    if len(g) > 1:
        bn, ad = pdivmod(bn, g)[0], pdivmod(ad, g)[0]
    num, den = pmul(an, bn), pmul(ad, bd)
    c = den[0]
    if c != 1:
        num, den = pscale(num, 1 / c), pscale(den, 1 / c)
    return NonstdNum._raw(order, num, den)


def _cmp(a: NonstdNum, b: NonstdNum) -> int:
    sa, sb = a.sign(), b.sign()
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == 0:
        return 0
    if a.order != b.order:
        # same sign: the lower eps-order has the larger magnitude
        bigger = 1 if a.order < b.order else -1
        return bigger * sa
    if a.den == b.den:
        diff = psub(a.num, b.num)
    else:
        diff = psub(pmul(a.num, b.den), pmul(b.num, a.den))
    if not diff:
        return 0
    return 1 if diff[_low_order(diff)] > 0 else -1


# -- public constructors / functional API ---------------------------------

def from_rational(q) -> NonstdNum:
    q = q if type(q) is Fraction else Fraction(q)
    if not q:
        return ZERO
    return NonstdNum._raw(0, (q,), _ONE_POLY)


def epsilon() -> NonstdNum:
    return EPS


def from_poly(coeffs: Iterable) -> NonstdNum:
    """The polynomial sum_k coeffs[k] * eps**k."""
    return NonstdNum._make(0, poly(coeffs), _ONE_POLY)


def cmp(a: Number, b: Number) -> int:
    """-1, 0 or +1 as a is less than, equal to, or greater than b."""
    return _cmp(_coerce(a), _coerce(b))


def standard_part(a: Number) -> Fraction:
    return _coerce(a).standard_part()


def is_infinitesimal(a: Number) -> bool:
    return _coerce(a).is_infinitesimal()


def is_finite(a: Number) -> bool:
    return _coerce(a).is_finite()


def sign(a: Number) -> int:
    return _coerce(a).sign()


def eval_at(a: Number, e) -> Fraction:
    return _coerce(a).eval_at(e)


def as_nonstd(a: Number) -> NonstdNum:
    out = _coerce(a)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {a!r} to NonstdNum")
    return out


def nsum(values: Iterable[Number]) -> NonstdNum:
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc


def nmax(values: Iterable[Number]) -> NonstdNum:
    it = iter(values)
    best = as_nonstd(next(it))
    for v in it:
        if _cmp(as_nonstd(v), best) > 0:
            best = as_nonstd(v)
    return best


ZERO = NonstdNum._raw(0, _ZERO_POLY, _ONE_POLY)
ONE = NonstdNum._raw(0, _ONE_POLY, _ONE_POLY)
EPS = NonstdNum._raw(1, _ONE_POLY, _ONE_POLY)
