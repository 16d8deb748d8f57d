"""Exact polynomials and rational functions in one indeterminate ``q``.

Coefficients are :class:`fractions.Fraction`; nothing in here ever touches a
float.  Polynomials are stored densely (index = exponent) with trailing zeros
trimmed, so two equal polynomials always have identical ``coeffs``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "RatPoly",
    "RatFunc",
    "NotAPolynomialError",
    "ratfunc_normalize",
    "ratfunc_to_poly",
    "poly_eval",
    "poly_gcd",
    "Q",
]

Scalar = Union[int, Fraction]


class NotAPolynomialError(ArithmeticError):
    """Raised when a rational function is asked to be a polynomial but is not.

    ``remainder`` is the witness: the remainder of the numerator modulo the
    denominator, which is non-zero.
    """

    def __init__(self, remainder: "RatPoly", den: "RatPoly"):
        super().__init__(f"not a polynomial: remainder {remainder} modulo {den}")
        self.remainder = remainder
        self.den = den


def _trim(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class RatPoly:
    """Immutable dense polynomial in ``q`` over the rationals."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    # construction helpers -------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "RatPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, exponent: int, c: Scalar = 1) -> "RatPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls([0] * exponent + [c])

    @classmethod
    def q_power_minus(cls, exponent: int, c: Scalar = 1) -> "RatPoly":
        """``q**exponent - c``."""
        return cls.monomial(exponent) - c

    @classmethod
    def q_power_plus(cls, exponent: int, c: Scalar = 1) -> "RatPoly":
        """``q**exponent + c``."""
        return cls.monomial(exponent) + c

    # basic queries --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial having degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(("RatPoly", self.coeffs)))
        return self._hash

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RatPoly":
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Rational)):
            return RatPoly((other,))
        raise TypeError(f"cannot combine RatPoly with {type(other).__name__}")

    def __add__(self, other) -> "RatPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = RatPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Scalar) -> "RatPoly":
        c = Fraction(c)
        return RatPoly(x * c for x in self.coeffs)

    def divmod(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dlen = len(other.coeffs)
        if len(rem) < dlen:
            return RatPoly(), self
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * (len(rem) - dlen + 1)
        dco = other.coeffs
        for shift in range(len(rem) - dlen, -1, -1):
            c = rem[shift + dlen - 1]
            if c:
                c = c / lead
                quot[shift] = c
                for j, y in enumerate(dco):
                    rem[shift + j] -= c * y
        return RatPoly(quot), RatPoly(rem[: dlen - 1])

    def __floordiv__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other: "RatPoly") -> "RatPoly":
        return self.divmod(self._coerce(other))[1]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def content(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        from math import gcd

        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    # evaluation / rendering ----------------------------------------------

    def __call__(self, q0: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def __repr__(self) -> str:
        return f"RatPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Union[str, Sequence[str]]) -> "RatPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(Fraction(s) for s in data)


Q = RatPoly.monomial(1)
ONE = RatPoly.const(1)


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over the rationals; ``gcd(0, 0) == 0``."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFunc:
    """Immutable quotient ``num / den`` of two :class:`RatPoly`.

    Instances built through :func:`ratfunc_normalize` are canonical: the
    fraction is reduced and ``den`` is monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: RatPoly, den: RatPoly):
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        # cross-multiplication works for unnormalized operands too
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        n = ratfunc_normalize(self.num, self.den)
        return hash((n.num, n.den))

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return ratfunc_normalize(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return ratfunc_normalize(self.num * other.den, self.den * other.num)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return ratfunc_normalize(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __repr__(self) -> str:
        return f"RatFunc(({self.num}) / ({self.den}))"


def ratfunc_normalize(num: RatPoly, den: RatPoly) -> RatFunc:
    """Reduce ``num/den`` to its canonical representative.

    The denominator ends up monic and coprime to the numerator; any rational
    scalar is carried by the numerator.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return RatFunc(RatPoly(), RatPoly.const(1))
    # fast path: exact division (the common case for degree formulas)
    quot, rem = num.divmod(den)
    if rem.is_zero():
        return RatFunc(quot, RatPoly.const(1))
    g = poly_gcd(num, den)
    num = num // g
    den = den // g
    lead = den.lead
    return RatFunc(num.scale(1 / lead), den.scale(1 / lead))


def ratfunc_to_poly(r: RatFunc) -> RatPoly:
    r = ratfunc_normalize(r.num, r.den)
    if r.den == 1:
        return r.num
    raise NotAPolynomialError(r.num % r.den, r.den)


def poly_eval(p: RatPoly, q0: int) -> Fraction:
    """Evaluate ``p`` exactly at the integer ``q0``."""
    return p(q0)
