"""Exchangeable scalar arithmetic: exact rationals, exact Laurent polynomials, complex floats.

Every identity checked by this package is evaluated over one of three coefficient
rings.  The Laurent ring works in a formal variable s with the convention q = s**2,
so half-integer powers of q are honest ring elements and the square roots needed by
the link-polynomial normalization stay in-ring.  Scalars are immutable values and
can be shared freely between threads.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


class ScalarModeError(TypeError):
    """Operands come from different scalar rings."""


class NotAUnitError(ArithmeticError):
    """Inversion was requested for a scalar that is not a unit of its ring."""


class NoSquareRootError(ArithmeticError):
    """No in-ring square root exists (exact modes only)."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarModeError(f"cannot coerce {type(x).__name__} to a rational")


class LaurentPoly:
    """Laurent polynomial in s with Fraction coefficients, stored as exponent -> coefficient.

    Canonical form never stores a zero coefficient, so structural equality is ring
    equality.  Only monomials are units; general division is deliberately absent.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        data: dict[int, Fraction] = {}
        if coeffs is None:
            pass
        elif isinstance(coeffs, LaurentPoly):
            data = dict(coeffs.coeffs)
        elif isinstance(coeffs, dict):
            for e, c in coeffs.items():
                c = _as_fraction(c)
                if c:
                    data[int(e)] = c
        else:
            c = _as_fraction(coeffs)
            if c:
                data[0] = c
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> "LaurentPoly":
        return cls({int(exponent): coefficient})

    @classmethod
    def variable(cls) -> "LaurentPoly":
        return cls({1: 1})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerced(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(other)
        return None

    def __add__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        acc = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def as_monomial(self):
        """Return (exponent, coefficient) if this is a single term, else None."""
        if len(self.coeffs) != 1:
            return None
        [(e, c)] = self.coeffs.items()
        return e, c

    def inverse(self) -> "LaurentPoly":
        mono = self.as_monomial()
        if mono is None:
            raise NotAUnitError("scalar not a unit")
        e, c = mono
        return LaurentPoly({-e: Fraction(1) / c})

    def bar(self) -> "LaurentPoly":
        """The involution s -> 1/s."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def substitute(self, value):
        """Evaluate at s = value (a Fraction or complex; must be invertible)."""
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            if value == 0:
                raise ZeroDivisionError("cannot substitute s = 0")
            acc = Fraction(0)
            for e, c in self.coeffs.items():
                acc += c * value**e
            return acc
        value = complex(value)
        return sum(complex(c) * value**e for e, c in self.coeffs.items())

    def max_coeff(self) -> float:
        return max((abs(float(c)) for c in self.coeffs.values()), default=0.0)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{'-' if c < 0 else ''}{mag}s^{e}"
                if c < 0:
                    parts.append(term)
                    continue
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _sqrt_fraction(c: Fraction) -> Fraction:
    if c < 0:
        raise NoSquareRootError("no in-ring square root")
    p, q = c.numerator, c.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp != p or rq * rq != q:
        raise NoSquareRootError("no in-ring square root")
    return Fraction(rp, rq)


class RationalRing:
    """Exact arithmetic in the field of rationals."""

    mode = "rational"
    exact = True

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise ScalarModeError(f"not a rational scalar: {x!r}")

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, a, b) -> bool:
        return a == b

    def magnitude(self, x) -> float:
        return abs(float(x))

    def invert(self, x) -> Fraction:
        if x == 0:
            raise NotAUnitError("scalar not a unit")
        return Fraction(1) / x

    def sqrt_unit(self, x) -> Fraction:
        return _sqrt_fraction(Fraction(x))

    def bar(self, x):
        return x

    def from_literal(self, lit) -> Fraction:
        if isinstance(lit, str):
            return Fraction(lit)
        if isinstance(lit, int):
            return Fraction(lit)
        raise ValueError(f"bad rational literal {lit!r}")

    def to_literal(self, x) -> str:
        return str(Fraction(x))

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalRing()"


class LaurentRing:
    """Exact Laurent polynomials in s over the rationals (q = s**2 convention)."""

    mode = "laurent"
    exact = True

    @property
    def zero(self):
        return LaurentPoly()

    @property
    def one(self):
        return LaurentPoly(1)

    def coerce(self, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly(x)
        raise ScalarModeError(f"not a Laurent scalar: {x!r}")

    def is_zero(self, x) -> bool:
        return not x

    def eq(self, a, b) -> bool:
        return self.coerce(a) == self.coerce(b)

    def magnitude(self, x) -> float:
        return self.coerce(x).max_coeff()

    def invert(self, x) -> LaurentPoly:
        return self.coerce(x).inverse()

    def sqrt_unit(self, x) -> LaurentPoly:
        mono = self.coerce(x).as_monomial()
        if mono is None:
            raise NoSquareRootError("no in-ring square root")
        e, c = mono
        if e % 2 != 0:
            raise NoSquareRootError("no in-ring square root")
        return LaurentPoly({e // 2: _sqrt_fraction(c)})

    def bar(self, x):
        return self.coerce(x).bar()

    def from_literal(self, lit) -> LaurentPoly:
        if isinstance(lit, dict):
            return LaurentPoly({int(e): Fraction(c) for e, c in lit.items()})
        if isinstance(lit, (str, int)):
            return LaurentPoly(Fraction(lit))
        raise ValueError(f"bad Laurent literal {lit!r}")

    def to_literal(self, x):
        x = self.coerce(x)
        return {str(e): str(c) for e, c in sorted(x.coeffs.items())}

    def __eq__(self, other):
        return isinstance(other, LaurentRing)

    def __hash__(self):
        return hash("laurent")

    def __repr__(self):
        return "LaurentRing()"


class ComplexRing:
    """IEEE complex arithmetic with tolerance-based comparison.

    Equality means |a - b| <= tol; the default of 1e-9 suits fixtures whose
    entries are O(1).
    """

    mode = "complex"
    exact = False

    def __init__(self, tol: float = 1e-9):
        self.tol = float(tol)

    @property
    def zero(self):
        return 0j

    @property
    def one(self):
        return complex(1)

    def coerce(self, x) -> complex:
        if isinstance(x, (int, float, complex)):
            return complex(x)
        if isinstance(x, Fraction):
            return complex(float(x))
        raise ScalarModeError(f"not a complex scalar: {x!r}")

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, a, b) -> bool:
        return abs(self.coerce(a) - self.coerce(b)) <= self.tol

    def magnitude(self, x) -> float:
        return abs(x)

    def invert(self, x) -> complex:
        x = self.coerce(x)
        if abs(x) <= self.tol:
            raise NotAUnitError("scalar not a unit")
        return 1 / x

    def sqrt_unit(self, x) -> complex:
        return cmath.sqrt(self.coerce(x))

    def bar(self, x):
        return self.coerce(x).conjugate()

    def from_literal(self, lit) -> complex:
        if isinstance(lit, (list, tuple)) and len(lit) == 2:
            return complex(float(lit[0]), float(lit[1]))
        if isinstance(lit, (int, float)):
            return complex(lit)
        if isinstance(lit, str):
            return complex(float(Fraction(lit)))
        raise ValueError(f"bad complex literal {lit!r}")

    def to_literal(self, x):
        x = self.coerce(x)
        return [x.real, x.imag]

    def __eq__(self, other):
        return isinstance(other, ComplexRing)

    def __hash__(self):
        return hash("complex")

    def __repr__(self):
        return f"ComplexRing(tol={self.tol})"


def ring_for_mode(mode: str, tol: float = 1e-9):
    if mode == "rational":
        return RationalRing()
    if mode == "laurent":
        return LaurentRing()
    if mode == "complex":
        return ComplexRing(tol)
    raise ValueError(f"unknown scalar mode {mode!r}")


def _ring_of(x):
    if isinstance(x, LaurentPoly):
        return LaurentRing()
    if isinstance(x, (int, Fraction)):
        return RationalRing()
    if isinstance(x, (float, complex)):
        return ComplexRing()
    raise ScalarModeError(f"unrecognized scalar {x!r}")


def _common_ring(x, y):
    rx, ry = _ring_of(x), _ring_of(y)
    # plain ints act as ambient integers and live in every ring
    if isinstance(x, int) and not isinstance(x, bool):
        return ry
    if isinstance(y, int) and not isinstance(y, bool):
        return rx
    if rx != ry:
        raise ScalarModeError("scalar mode mismatch")
    return rx


def add(x, y):
    r = _common_ring(x, y)
    return r.coerce(x) + r.coerce(y)


def mul(x, y):
    r = _common_ring(x, y)
    return r.coerce(x) * r.coerce(y)


def neg(x):
    return -_ring_of(x).coerce(x)


def invert(x):
    return _ring_of(x).invert(x)


def sqrt_unit(x):
    return _ring_of(x).sqrt_unit(x)
