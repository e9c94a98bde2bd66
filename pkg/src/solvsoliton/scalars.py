"""Exact scalar arithmetic: rationals, quadratic surds, second-order jets.

Rational numbers are plain ``fractions.Fraction`` (always reduced, positive
denominator, serialized as ``"p/q"`` or ``"p"``).  ``Surd`` models a + b*sqrt(q)
over one fixed radicand q, ``Jet2`` carries (value, d/drho, d2/drho2) with
exact coefficients, and ``FloatJet2`` is the float multivariate analogue used
by the numeric engine.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np

__all__ = [
    "Fraction",
    "RadicandMismatchError",
    "Surd",
    "Jet2",
    "FloatJet2",
    "rational",
    "rat_str",
    "surd",
    "sqrt_fraction",
    "square_root_of_fraction",
]


class RadicandMismatchError(ValueError):
    """Raised when two surds over different radicands are combined."""


def rational(value) -> Fraction:
    """Parse a rational from "p/q" / "p" strings, ints, or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def square_root_of_fraction(q: Fraction):
    """Exact square root of q if q is a square of a rational, else None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _squarefree_decompose(k: int):
    """k = s^2 * m with m squarefree; returns (s, m).  Trial division."""
    s, m = 1, 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            e = 0
            while k % p == 0:
                k //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    return s, m * k


def surd(a, b=0, q=1):
    """Build a + b*sqrt(q), collapsing to a Fraction whenever exact.

    Radicands are canonicalized to their squarefree integer core, so two
    presentations of the same value (say sqrt(3/8) and (1/4)sqrt(6)) compare
    and combine exactly.  The result is a plain Fraction if b = 0 or q is a
    rational square; otherwise a normalized Surd with b != 0 and q a
    squarefree integer > 1.
    """
    a, b, q = Fraction(a), Fraction(b), Fraction(q)
    if b == 0 or q == 0:
        return a
    if q < 0:
        raise ValueError("negative radicand")
    # sqrt(num/den) = sqrt(num*den)/den = (s/den) sqrt(m)
    s, m = _squarefree_decompose(q.numerator * q.denominator)
    if m == 1:
        return a + b * Fraction(s, q.denominator)
    return Surd(a, b * Fraction(s, q.denominator), Fraction(m))


def sqrt_fraction(x):
    """sqrt of a non-negative Fraction as an exact scalar (Fraction or Surd)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational")
    if x == 0:
        return Fraction(0)
    return surd(0, 1, x)


def _as_surd_parts(x, q):
    """Coerce x to (a, b) parts over radicand q; None if incompatible."""
    if isinstance(x, Surd):
        if x.q != q:
            raise RadicandMismatchError(f"radicands differ: {x.q} vs {q}")
        return x.a, x.b
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    return None


class Surd:
    """a + b*sqrt(q) with rational a, b and fixed non-square radicand q > 0.

    Instances are produced by the :func:`surd` factory and are always
    normalized: b != 0 and q not a rational square.  Arithmetic between two
    surds requires matching radicands.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a: Fraction, b: Fraction, q: Fraction):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    def __add__(self, other):
        parts = _as_surd_parts(other, self.q)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return surd(self.a + oa, self.b + ob, self.q)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.q)

    def __sub__(self, other):
        parts = _as_surd_parts(other, self.q)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return surd(self.a - oa, self.b - ob, self.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = _as_surd_parts(other, self.q)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return surd(
            self.a * oa + self.b * ob * self.q,
            self.a * ob + self.b * oa,
            self.q,
        )

    __rmul__ = __mul__

    def _inverse(self):
        # 1/(a + b*sqrt(q)) = (a - b*sqrt(q)) / (a^2 - b^2 q); the norm is
        # nonzero because q is not a rational square.
        norm = self.a * self.a - self.b * self.b * self.q
        return surd(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return self * other._inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return surd(self.a / other, self.b / other, self.q)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return other * self._inverse()
        return NotImplemented

    def conjugate(self):
        return Surd(self.a, -self.b, self.q)

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(q); never zero for a normalized surd."""
        a, b = self.a, self.b
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        # a and b have opposite signs: compare a^2 with b^2 q.
        if a * a > b * b * self.q:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other):
        diff = self - other
        if isinstance(diff, Surd):
            return diff.sign() < 0
        return diff < 0

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        diff = self - other
        if isinstance(diff, Surd):
            return diff.sign() > 0
        return diff > 0

    def __ge__(self, other):
        return self == other or self > other

    def __bool__(self):
        return True  # normalized surds are irrational, hence nonzero

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        if isinstance(other, (int, Fraction)):
            return False  # irrational by normalization
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.q) ** 0.5

    def __str__(self):
        return f"{self.a} + {self.b}*sqrt({self.q})"

    __repr__ = __str__


def _jet_coerce(x):
    if isinstance(x, Jet2):
        return x
    if isinstance(x, (int, Fraction)):
        return Jet2(Fraction(x), Fraction(0), Fraction(0))
    return None


class Jet2:
    """Order-2 univariate jet (value, first, second derivative), exact."""

    __slots__ = ("v", "d1", "d2")

    def __init__(self, v, d1=0, d2=0):
        object.__setattr__(self, "v", Fraction(v))
        object.__setattr__(self, "d1", Fraction(d1))
        object.__setattr__(self, "d2", Fraction(d2))

    def __setattr__(self, name, value):
        raise AttributeError("Jet2 is immutable")

    @classmethod
    def lift(cls, r) -> "Jet2":
        """Constant jet: derivatives vanish."""
        return cls(Fraction(r), 0, 0)

    @classmethod
    def variable(cls, rho0) -> "Jet2":
        """The coordinate itself, evaluated at rho0."""
        return cls(Fraction(rho0), 1, 0)

    def __add__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return Jet2(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2)

    def __sub__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return Jet2(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return Jet2(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2 * self.d1 * o.d1 + self.v * o.d2,
        )

    __rmul__ = __mul__

    def _inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("division by a jet with zero value")
        v = self.v
        return Jet2(1 / v, -self.d1 / v**2, (2 * self.d1**2 - v * self.d2) / v**3)

    def __truediv__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self._inverse() ** (-k)
        out = Jet2(1, 0, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.v or self.d1 or self.d2)

    def __eq__(self, other):
        o = _jet_coerce(other)
        if o is None:
            return NotImplemented
        return (self.v, self.d1, self.d2) == (o.v, o.d1, o.d2)

    def __hash__(self):
        return hash((self.v, self.d1, self.d2))

    def __repr__(self):
        return f"Jet2({self.v}, {self.d1}, {self.d2})"


class FloatJet2:
    """Float scalar with gradient and Hessian over m active coordinates."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v: float, g: np.ndarray, h: np.ndarray):
        self.v = float(v)
        self.g = g
        self.h = h

    @classmethod
    def constant(cls, v: float, m: int) -> "FloatJet2":
        return cls(v, np.zeros(m), np.zeros((m, m)))

    @classmethod
    def variable(cls, i: int, v: float, m: int) -> "FloatJet2":
        g = np.zeros(m)
        g[i] = 1.0
        return cls(v, g, np.zeros((m, m)))

    def _coerce(self, other):
        if isinstance(other, FloatJet2):
            return other
        if isinstance(other, (int, float)):
            return FloatJet2.constant(float(other), self.g.shape[0])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FloatJet2(self.v + o.v, self.g + o.g, self.h + o.h)

    __radd__ = __add__

    def __neg__(self):
        return FloatJet2(-self.v, -self.g, -self.h)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FloatJet2(self.v - o.v, self.g - o.g, self.h - o.h)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cross = np.outer(self.g, o.g)
        return FloatJet2(
            self.v * o.v,
            self.v * o.g + o.v * self.g,
            self.v * o.h + o.v * self.h + cross + cross.T,
        )

    __rmul__ = __mul__

    def _inverse(self):
        if self.v == 0.0:
            raise ZeroDivisionError("division by a jet with zero value")
        iv = 1.0 / self.v
        grad = -self.g * iv * iv
        outer = np.outer(self.g, self.g)
        hess = -self.h * iv * iv + 2.0 * outer * iv**3
        return FloatJet2(iv, grad, hess)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o._inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self._inverse()

    def __repr__(self):
        return f"FloatJet2({self.v})"
