"""Exact coefficient arithmetic.

Two building blocks carry every computation in the package:

* :class:`LaurentPoly` -- a univariate Laurent polynomial over Q, used for
  the weight ``lam``, the deformation parameter ``eps`` and the knot
  variables ``T``, ``t`` and ``s`` (``q = s**2``).
* :class:`HSeries` -- a power series in ``h`` truncated at a *valid order*,
  with :class:`LaurentPoly` coefficients.

Polynomial multiplication is delegated to FLINT (``fmpq_poly``); everything
above that is plain Python.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import flint

Scalar = Union[int, Fraction]


class TruncationError(ArithmeticError):
    """A coefficient beyond the valid order of a series was requested."""


class NotInvertibleError(ArithmeticError):
    pass


def _fq(c) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


def _frac(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


_ZERO_POLY = flint.fmpq_poly([])


class LaurentPoly:
    """Laurent polynomial ``x**val * body(x)`` with ``body(0) != 0``."""

    __slots__ = ("body", "val", "var")

    def __init__(self, body=None, val: int = 0, var: str = "x"):
        if body is None:
            body = _ZERO_POLY
        elif not isinstance(body, flint.fmpq_poly):
            body = flint.fmpq_poly([_fq(c) for c in body])
        if body.is_zero():
            val = 0
        else:
            k = 0
            while body[k] == 0:
                k += 1
            if k:
                body = body.right_shift(k)
                val += k
        self.body = body
        self.val = val
        self.var = var

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar, var: str = "x") -> "LaurentPoly":
        return cls(flint.fmpq_poly([_fq(c)]), 0, var)

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1, var: str = "x") -> "LaurentPoly":
        return cls(flint.fmpq_poly([_fq(c)]), k, var)

    @classmethod
    def from_dict(cls, terms: Mapping[int, Scalar], var: str = "x") -> "LaurentPoly":
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            return cls(None, 0, var)
        lo = min(terms)
        hi = max(terms)
        body = [0] * (hi - lo + 1)
        for k, c in terms.items():
            body[k - lo] = c
        return cls(body, lo, var)

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __bool__(self) -> bool:
        return not self.body.is_zero()

    @property
    def degree(self) -> int:
        """Highest exponent; -inf-like sentinel for zero is avoided by raising."""
        if self.is_zero():
            raise ValueError("degree of zero polynomial")
        return self.val + self.body.degree()

    def terms(self) -> dict[int, Fraction]:
        out = {}
        for i, c in enumerate(self.body.coeffs()):
            if c != 0:
                out[self.val + i] = _frac(c)
        return out

    def coeff(self, k: int) -> Fraction:
        i = k - self.val
        if self.is_zero() or i < 0 or i > self.body.degree():
            return Fraction(0)
        return _frac(self.body[i])

    def is_monomial(self) -> bool:
        return not self.is_zero() and self.body.degree() == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self.val == 0 and self.body.degree() == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeff(0)

    # arithmetic -----------------------------------------------------------
    def _wrap(self, body, val) -> "LaurentPoly":
        return LaurentPoly(body, val, self.var)

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lo = min(self.val, other.val)
        a = self.body.left_shift(self.val - lo) if self.val > lo else self.body
        b = other.body.left_shift(other.val - lo) if other.val > lo else other.body
        return self._wrap(a + b, lo)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return self._wrap(-self.body, self.val)

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if self.is_zero() or other.is_zero():
                return self._wrap(None, 0)
            return self._wrap(self.body * other.body, self.val + other.val)
        if isinstance(other, HSeries):
            return NotImplemented
        return self._wrap(self.body * _fq(other), self.val)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.inverse() ** (-k)
        return self._wrap(self.body ** k, self.val * k)

    def inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise NotInvertibleError(f"{self} is not a unit of the Laurent ring")
        return self._wrap(flint.fmpq_poly([1 / self.body[0]]), -self.val)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return self._wrap(self.body, self.val + k)

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division in the Laurent ring; raises if there is a remainder."""
        if other.is_zero():
            raise ZeroDivisionError
        q, r = divmod(self.body, other.body)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return self._wrap(q, self.val - other.val)

    def truncate_above(self, d: int) -> "LaurentPoly":
        """Drop every term of exponent > d."""
        if self.is_zero() or self.degree <= d:
            return self
        if d < self.val:
            return self._wrap(None, 0)
        return self._wrap(self.body.truncate(d - self.val + 1), self.val)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({k - 1: k * c for k, c in self.terms().items()}, self.var)

    def reflect(self) -> "LaurentPoly":
        """``p(x) -> p(1/x)``."""
        return LaurentPoly.from_dict({-k: c for k, c in self.terms().items()}, self.var)

    def scale_var(self, c: Scalar) -> "LaurentPoly":
        """``p(x) -> p(c*x)``."""
        c = Fraction(c)
        return LaurentPoly.from_dict({k: v * c ** k for k, v in self.terms().items()}, self.var)

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self.body, self.val, var)

    def __call__(self, x):
        """Evaluate at a rational, a LaurentPoly or an HSeries."""
        terms = self.terms()
        if isinstance(x, (int, Fraction)):
            x = Fraction(x)
            return sum((c * x ** k for k, c in terms.items()), Fraction(0))
        out = None
        for k, c in sorted(terms.items()):
            t = (x ** k) * c
            out = t if out is None else out + t
        if out is None:
            return x * 0
        return out

    def is_symmetric(self) -> bool:
        return self == self.reflect()

    # comparison / display -------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.val == other.val and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.val, tuple(sorted(self.terms().items()))))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        terms = sorted(self.terms().items())
        if not terms:
            return "0"
        pieces = []
        for k, c in terms:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mon = self.var if k == 1 else f"{self.var}^{k}"
                body = mon if a == 1 else f"{a}*{mon}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list:
        return [[[k], str(c.numerator), str(c.denominator)] for k, c in sorted(self.terms().items())]

    @classmethod
    def from_json(cls, data: Sequence, var: str = "x") -> "LaurentPoly":
        return cls.from_dict({e[0]: Fraction(int(n), int(d)) for e, n, d in data}, var)


def lpoly(terms: Mapping[int, Scalar] | Scalar, var: str = "x") -> LaurentPoly:
    """Shorthand: ``lpoly({-1: 1, 0: -1, 1: 1}, 't')``."""
    if isinstance(terms, Mapping):
        return LaurentPoly.from_dict(terms, var)
    return LaurentPoly.const(terms, var)


class HSeries:
    """Truncated power series ``sum_{i<=order} c_i h**i``.

    Coefficients beyond ``order`` are unknown, never zero: asking for one
    raises :class:`TruncationError`.
    """

    __slots__ = ("c", "order", "var")

    def __init__(self, coeffs: Iterable, order: int, var: str = "x"):
        if order < 0:
            raise TruncationError("series has no valid coefficients")
        cs = []
        for x in coeffs:
            if not isinstance(x, LaurentPoly):
                x = LaurentPoly.const(x, var)
            cs.append(x)
            if len(cs) > order:
                break
        zero = LaurentPoly(None, 0, var)
        while len(cs) <= order:
            cs.append(zero)
        self.c = cs
        self.order = order
        self.var = var

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c, order: int, var: str = "x") -> "HSeries":
        return cls([c], order, var)

    @classmethod
    def h(cls, order: int, var: str = "x", coeff=1) -> "HSeries":
        """The series ``coeff * h``."""
        return cls([0, coeff], order, var)

    @classmethod
    def exp_linear(cls, a, order: int, var: str = "x") -> "HSeries":
        """``exp(a*h)`` for a coefficient ``a``."""
        if not isinstance(a, LaurentPoly):
            a = LaurentPoly.const(a, var)
        cs = [LaurentPoly.const(1, var)]
        p = LaurentPoly.const(1, var)
        for i in range(1, order + 1):
            p = p * a * Fraction(1, i)
            cs.append(p)
        return cls(cs, order, var)

    # access ---------------------------------------------------------------
    def __getitem__(self, i: int) -> LaurentPoly:
        if i > self.order:
            raise TruncationError(f"h^{i} requested but series valid only through h^{self.order}")
        if i < 0:
            return LaurentPoly(None, 0, self.var)
        return self.c[i]

    def coeff_of(self, i: int, k: int = 0) -> Fraction:
        return self[i].coeff(k)

    def valuation(self) -> int | None:
        """Lowest nonzero h-degree, or None if zero through ``order``."""
        for i, x in enumerate(self.c):
            if not x.is_zero():
                return i
        return None

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.c)

    def truncate(self, order: int) -> "HSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend series valid through h^{self.order} to h^{order}")
        return HSeries(self.c[: order + 1], order, self.var)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "HSeries":
        if isinstance(other, HSeries):
            return other
        if isinstance(other, LaurentPoly):
            return HSeries([other], self.order, self.var)
        return HSeries([LaurentPoly.const(other, self.var)], self.order, self.var)

    def __add__(self, other) -> "HSeries":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return HSeries([self.c[i] + other.c[i] for i in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self) -> "HSeries":
        return HSeries([-x for x in self.c], self.order, self.var)

    def __sub__(self, other) -> "HSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "HSeries":
        return (-self) + other

    def __mul__(self, other) -> "HSeries":
        if not isinstance(other, HSeries):
            if isinstance(other, LaurentPoly):
                return HSeries([x * other for x in self.c], self.order, self.var)
            return HSeries([x * other for x in self.c], self.order, self.var)
        n = min(self.order, other.order)
        a, b = self.c, other.c
        za = [not x.is_zero() for x in a]
        zb = [not x.is_zero() for x in b]
        out = []
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                if za[i] and zb[k - i]:
                    t = a[i] * b[k - i]
                    acc = t if acc is None else acc + t
            out.append(acc if acc is not None else LaurentPoly(None, 0, self.var))
        return HSeries(out, n, self.var)

    def __rmul__(self, other) -> "HSeries":
        return self * other

    def shift(self, k: int) -> "HSeries":
        """Multiply by ``h**k`` (k >= 0); the valid order grows by k."""
        zero = LaurentPoly(None, 0, self.var)
        return HSeries([zero] * k + self.c, self.order + k, self.var)

    def inv(self) -> "HSeries":
        c0 = self.c[0]
        if c0.is_zero() or not c0.is_monomial():
            raise NotInvertibleError("constant term of series is not a unit")
        u = c0.inverse()
        out = [u]
        for k in range(1, self.order + 1):
            acc = LaurentPoly(None, 0, self.var)
            for j in range(1, k + 1):
                if not self.c[j].is_zero():
                    acc = acc + self.c[j] * out[k - j]
            out.append(-(acc * u))
        return HSeries(out, self.order, self.var)

    def __truediv__(self, other) -> "HSeries":
        if isinstance(other, HSeries):
            return self * other.inv()
        if isinstance(other, LaurentPoly):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def div_exact(self, other: "HSeries") -> "HSeries":
        """Divide by a series of positive h-valuation.

        The numerator must vanish below the divisor's valuation ``v``; the
        result is valid through ``min(orders) - v``.
        """
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by a series that vanishes through its valid order")
        for i in range(min(v, self.order + 1)):
            if not self.c[i].is_zero():
                raise ArithmeticError(f"numerator has nonzero h^{i} term; divisor has valuation {v}")
        n = min(self.order, other.order) - v
        if n < 0:
            raise TruncationError("nothing left after exact division")
        num = HSeries(self.c[v : v + n + 1], n, self.var)
        den = HSeries(other.c[v : v + n + 1], n, self.var)
        return num * den.inv()

    def __pow__(self, k: int) -> "HSeries":
        if k < 0:
            return self.inv() ** (-k)
        out = HSeries.const(1, self.order, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exp(self) -> "HSeries":
        if not self.c[0].is_zero():
            raise ArithmeticError("exp requires zero constant term")
        out = [LaurentPoly.const(1, self.var)]
        for k in range(1, self.order + 1):
            acc = LaurentPoly(None, 0, self.var)
            for j in range(1, k + 1):
                if not self.c[j].is_zero():
                    acc = acc + self.c[j] * out[k - j] * j
            out.append(acc * Fraction(1, k))
        return HSeries(out, self.order, self.var)

    def log(self) -> "HSeries":
        if self.c[0] != LaurentPoly.const(1, self.var):
            raise ArithmeticError("log requires constant term 1")
        out = [LaurentPoly(None, 0, self.var)]
        for k in range(1, self.order + 1):
            acc = self.c[k] * k
            for j in range(1, k):
                if not out[j].is_zero():
                    acc = acc - out[j] * self.c[k - j] * j
            out.append(acc * Fraction(1, k))
        return HSeries(out, self.order, self.var)

    # substitution -----------------------------------------------------------
    def subs_var(self, value, order: int | None = None) -> "HSeries":
        """Substitute the coefficient variable by ``value``.

        ``value`` may be a rational (result keeps h-series structure over Q)
        or an HSeries (e.g. ``eps -> 2h``); negative exponents require the
        value to be invertible.
        """
        if isinstance(value, (int, Fraction)):
            return HSeries([LaurentPoly.const(x(Fraction(value)), self.var) for x in self.c], self.order, self.var)
        n = self.order if order is None else min(order, self.order)
        n = min(n, value.order)
        out = HSeries.const(0, n, value.var)
        powers: dict[int, HSeries] = {}

        def pw(k):
            if k not in powers:
                powers[k] = value.truncate(n) ** k
            return powers[k]

        for i in range(n + 1):
            x = self.c[i]
            if x.is_zero():
                continue
            acc = HSeries.const(0, n - i, value.var)
            for k, c in x.terms().items():
                acc = acc + pw(k).truncate(n - i) * c
            out = out + acc.shift(i)
        return out

    def scale_h(self, alpha: Scalar) -> "HSeries":
        """``f(h) -> f(alpha*h)``."""
        alpha = Fraction(alpha)
        return HSeries([x * alpha ** i for i, x in enumerate(self.c)], self.order, self.var)

    def map_coeffs(self, f) -> "HSeries":
        return HSeries([f(x) for x in self.c], self.order, self.var)

    # comparison / display -------------------------------------------------
    def equals(self, other, order: int | None = None) -> bool:
        other = self._coerce(other)
        n = min(self.order, other.order)
        if order is not None:
            if order > n:
                raise TruncationError(f"comparison through h^{order} but operands valid through h^{n}")
            n = order
        return all(self.c[i] == other.c[i] for i in range(n + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (HSeries, LaurentPoly, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        parts = []
        for i, x in enumerate(self.c):
            if not x.is_zero():
                parts.append(f"({x})*h^{i}")
        return " + ".join(parts or ["0"]) + f" + O(h^{self.order + 1})"

    def to_json(self) -> list:
        return [x.to_json() for x in self.c]

    @classmethod
    def from_json(cls, data: Sequence, var: str = "x") -> "HSeries":
        cs = [LaurentPoly.from_json(x, var) for x in data]
        return cls(cs, len(cs) - 1, var)


def qnum(x, order: int, var: str = "x") -> HSeries:
    """Symmetric quantum number ``(q**x - q**-x)/(q - 1/q)`` at ``q = e^h``.

    ``x`` may be a rational or a coefficient polynomial (e.g. ``lam - p``).
    Computed as ``sinh(hx)/sinh(h)`` with the common factor h cancelled
    symbolically, so no valid order is lost.
    """
    if not isinstance(x, LaurentPoly):
        x = LaurentPoly.const(x, var)
    num, den = [], []
    xp = x
    for i in range(order + 1):
        # sinh(hx)/h has x^(2k+1)/(2k+1)! at h^(2k)
        if i % 2 == 0:
            f = Fraction(1, _factorial(i + 1))
            num.append(xp * f)
            den.append(LaurentPoly.const(f, var))
            xp = xp * x * x
        else:
            num.append(LaurentPoly(None, 0, var))
            den.append(LaurentPoly(None, 0, var))
    return HSeries(num, order, var) * HSeries(den, order, var).inv()


def q_minus_qinv(order: int, var: str = "x") -> HSeries:
    """``q - q**-1 = 2 sinh(h)``."""
    cs = [Fraction(0)] * (order + 1)
    for i in range(1, order + 1, 2):
        cs[i] = Fraction(2, _factorial(i))
    return HSeries(cs, order, var)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Exact least-structure solve of ``A x = b`` over Q.

    Returns ``(x, rank, consistent)``; free variables are set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    consistent = all(a[i][n] == 0 for i in range(r, m))
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    return x, r, consistent
