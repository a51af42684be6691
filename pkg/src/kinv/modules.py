"""Highest-weight modules of the Drinfeld double presentation.

Each model supplies the matrix coefficients the bead evaluator needs for a
module with basis ``m_0, m_1, ...``:

* ``H'`` acts on ``m_p`` by ``w - 2p`` (``w`` the highest weight), the
  central ``c`` by ``mu``; hence ``H = H' - c`` and ``Ht = -H' - c``.
* ``E m_{p+1} = [p+1] m_p`` and ``F' m_p = [w - p] m_{p+1}``, with
  ``F = exp(-h c) F'``.
* ``R = q^{-H(x)Ht/2} sum_n (q-1/q)^n q^{n(n-1)/2} E^(n) (x) F^n`` with the
  divided power ``E^(n) = E^n/[n]!``, and pivot ``kappa = q^{H'}``.

:class:`VermaModel` works over h-series with polynomial coefficients in the
symbolic weight ``lam``; :class:`FiniteModel` is the ``(w+1)``-dimensional
quotient at integer ``w`` with exact Laurent polynomials in ``s = q^(1/2)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from kinv.coeff import HSeries, LaurentPoly, q_minus_qinv, qnum

LAM = "lam"


class VermaModel:
    """``M(lam, mu)`` with ``mu = sigma*lam`` (``sigma`` in {-1, 0, +1}).

    ``sigma = 0`` is the plain ``U_h(sl2)`` Verma module.
    """

    def __init__(self, order: int, sigma: int = -1):
        if sigma not in (-1, 0, 1):
            raise ValueError("sigma must be -1, 0 or +1")
        self.order = order
        self.sigma = sigma
        self.lam = LaurentPoly.monomial(1, 1, LAM)
        self.mu = self.lam * sigma
        self._qmq = q_minus_qinv(order, LAM)
        self._cache: dict = {}

    # scalars
    def one(self) -> HSeries:
        return HSeries.const(1, self.order, LAM)

    def is_zero(self, x: HSeries) -> bool:
        return x.is_zero()

    def budget(self, x: HSeries) -> int:
        """Largest n worth expanding given the h-valuation of the running coefficient."""
        v = x.valuation()
        return -1 if v is None else self.order - v

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def qint(self, k: int) -> HSeries:
        return self._memo(("q", k), lambda: qnum(k, self.order, LAM))

    def weight_h(self, p: int) -> LaurentPoly:
        return self.lam - 2 * p - self.mu

    def weight_ht(self, p: int) -> LaurentPoly:
        return -(self.lam - 2 * p) - self.mu

    def e_div(self, p: int, n: int):
        """Coefficient of ``E^(n) m_p = c m_{p-n}``; None if it vanishes."""
        if n > p:
            return None

        def f():
            out = self.one()
            for j in range(n):
                out = out * self.qint(p - j) * self.qint(j + 1).inv()
            return out

        return self._memo(("e", p, n), f)

    def f_pow(self, p: int, n: int):
        def f():
            out = HSeries.exp_linear(-self.mu * n, self.order, LAM)
            for j in range(n):
                out = out * qnum(self.lam - (p + j), self.order, LAM)
            return out

        return self._memo(("f", p, n), f)

    def theta(self, n: int, positive: bool) -> HSeries:
        def f():
            if positive:
                return self._qmq ** n * HSeries.exp_linear(Fraction(n * (n - 1), 2), self.order, LAM)
            return (-self._qmq) ** n * HSeries.exp_linear(Fraction(-n * (n - 1), 2), self.order, LAM)

        return self._memo(("t", n, positive), f)

    def cartan(self, p_over: int, p_under: int, positive: bool) -> HSeries:
        """``q^{-+ H(x)Ht/2}`` evaluated on the measured weights of the two legs."""

        def f():
            ww = self.weight_h(p_over) * self.weight_ht(p_under) * Fraction(1, 2)
            return HSeries.exp_linear(-ww if positive else ww, self.order, LAM)

        return self._memo(("c", p_over, p_under, positive), f)

    def pivot(self, p: int, power: int) -> HSeries:
        return self._memo(("k", p, power), lambda: HSeries.exp_linear((self.lam - 2 * p) * power, self.order, LAM))


class FiniteModel:
    """The simple module of highest weight ``w`` (dimension ``w + 1``), ``mu = 0``."""

    def __init__(self, w: int):
        if w < 0:
            raise ValueError("highest weight must be non-negative")
        self.w = w
        self.order = None
        self._cache: dict = {}

    def one(self) -> LaurentPoly:
        return LaurentPoly.const(1, "s")

    def is_zero(self, x: LaurentPoly) -> bool:
        return x.is_zero()

    def budget(self, x) -> int:
        return self.w

    def qint(self, k: int) -> LaurentPoly:
        return _qint_s(k)

    def e_div(self, p: int, n: int):
        if n > p:
            return None
        return _qbinom_s(p, n)

    def f_pow(self, p: int, n: int):
        if p + n > self.w:
            return None
        out = self.one()
        for j in range(n):
            out = out * _qint_s(self.w - p - j)
        return out

    def theta(self, n: int, positive: bool) -> LaurentPoly:
        qmq = LaurentPoly.from_dict({2: 1, -2: -1}, "s")
        if positive:
            return qmq ** n * LaurentPoly.monomial(n * (n - 1), 1, "s")
        return (-qmq) ** n * LaurentPoly.monomial(-n * (n - 1), 1, "s")

    def cartan(self, p_over: int, p_under: int, positive: bool) -> LaurentPoly:
        e = (self.w - 2 * p_over) * (self.w - 2 * p_under)
        return LaurentPoly.monomial(e if positive else -e, 1, "s")

    def pivot(self, p: int, power: int) -> LaurentPoly:
        return LaurentPoly.monomial(2 * power * (self.w - 2 * p), 1, "s")


@lru_cache(maxsize=None)
def _qint_s(k: int) -> LaurentPoly:
    """``[k]_q`` with ``q = s^2`` as a Laurent polynomial in ``s``."""
    if k == 0:
        return LaurentPoly(None, 0, "s")
    sign = 1 if k > 0 else -1
    k = abs(k)
    return LaurentPoly.from_dict({2 * (k - 1 - 2 * i): sign for i in range(k)}, "s")


@lru_cache(maxsize=None)
def _qbinom_s(p: int, n: int) -> LaurentPoly:
    num = LaurentPoly.const(1, "s")
    den = LaurentPoly.const(1, "s")
    for j in range(n):
        num = num * _qint_s(p - j)
        den = den * _qint_s(j + 1)
    return num.divexact(den)


def s_to_hseries(x: LaurentPoly, order: int) -> HSeries:
    """Expand a Laurent polynomial in ``s = e^{h/2}`` as an h-series over Q."""
    out = HSeries.const(0, order, LAM)
    for k, c in x.terms().items():
        out = out + HSeries.exp_linear(Fraction(k, 2), order, LAM) * c
    return out


# --- central element eigenvalues on m_0 ---------------------------------------


def phi_t_eigenvalue(sigma: int, order: int) -> HSeries:
    """Image of ``T = exp(-h t)`` on ``m_0`` of ``M(lam, sigma*lam)``, read off the module.

    ``phi(t) = -eps (H + Ht)/2`` and ``phi(h) = 2h/eps``, so ``phi(T) = q^(H + Ht)``.
    """
    m = VermaModel(order, sigma)
    return HSeries.exp_linear(m.weight_h(0) + m.weight_ht(0), order, LAM)


def phi_w_eigenvalue(sigma: int, order: int) -> HSeries:
    """``phi(W) m_0 / eps`` computed from the module actions.

    ``phi(W) = eps (q - 1/q)/(2h) * (E F + (q q^Ht + q^-1 q^H
    - (1 + q^{H+Ht})(q + 1/q)/2) / (q - 1/q)^2)``.
    The returned series is the coefficient of ``eps``.
    """
    g = 2  # two exact divisions by q - 1/q
    n = order + g
    m = VermaModel(n, sigma)
    wh = m.weight_h(0)
    wht = m.weight_ht(0)
    # E F m_0 = E e^{-h mu} [lam] m_1 = e^{-h mu} [lam] [1] m_0
    ef = HSeries.exp_linear(-m.mu, n, LAM) * qnum(m.lam, n, LAM)
    q = HSeries.exp_linear(1, n, LAM)
    qi = HSeries.exp_linear(-1, n, LAM)
    num = (
        q * HSeries.exp_linear(wht, n, LAM)
        + qi * HSeries.exp_linear(wh, n, LAM)
        - (HSeries.exp_linear(wh + wht, n, LAM) + 1) * (q + qi) * Fraction(1, 2)
    )
    qmq = q_minus_qinv(n, LAM)
    bracket = ef + num.div_exact(qmq).div_exact(qmq)
    pref = qmq.div_exact(HSeries.h(n, LAM)) * Fraction(1, 2)
    return (pref * bracket).truncate(order)


def w_eigenvalue_closed_form(sigma: int, order: int) -> HSeries:
    """``(sigma/(4h)) (1 - q^{-2 sigma lam})`` as the coefficient of ``eps``."""
    lam = LaurentPoly.monomial(1, 1, LAM)
    n = order + 1
    num = HSeries.const(1, n, LAM) - HSeries.exp_linear(lam * (-2 * sigma), n, LAM)
    return (num.div_exact(HSeries.h(n, LAM)) * Fraction(sigma, 4)).truncate(order)
