"""Alexander polynomial of a braid closure via the reduced Burau representation."""

from __future__ import annotations

from kinv.coeff import HSeries, LaurentPoly
from kinv.diagrams import BraidWord

T_VAR = "t"


class AlexanderError(ArithmeticError):
    pass


def _lp(d: dict[int, int]) -> LaurentPoly:
    return LaurentPoly.from_dict(d, T_VAR)


ZERO = _lp({})
ONE = _lp({0: 1})


def _identity(m: int) -> list[list[LaurentPoly]]:
    return [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]


def _generator(n: int, i: int, inverse: bool) -> list[list[LaurentPoly]]:
    """Reduced Burau image of ``s_i^{+-1}`` (1-based ``i``) on ``n`` strands."""
    m = n - 1
    if inverse:
        block = [[ONE, ONE, ZERO], [ZERO, _lp({-1: -1}), ZERO], [ZERO, _lp({-1: 1}), ONE]]
    else:
        block = [[ONE, _lp({1: 1}), ZERO], [ZERO, _lp({1: -1}), ZERO], [ZERO, ONE, ONE]]
    out = _identity(m)
    # block rows/cols correspond to indices i-2, i-1, i (0-based), clipped to the matrix
    for bi, r in enumerate((i - 2, i - 1, i)):
        for bj, c in enumerate((i - 2, i - 1, i)):
            if 0 <= r < m and 0 <= c < m:
                out[r][c] = block[bi][bj]
    return out


def _matmul(a, b):
    m = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(m)), ZERO) for j in range(m)] for i in range(m)]


def burau_reduced(b: BraidWord) -> list[list[LaurentPoly]]:
    m = b.strands - 1
    out = _identity(m)
    for g in b.letters:
        out = _matmul(out, _generator(b.strands, abs(g), g < 0))
    return out


def determinant(a: list[list[LaurentPoly]]) -> LaurentPoly:
    """Bareiss fraction-free elimination over the Laurent ring."""
    m = len(a)
    if m == 0:
        return ONE
    a = [row[:] for row in a]
    sign = 1
    prev = ONE
    for k in range(m - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, m) if not a[r][k].is_zero()), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev)
        prev = a[k][k]
    return a[m - 1][m - 1] * sign


def normalize(p: LaurentPoly) -> LaurentPoly:
    """The unique ``+-t^k p`` with ``p(1/t) = p(t)`` and ``p(1) = 1``."""
    if p.is_zero():
        raise AlexanderError("Alexander polynomial vanished (split link?)")
    lo, hi = p.val, p.degree
    if (lo + hi) % 2:
        raise AlexanderError("odd span: no integral normalization (link with even number of components?)")
    p = p.shift(-(lo + hi) // 2)
    v = p(1)
    if v == -1:
        p = -p
    elif v != 1:
        raise AlexanderError(f"Delta(1) = {v}; input is not a knot")
    if not p.is_symmetric():
        raise AlexanderError("normalized polynomial is not symmetric")
    return p


def alexander_poly(b: BraidWord) -> LaurentPoly:
    n = b.strands
    if n == 1:
        return ONE
    m = burau_reduced(b)
    ident = _identity(n - 1)
    det = determinant([[ident[i][j] - m[i][j] for j in range(n - 1)] for i in range(n - 1)])
    return normalize(det.divexact(_lp({k: 1 for k in range(n)})))


def substitute_exp(p: LaurentPoly, rate: LaurentPoly | int, order: int, var: str = "lam") -> HSeries:
    """``p(exp(rate*h))`` as an h-series (``rate`` a coefficient, e.g. ``2*lam``)."""
    if not isinstance(rate, LaurentPoly):
        rate = LaurentPoly.const(rate, var)
    out = HSeries.const(0, order, var)
    for k, c in p.terms().items():
        out = out + HSeries.exp_linear(rate * k, order, var) * c
    return out


def inverse_delta_series(delta: LaurentPoly, c: int, order: int) -> HSeries:
    """``1/Delta(exp(c*h*lam))`` over Q[lam]."""
    lam = LaurentPoly.monomial(1, 1, "lam")
    if delta(1) != 1:
        raise AlexanderError("Delta(1) must be 1")
    return substitute_exp(delta, lam * c, order).inv()
