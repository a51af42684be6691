"""The ribbon Hopf algebra D over Q[eps][[h]], and its tensor powers, truncated in h.

Elements are normal ordered as ``y^i P(b, a, eps) x^l`` per tensor factor.
An element of the ``k``-fold tensor power is a sparse map

    (y-exponents, x-exponents, d) -> P

meaning ``h^d * prod_f y_f^{i_f} P(b_f, a_f, eps) x_f^{l_f}``, where ``P`` is a
flint multivariate polynomial in all factors' ``b``, ``a`` and ``eps``.
Terms with ``d`` above the space's order are dropped.

Rewriting rules (``z = eps*a + b``, ``q = exp(eps*h)``)::

    x f(b, a) = f(b - eps, a - 1) x        f(b, a) y = y f(b - eps, a - 1)
    x y^s = q^s y^s x + y^(s-1) sum_k q^k C(z - 2(s-1-k) eps),   C(w) = (1 - exp(-h w))/h
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import flint

from kinv.coeff import LaurentPoly

EPS = "eps"


class AlgebraError(ArithmeticError):
    pass


def _q(c) -> flint.fmpq:
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


@lru_cache(maxsize=None)
def _ctx(k: int):
    names = tuple(itertools.chain.from_iterable((f"b{f}", f"a{f}") for f in range(1, k + 1))) + ("e",)
    return flint.fmpq_mpoly_ctx.get(names, "lex")


# --- polynomial series helpers in the one-factor context ---------------------------


def _series_mul(s, t, n):
    out = [None] * (n + 1)
    for i, u in enumerate(s):
        if u is None or u.is_zero():
            continue
        for j in range(0, n + 1 - i):
            v = t[j]
            if v is None or v.is_zero():
                continue
            out[i + j] = u * v if out[i + j] is None else out[i + j] + u * v
    return out


def _series_add(s, t):
    return [u if v is None else v if u is None else u + v for u, v in zip(s, t)]


class Space:
    """The ``k``-fold tensor power of D modulo ``h^(order+1)`` (and ``eps^(eps_order+1)`` if given).

    With ``eps_value`` the parameter ``eps`` is specialized to that nonzero
    rational, which allows division by ``eps``.
    """

    def __init__(self, order: int, factors: int = 1, eps_order: int | None = None, eps_value=None):
        if order < 0:
            raise ValueError("order must be non-negative")
        if eps_value is not None and (eps_order is not None or Fraction(eps_value) == 0):
            raise ValueError("eps_value must be nonzero and excludes eps_order")
        self.order = order
        self.k = factors
        self.eps_order = eps_order
        self.eps_value = None if eps_value is None else Fraction(eps_value)
        self.ctx = _ctx(factors)
        g = self.ctx.gens()
        self.bs = g[0:-1:2]
        self.as_ = g[1:-1:2]
        self.e = g[-1] if eps_value is None else self.ctx.constant(_q(eps_value))
        self._one = self.ctx.constant(1)
        self._zero = self.ctx.constant(0)
        self._xtab: dict = {}
        self._embed_cache: dict = {}

    def __repr__(self):
        return f"Space(order={self.order}, factors={self.k}, eps_order={self.eps_order}, eps_value={self.eps_value})"

    def compatible(self, other: "Space") -> bool:
        return (self.order, self.k, self.eps_order, self.eps_value) == (other.order, other.k, other.eps_order, other.eps_value)

    def with_factors(self, k: int, order: int | None = None) -> "Space":
        """Same truncation and eps handling with ``k`` tensor factors."""
        return Space(self.order if order is None else order, k, self.eps_order, self.eps_value)

    # -- construction -------------------------------------------------------------
    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def zeros(self) -> tuple:
        return (0,) * self.k

    def one(self) -> "Element":
        return self.scalar(1)

    def scalar(self, c, d: int = 0) -> "Element":
        p = c if isinstance(c, flint.fmpq_mpoly) else self.ctx.constant(_q(c))
        return self.element({(self.zeros(), self.zeros(), d): p}) if d <= self.order else self.element()

    def poly(self, p, d: int = 0) -> "Element":
        """``h^d * p(b, a, eps)`` for a polynomial in this space's context."""
        if d > self.order or p.is_zero():
            return self.element()
        return self.element({(self.zeros(), self.zeros(), d): self._trunc_e(p)})

    def _unit(self, f: int, n: int) -> tuple:
        return tuple(n if j == f else 0 for j in range(self.k))

    def y(self, f: int = 0, power: int = 1) -> "Element":
        return self.element({(self._unit(f, power), self.zeros(), 0): self._one})

    def x(self, f: int = 0, power: int = 1) -> "Element":
        return self.element({(self.zeros(), self._unit(f, power), 0): self._one})

    def a(self, f: int = 0) -> "Element":
        return self.poly(self.as_[f])

    def b(self, f: int = 0) -> "Element":
        return self.poly(self.bs[f])

    def z_poly(self, f: int = 0):
        return self.e * self.as_[f] + self.bs[f]

    def exp_h(self, w, scale=1) -> "Element":
        """``exp(scale * h * w)`` for a polynomial ``w`` in ``b``, ``a``, ``eps`` (commuting variables)."""
        out = {}
        p = self._one
        s = _q(scale)
        for d in range(self.order + 1):
            if d:
                p = p * w * s / d
            if not p.is_zero():
                out[(self.zeros(), self.zeros(), d)] = self._trunc_e(p)
        return self.element({k: v for k, v in out.items() if not v.is_zero()})

    def A(self, f: int = 0, power: int = 1) -> "Element":
        return self.exp_h(self.e * self.as_[f], -power)

    def B(self, f: int = 0, power: int = 1) -> "Element":
        return self.exp_h(self.bs[f], -power)

    def kappa(self, f: int = 0, power: int = 1) -> "Element":
        return self.exp_h(self.z_poly(f), Fraction(-power, 2))

    def T(self, f: int = 0, power: int = 1) -> "Element":
        return self.exp_h(self.bs[f] - self.e * self.as_[f], -power)

    def q_eps(self, power: int = 1) -> "Element":
        return self.exp_h(self.e, power)

    # -- internals ------------------------------------------------------------------
    def _trunc_e(self, p):
        if self.eps_order is None or p.is_zero() or p.degrees()[-1] <= self.eps_order:
            return p
        return self.ctx.from_dict({m: c for m, c in p.to_dict().items() if m[-1] <= self.eps_order})

    def _shift(self, p, svec):
        """``p`` with ``b_f -> b_f - s_f eps`` and ``a_f -> a_f - s_f``."""
        if not any(svec):
            return p
        imgs = []
        for f, s in enumerate(svec):
            imgs.append(self.bs[f] - s * self.e if s else self.bs[f])
            imgs.append(self.as_[f] - s if s else self.as_[f])
        imgs.append(self.e)
        return p.compose(*imgs)

    def embed_poly(self, p, positions: tuple[int, ...]):
        """Move a polynomial of a ``len(positions)``-fold context into factors ``positions`` of this one."""
        imgs = []
        for f in positions:
            imgs += [self.bs[f], self.as_[f]]
        imgs.append(self.e)
        return p.compose(*imgs)

    def _xy_table(self, f: int, l: int, p: int):
        """``x^l y^p`` in factor ``f`` as ``[(r, d, C)]``: ``sum h^d y^(p-r) C x^(l-r)``."""
        key = (f, l, p)
        if key not in self._xtab:
            one_factor = _commutation_series(self.order, l, p)
            out = []
            for r, ser in sorted(one_factor.items()):
                for d, c in enumerate(ser):
                    if c is not None and not c.is_zero():
                        c2 = self._trunc_e(c.compose(self.bs[f], self.as_[f], self.e))
                        if not c2.is_zero():
                            out.append((r, d, c2))
            self._xtab[key] = out
        return self._xtab[key]

    def multiply(self, u: "Element", v: "Element") -> "Element":
        n = self.order
        out: dict = {}
        k = self.k
        for (ys1, xs1, d1), pp in u.terms.items():
            for (ys2, xs2, d2), qq in v.terms.items():
                d12 = d1 + d2
                if d12 > n:
                    continue
                tables = []
                for f in range(k):
                    if xs1[f] and ys2[f]:
                        tables.append(self._xy_table(f, xs1[f], ys2[f]))
                    else:
                        tables.append(((0, 0, None),))
                shifted_p: dict = {}
                shifted_q: dict = {}
                for combo in itertools.product(*tables):
                    dd = d12 + sum(t[1] for t in combo)
                    if dd > n:
                        continue
                    rs = tuple(t[0] for t in combo)
                    sp = tuple(ys2[f] - rs[f] for f in range(k))
                    sq = tuple(xs1[f] - rs[f] for f in range(k))
                    if sp not in shifted_p:
                        shifted_p[sp] = self._shift(pp, sp)
                    if sq not in shifted_q:
                        shifted_q[sq] = self._shift(qq, sq)
                    c = shifted_p[sp]
                    for t in combo:
                        if t[2] is not None:
                            c = c * t[2]
                    c = self._trunc_e(c * shifted_q[sq])
                    if c.is_zero():
                        continue
                    key = (
                        tuple(ys1[f] + sp[f] for f in range(k)),
                        tuple(sq[f] + xs2[f] for f in range(k)),
                        dd,
                    )
                    if key in out:
                        s = out[key] + c
                        if s.is_zero():
                            del out[key]
                        else:
                            out[key] = s
                    else:
                        out[key] = c
        return Element(self, out)


@lru_cache(maxsize=None)
def _cfun(order: int, shift: int):
    """``C(z - 2*shift*eps)`` as a series list in the one-factor context."""
    ctx = _ctx(1)
    b, a, e = ctx.gens()
    w = e * a + b - 2 * shift * e
    out = []
    p = w
    for r in range(order + 1):
        if r:
            p = p * w
        out.append(p * _q(Fraction((-1) ** r, factorial(r + 1))))
    return out


@lru_cache(maxsize=None)
def _qpow(order: int, s: int):
    ctx = _ctx(1)
    e = ctx.gens()[2]
    return [(s * e) ** d * _q(Fraction(1, factorial(d))) for d in range(order + 1)]


@lru_cache(maxsize=None)
def _dseries(order: int, s: int):
    acc = [None] * (order + 1)
    for k in range(s):
        acc = _series_add(acc, _series_mul(_qpow(order, k), _cfun(order, s - 1 - k), order))
    return acc


@lru_cache(maxsize=None)
def _commutation_series(order: int, l: int, p: int):
    """``x^l y^p = sum_r y^(p-r) C_r x^(l-r)`` with ``C_r`` a series list (one-factor context)."""
    ctx = _ctx(1)
    b, a, e = ctx.gens()
    one = [ctx.constant(1)] + [None] * order
    if l == 0 or p == 0:
        return {0: one}
    prev = _commutation_series(order, l - 1, p)
    out: dict = {}
    for r, c in prev.items():
        s = p - r
        shifted = [None if u is None else u.compose(b - e, a - 1, e) for u in c]
        t1 = _series_mul(_qpow(order, s), shifted, order)
        out[r] = t1 if r not in out else _series_add(out[r], t1)
        if s >= 1:
            t2 = _series_mul(_dseries(order, s), c, order)
            out[r + 1] = t2 if r + 1 not in out else _series_add(out[r + 1], t2)
    return out


class Element:
    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: dict):
        self.space = space
        self.terms = terms

    # arithmetic --------------------------------------------------------------------
    def _check(self, other: "Element"):
        if not self.space.compatible(other.space):
            raise AlgebraError(f"incompatible spaces {self.space} and {other.space}")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.space.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out[k] + v if k in out else v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Element(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.space.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.space.multiply(self, other)
        if isinstance(other, flint.fmpq_mpoly):
            out = {k: self.space._trunc_e(v * other) for k, v in self.terms.items()}
            return Element(self.space, {k: v for k, v in out.items() if not v.is_zero()})
        c = _q(other)
        if c == 0:
            return Element(self.space, {})
        return Element(self.space, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.space.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift_h(self, k: int) -> "Element":
        """Multiply by ``h^k``."""
        n = self.space.order
        return Element(self.space, {(ys, xs, d + k): v for (ys, xs, d), v in self.terms.items() if d + k <= n})

    def div_eps(self) -> "Element":
        """Exact division by ``eps``."""
        e = self.space.e
        out = {}
        for k, v in self.terms.items():
            try:
                out[k] = v / e
            except Exception as exc:  # flint raises a bare exception type
                raise AlgebraError("element is not divisible by eps") from exc
        return Element(self.space, out)

    # structure -----------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> int | None:
        return min((d for (_, _, d) in self.terms), default=None)

    def constant_part(self):
        """The ``h^0`` scalar part as a polynomial (``None`` if not purely Cartan at ``h^0``)."""
        z = self.space.zeros()
        return self.terms.get((z, z, 0), self.space._zero)

    def truncate(self, order: int) -> "Element":
        return Element(self.space, {k: v for k, v in self.terms.items() if k[2] <= order})

    def inverse(self) -> "Element":
        """Series inverse; the ``h^0`` part must be a nonzero rational constant."""
        sp = self.space
        c0 = self.constant_part()
        h0 = {k: v for k, v in self.terms.items() if k[2] == 0}
        if not c0.is_constant() or c0.is_zero() or len(h0) != 1:
            raise AlgebraError("only elements with an invertible scalar h^0 part are inverted")
        c = c0.leading_coefficient()
        unit = self * (1 / Fraction(int(c.p), int(c.q)))
        rest = unit - sp.one()
        out = sp.one()
        term = sp.one()
        for _ in range(sp.order):
            term = -(rest * term)
            if term.is_zero():
                break
            out = out + term
        return out * (1 / Fraction(int(c.p), int(c.q)))

    def equals(self, other: "Element") -> bool:
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.space.compatible(other.space) and self.equals(other)

    __hash__ = None

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    def max_hgrade_ok(self) -> bool:
        """The h-grading bound: total y- and x-degree at ``h^d`` never exceeds ``d``."""
        return all(sum(ys) + sum(xs) <= d for (ys, xs, d) in self.terms)

    # conversion -------------------------------------------------------------------------
    def monomials(self):
        """Iterate ``(ys, js, ks, xs, d, eps_power, coeff)`` over expanded monomials."""
        k = self.space.k
        for (ys, xs, d), p in self.terms.items():
            for exps, c in p.to_dict().items():
                js = tuple(int(exps[2 * f]) for f in range(k))
                ks = tuple(int(exps[2 * f + 1]) for f in range(k))
                yield ys, js, ks, xs, d, int(exps[-1]), Fraction(int(c.p), int(c.q))

    def to_json(self) -> str:
        """``[[exponents, [[h-degree, eps-poly], ...]], ...]`` sorted by exponents."""
        table: dict = {}
        for ys, js, ks, xs, d, m, c in self.monomials():
            key = tuple(itertools.chain.from_iterable(zip(ys, js, ks, xs)))
            table.setdefault(key, {}).setdefault(d, {})
            table[key][d][m] = table[key][d].get(m, 0) + c
        out = []
        for key in sorted(table):
            series = [[d, LaurentPoly.from_dict(table[key][d], EPS).to_json()] for d in sorted(table[key])]
            out.append([list(key), series])
        return json.dumps(out, separators=(",", ":"))

    def __repr__(self):
        parts = []
        for ys, js, ks, xs, d, m, c in sorted(self.monomials()):
            mono = "*".join(
                f"{g}{f + 1 if self.space.k > 1 else ''}^{e}"
                for f in range(self.space.k)
                for g, e in (("y", ys[f]), ("b", js[f]), ("a", ks[f]), ("x", xs[f]))
                if e
            )
            parts.append(f"{c}*h^{d}*eps^{m}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


# --- structure of D ---------------------------------------------------------------------


def algebra(order: int, eps_order: int | None = None) -> Space:
    return Space(order, 1, eps_order)


def normal_product(u: Element, v: Element) -> Element:
    return u * v


def _qfactorial_inverse(sp: Space, m: int) -> Element:
    """``1/{m}_q!`` with ``{j}_q = 1 + q + ... + q^(j-1)``, ``q = exp(eps*h)``."""
    out = sp.one()
    for j in range(1, m + 1):
        qint = sp.element()
        for i in range(j):
            qint = qint + sp.q_eps(i)
        out = out * qint
    return out.inverse()


_R_CACHE: dict = {}


def r_matrix(order: int, eps_order: int | None = None, eps_value=None) -> Element:
    """``sum h^(m+n)/({m}_q! n!) y^m b^n (x) a^n x^m`` through ``h^order``."""
    key = ("R", order, eps_order, eps_value)
    if key in _R_CACHE:
        return _R_CACHE[key]
    sp1 = Space(order, 1, eps_order, eps_value)
    sp2 = sp1.with_factors(2)
    out = {}
    for m in range(order + 1):
        coeff = _qfactorial_inverse(sp1, m)
        for n in range(order + 1 - m):
            mono = sp2.bs[0] ** n * sp2.as_[1] ** n * _q(Fraction(1, factorial(n)))
            for (_, _, dc), c in coeff.terms.items():
                d = m + n + dc
                if d > order:
                    continue
                key2 = ((m, 0), (0, m), d)
                p = sp2._trunc_e(sp2.embed_poly(c, (0,)) * mono)
                out[key2] = out[key2] + p if key2 in out else p
    r = Element(sp2, {k: v for k, v in out.items() if not v.is_zero()})
    _R_CACHE[key] = r
    return r


def r_matrix_inverse(order: int, eps_order: int | None = None, eps_value=None) -> Element:
    key = ("Rinv", order, eps_order, eps_value)
    if key not in _R_CACHE:
        r = r_matrix(order, eps_order, eps_value)
        inv = r.inverse()
        one = r.space.one()
        if not (r * inv).equals(one) or not (inv * r).equals(one):
            raise AlgebraError("R-matrix inverse failed certification")
        _R_CACHE[key] = inv
    return _R_CACHE[key]


def antipode(u: Element) -> Element:
    """Anti-homomorphism with ``S(x) = -x A^-1``, ``S(y) = -y B^-1``, ``S(a) = -a``, ``S(b) = -b``.

    ``S(x) = -x A^-1`` is what the antipode axiom forces for ``Delta(x) = 1 (x) x + x (x) A``.
    """
    sp = u.space
    if sp.k != 1:
        raise AlgebraError("antipode is defined on single-factor elements")
    sx = -(sp.x() * sp.A(power=-1))
    sy = -(sp.y() * sp.B(power=-1))
    b, a, e = sp.bs[0], sp.as_[0], sp.e
    out = sp.element()
    for (ys, xs, d), p in u.terms.items():
        mid = sp.poly(p.compose(-b, -a, e), d)
        out = out + (sx ** xs[0]) * mid * (sy ** ys[0])
    return out


def split_legs(t: Element) -> list[tuple[Element, Element, int]]:
    """Write a two-factor element as ``sum h^d alpha_i (x) beta_i`` with single-factor legs.

    Each ``alpha_i`` is a monomial; ``eps`` powers ride on ``beta_i``; the
    legs carry no ``h`` so a caller can attach ``h^d`` to whichever it meets first.
    """
    sp2 = t.space
    if sp2.k != 2:
        raise AlgebraError("split_legs needs a two-factor element")
    sp1 = sp2.with_factors(1)
    c1 = sp1.ctx
    b, a, e = c1.gens()
    out = []
    for (ys, xs, d), p in sorted(t.terms.items()):
        groups: dict = {}
        for exps, c in p.to_dict().items():
            groups.setdefault((exps[0], exps[1]), {})[(exps[2], exps[3], exps[4])] = c
        for (j, k), rest in sorted(groups.items()):
            alpha = sp1.element({((ys[0],), (xs[0],), 0): b ** j * a ** k})
            beta = sp1.element({((ys[1],), (xs[1],), 0): c1.from_dict(rest)})
            out.append((alpha, beta, d))
    return out


def tensor(*elems: Element) -> Element:
    """Tensor product of single-factor elements (h-degrees add)."""
    sp = elems[0].space.with_factors(len(elems))
    out = sp.one()
    for f, u in enumerate(elems):
        if u.space.k != 1:
            raise AlgebraError("tensor expects single-factor elements")
        out = out * embed(u, sp, (f,))
    return out


def embed(u: Element, target: Space, positions: tuple[int, ...]) -> Element:
    """Place the factors of ``u`` at ``positions`` of ``target`` (identity elsewhere)."""
    if len(positions) != u.space.k:
        raise AlgebraError("position count must match the number of factors")
    out = {}
    z = target.zeros()
    for (ys, xs, d), p in u.terms.items():
        yy = list(z)
        xx = list(z)
        for src, dst in enumerate(positions):
            yy[dst] = ys[src]
            xx[dst] = xs[src]
        if d > target.order:
            continue
        out[(tuple(yy), tuple(xx), d)] = target._trunc_e(target.embed_poly(p, positions))
    return Element(target, {k: v for k, v in out.items() if not v.is_zero()})


def multiply_factors(t: Element, groups: list[list[int]]) -> Element:
    """Contract factors: each group (in the listed order) is multiplied into one output factor."""
    sp = t.space
    out_sp = sp.with_factors(len(groups))
    one_sp = sp.with_factors(1)
    b, a, e = one_sp.ctx.gens()
    acc = out_sp.element()
    for ys, js, ks, xs, d, m, c in t.monomials():
        total = out_sp.scalar(c * 1, d) * (out_sp.e ** m)
        if total.is_zero():
            continue
        for g, group in enumerate(groups):
            piece = one_sp.one()
            for f in group:
                mono = one_sp.element({((ys[f],), (xs[f],), 0): b ** js[f] * a ** ks[f]})
                piece = piece * mono
            total = total * embed(piece, out_sp, (g,))
        acc = acc + total
    return acc


def pivot_and_ribbon(order: int, eps_order: int | None = None) -> tuple[Element, Element]:
    """``kappa = exp(-h z/2)`` and the ribbon element ``v = kappa^-1 sum S(beta) alpha``."""
    sp = Space(order, 1, eps_order)
    kappa = sp.kappa()
    u = sp.element()
    for alpha, beta, d in split_legs(r_matrix(order, eps_order)):
        u = u + (antipode(beta) * alpha).shift_h(d)
    return kappa, kappa.inverse() * u


def central_elements(order: int) -> tuple[Element, Element]:
    """``W`` and ``T = exp(-h(b - eps a))``.

    The scalar part of ``W`` has denominator ``h(q - 1) = eps h^2 (1 + ...)``;
    it is computed two orders higher and divided exactly.
    """
    sp = Space(order, 1)
    big = Space(order + 2, 1)
    q = big.q_eps()
    num = q * big.A(power=-1) + big.A() * big.T() - (big.one() + big.T()) * (q + 1) * Fraction(1, 2)
    den = (q - 1).div_eps()  # h (1 + eps h/2 + ...)
    den_unit = Element(big, {(k[0], k[1], k[2] - 1): v for k, v in den.terms.items()})
    scal = num.div_eps()
    scal = Element(big, {(k[0], k[1], k[2] - 2): v for k, v in scal.terms.items() if k[2] >= 2})
    if any(k[2] < 2 for k in num.div_eps().terms):
        raise AlgebraError("numerator of W's scalar part is not O(h^2)")
    # den_unit has valid order order+1 after the shift; scal has order; both re-read in the small space
    scal = _restrict(scal, sp)
    den_unit = _restrict(den_unit, sp)
    scalar_part = scal * den_unit.inverse()
    w = sp.y() * sp.A(power=-1) * sp.x() + scalar_part
    return w, sp.T()


def reduce_eps(u: Element, eps_order: int) -> Element:
    """``u`` modulo ``eps^(eps_order+1)``, in the corresponding truncated space."""
    src = u.space
    sp = Space(src.order, src.k, eps_order)
    out = {}
    for k, v in u.terms.items():
        w = sp._trunc_e(v)
        if not w.is_zero():
            out[k] = w
    return Element(sp, out)


def _restrict(u: Element, sp: Space) -> Element:
    return Element(sp, {k: v for k, v in u.terms.items() if k[2] <= sp.order})


def generators(sp: Space) -> list[Element]:
    return [sp.y(), sp.b(), sp.a(), sp.x()]


def is_central(u: Element) -> bool:
    return all(u.commutator(g).is_zero() for g in generators(u.space))


# --- twisting ------------------------------------------------------------------------------


def is_twisting_element(phi: Element, order: int | None = None) -> bool:
    """``[phi, kappa] = 0`` and ``[phi (x) phi, R] = 0`` through the space's order."""
    sp = phi.space
    phi.inverse()  # raises unless invertible
    kappa = sp.kappa()
    if not phi.commutator(kappa).is_zero():
        return False
    r = r_matrix(sp.order, sp.eps_order)
    pp = tensor(phi, phi)
    return pp.commutator(r).is_zero()


def twist(r: Element, phi: Element) -> Element:
    """``(1 (x) phi^-1) R (phi (x) 1)``."""
    sp1 = phi.space
    one = sp1.one()
    return tensor(one, phi.inverse()) * r * tensor(phi, one)


def twist_inverse(rinv: Element, phi: Element) -> Element:
    """Inverse of the twisted R-matrix: ``(phi^-1 (x) 1) R^-1 (1 (x) phi)``."""
    sp1 = phi.space
    one = sp1.one()
    return tensor(phi.inverse(), one) * rinv * tensor(one, phi)


def leg_embed(r: Element, k: int, i: int, j: int) -> Element:
    """``R_ij`` in the ``k``-fold tensor power (0-based): second leg at ``i``, first leg at ``j``."""
    sp = r.space.with_factors(k)
    return embed(r, sp, (j, i))


@dataclass
class XCReport:
    conjugation_invariance: bool
    trace_balance: bool
    kink_cancellation: bool
    yang_baxter: bool

    @property
    def ok(self) -> bool:
        return all(asdict(self).values())


def verify_xc(r: Element, kappa: Element, rinv: Element | None = None) -> XCReport:
    """The four XC axioms for ``(R, kappa)`` through the common order."""
    sp1 = kappa.space
    rinv = r.inverse() if rinv is None else rinv
    kinv = kappa.inverse()
    # (1) R = (k (x) k) R (k^-1 (x) k^-1)
    ax1 = (tensor(kappa, kappa) * r * tensor(kinv, kinv)).equals(r)
    # (2) mu3(R_13 k_2) = mu3(R_31 k_2^-1)
    sp3 = sp1.with_factors(3)
    lhs = multiply_factors(leg_embed(r, 3, 0, 2) * embed(kappa, sp3, (1,)), [[0, 1, 2]])
    rhs = multiply_factors(leg_embed(r, 3, 2, 0) * embed(kinv, sp3, (1,)), [[0, 1, 2]])
    ax2 = lhs.equals(rhs)
    # (3) k (x) 1 = (mu3 (x) mu)(R^-1_34 R_15 k_2)
    sp5 = sp1.with_factors(5)
    five = leg_embed(rinv, 5, 2, 3) * leg_embed(r, 5, 0, 4) * embed(kappa, sp5, (1,))
    ax3 = multiply_factors(five, [[0, 1, 2], [3, 4]]).equals(tensor(kappa, sp1.one()))
    # (4) R12 R13 R23 = R23 R13 R12
    r12, r13, r23 = leg_embed(r, 3, 0, 1), leg_embed(r, 3, 0, 2), leg_embed(r, 3, 1, 2)
    ax4 = (r12 * r13 * r23).equals(r23 * r13 * r12)
    return XCReport(ax1, ax2, ax3, ax4)


# --- Cartan twist between the double's R-matrix and the sl2 one -----------------------------


def _scalar_series(sp: Space, coeffs: list) -> Element:
    """``sum coeffs[d] h^d`` as a scalar element."""
    out = sp.element()
    for d, c in enumerate(coeffs[: sp.order + 1]):
        if c:
            out = out + sp.scalar(c, d)
    return out


def verify_cartan_twist_identity(order: int, eps_values=(1, 2, Fraction(-1, 3))) -> bool:
    """Cartan factors turn D's R-matrix into the sl2 R-matrix with shifted generators.

    With ``c = t/eps``, ``H' = -z/eps``, ``E' = y`` and
    ``F' = exp(h t/2) (h/(Q - 1/Q)) A^-1 x`` where ``Q = exp(eps h/2)``::

        Q^(c(x)c/2) Q^(c(x)H'/2) R Q^(-H'(x)c/2)
            = sum_n (Q - 1/Q)^n/[n]_Q! Q^(H'(x)H'/2 + n(n-1)/2) E'^n (x) F'^n

    The Cartan exponents carry ``1/eps``, so the identity is checked with
    ``eps`` specialized; D is graded (``eps, b, x`` weight 1, ``h`` weight -1)
    and every ingredient is homogeneous, so one nonzero value already decides it.
    """
    for value in eps_values:
        value = Fraction(value)
        sp2 = Space(order, 2, eps_value=value)
        sp1 = sp2.with_factors(1)
        e = sp2.e
        b1, a1, b2, a2 = sp2.bs[0], sp2.as_[0], sp2.bs[1], sp2.as_[1]
        t1, t2 = b1 - e * a1, b2 - e * a2
        z1, z2 = b1 + e * a1, b2 + e * a2
        k = _q(Fraction(1, 4) / value)
        lhs = sp2.exp_h(t1 * t2 * k) * sp2.exp_h(-t1 * z2 * k) * r_matrix(order, eps_value=value) * sp2.exp_h(z1 * t2 * k)

        def qpow(x):  # Q^x = exp(eps h x/2)
            return sp1.exp_h(sp1.ctx.constant(_q(value * Fraction(x, 2))))

        # (Q - 1/Q)/h = sum_{d even} 2 (eps/2)^(d+1)/(d+1)! h^d
        gap = _scalar_series(sp1, [2 * (value / 2) ** (d + 1) / factorial(d + 1) if d % 2 == 0 else 0 for d in range(order + 1)])
        fprime = sp1.exp_h(sp1.bs[0] - sp1.e * sp1.as_[0], Fraction(1, 2)) * gap.inverse() * sp1.A(power=-1) * sp1.x()
        rhs_sum = sp2.element()
        qfact = sp1.one()
        fpow = sp1.one()
        for n in range(order + 1):
            if n:
                qint = sp1.element()
                for i in range(n):
                    qint = qint + qpow(n - 1 - 2 * i)
                qfact = qfact * qint
                fpow = fpow * fprime
            coeff = gap.shift_h(1) ** n * qfact.inverse() * qpow(n * (n - 1) // 2)
            term = embed(coeff * sp1.y(power=n), sp2, (0,)) * embed(fpow, sp2, (1,))
            rhs_sum = rhs_sum + term
        rhs = sp2.exp_h(z1 * z2 * k) * rhs_sum
        if not lhs.equals(rhs):
            return False
    return True
