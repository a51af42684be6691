"""Large-colour (Melvin-Morton-Rozansky) expansion of the colored Jones function.

The colored Jones function ``J(lam, h)`` has ``lam``-degree at most ``i`` in
its ``h^i`` coefficient, so it can be reorganized at fixed ``u = h*lam``::

    J = sum_k h^k g_k(u),    [u^m] g_k = [h^(k+m) lam^m] J.

With ``T = exp(-2*sigma*u)`` the leading pieces are

    g_0 = 1/Delta(T)
    g_1 = 2 (rho10(T) + sigma*T*Delta(T)*Delta'(T)) / Delta(T)^3

where the ``Delta'`` term comes from the closed form of ``rho11`` (and
``rho12 = 0``).  Independently, in the variable ``t = q^(2n)`` with
``n = lam + 1``, ``J = 1/Delta(t) + P1(t)(q^2 - 1)/Delta(t)^3 + ...``; the
two first-order polynomials coincide.

Unknown polynomials are fitted with a span-bounded Laurent ansatz and an
exact overdetermined linear solve.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from kinv.alexander import T_VAR, alexander_poly
from kinv.coeff import HSeries, LaurentPoly, solve_rational
from kinv.diagrams import BraidWord, braid_to_long_knot
from kinv import algebra as alg
from kinv.engine import compute_z_algebra, eval_verma

SCHEMA_VERSION = "kinv.mmr/1"
LAM = "lam"
U = "u"


class MMRError(ArithmeticError):
    pass


@dataclass
class BivariateJones:
    series: HSeries
    sigma: int
    order: int
    name: str | None = None

    def degree_bound_ok(self) -> bool:
        """Each ``h^i`` coefficient is a polynomial in ``lam`` of degree at most ``i``."""
        for i in range(self.order + 1):
            c = self.series[i]
            if c.is_zero():
                continue
            if c.val < 0 or c.degree > i:
                return False
        return True

    def fixed_u(self, k: int) -> HSeries:
        """``g_k(u)`` through ``u^(order-k)``."""
        return fixed_scale_component(self.series, k)


def colored_jones_function(b: BraidWord, sigma: int = -1, order: int = 8) -> BivariateJones:
    return BivariateJones(eval_verma(braid_to_long_knot(b), sigma, order), sigma, order, b.name)


def fixed_scale_component(series: HSeries, k: int) -> HSeries:
    n = series.order - k
    if n < 0:
        raise MMRError(f"order {series.order} too low for component {k}")
    return HSeries([series[k + m].coeff(m) for m in range(n + 1)], n, U)


def mm_bound_check(series: HSeries) -> tuple[bool, tuple[int, int] | None]:
    """Degree bound; returns the first offending ``(i, degree)`` if any."""
    for i in range(series.order + 1):
        c = series[i]
        if not c.is_zero() and (c.val < 0 or c.degree > i):
            return False, (i, c.degree)
    return True, None


def _exp_poly(p: LaurentPoly, rate: int, order: int) -> HSeries:
    """``p(exp(rate*u))`` as a series in ``u``."""
    out = HSeries.const(0, order, U)
    for d, c in p.terms().items():
        out = out + HSeries.exp_linear(rate * d, order, U) * c
    return out


def _t_rate(sigma: int) -> int:
    return -2 * sigma


def zeroth_order_check(jones: BivariateJones, delta: LaurentPoly) -> bool:
    g0 = jones.fixed_u(0)
    target = _exp_poly(delta, _t_rate(jones.sigma), g0.order).inv()
    return g0.equals(target)


def rho11_from_alexander(delta: LaurentPoly) -> LaurentPoly:
    """``2 T Delta'(T) / (1 - T)``; exact because ``Delta'(1) = 0``."""
    t = LaurentPoly.monomial(1, 1, delta.var)
    return (t * delta.derivative() * 2).divexact(1 - t)


@dataclass
class SolveStats:
    equations: int
    unknowns: int
    rank: int
    span: int
    consistent: bool
    determined: bool


def required_equations(span: int) -> int:
    """Equations needed to pin a span-``span`` polynomial with one redundancy.

    Palindromic ``X`` and symmetric ``Delta`` make every basis function even in
    ``u``, so only every other equation carries information.
    """
    return 2 * span + 3


def _fit(target: HSeries, basis: dict[int, HSeries], span: int) -> tuple[dict[int, Fraction], SolveStats]:
    ds = sorted(basis)
    rows = [[basis[d].coeff_of(m) for d in ds] for m in range(target.order + 1)]
    rhs = [target.coeff_of(m) for m in range(target.order + 1)]
    x, rank, ok = solve_rational(rows, rhs)
    determined = rank == len(ds) and len(rows) >= required_equations(span)
    return dict(zip(ds, x)), SolveStats(len(rows), len(ds), rank, span, ok, determined)


def default_span(braid: BraidWord) -> int:
    """Seifert bound ``2g <= crossings - strands + 1`` on the degree of the first-order polynomial."""
    return max(len(braid.letters) - braid.strands + 1, 0)


def required_order(span: int) -> int:
    """Order of ``J`` giving ``g_1`` enough equations for ``span``."""
    return required_equations(span)


def _fit_first_order(target: HSeries, delta: LaurentPoly, rate: int, span: int, symmetric: bool):
    """Fit ``target = 2 X(T)/Delta(T)^3`` for a Laurent polynomial ``X``, ``T = exp(rate*u)``.

    ``symmetric`` restricts ``X`` to palindromic polynomials, which halves the
    unknowns.
    """
    n = target.order
    inv_cube2 = _exp_poly(delta, rate, n).inv() ** 3 * 2

    def power(d):
        return HSeries.exp_linear(rate * d, n, U)

    if symmetric:
        basis = {d: (power(d) + power(-d) if d else power(0)) * inv_cube2 for d in range(span + 1)}
    else:
        basis = {d: power(d) * inv_cube2 for d in range(-span, span + 1)}
    sol, stats = _fit(target, basis, span)
    terms: dict[int, Fraction] = {}
    for d, c in sol.items():
        terms[d] = terms.get(d, 0) + c
        if symmetric and d:
            terms[-d] = terms.get(-d, 0) + c
    return LaurentPoly.from_dict(terms, T_VAR), stats


def extract_rho10(jones: BivariateJones, delta: LaurentPoly, span: int, symmetric: bool = True):
    """Solve for ``rho10(T)`` given the closed forms of ``rho11`` and ``rho12``."""
    rate = _t_rate(jones.sigma)
    g1 = jones.fixed_u(1)
    n = g1.order
    t = LaurentPoly.monomial(1, 1, delta.var)
    known = _exp_poly(t * delta.derivative() * jones.sigma, rate, n) * _exp_poly(delta, rate, n).inv() ** 2 * 2
    return _fit_first_order(g1 - known, delta, rate, span, symmetric)


def shift_to_colour(series: HSeries) -> HSeries:
    """Re-express ``J(lam, h)`` in the dimension ``n = lam + 1``."""
    n_minus_1 = LaurentPoly.from_dict({1: 1, 0: -1}, "n")
    return HSeries([c(n_minus_1) if not c.is_zero() else LaurentPoly(None, 0, "n") for c in series.c], series.order, "n")


def extract_p1(jones: BivariateJones, delta: LaurentPoly, span: int, symmetric: bool = True):
    """Solve for ``P1(t)`` in the expansion in ``t = exp(2 h n)``."""
    k = shift_to_colour(jones.series)
    g0 = fixed_scale_component(k, 0)
    if not g0.equals(_exp_poly(delta, 2, g0.order).inv()):
        raise MMRError("zeroth order in the colour variable does not match 1/Delta(t)")
    return _fit_first_order(fixed_scale_component(k, 1), delta, 2, span, symmetric)


def first_order_residual(jones: BivariateJones, delta: LaurentPoly, rho10: LaurentPoly) -> HSeries:
    """``g_1`` minus its closed form; zero when ``rho10`` and the ``rho11`` closed form are right."""
    rate = _t_rate(jones.sigma)
    g1 = jones.fixed_u(1)
    n = g1.order
    t = LaurentPoly.monomial(1, 1, delta.var)
    f = rho10 + t * delta * delta.derivative() * jones.sigma
    return g1 - _exp_poly(f, rate, n) * _exp_poly(delta, rate, n).inv() ** 3 * 2


def _central_poly(p: LaurentPoly, t):
    out = t.space.element()
    for d, c in p.terms().items():
        out = out + (t**d) * c
    return out


def algebra_first_order_residual(
    b: BraidWord,
    rho10: LaurentPoly,
    order: int = 6,
    rho11: LaurentPoly | None = None,
    rho12: LaurentPoly | None = None,
):
    """``Z_D`` minus ``(1/Delta)(1 + eps h (rho10/Delta^2 + h rho11 W/Delta + h^2 rho12 W^2))`` mod ``eps^2``.

    ``T`` and ``W`` are the central elements; ``rho11`` and ``rho12`` default
    to their closed forms.  Zero through ``h^order`` when everything is right.
    """
    delta = alexander_poly(b)
    rho11 = rho11_from_alexander(delta) if rho11 is None else rho11
    w, t = alg.central_elements(order)
    w, t = alg.reduce_eps(w, 1), alg.reduce_eps(t, 1)
    sp = t.space
    z = compute_z_algebra(braid_to_long_knot(b), order, 1)
    dinv = _central_poly(delta, t).inverse()
    inner = _central_poly(rho10, t) * dinv * dinv + (_central_poly(rho11, t) * w * dinv).shift_h(1)
    if rho12 is not None and not rho12.is_zero():
        inner = inner + (_central_poly(rho12, t) * w * w).shift_h(2)
    rhs = dinv * (sp.one() + inner.shift_h(1) * sp.poly(sp.e))
    return z - rhs


# --- mirror -----------------------------------------------------------------------


def mirror_substitution(series: HSeries) -> HSeries:
    """``(lam, h) -> (-lam, -h)``."""
    return series.scale_h(-1).map_coeffs(lambda c: c.scale_var(-1))


def weyl_reflection(series: HSeries) -> HSeries:
    """``lam -> -lam - 2``."""
    arg = LaurentPoly.from_dict({1: -1, 0: -2}, series.var)
    return series.map_coeffs(lambda c: c(arg) if not c.is_zero() else c)


def h_reversal(series: HSeries) -> HSeries:
    return series.scale_h(-1)


# --- report -------------------------------------------------------------------------


@dataclass
class MMRReport:
    knot: str
    order_requested: int
    order_used: int
    sigma: int
    alexander: str
    rho10: str
    p1: str
    rho11: str
    equal: bool
    degree_bound: bool
    zeroth_order: bool
    first_order_residual_zero: bool
    rho10_stats: SolveStats
    p1_stats: SolveStats
    schema: str = field(default=SCHEMA_VERSION)

    @property
    def ok(self) -> bool:
        solves = (self.rho10_stats, self.p1_stats)
        return (
            self.equal
            and self.degree_bound
            and self.zeroth_order
            and self.first_order_residual_zero
            and all(st.consistent and st.determined for st in solves)
        )

    def to_json(self) -> str:
        d = asdict(self)
        d["ok"] = self.ok
        return json.dumps(d, sort_keys=True, indent=2)


def verify_mmr_equality(
    b: BraidWord,
    order: int = 8,
    sigma: int = -1,
    span: int | None = None,
    symmetric: bool = True,
    escalate: bool = True,
) -> MMRReport:
    """Extract ``rho10`` and ``P1`` independently and compare.

    The span defaults to the Seifert bound.  With ``escalate`` the order of
    ``J`` is raised until both solves are uniquely determined with a
    redundant equation; if a solve is then inconsistent the span is doubled
    once.
    """
    delta = alexander_poly(b)
    spans = [default_span(b) if span is None else span]
    if span is None:
        spans.append(2 * spans[0] + 1)
    for s in spans:
        n = max(order, required_order(s)) if escalate else order
        jones = colored_jones_function(b, sigma, n)
        rho10, st1 = extract_rho10(jones, delta, s, symmetric)
        p1, st2 = extract_p1(jones, delta, s, symmetric)
        if st1.consistent and st2.consistent:
            break
    res = first_order_residual(jones, delta, rho10)
    return MMRReport(
        knot=b.name or str(b),
        order_requested=order,
        order_used=n,
        sigma=sigma,
        alexander=str(delta),
        rho10=str(rho10),
        p1=str(p1),
        rho11=str(rho11_from_alexander(delta)),
        equal=rho10 == p1,
        degree_bound=jones.degree_bound_ok(),
        zeroth_order=zeroth_order_check(jones, delta),
        first_order_residual_zero=res.is_zero(),
        rho10_stats=st1,
        p1_stats=st2,
    )
