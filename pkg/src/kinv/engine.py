"""Bead evaluation of the universal invariant of long knots.

Module level: the bead word is applied to the highest-weight vector ``m_0``
one bead at a time.  A crossing's two legs sit at different places along
the strand but share the summation index of the R-matrix; until its second
leg is met, a crossing is *open* and its index ``n`` (and the weight the
first leg saw, needed for the Cartan factor) is kept in the state key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from kinv.coeff import HSeries, LaurentPoly
from kinv.diagrams import BraidWord, LongKnotDiagram, braid_to_long_knot
from kinv.modules import FiniteModel, VermaModel, s_to_hseries


class EngineError(RuntimeError):
    pass


def _apply_module(model, diagram: LongKnotDiagram, start: dict | None = None) -> dict:
    """Run the bead word; returns the final ``{(p, open): coeff}`` state."""
    state = start if start is not None else {(0, ()): model.one()}
    for slot in diagram.traversal:
        new: dict = {}

        def put(key, val):
            if model.is_zero(val):
                return
            if key in new:
                val = new[key] + val
                if model.is_zero(val):
                    del new[key]
                    return
            new[key] = val

        if slot.kind == "pivot":
            for (p, op), c in state.items():
                put((p, op), c * model.pivot(p, slot.power))
            state = new
            continue

        cid = slot.crossing
        positive = slot.positive
        over = slot.is_over
        for (p, op), c in state.items():
            opened = dict((k, (n, pm)) for k, n, pm in op)
            if cid in opened:
                n, pm = opened.pop(cid)
                if over:
                    coef = model.e_div(p, n)
                    if coef is None:
                        continue
                    q = p - n
                else:
                    coef = model.f_pow(p, n)
                    if coef is None:
                        continue
                    q = p + n
                measured = q if positive else p
                p_over, p_under = (measured, pm) if over else (pm, measured)
                val = c * coef * model.cartan(p_over, p_under, positive)
                key = (q, tuple(sorted((k, a, b) for k, (a, b) in opened.items())))
                put(key, val)
            else:
                for n in range(0, model.budget(c) + 1):
                    if over:
                        coef = model.e_div(p, n)
                        if coef is None:
                            break
                        q = p - n
                    else:
                        coef = model.f_pow(p, n)
                        if coef is None:
                            break
                        q = p + n
                    measured = q if positive else p
                    val = c * model.theta(n, positive) * coef
                    key = (q, tuple(sorted(op + ((cid, n, measured),))))
                    put(key, val)
        state = new
    return state


def module_scalar(model, diagram: LongKnotDiagram):
    """Raw (framed) eigenvalue of the bead word on ``m_0``."""
    state = _apply_module(model, diagram)
    for (p, op), c in state.items():
        if op:
            raise EngineError("crossing left open at the end of the traversal")
        if p != 0 and not model.is_zero(c):
            raise EngineError(f"final state has a component on m_{p}: invariant not proportional to m_0")
    return state.get((0, ()), model.one() * 0)


CURL = BraidWord(2, (1,), "curl")


def kink_scalar(model):
    """Eigenvalue of the positive one-crossing curl (framing calibration)."""
    return module_scalar(model, braid_to_long_knot(CURL))


def _frame(raw, kink, writhe: int):
    if writhe == 0:
        return raw
    if isinstance(kink, HSeries):
        return raw * kink.inv() ** writhe
    return raw * kink ** (-writhe)


def eval_verma(diagram: LongKnotDiagram, sigma: int = -1, order: int = 8) -> HSeries:
    """Colored Jones function ``J(lam, h)``: 0-framed eigenvalue on ``m_0`` of ``M(lam, sigma*lam)``."""
    model = VermaModel(order, sigma)
    raw = module_scalar(model, diagram)
    return _frame(raw, kink_scalar(model), diagram.writhe)


def eval_verma_raw(diagram: LongKnotDiagram, sigma: int = -1, order: int = 8) -> HSeries:
    return module_scalar(VermaModel(order, sigma), diagram)


def eval_vn(diagram: LongKnotDiagram, n: int) -> LaurentPoly:
    """Colored Jones polynomial ``J^n`` (dimension ``n``) as a Laurent polynomial in ``s = q^(1/2)``."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    model = FiniteModel(n - 1)
    raw = module_scalar(model, diagram)
    kink = kink_scalar(model)
    if not kink.is_monomial():
        raise EngineError("kink eigenvalue on a simple module must be a monomial")
    return _frame(raw, kink, diagram.writhe)


def vn_as_series(x: LaurentPoly, order: int) -> HSeries:
    return s_to_hseries(x, order)


# --- algebra level ------------------------------------------------------------------

from kinv import algebra as alg  # noqa: E402


@dataclass
class CrossingData:
    """Leg decompositions of the positive and negative crossing tensors."""

    positive: list
    negative: list


def crossing_data(order: int, eps_order: int | None = None, phi=None) -> CrossingData:
    r = alg.r_matrix(order, eps_order)
    rinv = alg.r_matrix_inverse(order, eps_order)
    if phi is not None:
        r, rinv = alg.twist(r, phi), alg.twist_inverse(rinv, phi)
    return CrossingData(alg.split_legs(r), alg.split_legs(rinv))


def _apply_algebra(sp, diagram: LongKnotDiagram, legs: CrossingData, kappa) -> dict:
    """Multiply the beads, first bead rightmost; the state is keyed by open (crossing, term) pairs."""
    state = {(): sp.one()}
    kappa_pows: dict = {}
    for slot in diagram.traversal:
        new: dict = {}

        def put(key, val):
            if val.is_zero():
                return
            new[key] = new[key] + val if key in new else val

        if slot.kind == "pivot":
            if slot.power not in kappa_pows:
                kappa_pows[slot.power] = kappa ** slot.power
            kp = kappa_pows[slot.power]
            for key, el in state.items():
                put(key, kp * el)
            state = new
            continue
        terms = legs.positive if slot.positive else legs.negative
        cid = slot.crossing
        for key, el in state.items():
            opened = dict(key)
            if cid in opened:
                t = opened.pop(cid)
                alpha, beta, _ = terms[t]
                leg = alpha if slot.is_over else beta
                put(tuple(sorted(opened.items())), leg * el)
            else:
                budget = sp.order - (el.valuation() or 0)
                for t, (alpha, beta, d) in enumerate(terms):
                    if d > budget:
                        continue
                    leg = alpha if slot.is_over else beta
                    put(tuple(sorted(key + ((cid, t),))), (leg * el).shift_h(d))
        state = new
    return state


def _algebra_raw(diagram: LongKnotDiagram, order: int, eps_order: int | None, phi=None):
    sp = alg.Space(order, 1, eps_order)
    legs = crossing_data(order, eps_order, phi)
    state = _apply_algebra(sp, diagram, legs, sp.kappa())
    for key in state:
        if key:
            raise EngineError("crossing left open at the end of the traversal")
    return state.get((), sp.element())


def compute_z_algebra(diagram: LongKnotDiagram, order: int = 4, eps_order: int | None = None):
    """0-framed universal invariant in D: bead product times ``v^writhe``.

    A positive curl evaluates to ``v^-1`` in this bead convention.
    """
    raw = _algebra_raw(diagram, order, eps_order)
    _, v = alg.pivot_and_ribbon(order, eps_order)
    return raw * (v ** diagram.writhe) if diagram.writhe else raw


def compute_z_twisted(diagram: LongKnotDiagram, phi, order: int = 4, eps_order: int | None = None):
    """Same bead product with the twisted R-matrix (pivots unchanged)."""
    if not alg.is_twisting_element(phi):
        raise EngineError("phi is not a twisting element")
    raw = _algebra_raw(diagram, order, eps_order, phi)
    _, v = alg.pivot_and_ribbon(order, eps_order)
    return raw * (v ** diagram.writhe) if diagram.writhe else raw


def braid_tensor(b: BraidWord, r, rinv):
    """Universal invariant of an open braid in the strand-indexed tensor power.

    Factor ``f`` is the strand starting at bottom position ``f``; later
    crossings multiply on the left.  The over strand gets the first leg.
    """
    n = b.strands
    sp = r.space.with_factors(n)
    at = list(range(n))  # at[position] = strand
    out = sp.one()
    for g in b.letters:
        i = abs(g) - 1
        left, right = at[i], at[i + 1]
        if g > 0:
            out = alg.embed(r, sp, (left, right)) * out
        else:
            out = alg.embed(rinv, sp, (right, left)) * out
        at[i], at[i + 1] = right, left
    return out


def permute_factors(t, perm: list[int]):
    """Move factor ``f`` to position ``perm[f]``."""
    return alg.embed(t, t.space, tuple(perm))


def braid_conjugation_check(b: BraidWord, phi, order: int = 3) -> bool:
    """Twisted and untwisted braid invariants differ by ``1 (x) phi (x) ... (x) phi^(N-1)`` at both ends.

    By strand: ``Z_twisted = C_top Z C_bottom^-1`` where the strand that
    starts at position ``p`` and ends at ``p'`` carries ``phi^p'`` on top and
    ``phi^p`` at the bottom; after ``sigma_*`` both ends read ``1 (x) phi (x) ...``.
    """
    if not alg.is_twisting_element(phi):
        raise EngineError("phi is not a twisting element")
    r = alg.r_matrix(order)
    rinv = alg.r_matrix_inverse(order)
    z = braid_tensor(b, r, rinv)
    zt = braid_tensor(b, alg.twist(r, phi), alg.twist_inverse(rinv, phi))
    perm = b.permutation()
    sp = z.space
    top = sp.one()
    bottom = sp.one()
    for s in range(b.strands):
        if perm[s]:
            top = top * alg.embed(phi ** perm[s], sp, (s,))
        if s:
            bottom = bottom * alg.embed(phi ** s, sp, (s,))
    return zt.equals(top * z * bottom.inverse())
