from fractions import Fraction

import pytest

from kinv.coeff import HSeries, LaurentPoly
from kinv.modules import FiniteModel, VermaModel, phi_t_eigenvalue, phi_w_eigenvalue, w_eigenvalue_closed_form


@pytest.mark.parametrize("sigma", [1, -1])
def test_w_eigenvalue(sigma):
    assert phi_w_eigenvalue(sigma, 6).equals(w_eigenvalue_closed_form(sigma, 6))


@pytest.mark.parametrize("sigma", [1, -1])
def test_t_eigenvalue(sigma):
    expected = HSeries.exp_linear(LaurentPoly.monomial(1, -2 * sigma, "lam"), 6, "lam")
    assert phi_t_eigenvalue(sigma, 6).equals(expected)


def test_w_eigenvalue_leading_term():
    # (sigma/4h)(1 - e^{-2 sigma lam h}) = lam/2 + O(h)
    w = w_eigenvalue_closed_form(1, 3)
    assert w[0] == LaurentPoly.monomial(1, Fraction(1, 2), "lam")


def test_finite_module_top_is_killed():
    m = FiniteModel(3)
    assert m.f_pow(3, 1) is None
    assert m.f_pow(0, 4) is None


def test_verma_model_weights():
    m = VermaModel(4, -1)
    lam = LaurentPoly.monomial(1, 1, "lam")
    assert m.weight_h(0) + m.weight_ht(0) == lam * 2
