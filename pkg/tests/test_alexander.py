from fractions import Fraction

import pytest

from kinv.alexander import AlexanderError, alexander_poly, burau_reduced, determinant, inverse_delta_series
from kinv.coeff import HSeries, LaurentPoly
from kinv.diagrams import BraidWord, parse_braid

# Rolfsen-table Alexander polynomials
KNOWN = {
    "unknot": {0: 1},
    "3_1": {-1: 1, 0: -1, 1: 1},
    "4_1": {-1: -1, 0: 3, 1: -1},
    "5_1": {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1},
    "5_2": {-1: 2, 0: -3, 1: 2},
    "6_1": {-1: -2, 0: 5, 1: -2},
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_table_knots(table, name):
    for b in table[name]:
        assert alexander_poly(b) == LaurentPoly.from_dict(KNOWN[name], "t")


def test_mirror_and_inverse_do_not_change_delta(table):
    for bs in table.values():
        b = bs[0]
        assert alexander_poly(b.mirror()) == alexander_poly(b)
        assert alexander_poly(b.inverse()) == alexander_poly(b)


def test_burau_braid_relation():
    lhs = burau_reduced(BraidWord(4, (1, 2, 1)))
    rhs = burau_reduced(BraidWord(4, (2, 1, 2)))
    assert lhs == rhs
    ident = burau_reduced(BraidWord(4, (2, -2)))
    assert all(ident[i][j] == LaurentPoly.const(int(i == j), "t") for i in range(3) for j in range(3))


def test_determinant_of_triangular():
    t = LaurentPoly.monomial(1, 1, "t")
    z = LaurentPoly.const(0, "t")
    m = [[t, t + 1, z], [z, t * t, t], [z, z, LaurentPoly.const(3, "t")]]
    assert determinant(m) == t * t * t * 3


def test_split_link_rejected():
    with pytest.raises(AlexanderError):
        alexander_poly(parse_braid("[1,1]"))


def test_inverse_delta_series_trefoil():
    delta = LaurentPoly.from_dict(KNOWN["3_1"], "t")
    s = inverse_delta_series(delta, 2, 4)
    lam = LaurentPoly.monomial(1, 1, "lam")
    # Delta(e^x) = 2 cosh(x) - 1 = 1 + x^2 + x^4/12 + ..., x = 2 h lam
    d = HSeries([1, 0, lam**2 * 4, 0, lam**4 * Fraction(4, 3)], 4, "lam")
    assert (s * d).equals(HSeries.const(1, 4, "lam"))
