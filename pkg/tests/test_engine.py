import pytest

from kinv.coeff import HSeries, LaurentPoly
from kinv.diagrams import braid_to_long_knot, parse_braid
from kinv.engine import eval_verma, eval_vn, kink_scalar, vn_as_series
from kinv.modules import FiniteModel
from oracles import jones_in_a

S = "s"


def _as_laurent(d):
    return LaurentPoly.from_dict(d, S)


@pytest.mark.parametrize("n", range(1, 7))
def test_unknot_colored_jones(table, n):
    for b in table["unknot"]:
        assert eval_vn(braid_to_long_knot(b), n) == LaurentPoly.const(1, S)


def test_unknot_colored_jones_function(table):
    for b in table["unknot"]:
        assert eval_verma(braid_to_long_knot(b), -1, 8).equals(HSeries.const(1, 8, "lam"))


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2", "6_1"])
def test_jones_against_kauffman_bracket(table, name):
    for b in table[name]:
        expected = _as_laurent(jones_in_a(b.strands, list(b.letters)))
        assert eval_vn(braid_to_long_knot(b), 2).terms() == expected.terms()


def test_trivial_colour_is_one(long_knot):
    for name in ("3_1", "5_2"):
        assert eval_vn(long_knot(name), 1) == LaurentPoly.const(1, S)


@pytest.mark.parametrize("name", ["3_1", "4_1"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_verma_specializes_to_finite(long_knot, name, n):
    d = long_knot(name)
    j = eval_verma(d, -1, 6)
    assert j.subs_var(n - 1).equals(vn_as_series(eval_vn(d, n), 6))


def test_sigma_independence(long_knot):
    for name in ("3_1", "4_1", "5_2"):
        d = long_knot(name)
        assert eval_verma(d, 1, 6).equals(eval_verma(d, -1, 6))


@pytest.mark.parametrize("n", [2, 3])
def test_finite_mirror_inverts_variable(table, n):
    for name in ("3_1", "5_2"):
        b = table[name][0]
        j = eval_vn(braid_to_long_knot(b), n)
        jm = eval_vn(braid_to_long_knot(b.mirror()), n)
        assert jm == j.reflect()


def test_figure_eight_is_amphichiral(table):
    b = table["4_1"][0]
    for n in (2, 3):
        assert eval_vn(braid_to_long_knot(b), n).is_symmetric()


@pytest.mark.parametrize("w", [1, 2, 3])
def test_kink_is_monomial(w):
    assert kink_scalar(FiniteModel(w)).is_monomial()


def test_framing_independent_of_stabilization():
    one = braid_to_long_knot(parse_braid("[1,1,1]"))
    two = braid_to_long_knot(parse_braid("[1,1,1,-2]"))
    assert eval_vn(one, 3) == eval_vn(two, 3)
