from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from daha import daha_ops as D
from daha import macdonald as Mac
from daha import weyl as W
from daha.coeffs import ONE, LaurentPoly, Params
from daha.rootsys import parse_type, small_weights

A1 = parse_type("A1")
A2 = parse_type("A2")
B2 = parse_type("B2")
C2 = parse_type("C2")
P = Params(A1)
q = P.q_power(1)
t = P.t(2)
x = LaurentPoly.monomial((1,))
xi = LaurentPoly.monomial((-1,))


def qint(n):
    return sum((q ** i for i in range(1, n)), ONE)


def qbinom(n, k):
    num = ONE
    den = ONE
    for i in range(k):
        num = num * qint(n - i)
        den = den * qint(i + 1)
    return num / den


def test_rank_one_polynomials():
    assert Mac.compute_e(A1, (0,)).poly == LaurentPoly.constant(1, 1)
    assert Mac.compute_e(A1, (1,)).poly == x
    assert Mac.compute_e(A1, (-1,)).poly == xi + x.scale((t - 1) / (q * t - 1))


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("b", [(-1,), (2,), (-2,)])
def test_eigenvector_solve_matches_gram_schmidt(b, k):
    solved = Mac.specialize_poly(A1, Mac.compute_e(A1, b).poly, k)
    assert solved == Mac.gram_schmidt_e(A1, b, k)


def test_gram_schmidt_values_at_t_equal_q():
    assert Mac.gram_schmidt_e(A1, (-1,), 1) == xi + x.scale(ONE / (q + 1))


@pytest.mark.parametrize("rs", [A1, A2, B2], ids=lambda r: r.name)
def test_polynomials_are_Y_eigenvectors(rs):
    for b in small_weights(rs, 1):
        ep = Mac.compute_e(rs, b)
        assert Mac.is_eigenvector(rs, ep)
        # leading monomial x_b with coefficient one
        assert ep.poly.coeff(b) == ONE


def test_x_b1_at_its_spectral_point():
    assert Mac.evaluate_at(A1, x, (1,)) == P.q_power(Fraction(1, 2)) * P.u(2)


@pytest.mark.parametrize("rs", [A1, A2, B2], ids=lambda r: r.name)
def test_duality_on_small_grid(rs):
    ws = small_weights(rs, 1)
    for i, b in enumerate(ws):
        for c in ws[i + 1:]:
            assert Mac.duality_check(rs, b, c)


@pytest.mark.parametrize("rs", [A1, A2, B2, C2], ids=lambda r: r.name)
def test_evaluation_formula(rs):
    for b in small_weights(rs, 1):
        assert Mac.eval_formula(rs, b) == Mac.compute_e(rs, b).eval_at_rho


def test_evaluation_values_a1():
    assert Mac.compute_e(A1, (1,)).eval_at_rho == P.u(2, -1)
    assert Mac.eval_formula(A1, (-1,)) == (q * P.u(2, 3) - P.u(2, -1)) / (q * t - 1)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("rs", [A1, A2], ids=lambda r: r.name)
def test_norm_formula(rs, k):
    for b in small_weights(rs, 1):
        assert Mac.specialize_t(rs, Mac.norm_formula(rs, b), k) == Mac.norm_via_pairing(rs, b, k)


def test_norm_value_a1():
    assert Mac.norm_via_pairing(A1, (-1,), 1) == q / (q * q + q + 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_constant_term_is_a_q_binomial(k):
    # rank one at t = q^k: the constant term of mu is [2k choose k]_q
    assert Mac.constant_term_formula(A1, k) == qbinom(2 * k, k)
    assert Mac.constant_term_check(A1, k)


def test_constant_term_a1_k1():
    assert Mac.mu_data(A1, 1).ct == ONE + q


@pytest.mark.parametrize("rs", [A2, B2], ids=lambda r: r.name)
def test_constant_term_rank_two(rs):
    assert Mac.constant_term_check(rs, 1)


def test_J_sets_match_the_corrected_sign_rule():
    # J = 1..top-1, plus top when omega_b^-1(alpha) is positive
    assert Mac.J_set(A1, (1,), (1,)) == []
    assert Mac.J_set(A1, (1,), (-1,)) == [1]


@pytest.mark.parametrize("bm", [(-1,), (-2,)])
def test_intertwiner_reconstruction(bm):
    eps = Mac.default_signs(A1, bm, 1)
    for b in W.orbit(A1, bm):
        assert Mac.phie_check(A1, b, eps)


def test_symmetric_polynomial_rank_one():
    eps = Mac.default_signs(A1, (-1,), 1)
    p = Mac.symmetric_p(A1, (-1,), eps)
    assert p == x + xi
    assert Mac.is_W_invariant(A1, p)
    assert Mac.Lf_check(A1, (-1,), p)
    assert Mac.macdsym_orthogonality(A1, (-1,), p, 1)
    assert p == Mac.symmetric_from_products(A1, (-1,), eps)


def test_expansion_of_the_orbit_sum():
    coeffs = Mac.expand_in_e(A1, x + xi)
    assert coeffs == {(-1,): ONE, (1,): (q * t - t) / (q * t - 1)}


@pytest.mark.parametrize("bm, expected", [((-1,), (0,)), ((-2,), (-1,))])
def test_shift_operator(bm, expected):
    shifted, const = Mac.shift_check(A1, bm)
    assert shifted == expected
    assert const == -P.u(2)


@pytest.mark.parametrize("b", [(-2,), (-1,), (0,), (1,), (2,)])
@pytest.mark.parametrize("direction", [1, -1])
def test_pieri_support_and_operator_values(b, direction):
    a = (1,)
    exp = Mac.pieri_expand(A1, a, b, direction)
    assert Mac.pieri_index_check(A1, a, b, direction)
    assert dict(exp.terms) == Mac.pieri_from_operator(A1, a, b, direction)


def test_pieri_x_times_e_b1():
    exp = dict(Mac.pieri_expand(A1, (1,), (1,), 1).terms)
    assert set(exp) == {(2,), (0,)}


@settings(max_examples=10)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_duality_property_rank_one(b, c):
    assert Mac.duality_check(A1, (b,), (c,))


def test_spectral_points_identify_weights():
    pts = {Mac.spectral_point(A2, b) for b in small_weights(A2, 1)}
    assert len(pts) == len(small_weights(A2, 1))
    for b in small_weights(A2, 1):
        assert Mac.index_of_point(A2, W.decompose_pi_omega(A2, b)[0]) == b
    # a dominant translation is not of the form pi_b
    assert Mac.index_of_point(A2, W.AffElt(A2.weyl_group[0], (1, 0))) is None


def test_default_signs_respect_the_stabilizer():
    assert Mac.default_signs(A1, (0,), -1) == {Fraction(2): 1}
    with pytest.raises(D.SignSetError):
        D.SignSet.constant(A1, -1).check(A1, (0,))
