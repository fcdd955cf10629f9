import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from daha import weyl as W
from daha.rootsys import build_root_system, mat_vec

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
B2 = build_root_system("B", 2)


def test_action_on_points():
    assert W.act_point(A1, W.ident(A1), (3,)) == (3,)
    # s_0 = s_[-alpha_1, 1] sends 0 to a_1
    assert W.act_point(A1, W.simple_reflection(A1, 0), (0,)) == (2,)
    assert W.act_point(A2, W.translation(A2, (1, -1)), (0, 0)) == (1, -1)


def test_lengths_and_lambda_a1():
    b1, a1 = W.translation(A1, (1,)), W.translation(A1, (2,))
    assert W.length(A1, W.ident(A1)) == 0
    assert W.length(A1, b1) == 1
    assert W.length(A1, a1) == 2
    assert W.lambda_set(A1, W.ident(A1)) == []
    assert W.lambda_set(A1, b1) == [((1,), 0)]
    assert sorted(W.lambda_set(A1, a1)) == [((1,), 0), ((1,), 1)]


def test_pi_omega_a1():
    pib, om = W.decompose_pi_omega(A1, (1,))
    assert om == ((-1,),)
    assert W.length(A1, pib) == 0
    pib, om = W.decompose_pi_omega(A1, (-2,))
    assert om == ((1,),) and pib == W.translation(A1, (-2,))


def test_reduced_words_a1():
    assert W.reduced_word(A1, W.ident(A1)) == (0, [])
    r, word = W.reduced_word(A1, W.translation(A1, (1,)))
    assert r == 1 and len(word) == 1
    r, word = W.reduced_word(A1, W.translation(A1, (2,)))
    assert r == 0 and sorted(word) == [0, 1]
    assert W.replay(A1, r, word) == W.translation(A1, (2,))


def test_order_a1():
    assert W.order_preceq(A1, (1,), (1,))
    assert W.order_preceq(A1, (-1,), (1,))
    assert not W.order_preceq(A1, (1,), (-1,))


def test_sigma_a1():
    assert W.sigma_sets(A1, (0,))[0] == [(0,)]
    assert W.sigma_sets(A1, (1,))[1] == []
    # the constant term is absent: 0 is not above -b_1 in the order used for e_b
    assert W.sigma_sets(A1, (-1,))[1] == [(1,)]
    assert sorted(W.sigma_sets(A1, (-2,))[1]) == [(0,), (2,)]


def test_orbit_extremes_a2():
    bm, bp, om, om_neg = W.orbit_extremes(A2, (1, -1))
    assert bm == (-1, 0) and bp == (0, 1)
    # b_1 - b_2 lies in the minuscule orbit of -b_1
    assert sorted(W.orbit(A2, (1, -1))) == [(-1, 0), (0, 1), (1, -1)]


@pytest.mark.parametrize("b", [b for b in itertools.product(range(-3, 4), repeat=2)])
def test_pi_omega_conditions_a2(b):
    """omega_b is minimal with omega_b(b) antidominant, and pi_b = b omega_b^{-1}
    has length l(b) - l(omega_b)."""
    pib, om = W.decompose_pi_omega(A2, b)
    assert A2.antidominant(mat_vec(om, b))
    lb = W.length(A2, W.translation(A2, b))
    assert W.length(A2, pib) == lb - len(W.finite_reduced_word(A2, om))
    t = W.translation(A2, b)
    assert sorted(W.lambda_set(A2, t)) == sorted(W.lambda_set_direct(A2, t))


def _words(rs, n):
    return st.lists(st.integers(0, rs.rank), min_size=0, max_size=n)


@given(_words(B2, 6))
def test_reduced_word_replays(word):
    x = W.ident(B2)
    for j in word:
        x = W.mul(B2, x, W.simple_reflection(B2, j))
    r, red = W.reduced_word(B2, x)
    assert W.replay(B2, r, red) == x
    assert len(red) == W.length(B2, x)
    assert len(red) <= len(word)


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_lambda_closed_forms(b):
    t = W.translation(A2, b)
    assert sorted(W.lambda_set(A2, t)) == sorted(W.lambda_translation_closed(A2, b))


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_sigma_convex(b):
    """``c`` and ``c + r alpha^vee`` in sigma(b) force the points between."""
    sigma = set(W.sigma_sets(B2, b)[0])
    for c in sigma:
        for alpha in B2.positive_roots:
            av = B2.coroot(alpha)
            for r in range(1, 6):
                far = tuple(x + r * y for x, y in zip(c, av))
                if far in sigma:
                    for s in range(1, r):
                        assert tuple(x + s * y for x, y in zip(c, av)) in sigma


def test_wall_crossing_cases_a2():
    seen = set()
    for b in itertools.product(range(-3, 4), repeat=2):
        if W.length(A2, W.translation(A2, b)) > 4:
            continue
        for root, level in W.lambda_set(A2, W.translation(A2, b)):
            case, _ = W.wall_cross_classify(A2, b, root, level)
            seen.add(case)
    assert seen == {"c=b", "b>c>s_alpha(b)", "s_alpha(b)>c>b", "c=s_alpha(b)>b"}


def _between(rs, b, c):
    bm, bp, _, _ = W.orbit_extremes(rs, b)
    return W.order_leq(rs, c, bp) and c != bp and W.order_leq(rs, bm, c) and c != bm


@pytest.mark.parametrize("b", [(1, -1), (0, 1), (-1, -1), (2, 0), (1, 1)])
def test_above_orbit_lies_between_extremes_a2(b):
    """c above b_+ (strictly, in preceq) forces b_+ > c > b_- with c outside W(b)."""
    bp = W.orbit_extremes(A2, b)[1]
    orbit = set(W.orbit(A2, b))
    for c in itertools.product(range(-4, 5), repeat=2):
        if W.order_preceq(A2, bp, c) and c != bp:
            assert _between(A2, b, c) and c not in orbit


def test_between_extremes_does_not_imply_above():
    # an orbit point strictly inside
    b = (1, 1)
    bp = W.orbit_extremes(A2, b)[1]
    assert any(_between(A2, b, c) and not W.order_preceq(A2, bp, c) for c in W.orbit(A2, b))
    # and a point outside the orbit: -2b_1 + 2b_2 sits between -b_1 and b_2 but its
    # antidominant representative -2b_2 is below -b_1
    b, c = (1, -1), (-2, 2)
    bp = W.orbit_extremes(A2, b)[1]
    assert _between(A2, b, c) and c not in W.orbit(A2, b)
    assert not W.order_preceq(A2, bp, c)
