import pytest

from daha import macdonald as Mac
from daha import roots_of_unity as U
from daha.coeffs import LaurentPoly
from daha.rootsys import parse_type

A1 = parse_type("A1")
B2 = parse_type("B2")


@pytest.fixture(scope="module")
def v3():
    return U.build_module(U.build_context(A1, 3))


@pytest.fixture(scope="module")
def v5():
    return U.build_module(U.build_context(A1, 5))


@pytest.fixture(scope="module")
def tilde7():
    return U.build_tilde_module(U.build_context(A1, 7, 1))


@pytest.mark.parametrize(
    "rs, N, order, v_power",
    [
        (A1, 3, 3, 1),   # 2m = 4 is invertible mod 3: v -> zeta^(4^-1)
        (A1, 5, 5, 4),
        (A1, 4, 16, 1),  # even N: fall back to 2mN
        (B2, 3, 3, 2),   # m = 1 for B2
    ],
)
def test_cyclotomic_order(rs, N, order, v_power):
    assert U.cyclotomic_order(rs, N) == (order, v_power)


def test_context_a1_n3(v3):
    ctx = v3.ctx
    assert ctx.K_N == [(3,)]
    assert v3.labels == [(0,), (-1,), (1,), (-2,), (2,), (3,)]
    assert v3.labels[0] == (0,)


@pytest.mark.parametrize("N, size", [(3, 6), (5, 10), (4, 16)])
def test_fundamental_domain_size(N, size):
    # one representative per distinct spectral point modulo K_N
    ctx = U.build_context(A1, N)
    assert len(ctx.B_fund) == size
    assert len({ctx.residue(b) for b in ctx.B_fund}) == len(ctx.B_N)


def test_discretize_constant_and_x(v3):
    F = v3.F
    ones = U.discretize(LaurentPoly.constant(1, 1), v3.ctx, v3.points)
    assert all(e == F.one() for e in ones)
    # x at #b: q^{(b1, b)} times t^{-1/2} or t^{1/2}; q = zeta_3, q^{-1/2} = zeta_3
    vals = [e.to_string() for e in U.discretize(LaurentPoly.monomial((1,)), v3.ctx, v3.points)]
    assert vals == ["(1)/(ul)", "(z)/(ul)", "-z*ul - ul", "(-z - 1)/(ul)", "z*ul", "ul"]


def test_discretized_polynomials_agree_exactly_on_equivalent_points(v3):
    ctx = v3.ctx

    def vec(b):
        return U.discretize(Mac.compute_e(A1, b).normalized(), ctx, v3.points)

    def same(a, b):
        return all(x == y for x, y in zip(a, b))

    assert same(vec((-3,)), vec((0,)))
    assert same(vec((4,)), vec((1,)))
    assert same(vec((-4,)), vec((-1,)))
    assert not same(vec((1,)), vec((-1,)))


@pytest.mark.parametrize("mod", ["v3", "v5"])
def test_generic_module_structure(mod, request):
    m = request.getfixturevalue(mod)
    rel = U.matrix_relations(m)
    assert all(rel.values()), rel
    assert U.is_symmetric(m.Pi)
    assert U.is_invertible(m.Pi, m.F, symbolic=True)
    assert U.eps_eigen_check(m)
    assert U.irreducibility_witness(m) == m.dim


def test_discretization_commutes_with_the_action(v3):
    polys = [LaurentPoly.monomial((b,)) for b in (-1, 0, 2)]
    assert U.discretization_commutes(v3, polys)


@pytest.mark.parametrize("mod", ["v3", "v5"])
def test_no_diagonal_tau_plus_on_the_generic_module(mod, request):
    # the conjugation identities have no diagonal solution when t is free
    m = request.getfixturevalue(mod)
    assert U.diagonal_tau_plus_solutions(m) == 0


def test_tilde_module_n7(tilde7):
    assert tilde7.labels == [(0,), (-1,), (-2,), (-3,), (-4,)]
    checks = U.pairing_checks(tilde7)
    assert all(checks.values()), checks
    assert all(e == tilde7.F.one() for e in tilde7.eps_vectors[0])


@pytest.mark.parametrize("N, k, dim", [(3, 1, 1), (5, 1, 3), (7, 1, 5), (7, 2, 3)])
def test_tilde_dimensions(N, k, dim):
    assert U.build_tilde_module(U.build_context(A1, N, k)).dim == dim


def test_tilde_sl2_action(tilde7):
    rep = U.gaussian_and_sl2(tilde7)
    assert all(rep.checks.values()), rep.checks
    assert U.diagonal_tau_plus_solutions(tilde7) >= 1


def test_admissibility_rejects_resonant_k():
    with pytest.raises(U.AdmissibilityError):
        U.build_tilde_module(U.build_context(A1, 3, 2))


def test_rank_two_context_builds():
    ctx = U.build_context(B2, 3)
    assert ctx.M == 3
    assert ctx.K_N == [(3, 0), (0, 3)]
    assert len(ctx.B_fund) == 72


def test_matrix_json_is_stringly_typed(v3):
    out = U.matrix_to_json(v3.Pi)
    assert len(out) == 6 and all(isinstance(s, str) for row in out for s in row)
