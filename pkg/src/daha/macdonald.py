"""Non-symmetric Macdonald polynomials and their identities.

``e_b`` is computed as the joint eigenvector of ``Y_{b_1}, ..., Y_{b_n}`` in
``x_b + Sigma_*(b)`` by a triangular solve over ``sigma(b)``.  The inner
product with the weight ``mu`` is only formed at ``t_nu = q_nu^{k_nu}``, where
``mu`` is a Laurent polynomial; it serves as an independent oracle.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import daha_ops as D
from . import weyl as W
from .coeffs import (
    ONE,
    ZERO,
    X0,
    Coefficient,
    LaurentPoly,
    SpectralPoint,
    _pd,
    solve_linear,
)
from .rootsys import RootSystem, Vec, identity, mat_vec


class SingularSystemError(ArithmeticError):
    """The eigenvector conditions do not determine ``e_b``."""


class ShiftCheckError(ArithmeticError):
    pass


# ------------------------------------------------------------ spectral data


def spectral_point(rs: RootSystem, b: Sequence[int]) -> SpectralPoint:
    """``#b = b omega_b^{-1}``: ``x_a(#b) = q^{(a, b)} prod t_nu^{-(omega_b^{-1}(rho_nu), a)}``."""
    om, _ = W.to_antidominant(rs, b)
    return SpectralPoint(rs, tuple(b), W.mat_inv(rs, om), D.params(rs))


def rho_point(rs: RootSystem, sign: int = -1) -> SpectralPoint:
    """``t^{-rho}`` (``sign=-1``, the point ``#0``) or ``t^{rho}``."""
    w = identity(rs.rank) if sign < 0 else rs.longest_element
    return SpectralPoint(rs, (0,) * rs.rank, w, D.params(rs))


def point_of_element(rs: RootSystem, x: W.AffElt) -> SpectralPoint:
    """The point ``q^{c} t^{-w(rho)}`` of ``x = w d' = c' w`` with ``c = w(d)``."""
    return SpectralPoint(rs, mat_vec(x.w, x.b), x.w, D.params(rs))


def eigenvalue(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> Coefficient:
    """Eigenvalue of ``Y_a`` on ``e_b``: ``x_{-a}(#b)``."""
    return spectral_point(rs, b).value(tuple(-x for x in a))


# ---------------------------------------------------------------- EPoly


@dataclass
class EPoly:
    b: Vec
    poly: LaurentPoly
    spectral: SpectralPoint
    eval_at_rho: Coefficient

    def normalized(self) -> LaurentPoly:
        """``eps_b = e_b / e_b(t^{-rho})``."""
        return self.poly.scale(self.eval_at_rho.inverse())


_MEMO: Dict[Tuple[str, Vec], EPoly] = {}
_LOCK = threading.Lock()
_KEY_LOCKS: Dict[Tuple[str, Vec], threading.Lock] = {}


def _key_lock(key) -> threading.Lock:
    with _LOCK:
        return _KEY_LOCKS.setdefault(key, threading.Lock())


def _cache_path(rs: RootSystem, b: Vec) -> Optional[str]:
    root = os.environ.get("DAHA_CACHE_DIR")
    if not root:
        return None
    name = f"{rs.name}_e_{'_'.join(str(x) for x in b)}.json"
    return os.path.join(root, name)


def _coeff_to_raw(c: Coefficient) -> dict:
    return {
        "num": sorted([list(e) + [k] for e, k in _pd(c.num).items()]),
        "den": sorted([list(e) + [k] for e, k in _pd(c.den).items()]),
    }


def _coeff_from_raw(d: dict) -> Coefficient:
    num = {tuple(r[:-1]): r[-1] for r in d["num"]}
    den = {tuple(r[:-1]): r[-1] for r in d["den"]}
    return Coefficient.from_laurent_dict(num) / Coefficient.from_laurent_dict(den)


def poly_to_raw(f: LaurentPoly) -> list:
    return [[list(b), _coeff_to_raw(c)] for b, c in sorted(f.terms.items())]


def poly_from_raw(data: list) -> LaurentPoly:
    return LaurentPoly({tuple(b): _coeff_from_raw(c) for b, c in data})


def _load(rs: RootSystem, b: Vec) -> Optional[LaurentPoly]:
    path = _cache_path(rs, b)
    if not path or not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        return poly_from_raw(json.load(fh))


def _store(rs: RootSystem, b: Vec, f: LaurentPoly):
    path = _cache_path(rs, b)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(poly_to_raw(f), fh)
    os.replace(tmp, path)


def compute_e(rs: RootSystem, b: Sequence[int]) -> EPoly:
    """``e_b``: the joint ``Y``-eigenvector in ``x_b + Sigma_*(b)``.

    With ``M_i[d, c]`` the coefficient of ``x_d`` in ``Y_i(x_c)``, the
    coefficient of ``x_d`` is fixed by
    ``(lambda_i - M_i[d, d]) e_d = sum_{c < d} M_i[d, c] e_c`` for any ``i``
    with ``lambda_i != M_i[d, d]``; ``d`` runs through ``sigma(b)`` in a
    linear extension of the order.
    """
    b = tuple(b)
    key = (rs.name, b)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    with _key_lock(key):
        hit = _MEMO.get(key)
        if hit is not None:
            return hit
        poly = _load(rs, b)
        if poly is None:
            poly = _solve_e(rs, b)
            _store(rs, b, poly)
        ep = EPoly(b, poly, spectral_point(rs, b), rho_point(rs).evaluate(poly))
        _MEMO[key] = ep
        return ep


def _solve_e(rs: RootSystem, b: Vec) -> LaurentPoly:
    sigma, _, _ = W.sigma_sets(rs, b)
    n = rs.rank
    lam = [eigenvalue(rs, D._unit(rs, i), b) for i in range(n)]
    coef: Dict[Vec, Coefficient] = {b: ONE}
    images = {}
    for d in sigma:
        if d == b:
            continue
        solved = False
        for i in range(n):
            acc = ZERO
            diag = None
            for c, ec in coef.items():
                img = images.get((i, c))
                if img is None:
                    img = images[(i, c)] = D.Y_monomial(rs, i, 1, c)
                acc = acc + img.coeff(d) * ec
            diag = D.Y_monomial(rs, i, 1, d).coeff(d)
            gap = lam[i] - diag
            if gap.is_zero():
                continue
            coef[d] = acc / gap
            solved = True
            break
        if not solved:
            raise SingularSystemError(f"spectral points of {b} and {d} coincide")
    return LaurentPoly(coef)


def clear_memo():
    _MEMO.clear()


def is_eigenvector(rs: RootSystem, ep: EPoly) -> bool:
    for i in range(rs.rank):
        a = D._unit(rs, i)
        if D.apply_Y(rs, a, ep.poly) != ep.poly.scale(eigenvalue(rs, a, ep.b)):
            return False
    return True


def evaluate_at(rs: RootSystem, f: LaurentPoly, c: Sequence[int]) -> Coefficient:
    """``f(#c)``."""
    return spectral_point(rs, c).evaluate(f)


# ----------------------------------------------------- Fourier pairing


def fourier_pairing(rs: RootSystem, f: LaurentPoly, g: LaurentPoly) -> Coefficient:
    """``[[f, g]] = {fbar(Y) g}(t^{-rho})`` with ``fbar(x_z) = x_{-z}``."""
    acc = LaurentPoly()
    for z, c in f.terms.items():
        acc = acc + D.apply_Y(rs, tuple(-x for x in z), g).scale(c)
    return rho_point(rs).evaluate(acc)


def duality_sides(rs: RootSystem, b: Sequence[int], c: Sequence[int]) -> Tuple[Coefficient, Coefficient]:
    eb, ec = compute_e(rs, b), compute_e(rs, c)
    return evaluate_at(rs, eb.poly, c) * ec.eval_at_rho, evaluate_at(rs, ec.poly, b) * eb.eval_at_rho


def duality_check(rs: RootSystem, b: Sequence[int], c: Sequence[int]) -> bool:
    """``e_b(#c) e_c(#) = e_c(#b) e_b(#)``."""
    lhs, rhs = duality_sides(rs, b, c)
    return lhs == rhs


# -------------------------------------------------- evaluation and norms


def _positive_coroots(rs: RootSystem):
    """``(alpha, alpha^vee in b-coords, nu)`` for ``alpha`` in ``R_+``."""
    return [(a, rs.coroot(a), rs.root_length(a)) for a in rs.positive_roots]


def x_at_rho(rs: RootSystem, z: Sequence[int], sign: int = 1) -> Coefficient:
    """``x_z(t^{sign rho}) = prod_nu t_nu^{sign (rho_nu, z)}``."""
    P = D.params(rs)
    out = ONE
    for nu, rho in rs.rho_by_length.items():
        e = 2 * sign * rs.pairing(rho, z)
        out = out * P.u(nu, int(e))
    return out


def J_set(rs: RootSystem, alpha: Vec, b: Sequence[int]) -> List[int]:
    """Indices ``j`` for the coroot of ``alpha > 0``: ``0 < j < -(alpha, b_-)``,
    plus ``j = -(alpha, b_-)`` when ``omega_b^{-1}(alpha) > 0``.

    Equivalently ``{j : [-alpha, j] in lambda(pi_b)}``.
    """
    bm, _, om, _ = W.orbit_extremes(rs, b)
    top = -sum(x * y for x, y in zip(bm, alpha))
    if top <= 0:
        return []
    end = rs.is_positive(W.root_image(rs, W.mat_inv(rs, om), alpha))
    return list(range(1, top + 1 if end else top))


def J_set_printed(rs: RootSystem, alpha: Vec, b: Sequence[int], zero_branch: str = "none") -> List[int]:
    """The sign rule: ``0 < j < (alpha, b_+)`` if ``(alpha^vee, b^o) > 0`` and
    ``0 < j <= (alpha, b_+)`` if negative, ``b^o = -w_0(b)``.  ``zero_branch``
    (``none``, ``strict``, ``weak``) covers a zero pairing.  Kept for
    comparison; it disagrees with direct evaluation (see ``J_set``)."""
    _, bp, _, _ = W.orbit_extremes(rs, b)
    bo = tuple(-x for x in mat_vec(rs.longest_element, b))
    s = sum(x * y for x, y in zip(bo, alpha))
    top = sum(x * y for x, y in zip(bp, alpha))
    if s > 0 or (s == 0 and zero_branch == "strict"):
        return list(range(1, top))
    if s < 0 or (s == 0 and zero_branch == "weak"):
        return list(range(1, top + 1))
    return []


def _index_sets(rs: RootSystem, b: Sequence[int], printed: bool, zero_branch: str):
    for alpha, av, nu in _positive_coroots(rs):
        js = J_set_printed(rs, alpha, b, zero_branch) if printed else J_set(rs, alpha, b)
        yield av, nu, js


def eval_formula(rs: RootSystem, b: Sequence[int], printed: bool = False, zero_branch: str = "none") -> Coefficient:
    """Closed form ``x_{b_-}(t^rho) prod (1 - q_a^j t_a X) / (1 - q_a^j X)``
    with ``X = x_a(t^rho)`` and ``j`` in ``J_set``."""
    P = D.params(rs)
    bm, _, _, _ = W.orbit_extremes(rs, b)
    out = x_at_rho(rs, bm)
    for av, nu, js in _index_sets(rs, b, printed, zero_branch):
        X = x_at_rho(rs, av)
        t = P.t(nu)
        for j in js:
            qj = P.q_power(Fraction(2 * j) / nu)
            out = out * (1 - qj * t * X) / (1 - qj * X)
    return out


def norm_formula(rs: RootSystem, b: Sequence[int], printed: bool = False, zero_branch: str = "none") -> Coefficient:
    """Closed form ``prod (t^{1/2} - q_a^j t^{-1/2} X) / (t^{-1/2} - q_a^j t^{1/2} X)``
    of ``<eps_b, eps_b>`` over the same index sets."""
    P = D.params(rs)
    out = ONE
    for av, nu, js in _index_sets(rs, b, printed, zero_branch):
        X = x_at_rho(rs, av)
        u, ui = P.u(nu), P.u(nu, -1)
        for j in js:
            qj = P.q_power(Fraction(2 * j) / nu)
            out = out * (u - qj * ui * X) / (ui - qj * u * X)
    return out


# ----------------------------------------------------- mu at t = q^k


@dataclass
class MuData:
    k: Dict[Fraction, int]
    mu_poly: LaurentPoly
    ct: Coefficient
    mu1: LaurentPoly = field(repr=False)


def specialize_t(rs: RootSystem, c: Coefficient, k) -> Coefficient:
    """``t_nu -> q_nu^{k_nu}``."""
    P = D.params(rs)
    return c.substitute_u(P.t_eq_qk(P.normalize_k(k)))


def specialize_poly(rs: RootSystem, f: LaurentPoly, k) -> LaurentPoly:
    return f.map_coefficients(lambda c: specialize_t(rs, c, k))


def mu_data(rs: RootSystem, k) -> MuData:
    """``mu = prod_a prod_{i=0}^{k-1} (1 - x_a q_a^i) prod_{i=1}^{k} (1 - x_a^{-1} q_a^i)``."""
    P = D.params(rs)
    kk = P.normalize_k(k)
    n = rs.rank
    mu = LaurentPoly.constant(1, n)
    for alpha, av, nu in _positive_coroots(rs):
        kn = kk[nu]
        for i in range(kn):
            qa = P.q_power(Fraction(2 * i) / nu)
            mu = mu * (LaurentPoly.constant(1, n) - LaurentPoly.monomial(av, qa))
        for i in range(1, kn + 1):
            qa = P.q_power(Fraction(2 * i) / nu)
            mu = mu * (LaurentPoly.constant(1, n) - LaurentPoly.monomial(tuple(-x for x in av), qa))
    ct = mu.constant_term()
    return MuData(kk, mu, ct, mu.scale(ct.inverse()))


def inner_product(rs: RootSystem, f: LaurentPoly, g: LaurentPoly, mu: MuData) -> Coefficient:
    """``<f, g> = <mu_1 f g^*>``; ``f, g`` must already be specialized."""
    return (mu.mu1 * f * g.star()).constant_term()


def constant_term_formula(rs: RootSystem, k) -> Coefficient:
    """``<mu>`` from the product formula at ``t = q^k``, telescoped:
    ``prod_a prod_{i=1}^{k} (1 - X q_a^i) / prod_{i=1-k}^{0} (1 - X q_a^i)``
    with ``X = x_a(t^rho)``."""
    P = D.params(rs)
    kk = P.normalize_k(k)
    out = ONE
    for alpha, av, nu in _positive_coroots(rs):
        X = specialize_t(rs, x_at_rho(rs, av), kk)
        kn = kk[nu]
        for i in range(1, kn + 1):
            out = out * (1 - X * P.q_power(Fraction(2 * i) / nu))
        for i in range(1 - kn, 1):
            out = out / (1 - X * P.q_power(Fraction(2 * i) / nu))
    return out


def constant_term_check(rs: RootSystem, k) -> bool:
    return mu_data(rs, k).ct == constant_term_formula(rs, k)


def gram_schmidt_e(rs: RootSystem, b: Sequence[int], k, support: Optional[Iterable[Vec]] = None) -> LaurentPoly:
    """``e_b`` at ``t = q^k`` from ``e_b - x_b in span(support)`` and
    ``<e_b, x_c> = 0`` for ``c`` in ``support`` (default ``sigma_*(b)``)."""
    b = tuple(b)
    mu = mu_data(rs, k)
    sup = list(support) if support is not None else W.sigma_sets(rs, b)[1]
    if not sup:
        return LaurentPoly.monomial(b)
    mons = {c: LaurentPoly.monomial(c) for c in [b] + sup}
    A = [[inner_product(rs, mons[d], mons[c], mu) for d in sup] for c in sup]
    rhs = [-inner_product(rs, mons[b], mons[c], mu) for c in sup]
    sol = solve_linear(A, rhs, ZERO, ONE)
    out = LaurentPoly.monomial(b)
    for d, s in zip(sup, sol):
        out.add_term(d, s)
    return out


def norm_via_pairing(rs: RootSystem, b: Sequence[int], k) -> Coefficient:
    """``<eps_b, eps_b>`` at ``t = q^k`` from the mu-pairing."""
    ep = compute_e(rs, b)
    eps = specialize_poly(rs, ep.normalized(), k)
    return inner_product(rs, eps, eps, mu_data(rs, k))


# --------------------------------------------------- intertwiners, psym


def default_signs(rs: RootSystem, bm: Sequence[int], eps: int = 1) -> D.SignSet:
    """Constant sign ``eps`` except ``+1`` where the stabilizer constraint forces it."""
    s = D.SignSet.constant(rs, eps)
    for i in range(rs.rank):
        if bm[i] == 0:
            s[rs.simple_lengths[i]] = 1
    return s


def orbit_product(rs: RootSystem, b: Sequence[int], eps: D.SignSet, y_eigen: bool = False) -> Coefficient:
    """``prod_{(alpha, b) > 0} eps_a (t_a - x_a^{eps_a}) / (1 - x_a^{eps_a})``, ``a = alpha^vee``.

    ``x_a`` is ``x_a(#b)``, the ``Y_a^{-1}``-eigenvalue of ``e_b``; with
    ``y_eigen`` it is the ``Y_a``-eigenvalue ``x_a(#b)^{-1}`` instead.
    """
    P = D.params(rs)
    pt = spectral_point(rs, b)
    out = ONE
    for alpha, av, nu in _positive_coroots(rs):
        if sum(x * y for x, y in zip(b, alpha)) > 0:
            e = eps[nu] * (-1 if y_eigen else 1)
            xa = pt.value(tuple(e * x for x in av))
            out = out * ((P.t(nu) - xa) / (1 - xa)) * eps[nu]
    return out


def phie_prefactor(rs: RootSystem, b: Sequence[int], eps: D.SignSet) -> Coefficient:
    """Factor with ``e_{b_-} = factor * Phi_{omega_b}(e_b)``; ``x_a`` here is the
    ``Y_a``-eigenvalue, the substitution that turns ``Phi`` into ``G``-products."""
    return orbit_product(rs, b, eps, y_eigen=True)


def phie_check(rs: RootSystem, b: Sequence[int], eps: Optional[D.SignSet] = None, y_eigen: bool = True) -> bool:
    """``e_{b_-} = prefactor * Phi_{omega_b}(e_b)``."""
    b = tuple(b)
    om, bm = W.to_antidominant(rs, b)
    eps = eps or default_signs(rs, bm)
    eps.check(rs, bm)
    ep = compute_e(rs, b)
    word = W.finite_reduced_word(rs, om)
    img, pt = D.apply_intertwiner_word(rs, word, eps, ep.poly, ep.spectral)
    return compute_e(rs, bm).poly == img.scale(orbit_product(rs, b, eps, y_eigen))


def psym_coefficients(rs: RootSystem, bm: Sequence[int], eps: D.SignSet) -> Dict[Vec, Coefficient]:
    """``e_b``-coefficients of ``p^{(eps)}_{b_-}`` from the closed product."""
    return {b: orbit_product(rs, b, eps) for b in W.orbit(rs, bm)}


def symmetric_from_products(rs: RootSystem, bm: Sequence[int], eps: D.SignSet) -> LaurentPoly:
    out = LaurentPoly()
    for b, c in psym_coefficients(rs, bm, eps).items():
        out = out + compute_e(rs, b).poly.scale(c)
    return out


def expand_in_e(rs: RootSystem, f: LaurentPoly, normalized: bool = False, limit: int = 200) -> Dict[Vec, Coefficient]:
    """Coefficients of ``f`` in the ``e``-basis (or ``eps``-basis), found by
    peeling the lowest monomial in the order (``e_c = x_c + higher``)."""
    out: Dict[Vec, Coefficient] = {}
    rest = f.copy()
    key = lambda c: W.weight_key(rs, c)
    for _ in range(limit):
        if rest.is_zero():
            return out
        c = min(rest.terms, key=key)
        ep = compute_e(rs, c)
        coef = rest.terms[c]
        basis = ep.poly
        if normalized:
            coef = coef * ep.eval_at_rho
            basis = ep.normalized()
        out[c] = coef
        rest = rest - basis.scale(coef)
    raise ArithmeticError("expansion did not terminate")


def symmetric_p(rs: RootSystem, bm: Sequence[int], eps: Optional[D.SignSet] = None) -> LaurentPoly:
    """``P^t_eps`` applied to ``e_{b_-}``, normalized so the coefficient of
    ``e_{b_-}`` is one."""
    bm = tuple(bm)
    eps = eps or default_signs(rs, bm)
    eps.check(rs, bm)
    g = D.symmetrize(rs, eps, compute_e(rs, bm).poly)
    coefs = expand_in_e(rs, g)
    lead = coefs.get(bm)
    if lead is None or lead.is_zero():
        raise ArithmeticError("symmetrizer annihilates e_{b_-}")
    return g.scale(lead.inverse())


def symmetrization_coeffs(rs: RootSystem, bm: Sequence[int], eps: Optional[D.SignSet] = None) -> Dict[Vec, Coefficient]:
    return expand_in_e(rs, symmetric_p(rs, bm, eps))


def is_W_invariant(rs: RootSystem, f: LaurentPoly) -> bool:
    return all(D.apply_s(rs, j, f) == f for j in range(1, rs.rank + 1))


def Lf_check(rs: RootSystem, bm: Sequence[int], p: LaurentPoly) -> bool:
    """``L_{fbar}(p) = f(q^{b} t^{-rho}) p`` for the orbit sums ``f = m_{b_i}``;
    ``L_{fbar} = sum_c Y_{-c}``."""
    pt = SpectralPoint(rs, tuple(bm), identity(rs.rank), D.params(rs))
    for i in range(rs.rank):
        orb = W.orbit(rs, D._unit(rs, i))
        val = ZERO
        lhs = LaurentPoly()
        for c in orb:
            val = val + pt.value(c)
            lhs = lhs + D.apply_Y(rs, tuple(-x for x in c), p)
        if lhs != p.scale(val):
            return False
    return True


def monomial_symmetric(rs: RootSystem, c: Sequence[int]) -> LaurentPoly:
    return LaurentPoly({d: ONE for d in W.orbit(rs, c)})


def macdsym_orthogonality(rs: RootSystem, bm: Sequence[int], p: LaurentPoly, k) -> bool:
    """``<p_b, m_c> = 0`` for antidominant ``c`` above ``b_-`` at ``t = q^k``."""
    mu = mu_data(rs, k)
    ps = specialize_poly(rs, p, k)
    for c in W.antidominant_above(rs, bm):
        if tuple(c) == tuple(bm):
            continue
        if not inner_product(rs, ps, monomial_symmetric(rs, c), mu).is_zero():
            return False
    return True


# ------------------------------------------------------------- shift


def shift_check(rs: RootSystem, bm: Sequence[int], candidates: int = 2):
    """Rank one: ``p^{(-)}_{b_-} / det_t`` against the symmetric polynomial
    at ``t' = t q`` and shifted weights ``b_- + j b_1``, ``|j| <= candidates``.

    Returns ``(shifted weight, constant)`` for the first proportional
    candidate; raises :class:`ShiftCheckError` otherwise.
    """
    if rs.rank != 1:
        raise ShiftCheckError("the shift check is implemented in rank one")
    P = D.params(rs)
    bm = tuple(bm)
    eps = D.SignSet.constant(rs, -1)
    eps.check(rs, bm)
    pminus = symmetric_from_products(rs, bm, eps)
    nu = rs.length_classes[0]
    u, ui = P.u(nu), P.u(nu, -1)
    # det_t = u x_{b_1} - u^{-1} x_{-b_1}
    quotient = divide_by_binomial(pminus, (1,), u, (-1,), -ui)
    uidx = P.uidx[nu]
    shift = {uidx: (rs.m, 1 if uidx == 1 else 0, 1 if uidx == 2 else 0)}
    for j in sorted(range(-candidates, candidates + 1), key=abs):
        bp = (bm[0] + j,)
        if bp[0] > 0:
            continue
        target = symmetric_from_products(rs, bp, D.SignSet.constant(rs, 1))
        target = target.map_coefficients(lambda c: c.substitute_u(shift))
        const = proportionality(quotient, target)
        if const is not None:
            return bp, const
    raise ShiftCheckError("no candidate shift is proportional")


def divide_by_binomial(f: LaurentPoly, z1: Vec, c1: Coefficient, z2: Vec, c2: Coefficient) -> LaurentPoly:
    """Exact division of a rank-one Laurent polynomial by ``c1 x^{z1} + c2 x^{z2}``."""
    rest = f.copy()
    out = LaurentPoly()
    while not rest.is_zero():
        top = max(rest.terms)
        coef = rest.terms[top] / c1
        mono = tuple(a - b for a, b in zip(top, z1))
        out.add_term(mono, coef)
        rest.add_term(top, -coef * c1)
        low = tuple(a + b for a, b in zip(mono, z2))
        rest.add_term(low, -coef * c2)
        if rest.terms and max(rest.terms) < tuple(a + b for a, b in zip(min(f.terms), z2)):
            raise ShiftCheckError("not divisible")
        if len(out.terms) > 4 * (len(f.terms) + 4):
            raise ShiftCheckError("not divisible")
    return out


def proportionality(f: LaurentPoly, g: LaurentPoly) -> Optional[Coefficient]:
    """``c`` with ``f = c g``, or ``None``."""
    if set(f.terms) != set(g.terms) or not f.terms:
        return None
    z = next(iter(f.terms))
    c = f.terms[z] / g.terms[z]
    return c if f == g.scale(c) else None


# ------------------------------------------------------------- Pieri


@dataclass
class PieriExpansion:
    a: Vec
    b: Vec
    direction: int
    terms: List[Tuple[Vec, Coefficient]]


def pieri_expand(rs: RootSystem, a: Sequence[int], b: Sequence[int], direction: int = -1) -> PieriExpansion:
    """Expansion of ``x_a^{direction} eps_b`` in the ``eps``-basis."""
    a, b = tuple(a), tuple(b)
    ep = compute_e(rs, b)
    f = ep.normalized().shift(tuple(direction * x for x in a))
    coefs = expand_in_e(rs, f, normalized=True)
    terms = sorted(coefs.items(), key=lambda kv: W.weight_key(rs, kv[0]))
    total = LaurentPoly()
    for c, k in terms:
        total = total + compute_e(rs, c).normalized().scale(k)
    assert total == f
    return PieriExpansion(a, b, direction, terms)


def index_of_point(rs: RootSystem, x: W.AffElt) -> Optional[Vec]:
    """``d`` with ``#d = x``, or ``None`` if ``x`` is not of that form."""
    d = mat_vec(x.w, x.b)
    pi, _ = W.decompose_pi_omega(rs, d)
    return d if pi == x else None


def evaluate_x_coefficient(rs: RootSystem, g: Coefficient, pt: SpectralPoint) -> Coefficient:
    """Substitute ``x_z -> x_z(pt)`` in an ``X``-rational coefficient."""
    n = rs.rank

    def f(e):
        z = tuple(e[X0 + i] for i in range(n))
        if not any(z):
            return e
        ev, eul, eus = pt.exponents(z)
        return (e[0] + ev, e[1] + eul, e[2] + eus) + (0,) * (len(e) - X0)

    return g.map_exponents(f)


def pieri_from_operator(rs: RootSystem, a: Sequence[int], b: Sequence[int], direction: int = -1) -> Dict[Vec, Coefficient]:
    """``x_a^{direction} eps_b = sum_w g_w(#b) eps_{d(w)}`` with
    ``Y_{-direction a} = sum_w g_w(X) w`` and ``#d(w) = w^{-1} #b``."""
    a, b = tuple(a), tuple(b)
    op = D.Y_operator(rs, tuple(-direction * x for x in a))
    pib, _ = W.decompose_pi_omega(rs, b)
    pt = spectral_point(rs, b)
    out: Dict[Vec, Coefficient] = {}
    for w, g in op.terms.items():
        val = evaluate_x_coefficient(rs, g, pt)
        if val.is_zero():
            continue
        d = index_of_point(rs, W.mul(rs, W.inverse(rs, w), pib))
        if d is None:
            raise ArithmeticError(f"index outside #B produced by {w}")
        out[d] = out.get(d, ZERO) + val
    return {d: c for d, c in out.items() if not c.is_zero()}


def pieri_index_check(rs: RootSystem, a: Sequence[int], b: Sequence[int], direction: int = -1) -> bool:
    """Every index in the expansion is ``d`` with ``#d = w^{-1} #b`` for some
    ``w`` in the support of the Y-operator."""
    exp = pieri_expand(rs, a, b, direction)
    op = D.Y_operator(rs, tuple(-direction * x for x in a))
    pib, _ = W.decompose_pi_omega(rs, b)
    allowed = set()
    for w in op.terms:
        d = index_of_point(rs, W.mul(rs, W.inverse(rs, w), pib))
        if d is not None:
            allowed.add(d)
    return all(c in allowed for c, _ in exp.terms)
