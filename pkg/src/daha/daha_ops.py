"""The basic polynomial representation.

Operators act on :class:`LaurentPoly` values.  ``X_b`` multiplies by
``x_b``; an element ``w b'`` of the extended affine Weyl group sends
``x_z`` to ``x_{w z} q^{-(z, b)}``; ``T_j`` is the Demazure-Lusztig
operator with its divided difference expanded as a finite geometric sum, so
no rational function in ``x`` is ever formed.

Images of monomials under ``T_j`` and ``Y_i^{+-1}`` are memoized per root
system.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import weyl as W
from .coeffs import (
    ONE,
    ZERO,
    X0,
    Coefficient,
    LaurentPoly,
    Params,
    SpectralPoint,
)
from .rootsys import RootSystem, Vec, mat_mul, mat_vec

Op = Callable[[LaurentPoly], LaurentPoly]


class IntertwinerError(ArithmeticError):
    """A scalar denominator of an intertwiner vanishes at the spectral point."""


class SignSetError(ValueError):
    pass


def _store(rs: RootSystem) -> dict:
    return rs.__dict__.setdefault("_daha_caches", {})


def params(rs: RootSystem) -> Params:
    st = _store(rs)
    if "params" not in st:
        st["params"] = Params(rs)
    return st["params"]


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _linear(f: LaurentPoly, mono: Callable[[Vec], LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly()
    for z, c in f.terms.items():
        for k, d in mono(z).terms.items():
            out.add_term(k, c * d)
    return out


def _term(z: Vec, ev: int, c: Coefficient) -> Tuple[Vec, Coefficient]:
    return z, c * Coefficient.monomial(ev) if ev else c


# ------------------------------------------------------------------ X, W^b


def apply_X(rs: RootSystem, b: Sequence[int], f: LaurentPoly, level=0) -> LaurentPoly:
    """Multiplication by ``x_{[b, level]} = x_b q^level``."""
    out = f.shift(tuple(b))
    if level:
        out = out.scale(params(rs).q_power(level))
    return out


def group_monomial(rs: RootSystem, x: W.AffElt, z: Vec) -> Tuple[Vec, int]:
    """``x(x_z) = x_{z'} v^{e}``; returns ``(z', e)``."""
    zz = mat_vec(x.w, z)
    return zz, params(rs).q_exp_v(-rs.pairing(z, x.b))


def apply_group(rs: RootSystem, x: W.AffElt, f: LaurentPoly) -> LaurentPoly:
    out = LaurentPoly()
    for z, c in f.terms.items():
        zz, e = group_monomial(rs, x, z)
        out.add_term(zz, c * Coefficient.monomial(e) if e else c)
    return out


def apply_pi(rs: RootSystem, r: int, f: LaurentPoly) -> LaurentPoly:
    return apply_group(rs, W.pi_element(rs, r), f)


def apply_pi_inv(rs: RootSystem, r: int, f: LaurentPoly) -> LaurentPoly:
    return apply_group(rs, W.inverse(rs, W.pi_element(rs, r)), f)


def apply_s(rs: RootSystem, j: int, f: LaurentPoly) -> LaurentPoly:
    return apply_group(rs, W.simple_reflection(rs, j), f)


# ----------------------------------------------------------------- T_j


def _simple_data(rs: RootSystem, j: int):
    """``(alpha_j finite part, weight of X_{a_j}, v-exponent of X_{a_j}, nu_j)``."""
    st = _store(rs).setdefault("simple", {})
    if j not in st:
        a, lev = W.simple_affine_root(rs, j)
        P = params(rs)
        nu = rs.root_length(a)
        yw = rs.coroot(a)
        yv = P.q_exp_v(Fraction(2 * lev) / nu)
        st[j] = (a, yw, yv, nu)
    return st[j]


def _geometric(yw: Vec, yv: int, lo: int, hi: int, sign: int, base: Vec, coef: Coefficient) -> Dict[Vec, Coefficient]:
    out = {}
    for i in range(lo, hi + 1):
        z = tuple(b + i * y for b, y in zip(base, yw))
        out[z] = coef * Coefficient.monomial(i * yv) * sign if (i * yv) else coef * sign
    return out


def T_monomial(rs: RootSystem, j: int, z: Vec) -> LaurentPoly:
    """``T_j(x_z)``.  With ``y = X_{a_j}`` and ``n = (z, alpha_j)``:

    ``T_j(x_z) = u x_z y^{-n} + (u - u^{-1}) x_z (y^{-n} - 1)/(y - 1)``.
    """
    cache = _store(rs).setdefault("T", {})
    key = (j, z)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, yw, yv, nu = _simple_data(rs, j)
    P = params(rs)
    u, ui = P.u(nu), P.u(nu, -1)
    n = _dot(z, a)
    out = LaurentPoly()
    zs = tuple(x - n * y for x, y in zip(z, yw))
    out.add_term(zs, u * Coefficient.monomial(-n * yv) if n else u)
    d = u - ui
    if n > 0:
        for k, c in _geometric(yw, yv, -n, -1, -1, z, d).items():
            out.add_term(k, c)
    elif n < 0:
        for k, c in _geometric(yw, yv, 0, -n - 1, 1, z, d).items():
            out.add_term(k, c)
    cache[key] = out
    return out


def apply_T(rs: RootSystem, j: int, f: LaurentPoly) -> LaurentPoly:
    return _linear(f, lambda z: T_monomial(rs, j, z))


def apply_T_inv(rs: RootSystem, j: int, f: LaurentPoly) -> LaurentPoly:
    """``T_j^{-1} = T_j - (u - u^{-1})``."""
    nu = _simple_data(rs, j)[3]
    P = params(rs)
    return apply_T(rs, j, f) - f.scale(P.u(nu) - P.u(nu, -1))


def apply_T_word(rs: RootSystem, r: int, word: Sequence[int], f: LaurentPoly, inverse: bool = False) -> LaurentPoly:
    """``T_{pi_r s_{j_l} ... s_{j_1}} = pi_r T_{j_l} ... T_{j_1}`` for
    ``word = [j_l, ..., j_1]`` (or its inverse)."""
    if not inverse:
        for j in reversed(word):
            f = apply_T(rs, j, f)
        return apply_pi(rs, r, f) if r else f
    if r:
        f = apply_pi_inv(rs, r, f)
    for j in word:
        f = apply_T_inv(rs, j, f)
    return f


def apply_Tw(rs: RootSystem, x: W.AffElt, f: LaurentPoly) -> LaurentPoly:
    r, word = W.reduced_word(rs, x)
    return apply_T_word(rs, r, word, f)


def apply_T_finite(rs: RootSystem, word: Sequence[int], f: LaurentPoly, inverse: bool = False) -> LaurentPoly:
    """``T_w`` for a finite word ``w = s_{i_1} ... s_{i_l}`` (1-based)."""
    if inverse:
        for i in word:
            f = apply_T_inv(rs, i, f)
        return f
    for i in reversed(word):
        f = apply_T(rs, i, f)
    return f


# ----------------------------------------------------------------- Y_b


def _unit(rs: RootSystem, i: int) -> Vec:
    return tuple(int(k == i) for k in range(rs.rank))


def Y_generator_word(rs: RootSystem, i: int) -> Tuple[int, List[int]]:
    st = _store(rs).setdefault("Yword", {})
    if i not in st:
        st[i] = W.reduced_word(rs, W.translation(rs, _unit(rs, i)))
    return st[i]


def Y_monomial(rs: RootSystem, i: int, sign: int, z: Vec) -> LaurentPoly:
    """``Y_{b_i}^{sign}(x_z)`` (``i`` is 0-based)."""
    cache = _store(rs).setdefault("Y", {})
    key = (i, sign, z)
    hit = cache.get(key)
    if hit is None:
        r, word = Y_generator_word(rs, i)
        hit = apply_T_word(rs, r, word, LaurentPoly.monomial(z), inverse=sign < 0)
        cache[key] = hit
    return hit


def apply_Y(rs: RootSystem, b: Sequence[int], f: LaurentPoly) -> LaurentPoly:
    """``Y_b = prod_i Y_i^{k_i}``; negative powers use inverse T-words."""
    for i, k in enumerate(b):
        sign = 1 if k > 0 else -1
        for _ in range(abs(k)):
            f = _linear(f, lambda z, i=i, sign=sign: Y_monomial(rs, i, sign, z))
    return f


# ------------------------------------------------------ Y via G-products


def affine_coroot(rs: RootSystem, alpha: Vec, k) -> Tuple[Vec, int, Fraction]:
    """``[alpha, k]^vee`` as ``(weight of X, v-exponent of X, nu)``."""
    nu = rs.root_length(alpha)
    return rs.coroot(alpha), params(rs).q_exp_v(Fraction(2 * k) / nu), nu


def G_monomial(rs: RootSystem, alpha: Vec, k, z: Vec, star: bool = False) -> LaurentPoly:
    """``G_{[alpha,k]^vee}(x_z)``; ``star`` replaces ``t`` by ``t^{-1}``.

    ``G = u + (u - u^{-1}) (X^{-1} - 1)^{-1} (1 - s)`` with ``s(x_z) = x_z X^{-n}``
    for ``n = (z, alpha)``; the quotient ``(1 - y^{-n})/(y^{-1} - 1)`` is
    ``-(1 + ... + y^{-(n-1)})`` for ``n > 0`` and ``y + ... + y^{-n}`` for ``n < 0``.
    """
    yw, yv, nu = affine_coroot(rs, alpha, k)
    P = params(rs)
    e = -1 if star else 1
    u, ui = P.u(nu, e), P.u(nu, -e)
    n = _dot(z, alpha)
    out = LaurentPoly({z: u})
    d = u - ui
    if n > 0:
        terms = _geometric(yw, yv, -(n - 1), 0, -1, z, d)
    elif n < 0:
        terms = _geometric(yw, yv, 1, -n, 1, z, d)
    else:
        terms = {}
    for key, c in terms.items():
        out.add_term(key, c)
    return out


def apply_G(rs: RootSystem, alpha: Vec, k, f: LaurentPoly, star: bool = False) -> LaurentPoly:
    return _linear(f, lambda z: G_monomial(rs, alpha, k, z, star))


def apply_G_inv(rs: RootSystem, alpha: Vec, k, f: LaurentPoly) -> LaurentPoly:
    """``G^{-1} = G - (u - u^{-1})`` (the quadratic relation of ``G``)."""
    nu = rs.root_length(alpha)
    P = params(rs)
    return apply_G(rs, alpha, k, f) - f.scale(P.u(nu) - P.u(nu, -1))


def G_sequence(rs: RootSystem, b: Sequence[int]) -> List[Tuple[Vec, int]]:
    """The affine roots ``alpha~^1, ..., alpha~^l`` of the reduced word of ``b``."""
    return W.lambda_sequence(rs, W.translation(rs, b))


def apply_Y_via_G(rs: RootSystem, b: Sequence[int], f: LaurentPoly, variant: str = "t_star") -> LaurentPoly:
    """``Y_b = b G^._{a^l} ... G^._{a^1}``.

    For a negative finite part the factor is ``G_{-a}`` with inverted ``t``
    (``variant="t_star"``) or the inverse of ``G_{-a}`` (``variant="inverse"``).
    """
    for alpha, k in G_sequence(rs, b):
        if rs.is_positive(alpha):
            f = apply_G(rs, alpha, k, f)
        else:
            neg = tuple(-x for x in alpha)
            if variant == "t_star":
                f = apply_G(rs, neg, -k, f, star=True)
            elif variant == "inverse":
                f = apply_G_inv(rs, neg, -k, f)
            else:
                raise ValueError(f"unknown variant {variant}")
    return apply_group(rs, W.translation(rs, b), f)


# ------------------------------------------------ operators with X-coefficients


class XOperator:
    """A finite sum ``sum g_w(X) w`` with ``w`` in ``W^b`` and ``g_w``
    rational in ``x_1, ..., x_n``."""

    def __init__(self, rs: RootSystem, terms: Optional[Dict[W.AffElt, Coefficient]] = None):
        self.rs = rs
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @staticmethod
    def element(rs: RootSystem, x: W.AffElt, g: Coefficient = ONE) -> "XOperator":
        return XOperator(rs, {x: g})

    def __add__(self, other: "XOperator") -> "XOperator":
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return XOperator(self.rs, t)

    def scale(self, g: Coefficient) -> "XOperator":
        return XOperator(self.rs, {k: g * v for k, v in self.terms.items()})

    def __mul__(self, other: "XOperator") -> "XOperator":
        """Composition ``(g1 w1)(g2 w2) = g1 w1(g2) w1 w2``."""
        rs = self.rs
        t: Dict[W.AffElt, Coefficient] = {}
        for w1, g1 in self.terms.items():
            for w2, g2 in other.terms.items():
                k = W.mul(rs, w1, w2)
                t[k] = t.get(k, ZERO) + g1 * act_on_x_coefficient(rs, w1, g2)
        return XOperator(rs, t)

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        """Apply to a polynomial with ``x``-free coefficients."""
        rs = self.rs
        total = ZERO
        for w, g in self.terms.items():
            total = total + g * poly_to_x_coefficient(rs, apply_group(rs, w, f))
        return x_coefficient_to_poly(rs, total)


def x_monomial(rs: RootSystem, z: Sequence[int], ev: int = 0) -> Coefficient:
    return Coefficient.monomial(ev, xs=tuple(z))


def poly_to_x_coefficient(rs: RootSystem, f: LaurentPoly) -> Coefficient:
    out = ZERO
    for z, c in f.terms.items():
        out = out + c * x_monomial(rs, z)
    return out


def x_coefficient_to_poly(rs: RootSystem, g: Coefficient) -> LaurentPoly:
    """Inverse of :func:`poly_to_x_coefficient`; the denominator must be
    ``x``-free up to a monomial."""
    from .coeffs import _pd

    n = rs.rank
    den = _pd(g.den)
    if len(den) != 1 and any(any(e[X0:]) for e in den):
        raise ArithmeticError("not a Laurent polynomial in x")
    if len(den) == 1:
        (e, c), = den.items()
        dcoef = Coefficient.monomial(e[0], e[1], e[2]) * c
        dshift = tuple(e[X0 + i] for i in range(n))
    else:
        dcoef = Coefficient(g.den)
        dshift = (0,) * n
    out: Dict[Vec, Dict[tuple, int]] = {}
    for e, c in _pd(g.num).items():
        z = tuple(e[X0 + i] - dshift[i] for i in range(n))
        out.setdefault(z, {})
        k = e[:X0] + (0,) * (len(e) - X0)
        out[z][k] = out[z].get(k, 0) + c
    res = LaurentPoly()
    for z, d in out.items():
        res.add_term(z, Coefficient.from_laurent_dict(d) / dcoef)
    return res


def act_on_x_coefficient(rs: RootSystem, x: W.AffElt, g: Coefficient) -> Coefficient:
    """``x_z -> x_{w z} q^{-(z, b)}`` applied inside a coefficient."""
    n = rs.rank
    P = params(rs)

    def f(e):
        z = tuple(e[X0 + i] for i in range(n))
        if not any(z):
            return e
        zz = mat_vec(x.w, z)
        ev = e[0] + P.q_exp_v(-rs.pairing(z, x.b))
        return (ev, e[1], e[2]) + tuple(zz) + tuple(e[X0 + n:])

    return g.map_exponents(f)


def value_at_diamond(rs: RootSystem, g: Coefficient, weights: Sequence[int]) -> Optional[Coefficient]:
    """Limit of ``g`` as ``X_{a_i} = s^{weights[i]}`` and ``s -> 0``, or
    ``None`` when ``g`` has a pole there."""
    from math import lcm

    from .coeffs import _pd

    n = rs.rank
    hs = [sum(c * w for c, w in zip(rs.coords_in_A(_unit(rs, i)), weights)) for i in range(n)]
    L = lcm(*[Fraction(h).denominator for h in hs])
    hs = [int(h * L) for h in hs]

    def collapse(p):
        out: Dict[int, Dict[tuple, int]] = {}
        for e, c in _pd(p).items():
            d = sum(hs[i] * e[X0 + i] for i in range(n))
            k = e[:X0] + (0,) * (len(e) - X0)
            bucket = out.setdefault(d, {})
            bucket[k] = bucket.get(k, 0) + c
        return {d: b for d, b in out.items() if any(b.values())}

    num, den = collapse(g.num), collapse(g.den)
    if not num:
        return ZERO
    dn, dd = min(num), min(den)
    if dn > dd:
        return ZERO
    if dn < dd:
        return None
    return Coefficient.from_laurent_dict(num[dn]) / Coefficient.from_laurent_dict(den[dd])


def affine_reflection(rs: RootSystem, alpha: Vec, k) -> W.AffElt:
    """``s_{[alpha, k]} = s_alpha (k alpha^vee)'``."""
    av = rs.coroot(alpha)
    return W.AffElt(rs.reflection_matrix(alpha), tuple(k * c for c in av))


def G_operator(rs: RootSystem, alpha: Vec, k, star: bool = False) -> XOperator:
    yw, yv, nu = affine_coroot(rs, alpha, k)
    P = params(rs)
    e = -1 if star else 1
    u, ui = P.u(nu, e), P.u(nu, -e)
    Xinv = x_monomial(rs, tuple(-c for c in yw), -yv)
    c = (u - ui) / (Xinv - 1)
    ident = W.ident(rs)
    s = affine_reflection(rs, alpha, k)
    return XOperator(rs, {ident: u + c, s: -c})


def Y_operator(rs: RootSystem, b: Sequence[int]) -> XOperator:
    """``Y_b`` expanded as ``sum g_w(X) w`` from the G-product."""
    op = XOperator.element(rs, W.translation(rs, b))
    for alpha, k in reversed(G_sequence(rs, b)):
        if rs.is_positive(alpha):
            op = op * G_operator(rs, alpha, k)
        else:
            op = op * G_operator(rs, tuple(-x for x in alpha), -k, star=True)
    return op


def T_operator(rs: RootSystem, j: int) -> XOperator:
    """``T_j = u s_j + (u - u^{-1})(X_{a_j} - 1)^{-1}(s_j - 1)``."""
    a, yw, yv, nu = _simple_data(rs, j)
    P = params(rs)
    u, ui = P.u(nu), P.u(nu, -1)
    c = (u - ui) / (x_monomial(rs, yw, yv) - 1)
    return XOperator(rs, {W.simple_reflection(rs, j): u + c, W.ident(rs): -c})


def diamond_check(rs: RootSystem, b: Sequence[int]) -> bool:
    """At ``X_{a_i} = 0`` every coefficient of ``Y_b`` vanishes except that of
    the translation ``b``, which equals ``prod_nu t_nu^{(b, rho_nu)}``.

    The point is approached along two different one-parameter directions.
    """
    op = Y_operator(rs, b)
    P = params(rs)
    tb = W.translation(rs, b)
    expected = ONE
    for nu, rho in rs.rho_by_length.items():
        expected = expected * P.u(nu, int(2 * rs.pairing(b, rho)))
    directions = [[1] * rs.rank, list(range(1, rs.rank + 1))]
    for w, g in op.terms.items():
        for d in directions:
            val = value_at_diamond(rs, g, d)
            if val is None:
                return False
            if w == tb:
                if val != expected:
                    return False
            elif not val.is_zero():
                return False
    return True


def tonx_check(rs: RootSystem, j: int, b: Sequence[int]) -> bool:
    """``T_j(x_b)`` modulo ``Sigma_+(b)`` against the three-case formula."""
    b = tuple(b)
    plus = set(W.sigma_plus(rs, b))
    got = LaurentPoly({z: c for z, c in T_monomial(rs, j, b).terms.items() if z not in plus})
    a, _, _, nu = _simple_data(rs, j)
    P = params(rs)
    u, ui = P.u(nu), P.u(nu, -1)
    n = _dot(b, a)
    sx = apply_s(rs, j, LaurentPoly.monomial(b))
    if n < 0:
        exp = sx.scale(u) + LaurentPoly.monomial(b, u - ui)
    elif n > 0:
        exp = sx.scale(ui)
    else:
        exp = LaurentPoly.monomial(b, u)
    return got == exp


# ---------------------------------------------------------- intertwiners


class SignSet(dict):
    """``nu -> +1 / -1``."""

    @staticmethod
    def constant(rs: RootSystem, e: int) -> "SignSet":
        return SignSet({nu: e for nu in rs.length_classes})

    def check(self, rs: RootSystem, bm: Sequence[int]):
        """Signs must be ``+1`` on the length of any simple reflection fixing ``bm``."""
        for i in range(rs.rank):
            if bm[i] == 0 and self[rs.simple_lengths[i]] != 1:
                raise SignSetError(f"sign for length {rs.simple_lengths[i]} must be +1 (s_{i + 1} fixes {tuple(bm)})")


def point_reflect(rs: RootSystem, pt: SpectralPoint, j: int) -> SpectralPoint:
    """The point ``p'`` with ``x_a(p') = x_{s_j a}(p)``."""
    s = rs.simple_reflections[j - 1]
    return SpectralPoint(rs, mat_vec(s, pt.base), mat_mul(s, pt.w), pt.params)


def apply_intertwiner(rs: RootSystem, j: int, eps: SignSet, f: LaurentPoly, pt: SpectralPoint):
    """``Phi_j^{(eps)}`` on a Y-eigenvector ``f`` with spectral point ``pt``
    (``Y_a f = x_{-a}(pt) f``).  Returns ``(image, new point)``."""
    P = params(rs)
    nu = rs.simple_lengths[j - 1]
    u, ui = P.u(nu), P.u(nu, -1)
    e = eps[nu]
    xa = pt.value(rs.simple_coroots[j - 1])  # Y_{a_j}^{-1} eigenvalue
    if (xa - 1).is_zero():
        raise IntertwinerError(f"spectral point on the wall of alpha_{j}")
    c = (u - ui) / (xa - 1)
    phi = P.u(nu, e) * e + c
    if phi.is_zero():
        raise IntertwinerError(f"normalizing factor of Phi_{j} vanishes")
    g = (apply_T(rs, j, f) + f.scale(c)).scale(phi.inverse())
    return g, point_reflect(rs, pt, j)


def apply_intertwiner_word(rs: RootSystem, word: Sequence[int], eps: SignSet, f: LaurentPoly, pt: SpectralPoint):
    """``Phi_w`` for ``w = s_{i_1} ... s_{i_l}`` (rightmost applied first)."""
    for j in reversed(word):
        f, pt = apply_intertwiner(rs, j, eps, f, pt)
    return f, pt


# ------------------------------------------------------------ symmetrizer


def symmetrizer_terms(rs: RootSystem, eps: SignSet) -> List[Tuple[List[int], Coefficient]]:
    """``(word of w, prod_nu (eps_nu u_nu)^{eps_nu l_nu(w)})`` over ``W``."""
    P = params(rs)
    out = []
    for w in rs.weyl_group:
        word = W.finite_reduced_word(rs, w)
        coef = ONE
        for nu, l in W.finite_length_nu(rs, w).items():
            e = eps[nu]
            coef = coef * P.u(nu, e * l) * (e ** l)
        out.append((word, coef))
    return out


def symmetrize(rs: RootSystem, eps: SignSet, f: LaurentPoly) -> LaurentPoly:
    out = LaurentPoly()
    for word, coef in symmetrizer_terms(rs, eps):
        out = out + apply_T_finite(rs, word, f).scale(coef)
    return out


def is_eps_t_symmetric(rs: RootSystem, eps: SignSet, f: LaurentPoly) -> bool:
    """``T_j f = eps_j u_j^{eps_j} f`` for ``1 <= j <= n``."""
    P = params(rs)
    for j in range(1, rs.rank + 1):
        nu = rs.simple_lengths[j - 1]
        e = eps[nu]
        if apply_T(rs, j, f) != f.scale(P.u(nu, e) * e):
            return False
    return True


def phi_of_intertwiner(rs: RootSystem, j: int, eps_j: int, f: LaurentPoly) -> LaurentPoly:
    """The image of ``Phi_j`` under the Fourier anti-involution, acting in
    the basic representation: ``s_j`` for ``eps_j = +1`` and
    ``-(u X_{a_j} - u^{-1})/(u^{-1} X_{a_j} - u) s_j`` otherwise."""
    g = apply_s(rs, j, f)
    if eps_j == 1:
        return g
    a, yw, yv, nu = _simple_data(rs, j)
    P = params(rs)
    u, ui = P.u(nu), P.u(nu, -1)
    X = x_monomial(rs, yw, yv)
    ratio = -(u * X - ui) / (ui * X - u)
    return x_coefficient_to_poly(rs, ratio * poly_to_x_coefficient(rs, g))


# -------------------------------------------------------- relation suite


def random_poly(rs: RootSystem, rng: random.Random, terms: int = 3, radius: int = 2) -> LaurentPoly:
    """Random Laurent polynomial with small integer-times-monomial coefficients."""
    P = params(rs)
    f = LaurentPoly()
    for _ in range(terms):
        z = tuple(rng.randint(-radius, radius) for _ in range(rs.rank))
        c = Coefficient.from_int(rng.choice([-3, -2, -1, 1, 2, 3]))
        if rng.random() < 0.5:
            c = c * Coefficient.monomial(rng.randint(-2, 2))
        if rng.random() < 0.3:
            nu = rng.choice(rs.length_classes)
            c = c * P.u(nu, rng.choice([-2, 2]))
        f.add_term(z, c)
    if f.is_zero():
        f = LaurentPoly.monomial((0,) * rs.rank)
    return f


def affine_cartan_entry(rs: RootSystem, i: int, j: int) -> int:
    """``2 (alpha_i, alpha_j) / (alpha_j, alpha_j)`` on finite parts."""
    ai, _ = W.simple_affine_root(rs, i)
    aj, _ = W.simple_affine_root(rs, j)
    return int(2 * rs.pairing(ai, aj, "aa") / rs.pairing(aj, aj, "aa"))


def braid_order(rs: RootSystem, i: int, j: int) -> Optional[int]:
    p = affine_cartan_entry(rs, i, j) * affine_cartan_entry(rs, j, i)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p)


def _alternating(i: int, j: int, m: int) -> List[int]:
    return [i if k % 2 == 0 else j for k in range(m)]


def reduced_word_variant(rs: RootSystem, x: W.AffElt) -> Tuple[int, List[int]]:
    """Reduced word built from right descents tried in decreasing index order."""
    found = []
    cur = x
    while True:
        j = None
        for cand in range(rs.rank, -1, -1):
            root, lev = W.simple_affine_root(rs, cand)
            img, l2 = W.act_affine_root(rs, cur, root, lev)
            if W.is_negative_affine(img, l2):
                j = cand
                break
        if j is None:
            break
        found.append(j)
        cur = W.mul(rs, cur, W.simple_reflection(rs, j))
    return W.pi_index(rs, cur), list(reversed(found))


def relation_suite(rs: RootSystem, seed: int = 0, samples: int = 50) -> Dict[str, bool]:
    """Check the defining relations on ``samples`` random polynomials each.

    Keys name the relation; values are pass flags.
    """
    rng = random.Random(seed)
    P = params(rs)
    n = rs.rank
    polys = [random_poly(rs, rng) for _ in range(samples)]
    report: Dict[str, bool] = {}

    def check(name, lhs: Op, rhs: Op):
        ok = all(lhs(f) == rhs(f) for f in polys)
        report[name] = report.get(name, True) and ok

    for j in range(n + 1):
        nu = _simple_data(rs, j)[3]
        u, ui = P.u(nu), P.u(nu, -1)
        check(
            f"(o) quadratic T{j}",
            lambda f, j=j, u=u, ui=ui: (lambda g: apply_T(rs, j, g) + g.scale(ui))(apply_T(rs, j, f) - f.scale(u)),
            lambda f: LaurentPoly(),
        )
        check(f"(o) inverse T{j}", lambda f, j=j: apply_T(rs, j, apply_T_inv(rs, j, f)), lambda f: f)

    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = braid_order(rs, i, j)
            if m is None:
                continue
            w1, w2 = _alternating(i, j, m), _alternating(j, i, m)

            def lhs(f, w=w1):
                for k in reversed(w):
                    f = apply_T(rs, k, f)
                return f

            def rhs(f, w=w2):
                for k in reversed(w):
                    f = apply_T(rs, k, f)
                return f

            check(f"(i) braid T{i},T{j}", lhs, rhs)

    for r in rs.O_star:
        perm = W.pi_permutation(rs, r)
        for i in range(n + 1):
            check(
                f"(ii) pi{r} T{i} pi{r}^-1",
                lambda f, r=r, i=i: apply_pi(rs, r, apply_T(rs, i, apply_pi_inv(rs, r, f))),
                lambda f, i=i, r=r: apply_T(rs, perm[i], f),
            )
        for k in range(n):
            b = _unit(rs, k)
            pb = W.act_affine_weight(rs, W.pi_element(rs, r), b, 0)
            check(
                f"(vi) pi{r} X pi{r}^-1",
                lambda f, r=r, b=b: apply_pi(rs, r, apply_X(rs, b, apply_pi_inv(rs, r, f))),
                lambda f, pb=pb: apply_X(rs, pb[0], f, pb[1]),
            )

    for i in range(1, n + 1):
        b = _unit(rs, i - 1)
        ai = rs.simple_coroots[i - 1]
        check(
            f"(iii) T{i} X T{i}",
            lambda f, i=i, b=b: apply_T(rs, i, apply_X(rs, b, apply_T(rs, i, f))),
            lambda f, b=b, ai=ai: apply_X(rs, tuple(x - y for x, y in zip(b, ai)), f),
        )

    theta = rs.theta
    tv = rs.coroot(theta)
    b0 = _weight_with_pairing(rs, theta, -1)
    check(
        "(iv) T0 X T0",
        lambda f: apply_T(rs, 0, apply_X(rs, b0, apply_T(rs, 0, f))),
        lambda f: apply_X(rs, tuple(x + y for x, y in zip(b0, tv)), f, -1),
    )

    for i in range(n + 1):
        a, _, _, _ = _simple_data(rs, i)
        for b in _weights_orthogonal(rs, a):
            check(
                f"(v) T{i} X commute",
                lambda f, i=i, b=b: apply_T(rs, i, apply_X(rs, b, f)),
                lambda f, i=i, b=b: apply_X(rs, b, apply_T(rs, i, f)),
            )

    # independence of the reduced decomposition
    for x in _sample_elements(rs, rng):
        r1, w1 = W.reduced_word(rs, x)
        r2, w2 = reduced_word_variant(rs, x)
        check(
            "T_w independent of reduced word",
            lambda f, r1=r1, w1=w1: apply_T_word(rs, r1, w1, f),
            lambda f, r2=r2, w2=w2: apply_T_word(rs, r2, w2, f),
        )

    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = _unit(rs, i), _unit(rs, j)
            check(
                f"Y{i + 1} Y{j + 1} commute",
                lambda f, bi=bi, bj=bj: apply_Y(rs, bi, apply_Y(rs, bj, f)),
                lambda f, bi=bi, bj=bj: apply_Y(rs, bj, apply_Y(rs, bi, f)),
            )
    for i in range(n):
        bi = _unit(rs, i)
        mi = tuple(-x for x in bi)
        check(f"Y{i + 1} inverse", lambda f, bi=bi, mi=mi: apply_Y(rs, mi, apply_Y(rs, bi, f)), lambda f: f)

    # Y_theta = T_0 T_{s_theta}, which recasts the Fourier images of T_0
    sword = W.finite_reduced_word(rs, rs.reflection_matrix(theta))
    check(
        "Y_theta = T0 T_{s_theta}",
        lambda f: apply_Y(rs, tv, f),
        lambda f: apply_T(rs, 0, apply_T_finite(rs, sword, f)),
    )
    mtv = tuple(-x for x in tv)
    check(
        "phi(T0) = Y_theta^-1 T0 X_theta^-1 = T_{s_theta}^-1 X_theta^-1",
        lambda f: apply_Y(rs, mtv, apply_T(rs, 0, apply_X(rs, mtv, f))),
        lambda f: apply_T_finite(rs, sword, apply_X(rs, mtv, f), inverse=True),
    )
    check(
        "eps(T0) = X_theta T0^-1 Y_theta = X_theta T_{s_theta}",
        lambda f: apply_X(rs, tv, apply_T_inv(rs, 0, apply_Y(rs, tv, f))),
        lambda f: apply_X(rs, tv, apply_T_finite(rs, sword, f)),
    )
    return report


def _weight_with_pairing(rs: RootSystem, alpha: Vec, value: int) -> Vec:
    import itertools

    for rad in range(1, 4):
        for b in sorted(itertools.product(range(-rad, rad + 1), repeat=rs.rank), key=lambda b: (sum(map(abs, b)), b)):
            if _dot(b, alpha) == value:
                return tuple(b)
    raise ValueError("no weight with the requested pairing")


def _weights_orthogonal(rs: RootSystem, alpha: Vec) -> List[Vec]:
    import itertools

    out = [
        tuple(b)
        for b in itertools.product(range(-1, 2), repeat=rs.rank)
        if any(b) and _dot(b, alpha) == 0
    ]
    return out[:2]


def _sample_elements(rs: RootSystem, rng: random.Random, count: int = 4) -> List[W.AffElt]:
    out = []
    for _ in range(count):
        x = W.pi_element(rs, rng.choice([0] + rs.O_star))
        for _ in range(rng.randint(2, 5)):
            x = W.mul(rs, x, W.simple_reflection(rs, rng.randint(0, rs.rank)))
        out.append(x)
    return out
