"""Finite-dimensional modules at roots of unity.

With ``q`` a primitive ``N``-th root of unity the pairing ``q^{(a, b)}``
factors through ``B_N = B / K_N`` and the basic representation descends to
functions on ``W^b_N = B_N x W``, labelled by a fundamental domain ``B(N)``.
At ``t = q^k`` the module ``V~`` lives on the points where ``mu`` does not
vanish; the projective ``SL_2(Z)`` action is realized there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from . import daha_ops as D
from . import macdonald as Mac
from . import weyl as W
from .coeffs import (
    UL,
    US,
    Coefficient,
    CycloElement,
    CyclotomicField,
    LaurentPoly,
    SpectralPoint,
    _CCTX,
    _pd,
    matmul,
    matrix_inverse,
    matrix_rank,
    row_reduce,
)
from .rootsys import RootSystem, Vec, mat_vec


class AdmissibilityError(ValueError):
    """``N`` (or ``k``) violates a condition needed by the construction."""


class LatticePointError(ArithmeticError):
    """A discretized operator is singular at a lattice point."""


Matrix = List[List[CycloElement]]


# ------------------------------------------------------------- context


@dataclass
class CyclotomicContext:
    rs: RootSystem
    N: int
    M: int  # order of the root of unity v = q^{1/2m}
    v_power: int  # v = zeta_M^{v_power}
    field: CyclotomicField
    k: Optional[Dict[Fraction, int]] = None  # t_nu = q_nu^{k_nu} when set
    B_N: List[tuple] = field(default_factory=list)  # residue keys
    B_fund: List[Vec] = field(default_factory=list)
    K_N: List[Vec] = field(default_factory=list)

    @property
    def u_images(self) -> Dict[int, int]:
        """``u_idx -> v-exponent`` at ``t = q^k`` (empty for generic ``t``)."""
        if self.k is None:
            return {}
        return {i: e[0] for i, e in D.params(self.rs).t_eq_qk(self.k).items()}

    def specialize(self, c: Coefficient) -> CycloElement:
        images = {i: e * self.v_power for i, e in self.u_images.items()}
        return self.field.specialize(c, self.v_power, images)

    def residue(self, a: Sequence) -> tuple:
        """Class of ``a`` in ``B_N``: the exponents ``q^{(a, b_i)}`` in ``Z/M``."""
        rs = self.rs
        out = []
        for i in range(rs.rank):
            e = Fraction(2 * rs.m) * rs.pairing(a, D._unit(rs, i))
            out.append(int(e * self.v_power) % self.M)
        return tuple(out)

    def point_key(self, pt: SpectralPoint) -> tuple:
        """Identifies the character ``x_{b_i} -> x_{b_i}(pt)`` after specialization."""
        out = []
        img = self.u_images
        for i in range(self.rs.rank):
            ev, eul, eus = pt.exponents(D._unit(self.rs, i))
            z = ev
            if UL in img:
                z, eul = z + eul * img[UL], 0
            if US in img:
                z, eus = z + eus * img[US], 0
            out.append(((z * self.v_power) % self.M, eul, eus))
        return tuple(out)

    def q_exponent_zero(self, e: Fraction) -> bool:
        """``q^e = 1``."""
        ev = Fraction(2 * self.rs.m) * e * self.v_power
        return ev.denominator == 1 and int(ev) % self.M == 0


def cyclotomic_order(rs: RootSystem, N: int) -> Tuple[int, int]:
    """``(M, v_power)``: ``v = q^{1/2m}`` taken among the ``N``-th roots of
    unity when ``2m`` is invertible mod ``N``, otherwise of order ``2mN``."""
    m2 = 2 * rs.m
    if gcd(N, m2) == 1:
        return N, pow(m2, -1, N)
    return m2 * N, 1


def _radical_basis(ctx: CyclotomicContext) -> List[Vec]:
    """Hermite basis of ``K_N``: the ``a`` with ``q^{(a, b)} = 1`` for all ``b``."""
    n, M = ctx.rs.rank, ctx.M
    gens = [[M if i == j else 0 for j in range(n)] for i in range(n)]
    for a in itertools.product(range(M), repeat=n):
        if any(a) and not any(ctx.residue(a)):
            gens.append(list(a))
    H = flint.fmpz_mat(gens).hnf()
    rows = [tuple(int(H[i, j]) for j in range(n)) for i in range(H.nrows())]
    return [r for r in rows if any(r)]


def _shells(n: int, limit: int):
    yield (0,) * n
    for r in range(1, limit + 1):
        shell = [b for b in itertools.product(range(-r, r + 1), repeat=n) if max(map(abs, b)) == r]
        yield from sorted(shell, key=lambda b: (sum(map(abs, b)), b))


def build_context(rs: RootSystem, N: int, k=None) -> CyclotomicContext:
    """Cyclotomic data for ``q`` a primitive ``N``-th root of unity; ``k`` sets
    ``t = q^k`` (``None`` keeps ``t`` symbolic)."""
    if N < 2:
        raise AdmissibilityError("N must be at least 2")
    M, vp = cyclotomic_order(rs, N)
    P = D.params(rs)
    ctx = CyclotomicContext(rs, N, M, vp, CyclotomicField(M), P.normalize_k(k) if k is not None else None)
    ctx.B_N = sorted({ctx.residue(a) for a in itertools.product(range(M), repeat=rs.rank)})
    ctx.K_N = _radical_basis(ctx)
    if ctx.k is None:
        ctx.B_fund = fundamental_domain(ctx)
    return ctx


def fundamental_domain(ctx: CyclotomicContext) -> List[Vec]:
    """``B(N)``: one ``b`` per class of ``#b`` in ``W^b_N``, found by coset
    enumeration in shells of growing radius (``beta^1 = 0``)."""
    rs = ctx.rs
    target = len(ctx.B_N) * len(rs.weyl_group)
    seen = {}
    for b in _shells(rs.rank, 4 * ctx.M + 4):
        key = ctx.point_key(Mac.spectral_point(rs, b))
        if key not in seen:
            seen[key] = b
            if len(seen) == target:
                return list(seen.values())
    raise AdmissibilityError("coset enumeration did not close")


def krho_holds(ctx: CyclotomicContext) -> bool:
    """``q_a^{(rho_k, a) + i} != 1`` for ``a`` in ``R^vee_+`` and ``-k_a < i <= k_a``."""
    rs = ctx.rs
    for alpha in rs.positive_roots:
        nu = rs.root_length(alpha)
        ka = ctx.k[nu]
        av = rs.coroot(alpha)
        rk = sum((ctx.k[n] * rs.pairing(rho, av) for n, rho in rs.rho_by_length.items()), Fraction(0))
        for i in range(-ka + 1, ka + 1):
            if ctx.q_exponent_zero(Fraction(2) / nu * (rk + i)):
                return False
    return True


def aarho_holds(ctx: CyclotomicContext) -> bool:
    """``q^{(a, a)/2} = 1`` on generators of ``K_N``."""
    return all(ctx.q_exponent_zero(ctx.rs.pairing(a, a) / 2) for a in ctx.K_N)


def _fmt_k(k: Dict[Fraction, int]) -> str:
    return ", ".join(f"{nu}: {v}" for nu, v in sorted(k.items()))


# -------------------------------------------------------- discretization


def discretize(f: LaurentPoly, ctx: CyclotomicContext, points: Sequence[SpectralPoint]) -> List[CycloElement]:
    return [ctx.specialize(p.evaluate(f)) for p in points]


def pull_point(rs: RootSystem, x: W.AffElt, pt: SpectralPoint) -> SpectralPoint:
    """``p'`` with ``(x f)(p) = f(p')``: base ``w^{-1}(base) - b``, ``w^{-1} w_p``."""
    wi = W.mat_inv(rs, x.w)
    base = tuple(a - b for a, b in zip(mat_vec(wi, pt.base), x.b))
    return SpectralPoint(rs, base, W.mat_mul(wi, pt.w), pt.params)


# ---------------------------------------------------------------- matrices


def mat_identity(F: CyclotomicField, d: int) -> Matrix:
    return [[F.one() if i == j else F.zero() for j in range(d)] for i in range(d)]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return all(x == y for r, s in zip(A, B) for x, y in zip(r, s))


def mat_prod(F: CyclotomicField, *ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = _sparse_mul(F, out, m)
    return out


def _sparse_mul(F: CyclotomicField, A: Matrix, B: Matrix) -> Matrix:
    d, e = len(A), len(B[0])
    out = [[F.zero() for _ in range(e)] for _ in range(d)]
    for i in range(d):
        for k, a in enumerate(A[i]):
            if a.is_zero():
                continue
            for j, b in enumerate(B[k]):
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def mat_vec_mul(A: Matrix, v: List[CycloElement]) -> List[CycloElement]:
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            if a.is_zero() or x.is_zero():
                continue
            acc = a * x if acc is None else acc + a * x
        out.append(acc if acc is not None else v[0].F.zero())
    return out


def mat_transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def diagonal(F: CyclotomicField, entries: Sequence[CycloElement]) -> Matrix:
    d = len(entries)
    return [[entries[i] if i == j else F.zero() for j in range(d)] for i in range(d)]


def nullspace(A: Matrix, F: CyclotomicField) -> List[List[CycloElement]]:
    R, piv = row_reduce([list(r) for r in A], F.zero(), F.one())
    n = len(A[0])
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [F.zero() for _ in range(n)]
        v[f] = F.one()
        for r, p in enumerate(piv):
            v[p] = -R[r][f]
        out.append(v)
    return out


def at_integer_u(x: CycloElement, values: Dict[int, int]) -> CycloElement:
    """Specialize symbolic ``u`` to integers (a generic-point witness)."""

    def conv(p):
        d: Dict[tuple, int] = {}
        for e, c in _pd(p).items():
            z, ul, us = e
            c = int(c) * values.get(UL, 1) ** ul * values.get(US, 1) ** us
            d[(z, 0, 0)] = d.get((z, 0, 0), 0) + c
        return _CCTX.from_dict({k: v for k, v in d.items() if v})

    return CycloElement(x.F, conv(x.num), conv(x.den))


# ---------------------------------------------------------------- modules


@dataclass
class FiniteModule:
    ctx: CyclotomicContext
    labels: List[Vec]
    points: List[SpectralPoint]
    T: Dict[int, Matrix]
    pi: Dict[int, Matrix]
    X: Dict[int, Matrix]
    Y: Dict[int, Matrix] = field(default_factory=dict)
    eps_vectors: List[List[CycloElement]] = field(default_factory=list)
    Pi: Optional[Matrix] = None

    @property
    def dim(self) -> int:
        return len(self.points)

    @property
    def F(self) -> CyclotomicField:
        return self.ctx.field

    def index(self, pt: SpectralPoint) -> Optional[int]:
        return self._index.get(self.ctx.point_key(pt))

    def X_matrix(self, b: Sequence[int], level_v: int = 0) -> Matrix:
        """Multiplication by ``x_b q^{level}`` (level as a v-exponent)."""
        c = Coefficient.monomial(level_v)
        return diagonal(self.F, [self.ctx.specialize(p.value(b) * c) for p in self.points])

    def T_inv(self, j: int) -> Matrix:
        nu = D._simple_data(self.ctx.rs, j)[3]
        P = D.params(self.ctx.rs)
        d = self.ctx.specialize(P.u(nu) - P.u(nu, -1))
        return mat_sub(self.T[j], mat_scale(mat_identity(self.F, self.dim), d))

    def pi_inv(self, r: int) -> Matrix:
        return mat_transpose(self.pi[r])


def _operators(ctx: CyclotomicContext, labels: List[Vec], points: List[SpectralPoint], strict: bool) -> FiniteModule:
    """Generator matrices acting on functions (column vectors of values).

    ``(T_j f)(p) = c_1 f(s_j p) + c_0 f(p)`` with ``y = X_{a_j}(p)``,
    ``c_1 = (u y - u^{-1})/(y - 1)``, ``c_0 = -(u - u^{-1})/(y - 1)``.  With
    ``strict`` every image point must be in the module; otherwise ``c_1``
    must vanish where it leaves.
    """
    rs = ctx.rs
    F = ctx.field
    P = D.params(rs)
    d = len(points)
    mod = FiniteModule(ctx, labels, points, {}, {}, {})
    mod._index = {ctx.point_key(p): i for i, p in enumerate(points)}
    if len(mod._index) != d:
        raise LatticePointError("labels do not give distinct points")

    def image(x, i):
        j = mod.index(pull_point(rs, x, points[i]))
        return j

    for j in range(rs.rank + 1):
        a, yw, yv, nu = D._simple_data(rs, j)
        u, ui = P.u(nu), P.u(nu, -1)
        s = W.simple_reflection(rs, j)
        T = [[F.zero() for _ in range(d)] for _ in range(d)]
        for i, p in enumerate(points):
            y = ctx.specialize(p.value(yw) * Coefficient.monomial(yv))
            if (y - 1).is_zero():
                raise LatticePointError(f"X_a{j} = 1 at the point labelled {labels[i]}")
            uu, uiu = ctx.specialize(u), ctx.specialize(ui)
            c1 = (uu * y - uiu) / (y - 1)
            c0 = -(uu - uiu) / (y - 1)
            k = image(s, i)
            if k is None:
                if strict or not c1.is_zero():
                    raise LatticePointError(f"s_{j} moves {labels[i]} out of the module")
            else:
                T[i][k] = T[i][k] + c1
            T[i][i] = T[i][i] + c0
        mod.T[j] = T

    for r in [0] + list(rs.O_star):
        x = W.pi_element(rs, r)
        Pm = [[F.zero() for _ in range(d)] for _ in range(d)]
        for i in range(d):
            k = image(x, i)
            if k is None:
                raise LatticePointError(f"pi_{r} moves {labels[i]} out of the module")
            Pm[i][k] = F.one()
        mod.pi[r] = Pm

    for i in range(rs.rank):
        mod.X[i] = mod.X_matrix(D._unit(rs, i))

    for i in range(rs.rank):
        r, word = D.Y_generator_word(rs, i)
        ms = [mod.pi[r]] + [mod.T[j] for j in word]
        mod.Y[i] = mat_prod(F, *ms)
    return mod


def build_module(ctx: CyclotomicContext, with_eps: bool = True) -> FiniteModule:
    """``V_N`` (generic ``t``) on ``B(N)`` in the delta-basis."""
    if ctx.k is not None:
        raise AdmissibilityError("build_module expects symbolic t")
    rs = ctx.rs
    labels = list(ctx.B_fund)
    points = [Mac.spectral_point(rs, b) for b in labels]
    mod = _operators(ctx, labels, points, strict=True)
    if with_eps:
        mod.eps_vectors = [discretize(Mac.compute_e(rs, b).normalized(), ctx, points) for b in labels]
        # Pi[i][j] = eps_{beta^i}(beta^j)
        mod.Pi = [list(v) for v in mod.eps_vectors]
    return mod


def eps_eigen_check(mod: FiniteModule) -> bool:
    """``Y_i eps_beta = x_{-b_i}(#beta) eps_beta`` as vectors."""
    rs, ctx = mod.ctx.rs, mod.ctx
    for v, p in zip(mod.eps_vectors, mod.points):
        for i in range(rs.rank):
            lam = ctx.specialize(p.value(tuple(-x for x in D._unit(rs, i))))
            if mat_vec_mul(mod.Y[i], v) != [lam * x for x in v]:
                return False
    return True


def is_symmetric(A: Matrix) -> bool:
    return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(i + 1, len(A)))


def generic_witness(A: Matrix, values: Dict[int, int]) -> Matrix:
    return [[at_integer_u(x, values) for x in row] for row in A]


WITNESS_U = {UL: 2, US: 3}


def is_invertible(A: Matrix, F: CyclotomicField, symbolic: bool) -> bool:
    """Full rank; for symbolic ``t`` via an integer specialization of ``u``
    (full rank there forces full rank generically)."""
    B = generic_witness(A, WITNESS_U) if symbolic else A
    return matrix_rank(B, F.zero(), F.one()) == len(A)


def generators(mod: FiniteModule) -> List[Matrix]:
    rs = mod.ctx.rs
    out = list(mod.T.values()) + [mod.pi[r] for r in mod.pi] + list(mod.X.values())
    out += [mod.X_matrix(tuple(-x for x in D._unit(rs, i))) for i in range(rs.rank)]
    return out


def irreducibility_witness(mod: FiniteModule, symbolic: Optional[bool] = None) -> int:
    """Dimension of the span of the constant vector under the generators.

    Equal to ``dim`` means the witness passes.
    """
    F = mod.F
    symbolic = mod.ctx.k is None if symbolic is None else symbolic
    gens = generators(mod)
    if symbolic:
        gens = [generic_witness(g, WITNESS_U) for g in gens]
    basis: List[List[CycloElement]] = []
    frontier = [[F.one() for _ in range(mod.dim)]]
    while frontier:
        new = []
        for v in frontier:
            trial = basis + [v]
            if matrix_rank(trial, F.zero(), F.one()) > len(basis):
                basis.append(v)
                new.append(v)
            if len(basis) == mod.dim:
                return len(basis)
        frontier = [mat_vec_mul(g, v) for v in new for g in gens]
    return len(basis)


def discretization_commutes(mod: FiniteModule, polys: Sequence[LaurentPoly]) -> bool:
    """Discretizing ``T_j f``, ``pi_r f`` and ``X_i f`` equals the matrix
    applied to the discretization of ``f``."""
    rs, ctx = mod.ctx.rs, mod.ctx
    for f in polys:
        df = discretize(f, ctx, mod.points)
        for j in range(rs.rank + 1):
            if discretize(D.apply_T(rs, j, f), ctx, mod.points) != mat_vec_mul(mod.T[j], df):
                return False
        for r in mod.pi:
            if r and discretize(D.apply_pi(rs, r, f), ctx, mod.points) != mat_vec_mul(mod.pi[r], df):
                return False
        for i in range(rs.rank):
            if discretize(D.apply_X(rs, D._unit(rs, i), f), ctx, mod.points) != mat_vec_mul(mod.X[i], df):
                return False
    return True


def matrix_relations(mod: FiniteModule) -> Dict[str, bool]:
    """The defining relations as matrix identities."""
    rs, F, ctx = mod.ctx.rs, mod.F, mod.ctx
    P = D.params(rs)
    n, d = rs.rank, mod.dim
    I = mat_identity(F, d)
    rep: Dict[str, bool] = {}

    def put(name, ok):
        rep[name] = rep.get(name, True) and ok

    for j in range(n + 1):
        nu = D._simple_data(rs, j)[3]
        u, ui = ctx.specialize(P.u(nu)), ctx.specialize(P.u(nu, -1))
        lhs = mat_prod(F, mat_sub(mod.T[j], mat_scale(I, u)), mat_add(mod.T[j], mat_scale(I, ui)))
        put(f"(o) quadratic T{j}", all(x.is_zero() for row in lhs for x in row))
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = D.braid_order(rs, i, j)
            if m is None:
                continue
            w1, w2 = D._alternating(i, j, m), D._alternating(j, i, m)
            put(f"(i) braid T{i},T{j}", mat_eq(mat_prod(F, *[mod.T[k] for k in w1]), mat_prod(F, *[mod.T[k] for k in w2])))
    for r in rs.O_star:
        perm = W.pi_permutation(rs, r)
        for i in range(n + 1):
            put(f"(ii) pi{r} T{i} pi{r}^-1", mat_eq(mat_prod(F, mod.pi[r], mod.T[i], mod.pi_inv(r)), mod.T[perm[i]]))
        for k in range(n):
            b = D._unit(rs, k)
            pb, lev = W.act_affine_weight(rs, W.pi_element(rs, r), b, 0)
            rhs = mod.X_matrix(pb, P.q_exp_v(lev))
            put(f"(vi) pi{r} X pi{r}^-1", mat_eq(mat_prod(F, mod.pi[r], mod.X[k], mod.pi_inv(r)), rhs))
    for i in range(1, n + 1):
        b = D._unit(rs, i - 1)
        ai = rs.simple_coroots[i - 1]
        rhs = mod.X_matrix(tuple(x - y for x, y in zip(b, ai)))
        put(f"(iii) T{i} X T{i}", mat_eq(mat_prod(F, mod.T[i], mod.X[i - 1], mod.T[i]), rhs))
    theta = rs.theta
    tv = rs.coroot(theta)
    b0 = D._weight_with_pairing(rs, theta, -1)
    rhs = mod.X_matrix(tuple(x + y for x, y in zip(b0, tv)), P.q_exp_v(-1))
    put("(iv) T0 X T0", mat_eq(mat_prod(F, mod.T[0], mod.X_matrix(b0), mod.T[0]), rhs))
    for i in range(n + 1):
        a = D._simple_data(rs, i)[0]
        for b in D._weights_orthogonal(rs, a):
            Xb = mod.X_matrix(b)
            put(f"(v) T{i} X commute", mat_eq(mat_prod(F, mod.T[i], Xb), mat_prod(F, Xb, mod.T[i])))
    for i in range(n):
        for j in range(i + 1, n):
            put(f"Y{i + 1} Y{j + 1} commute", mat_eq(mat_prod(F, mod.Y[i], mod.Y[j]), mat_prod(F, mod.Y[j], mod.Y[i])))
    return rep


# --------------------------------------------------------- t = q^k: V~


def _mu_at(ctx: CyclotomicContext, pt: SpectralPoint) -> CycloElement:
    mu = ctx.__dict__.get("_mu")
    if mu is None:
        mu = ctx.__dict__["_mu"] = Mac.mu_data(ctx.rs, ctx.k).mu_poly
    return ctx.specialize(pt.evaluate(mu))


def tilde_support(ctx: CyclotomicContext) -> List[Vec]:
    """``B~``: antidominant ``b`` representing the classes of ``B_N`` where
    ``mu(q^{#b}) != 0``, with ``#b = b - rho_k``; ``0`` first."""
    rs = ctx.rs
    found: Dict[tuple, Vec] = {}
    for b in _shells(rs.rank, 4 * ctx.M + 4):
        if not rs.antidominant(b):
            continue
        pt = Mac.spectral_point(rs, b)
        key = ctx.point_key(pt)
        if key in found:
            continue
        found[key] = b
        if len(found) == len(ctx.B_N):
            break
    out = []
    for key, b in found.items():
        if not _mu_at(ctx, Mac.spectral_point(rs, b)).is_zero():
            out.append(b)
    if not out or any(out[0]):
        raise AdmissibilityError("0 is not in the support of mu")
    return out


def build_tilde_module(ctx: CyclotomicContext) -> FiniteModule:
    """``V~ = Funct(B~)`` at ``t = q^k`` with ``eps~`` the ``Y``-eigenvectors
    normalized by ``eps~(0) = 1``."""
    if ctx.k is None:
        raise AdmissibilityError("V~ needs t = q^k")
    if not krho_holds(ctx):
        raise AdmissibilityError(f"q_a^((rho_k, a) + i) = 1 for some a (N = {ctx.N}, k = {_fmt_k(ctx.k)})")
    rs, F = ctx.rs, ctx.field
    labels = tilde_support(ctx)
    points = [Mac.spectral_point(rs, b) for b in labels]
    mod = _operators(ctx, labels, points, strict=False)
    vecs = []
    for i, p in enumerate(points):
        stacked = []
        for r in range(rs.rank):
            lam = ctx.specialize(p.value(tuple(-x for x in D._unit(rs, r))))
            stacked += mat_sub(mod.Y[r], mat_scale(mat_identity(F, mod.dim), lam))
        ns = nullspace(stacked, F)
        if len(ns) != 1:
            raise LatticePointError(f"eigenspace at {labels[i]} has dimension {len(ns)}")
        v = ns[0]
        if v[0].is_zero():
            raise LatticePointError(f"eigenvector at {labels[i]} vanishes at 0")
        c = v[0].inverse()
        vecs.append([x * c for x in v])
    mod.eps_vectors = vecs
    mod.Pi = [list(v) for v in vecs]
    return mod


def pairing_checks(mod: FiniteModule) -> Dict[str, bool]:
    """``[[eps~_i, delta~_j]] = C_i delta_ij`` with ``[[f, eps~_j]] = f(beta~^j)``,
    and nondegeneracy of both pairings."""
    F = mod.F
    E = mod.Pi
    Einv = matrix_inverse(E, F.zero(), F.one())
    G = matmul(E, mat_transpose(Einv), F.zero())
    diag_ok = all(G[i][j].is_zero() for i in range(mod.dim) for j in range(mod.dim) if i != j)
    diag_ok = diag_ok and all(not G[i][i].is_zero() for i in range(mod.dim))
    mus = [_mu_at(mod.ctx, p) for p in mod.points]
    return {
        "eps~ orthogonal to delta~": diag_ok,
        "Fourier pairing nondegenerate": matrix_rank(E, F.zero(), F.one()) == mod.dim,
        "restricted pairing nondegenerate": all(not m.is_zero() for m in mus),
        "eps~(0) = 1": all(v[0] == 1 for v in mod.eps_vectors),
    }


# ------------------------------------------------------- Gaussian, SL_2


@dataclass
class SL2Report:
    T_plus: Matrix
    T_minus: Matrix
    Omega: Matrix
    checks: Dict[str, bool]
    block_scalars: List[Tuple[str, Optional[str]]]


def _gamma(mod: FiniteModule, b: Sequence[int], antidominant_part: bool = True) -> CycloElement:
    rs = mod.ctx.rs
    P = D.params(rs)
    bm = W.to_antidominant(rs, b)[1] if antidominant_part else b
    return mod.ctx.specialize(P.q_power(rs.pairing(b, b) / 2) * Mac.rho_point(rs).value(bm))


def gaussian_values(mod: FiniteModule) -> List[CycloElement]:
    """``q^{(b, b)/2} x_{b_-}(t^{-rho})`` on the labels, i.e. ``q^{(z, z)/2}``
    at ``z = #b`` up to a constant."""
    return [_gamma(mod, b) for b in mod.labels]


def gaussian_periodic(mod: FiniteModule) -> bool:
    """``q^{(c, c)/2} x_c(t^{-rho})`` is unchanged by ``c -> c + kappa`` for
    generators ``kappa`` of ``K_N``."""

    def g(c):
        return _gamma(mod, c, antidominant_part=False)

    return all(g(tuple(x + y for x, y in zip(b, kap))) == g(b) for b in mod.labels for kap in mod.ctx.K_N)


def _tau_plus_pairs(mod: FiniteModule) -> List[Tuple[str, Matrix, Matrix]]:
    """``(name, A, B)`` with ``tau_+(A) = B``."""
    rs, F = mod.ctx.rs, mod.F
    P = D.params(rs)
    out = []
    for r in rs.O_star:
        br = D._unit(rs, r - 1)
        rhs = mat_prod(F, mod.X_matrix(br, P.q_exp_v(-rs.pairing(br, br) / 2)), mod.Y[r - 1])
        out.append((f"T+ Y{r} T+^-1 = X{r} q^(-(b,b)/2) Y{r}", mod.Y[r - 1], rhs))
    _, yw, yv, _ = D._simple_data(rs, 0)
    X0inv = mod.X_matrix(tuple(-x for x in yw), -yv)
    out.append(("T+ T0 T+^-1 = X0^-1 T0^-1", mod.T[0], mat_prod(F, X0inv, mod.T_inv(0))))
    for j in range(1, rs.rank + 1):
        out.append((f"T+ commutes with T{j}", mod.T[j], mod.T[j]))
    return out


def diagonal_tau_plus_solutions(mod: FiniteModule) -> int:
    """Dimension of the space of diagonal ``G`` with ``G A = tau_+(A) G`` for
    every generator pair; ``0`` means no multiplication operator induces ``tau_+``."""
    F, d = mod.F, mod.dim
    rows = []
    for _, A, B in _tau_plus_pairs(mod):
        for i in range(d):
            for j in range(d):
                r = [F.zero() for _ in range(d)]
                r[i] = r[i] + A[i][j]
                r[j] = r[j] - B[i][j]
                if any(not x.is_zero() for x in r):
                    rows.append(r)
    return len(nullspace(rows, F)) if rows else d


def central_blocks(mod: FiniteModule) -> List[Tuple[CycloElement, List[List[CycloElement]]]]:
    """Eigenspaces of ``T_{w_0}^2`` (central in the finite Hecke algebra)."""
    rs, F, ctx = mod.ctx.rs, mod.F, mod.ctx
    word = W.finite_reduced_word(rs, rs.longest_element)
    Tw0 = mat_identity(F, mod.dim)
    for i in word:
        Tw0 = mat_prod(F, Tw0, mod.T[i])
    C = mat_prod(F, Tw0, Tw0)
    P = D.params(rs)
    npos = len(rs.positive_roots)
    cands = []
    for e in itertools.product(range(-2 * npos, 2 * npos + 1), repeat=len(rs.length_classes)):
        c = Coefficient.monomial()
        for nu, k in zip(rs.length_classes, e):
            c = c * P.u(nu, k)
        val = ctx.specialize(c)
        if not any(val == x for x in cands):
            cands.append(val)
    blocks = []
    total = 0
    for lam in cands:
        ns = nullspace(mat_sub(C, mat_scale(mat_identity(F, mod.dim), lam)), F)
        if ns:
            blocks.append((lam, ns))
            total += len(ns)
    if total != mod.dim:
        raise LatticePointError("T_{w_0}^2 is not diagonalizable over the candidate eigenvalues")
    return blocks


def _proportional_on(F, L: Matrix, R: Matrix, basis: List[List[CycloElement]]) -> Optional[CycloElement]:
    scal = None
    for v in basis:
        lv, rv = mat_vec_mul(L, v), mat_vec_mul(R, v)
        for a, b in zip(lv, rv):
            if b.is_zero():
                if not a.is_zero():
                    return None
                continue
            c = a / b
            if scal is None:
                scal = c
            elif c != scal:
                return None
    return scal


def gaussian_and_sl2(mod: FiniteModule) -> SL2Report:
    """``T_+ = Diag(gamma)``, ``T_- = Pi T_+^{-1} Pi^{-1}``,
    ``Omega = T_+^{-1} T_- T_+^{-1}``, and the relation checks."""
    ctx, F = mod.ctx, mod.F
    if not aarho_holds(ctx):
        raise AdmissibilityError("q^{(a,a)/2} != 1 on K_N; the Gaussian is not defined")
    g = gaussian_values(mod)
    Tp = diagonal(F, g)
    Tpi = diagonal(F, [x.inverse() for x in g])
    Pi = mod.Pi
    Piinv = matrix_inverse(Pi, F.zero(), F.one())
    Tm = mat_prod(F, Pi, Tpi, Piinv)
    Om = mat_prod(F, Tpi, Tm, Tpi)
    checks: Dict[str, bool] = {"gamma periodic mod K_N": gaussian_periodic(mod)}
    for name, A, B in _tau_plus_pairs(mod):
        checks[name] = mat_eq(mat_prod(F, Tp, A, Tpi), B)
    L = mat_prod(F, Tpi, Tm, Tpi)
    R = mat_prod(F, Tm, Tpi, Tm)
    scalars = []
    ok = True
    for lam, basis in central_blocks(mod):
        s = _proportional_on(F, L, R, basis)
        scalars.append((lam.to_string(), None if s is None else s.to_string()))
        ok = ok and s is not None
    checks["T+^-1 T- T+^-1 = c T- T+^-1 T- blockwise"] = ok
    return SL2Report(Tp, Tm, Om, checks, scalars)


def matrix_to_json(A: Matrix) -> List[List[str]]:
    return [[x.to_string() for x in row] for row in A]
