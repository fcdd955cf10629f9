"""Exact coefficients and Laurent polynomials.

Coefficients are rational functions in the formal roots ``v = q^{1/2m}`` and
``u_nu = t_nu^{1/2}`` (``ul`` for long roots, ``us`` for short roots), plus
variables ``x1..x8`` used when operator coefficients are rational functions
of ``X``.
Numerators and denominators are ``fmpz_mpoly`` objects from python-flint,
kept gcd-reduced with a positive leading coefficient in the denominator.

A :class:`LaurentPoly` is a finite map from weights (integer b-coords) to
coefficients; ``x_b`` is the monomial of weight ``b``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import flint

from .rootsys import RootSystem, Vec, mat_vec

MAX_X = 8
VARS = ("v", "ul", "us") + tuple(f"x{i}" for i in range(1, MAX_X + 1))
NV = len(VARS)
V, UL, US = 0, 1, 2
X0 = 3
_CTX = flint.fmpz_mpoly_ctx.get(VARS, "lex")
_ONE_P = _CTX.from_dict({(0,) * NV: 1})
_ZERO_P = _CTX.from_dict({})


class CoefficientError(ArithmeticError):
    pass


class FractionalExponentError(CoefficientError):
    """An exponent of ``v`` or ``u`` failed to be an integer."""


def _pd(p) -> Dict[tuple, int]:
    """Polynomial as a dict with plain-int keys and values."""
    return {tuple(int(x) for x in e): int(c) for e, c in p.to_dict().items()}


def _laurent(d: Dict[tuple, int]):
    """``(num, den)`` polynomials for a Laurent dict with possibly negative
    exponents."""
    if not d:
        return _ZERO_P, _ONE_P
    mins = [min(0, min(e[i] for e in d)) for i in range(NV)]
    if not any(mins):
        return _CTX.from_dict(d), _ONE_P
    num = _CTX.from_dict({tuple(e[i] - mins[i] for i in range(NV)): c for e, c in d.items()})
    den = _CTX.from_dict({tuple(-m for m in mins): 1})
    return num, den


def _as_int(x, what="exponent") -> int:
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator != 1:
        raise FractionalExponentError(f"fractional {what}: {x}")
    return int(x.numerator)


class Coefficient:
    """Element of ``Q(v, ul, us, x)`` in reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce: bool = True):
        if den is None:
            den = _ONE_P
        if reduce and not den.is_one():
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # ------------------------------------------------------------ builders
    @staticmethod
    def from_int(c: Union[int, Fraction]) -> "Coefficient":
        c = Fraction(c)
        num = _CTX.from_dict({(0,) * NV: c.numerator}) if c else _ZERO_P
        den = _CTX.from_dict({(0,) * NV: c.denominator})
        return Coefficient(num, den, reduce=c.denominator != 1)

    @staticmethod
    def monomial(ev: int = 0, eul: int = 0, eus: int = 0, xs: Sequence[int] = (), c: int = 1) -> "Coefficient":
        xs = tuple(xs) + (0,) * (MAX_X - len(xs))
        num, den = _laurent({(_as_int(ev), _as_int(eul), _as_int(eus)) + xs: c})
        return Coefficient(num, den, reduce=False)

    @staticmethod
    def from_laurent_dict(d: Dict[tuple, int]) -> "Coefficient":
        num, den = _laurent({k: v for k, v in d.items() if v})
        return Coefficient(num, den, reduce=False)

    # -------------------------------------------------------------- basics
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Coefficient.from_int(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(sorted(_pd(self.num).items())), tuple(sorted(_pd(self.den).items()))))

    def _coerce(self, other) -> "Coefficient":
        if isinstance(other, Coefficient):
            return other
        if isinstance(other, (int, Fraction)):
            return Coefficient.from_int(other)
        raise TypeError(f"cannot coerce {type(other)}")

    def __add__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return Coefficient(self.num + other.num, _ONE_P, reduce=False)
            return Coefficient(self.num + other.num, self.den)
        return Coefficient(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return Coefficient(self.num * other, self.den, reduce=not self.den.is_one())
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return Coefficient(self.num * other.num, _ONE_P, reduce=False)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        g1 = n1.gcd(d2)
        g2 = n2.gcd(d1)
        if not g1.is_one():
            n1, d2 = n1 / g1, d2 / g1
        if not g2.is_one():
            n2, d1 = n2 / g2, d1 / g2
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Coefficient(num, den, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero coefficient")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Coefficient(num, den, reduce=False)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ------------------------------------------------------- substitution
    def map_exponents(self, f: Callable[[tuple], tuple]) -> "Coefficient":
        """Apply a monomial substitution given on exponent vectors."""
        nd = {}
        for e, c in _pd(self.num).items():
            k = f(e)
            nd[k] = nd.get(k, 0) + int(c)
        dd = {}
        for e, c in _pd(self.den).items():
            k = f(e)
            dd[k] = dd.get(k, 0) + int(c)
        return Coefficient.from_laurent_dict(nd) / Coefficient.from_laurent_dict(dd)

    def star(self) -> "Coefficient":
        """Invert every variable: ``v, u, x_i -> v^{-1}, u^{-1}, x_i^{-1}``."""
        return self.map_exponents(lambda e: tuple(-x for x in e))

    def substitute_u(self, images: Dict[int, Tuple[int, int, int]]) -> "Coefficient":
        """Replace ``u_var`` by the monomial ``v^a ul^b us^c`` for the variable
        indices given in ``images``."""

        def f(e):
            out = list(e)
            for idx, (a, b, c) in images.items():
                k = e[idx]
                out[idx] = 0
                out[V] += a * k
                out[UL] += b * k
                out[US] += c * k
            return tuple(out)

        return self.map_exponents(f)

    def uses(self, idx: int) -> bool:
        return any(e[idx] for e in _pd(self.num)) or any(e[idx] for e in _pd(self.den))

    # ------------------------------------------------------------ display
    def to_string(self, m: int) -> str:
        """Canonical string in ``q, tl, ts`` (and ``x``).  A monomial factor
        of the denominator is moved into the numerator as negative powers."""
        den_d = _pd(self.den)
        mono = [min(e[i] for e in den_d) for i in range(NV)]
        den_core = {tuple(e[i] - mono[i] for i in range(NV)): c for e, c in den_d.items()}
        num_d = {tuple(e[i] - mono[i] for i in range(NV)): c for e, c in _pd(self.num).items()}
        ns = _poly_string(num_d, m)
        if len(num_d) > 1:
            ns = f"({ns})"
        if len(den_core) == 1 and next(iter(den_core)) == (0,) * NV:
            c = int(next(iter(den_core.values())))
            if c == 1:
                return ns[1:-1] if len(num_d) > 1 else ns
            return f"{ns}/{c}"
        return f"{ns}/({_poly_string(den_core, m)})"

    def __repr__(self):
        return f"Coefficient({self.to_string(None)})"


def _mono_string(e: tuple, m: int) -> str:
    parts = []
    names = [(V, "q", 2 * m) if m else (V, "v", 1), (UL, "tl", 2), (US, "ts", 2)]
    names += [(X0 + i, f"x{i + 1}", 1) for i in range(MAX_X)]
    for idx, name, scale in names:
        k = e[idx]
        if k == 0:
            continue
        fr = Fraction(k, scale)
        if fr == 1:
            parts.append(name)
        elif fr.denominator == 1:
            parts.append(f"{name}^{fr.numerator}")
        else:
            parts.append(f"{name}^({fr.numerator}/{fr.denominator})")
    return "*".join(parts)


def _poly_string(d: Dict[tuple, int], m: int) -> str:
    if not d:
        return "0"
    out = []
    for e in sorted(d, reverse=True):
        c = int(d[e])
        mono = _mono_string(e, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


ZERO = Coefficient(_ZERO_P, _ONE_P, reduce=False)
ONE = Coefficient(_ONE_P, _ONE_P, reduce=False)


def C(x) -> Coefficient:
    return x if isinstance(x, Coefficient) else Coefficient.from_int(x)


# ---------------------------------------------------------------------------
# parameters attached to a root system


class Params:
    """Formal parameters of a root system: ``v = q^{1/2m}`` and ``u_nu``."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.m = rs.m
        long = max(rs.length_classes)
        self.uidx = {nu: (UL if nu == long else US) for nu in rs.length_classes}

    def q_power(self, e) -> Coefficient:
        """``q^e`` for rational ``e`` with ``2 m e`` integral."""
        return Coefficient.monomial(ev=_as_int(2 * self.m * Fraction(e), "q-exponent"))

    def q_exp_v(self, e) -> int:
        return _as_int(2 * self.m * Fraction(e), "q-exponent")

    def u(self, nu, power: int = 1) -> Coefficient:
        e = [0, 0, 0]
        e[self.uidx[nu]] = power
        return Coefficient.monomial(*e)

    def t(self, nu) -> Coefficient:
        return self.u(nu, 2)

    def u_j(self, j: int, power: int = 1) -> Coefficient:
        return self.u(self.nu_j(j), power)

    def nu_j(self, j: int) -> Fraction:
        rs = self.rs
        if j == 0:
            return rs.root_length(rs.theta)
        return rs.simple_lengths[j - 1]

    def t_eq_qk(self, k: Dict[Fraction, int]) -> Dict[int, Tuple[int, int, int]]:
        """Substitution ``t_nu = q_nu^{k_nu}``, i.e. ``u_nu = v^{2 m k_nu / nu}``."""
        out = {}
        for nu, idx in self.uidx.items():
            a = Fraction(2 * self.m * k[nu]) / nu
            out[idx] = (_as_int(a, "v-exponent"), 0, 0)
        return out

    def normalize_k(self, k) -> Dict[Fraction, int]:
        if isinstance(k, dict):
            return {Fraction(nu): int(v) for nu, v in k.items()}
        return {nu: int(k) for nu in self.rs.length_classes}


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Finite map ``weight -> Coefficient``; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Vec, Coefficient]] = None, clean: bool = True):
        if terms is None:
            terms = {}
        if clean:
            terms = {k: v for k, v in terms.items() if not v.is_zero()}
        self.terms = terms

    @staticmethod
    def monomial(b: Sequence[int], c=1) -> "LaurentPoly":
        return LaurentPoly({tuple(b): C(c)})

    @staticmethod
    def constant(c, rank: int) -> "LaurentPoly":
        return LaurentPoly({(0,) * rank: C(c)})

    def copy(self) -> "LaurentPoly":
        return LaurentPoly(dict(self.terms), clean=False)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, b: Sequence[int]) -> Coefficient:
        return self.terms.get(tuple(b), ZERO)

    def support(self) -> List[Vec]:
        return list(self.terms)

    def add_term(self, b: Vec, c: Coefficient):
        """In-place ``self += c x_b``."""
        if c.is_zero():
            return
        old = self.terms.get(b)
        if old is None:
            self.terms[b] = c
        else:
            s = old + c
            if s.is_zero():
                del self.terms[b]
            else:
                self.terms[b] = s

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = self.copy()
        for b, c in other.terms.items():
            out.add_term(b, c)
        return out

    def __neg__(self):
        return LaurentPoly({b: -c for b, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        out = self.copy()
        for b, c in other.terms.items():
            out.add_term(b, -c)
        return out

    def scale(self, c) -> "LaurentPoly":
        c = C(c)
        if c.is_zero():
            return LaurentPoly()
        if c.is_one():
            return self
        return LaurentPoly({b: x * c for b, x in self.terms.items()}, clean=False)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out = LaurentPoly()
            for b1, c1 in self.terms.items():
                for b2, c2 in other.terms.items():
                    out.add_term(tuple(x + y for x, y in zip(b1, b2)), c1 * c2)
            return out
        return self.scale(other)

    __rmul__ = __mul__

    def shift(self, b: Sequence[int]) -> "LaurentPoly":
        """Multiplication by ``x_b``."""
        return LaurentPoly({tuple(x + y for x, y in zip(k, b)): c for k, c in self.terms.items()}, clean=False)

    def map_coefficients(self, f: Callable[[Coefficient], Coefficient]) -> "LaurentPoly":
        return LaurentPoly({b: f(c) for b, c in self.terms.items()})

    def constant_term(self) -> Coefficient:
        if not self.terms:
            return ZERO
        n = len(next(iter(self.terms)))
        return self.terms.get((0,) * n, ZERO)

    def star(self) -> "LaurentPoly":
        """``x_b -> x_{-b}``, ``q, t -> q^{-1}, t^{-1}``."""
        return LaurentPoly({tuple(-x for x in b): c.star() for b, c in self.terms.items()}, clean=False)

    def bar(self) -> "LaurentPoly":
        """``x_b -> x_{-b}`` with coefficients unchanged."""
        return LaurentPoly({tuple(-x for x in b): c for b, c in self.terms.items()}, clean=False)

    def apply_linear(self, M) -> "LaurentPoly":
        """``x_b -> x_{M b}`` for an integer matrix ``M``."""
        out = LaurentPoly()
        for b, c in self.terms.items():
            out.add_term(mat_vec(M, b), c)
        return out

    def sorted_items(self, key=None) -> List[Tuple[Vec, Coefficient]]:
        return sorted(self.terms.items(), key=(lambda kv: key(kv[0])) if key else (lambda kv: kv[0]))

    def to_json(self, m: int) -> dict:
        return {
            "terms": [
                {"weight": list(b), "coeff": c.to_string(m)} for b, c in sorted(self.terms.items())
            ]
        }

    def __repr__(self):
        items = ", ".join(f"{b}: {c.to_string(None)}" for b, c in sorted(self.terms.items()))
        return f"LaurentPoly({{{items}}})"


def x_power_sum(a: Vec, level_v: int, lo: int, hi: int) -> List[Tuple[Vec, int]]:
    """Monomials ``y^i`` for ``lo <= i <= hi`` with ``y = x_a v^{level_v}``,
    returned as ``(weight, v-exponent)`` pairs."""
    return [(tuple(i * x for x in a), i * level_v) for i in range(lo, hi + 1)]


# ---------------------------------------------------------------------------
# spectral points


class SpectralPoint:
    """The character ``x_a -> q^{(a, b)} prod_nu t_nu^{-(w(rho_nu), a)}``.

    ``base`` is a vector of b-coords (rational entries allowed) and ``w`` a
    finite Weyl group element given by its b-coords matrix.
    """

    def __init__(self, rs: RootSystem, base: Sequence, w, params: Optional[Params] = None):
        self.rs = rs
        self.base = tuple(Fraction(x) for x in base)
        self.w = w
        self.params = params or Params(rs)
        self._wrho = {nu: mat_vec(w, rho) for nu, rho in rs.rho_by_length.items()}
        self._cache: Dict[Vec, Tuple[int, int, int]] = {}

    def exponents(self, a: Sequence[int]) -> Tuple[int, int, int]:
        """``(v, ul, us)`` exponents of ``x_a`` at the point."""
        a = tuple(a)
        e = self._cache.get(a)
        if e is None:
            rs, P = self.rs, self.params
            out = [P.q_exp_v(rs.pairing(a, self.base)), 0, 0]
            for nu, wr in self._wrho.items():
                out[P.uidx[nu]] += _as_int(-2 * rs.pairing(wr, a), "t-exponent")
            e = self._cache[a] = tuple(out)
        return e

    def value(self, a: Sequence[int]) -> Coefficient:
        ev, eul, eus = self.exponents(a)
        return Coefficient.monomial(ev, eul, eus)

    def evaluate(self, f: LaurentPoly) -> Coefficient:
        acc: Dict[tuple, int] = {}
        out = ZERO
        for b, c in f.terms.items():
            ev, eul, eus = self.exponents(b)
            if c.den.is_one():
                for e, k in _pd(c.num).items():
                    key = (e[0] + ev, e[1] + eul, e[2] + eus) + e[3:]
                    acc[key] = acc.get(key, 0) + int(k)
            else:
                out = out + c * Coefficient.monomial(ev, eul, eus)
        return out + Coefficient.from_laurent_dict(acc)

    def __eq__(self, other):
        if not isinstance(other, SpectralPoint):
            return NotImplemented
        return all(
            self.exponents(a) == other.exponents(a) for a in self.rs.coweights
        )

    def __hash__(self):
        return hash(tuple(self.exponents(a) for a in self.rs.coweights))


def evaluate(f: LaurentPoly, pt: SpectralPoint) -> Coefficient:
    return pt.evaluate(f)


def constant_term(f: LaurentPoly) -> Coefficient:
    return f.constant_term()


def star_conjugate(f: LaurentPoly) -> LaurentPoly:
    return f.star()


def bar_conjugate(f: LaurentPoly) -> LaurentPoly:
    return f.bar()


# ---------------------------------------------------------------------------
# cyclotomic specialization


_CYC_VARS = ("z", "ul", "us")
_CCTX = flint.fmpz_mpoly_ctx.get(_CYC_VARS, "lex")
_C_ONE = _CCTX.from_dict({(0, 0, 0): 1})
_C_ZERO = _CCTX.from_dict({})


class SpecializationError(CoefficientError):
    """A denominator vanishes under the cyclotomic substitution."""


class CyclotomicField:
    """``Q(zeta_M)(ul, us)`` with ``zeta_M`` a root of the ``M``-th
    cyclotomic polynomial."""

    def __init__(self, M: int):
        self.M = M
        coeffs = flint.fmpz_poly.cyclotomic(M).coeffs()
        self.phi = _CCTX.from_dict({(k, 0, 0): int(c) for k, c in enumerate(coeffs) if c})
        self.phi_q = flint.fmpq_poly([int(c) for c in coeffs])
        self.degree = len(coeffs) - 1

    @cached_property
    def units(self) -> List[int]:
        return [k for k in range(1, self.M + 1) if gcd(k, self.M) == 1]

    def galois(self, p, k: int):
        """``z -> z^k`` applied to a polynomial."""
        d: Dict[tuple, int] = {}
        for e, c in _pd(p).items():
            key = ((e[0] * k) % self.M,) + tuple(e[1:])
            d[key] = d.get(key, 0) + int(c)
        return self.reduce(_CCTX.from_dict({a: b for a, b in d.items() if b}))

    def reduce(self, p):
        if p.is_zero():
            return p
        if max(e[0] for e in _pd(p)) < self.degree:
            return p
        return divmod(p, self.phi)[1]

    def element(self, num, den=None) -> "CycloElement":
        return CycloElement(self, num, den if den is not None else _C_ONE)

    def zeta_power(self, k: int) -> "CycloElement":
        return self.element(_CCTX.from_dict({(k % self.M, 0, 0): 1}))

    def from_int(self, c) -> "CycloElement":
        c = Fraction(c)
        return self.element(
            _CCTX.from_dict({(0, 0, 0): c.numerator}) if c else _C_ZERO,
            _CCTX.from_dict({(0, 0, 0): c.denominator}),
        )

    def zero(self):
        return self.element(_C_ZERO)

    def one(self):
        return self.element(_C_ONE)

    def specialize(self, c: Coefficient, v_power: int, u_images: Optional[Dict[int, int]] = None) -> "CycloElement":
        """Image of ``c`` under ``v -> zeta^{v_power}`` and optionally
        ``u_idx -> zeta^{k}`` for the indices in ``u_images``."""
        u_images = u_images or {}

        def conv(p):
            d: Dict[tuple, int] = {}
            for e, k in _pd(p).items():
                if any(e[X0:]):
                    raise SpecializationError("cannot specialize a coefficient involving x")
                z = e[V] * v_power
                ul, us = e[UL], e[US]
                if UL in u_images:
                    z += ul * u_images[UL]
                    ul = 0
                if US in u_images:
                    z += us * u_images[US]
                    us = 0
                key = (z % self.M, ul, us)
                d[key] = d.get(key, 0) + int(k)
            return d

        nd, dd = conv(c.num), conv(c.den)
        num = self.reduce(_laurent_c(nd)[0])
        dnum, dden = _laurent_c(dd)
        den = self.reduce(dnum)
        # negative u powers: move to the other side
        nmono = _laurent_c(nd)[1]
        if den.is_zero():
            bad = [str(f) for f, _ in c.den.factor()[1] if self.reduce(_conv_poly(self, f, v_power, u_images)).is_zero()]
            raise SpecializationError(f"denominator vanishes at the root of unity: factor {bad}")
        return CycloElement(self, num * dden, den * nmono)


def _laurent_c(d: Dict[tuple, int]):
    if not d:
        return _C_ZERO, _C_ONE
    mins = [min(0, min(e[i] for e in d)) for i in range(3)]
    num = _CCTX.from_dict({tuple(e[i] - mins[i] for i in range(3)): c for e, c in d.items() if c})
    den = _CCTX.from_dict({tuple(-m for m in mins): 1})
    return num, den


def _conv_poly(F: CyclotomicField, p, v_power, u_images):
    d: Dict[tuple, int] = {}
    for e, k in _pd(p).items():
        z = e[V] * v_power
        ul, us = e[UL], e[US]
        if UL in u_images:
            z += ul * u_images[UL]
            ul = 0
        if US in u_images:
            z += us * u_images[US]
            us = 0
        key = (z % F.M, ul, us)
        d[key] = d.get(key, 0) + int(k)
    return _laurent_c(d)[0]


class CycloElement:
    """Element of ``Q(zeta)(ul, us)`` as ``num/den`` reduced modulo the
    cyclotomic polynomial in ``z``.  Equality is tested by cross
    multiplication, which is exact because a polynomial of ``z``-degree
    below ``phi(M)`` vanishing at ``zeta`` is zero."""

    __slots__ = ("F", "num", "den")

    def __init__(self, F: CyclotomicField, num, den):
        self.F = F
        num = F.reduce(num)
        den = F.reduce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in cyclotomic field")
        if num.is_zero():
            den = _C_ONE
        elif not den.is_one():
            # u-free denominators are inverted inside Q(zeta)
            if all(e[1] == 0 and e[2] == 0 for e in _pd(den)):
                num, den = _invert_into(F, num, den)
            else:
                if any(e[0] for e in _pd(den)):
                    # multiply by the Galois conjugates: the denominator becomes its z-free norm
                    conj = _C_ONE
                    for k in F.units[1:]:
                        conj = F.reduce(conj * F.galois(den, k))
                    num, den = F.reduce(num * conj), F.reduce(den * conj)
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num / g, den / g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, o):
        o = self._c(o)
        if self.den == o.den:
            return CycloElement(self.F, self.num + o.num, self.den)
        return CycloElement(self.F, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.F, -self.num, self.den)

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return CycloElement(self.F, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return CycloElement(self.F, self.den, self.num)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.F.one()
        for _ in range(k):
            out = out * self
        return out

    def _c(self, o):
        if isinstance(o, CycloElement):
            return o
        return self.F.from_int(o)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = self.F.from_int(o)
        if not isinstance(o, CycloElement):
            return NotImplemented
        return self.F.reduce(self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("CycloElement is not hashable")

    def substitute_u(self, images: Dict[int, int]) -> "CycloElement":
        """``u_idx -> zeta^k``."""

        def conv(p):
            d: Dict[tuple, int] = {}
            for e, k in _pd(p).items():
                z, ul, us = e
                if 1 in images:
                    z += ul * images[1]
                    ul = 0
                if 2 in images:
                    z += us * images[2]
                    us = 0
                key = (z % self.F.M, ul, us)
                d[key] = d.get(key, 0) + int(k)
            return _laurent_c(d)[0]

        return CycloElement(self.F, conv(self.num), conv(self.den))

    def to_string(self) -> str:
        def ps(p):
            d = _pd(p)
            if not d:
                return "0"
            terms = []
            for e in sorted(d, reverse=True):
                c = int(d[e])
                mono = "*".join(
                    (n if k == 1 else f"{n}^{k}") for n, k in zip(("z", "ul", "us"), e) if k
                )
                a = abs(c)
                body = mono if (mono and a == 1) else (f"{a}*{mono}" if mono else str(a))
                terms.append(("-" if c < 0 else "+", body))
            s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            for sg, b in terms[1:]:
                s += f" {sg} {b}"
            return s

        if self.den.is_one():
            return ps(self.num)
        return f"({ps(self.num)})/({ps(self.den)})"

    def __repr__(self):
        return f"CycloElement[{self.F.M}]({self.to_string()})"


def _invert_into(F: CyclotomicField, num, den):
    """Multiply ``num/den`` through by the inverse of the u-free ``den``."""
    dq = flint.fmpq_poly([0] * 1)
    coeffs = [0] * (F.degree + 1)
    for e, c in _pd(den).items():
        coeffs[e[0]] += int(c)
    dq = flint.fmpq_poly(coeffs)
    g, s, _ = dq.xgcd(F.phi_q)
    if g.degree() != 0:
        raise ZeroDivisionError("denominator not invertible modulo the cyclotomic polynomial")
    s = s / g
    # clear denominators of s
    sc = s.coeffs()
    D = 1
    for c in sc:
        D = D * int(c.q) // gcd(D, int(c.q))
    s_int = _CCTX.from_dict({(k, 0, 0): int(c * D) for k, c in enumerate(sc) if c != 0})
    new_num = F.reduce(num * s_int)
    new_den = _CCTX.from_dict({(0, 0, 0): D})
    g2 = new_num.content()
    cg = gcd(int(g2), D)
    if cg > 1:
        new_num = new_num / cg
        new_den = _CCTX.from_dict({(0, 0, 0): D // cg})
    return new_num, new_den


# ---------------------------------------------------------------------------
# exact linear algebra over any of the fields above


def _is_zero(x) -> bool:
    return x.is_zero()


def row_reduce(M: List[list], zero, one):
    """Reduced row echelon form (in place on a copy); returns ``(R, pivots)``."""
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not _is_zero(R[i][c])), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv if not _is_zero(x) else x for x in R[r]]
        for i in range(rows):
            if i != r and not _is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [a - f * b if not _is_zero(b) else a for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def matrix_rank(M: List[list], zero, one) -> int:
    if not M:
        return 0
    return len(row_reduce(M, zero, one)[1])


def solve_linear(A: List[list], rhs: list, zero, one) -> list:
    """Unique solution of ``A x = rhs``; raises ``ArithmeticError`` if singular."""
    n = len(A)
    aug = [list(row) + [b] for row, b in zip(A, rhs)]
    R, piv = row_reduce(aug, zero, one)
    if piv != list(range(n)):
        raise ArithmeticError("singular linear system")
    return [R[i][n] for i in range(n)]


def matrix_inverse(A: List[list], zero, one) -> List[list]:
    n = len(A)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_reduce(aug, zero, one)
    if piv[:n] != list(range(n)):
        raise ArithmeticError("singular matrix")
    return [row[n:] for row in R[:n]]


def matmul(A: List[list], B: List[list], zero) -> List[list]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                a = A[i][t]
                if a.is_zero():
                    continue
                b = B[t][j]
                if not b.is_zero():
                    s = s + a * b
            row.append(s)
        out.append(row)
    return out
