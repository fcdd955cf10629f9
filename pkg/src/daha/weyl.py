"""Extended affine Weyl group ``W^b = W x| B``.

An element is stored as a pair ``(w, b)`` standing for ``w b'``: first the
translation by ``b``, then the finite element ``w``.  On the affine space it
acts by ``(w b')<z> = w(b + z)``; on affine roots and on affine weights
``[z, zeta]`` (linear functions) it acts by

    (w b')([z, zeta]) = [w(z), zeta - (z, b)].
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .rootsys import Mat, RootSystem, Vec, identity, mat_mul, mat_vec, _mat_inverse


class WeylError(ValueError):
    pass


# --------------------------------------------------------------------------
# finite Weyl group helpers


def _cache(rs: RootSystem, name: str) -> dict:
    store = rs.__dict__.setdefault("_weyl_caches", {})
    return store.setdefault(name, {})


def mat_inv(rs: RootSystem, M: Mat) -> Mat:
    c = _cache(rs, "inv")
    if M not in c:
        inv = _mat_inverse([[Fraction(x) for x in row] for row in M])
        c[M] = tuple(tuple(int(x) for x in row) for row in inv)
    return c[M]


def root_image(rs: RootSystem, M: Mat, alpha: Sequence[int]) -> Vec:
    """``w(alpha)`` in alpha-coords; ``w`` given by its b-coords matrix.

    Uses that ``w`` preserves the form: the alpha-coords of ``w(alpha)`` are
    ``(w^{-1})^T alpha``.
    """
    Mi = mat_inv(rs, M)
    n = rs.rank
    return tuple(sum(Mi[k][i] * alpha[k] for k in range(n)) for i in range(n))


def to_antidominant(rs: RootSystem, b: Sequence[int]) -> Tuple[Mat, Vec]:
    """Return ``(omega, b_-)`` with ``omega(b) = b_-`` and ``omega`` of minimal
    length (the left descent loop never overshoots)."""
    w = identity(rs.rank)
    cur = tuple(b)
    while True:
        i = next((i for i, x in enumerate(cur) if x > 0), None)
        if i is None:
            return w, cur
        s = rs.simple_reflections[i]
        cur = mat_vec(s, cur)
        w = mat_mul(s, w)


def to_dominant(rs: RootSystem, b: Sequence[int]) -> Tuple[Mat, Vec]:
    w = identity(rs.rank)
    cur = tuple(b)
    while True:
        i = next((i for i, x in enumerate(cur) if x < 0), None)
        if i is None:
            return w, cur
        s = rs.simple_reflections[i]
        cur = mat_vec(s, cur)
        w = mat_mul(s, w)


def finite_reduced_word(rs: RootSystem, M: Mat) -> List[int]:
    """Reduced word ``[i_1, ..., i_l]`` (1-based) with ``w = s_{i_1} ... s_{i_l}``."""
    word: List[int] = []
    cur = M
    while True:
        # right descent: w(alpha_i) < 0
        i = next(
            (
                i
                for i in range(rs.rank)
                if not rs.is_positive(root_image(rs, cur, tuple(int(i == j) for j in range(rs.rank))))
            ),
            None,
        )
        if i is None:
            break
        word.append(i + 1)
        cur = mat_mul(cur, rs.simple_reflections[i])
    return list(reversed(word))


def finite_length_nu(rs: RootSystem, M: Mat) -> Dict[Fraction, int]:
    out = {nu: 0 for nu in rs.length_classes}
    for a in rs.positive_roots:
        if not rs.is_positive(root_image(rs, M, a)):
            out[rs.root_length(a)] += 1
    return out


def orbit(rs: RootSystem, b: Sequence[int]) -> List[Vec]:
    """The W-orbit of ``b`` (BFS over simple reflections)."""
    start = tuple(b)
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for s in rs.simple_reflections:
            d = mat_vec(s, c)
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return sorted(seen, key=lambda c: weight_key(rs, c))


# --------------------------------------------------------------------------
# extended affine Weyl group


@dataclass(frozen=True)
class AffElt:
    """``w b'`` with ``w`` a b-coords matrix and ``b`` a weight."""

    w: Mat
    b: Vec

    def __repr__(self):
        return f"AffElt(w={self.w}, b={self.b})"


def ident(rs: RootSystem) -> AffElt:
    return AffElt(identity(rs.rank), tuple(0 for _ in range(rs.rank)))


def translation(rs: RootSystem, b: Sequence[int]) -> AffElt:
    return AffElt(identity(rs.rank), tuple(b))


def finite(rs: RootSystem, M: Mat) -> AffElt:
    return AffElt(M, tuple(0 for _ in range(rs.rank)))


def mul(rs: RootSystem, x: AffElt, y: AffElt) -> AffElt:
    """``(w1 b1')(w2 b2') = w1 w2 (w2^{-1}(b1) + b2)'``."""
    w2i = mat_inv(rs, y.w)
    tb = mat_vec(w2i, x.b)
    return AffElt(mat_mul(x.w, y.w), tuple(p + q for p, q in zip(tb, y.b)))


def inverse(rs: RootSystem, x: AffElt) -> AffElt:
    wb = mat_vec(x.w, x.b)
    return AffElt(mat_inv(rs, x.w), tuple(-c for c in wb))


def act_point(rs: RootSystem, x: AffElt, z: Sequence) -> tuple:
    """Affine action ``(w b')<z> = w(b + z)`` on b-coords points."""
    return mat_vec(x.w, tuple(p + q for p, q in zip(x.b, z)))


def act_affine_root(rs: RootSystem, x: AffElt, root: Sequence[int], level) -> Tuple[Vec, object]:
    """Image of the affine root ``[alpha, k]`` (alpha in alpha-coords)."""
    shift = sum(p * q for p, q in zip(x.b, root))
    return root_image(rs, x.w, root), level - shift


def act_affine_weight(rs: RootSystem, x: AffElt, z: Sequence[int], zeta) -> Tuple[Vec, Fraction]:
    """Image of the affine weight ``[z, zeta]`` (z in b-coords)."""
    return mat_vec(x.w, z), zeta - rs.pairing(z, x.b)


def simple_affine_root(rs: RootSystem, j: int) -> Tuple[Vec, int]:
    if j == 0:
        return tuple(-c for c in rs.theta), 1
    return tuple(int(i == j - 1) for i in range(rs.rank)), 0


def simple_reflection(rs: RootSystem, j: int) -> AffElt:
    """``s_j``; ``s_0 = s_{[-theta, 1]} = s_theta (-theta^vee)'``."""
    if j == 0:
        Mt = rs.reflection_matrix(rs.theta)
        tv = rs.coroot(rs.theta)
        return AffElt(Mt, tuple(-c for c in tv))
    return finite(rs, rs.simple_reflections[j - 1])


def is_negative_affine(root: Sequence[int], level) -> bool:
    return level < 0 or (level == 0 and not any(c > 0 for c in root))


# --------------------------------------------------------------- lengths


def length_nu(rs: RootSystem, x: AffElt) -> Dict[Fraction, int]:
    """Count positive affine roots made negative, by length class."""
    out = {nu: 0 for nu in rs.length_classes}
    for a in rs.positive_roots:
        nu = rs.root_length(a)
        n = sum(p * q for p, q in zip(x.b, a))
        wa_neg = not rs.is_positive(root_image(rs, x.w, a))
        # [a, k], k >= 0
        if n > 0:
            out[nu] += n + (1 if wa_neg else 0)
        elif n == 0:
            out[nu] += 1 if wa_neg else 0
        # [-a, k], k >= 1: image level k + n, finite part -w(a)
        if -n >= 1:
            out[nu] += (-n - 1) + (0 if wa_neg else 1)
    return out


def length(rs: RootSystem, x: AffElt) -> int:
    return sum(length_nu(rs, x).values())


def lambda_set_direct(rs: RootSystem, x: AffElt) -> List[Tuple[Vec, int]]:
    """``{alpha~ in R^a_+ : x(alpha~) < 0}`` by enumeration."""
    out = []
    for a in rs.roots:
        n = sum(p * q for p, q in zip(x.b, a))
        lo = 0 if rs.is_positive(a) else 1
        for k in range(lo, max(lo, n) + 1):
            img, lev = act_affine_root(rs, x, a, k)
            if is_negative_affine(img, lev):
                out.append((a, k))
    return sorted(out)


def lambda_set(rs: RootSystem, x: AffElt) -> List[Tuple[Vec, int]]:
    """Reduced-word scan: for ``x = pi_r s_{j_l} ... s_{j_1}`` the set is
    ``{alpha_{j_1}, s_{j_1}(alpha_{j_2}), ...}``."""
    _, word = reduced_word(rs, x)
    return [r for r in _lambda_sequence(rs, word)]


def _lambda_sequence(rs: RootSystem, word: List[int]) -> List[Tuple[Vec, int]]:
    seq = []
    g = ident(rs)
    for j in reversed(word):
        root, lev = simple_affine_root(rs, j)
        seq.append(act_affine_root(rs, g, root, lev))
        g = mul(rs, g, simple_reflection(rs, j))
    return seq


def lambda_sequence(rs: RootSystem, x: AffElt) -> List[Tuple[Vec, int]]:
    """The ordered sequence ``alpha~^1, ..., alpha~^l`` of the reduced-word scan."""
    _, word = reduced_word(rs, x)
    return _lambda_sequence(rs, word)


def lambda_translation_closed(rs: RootSystem, b: Sequence[int]) -> List[Tuple[Vec, int]]:
    """Closed form of the lambda-set of a translation."""
    out = []
    for a in rs.roots:
        n = sum(p * q for p, q in zip(b, a))
        if rs.is_positive(a):
            out += [(a, k) for k in range(0, n) if n > k]
        else:
            out += [(a, k) for k in range(1, n + 1)]
    return sorted(out)


def lambda_pi_closed(rs: RootSystem, b: Sequence[int]) -> List[Tuple[Vec, int]]:
    """Closed form of ``lambda(pi_b)`` as printed: alpha < 0 with
    ``(b, alpha) > k > 0`` if ``(alpha, b) < 0`` and ``(b, alpha) >= k > 0``
    if ``(alpha, b) > 0``.  (The first clause is empty as written.)"""
    out = []
    for a in rs.roots:
        if rs.is_positive(a):
            continue
        n = sum(p * q for p, q in zip(b, a))
        if n < 0:
            out += [(a, k) for k in range(1, 0) if n > k]
        elif n > 0:
            out += [(a, k) for k in range(1, n + 1)]
    return sorted(out)


# ---------------------------------------------------------- reduced words


def _descent(rs: RootSystem, x: AffElt) -> Optional[int]:
    for j in range(rs.rank + 1):
        root, lev = simple_affine_root(rs, j)
        img, l2 = act_affine_root(rs, x, root, lev)
        if is_negative_affine(img, l2):
            return j
    return None


def reduced_word(rs: RootSystem, x: AffElt) -> Tuple[int, List[int]]:
    """Return ``(r, [j_l, ..., j_1])`` with ``x = pi_r s_{j_l} ... s_{j_1}``
    (greedy right descents)."""
    found = []
    cur = x
    while True:
        j = _descent(rs, cur)
        if j is None:
            break
        found.append(j)
        cur = mul(rs, cur, simple_reflection(rs, j))
    r = pi_index(rs, cur)
    return r, list(reversed(found))


def replay(rs: RootSystem, r: int, word: Sequence[int]) -> AffElt:
    g = pi_element(rs, r)
    for j in word:
        g = mul(rs, g, simple_reflection(rs, j))
    return g


# -------------------------------------------------------- pi_b, omega_b


def decompose_pi_omega(rs: RootSystem, b: Sequence[int]) -> Tuple[AffElt, Mat]:
    """``b = pi_b omega_b`` with ``omega_b(b) = b_-`` of minimal length."""
    om, bm = to_antidominant(rs, b)
    pi = AffElt(mat_inv(rs, om), bm)
    return pi, om


def pi_elements(rs: RootSystem) -> Dict[int, AffElt]:
    c = _cache(rs, "pi")
    if not c:
        c[0] = ident(rs)
        for r in rs.O_star:
            br = tuple(int(i == r - 1) for i in range(rs.rank))
            c[r], _ = decompose_pi_omega(rs, br)
    return c


def pi_element(rs: RootSystem, r: int) -> AffElt:
    return pi_elements(rs)[r]


def pi_index(rs: RootSystem, x: AffElt) -> int:
    for r, p in pi_elements(rs).items():
        if p == x:
            return r
    raise WeylError("length-zero element not in Pi")


def pi_permutation(rs: RootSystem, r: int) -> Dict[int, int]:
    """``j -> j'`` with ``pi_r(alpha_j) = alpha_{j'}``."""
    p = pi_element(rs, r)
    perm = {}
    simples = {simple_affine_root(rs, j): j for j in range(rs.rank + 1)}
    for j in range(rs.rank + 1):
        root, lev = simple_affine_root(rs, j)
        img = act_affine_root(rs, p, root, lev)
        perm[j] = simples[img]
    return perm


def minuscule_data(rs: RootSystem) -> List[dict]:
    """For each r in O*: pi_r, omega_r and r* with ``alpha_{r*} = pi_r^{-1}(alpha_0)``."""
    out = []
    for r in rs.O_star:
        br = tuple(int(i == r - 1) for i in range(rs.rank))
        pi, om = decompose_pi_omega(rs, br)
        perm = pi_permutation(rs, r)
        rstar = next(j for j, k in perm.items() if k == 0)
        out.append({"r": r, "pi": pi, "omega": om, "r_star": rstar, "image_of_0": perm[0]})
    return out


def orbit_extremes(rs: RootSystem, b: Sequence[int]):
    """``(b_-, b_+, omega_b, omega_{-b})`` with ``omega_b(b) = b_-`` and
    ``omega_{-b}(b) = b_+``."""
    om, bm = to_antidominant(rs, b)
    omn, _ = to_antidominant(rs, tuple(-c for c in b))
    bp = mat_vec(omn, b)
    return bm, bp, om, omn


# ------------------------------------------------------------- orderings


def weight_key(rs: RootSystem, c: Sequence[int]):
    """A linear extension of the order ``<=`` (and, via the orbit part, of
    ``preceq``), with lexicographic tie-break."""
    _, cm = to_antidominant(rs, c)
    rw = rs.rho_check
    return (rs.pairing(cm, rw), rs.pairing(c, rw), tuple(c))


def order_leq(rs: RootSystem, b: Sequence[int], c: Sequence[int]) -> bool:
    """``b <= c`` iff ``c - b`` lies in ``A_+``."""
    return rs.in_A_plus(tuple(y - x for x, y in zip(b, c)))


def order_preceq(rs: RootSystem, b: Sequence[int], c: Sequence[int]) -> bool:
    """``b preceq c`` iff ``b_- < c_-`` or (``b_- = c_-`` and ``b <= c``)."""
    _, bm = to_antidominant(rs, b)
    _, cm = to_antidominant(rs, c)
    if bm == cm:
        return order_leq(rs, b, c)
    return order_leq(rs, bm, cm)


def antidominant_above(rs: RootSystem, bm: Sequence[int]) -> List[Vec]:
    """All antidominant ``c`` with ``c - b_-`` in ``A_+`` (``b_-`` included)."""
    rw = rs.rho_check
    start = tuple(bm)
    seen = {start}
    queue = deque([start])
    out = []
    while queue:
        c = queue.popleft()
        if rs.antidominant(c):
            out.append(c)
        for a in rs.simple_coroots:
            d = tuple(x + y for x, y in zip(c, a))
            if d not in seen and rs.pairing(d, rw) <= 0:
                seen.add(d)
                queue.append(d)
    return out


def sigma_sets(rs: RootSystem, b: Sequence[int]):
    """``(sigma(b), sigma_*(b), sigma_+(b))`` sorted by ``weight_key``."""
    b = tuple(b)
    _, bm = to_antidominant(rs, b)
    plus = []
    for cm in antidominant_above(rs, bm):
        if cm != bm:
            plus.extend(orbit(rs, cm))
    same = [c for c in orbit(rs, bm) if order_leq(rs, b, c)]
    key = lambda c: weight_key(rs, c)
    sigma = sorted(set(plus) | set(same), key=key)
    star = [c for c in sigma if c != b]
    return sigma, star, sorted(plus, key=key)


def sigma_plus(rs: RootSystem, b: Sequence[int]) -> List[Vec]:
    return sigma_sets(rs, b)[2]


def wall_cross_classify(rs: RootSystem, b: Sequence[int], root: Sequence[int], level: int):
    """For ``[alpha, k]`` in ``lambda(b)`` return the case label and
    ``c = (b s_[alpha,k])<0> = b - k alpha^vee``."""
    b = tuple(b)
    lam = lambda_set(rs, translation(rs, b))
    if (tuple(root), level) not in lam:
        raise WeylError("affine root not in lambda(b)")
    av = rs.coroot(root)
    c = tuple(x - level * y for x, y in zip(b, av))
    n = sum(p * q for p, q in zip(b, root))
    sa_b = mat_vec(rs.reflection_matrix(root), b)
    pos = rs.is_positive(root)
    sig, _, splus = sigma_sets(rs, b)
    if pos and level == 0:
        case = "c=b"
        assert c == b
    elif pos:
        case = "b>c>s_alpha(b)"
        assert order_leq(rs, c, b) and c != b and order_leq(rs, sa_b, c) and c != sa_b
        assert c in splus
    elif level < n:
        case = "s_alpha(b)>c>b"
        assert order_leq(rs, b, c) and c != b and order_leq(rs, c, sa_b) and c != sa_b
        assert c in splus
    else:
        case = "c=s_alpha(b)>b"
        assert c == sa_b and order_leq(rs, b, c) and c != b
    assert c in sig
    return case, c
