"""Static data of a reduced irreducible root system.

Conventions
-----------
Long roots have squared length 2.  Simple roots are ``alpha_1..alpha_n``
(Bourbaki numbering), ``a_i = 2 alpha_i / (alpha_i, alpha_i)`` are the simple
coroots and ``b_1..b_n`` the dual fundamental weights, ``(b_i, alpha_j) =
delta_ij``.  The coroot lattice ``A`` sits inside the coweight lattice ``B``.

Two coordinate systems are used throughout the package:

* roots are integer vectors in the basis of simple roots ("alpha-coords");
* weights (elements of ``B``, and of ``B (x) Q``) are vectors in the basis
  ``b_1..b_n`` ("b-coords").  An element of ``B`` has integer b-coords.

With these choices ``(b, alpha) = dot(b_coords, alpha_coords)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Sequence, Tuple

Vec = Tuple[int, ...]
QVec = Tuple[Fraction, ...]
Mat = Tuple[Tuple[int, ...], ...]

MAX_RANK = 8


class RootSystemError(ValueError):
    """Invalid family/rank pair or inconsistent root data."""


def _gram_matrix(family: str, n: int) -> List[List[Fraction]]:
    """Gram matrix ``(alpha_i, alpha_j)`` with long roots of length 2."""
    F = Fraction
    G = [[F(0)] * n for _ in range(n)]

    def link(i, j, val):
        G[i][j] = G[j][i] = F(val)

    if family == "A":
        for i in range(n):
            G[i][i] = F(2)
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif family == "B":
        for i in range(n - 1):
            G[i][i] = F(2)
        G[n - 1][n - 1] = F(1)
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif family == "C":
        for i in range(n - 1):
            G[i][i] = F(1)
        G[n - 1][n - 1] = F(2)
        for i in range(n - 2):
            link(i, i + 1, F(-1, 2))
        link(n - 2, n - 1, -1)
    elif family == "D":
        for i in range(n):
            G[i][i] = F(2)
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif family == "E":
        for i in range(n):
            G[i][i] = F(2)
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif family == "F":
        G[0][0] = G[1][1] = F(2)
        G[2][2] = G[3][3] = F(1)
        link(0, 1, -1)
        link(1, 2, -1)
        link(2, 3, F(-1, 2))
    elif family == "G":
        G[0][0] = F(2, 3)
        G[1][1] = F(2)
        link(0, 1, -1)
    return G


def _valid(family: str, n: int) -> bool:
    if not isinstance(n, int) or n < 1 or n > MAX_RANK:
        return False
    return {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(family, False)


def _mat_inverse(M: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(M)
    A = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def _det(M: List[List[Fraction]]) -> Fraction:
    n = len(M)
    A = [list(r) for r in M]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


def mat_mul(M: Mat, N: Mat) -> Mat:
    n = len(M)
    return tuple(
        tuple(sum(M[i][k] * N[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def mat_vec(M: Mat, v: Sequence) -> tuple:
    return tuple(sum(r * x for r, x in zip(row, v)) for row in M)


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class Root:
    """A finite root in alpha-coords, with its squared length."""

    coords: Vec
    length_class: Fraction

    @property
    def positive(self) -> bool:
        return any(c > 0 for c in self.coords)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), self.length_class)


@dataclass(frozen=True)
class AffineRoot:
    """``[alpha, k]``; positive iff ``k > 0`` or ``k = 0`` and ``alpha > 0``."""

    finite: Vec
    level: int

    @property
    def positive(self) -> bool:
        return self.level > 0 or (self.level == 0 and any(c > 0 for c in self.finite))


@dataclass
class RootSystem:
    family: str
    rank: int
    gram: List[List[Fraction]] = field(repr=False)

    def __post_init__(self):
        n = self.rank
        self.cartan: List[List[int]] = [
            [int(2 * self.gram[i][j] / self.gram[i][i]) for j in range(n)] for i in range(n)
        ]
        self.gram_inv = _mat_inverse(self.gram)
        self._check_cartan()
        self.positive_roots: List[Vec] = self._generate_roots()
        self._pos_set = frozenset(self.positive_roots)
        self.theta: Vec = max(self.positive_roots, key=lambda r: (sum(r), r))
        self.length_classes: List[Fraction] = sorted(
            {self.root_length(r) for r in self.positive_roots}, reverse=True
        )
        self.simple_lengths: List[Fraction] = [self.gram[i][i] for i in range(n)]

    # ------------------------------------------------------------------ basics
    def _check_cartan(self):
        for i in range(self.rank):
            for j in range(self.rank):
                if 2 * self.gram[i][j] / self.gram[i][i] != self.cartan[i][j]:
                    raise RootSystemError("non-integral Cartan entry")

    def _generate_roots(self) -> List[Vec]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(n):
                    c = sum(beta[j] * self.cartan[i][j] for j in range(n))
                    img = tuple(beta[j] - (c if j == i else 0) for j in range(n))
                    if any(x > 0 for x in img) and img not in found:
                        found.add(img)
                        new.append(img)
            frontier = new
        return sorted(found, key=lambda r: (sum(r), r))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def pairing(self, x: Sequence, y: Sequence, kinds: str = "bb") -> Fraction:
        """Euclidean form.  ``kinds`` gives the coordinate system of each
        argument: ``"b"`` for b-coords, ``"a"`` for alpha-coords."""
        if len(x) != self.rank or len(y) != self.rank:
            raise RootSystemError("dimension mismatch")
        if kinds == "ba" or kinds == "ab":
            return Fraction(sum(Fraction(p) * q for p, q in zip(x, y)))
        M = self.gram_inv if kinds == "bb" else self.gram
        return sum(
            (Fraction(x[i]) * M[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def root_length(self, alpha: Sequence[int]) -> Fraction:
        return self.pairing(alpha, alpha, "aa")

    def is_root(self, alpha: Sequence[int]) -> bool:
        a = tuple(alpha)
        return a in self._pos_set or tuple(-x for x in a) in self._pos_set

    def is_positive(self, alpha: Sequence) -> bool:
        return any(x > 0 for x in alpha)

    @cached_property
    def roots(self) -> List[Vec]:
        return self.positive_roots + [tuple(-x for x in r) for r in self.positive_roots]

    # ---------------------------------------------------------- conversions
    def root_to_b(self, alpha: Sequence) -> QVec:
        """b-coords of a vector given in alpha-coords."""
        n = self.rank
        return tuple(sum(Fraction(alpha[j]) * self.gram[j][i] for j in range(n)) for i in range(n))

    def b_to_root(self, z: Sequence) -> QVec:
        n = self.rank
        return tuple(sum(Fraction(z[j]) * self.gram_inv[j][i] for j in range(n)) for i in range(n))

    def coroot(self, alpha: Sequence[int]) -> Vec:
        """b-coords of ``alpha^vee = 2 alpha / (alpha, alpha)``."""
        nu = self.root_length(alpha)
        out = tuple(2 * x / nu for x in self.root_to_b(alpha))
        assert all(x.denominator == 1 for x in out)
        return tuple(int(x) for x in out)

    @cached_property
    def simple_coroots(self) -> List[Vec]:
        return [tuple(self.cartan[i]) for i in range(self.rank)]

    @cached_property
    def coweights(self) -> List[Vec]:
        n = self.rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    # ------------------------------------------------------------- lattices
    @cached_property
    def pi_order(self) -> int:
        d = _det([[Fraction(x) for x in row] for row in self.cartan])
        assert d.denominator == 1
        return int(d)

    def in_A(self, b: Sequence[int]) -> bool:
        """Exact membership of a b-coords vector in the coroot lattice."""
        sol = self.coords_in_A(b)
        return all(x.denominator == 1 for x in sol)

    def coords_in_A(self, b: Sequence) -> QVec:
        """Coefficients of ``b`` in the basis ``a_1..a_n``."""
        inv = self._cartan_t_inv
        return tuple(sum(inv[i][j] * Fraction(b[j]) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def _cartan_t_inv(self):
        Ct = [[Fraction(self.cartan[j][i]) for j in range(self.rank)] for i in range(self.rank)]
        return _mat_inverse(Ct)

    def in_A_plus(self, b: Sequence[int]) -> bool:
        sol = self.coords_in_A(b)
        return all(x.denominator == 1 and x >= 0 for x in sol)

    # ---------------------------------------------------------------- m, rho
    @cached_property
    def m(self) -> int:
        f, n = self.family, self.rank
        if f == "D" and n % 2 == 0:
            return 2
        if f == "C":
            return 2 if n % 2 == 1 else 1
        if f == "B":
            return 1
        return self.pi_order

    def nu_of(self, i: int) -> Fraction:
        return self.simple_lengths[i]

    @cached_property
    def r_by_length(self) -> Dict[Fraction, Vec]:
        return {
            nu: tuple(int(self.simple_lengths[i] == nu) for i in range(self.rank))
            for nu in self.length_classes
        }

    @cached_property
    def rho_by_length(self) -> Dict[Fraction, QVec]:
        return {nu: tuple(nu / 2 * x for x in r) for nu, r in self.r_by_length.items()}

    @cached_property
    def rho_check(self) -> Vec:
        """``sum_i b_i``: pairs positively with every positive coroot."""
        return tuple(1 for _ in range(self.rank))

    # ------------------------------------------------------------- Weyl data
    def reflection_matrix(self, alpha: Sequence[int]) -> Mat:
        """Matrix of ``s_alpha`` acting on b-coords."""
        av = self.coroot(alpha)
        n = self.rank
        # s(b) = b - (b, alpha) alpha^vee ; (b, alpha) = dot(b, alpha)
        return tuple(
            tuple(int(i == j) - av[i] * alpha[j] for j in range(n)) for i in range(n)
        )

    @cached_property
    def simple_reflections(self) -> List[Mat]:
        n = self.rank
        return [self.reflection_matrix(tuple(int(i == j) for j in range(n))) for i in range(n)]

    def act_on_root(self, M: Mat, alpha: Sequence[int]) -> Vec:
        """``w(alpha)`` in alpha-coords for ``w`` given by its b-coords matrix."""
        img = mat_vec(M, self.root_to_b(alpha))
        out = self.b_to_root(img)
        assert all(x.denominator == 1 for x in out)
        return tuple(int(x) for x in out)

    @cached_property
    def weyl_group(self) -> List[Mat]:
        """All elements of ``W`` as b-coords matrices (BFS order from id)."""
        if len(self.positive_roots) > 40:
            raise RootSystemError("finite Weyl group enumeration limited to small ranks")
        e = identity(self.rank)
        seen = {e: None}
        order = [e]
        frontier = [e]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.simple_reflections:
                    ws = mat_mul(w, s)
                    if ws not in seen:
                        seen[ws] = None
                        order.append(ws)
                        nxt.append(ws)
            frontier = nxt
        return order

    def antidominant(self, b: Sequence[int]) -> bool:
        return all(x <= 0 for x in b)

    def dominant(self, b: Sequence[int]) -> bool:
        return all(x >= 0 for x in b)

    @cached_property
    def longest_element(self) -> Mat:
        # w0 sends rho_check to -rho_check
        from .weyl import to_antidominant

        w, _ = to_antidominant(self, self.rho_check)
        return w

    # --------------------------------------------------------- minuscule
    @cached_property
    def O_star(self) -> List[int]:
        """Indices r (1-based) with b_r minuscule."""
        return [i + 1 for i in range(self.rank) if self.theta[i] == 1]

    def summary(self) -> dict:
        nus = {str(nu): list(map(str, r)) for nu, r in self.rho_by_length.items()}
        return {
            "type": self.name,
            "rank": self.rank,
            "cartan": self.cartan,
            "gram": [[str(x) for x in row] for row in self.gram],
            "positive_roots": [list(r) for r in self.positive_roots],
            "theta": list(self.theta),
            "length_classes": [str(x) for x in self.length_classes],
            "m": self.m,
            "pi_order": self.pi_order,
            "O_star": self.O_star,
            "rho_by_length": nus,
        }


_CACHE: Dict[Tuple[str, int], RootSystem] = {}


def build_root_system(family: str, rank: int) -> RootSystem:
    """Build (and cache) the root system of type ``family`` and ``rank``."""
    family = str(family).upper()
    if not _valid(family, rank):
        raise RootSystemError(f"invalid root system type {family}{rank}")
    key = (family, rank)
    if key not in _CACHE:
        _CACHE[key] = RootSystem(family, rank, _gram_matrix(family, rank))
    return _CACHE[key]


def parse_type(text: str, rank: int | None = None) -> RootSystem:
    """Accept ``"A2"`` or ``("A", 2)`` style type names."""
    text = text.strip()
    if rank is None:
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse root system {text!r}")
        return build_root_system(text[0], int(text[1:]))
    return build_root_system(text, rank)


def small_weights(rs: RootSystem, radius: int) -> List[Vec]:
    """All weights with every b-coordinate in ``[-radius, radius]``."""
    return [tuple(c) for c in product(range(-radius, radius + 1), repeat=rs.rank)]
