"""Finite root-system data for types A-G.

Coordinate conventions, used everywhere downstream:

* a Weight is stored in fundamental-weight coordinates, l_i = <lam, alpha_i^vee>;
* a Coweight is stored in fundamental-coweight coordinates, c_i = <alpha_i, nu>;
* a Root is stored in simple-root coordinates.

All three are integer vectors.  The Cartan matrix is C[i][j] = <alpha_j,
alpha_i^vee> (row i pairs the i-th simple coroot against the simple roots),
and every conversion below is exact rational arithmetic on top of it.  The
W-invariant symmetric form (.,.) is normalized so that (theta, theta) = 2
for the highest root theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import InvalidType

_SERIES_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# |Phi_+| per type, used as a construction invariant.
_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True, slots=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        ok = _SERIES_RANKS.get(self.series)
        if ok is None or not ok(self.rank):
            raise InvalidType(f"inadmissible Cartan type {self.series}{self.rank}")

    @staticmethod
    def parse(s: str) -> "CartanType":
        """Parse strings like "A2", "b2", "D4" (case-insensitive)."""
        s = s.strip()
        if len(s) < 2 or not s[1:].isdigit():
            raise InvalidType(f"cannot parse Cartan type {s!r}")
        return CartanType(s[0].upper(), int(s[1:]))

    def __str__(self):
        return f"{self.series}{self.rank}"


@dataclass(frozen=True, slots=True)
class Weight:
    coords: tuple[int, ...]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.coords) + ")"


@dataclass(frozen=True, slots=True)
class Coweight:
    coords: tuple[int, ...]

    def __add__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return Coweight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "Coweight":
        return Coweight(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


@dataclass(frozen=True, slots=True)
class Root:
    coords: tuple[int, ...]

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coords))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def is_positive(self) -> bool:
        return any(self.coords) and all(a >= 0 for a in self.coords)

    def is_negative(self) -> bool:
        return any(self.coords) and all(a <= 0 for a in self.coords)

    def height(self) -> int:
        return sum(self.coords)


def _cartan_matrix(ct: CartanType) -> list[list[int]]:
    """Cartan matrix C[i][j] = <alpha_j, alpha_i^vee>, Bourbaki numbering."""
    n = ct.rank
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    s = ct.series
    if s in ("A", "B", "C"):
        for i in range(n - 1):
            join(i, i + 1)
        if s == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            join(n - 2, n - 1, cij=-1, cji=-2)
        if s == "C" and n >= 2:
            # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
            join(n - 2, n - 1, cij=-2, cji=-1)
    elif s == "D":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 3, n - 1)
    elif s == "E":
        # chain 1-3-4-5-..., node 2 attached to node 4 (Bourbaki)
        chain = [0] + list(range(2, n))
        for a, b in zip(chain, chain[1:]):
            join(a, b)
        join(1, 3)
    elif s == "F":
        join(0, 1)
        join(1, 2, cij=-1, cji=-2)  # alpha_3 short
        join(2, 3)
    elif s == "G":
        # alpha_1 short, alpha_2 long
        join(0, 1, cij=-3, cji=-1)
    return C


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class RootSystem:
    """Immutable root-system data; all operations are pure.

    Attributes of note: ``cartan`` (C[i][j] = <alpha_j, alpha_i^vee>),
    ``positive_roots`` (simple-root coordinates, by ascending height),
    ``theta``, ``rho``, ``rho_vee``, ``e`` (the least integer clearing all
    <omega_i, omega_j^vee>), and ``d`` with d_i = (alpha_i, alpha_i)/2.
    """

    def __init__(self, ct: CartanType):
        self.cartan_type = ct
        self.rank = n = ct.rank
        self.cartan = C = _cartan_matrix(ct)
        # M[i][j] = <omega_i, omega_j^vee>; M = (C^T)^{-1}
        Ct = [[Fraction(C[j][i]) for j in range(n)] for i in range(n)]
        self.omega_pairings = M = _invert(Ct)
        self.cartan_inv = _invert([[Fraction(x) for x in row] for row in C])
        self.e = lcm(*(x.denominator for row in M for x in row), 1)

        self.positive_roots = self._enumerate_positive()
        expected = _POSITIVE_COUNTS[ct.series](n)
        if len(self.positive_roots) != expected:
            raise InvalidType(
                f"{ct}: got {len(self.positive_roots)} positive roots, expected {expected}")
        self._pos_set = {r.coords for r in self.positive_roots}
        self.theta = self.positive_roots[-1]
        if any(self.is_root(self.theta + self.simple_root(i)) for i in range(n)):
            raise InvalidType(f"{ct}: highest root is not highest")

        # Root lengths: solve d_j C[j][i] = d_i C[i][j] on the Dynkin graph,
        # then scale so (theta, theta) = 2.
        d = [Fraction(0)] * n
        d[0] = Fraction(1)
        todo = [0]
        while todo:
            i = todo.pop()
            for j in range(n):
                if C[i][j] != 0 and i != j and d[j] == 0:
                    d[j] = d[i] * C[i][j] / C[j][i]
                    todo.append(j)
        tt = self._form_with_d(self.theta, self.theta, d)
        self.d = [x * 2 / tt for x in d]

        self.rho = Weight((1,) * n)
        self.rho_vee = Coweight((1,) * n)
        self.two_rho = self.root_to_weight(
            Root(tuple(sum(r.coords[i] for r in self.positive_roots) for i in range(n))))

    # -- construction helpers -------------------------------------------------

    def _enumerate_positive(self) -> list[Root]:
        n = self.rank
        simples = [Root(tuple(int(i == j) for j in range(n))) for i in range(n)]
        known = {r.coords for r in simples} | {(-r).coords for r in simples}
        by_height = {1: [r for r in simples]}
        h = 1
        while by_height.get(h):
            nxt = []
            for r in by_height[h]:
                for i in range(n):
                    cand = r + simples[i]
                    if cand.coords in known:
                        continue
                    # alpha_i-string through r: r + alpha_i is a root iff
                    # q - <r, alpha_i^vee> > 0, q = down-steps available.
                    q = 0
                    probe = r - simples[i]
                    while probe.coords in known or (-probe).coords in known:
                        q += 1
                        probe = probe - simples[i]
                    if q - self.pair_root_coroot(r, i) > 0:
                        known.add(cand.coords)
                        known.add((-cand).coords)
                        nxt.append(cand)
            h += 1
            if nxt:
                by_height[h] = nxt
        out = []
        for hh in sorted(by_height):
            out.extend(sorted(by_height[hh], key=lambda r: r.coords))
        return out

    def _form_with_d(self, a: Root, b: Root, d) -> Fraction:
        C = self.cartan
        n = self.rank
        return sum(Fraction(a.coords[i]) * b.coords[j] * d[j] * C[j][i]
                   for i in range(n) for j in range(n))

    # -- basic data ------------------------------------------------------------

    def simple_root(self, i: int) -> Root:
        return Root(tuple(int(i == j) for j in range(self.rank)))

    def fundamental_weight(self, i: int) -> Weight:
        return Weight(tuple(int(i == j) for j in range(self.rank)))

    def fundamental_coweight(self, i: int) -> Coweight:
        return Coweight(tuple(int(i == j) for j in range(self.rank)))

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.rank)

    def is_root(self, r: Root) -> bool:
        return r.coords in self._pos_set or (-r).coords in self._pos_set

    @property
    def all_roots(self) -> list[Root]:
        return self.positive_roots + [-r for r in self.positive_roots]

    # -- conversions -----------------------------------------------------------

    def root_to_weight(self, r: Root) -> Weight:
        """Weight coordinates of a root: l_i = <r, alpha_i^vee>."""
        C = self.cartan
        return Weight(tuple(sum(C[i][j] * r.coords[j] for j in range(self.rank))
                            for i in range(self.rank)))

    def weight_to_root_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        """Express a weight in the simple-root basis (rational in general)."""
        Ci = self.cartan_inv
        return tuple(sum(Ci[i][j] * lam.coords[j] for j in range(self.rank))
                     for i in range(self.rank))

    def coroot(self, r: Root) -> Coweight:
        """The coroot r^vee = 2r/(r,r) as an (integral) coweight."""
        coords = []
        rr = self.form_roots(r, r)
        for i in range(self.rank):
            c = 2 * self.form_roots(self.simple_root(i), r) / rr
            if c.denominator != 1:
                raise InvalidType(f"non-integral coroot for {r}")
            coords.append(int(c))
        return Coweight(tuple(coords))

    @property
    def theta_vee(self) -> Coweight:
        return self.coroot(self.theta)

    # -- pairings --------------------------------------------------------------

    def pair(self, lam: Weight, nu: Coweight) -> Fraction:
        """Canonical pairing <lam, nu>, a rational with denominator dividing e."""
        M = self.omega_pairings
        return sum(Fraction(lam.coords[i]) * M[i][j] * nu.coords[j]
                   for i in range(self.rank) for j in range(self.rank))

    def pair_root_coweight(self, r: Root, nu: Coweight) -> int:
        """<alpha, nu> for a root alpha; always an integer."""
        return sum(r.coords[i] * nu.coords[i] for i in range(self.rank))

    def pair_root_coroot(self, r: Root, i: int) -> int:
        """<r, alpha_i^vee> for r in root coordinates."""
        return sum(self.cartan[i][j] * r.coords[j] for j in range(self.rank))

    def pair_weight_coroot(self, lam: Weight, r: Root) -> int:
        """<lam, r^vee> for any root r."""
        v = self.coroot(r)
        p = self.pair(lam, v)
        assert p.denominator == 1
        return int(p)

    def form_roots(self, a: Root, b: Root) -> Fraction:
        """Invariant form (a,b) on the root lattice, (theta,theta) = 2."""
        return self._form_with_d(a, b, self.d)

    def form_weights(self, lam: Weight, mu: Weight) -> Fraction:
        """Invariant form on weights: (lam, mu) = sum_j d_j l_j x_j(mu)."""
        x = self.weight_to_root_coords(mu)
        return sum(self.d[j] * lam.coords[j] * x[j] for j in range(self.rank))

    # -- order relations --------------------------------------------------------

    def dominance_leq(self, lam: Weight, mu: Weight) -> bool:
        """lam <= mu iff mu - lam is a nonnegative integer sum of simple roots.

        Weights in different Q-cosets are incomparable (returns False).
        """
        diff = self.weight_to_root_coords(mu - lam)
        return all(x.denominator == 1 and x >= 0 for x in diff)

    def height1(self, lam: Weight) -> Fraction:
        """Sum of |root coordinates|; the support-radius measure for kernels."""
        return sum(abs(x) for x in self.weight_to_root_coords(lam))


@lru_cache(maxsize=None)
def build_root_system(type_string: str) -> RootSystem:
    """Build (and cache) the root system for a type string like "A2"."""
    return RootSystem(CartanType.parse(type_string))


def pair(rs: RootSystem, lam: Weight, nu: Coweight) -> Fraction:
    return rs.pair(lam, nu)


def dominance_leq(rs: RootSystem, lam: Weight, mu: Weight) -> bool:
    return rs.dominance_leq(lam, mu)
