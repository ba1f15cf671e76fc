"""Chevalley bases for sl2/sl3 with exact structure constants and Tits lifts.

The defining representation (2x2 or 3x3 matrices over Q) supplies all
brackets; root vectors are E_ij, the Cartan basis is h_i = E_ii - E_{i+1,i+1}.
The lift of a Weyl group element is conjugation by
n_i = exp(e_i) exp(-f_i) exp(e_i) (or its inverse for the flipped-sign
variant), multiplied along the canonical reduced word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import Root, RootSystem, build_root_system
from .errors import InvalidType
from .weyl import WeylElem, WeylGroup, weyl_group

Mat = tuple[tuple[Fraction, ...], ...]


def _zeros(n: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * n for _ in range(n)]


def _freeze(m) -> Mat:
    return tuple(tuple(row) for row in m)


def _mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return _freeze([[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
                    for i in range(n)])


def _add(a: Mat, b: Mat, sb: int = 1) -> Mat:
    n = len(a)
    return _freeze([[a[i][j] + sb * b[i][j] for j in range(n)] for i in range(n)])


def _commutator(a: Mat, b: Mat) -> Mat:
    return _add(_mul(a, b), _mul(b, a), -1)


def _exp_nilpotent(m: Mat) -> Mat:
    n = len(m)
    out = _freeze([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    term = _freeze([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
    k = 1
    while True:
        term = _mul(term, m)
        if all(all(x == 0 for x in row) for row in term):
            break
        out = _freeze([[out[i][j] + term[i][j] / _factorial(k) for j in range(n)]
                       for i in range(n)])
        k += 1
    return out


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _inverse(m: Mat) -> Mat:
    n = len(m)
    aug = [[m[i][j] for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return _freeze([row[n:] for row in aug])


@dataclass(frozen=True, slots=True)
class BasisElement:
    kind: str  # "e" (root vector) | "h" (Cartan)
    root: Root | None
    index: int  # Cartan index for "h"; position in the root list for "e"


class LieData:
    """sl2 or sl3 with Chevalley basis, brackets, and Weyl lifts."""

    def __init__(self, type_string: str, lift_sign: int = 1):
        rs = build_root_system(type_string)
        if rs.cartan_type.series != "A" or rs.rank > 2:
            raise InvalidType("LieData supports A1 and A2 (sl2, sl3) only")
        self.rs = rs
        self.group = weyl_group(type_string)
        self.lift_sign = lift_sign
        n = rs.rank + 1

        def E(i, j):
            m = _zeros(n)
            m[i][j] = Fraction(1)
            return _freeze(m)

        # root -> matrix; positive root alpha_i+...+alpha_{j-1} is E_ij
        self.root_matrix: dict[Root, Mat] = {}
        for r in rs.all_roots:
            c = r.coords
            i = next(k for k in range(rs.rank) if c[k] != 0)
            j = max(k for k in range(rs.rank) if c[k] != 0) + 1
            if r.is_positive():
                self.root_matrix[r] = E(i, j)
            else:
                self.root_matrix[r] = E(j, i)
        self.cartan_matrix_basis = [
            _add(E(i, i), E(i + 1, i + 1), -1) for i in range(rs.rank)]

        self.elements: list[BasisElement] = []
        for k, r in enumerate(rs.all_roots):
            self.elements.append(BasisElement("e", r, k))
        for i in range(rs.rank):
            self.elements.append(BasisElement("h", None, i))
        self._by_root = {b.root: b for b in self.elements if b.kind == "e"}

        self._lift_cache: dict[tuple, Mat] = {}

    def matrix_of(self, b: BasisElement) -> Mat:
        if b.kind == "e":
            return self.root_matrix[b.root]
        return self.cartan_matrix_basis[b.index]

    def bracket(self, a: BasisElement, b: BasisElement) -> list[tuple[Fraction, BasisElement]]:
        """[a, b] expanded in the Chevalley basis."""
        m = _commutator(self.matrix_of(a), self.matrix_of(b))
        return self.expand(m)

    def expand(self, m: Mat) -> list[tuple[Fraction, BasisElement]]:
        out = []
        n = len(m)
        for b in self.elements:
            if b.kind != "e":
                continue
            bm = self.root_matrix[b.root]
            i, j = next((i, j) for i in range(n) for j in range(n) if bm[i][j] != 0)
            if m[i][j] != 0:
                out.append((m[i][j], b))
        # Cartan part: diagonal d with coefficients c_i = d_1 + ... + d_i
        diag = [m[i][i] for i in range(n)]
        acc = Fraction(0)
        for i in range(self.rs.rank):
            acc += diag[i]
            if acc != 0:
                out.append((acc, self._by_index("h", i)))
        return out

    def _by_index(self, kind: str, i: int) -> BasisElement:
        return next(b for b in self.elements if b.kind == kind and b.index == i)

    # -- Weyl lifts ------------------------------------------------------------

    def lift_matrix(self, w: WeylElem) -> Mat:
        key = (w.word, self.lift_sign)
        got = self._lift_cache.get(key)
        if got is not None:
            return got
        n = self.rs.rank + 1
        out = _freeze([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
        for i in w.word:
            e = self.root_matrix[self.rs.simple_root(i)]
            f = self.root_matrix[-self.rs.simple_root(i)]
            s = self.lift_sign
            ni = _mul(_mul(_exp_nilpotent(_scale(e, s)), _exp_nilpotent(_scale(f, -s))),
                      _exp_nilpotent(_scale(e, s)))
            out = _mul(out, ni)
        self._lift_cache[key] = out
        return out

    def weyl_lift(self, w: WeylElem, b: BasisElement) -> tuple[Fraction, BasisElement]:
        """sigma-hat(x) = n_w x n_w^{-1}; for a root vector the result is a
        single signed basis vector e_{w(root)}."""
        nw = self.lift_matrix(w)
        img = _mul(_mul(nw, self.matrix_of(b)), _inverse(nw))
        terms = self.expand(img)
        if b.kind == "e":
            assert len(terms) == 1, "lift of a root vector must be a root vector"
            coeff, target = terms[0]
            assert abs(coeff) == 1 and target.root == self.group.act_root(w, b.root)
            return coeff, target
        raise ValueError("weyl_lift is defined for root vectors")


def _scale(m: Mat, s) -> Mat:
    return _freeze([[x * s for x in row] for row in m])
