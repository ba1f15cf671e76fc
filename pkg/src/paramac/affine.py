"""Extended affine Weyl group W ltimes P^vee.

Elements are pairs x = t_nu w with composition (nu, w)(nu', w') =
(nu + w nu', w w').  The action on affine roots is
t_nu w (alpha, k) = (w alpha, k - <w alpha, nu>), so in particular
s_0 = t_{theta^vee} s_theta and X^delta = q downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import Coweight, Root, RootSystem, Weight
from .errors import NotLengthZero
from .weyl import WeylElem, WeylGroup, weyl_group


@dataclass(frozen=True, slots=True)
class AffineRoot:
    root: Root
    k: int

    def is_positive(self) -> bool:
        return self.k > 0 or (self.k == 0 and self.root.is_positive())

    def is_negative(self) -> bool:
        return self.k < 0 or (self.k == 0 and self.root.is_negative())


@dataclass(frozen=True, slots=True)
class ExtAffineElem:
    nu: Coweight
    w: WeylElem


@dataclass(frozen=True, slots=True)
class ReducedDecomp:
    pi: ExtAffineElem
    word: tuple[int, ...]  # indices over {0, 1, .., n}


class ExtendedAffineWeyl:
    def __init__(self, group: WeylGroup):
        self.group = group
        self.rs = group.rs

    def identity(self) -> ExtAffineElem:
        return ExtAffineElem(Coweight((0,) * self.rs.rank), self.group.identity)

    def translation(self, nu: Coweight) -> ExtAffineElem:
        return ExtAffineElem(nu, self.group.identity)

    def from_finite(self, w: WeylElem) -> ExtAffineElem:
        return ExtAffineElem(Coweight((0,) * self.rs.rank), w)

    def mul(self, x: ExtAffineElem, y: ExtAffineElem) -> ExtAffineElem:
        return ExtAffineElem(x.nu + self.group.act_coweight(x.w, y.nu),
                             self.group.mul(x.w, y.w))

    def inv(self, x: ExtAffineElem) -> ExtAffineElem:
        winv = self.group.inv(x.w)
        return ExtAffineElem(-self.group.act_coweight(winv, x.nu), winv)

    def simple_affine(self, i: int) -> ExtAffineElem:
        """s_i for i in {0..n}; s_0 = t_{theta^vee} s_theta."""
        if i >= 1:
            return self.from_finite(self.group.simple(i - 1))
        rs = self.rs
        s_theta = self._reflection(rs.theta)
        return ExtAffineElem(rs.theta_vee, s_theta)

    def _reflection(self, r: Root) -> WeylElem:
        lam_minus, sig = self.group.antidominant(self.rs.root_to_weight(r))
        # s_r = sig s_{r_-} sig^{-1} would need the simple index of -r_-;
        # easier: search the (small) group once.
        for w in self.group.elements():
            if w.length() % 2 == 1 and self.group.act_root(w, r) == -r:
                fixed = all(self.group.act_root(w, s) == s
                            for s in self.rs.positive_roots
                            if self.rs.form_roots(s, r) == 0)
                if fixed and self._is_reflection_matrix(w, r):
                    return w
        raise AssertionError(f"no reflection found for {r}")

    def _is_reflection_matrix(self, w: WeylElem, r: Root) -> bool:
        rs = self.rs
        rw = rs.root_to_weight(r)
        for i in range(rs.rank):
            om = rs.fundamental_weight(i)
            expected = om - rs.pair_weight_coroot(om, r) * rw
            if self.group.act(w, om) != expected:
                return False
        return True

    def affine_simple_root(self, i: int) -> AffineRoot:
        if i >= 1:
            return AffineRoot(self.rs.simple_root(i - 1), 0)
        return AffineRoot(-self.rs.theta, 1)

    # -- actions ------------------------------------------------------------

    def act_affine(self, x: ExtAffineElem, r: AffineRoot) -> AffineRoot:
        img = self.group.act_root(x.w, r.root)
        return AffineRoot(img, r.k - self.rs.pair_root_coweight(img, x.nu))

    def length(self, x: ExtAffineElem) -> int:
        """Number of positive affine roots sent negative:
        sum over alpha > 0 of |<w alpha, nu>| if w alpha > 0 else |<w alpha, nu> + 1|.
        """
        total = 0
        for alpha in self.rs.positive_roots:
            beta = self.group.act_root(x.w, alpha)
            m = self.rs.pair_root_coweight(beta, x.nu)
            total += abs(m) if beta.is_positive() else abs(m + 1)
        return total

    # -- reduced decompositions ---------------------------------------------

    def reduced_translation(self, nu: Coweight) -> ReducedDecomp:
        return self.reduced_decomp(self.translation(nu))

    def reduced_decomp(self, x: ExtAffineElem) -> ReducedDecomp:
        """Greedy right-descent peeling: while some affine simple alpha_i is
        sent negative (least i first), strip s_i on the right.  The residue is
        the length-zero pi part, and x = pi * s_{i_1} ... s_{i_l}.
        """
        word: list[int] = []
        cur = x
        while True:
            i = next((i for i in range(self.rs.rank + 1)
                      if self.act_affine(cur, self.affine_simple_root(i)).is_negative()),
                     None)
            if i is None:
                break
            cur = self.mul(cur, self.simple_affine(i))
            word.insert(0, i)
        assert self.length(cur) == 0
        assert len(word) == self.length(x)
        return ReducedDecomp(cur, tuple(word))

    # -- length-zero elements --------------------------------------------------

    def pi_on_weight(self, pi: ExtAffineElem, lam: Weight) -> tuple[Weight, Fraction]:
        """(w lam, c) with pi X^lam = q^c X^{w lam}; c = -<w lam, nu> in (1/e)Z."""
        if self.length(pi) != 0:
            raise NotLengthZero(f"element has length {self.length(pi)}")
        img = self.group.act(pi.w, lam)
        return img, -self.rs.pair(img, pi.nu)

    def pi_diagram_permutation(self, pi: ExtAffineElem) -> dict[int, int]:
        """The induced permutation of affine simple roots (a diagram automorphism)."""
        out = {}
        for i in range(self.rs.rank + 1):
            img = self.act_affine(pi, self.affine_simple_root(i))
            j = next((j for j in range(self.rs.rank + 1)
                      if self.affine_simple_root(j) == img), None)
            assert j is not None, "length-zero element must permute simple affine roots"
            out[i] = j
        return out


def affine_weyl(type_string: str) -> ExtendedAffineWeyl:
    return ExtendedAffineWeyl(weyl_group(type_string))
