"""Polynomial representation of the double affine Hecke algebra.

Operators are programs (words over the atoms T_i, T_i^{-1}, pi, pi^{-1}),
never matrices; macdonald.py materializes a matrix only on a provably
invariant monomial span.  The affine conventions are

    T_i f = t s_i(f) + (t-1) (s_i f - f)/(X^{alpha_i} - 1),   i = 0..n,
    s_0 X^mu = q^{<mu, theta^vee>} X^{s_theta mu},  X^{alpha_0} = q X^{-theta},
    pi X^mu = q^c X^{w mu}   for pi = t_nu w of length zero.

The divided difference is always computed by exact division, never by
series expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .affine import ExtAffineElem, ExtendedAffineWeyl, affine_weyl
from .cartan import Coweight, RootSystem, Weight
from .groupring import LaurentPoly, divide_shifted, ring_of
from .weyl import WeylElem


@dataclass(frozen=True, slots=True)
class Atom:
    kind: str  # "T" | "Tinv" | "pi" | "piinv"
    i: int | None = None
    pi: ExtAffineElem | None = None


@dataclass(frozen=True, slots=True)
class OperatorWord:
    """Atoms applied right-to-left; words are programs, not canonical forms."""

    atoms: tuple[Atom, ...]


class DahaOps:
    def __init__(self, ext: ExtendedAffineWeyl):
        self.ext = ext
        self.rs = ext.rs
        self.group = ext.group
        self.S = ring_of(self.rs)
        self._theta_vee = self.rs.theta_vee
        self._s_theta = ext.simple_affine(0).w  # finite part of s_0 is s_theta

    # -- affine reflections on the ring ------------------------------------------

    def apply_s(self, i: int, f: LaurentPoly) -> LaurentPoly:
        """s_i for i = 0..n; index 0 is the affine reflection."""
        if i >= 1:
            return f.weyl_act(self.group, self.group.simple(i - 1))
        rs, S = self.rs, self.S
        out = {}
        for mu, c in f.terms.items():
            m = rs.pair_weight_coroot(mu, rs.theta)
            img = self.group.act(self._s_theta, mu)
            coeff = c * S.q_power(m)
            cur = out.get(img)
            out[img] = coeff if cur is None else cur + coeff
        return LaurentPoly(rs, out)

    def _alpha_mono(self, i: int):
        """(weight, scalar) with X^{alpha_i} = scalar * X^{weight}."""
        rs = self.rs
        if i >= 1:
            return rs.root_to_weight(rs.simple_root(i - 1)), self.S.one
        return -rs.root_to_weight(rs.theta), self.S.q_power(1)

    # -- Hecke operators --------------------------------------------------------------

    def apply_T(self, i: int, f: LaurentPoly) -> LaurentPoly:
        t = self.S.t_power(1)
        sf = self.apply_s(i, f)
        w, c = self._alpha_mono(i)
        dd = divide_shifted(sf - f, w, c)
        return sf.scale(t) + dd.scale(t - 1)

    def apply_T_inv(self, i: int, f: LaurentPoly) -> LaurentPoly:
        """T_i^{-1} = t^{-1} T_i + t^{-1} - 1."""
        tinv = self.S.t_power(-1)
        return self.apply_T(i, f).scale(tinv) + f.scale(tinv - 1)

    def apply_pi(self, pi: ExtAffineElem, f: LaurentPoly) -> LaurentPoly:
        rs, S = self.rs, self.S
        out = {}
        for mu, c in f.terms.items():
            img, qexp = self.ext.pi_on_weight(pi, mu)
            coeff = c * S.q_power(qexp)
            cur = out.get(img)
            out[img] = coeff if cur is None else cur + coeff
        return LaurentPoly(rs, out)

    def apply_atom(self, atom: Atom, f: LaurentPoly) -> LaurentPoly:
        if atom.kind == "T":
            return self.apply_T(atom.i, f)
        if atom.kind == "Tinv":
            return self.apply_T_inv(atom.i, f)
        if atom.kind == "pi":
            return self.apply_pi(atom.pi, f)
        if atom.kind == "piinv":
            return self.apply_pi(self.ext.inv(atom.pi), f)
        raise ValueError(atom.kind)

    def apply_word(self, word: OperatorWord, f: LaurentPoly) -> LaurentPoly:
        for atom in reversed(word.atoms):
            f = self.apply_atom(atom, f)
        return f

    def apply_T_word(self, w: WeylElem, f: LaurentPoly) -> LaurentPoly:
        """T_w along the canonical reduced word (indices shifted to 1..n)."""
        for i in reversed(w.word):
            f = self.apply_T(i + 1, f)
        return f

    # -- Y operators --------------------------------------------------------------------

    @lru_cache(maxsize=None)
    def _y_word_dominant(self, nu: Coweight) -> OperatorWord:
        d = self.ext.reduced_translation(nu)
        atoms = [Atom("pi", pi=d.pi)] + [Atom("T", i=i) for i in d.word]
        return OperatorWord(tuple(atoms))

    @lru_cache(maxsize=None)
    def _y_word(self, nu: Coweight) -> OperatorWord:
        """Y^nu via the coordinatewise split nu = nu_+ - nu_-."""
        plus = Coweight(tuple(max(c, 0) for c in nu.coords))
        minus = Coweight(tuple(max(-c, 0) for c in nu.coords))
        atoms: list[Atom] = []
        if any(plus.coords):
            atoms.extend(self._y_word_dominant(plus).atoms)
        if any(minus.coords):
            w = self._y_word_dominant(minus).atoms
            inverse = {"T": "Tinv", "pi": "piinv"}
            atoms.extend(Atom(inverse[a.kind], i=a.i, pi=a.pi) for a in reversed(w))
        return OperatorWord(tuple(atoms))

    def apply_Y(self, nu: Coweight, f: LaurentPoly) -> LaurentPoly:
        return self.apply_word(self._y_word(nu), f)

    # -- partial symmetrizer -----------------------------------------------------------------

    def symmetrize_PJ(self, J: tuple[int, ...], f: LaurentPoly) -> LaurentPoly:
        """P^J f = sum over sigma in W^J of T_sigma f; the result is W^J-symmetric."""
        out = LaurentPoly.zero(self.rs)
        for sigma in self.group.elements(J):
            out = out + self.apply_T_word(sigma, f)
        return out


@lru_cache(maxsize=None)
def daha(type_string: str) -> DahaOps:
    return DahaOps(affine_weyl(type_string))
