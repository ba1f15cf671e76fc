"""Nonsymmetric and parasymmetric Macdonald polynomials.

nonsym_E solves the triangular Y-eigenproblem on the monomial span of a
Cherednik lower set: the matrix of Y^nu in that basis is upper triangular
(basis listed in the fixed linear extension, the target weight last), its
diagonal is the spectral values, and back-substitution with a shared
denominator chain yields the exact eigenvector.

parasym_E evaluates the full Hecke symmetrizer formula and the
minimal-coset-representative formula and insists they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import Coweight, RootSystem, Weight
from .daha import DahaOps, daha
from .errors import (EigenvalueCollision, FormulaMismatch, NotJAntidominant,
                     SingularSystem, TriangularityViolation)
from .groupring import LaurentPoly, ring_of
from .scalars import QT
from .weyl import check_J_antidominant

_NU_SEARCH_FACTOR = 10  # safety bound: at most 10*|lower set| candidate directions


@dataclass(frozen=True, slots=True)
class SpectralVector:
    q_exp: Fraction
    t_exp: int


@dataclass
class MacdonaldResult:
    lam: Weight
    J: tuple[int, ...]
    poly: LaurentPoly
    algorithm: str  # "eigen" | "symmetrizer" | "gram-schmidt"


def spectral(ops: DahaOps, mu: Weight, nu: Coweight) -> SpectralVector:
    """Eigenvalue data of Y^nu on E_mu: q-exponent -<mu, nu> and t-exponent
    <rho + sigma_mu(rho), nu>.

    The t-exponent form is pinned by the calibration anchor
    t_exp(0, nu) = l(t_nu) for dominant nu and extended W-equivariantly;
    nonsym_E asserts it against the actual matrix diagonal on every run.
    """
    rs = ops.rs
    _, sig = ops.group.antidominant(mu)
    g = rs.rho + ops.group.act(sig, rs.rho)
    texp = rs.pair(g, nu)
    assert texp.denominator == 1
    return SpectralVector(-rs.pair(mu, nu), int(texp))


def spectral_scalar(ops: DahaOps, sv: SpectralVector) -> QT:
    return ops.S.q_power(sv.q_exp) * ops.S.t_power(sv.t_exp)


class MacdonaldEngine:
    def __init__(self, ops: DahaOps):
        self.ops = ops
        self.rs = ops.rs
        self.group = ops.group
        self.S = ops.S
        self._cache: dict[Weight, MacdonaldResult] = {}
        self._cache_J: dict[tuple, MacdonaldResult] = {}

    # -- orbit sums -----------------------------------------------------------

    def orbit_sum(self, J: tuple[int, ...], lam: Weight) -> LaurentPoly:
        """m^J_lam: multiplicity-free sum of X^mu over the W^J-orbit of lam."""
        check_J_antidominant(lam, J)
        orbit = {self.group.act(w, lam) for w in self.group.elements(J)}
        one = self.S.one
        return LaurentPoly(self.rs, {mu: one for mu in orbit})

    # -- nonsymmetric polynomials ------------------------------------------------

    def _separating_coweight(self, lower: list[Weight]) -> tuple[Coweight, list[SpectralVector]]:
        """Deterministic search nu_c = sum_i c^{i-1} omega_i^vee, c = 1, 2, ...;
        c = 1 is rho^vee.  Scaling rho^vee alone cannot split collisions (both
        exponents are linear in nu), so the search walks a generic line instead.
        """
        n = self.rs.rank
        bound = max(_NU_SEARCH_FACTOR * len(lower), 4)
        for c in range(1, bound + 1):
            nu = Coweight(tuple(c ** i for i in range(n)))
            specs = [spectral(self.ops, mu, nu) for mu in lower]
            if len({(s.q_exp, s.t_exp) for s in specs}) == len(specs):
                return nu, specs
        raise EigenvalueCollision(
            f"no separating coweight among {bound} candidates (convention bug?)")

    def nonsym_E(self, lam: Weight) -> MacdonaldResult:
        if lam in self._cache:
            return self._cache[lam]
        lower = self.group.lower_set(lam)
        assert lower[-1] == lam
        index = {mu: k for k, mu in enumerate(lower)}
        nu, specs = self._separating_coweight(lower)

        # columns of Y^nu on the monomial span
        columns: list[dict[int, QT]] = []
        for j, mu in enumerate(lower):
            img = self.ops.apply_Y(nu, LaurentPoly.monomial(self.rs, mu))
            col: dict[int, QT] = {}
            for w, cf in img.terms.items():
                if w not in index:
                    raise TriangularityViolation(
                        f"Y^nu X^{mu} has weight {w} outside lower_set({lam})")
                i = index[w]
                if i > j:
                    raise TriangularityViolation(
                        f"Y^nu X^{mu} hit {w}, above {mu} in the linear extension")
                col[i] = cf
            diag = col.get(j, self.S.zero)
            if diag != spectral_scalar(self.ops, specs[j]):
                raise TriangularityViolation(
                    f"diagonal at {mu} is {diag}, spectral formula disagrees")
            columns.append(col)

        # back-substitution for the eigenvector at lam, kept over a shared
        # denominator chain D_i = prod_{k >= i} (diag_k - eig) so that all
        # intermediate arithmetic is polynomial.
        m = len(lower)
        eig = spectral_scalar(self.ops, specs[-1])
        diffs = [spectral_scalar(self.ops, specs[i]) - eig for i in range(m - 1)]
        numer: list[QT] = [self.S.zero] * m
        denom_suffix: list[QT] = [self.S.one] * (m + 1)  # D_{i} = prod_{k=i..m-2} diffs[k]
        for i in range(m - 2, -1, -1):
            denom_suffix[i] = diffs[i] * denom_suffix[i + 1]
        numer[m - 1] = self.S.one
        for i in range(m - 2, -1, -1):
            acc = self.S.zero
            for j in range(i + 1, m):
                cf = columns[j].get(i)
                if cf is None:
                    continue
                # numer[j]/D_j scaled to denominator D_{i+1}
                scale = self.S.one
                for k in range(i + 1, j):
                    scale = scale * diffs[k]
                acc = acc + cf * numer[j] * scale
            numer[i] = -acc
        terms = {lam: self.S.one}
        for i in range(m - 1):
            if not numer[i].is_zero():
                terms[lower[i]] = numer[i] / denom_suffix[i]
        result = MacdonaldResult(lam, (), LaurentPoly(self.rs, terms), "eigen")
        self._cache[lam] = result
        return result

    # -- parasymmetric polynomials ---------------------------------------------------

    def r_poly(self, J: tuple[int, ...], lam: Weight) -> QT:
        """R^J_lam(t) = sum of t^{l(tau)} over the stabilizer of w_0^J(lam) in W^J."""
        check_J_antidominant(lam, J)
        _, stab, _ = self.group.coset_data(J, lam)
        out = self.S.zero
        for tau in stab:
            out = out + self.S.t_power(tau.length())
        return out

    def parasym_E(self, J: tuple[int, ...], lam: Weight) -> MacdonaldResult:
        key = (tuple(sorted(J)), lam)
        if key in self._cache_J:
            return self._cache_J[key]
        J = tuple(sorted(J))
        check_J_antidominant(lam, J)
        w0J, stab, reps = self.group.coset_data(J, lam)
        base = self.nonsym_E(self.group.act(w0J, lam)).poly

        full = self.ops.symmetrize_PJ(J, base)
        r = self.r_poly(J, lam)
        via_r = full.scale(1 / r)

        via_reps = LaurentPoly.zero(self.rs)
        for sigma in reps:
            via_reps = via_reps + self.ops.apply_T_word(sigma, base)

        if via_r != via_reps:
            raise FormulaMismatch(
                f"P^J/R and minimal-coset formulas disagree for J={J}, lam={lam}")

        coeffs = self.expand_in_orbit_sums(J, via_reps)
        lead = coeffs.get(lam)
        if lead is None or lead != self.S.one:
            raise FormulaMismatch(f"leading m^J coefficient is {lead}, expected 1")
        for mu in coeffs:
            if mu != lam and not self.group.cherednik_leq(mu, lam):
                raise FormulaMismatch(f"m^J support {mu} not below {lam}")

        result = MacdonaldResult(lam, J, via_reps, "symmetrizer")
        self._cache_J[key] = result
        return result

    def expand_in_orbit_sums(self, J: tuple[int, ...], f: LaurentPoly) -> dict[Weight, QT]:
        """Expand a W^J-symmetric polynomial in the m^J basis (exact; asserts
        the reconstruction reproduces f)."""
        rest = f
        out: dict[Weight, QT] = {}
        guard = 0
        while not rest.is_zero():
            guard += 1
            assert guard < 10000
            mu = next(w for w in rest.support()
                      if all(w.coords[i] <= 0 for i in J))
            c = rest.terms[mu]
            out[mu] = c
            rest = rest - self.orbit_sum(J, mu).scale(c)
        return out

    # -- specializations ---------------------------------------------------------------

    def specialize_E(self, result: MacdonaldResult, mode: str) -> LaurentPoly:
        return result.poly.specialize_t(mode)

    def decompose_tinf(self, J: tuple[int, ...], lam: Weight) -> dict[Weight, QT]:
        """Coefficients a_{w lam}(q)/a_lam(q) in the t=infinity decomposition

            E^J_lam(X, q^{-1}, inf) = sum_w c_w E_{w lam}(X, q^{-1}, inf),

        solved exactly over the W^J-orbit; the identity-coset coefficient
        must be 1 and the residual must vanish.
        """
        J = tuple(sorted(J))
        check_J_antidominant(lam, J)
        # q -> q^{-1} on coefficients only (weights untouched)
        lhs = self.specialize_E(self.parasym_E(J, lam), "infinity").map_coeffs(
            lambda c: c.star_qx())
        reps: list[Weight] = []
        seen = set()
        for w in self.group.elements(J):
            mu = self.group.act(w, lam)
            if mu not in seen:
                seen.add(mu)
                reps.append(mu)
        basis = [self.specialize_E(self.nonsym_E(mu), "infinity").map_coeffs(lambda c: c.star_qx())
                 for mu in reps]
        weights = sorted({w for p in basis for w in p.terms} | set(lhs.terms),
                         key=lambda w: w.coords)
        rows = [[p.coeff(w) for p in basis] + [lhs.coeff(w)] for w in weights]
        sol = _solve_exact(self.S, rows, len(basis))
        out: dict[Weight, QT] = dict(zip(reps, sol))
        if out[lam] != self.S.one:
            raise SingularSystem(f"identity coefficient is {out[lam]}, expected 1")
        return out


def _solve_exact(S, rows: list[list[QT]], ncols: int) -> list[QT]:
    """Solve an overdetermined linear system exactly; raises SingularSystem
    if rank-deficient or inconsistent."""
    mat = [row[:] for row in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not mat[i][c].is_zero()), None)
        if p is None:
            raise SingularSystem("rank-deficient decomposition system")
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    for i in range(r, nrows):
        if not mat[i][ncols].is_zero():
            raise SingularSystem("inconsistent decomposition system (nonzero residual)")
    return [mat[i][ncols] for i in range(ncols)]


@lru_cache(maxsize=None)
def engine(type_string: str) -> MacdonaldEngine:
    return MacdonaldEngine(daha(type_string))
