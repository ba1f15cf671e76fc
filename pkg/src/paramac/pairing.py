"""Cherednik kernels, constant-term pairings, and the Gram-Schmidt oracle.

Kernel coefficients must be exact rational functions of t through the stated
q-order.  For the nonsymmetric kernel this follows from pointed-cone support
(the q^0 geometric factors run along positive roots only; negative pull-back
is bounded by the q-budget N * height(theta), which sets the working radius).
The generic J-kernel cannot be expanded factor by factor that way -- its q^0
factors along Phi_{J-} generate unbounded t-series -- so mu_0^J is computed
by averaging the nonsymmetric mu_0 over W^J (the classical symmetrizer
identity; the build asserts the resulting constant term is exactly 1).

The t=0 kernels are finite products per q-order and are expanded directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import RootSystem, Weight
from .errors import NonInvertibleLeading
from .groupring import LaurentPoly, TruncatedQSeries, ring_of
from .macdonald import MacdonaldEngine, engine
from .scalars import QT
from .weyl import check_J_antidominant

TPoly = dict[int, Fraction]  # {t-exponent: coefficient}, build-time representation


@dataclass(frozen=True, slots=True)
class KernelSpec:
    J: tuple[int, ...]
    t_mode: str = "generic"  # "generic" | "t-zero"
    kind: str = "cherednik"  # "cherednik" | "ext-pairing"

    def __post_init__(self):
        if self.kind == "ext-pairing" and self.t_mode != "t-zero":
            raise ValueError("ext-pairing kernels are defined at t=0 only")


@dataclass
class TruncatedKernel:
    weights: dict[Weight, TruncatedQSeries]
    order: Fraction
    radius: Fraction

    def coeff(self, w: Weight, field) -> TruncatedQSeries:
        got = self.weights.get(w)
        return got if got is not None else TruncatedQSeries(field, self.order, {})

    def constant_term(self, field) -> TruncatedQSeries:
        zero = next(iter(self.weights))
        return self.coeff(Weight((0,) * len(zero.coords)), field)


def _tp_mul(a: TPoly, b: TPoly) -> TPoly:
    out: TPoly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _tp_add(a: TPoly, b: TPoly) -> TPoly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


class _Expansion:
    """{(weight, q-exponent): t-poly} with (order, radius) pruning."""

    def __init__(self, rs: RootSystem, order: Fraction, radius: Fraction):
        self.rs = rs
        self.order = order
        self.radius = radius
        zero = rs.zero_weight()
        self.data: dict[tuple[Weight, Fraction], TPoly] = {(zero, Fraction(0)): {0: Fraction(1)}}
        self._h1: dict[Weight, Fraction] = {zero: Fraction(0)}

    def h1(self, w: Weight) -> Fraction:
        got = self._h1.get(w)
        if got is None:
            got = self._h1[w] = self.rs.height1(w)
        return got

    def mul_factor(self, terms: list[tuple[Weight, Fraction, TPoly]]):
        out: dict[tuple[Weight, Fraction], TPoly] = {}
        for (w0, q0), tp0 in self.data.items():
            for (w1, q1, tp1) in terms:
                q = q0 + q1
                if q > self.order:
                    continue
                w = w0 + w1
                if self.h1(w) > self.radius:
                    continue
                key = (w, q)
                prod = _tp_mul(tp0, tp1)
                cur = out.get(key)
                out[key] = prod if cur is None else _tp_add(cur, prod)
        self.data = {k: v for k, v in out.items() if v}


def _kernel_factors(rs: RootSystem, spec: KernelSpec, order: Fraction, radius: Fraction):
    """Factor blocks of the requested kernel, each a list of expansion terms.

    Used directly only for pointed or finite kernels; see expand_kernel.
    """
    one = Fraction(1)
    blocks: list[list[tuple[Weight, Fraction, TPoly]]] = []
    q0_roots = list(rs.positive_roots)
    if spec.kind == "ext-pairing" or spec.t_mode == "t-zero":
        q0_roots = q0_roots + [-r for r in rs.positive_roots
                               if all(r.coords[i] == 0 for i in range(rs.rank)
                                      if i not in spec.J)]
        for r in q0_roots:
            w = rs.root_to_weight(r)
            blocks.append([(rs.zero_weight(), Fraction(0), {0: one}),
                           (w, Fraction(0), {0: -one})])
    else:
        assert not spec.J, "generic J-kernels are built by W^J-averaging"
        for r in q0_roots:
            w = rs.root_to_weight(r)
            h = rs.height1(w)
            # (1 - X^a)/(1 - t X^a) = 1 - (1-t) sum_{m>=1} t^{m-1} X^{ma}
            terms = [(rs.zero_weight(), Fraction(0), {0: one})]
            m = 1
            while m * h <= radius:
                terms.append((m * w, Fraction(0), {m - 1: -one, m: one}))
                m += 1
            blocks.append(terms)
    kmax = int(order)
    for k in range(1, kmax + 1):
        for r in rs.all_roots:
            w = rs.root_to_weight(r)
            if spec.t_mode == "t-zero":
                blocks.append([(rs.zero_weight(), Fraction(0), {0: one}),
                               (w, Fraction(k), {0: -one})])
            else:
                # (1 - q^k X^a)/(1 - t q^k X^a) = 1 + sum_{m>=1} (t^m - t^{m-1}) q^{km} X^{ma}
                terms = [(rs.zero_weight(), Fraction(0), {0: one})]
                m = 1
                while k * m <= order:
                    terms.append((m * w, Fraction(k * m), {m: one, m - 1: -one}))
                    m += 1
                blocks.append(terms)
    if spec.kind == "ext-pairing":
        # the X-free factor prod_{k>=1} (1-q^k)^n
        blocks.extend([[(rs.zero_weight(), Fraction(0), {0: one}),
                        (rs.zero_weight(), Fraction(k), {0: -one})]
                       for k in range(1, kmax + 1) for _ in range(rs.rank)])
    return blocks


class PairingContext:
    def __init__(self, eng: MacdonaldEngine):
        self.engine = eng
        self.rs = eng.rs
        self.group = eng.group
        self.S = ring_of(self.rs)
        self._kernels: dict[tuple, TruncatedKernel] = {}
        self._gram: dict[tuple, TruncatedQSeries] = {}

    # -- kernel expansion -------------------------------------------------------

    def expand_kernel(self, spec: KernelSpec, order, radius) -> TruncatedKernel:
        order, radius = Fraction(order), Fraction(radius)
        key = (spec, order)
        got = self._kernels.get(key)
        if got is not None and got.radius >= radius:
            return got
        if spec.t_mode == "generic" and spec.J:
            kern = self._averaged_J_kernel(spec, order, radius)
        else:
            kern = self._direct_kernel(spec, order, radius)
        self._kernels[key] = kern
        return kern

    def _direct_kernel(self, spec: KernelSpec, order: Fraction, radius: Fraction,
                       normalize: bool = False) -> TruncatedKernel:
        rs = self.rs
        slack = order * rs.height1(rs.root_to_weight(rs.theta))
        if spec.t_mode == "t-zero":
            # finite product; negative pull-back additionally bounded by the
            # q^0 factors' own support
            slack += sum(rs.height1(rs.root_to_weight(r)) for r in rs.positive_roots) * 2
        work = _Expansion(rs, order, radius + slack)
        for block in _kernel_factors(rs, spec, order, radius + slack):
            work.mul_factor(block)
        out: dict[Weight, dict[Fraction, QT]] = {}
        for (w, q), tp in work.data.items():
            if rs.height1(w) > radius:
                continue
            qt = self._tp_to_qt(tp)
            out.setdefault(w, {})[q] = qt
        weights = {w: TruncatedQSeries(self.S, order, d) for w, d in out.items()}
        return TruncatedKernel(weights, order, radius)

    def _averaged_J_kernel(self, spec: KernelSpec, order: Fraction,
                           radius: Fraction) -> TruncatedKernel:
        """mu_0^J = (1/|W^J|) sum_{w in W^J} w(mu) / [mu]_1, exact in Q(t)."""
        rs = self.rs
        elements = self.group.elements(spec.J)
        stretch = max((Fraction(rs.height1(rs.root_to_weight(self.group.act_root(w, r))),
                                rs.height1(rs.root_to_weight(r)))
                      for w in elements for r in rs.positive_roots), default=Fraction(1))
        base = self.expand_kernel(KernelSpec((), "generic", "cherednik"),
                                  order, radius * stretch)
        ct = base.constant_term(self.S)
        acc: dict[Weight, TruncatedQSeries] = {}
        for w in elements:
            for mu, series in base.weights.items():
                img = self.group.act(w, mu)
                if rs.height1(img) > radius:
                    continue
                cur = acc.get(img)
                acc[img] = series if cur is None else cur + series
        norm = (ct.scale(len(elements))).inverse()
        out = {mu: series * norm for mu, series in acc.items()}
        kern = TruncatedKernel(out, order, radius)
        one = TruncatedQSeries.constant(self.S, 1, order)
        assert kern.constant_term(self.S) == one, \
            "W^J-averaged kernel is not normalized (symmetrizer identity failed)"
        return kern

    def _tp_to_qt(self, tp: TPoly) -> QT:
        out = self.S.zero
        for e, c in tp.items():
            out = out + self.S.monomial(c, Fraction(0), e)
        return out

    # -- pairings -----------------------------------------------------------------

    def pairing(self, f: LaurentPoly, g: LaurentPoly, spec: KernelSpec,
                order) -> TruncatedQSeries:
        """<f, g> = [f g^star mu_0]_1 through q^order, exactly in Q(t).

        The involution is the full star in generic mode and the q,X-only star
        in t-zero mode.
        """
        order = Fraction(order)
        h = f * (g.star() if spec.t_mode == "generic" else g.star_qx())
        if h.is_zero():
            return TruncatedQSeries(self.S, order, {})
        radius = max(self.rs.height1(w) for w in h.terms)
        kern = self.expand_kernel(spec, order, radius)
        hq = h.q_expand(order)
        acc = TruncatedQSeries(self.S, order, {})
        for w, series in hq.items():
            acc = acc + series * kern.coeff(-w, self.S)
        ct = kern.constant_term(self.S)
        if ct == TruncatedQSeries.constant(self.S, 1, order):
            return acc
        return acc / ct

    def pairing_finite_q0(self, J: tuple[int, ...], f: LaurentPoly,
                          g: LaurentPoly) -> Fraction:
        """[f(x) g(x^{-1}) prod_{a in Phi_{J-} u Phi_+} (1 - X^a)]_1, exact and
        unnormalized, as printed in the finite parabolic pairing."""
        rs = self.rs
        prod = f * LaurentPoly(rs, {-w: c for w, c in g.terms.items()})
        for r in rs.positive_roots:
            w = rs.root_to_weight(r)
            prod = prod * (LaurentPoly.one(rs) - LaurentPoly.monomial(rs, w))
            if all(r.coords[i] == 0 for i in range(rs.rank) if i not in J):
                prod = prod * (LaurentPoly.one(rs) - LaurentPoly.monomial(rs, -w))
        c = prod.coeff(rs.zero_weight())
        terms = c.numer_terms()
        if not terms:
            return Fraction(0)
        assert c.fe.denom == self.S.ring.one and len(terms) == 1 and terms[0][:2] == (0, 0)
        return terms[0][2]

    # -- Gram-Schmidt oracle ----------------------------------------------------------

    def _gram_entry(self, J: tuple[int, ...], a: Weight, b: Weight,
                    order: Fraction) -> TruncatedQSeries:
        key = (tuple(sorted(J)), a, b)
        got = self._gram.get(key)
        if got is not None and got.order >= order:
            return got
        spec = KernelSpec(tuple(sorted(J)), "generic", "cherednik")
        val = self.pairing(self.engine.orbit_sum(J, a), self.engine.orbit_sum(J, b),
                           spec, order)
        self._gram[key] = val
        return val

    def gram_schmidt_oracle(self, J: tuple[int, ...], lam: Weight,
                            order) -> dict[Weight, TruncatedQSeries]:
        """The unique family member m^J_lam + sum_{mu < lam} c_mu m^J_mu with
        <result, m^J_nu>^J = O(q^{order+1}) for every nu < lam in P_J^-.

        Orthogonality against the earlier orbit sums is equivalent to the
        defining orthogonality of the parasymmetric family (the earlier
        family members span the same space), and needs no star of truncated
        data.  Coefficients are truncated q-series over Q(t); built only from
        the kernel pairing, independent of the eigenproblem route.
        """
        order = Fraction(order)
        J = tuple(sorted(J))
        check_J_antidominant(lam, J)
        basis = [mu for mu in self.group.lower_set(lam)
                 if all(mu.coords[i] <= 0 for i in J)]
        assert basis[-1] == lam
        m = len(basis) - 1
        one = TruncatedQSeries.constant(self.S, 1, order)
        if m == 0:
            return {lam: one}
        # rows: orthogonality against basis[j], j < m; unknowns c_0..c_{m-1}
        rows = []
        for j in range(m):
            row = [self._gram_entry(J, basis[i], basis[j], order) for i in range(m)]
            row.append(self._gram_entry(J, lam, basis[j], order).scale(-1))
            rows.append(row)
        sol = _solve_series(self.S, rows, m, order)
        out = {basis[i]: sol[i] for i in range(m) if not sol[i].is_zero()}
        out[lam] = one
        return out


def _solve_series(S, rows, ncols: int, order: Fraction):
    """Gaussian elimination over truncated q-series; pivots must have
    invertible constant coefficient (else NonInvertibleLeading)."""
    nrows = len(rows)
    mat = [row[:] for row in rows]
    perm = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows)
                    if not mat[i][c].is_zero() and mat[i][c].valuation() == 0), None)
        if piv is None:
            raise NonInvertibleLeading(
                f"no unit pivot in column {c}; increase the truncation order")
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        perm.append(c)
        r += 1
    return [mat[i][ncols] for i in range(ncols)]


_CONTEXTS: dict[str, PairingContext] = {}


def pairing_context(type_string: str) -> PairingContext:
    ctx = _CONTEXTS.get(type_string)
    if ctx is None:
        ctx = _CONTEXTS[type_string] = PairingContext(engine(type_string))
    return ctx
