"""Laurent polynomials in X^lam over Q(q^{1/2e}, t), plus truncated q-series.

A LaurentPoly is a finite {Weight: QT} map with no stored zeros.  The term
order for printing and JSON export is lexicographic on fundamental-weight
coordinates; this order is part of the golden-file contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .cartan import Root, RootSystem, Weight
from .errors import NonInvertibleLeading, NotDivisible, PoleAtSpecialization
from .scalars import QT, ScalarField, format_qt, normalized_terms, scalar_field
from .weyl import WeylElem, WeylGroup


def ring_of(rs: RootSystem) -> ScalarField:
    return scalar_field(2 * rs.e)


class LaurentPoly:
    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: dict[Weight, QT] | None = None):
        self.rs = rs
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(rs: RootSystem) -> "LaurentPoly":
        return LaurentPoly(rs)

    @staticmethod
    def monomial(rs: RootSystem, lam: Weight, coeff: QT | int = 1) -> "LaurentPoly":
        S = ring_of(rs)
        c = coeff if isinstance(coeff, QT) else S.from_fraction(coeff)
        return LaurentPoly(rs, {lam: c})

    @staticmethod
    def one(rs: RootSystem) -> "LaurentPoly":
        return LaurentPoly.monomial(rs, rs.zero_weight())

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            cur = out.get(w)
            out[w] = c if cur is None else cur + c
        return LaurentPoly(self.rs, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.rs, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[Weight, QT] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                p = c1 * c2
                cur = out.get(w)
                out[w] = p if cur is None else cur + p
        return LaurentPoly(self.rs, out)

    def scale(self, c: QT | int | Fraction) -> "LaurentPoly":
        S = ring_of(self.rs)
        c = c if isinstance(c, QT) else S.from_fraction(c)
        return LaurentPoly(self.rs, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("LaurentPoly is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Weight) -> QT:
        return self.terms.get(w, ring_of(self.rs).zero)

    def support(self) -> list[Weight]:
        return sorted(self.terms, key=lambda w: w.coords)

    def map_coeffs(self, f) -> "LaurentPoly":
        return LaurentPoly(self.rs, {w: f(c) for w, c in self.terms.items()})

    def __repr__(self):
        return render_plain(self)

    # -- Weyl action and involutions ------------------------------------------------

    def weyl_act(self, group: WeylGroup, w: WeylElem) -> "LaurentPoly":
        return LaurentPoly(self.rs, {group.act(w, mu): c for mu, c in self.terms.items()})

    def star(self) -> "LaurentPoly":
        """f(X^{-1}; q^{-1}, t^{-1})."""
        return LaurentPoly(self.rs, {-w: c.star() for w, c in self.terms.items()})

    def star_qx(self) -> "LaurentPoly":
        """f(X^{-1}; q^{-1}) with t untouched (the t-specialized involution)."""
        return LaurentPoly(self.rs, {-w: c.star_qx() for w, c in self.terms.items()})

    # -- specialization ------------------------------------------------------------

    def specialize_t(self, mode: str) -> "LaurentPoly":
        """Coefficient-wise t-limit; raises PoleAtSpecialization with the weight."""
        out = {}
        for w, c in self.terms.items():
            try:
                out[w] = c.t_limit(mode)
            except PoleAtSpecialization as exc:
                raise PoleAtSpecialization(f"at weight {w}: {exc}") from None
        return LaurentPoly(self.rs, out)

    def q_expand(self, order: Fraction) -> dict[Weight, "TruncatedQSeries"]:
        S = ring_of(self.rs)
        return {w: TruncatedQSeries(S, Fraction(order), c.q_series(Fraction(order)))
                for w, c in self.terms.items()}


# -- exact division -------------------------------------------------------------


def divide_shifted(f: LaurentPoly, w: Weight, c: QT) -> LaurentPoly:
    """Exact division of f by (c*X^w - 1); raises NotDivisible on remainder.

    Monomials are grouped into fibers {base + k w} and each fiber is divided
    by ascending synthetic division.
    """
    if f.is_zero():
        return f
    rs = f.rs
    i = next(j for j, x in enumerate(w.coords) if x != 0)
    wi = w.coords[i]
    fibers: dict[tuple, dict[int, QT]] = {}
    for mu, coeff in f.terms.items():
        # cross products pin the line mu + Z*w; the residue mod |wi| separates
        # distinct ladders on that line when gcd(w) > 1
        key = tuple(mu.coords[j] * wi - mu.coords[i] * w.coords[j]
                    for j in range(rs.rank)) + (mu.coords[i] % abs(wi),)
        fibers.setdefault(key, {})[mu.coords[i]] = coeff

    out: dict[Weight, QT] = {}
    for key, fiber in fibers.items():
        positions = sorted(fiber, reverse=(wi < 0))
        # reconstruct weights: position p has mu_i = p; k-steps differ by wi
        lo, hi = positions[0], positions[-1]
        steps = (hi - lo) // wi
        g_prev = None
        mu_lo = _fiber_weight(rs, key, lo, i, w)
        for k in range(steps + 1):
            p = lo + k * wi
            a_k = fiber.get(p, ring_of(rs).zero)
            g_k = (c * g_prev - a_k) if g_prev is not None else -a_k
            if k < steps:
                if not g_k.is_zero():
                    out[_step_weight(mu_lo, w, k)] = g_k
            else:
                if not g_k.is_zero():
                    raise NotDivisible("division left a remainder")
            g_prev = g_k
    return LaurentPoly(rs, out)


def _fiber_weight(rs: RootSystem, key: tuple, pos: int, i: int, w: Weight) -> Weight:
    wi = w.coords[i]
    coords = tuple((key[j] + pos * w.coords[j]) // wi for j in range(rs.rank))
    return Weight(coords)


def _step_weight(base: Weight, w: Weight, k: int) -> Weight:
    return Weight(tuple(b + k * x for b, x in zip(base.coords, w.coords)))


def divide_exact(f: LaurentPoly, alpha: Root) -> LaurentPoly:
    """Divide f exactly by (X^alpha - 1)."""
    w = f.rs.root_to_weight(alpha)
    return divide_shifted(f, w, ring_of(f.rs).one)


# -- truncated q-series ------------------------------------------------------------


@dataclass
class TruncatedQSeries:
    """Power/Laurent series in q^{1/2e} truncated at a fixed order.

    Coefficients are QT scalars that are rational functions of t only.
    Arithmetic keeps the minimum of the operand truncation orders.
    """

    field: ScalarField
    order: Fraction
    coeffs: dict[Fraction, QT] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {e: c for e, c in self.coeffs.items()
                       if e <= self.order and not c.is_zero()}

    @staticmethod
    def constant(field: ScalarField, c, order: Fraction) -> "TruncatedQSeries":
        c = c if isinstance(c, QT) else field.from_fraction(c)
        return TruncatedQSeries(field, Fraction(order), {Fraction(0): c})

    def __add__(self, other: "TruncatedQSeries") -> "TruncatedQSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return TruncatedQSeries(self.field, order, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other: "TruncatedQSeries") -> "TruncatedQSeries":
        order = min(self.order, other.order)
        out: dict[Fraction, QT] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > order:
                    continue
                p = c1 * c2
                cur = out.get(e)
                out[e] = p if cur is None else cur + p
        return TruncatedQSeries(self.field, order, out)

    def scale(self, c) -> "TruncatedQSeries":
        c = c if isinstance(c, QT) else self.field.from_fraction(c)
        return TruncatedQSeries(self.field, self.order,
                                {e: c * v for e, v in self.coeffs.items()})

    def shift(self, d: Fraction) -> "TruncatedQSeries":
        return TruncatedQSeries(self.field, self.order,
                                {e + d: c for e, c in self.coeffs.items()})

    def valuation(self) -> Fraction | None:
        return min(self.coeffs, default=None)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncatedQSeries):
            return NotImplemented
        order = min(self.order, other.order)
        a = {e: c for e, c in self.coeffs.items() if e <= order}
        b = {e: c for e, c in other.coeffs.items() if e <= order}
        return a == b

    def inverse(self) -> "TruncatedQSeries":
        """Inverse of a series with invertible lowest term (valuation may be
        nonzero; the result is shifted accordingly)."""
        if self.is_zero():
            raise NonInvertibleLeading("cannot invert the zero series")
        val = self.valuation()
        b = self.shift(-val)
        b.order = self.order  # keep working precision
        c0 = b.coeffs.get(Fraction(0))
        if c0 is None or c0.is_zero():
            raise NonInvertibleLeading("series has zero constant coefficient")
        step = Fraction(1, self.field.two_e)
        n_steps = int((self.order) / step)
        inv: dict[Fraction, QT] = {Fraction(0): 1 / c0}
        for k in range(1, n_steps + 1):
            e = k * step
            acc = self.field.zero
            for e2, c2 in b.coeffs.items():
                if Fraction(0) < e2 <= e:
                    prev = inv.get(e - e2)
                    if prev is not None:
                        acc = acc + c2 * prev
            val_k = -(acc / c0)
            if not val_k.is_zero():
                inv[e] = val_k
        return TruncatedQSeries(self.field, self.order, inv).shift(-val)

    def __truediv__(self, other: "TruncatedQSeries") -> "TruncatedQSeries":
        return self * other.inverse()

    def vanishes_through(self, order: Fraction) -> bool:
        return all(c.is_zero() for e, c in self.coeffs.items() if e <= order)

    def __repr__(self):
        if not self.coeffs:
            return f"O(q^{self.order + 1})"
        parts = []
        for e in sorted(self.coeffs):
            c = format_qt(self.coeffs[e])
            body = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            parts.append(f"({c}){'*' if body else ''}{body}")
        return " + ".join(parts) + f" + O(q^{self.order + 1})"


# -- rendering ---------------------------------------------------------------------


def render_plain(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for w in p.support():
        c = p.terms[w]
        xs = "X[" + ",".join(str(a) for a in w.coords) + "]"
        if w.is_zero():
            parts.append(format_qt(c))
            continue
        cs = format_qt(c)
        parts.append(xs if cs == "1" else f"-{xs}" if cs == "-1" else f"{cs} * {xs}")
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


def render_latex(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for w in p.support():
        c = p.terms[w]
        cs = format_qt(c, latex=True)
        if w.is_zero():
            parts.append(cs)
            continue
        xs = "X^{(" + ",".join(str(a) for a in w.coords) + ")}"
        parts.append(xs if cs == "1" else f"-{xs}" if cs == "-1" else f"{cs}\\, {xs}")
    return " + ".join(parts)


def coeff_to_json(c: QT) -> dict:
    num, den = normalized_terms(c)

    def enc(terms):
        return [[qe.numerator, qe.denominator, te, str(coeff)] for qe, te, coeff in terms]

    return {"num": enc(num), "den": enc(den)}


def coeff_from_json(S: ScalarField, d: dict) -> QT:
    def dec(entries):
        return {(Fraction(qn, qd), te): Fraction(c) for qn, qd, te, c in entries}

    return S.from_qt_dicts(dec(d["num"]), dec(d["den"]))


def poly_to_json(p: LaurentPoly) -> list[dict]:
    return [{"weight": list(w.coords), "coeff": coeff_to_json(p.terms[w])}
            for w in p.support()]


def poly_from_json(rs: RootSystem, terms: list[dict]) -> LaurentPoly:
    S = ring_of(rs)
    out: dict[Weight, QT] = {}
    for entry in terms:
        out[Weight(tuple(entry["weight"]))] = coeff_from_json(S, entry["coeff"])
    return LaurentPoly(rs, out)
