"""Exact coefficient arithmetic in Q(q^{1/2e}, t).

Internally a scalar is a reduced fraction of polynomials in (v, t) with
v := q^{1/(2e)}, so every q-exponent with denominator dividing 2e is an
integer v-exponent.  sympy's sparse polynomial fields do the gcd
normalization; this module only adds the q-exponent bookkeeping, the star
involutions, t-limits and q-expansion.  Externally (printing, JSON) all
exponents are reported as exact rationals in q, never in v.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.fields import field

from .errors import PoleAtSpecialization, QPole


@lru_cache(maxsize=None)
def scalar_field(two_e: int) -> "ScalarField":
    return ScalarField(two_e)


class ScalarField:
    """Coefficient field Q(q^{1/2e}, t) for a fixed root system's e."""

    def __init__(self, two_e: int):
        self.two_e = two_e
        self.F, self.v, self.t = field("v,t", QQ)
        self.ring = self.F.ring
        self.zero = QT(self, self.F.zero)
        self.one = QT(self, self.F.one)

    def from_fraction(self, c) -> "QT":
        c = Fraction(c)
        return QT(self, self.F.ground_new(QQ(c.numerator, c.denominator)))

    def q_power(self, exp) -> "QT":
        """q^exp as a scalar; exp must have denominator dividing 2e."""
        exp = Fraction(exp)
        ve = exp * self.two_e
        if ve.denominator != 1:
            raise ValueError(f"q-exponent {exp} has denominator not dividing 2e={self.two_e}")
        k = int(ve)
        return QT(self, self.v ** k if k >= 0 else self.F.one / self.v ** (-k))

    def t_power(self, k: int) -> "QT":
        return QT(self, self.t ** k if k >= 0 else self.F.one / self.t ** (-k))

    def monomial(self, coeff, q_exp, t_exp: int) -> "QT":
        return self.from_fraction(coeff) * self.q_power(q_exp) * self.t_power(t_exp)

    def from_qt_dicts(self, num: dict, den: dict) -> "QT":
        """Build from {(q_exp, t_exp): Fraction} maps for numerator/denominator.

        Monomials may carry negative exponents; they are cleared into an
        overall q^a t^b prefactor before handing the polynomials to sympy.
        """

        def make(d):
            vexps = []
            for (qe, _te) in d:
                ve = Fraction(qe) * self.two_e
                if ve.denominator != 1:
                    raise ValueError("q-exponent denominator does not divide 2e")
                vexps.append(int(ve))
            vmin = min(min(vexps, default=0), 0)
            tmin = min(min((te for (_qe, te) in d), default=0), 0)
            poly = self.ring.from_dict({
                (int(Fraction(qe) * self.two_e) - vmin, te - tmin):
                    QQ(Fraction(c).numerator, Fraction(c).denominator)
                for (qe, te), c in d.items()})
            return poly, vmin, tmin

        np_, nv, nt = make(num)
        dp_, dv, dt = make(den)
        base = QT(self, self.F.new(np_, dp_))
        return base * self.q_power(Fraction(nv - dv, self.two_e)) * self.t_power(nt - dt)


class QT:
    """A scalar; thin immutable wrapper over a sympy FracElement."""

    __slots__ = ("field", "fe")

    def __init__(self, fld: ScalarField, fe):
        self.field = fld
        self.fe = fe

    def _coerce(self, other):
        if isinstance(other, QT):
            return other.fe
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return self.field.F.ground_new(QQ(c.numerator, c.denominator))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, self.fe + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, self.fe - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, o - self.fe)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, self.fe * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, self.fe / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QT(self.field, o / self.fe)

    def __neg__(self):
        return QT(self.field, -self.fe)

    def __pow__(self, k: int):
        if k >= 0:
            return QT(self.field, self.fe ** k)
        return QT(self.field, self.field.F.one / self.fe ** (-k))

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.fe == o

    def __hash__(self):
        return hash(self.fe)

    def __bool__(self):
        return bool(self.fe)

    def is_zero(self) -> bool:
        return not self.fe

    def __repr__(self):
        return format_qt(self)

    # -- term access (q-exponents as exact rationals) ----------------------------

    def numer_terms(self) -> list[tuple[Fraction, int, Fraction]]:
        """[(q_exp, t_exp, coeff)] of the numerator, sorted."""
        return self._terms(self.fe.numer)

    def denom_terms(self) -> list[tuple[Fraction, int, Fraction]]:
        return self._terms(self.fe.denom)

    def _terms(self, poly):
        out = [(Fraction(a, self.field.two_e), b, Fraction(c.numerator, c.denominator))
               for (a, b), c in poly.terms()]
        return sorted(out)

    def max_q_denominator(self) -> int:
        """Largest denominator among all q-exponents actually present."""
        dens = [Fraction(a, self.field.two_e).denominator
                for (a, _b), _c in list(self.fe.numer.terms()) + list(self.fe.denom.terms())]
        return max(dens, default=1)

    # -- involutions -----------------------------------------------------------------

    def star(self) -> "QT":
        """q -> q^{-1}, t -> t^{-1}."""
        return self._substar(flip_v=True, flip_t=True)

    def star_qx(self) -> "QT":
        """q -> q^{-1} only (the t-specialized ring's involution)."""
        return self._substar(flip_v=True, flip_t=False)

    def star_t(self) -> "QT":
        return self._substar(flip_v=False, flip_t=True)

    def _substar(self, flip_v: bool, flip_t: bool) -> "QT":
        f = self.field

        def rev(poly):
            terms = list(poly.terms())
            va = max((m[0] for m, _ in terms), default=0) if flip_v else 0
            ta = max((m[1] for m, _ in terms), default=0) if flip_t else 0
            d = {((va - m[0]) if flip_v else m[0], (ta - m[1]) if flip_t else m[1]): c
                 for m, c in terms}
            return f.ring.from_dict(d), va, ta

        if self.is_zero():
            return f.zero
        np_, nva, nta = rev(self.fe.numer)
        dp_, dva, dta = rev(self.fe.denom)
        out = QT(f, f.F.new(np_, dp_))
        # residual monomial v^(dva-nva) t^(dta-nta)
        return out * f.q_power(Fraction(dva - nva, f.two_e)) * f.t_power(dta - nta)

    # -- t-limits ------------------------------------------------------------------------

    def t_limit(self, mode: str) -> "QT":
        """Limit at t=0 ('zero') or t=infinity ('infinity'); t-free q-rational result.

        Raises PoleAtSpecialization when no finite limit exists.
        """
        f = self.field
        if self.is_zero():
            return f.zero
        num, den = self.fe.numer, self.fe.denom
        if mode == "zero":
            nv, npoly = _t_valuation_part(f, num, low=True)
            dv, dpoly = _t_valuation_part(f, den, low=True)
            if nv > dv:
                return f.zero
            if nv < dv:
                raise PoleAtSpecialization(f"pole at t=0 in {format_qt(self)}")
        else:
            nv, npoly = _t_valuation_part(f, num, low=False)
            dv, dpoly = _t_valuation_part(f, den, low=False)
            if nv < dv:
                return f.zero
            if nv > dv:
                raise PoleAtSpecialization(f"pole at t=infinity in {format_qt(self)}")
        return QT(f, f.F.new(npoly, dpoly))

    # -- q-expansion ----------------------------------------------------------------------

    def q_series(self, order: Fraction) -> dict[Fraction, "QT"]:
        """Laurent expansion at q=0 through q^order: {q_exp: t-rational coeff}.

        The denominator may carry a pure monomial v^k (a q-shift); any other
        factor vanishing at q=0 is a genuine pole and raises QPole.
        """
        f = self.field
        if self.is_zero():
            return {}
        num, den = self.fe.numer, self.fe.denom
        # strip v-monomial content from the denominator
        dshift = min(m[0] for m, _ in den.terms())
        if dshift:
            den = f.ring.from_dict({(m[0] - dshift, m[1]): c for m, c in den.terms()})
        nshift = min(m[0] for m, _ in num.terms())
        if nshift:
            num = f.ring.from_dict({(m[0] - nshift, m[1]): c for m, c in num.terms()})
        shift = nshift - dshift  # overall v-exponent offset
        # den = d0(t) + higher v-order; d0 must be nonzero
        d_by_v: dict[int, dict] = {}
        for (a, b), c in den.terms():
            d_by_v.setdefault(a, {})[(0, b)] = c
        if 0 not in d_by_v:
            raise QPole(f"denominator vanishes at q=0: {format_qt(self)}")
        d0 = QT(f, f.F.new(f.ring.from_dict(d_by_v[0]), f.ring.one))
        n_by_v: dict[int, QT] = {}
        for (a, b), c in num.terms():
            cur = n_by_v.get(a, f.zero)
            n_by_v[a] = cur + QT(f, f.F.new(f.ring.from_dict({(0, b): c}), f.ring.one))
        d_rest = {a: QT(f, f.F.new(f.ring.from_dict(d), f.ring.one))
                  for a, d in d_by_v.items() if a != 0}
        # synthetic division: coeff[k] = (n_k - sum_{j>=1} d_j coeff[k-j]) / d0
        vmax = int(Fraction(order) * f.two_e) - shift
        out: dict[Fraction, QT] = {}
        coeffs: dict[int, QT] = {}
        for k in range(0, vmax + 1):
            acc = n_by_v.get(k, f.zero)
            for j, dj in d_rest.items():
                if j <= k:
                    acc = acc - dj * coeffs.get(k - j, f.zero)
            ck = acc / d0
            coeffs[k] = ck
            if not ck.is_zero():
                out[Fraction(k + shift, f.two_e)] = ck
        return out


def _t_valuation_part(f: ScalarField, poly, low: bool):
    """(t-valuation or t-degree, the corresponding v-polynomial slice)."""
    terms = list(poly.terms())
    deg = min(m[1] for m, _ in terms) if low else max(m[1] for m, _ in terms)
    part = f.ring.from_dict({(m[0], 0): c for m, c in terms if m[1] == deg})
    return deg, part


# -- printing ---------------------------------------------------------------------


def normalized_terms(x: QT) -> tuple[list, list]:
    """(numerator terms, denominator terms) as [(q_exp, t_exp, coeff)], scaled
    so the denominator's lowest term (in (q,t)-degree order) has coefficient 1.

    This is the canonical form used for printing and JSON export.
    """
    num, den = x.numer_terms(), x.denom_terms()
    if den:
        lead = den[0][2]
        num = [(a, b, c / lead) for a, b, c in num]
        den = [(a, b, c / lead) for a, b, c in den]
    return num, den


def _format_poly(x: QT, poly, latex: bool = False, scale: Fraction = Fraction(1)) -> str:
    terms = []
    for (a, b), c in sorted(poly.terms(), key=lambda mc: (mc[0][0], mc[0][1])):
        qe = Fraction(a, x.field.two_e)
        coeff = Fraction(c.numerator, c.denominator) * scale
        parts = []
        if qe:
            if latex:
                parts.append("q" if qe == 1 else f"q^{{{qe}}}")
            else:
                parts.append("q" if qe == 1 else f"q^({qe})" if qe.denominator != 1 else f"q^{qe}")
        if b:
            parts.append("t" if b == 1 else (f"t^{{{b}}}" if latex else f"t^{b}"))
        body = "*".join(parts) if not latex else " ".join(parts)
        if not body:
            term = str(abs(coeff))
        elif abs(coeff) == 1:
            term = body
        else:
            term = f"{abs(coeff)}{'*' if not latex else ' '}{body}"
        terms.append((coeff < 0, term))
    if not terms:
        return "0"
    out = ""
    for i, (neg, term) in enumerate(terms):
        if i == 0:
            out = ("-" if neg else "") + term
        else:
            out += (" - " if neg else " + ") + term
    return out


def format_qt(x: QT, latex: bool = False) -> str:
    """Render a scalar as reduced num/den polynomials in q and t, with the
    denominator's lowest term normalized to 1."""
    scale = Fraction(1)
    den_terms = sorted(x.fe.denom.terms(), key=lambda mc: (mc[0][0], mc[0][1]))
    if den_terms:
        c0 = den_terms[0][1]
        scale = 1 / Fraction(c0.numerator, c0.denominator)
    num = _format_poly(x, x.fe.numer, latex, scale)
    if x.fe.denom == x.field.ring.one:
        return num
    den = _format_poly(x, x.fe.denom, latex, scale)
    if latex:
        return f"\\frac{{{num}}}{{{den}}}"
    npar = f"({num})" if (" " in num or "+" in num or " - " in num[1:]) else num
    dpar = f"({den})" if (" " in den or "+" in den or " - " in den[1:]) else den
    return f"{npar}/{dpar}"
