"""Cyclic parahoric modules from their defining relations, and graded characters.

The two families (D and U) are presented by extremal-vector relations; the
character computation runs over the Iwahori restriction, whose presentation
(the parahoric one with the Levi-lowering line dropped and negative-root
powers pushed to z-degree one) has finite-dimensional bidegree pieces.  The
dimension of each bidegree is

    #(PBW monomials) - rank{straightened left-multiples of the relations},

with all linear algebra over exact rationals.  Relations of z-degree above
the truncation cannot reach the reported window (left multiplication only
raises z-degree), so characters through q_max are exact once K >= q_max.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .cartan import Root, Weight
from .errors import GuardExceeded, NotJAntidominant, TruncationTooSmall
from .groupring import LaurentPoly
from .liealg import BasisElement, LieData
from .weyl import check_J_antidominant

_WORD_GUARD = 64


@dataclass(frozen=True, slots=True)
class IwahoriGen:
    """Basis element x z^k of the truncated Iwahori algebra (no z^0 Cartans)."""

    elem: BasisElement
    zdeg: int


@dataclass(frozen=True, slots=True)
class Relation:
    label: str
    words: tuple[tuple[int, ...], ...]
    coeffs: tuple[Fraction, ...]
    zdeg: int
    wt: tuple[int, ...]  # weight in root coordinates


@dataclass
class CyclicModuleSpec:
    family: str  # "D" | "U"
    lam: Weight
    J: tuple[int, ...]
    relations: list[Relation]
    K: int
    form: str = "iwahori"


@dataclass
class GradedCharacter:
    lam: Weight
    entries: dict[tuple[int, tuple[int, ...]], int]
    q_max: int
    depth: int

    def dim(self, d: int, mu: Weight) -> int:
        return self.entries.get((d, mu.coords), 0)

    def to_json(self) -> list[dict]:
        return [{"q": d, "weight": list(w), "dim": dim}
                for (d, w), dim in sorted(self.entries.items())]


class PBWEngine:
    """Straightening and bidegree linear algebra over a truncated Iwahori algebra."""

    def __init__(self, lie: LieData, K: int):
        self.lie = lie
        self.rs = lie.rs
        self.K = K
        self.gens: list[IwahoriGen] = []
        for b in lie.elements:
            if b.kind == "e":
                start = 0 if b.root.is_positive() else 1
                for k in range(start, K + 1):
                    self.gens.append(IwahoriGen(b, k))
            else:
                for k in range(1, K + 1):
                    self.gens.append(IwahoriGen(b, k))
        self.gens.sort(key=self._order_key)
        self.index = {g: i for i, g in enumerate(self.gens)}
        self._wt = [self._weight_vec(g) for g in self.gens]
        self._zd = [g.zdeg for g in self.gens]
        self._bracket_cache: dict[tuple[int, int], tuple[tuple[Fraction, int], ...]] = {}

    def _order_key(self, g: IwahoriGen):
        if g.elem.kind == "e":
            return (g.zdeg, 0, g.elem.root.height(), g.elem.index)
        return (g.zdeg, 1, 0, g.elem.index)

    def _weight_vec(self, g: IwahoriGen) -> tuple[int, ...]:
        if g.elem.kind == "e":
            return g.elem.root.coords
        return (0,) * self.rs.rank

    def find(self, elem: BasisElement, zdeg: int) -> int:
        return self.index[IwahoriGen(elem, zdeg)]

    def bracket(self, i: int, j: int) -> tuple[tuple[Fraction, int], ...]:
        """[gen_i, gen_j] expanded in the generator basis."""
        key = (i, j)
        got = self._bracket_cache.get(key)
        if got is not None:
            return got
        gi, gj = self.gens[i], self.gens[j]
        z = gi.zdeg + gj.zdeg
        out = []
        if z <= self.K:
            for coeff, b in self.lie.bracket(gi.elem, gj.elem):
                # z^0 Cartans cannot arise: both factors at z-degree 0 are
                # positive-root vectors, whose bracket stays in n_+.
                assert not (b.kind == "h" and z == 0)
                out.append((coeff, self.find(b, z)))
        res = tuple(out)
        self._bracket_cache[key] = res
        return res

    def straighten(self, word: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        """Rewrite into sorted PBW monomials: xy -> yx + [x,y] until sorted."""
        if len(word) > _WORD_GUARD:
            raise GuardExceeded(f"word of length {len(word)}")
        out: dict[tuple[int, ...], Fraction] = {}
        stack = [(Fraction(1), word)]
        while stack:
            coeff, w = stack.pop()
            pos = next((p for p in range(len(w) - 1) if w[p] > w[p + 1]), None)
            if pos is None:
                out[w] = out.get(w, Fraction(0)) + coeff
                continue
            swapped = w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2:]
            stack.append((coeff, swapped))
            for c, k in self.bracket(w[pos], w[pos + 1]):
                stack.append((coeff * c, w[:pos] + (k,) + w[pos + 2:]))
        return {w: c for w, c in out.items() if c}

    def word_bidegree(self, word: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        z = sum(self._zd[i] for i in word)
        wt = [0] * self.rs.rank
        for i in word:
            for a, x in enumerate(self._wt[i]):
                wt[a] += x
        return z, tuple(wt)

    def monomials(self, zdeg: int, wt: tuple[int, ...]) -> list[tuple[int, ...]]:
        """Sorted PBW monomials of the given bidegree (z-degree, root-coordinate
        weight).  z-positive generators are bounded by the z-budget; z^0
        generators have positive-cone weights, bounding their multiplicities."""
        zpos = [i for i in range(len(self.gens)) if self._zd[i] >= 1]
        zzero = [i for i in range(len(self.gens)) if self._zd[i] == 0]
        out: list[tuple[int, ...]] = []

        def fill_zero(k: int, rem_wt: list[int], acc: list[int]):
            if k == len(zzero):
                if all(x == 0 for x in rem_wt):
                    out.append(tuple(acc))
                return
            i = zzero[k]
            w = self._wt[i]
            max_mult = min((rem_wt[a] // w[a] for a in range(len(w)) if w[a] > 0),
                           default=0)
            for m in range(max_mult + 1):
                fill_zero(k + 1, [rem_wt[a] - m * w[a] for a in range(len(w))],
                          acc + [i] * m)

        def fill_pos(k: int, rem_z: int, rem_wt: list[int], acc: list[int]):
            if k == len(zpos):
                if rem_z == 0:
                    fill_zero(0, rem_wt, acc)
                return
            i = zpos[k]
            for m in range(rem_z // self._zd[i] + 1):
                fill_pos(k + 1, rem_z - m * self._zd[i],
                         [rem_wt[a] - m * self._wt[i][a] for a in range(self.rs.rank)],
                         acc + [i] * m)

        fill_pos(0, zdeg, list(wt), [])
        return sorted(tuple(sorted(mono)) for mono in out)


# -- defining relations ----------------------------------------------------------


def relations_for(lie: LieData, family: str, lam: Weight, J: tuple[int, ...],
                  K: int, form: str = "iwahori") -> CyclicModuleSpec:
    """Emit the defining relations of D_lam / U_lam (local modules).

    form="parahoric" lists the relations as elements of U(P_J) (negative-root
    powers twisted by z exactly when the root vector is outside p_J);
    form="iwahori" is the restriction presentation used by character(): the
    Levi-lowering annihilations are dropped and every negative-root power
    lives at z-degree one.
    """
    if family not in ("D", "U"):
        raise ValueError(family)
    check_J_antidominant(lam, J)
    rs = lie.rs
    group = lie.group
    lam_minus, sigma = group.antidominant(lam)
    rels: list[Relation] = []

    def single(label: str, root: Root, z: int, power: int, coeff=Fraction(1)):
        if z * power > K:
            return  # cannot reach any bidegree with q-degree <= K
        word = (("e", root, z),) * power
        rels.append(_make_relation(label, [(coeff, word)], rs))

    in_J = lambda r: all(r.coords[i] == 0 for i in range(rs.rank) if i not in J)

    for alpha in (-r for r in rs.positive_roots):
        sgn, target = lie.weyl_lift(sigma, lie._by_root[alpha])
        beta = target.root
        for k in range(1, K + 1):
            single("line1", beta, k, 1, sgn)
        if beta.is_positive():
            single("extremal-z0", beta, 0, 1, sgn)
        elif form == "parahoric" and in_J(beta):
            single("extremal-z0", beta, 0, 1, sgn)

    if form == "parahoric":
        for alpha in (-r for r in rs.positive_roots if in_J(r)):
            single("line2", alpha, 0, 1)

    for alpha in rs.positive_roots:
        beta = group.act_root(sigma, alpha)
        m = -rs.pair_weight_coroot(lam_minus, alpha)
        assert m >= 0
        if family == "D":
            if beta.is_positive():
                single("power", beta, 0, m + 1)
            else:
                assert m >= 1
                if form == "parahoric" and in_J(beta):
                    single("power", beta, 0, m)
                else:
                    single("power", beta, 1, m)
        else:
            if beta.is_positive():
                exp = m + 1 if in_J(beta) else max(m, 1)
                single("power", beta, 0, exp)
            else:
                if form == "parahoric" and in_J(beta):
                    single("power", beta, 0, m + 1)
                else:
                    single("power", beta, 1, m + 1)

    for i in range(rs.rank):
        for k in range(1, K + 1):
            word = ((("h", i, k),),)
            rels.append(_make_relation("local", [(Fraction(1), word[0])], rs))

    return CyclicModuleSpec(family, lam, tuple(sorted(J)), rels, K, form)


def _make_relation(label: str, terms, rs) -> Relation:
    words = []
    coeffs = []
    zdeg = None
    wt = None
    for coeff, word in terms:
        z = sum(k for (_kind, _r, k) in word)
        w = [0] * rs.rank
        for (kind, r, _k) in word:
            if kind == "e":
                for a in range(rs.rank):
                    w[a] += r.coords[a]
        if zdeg is None:
            zdeg, wt = z, tuple(w)
        else:
            assert (z, tuple(w)) == (zdeg, wt), "relation must be bidegree-homogeneous"
        words.append(word)
        coeffs.append(coeff)
    return Relation(label, tuple(_freeze_word(w) for w in words),
                    tuple(coeffs), zdeg, wt)


def _freeze_word(word) -> tuple:
    return tuple(word)


def render_relation(r: Relation) -> str:
    names = []
    for coeff, word in zip(r.coeffs, r.words):
        parts = []
        for (kind, root, k) in word:
            if kind == "h":
                parts.append(f"h{root + 1}*z^{k}" if k else f"h{root + 1}")
            else:
                base = "e" + "".join(str(c) for c in root.coords) if root.is_positive() \
                    else "f" + "".join(str(-c) for c in root.coords)
                parts.append(f"{base}*z^{k}" if k else base)
        pre = "" if coeff == 1 else f"({coeff})*"
        names.append(pre + ".".join(parts))
    return f"[{r.label}] " + " + ".join(names) + " . v = 0"


# -- character computation -----------------------------------------------------------


def character(lie: LieData, spec: CyclicModuleSpec, q_max: int, depth: int) -> GradedCharacter:
    """Graded character of the cyclic module on the window
    {(d, mu): d <= q_max, height1(lam - mu) <= depth}."""
    if q_max > spec.K:
        raise TruncationTooSmall(f"q_max={q_max} exceeds K={spec.K}")
    assert spec.form == "iwahori", "character() runs on the Iwahori presentation"
    rs = lie.rs
    engine = PBWEngine(lie, spec.K)

    rel_rows: list[tuple[int, tuple[int, ...], list[tuple[Fraction, tuple[int, ...]]]]] = []
    for r in spec.relations:
        terms = []
        for coeff, word in zip(r.coeffs, r.words):
            idx_word = tuple(engine.find(lie._by_root[root] if kind == "e"
                                         else lie._by_index("h", root), k)
                             for (kind, root, k) in word)
            terms.append((coeff, tuple(sorted(idx_word))))
        rel_rows.append((r.zdeg, r.wt, terms))

    entries: dict[tuple[int, tuple[int, ...]], int] = {}
    window = _weight_window(rs, depth)
    for d in range(q_max + 1):
        for beta in window:
            wt = beta  # mu - lam in root coordinates
            monos = engine.monomials(d, wt)
            if not monos:
                continue
            col = {m: i for i, m in enumerate(monos)}
            rows = []
            for (rz, rwt, terms) in rel_rows:
                uz = d - rz
                uwt = tuple(wt[a] - rwt[a] for a in range(rs.rank))
                if uz < 0:
                    continue
                for u in engine.monomials(uz, uwt):
                    row: dict[int, Fraction] = {}
                    for coeff, rword in terms:
                        for m, c in engine.straighten(u + rword).items():
                            j = col[m]
                            row[j] = row.get(j, Fraction(0)) + coeff * c
                    row = {j: c for j, c in row.items() if c}
                    if row:
                        rows.append(row)
            dim = len(monos) - _rank(rows, len(monos))
            if dim:
                mu = spec.lam + rs.root_to_weight(Root(wt))
                entries[(d, mu.coords)] = dim
    return GradedCharacter(spec.lam, entries, q_max, depth)


def _weight_window(rs, depth: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, acc, budget):
        if i == rs.rank:
            out.append(tuple(acc))
            return
        for v in range(-budget, budget + 1):
            rec(i + 1, acc + [v], budget - abs(v))

    rec(0, [], depth)
    return out


def _rank(rows: list[dict[int, Fraction]], ncols: int) -> int:
    dense = [[row.get(j, Fraction(0)) for j in range(ncols)] for row in rows]
    rank = 0
    rpos = 0
    for c in range(ncols):
        piv = next((i for i in range(rpos, len(dense)) if dense[i][c] != 0), None)
        if piv is None:
            continue
        dense[rpos], dense[piv] = dense[piv], dense[rpos]
        inv = 1 / dense[rpos][c]
        dense[rpos] = [x * inv for x in dense[rpos]]
        for i in range(len(dense)):
            if i != rpos and dense[i][c] != 0:
                f = dense[i][c]
                dense[i] = [x - f * y for x, y in zip(dense[i], dense[rpos])]
        rank += 1
        rpos += 1
    return rank


def compare_character(ch: GradedCharacter, p: LaurentPoly, q_max: int) -> dict:
    """Per-bidegree diff of a graded character against a q-expanded polynomial.

    The polynomial's expansion must have nonnegative integer coefficients
    (immediate failure otherwise).
    """
    expected: dict[tuple[int, tuple[int, ...]], int] = {}
    for w, series in p.q_expand(Fraction(q_max)).items():
        for e, c in series.coeffs.items():
            if e.denominator != 1 or e < 0:
                return {"pass": False, "reason": f"non-integer q-power {e} at {w}"}
            terms = c.numer_terms()
            if c.fe.denom != c.field.ring.one or len(terms) != 1 or terms[0][:2] != (0, 0):
                return {"pass": False, "reason": f"non-constant coefficient at {w}"}
            val = terms[0][2]
            if val.denominator != 1 or val < 0:
                return {"pass": False, "reason": f"coefficient {val} at {w} not in Z>=0"}
            if val:
                expected[(int(e), w.coords)] = int(val)
    diffs = []
    for key in sorted(set(expected) | set(ch.entries)):
        d, w = key
        if d > q_max:
            continue
        a = ch.entries.get(key, 0)
        b = expected.get(key, 0)
        if a != b:
            diffs.append({"q": d, "weight": list(w), "character": a, "polynomial": b})
    return {"pass": not diffs, "diffs": diffs,
            "checked": len(set(expected) | set(ch.entries))}
