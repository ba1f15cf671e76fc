"""Verification suites behind `paramac verify` and the test suite.

Each suite returns a machine-readable report: {"suite", "type", "checks":
[{"name", "pass", ...witness...}], "pass"}.  Random inputs are drawn from a
seeded generator so that runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .cartan import Coweight, Weight, build_root_system
from .characters import character, compare_character, relations_for
from .groupring import LaurentPoly, TruncatedQSeries, ring_of
from .liealg import LieData
from .macdonald import engine, spectral, spectral_scalar
from .pairing import KernelSpec, pairing_context
from .weyl import weyl_group


def _report(suite: str, type_string: str, checks: list[dict]) -> dict:
    return {"suite": suite, "type": type_string,
            "pass": all(c["pass"] for c in checks), "checks": checks}


def _check(name: str, ok: bool, **extra) -> dict:
    out = {"name": name, "pass": bool(ok)}
    out.update(extra)
    return out


def random_poly(rs, rng: random.Random, box: int = 2, nterms: int = 4,
                qt_exponents: int = 1) -> LaurentPoly:
    S = ring_of(rs)
    terms = {}
    for _ in range(nterms):
        w = Weight(tuple(rng.randint(-box, box) for _ in range(rs.rank)))
        c = S.monomial(rng.randint(-3, 3) or 1,
                       Fraction(rng.randint(-qt_exponents, qt_exponents)),
                       rng.randint(-qt_exponents, qt_exponents))
        terms[w] = terms.get(w, S.zero) + c
    return LaurentPoly(rs, terms)


def _weights_box(rs, box: int):
    return [Weight(c) for c in itertools.product(range(-box, box + 1), repeat=rs.rank)]


def _j_subsets(rs):
    idx = range(rs.rank)
    return [tuple(j) for r in range(rs.rank + 1) for j in itertools.combinations(idx, r)]


# -- suite: orders -----------------------------------------------------------------


def verify_orders(type_string: str, box: int = 2) -> dict:
    W = weyl_group(type_string)
    rs = W.rs
    checks = []

    weights = _weights_box(rs, box)
    leq = W.cherednik_leq
    # antisymmetry + transitivity, exhaustively on box lower sets
    ok_anti, ok_trans, witness = True, True, None
    pool = sorted({nu for lam in weights for nu in W.lower_set(lam)},
                  key=lambda w: w.coords)
    if len(pool) > 60:
        pool = pool[:60]
    for a in pool:
        for b in pool:
            if a != b and leq(a, b) and leq(b, a):
                ok_anti, witness = False, (a.coords, b.coords)
    for a in pool:
        for b in pool:
            if not leq(a, b):
                continue
            for c in pool:
                if leq(b, c) and not leq(a, c):
                    ok_trans, witness = False, (a.coords, b.coords, c.coords)
    checks.append(_check("cherednik-antisymmetry", ok_anti, witness=witness))
    checks.append(_check("cherednik-transitivity", ok_trans, witness=witness))

    # dominance <-> Bruhat equivalence inside orbits
    ok = True
    for lam in weights:
        lam_minus, _ = W.antidominant(lam)
        for nu in W.orbit(lam_minus):
            a = rs.dominance_leq(lam, nu)
            _, s_nu = W.antidominant(nu)
            _, s_lam = W.antidominant(lam)
            b = W.bruhat_leq(s_lam, s_nu)
            if a != b:
                ok = False
    checks.append(_check("dominance-bruhat-equivalence", ok))

    # downward closure of lower sets
    ok = True
    for lam in weights:
        low = W.lower_set(lam)
        low_set = set(low)
        for nu in low:
            for eta in W.lower_set(nu):
                if eta not in low_set:
                    ok = False
    checks.append(_check("lower-set-downward-closed", ok))

    # Bruhat subword criterion vs brute-force enumeration
    ok = True
    els = W.elements()
    if len(els) <= 60:
        for u in els:
            for w in els:
                brute = _bruhat_brute(W, u, w)
                if W.bruhat_leq(u, w) != brute:
                    ok = False
    checks.append(_check("bruhat-subword-agreement", ok))
    return _report("orders", type_string, checks)


def _bruhat_brute(W, u, w) -> bool:
    word = w.word
    for mask in range(1 << len(word)):
        sub = tuple(word[i] for i in range(len(word)) if mask & (1 << i))
        if len(sub) != u.length():
            continue
        if W.from_word(sub) == u:
            return True
    return u.length() == 0


# -- suite: daha ----------------------------------------------------------------------


def _affine_braid_order(ops, i: int, j: int):
    """Order of s_i s_j in W^af from the affine Cartan pairings."""
    ri, rj = ops.ext.affine_simple_root(i), ops.ext.affine_simple_root(j)
    rs = ops.rs
    a = rs.pair_weight_coroot(rs.root_to_weight(rj.root), ri.root)
    b = rs.pair_weight_coroot(rs.root_to_weight(ri.root), rj.root)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(a * b)  # None means infinite


def verify_daha(type_string: str, seed: int = 0, count: int = 50, box: int = 2,
                nterms: int = 3) -> dict:
    ops = engine(type_string).ops
    rs = ops.rs
    S = ops.S
    rng = random.Random(seed)
    n = rs.rank
    checks = []
    polys = [random_poly(rs, rng, box=box, nterms=nterms) for _ in range(count)]
    t = S.t_power(1)

    ok = all(ops.apply_T(i, ops.apply_T(i, f)) ==
             ops.apply_T(i, f).scale(t - 1) + f.scale(t)
             for i in range(n + 1) for f in polys)
    checks.append(_check("quadratic", ok))

    ok = all(ops.apply_T(i, ops.apply_T_inv(i, f)) == f
             for i in range(n + 1) for f in polys)
    checks.append(_check("inverse", ok))

    braid_ok = True
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            m = _affine_braid_order(ops, i, j)
            if m is None:
                continue
            word_a = ([i, j] * m)[:m]
            word_b = ([j, i] * m)[:m]
            for f in polys:
                a, b = f, f
                for k in reversed(word_a):
                    a = ops.apply_T(k, a)
                for k in reversed(word_b):
                    b = ops.apply_T(k, b)
                if a != b:
                    braid_ok = False
    checks.append(_check("affine-braid", braid_ok))

    # pi T_i pi^{-1} = T_j along the diagram automorphism
    pi_ok = True
    seen_pi = set()
    for k in range(n):
        d = ops.ext.reduced_translation(Coweight(tuple(int(a == k) for a in range(n))))
        key = (d.pi.nu.coords, d.pi.w.word)
        if key in seen_pi:
            continue
        seen_pi.add(key)
        perm = ops.ext.pi_diagram_permutation(d.pi)
        for f in polys:
            for i in range(n + 1):
                lhs = ops.apply_pi(d.pi, ops.apply_T(i, ops.apply_pi(ops.ext.inv(d.pi), f)))
                rhs = ops.apply_T(perm[i], f)
                if lhs != rhs:
                    pi_ok = False
    checks.append(_check("pi-conjugation", pi_ok))

    ok = True
    for f in polys:
        eta = Coweight(tuple(rng.randint(-2, 2) for _ in range(n)))
        nu = Coweight(tuple(rng.randint(-2, 2) for _ in range(n)))
        if ops.apply_Y(eta, ops.apply_Y(nu, f)) != ops.apply_Y(eta + nu, f):
            ok = False
    checks.append(_check("Y-commutativity", ok))

    # T_i^{-1} Y^nu T_i^{-1} = t^{-1} Y^{s_i nu} when <alpha_i, nu> = 1
    ok = True
    for i in range(1, n + 1):
        nu = Coweight(tuple(int(a == i - 1) for a in range(n)))  # omega_i^vee
        snu = ops.group.act_coweight(ops.group.simple(i - 1), nu)
        for f in polys:
            lhs = ops.apply_T_inv(i, ops.apply_Y(nu, ops.apply_T_inv(i, f)))
            rhs = ops.apply_Y(snu, f).scale(S.t_power(-1))
            if lhs != rhs:
                ok = False
    checks.append(_check("hecke-Y-exchange", ok))

    # triangularity of Y on lower sets
    W = ops.group
    ok = True
    for lam in _weights_box(rs, 1):
        low = W.lower_set(lam)
        low_set = set(low)
        for mu in low:
            img = ops.apply_Y(rs.rho_vee, LaurentPoly.monomial(rs, mu))
            if not set(img.terms) <= set(W.lower_set(mu)):
                ok = False
    checks.append(_check("Y-triangularity", ok))

    ok = True
    for J in _j_subsets(rs):
        f = polys[0]
        g = ops.symmetrize_PJ(J, f)
        for i in J:
            if g.weyl_act(W, W.simple(i)) != g:
                ok = False
    checks.append(_check("PJ-symmetry", ok))
    return _report("daha", type_string, checks)


# -- suite: orthogonality ------------------------------------------------------------


def verify_orthogonality(type_string: str, N: int = 8, box: int = 2,
                         seed: int = 0, full_box: bool = False) -> dict:
    ctx = pairing_context(type_string)
    M = ctx.engine
    rs = ctx.rs
    S = ctx.S
    rng = random.Random(seed)
    checks = []
    N = Fraction(N)
    one = LaurentPoly.one(rs)

    norm = ctx.pairing(one, one, KernelSpec((), "generic", "cherednik"), N)
    checks.append(_check("pairing-normalization",
                         norm == TruncatedQSeries.constant(S, 1, N)))

    weights = _weights_box(rs, box)
    bad = []
    for J in _j_subsets(rs):
        spec = KernelSpec(J, "generic", "cherednik")
        lams = [w for w in weights if all(w.coords[i] <= 0 for i in J)]
        if not full_box and len(lams) > 6:
            lams = lams[::max(1, len(lams) // 6)]
        Es = {lam: M.parasym_E(J, lam).poly for lam in lams}
        for a, b in itertools.combinations(lams, 2):
            val = ctx.pairing(Es[a], Es[b], spec, N)
            if not val.vanishes_through(N):
                bad.append({"J": list(J), "a": a.coords, "b": b.coords})
    checks.append(_check("EJ-orthogonality", not bad, failures=bad[:5]))

    # adjunction <T_i^{-1} f, g> = <f, T_i g> and <pi f, g> = <f, pi^{-1} g>
    spec0 = KernelSpec((), "generic", "cherednik")
    ops = M.ops
    ok = True
    for _ in range(3):
        f = random_poly(rs, rng, box=1, nterms=3, qt_exponents=0)
        g = random_poly(rs, rng, box=1, nterms=3, qt_exponents=0)
        for i in range(rs.rank + 1):
            lhs = ctx.pairing(ops.apply_T_inv(i, f), g, spec0, N)
            rhs = ctx.pairing(f, ops.apply_T(i, g), spec0, N)
            if lhs != rhs:
                ok = False
    checks.append(_check("adjunction", ok))

    # W^J-invariance of the J-pairing
    ok = True
    for J in _j_subsets(rs):
        if not J:
            continue
        spec = KernelSpec(J, "generic", "cherednik")
        f = random_poly(rs, rng, box=1, nterms=3, qt_exponents=0)
        g = random_poly(rs, rng, box=1, nterms=3, qt_exponents=0)
        base = ctx.pairing(f, g, spec, 4)
        for i in J:
            w = ctx.group.simple(i)
            if ctx.pairing(f.weyl_act(ctx.group, w), g.weyl_act(ctx.group, w),
                           spec, 4) != base:
                ok = False
    checks.append(_check("J-pairing-invariance", ok))

    # kernel identity mu_{P_J} = mu^J_{t=0} * prod (1-q^k)^n
    ok = True
    for J in _j_subsets(rs):
        ext = ctx.expand_kernel(KernelSpec(J, "t-zero", "ext-pairing"), N, 8)
        tz = ctx.expand_kernel(KernelSpec(J, "t-zero", "cherednik"), N, 8)
        fac = TruncatedQSeries.constant(S, 1, N)
        for k in range(1, int(N) + 1):
            step = TruncatedQSeries(S, N, {Fraction(k): S.one})
            for _ in range(rs.rank):
                fac = fac * (TruncatedQSeries.constant(S, 1, N) - step)
        for w in set(ext.weights) | set(tz.weights):
            if rs.height1(w) > 8:
                continue
            if ext.coeff(w, S) != tz.coeff(w, S) * fac:
                ok = False
    checks.append(_check("kernel-identity", ok))

    maxden = max((c.max_q_denominator()
                  for lam in weights for c in M.nonsym_E(lam).poly.terms.values()),
                 default=1)
    checks.append(_check("q-denominator-report", True, max_q_denominator=maxden))
    return _report("orthogonality", type_string, checks)


# -- suite: specialization -------------------------------------------------------------


def verify_specialization(type_string: str, box: int = 2, N: int = 8) -> dict:
    ctx = pairing_context(type_string)
    M = ctx.engine
    rs = ctx.rs
    checks = []
    weights = _weights_box(rs, box)

    poles = []
    identity_bad = []
    for J in _j_subsets(rs):
        lams = [w for w in weights if all(w.coords[i] <= 0 for i in J)]
        for lam in lams:
            res = M.parasym_E(J, lam)
            try:
                at0 = M.specialize_E(res, "zero")
                M.specialize_E(res, "infinity")
            except Exception as exc:  # PoleAtSpecialization is a bug signal
                poles.append({"J": list(J), "lam": lam.coords, "error": str(exc)})
                continue
            if at0 != M.specialize_E(M.nonsym_E(lam), "zero"):
                identity_bad.append({"J": list(J), "lam": lam.coords})
    checks.append(_check("specialization-totality", not poles, failures=poles[:5]))
    checks.append(_check("EJ-t0-equals-E-t0", not identity_bad,
                         failures=identity_bad[:5]))

    # t=infinity decomposition: unit leading coefficient, zero residual,
    # plus the empirical product-form report for the coefficient ratios
    bad = []
    product_form = True
    for J in _j_subsets(rs):
        lams = [w for w in weights if all(w.coords[i] <= 0 for i in J)]
        if len(lams) > 4:
            lams = lams[::max(1, len(lams) // 4)]
        for lam in lams:
            try:
                coeffs = M.decompose_tinf(J, lam)
            except Exception as exc:
                bad.append({"J": list(J), "lam": lam.coords, "error": str(exc)})
                continue
            for mu, c in coeffs.items():
                if not _is_q_factor_product(c):
                    product_form = False
    checks.append(_check("tinf-decomposition", not bad, failures=bad[:5]))
    checks.append(_check("tinf-ratios-product-form-report", True,
                         all_products_of_q_factors=product_form))

    # <E^J(q,0), E^J(q,inf)>^J_{t=0} orthogonality
    bad = []
    for J in _j_subsets(rs):
        spec = KernelSpec(J, "t-zero", "cherednik")
        lams = [w for w in weights if all(w.coords[i] <= 0 for i in J)]
        if len(lams) > 5:
            lams = lams[::max(1, len(lams) // 5)]
        for a, b in itertools.combinations(lams, 2):
            fa = M.specialize_E(M.parasym_E(J, a), "zero")
            gb = M.specialize_E(M.parasym_E(J, b), "infinity")
            if not ctx.pairing(fa, gb, spec, N).vanishes_through(Fraction(N)):
                bad.append({"J": list(J), "a": a.coords, "b": b.coords})
    checks.append(_check("t0-tinf-orthogonality", not bad, failures=bad[:5]))
    return _report("specialization", type_string, checks)


def _is_q_factor_product(c) -> bool:
    """Check whether a q-rational is +- q^a * prod (1-q^j)^{+-1}."""
    S = c.field
    for poly in (c.fe.numer, c.fe.denom):
        work = poly
        # strip monomial content
        shift = min((m[0] for m, _ in work.terms()), default=0)
        if shift:
            work = S.ring.from_dict({(m[0] - shift, m[1]): cc for m, cc in work.terms()})
        guard = 0
        while work.degree(0) > 0 and guard < 200:
            guard += 1
            for m in range(1, 33):
                cand = S.ring.from_dict({(0, 0): 1, (m * S.two_e, 0): -1})
                q, r = work.div(cand)
                if not r:
                    work = q
                    break
            else:
                return False
        if work.degree(0) > 0:
            return False
    return True


# -- suite: characters --------------------------------------------------------------------


def verify_characters(type_string: str, q_max: int = 5, box: int = 2,
                      weights=None) -> dict:
    """Theorem-A-style character comparison at desk scale (sl2/sl3)."""
    lie = LieData(type_string)
    M = engine(type_string)
    rs = lie.rs
    checks = []
    if weights is None:
        weights = [w for w in _weights_box(rs, box)]
    for J in _j_subsets(rs):
        lams = [w for w in weights if all(w.coords[i] <= 0 for i in J)]
        for lam in lams:
            E0 = M.specialize_E(M.parasym_E(J, lam), "zero")
            depth = _needed_depth(rs, lam, E0) + 1
            spec = relations_for(lie, "D", lam, J, q_max)
            rep = compare_character(character(lie, spec, q_max, depth), E0, q_max)
            checks.append(_check(f"D J={list(J)} lam={lam.coords}", rep["pass"],
                                 **({} if rep["pass"] else {"diffs": rep["diffs"][:4]})))

            Einf = M.specialize_E(M.parasym_E(J, lam), "infinity").star_qx()
            mu = -M.group.act(M.group.longest(J), lam)
            depth = _needed_depth(rs, mu, Einf) + 1
            specU = relations_for(lie, "U", mu, J, q_max)
            repU = compare_character(character(lie, specU, q_max, depth), Einf, q_max)
            checks.append(_check(f"U J={list(J)} lam={lam.coords}", repU["pass"],
                                 **({} if repU["pass"] else {"diffs": repU["diffs"][:4]})))
    return _report("characters", type_string, checks)


def _needed_depth(rs, lam: Weight, p: LaurentPoly) -> int:
    return max((int(rs.height1(lam - w)) for w in p.terms), default=0)


# -- suite: lemmas ----------------------------------------------------------------------------


def verify_lemmas(type_string: str) -> dict:
    W = weyl_group(type_string)
    rs = W.rs
    checks = []
    idx = range(rs.rank)
    for rJ in range(rs.rank + 1):
        for J in itertools.combinations(idx, rJ):
            for rK in range(len(J) + 1):
                for K in itertools.combinations(J, rK):
                    rep = W.length_lemmas_check(J, K)
                    checks.append(_check(f"J={list(J)} K={list(K)}", rep["pass"],
                                         checked=rep["checked"],
                                         failures=rep["failures"][:3]))
    return _report("lemmas", type_string, checks)


SUITES = {
    "orders": verify_orders,
    "daha": verify_daha,
    "orthogonality": verify_orthogonality,
    "specialization": verify_specialization,
    "characters": verify_characters,
    "lemmas": verify_lemmas,
}
