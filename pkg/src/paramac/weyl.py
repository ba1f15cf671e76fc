"""Finite Weyl group: elements, Bruhat order, Cherednik orders, lower sets.

A WeylElem stores a canonical reduced word plus its action matrix on weight
coordinates; two elements are equal iff their matrices are.  The canonical
word is the greedy left-descent word (least descent index first), so element
construction is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import Root, RootSystem, Weight
from .errors import NotJAntidominant

Matrix = tuple[tuple[int, ...], ...]


def _identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


@dataclass(frozen=True, slots=True)
class WeylElem:
    word: tuple[int, ...]
    matrix: Matrix

    def __eq__(self, other):
        return isinstance(other, WeylElem) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def length(self) -> int:
        return len(self.word)

    def __str__(self):
        return "e" if not self.word else "*".join(f"s{i + 1}" for i in self.word)


class WeylGroup:
    """Weyl group attached to a RootSystem; caches simple-reflection data."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        self._simple_mats = []
        C = rs.cartan
        for i in range(n):
            # s_i(lam)_j = l_j - l_i C[j][i]
            m = [[int(j == k) for k in range(n)] for j in range(n)]
            for j in range(n):
                m[j][i] -= C[j][i]
            self._simple_mats.append(tuple(tuple(row) for row in m))
        self.identity = WeylElem((), _identity_matrix(n))

    # -- construction ----------------------------------------------------------

    def simple(self, i: int) -> WeylElem:
        return WeylElem((i,), self._simple_mats[i])

    def from_word(self, word) -> WeylElem:
        m = _identity_matrix(self.rs.rank)
        for i in word:
            m = _mat_mul(m, self._simple_mats[i])
        return self._canonical(m)

    def _canonical(self, m: Matrix) -> WeylElem:
        """Canonical reduced word of the element with matrix m (greedy descent)."""
        word = []
        cur = m
        while True:
            i = self._left_descent(cur)
            if i is None:
                break
            word.append(i)
            cur = _mat_mul(self._simple_mats[i], cur)
        return WeylElem(tuple(word), m)

    def _left_descent(self, m: Matrix) -> int | None:
        """Least i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) < 0."""
        for i in range(self.rs.rank):
            if self._acts_negatively_inv(m, i):
                return i
        return None

    def _acts_negatively_inv(self, m: Matrix, i: int) -> bool:
        # w^{-1} alpha_i < 0 iff row pattern of alpha_i under w^{-1}; cheaper:
        # w^{-1} alpha_i < 0 iff alpha_i in w(Phi_-), test via root action.
        winv = _transpose_inverse_action(self, m)
        r = self.act_on_root_mat(winv, self.rs.simple_root(i))
        return r.is_negative()

    def act_on_root_mat(self, m: Matrix, r: Root) -> Root:
        """Action on a root through weight coordinates (exact integer result)."""
        rs = self.rs
        w = rs.root_to_weight(r)
        img = Weight(tuple(sum(m[i][j] * w.coords[j] for j in range(rs.rank))
                           for i in range(rs.rank)))
        coords = rs.weight_to_root_coords(img)
        assert all(c.denominator == 1 for c in coords)
        return Root(tuple(int(c) for c in coords))

    # -- group operations --------------------------------------------------------

    def mul(self, a: WeylElem, b: WeylElem) -> WeylElem:
        return self._canonical(_mat_mul(a.matrix, b.matrix))

    def inv(self, a: WeylElem) -> WeylElem:
        return self.from_word(tuple(reversed(a.word)))

    def act(self, w: WeylElem, lam: Weight) -> Weight:
        m = w.matrix
        n = self.rs.rank
        return Weight(tuple(sum(m[i][j] * lam.coords[j] for j in range(n))
                            for i in range(n)))

    def act_root(self, w: WeylElem, r: Root) -> Root:
        return self.act_on_root_mat(w.matrix, r)

    def act_coweight(self, w: WeylElem, nu):
        """Coweight action: c_j(s_i nu) = c_j - c_i C[i][j], extended along words."""
        from .cartan import Coweight
        C = self.rs.cartan
        coords = list(nu.coords)
        for i in reversed(w.word):
            ci = coords[i]
            coords = [coords[j] - ci * C[i][j] for j in range(self.rs.rank)]
        return Coweight(tuple(coords))

    # -- enumeration ---------------------------------------------------------------

    def elements(self, J: tuple[int, ...] | None = None) -> list[WeylElem]:
        """All elements of W^J (default: all of W), BFS order by length."""
        gens = range(self.rs.rank) if J is None else J
        seen = {self.identity.matrix: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for i in gens:
                    u = self.mul(self.simple(i), w)
                    if u.matrix not in seen:
                        seen[u.matrix] = u
                        nxt.append(u)
            frontier = nxt
        return sorted(seen.values(), key=lambda w: (w.length(), w.word))

    def longest(self, J: tuple[int, ...]) -> WeylElem:
        """w_0^J, the longest element of the parabolic W^J."""
        els = self.elements(J)
        return els[-1]

    # -- lengths and Bruhat order ----------------------------------------------------

    def bruhat_leq(self, u: WeylElem, w: WeylElem) -> bool:
        """Subword criterion, run against the canonical word of w."""
        if u.length() > w.length():
            return False
        if not u.word:
            return True
        i = w.word[0]
        rest = self.from_word(w.word[1:])
        su = self.mul(self.simple(i), u)
        if su.length() < u.length():
            return self.bruhat_leq(su, rest)
        return self.bruhat_leq(u, rest)

    # -- antidominant data --------------------------------------------------------------

    def antidominant(self, lam: Weight) -> tuple[Weight, WeylElem]:
        """(lam_-, sigma_lam): antidominant representative and the shortest
        element with sigma(lam_-) = lam.

        Greedy: while some coordinate of the moving weight is > 0, reflect at
        the least such index.  The collected word, read in application order,
        is a reduced word for sigma_lam.
        """
        cur = lam
        word = []
        while True:
            i = next((k for k, c in enumerate(cur.coords) if c > 0), None)
            if i is None:
                break
            word.append(i)
            cur = self.act(self.simple(i), cur)
        return cur, self.from_word(tuple(word))

    def sigma(self, lam: Weight) -> WeylElem:
        return self.antidominant(lam)[1]

    # -- Cherednik orders ------------------------------------------------------------------

    def cherednik_leq(self, lam: Weight, mu: Weight) -> bool:
        """lam preceq mu: lam_- > mu_- in dominance, or same orbit and lam >= mu."""
        lm, _ = self.antidominant(lam)
        mm, _ = self.antidominant(mu)
        if lm == mm:
            return self.rs.dominance_leq(mu, lam)
        return self.rs.dominance_leq(mm, lm)

    def cherednik_leq_dual(self, lam: Weight, mu: Weight) -> bool:
        lm, _ = self.antidominant(lam)
        mm, _ = self.antidominant(mu)
        if lm == mm:
            return self.rs.dominance_leq(lam, mu)
        return self.rs.dominance_leq(mm, lm)

    # -- lower sets ----------------------------------------------------------------------------

    def _antidominants_above(self, lam_minus: Weight) -> list[Weight]:
        """Antidominant mu_- with mu_- > lam_- in dominance.

        Search mu_- = lam_- + beta over beta in Q_+ using the norm bound
        (mu_-, mu_-) <= (lam_-, lam_-), which holds for dominance-comparable
        antidominant weights.
        """
        rs = self.rs
        n = rs.rank
        # (beta,beta) <= -2(lam_-,beta) <= 2 sum k_i |(lam_-,alpha_i)| and
        # (beta,beta) >= m_min * (sum k_i)^2 / n for the Gram matrix's least
        # eigenvalue; a crude integer bound on sum k_i follows.
        gram = [[rs.form_roots(rs.simple_root(i), rs.simple_root(j)) for j in range(n)]
                for i in range(n)]
        m_min = min(gram[i][i] for i in range(n)) / (2 * n)  # safe underestimate
        lam_alpha = max((abs(rs.form_weights(lam_minus, rs.root_to_weight(rs.simple_root(i))))
                         for i in range(n)), default=Fraction(0))
        bound = int(2 * n * lam_alpha / m_min) + 1 if lam_alpha > 0 else 0
        norm_lam = rs.form_weights(lam_minus, lam_minus)

        out = []

        def rec(i, coords):
            if i == n:
                if all(c == 0 for c in coords):
                    return
                beta = Root(tuple(coords))
                mu = lam_minus + rs.root_to_weight(beta)
                if all(c <= 0 for c in mu.coords) and rs.form_weights(mu, mu) <= norm_lam:
                    out.append(mu)
                return
            for k in range(bound + 1):
                coords.append(k)
                if sum(coords) <= bound:
                    rec(i + 1, coords)
                coords.pop()

        rec(0, [])
        return out

    def orbit(self, lam: Weight) -> list[Weight]:
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for mu in frontier:
                for i in range(self.rs.rank):
                    img = self.act(self.simple(i), mu)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return sorted(seen, key=lambda w: w.coords)

    def lower_set(self, lam: Weight) -> list[Weight]:
        """All nu preceq lam, sorted by the fixed linear extension of preceq.

        Primary key: dominance height of nu_- above lam_- descending (larger
        antidominant representative first); secondary: l(sigma_nu) descending;
        tie-break: lexicographic coordinates.  lam is always last.
        """
        rs = self.rs
        lam_minus, _ = self.antidominant(lam)
        members: list[Weight] = []
        for mu_minus in self._antidominants_above(lam_minus):
            members.extend(self.orbit(mu_minus))
        for nu in self.orbit(lam_minus):
            if rs.dominance_leq(lam, nu):
                members.append(nu)

        def key(nu: Weight):
            nu_minus, sig = self.antidominant(nu)
            diff = rs.weight_to_root_coords(nu_minus - lam_minus)
            dom_height = sum(diff)
            assert all(c.denominator == 1 and c >= 0 for c in diff)
            return (-dom_height, -sig.length(), nu.coords)

        return sorted(set(members), key=key)

    # -- parabolic coset data -----------------------------------------------------------------------

    def coset_data(self, J: tuple[int, ...], lam: Weight):
        """(w_0^J, stabilizer K-subset, minimal representatives of W^J/Stab).

        Requires lam in P_J^-.  The stabilizer of w_0^J(lam) inside W^J is the
        parabolic generated by {s_i : i in J, <w_0^J lam, alpha_i^vee> = 0},
        and every returned representative sigma satisfies
        l(sigma tau) = l(sigma) + l(tau) for tau in the stabilizer.
        """
        check_J_antidominant(lam, J)
        w0J = self.longest(J)
        lam_plus = self.act(w0J, lam)
        K = tuple(i for i in J if lam_plus.coords[i] == 0)
        stab = self.elements(K)
        stab_set = {w.matrix for w in stab}
        reps = self.minimal_coset_reps(J, K)
        for sigma in reps:
            for tau in stab:
                prod = self.mul(sigma, tau)
                assert prod.length() == sigma.length() + tau.length()
        assert len(reps) * len(stab) == len(self.elements(J))
        return w0J, stab, reps

    def minimal_coset_reps(self, J: tuple[int, ...], K: tuple[int, ...]) -> list[WeylElem]:
        """Minimal-length representatives of the left cosets W^J / W^K, K subset J."""
        stab = self.elements(K)
        reps = []
        seen = set()
        for w in self.elements(J):  # BFS order: first hit per coset is minimal
            key = frozenset(self.mul(w, tau).matrix for tau in stab)
            fkey = min(key)
            if fkey not in seen:
                seen.add(fkey)
                reps.append(w)
        return reps

    def minimal_coset_reps_right(self, J: tuple[int, ...], K: tuple[int, ...]) -> list[WeylElem]:
        """Minimal-length representatives of the right cosets W^K \\ W^J."""
        stab = self.elements(K)
        reps = []
        seen = set()
        for w in self.elements(J):
            fkey = min(self.mul(tau, w).matrix for tau in stab)
            if fkey not in seen:
                seen.add(fkey)
                reps.append(w)
        return reps

    def length_lemmas_check(self, J: tuple[int, ...], K: tuple[int, ...]) -> dict:
        """Exhaustively verify the two parabolic length identities.

        (1) for eta minimal in W^K \\ W^J and tau in W^K:
            l(tau eta) = l(tau) + l(eta), and eta is minimal iff
            Phi^K_+ subset eta(Phi^J_+);
        (2) for sigma minimal in W^J / W^K:
            l(w_0^K w_0^J) = l(sigma w_0^K w_0^J) + l(sigma).
        """
        assert set(K) <= set(J)
        failures = []
        etas = self.minimal_coset_reps_right(J, K)
        taus = self.elements(K)
        pos_K = [r for r in self.rs.positive_roots
                 if all(r.coords[i] == 0 for i in range(self.rs.rank) if i not in K)]
        pos_J = [r for r in self.rs.positive_roots
                 if all(r.coords[i] == 0 for i in range(self.rs.rank) if i not in J)]
        eta_set = {w.matrix for w in etas}
        for eta in self.elements(J):
            image = {self.act_root(eta, r).coords for r in pos_J}
            contained = all(r.coords in image for r in pos_K)
            if contained != (eta.matrix in eta_set):
                failures.append(("min-characterization", eta.word))
        for eta in etas:
            for tau in taus:
                if self.mul(tau, eta).length() != tau.length() + eta.length():
                    failures.append(("l(tau*eta)", tau.word, eta.word))
        w0K = self.longest(K)
        w0J = self.longest(J)
        w = self.mul(w0K, w0J)
        for sigma in self.minimal_coset_reps(J, K):
            if w.length() != self.mul(sigma, w).length() + sigma.length():
                failures.append(("l(w0K*w0J)", sigma.word))
        return {
            "J": list(J), "K": list(K),
            "checked": len(etas) * len(taus) + len(self.elements(J)),
            "pass": not failures,
            "failures": failures,
        }


def check_J_antidominant(lam: Weight, J: tuple[int, ...]):
    bad = [i for i in J if lam.coords[i] > 0]
    if bad:
        raise NotJAntidominant(f"weight {lam} has positive coordinate(s) at J-indices {bad}")


def _transpose_inverse_action(group: WeylGroup, m: Matrix) -> Matrix:
    """Matrix of w^{-1} given the matrix of w (orthogonality via word reversal
    is unavailable here, so invert exactly over the rationals)."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
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
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            assert v.denominator == 1
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def weyl_group(type_string: str) -> WeylGroup:
    from .cartan import build_root_system
    return WeylGroup(build_root_system(type_string))
