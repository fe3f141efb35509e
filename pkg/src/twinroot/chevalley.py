"""Split loop groups SL_n(F_q[t,t^-1]) for n = 2, 3.

Root groups are I + r t^k E_ij; the affine Weyl group is realized over the
affine Cartan matrix, with cells computed from the relative position of
period lattice flags (an exact invariant of the double coset) and the
b1 * w * b2 factorization recovered by descent peeling, every step being a
certified multiplication by root-group elements and canonical reflection
representatives.  The quasi-split unitary descent built on top of SL_3
lives in the descent module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import weyl
from .errors import (
    BadRoot,
    DegreeWindowExceeded,
    NotUnimodular,
    OracleInconsistent,
    RankMismatch,
    TrivialElement,
)
from .fields import GaloisField, gf_of_order
from .gcm import validate_gcm
from .laurent import LaurentMatrix, LaurentPoly, diagonal, elementary
from .weyl import WeylElement

AffineRoot = tuple[int, int, int]  # (i, j, level): I + r t^level E_ij


@dataclass(frozen=True)
class AffineRootGroupElement:
    """Parametrized unipotent I + r t^k E_ij with its positivity convention."""

    classical_root: tuple[int, int]
    level: int
    param: int  # encoded field value

    @property
    def is_positive(self) -> bool:
        i, j = self.classical_root
        return self.level > 0 or (self.level == 0 and i < j)


def affine_root_is_positive(root: AffineRoot) -> bool:
    i, j, k = root
    return k > 0 or (k == 0 and i < j)


_AFFINE_GCM = {
    2: validate_gcm([[2, -2], [-2, 2]]),
    3: validate_gcm([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]),
}


class LoopGroup:
    """SL_n over F_q[t, t^-1] with its affine BN-pair combinatorics."""

    def __init__(self, field: GaloisField, n: int, window: int = 8):
        if n not in (2, 3):
            raise RankMismatch("loop groups implemented for n in {2, 3}")
        self.field = field
        self.n = n
        self.window = window
        self.gcm = _AFFINE_GCM[n]
        # node 0 is the level-1 affine node, nodes 1..n-1 the classical chain
        self.simple_roots: tuple[AffineRoot, ...] = tuple(
            [(n - 1, 0, 1)] + [(m - 1, m, 0) for m in range(1, n)]
        )
        self._delta = tuple(1 for _ in range(n))

    # --- root bookkeeping --------------------------------------------------

    def _classical_vector(self, i: int, j: int):
        """epsilon_i - epsilon_j (i < j) in simple coordinates (nodes 1..n-1)."""
        v = [0] * self.n
        for m in range(i + 1, j + 1):
            v[m] = 1
        return v

    def root_vector(self, root: AffineRoot):
        """Coordinates of an affine real root over the affine Cartan matrix."""
        i, j, k = root
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise BadRoot(f"bad classical pair {(i, j)}")
        if i < j:
            v = self._classical_vector(i, j)
        else:
            v = [-x for x in self._classical_vector(j, i)]
        return tuple(v[m] + k * self._delta[m] for m in range(self.n))

    def vector_to_root(self, vector) -> AffineRoot:
        k = vector[0]
        classical = tuple(vector[m] - k for m in range(self.n))
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                cand = (
                    self._classical_vector(i, j)
                    if i < j
                    else [-x for x in self._classical_vector(j, i)]
                )
                if tuple(cand) == classical:
                    return (i, j, k)
        raise BadRoot(f"{vector} is not a real root of the affine system")

    def level_of_vector(self, vector) -> int:
        return vector[0]

    # --- elements ------------------------------------------------------------

    def identity(self) -> LaurentMatrix:
        return LaurentMatrix.identity(self.field, self.n)

    def root_group_element(self, root: AffineRoot, r: int) -> LaurentMatrix:
        i, j, k = root
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise BadRoot(f"bad classical pair {(i, j)}")
        return elementary(self.field, self.n, i, j, LaurentPoly.monomial(self.field, k, r))

    def u(self, node: int, r: int) -> LaurentMatrix:
        """Simple affine root group element for a diagram node."""
        return self.root_group_element(self.simple_roots[node], r)

    def root_group_elements(self, root: AffineRoot):
        return [self.root_group_element(root, r) for r in self.field.elements()]

    def mu_map(self, root: AffineRoot, r: int) -> LaurentMatrix:
        """m(u) = u_{-a}(-1/r) u_a(r) u_{-a}(-1/r); antidiagonal on the 2x2 block."""
        if r == 0:
            raise TrivialElement("mu-map of the trivial root group element")
        i, j, k = root
        f = self.field
        minus = self.root_group_element((j, i, -k), f.neg(f.inv(r)))
        return minus * self.root_group_element(root, r) * minus

    def torus_diag(self, units) -> LaurentMatrix:
        """diag of Laurent units; caller is responsible for det = 1."""
        return diagonal(self.field, tuple(units))

    def is_torus(self, g: LaurentMatrix) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                p = g.entry(i, j)
                if i == j:
                    if not p.is_unit():
                        return False
                elif not p.is_zero():
                    return False
        return True

    # --- Borel membership (syntactic) ---------------------------------------

    def in_positive_borel(self, g: LaurentMatrix) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                p = g.entry(i, j)
                if not p.is_zero() and p.val < 0:
                    return False
                if i > j and p.coeff(0) != 0:
                    return False
        return True

    def in_negative_borel(self, g: LaurentMatrix) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                p = g.entry(i, j)
                if not p.is_zero() and p.deg > 0:
                    return False
                if i < j and p.coeff(0) != 0:
                    return False
        return True

    def in_borel(self, sign: int, g: LaurentMatrix) -> bool:
        return self.in_positive_borel(g) if sign > 0 else self.in_negative_borel(g)

    # --- Weyl elements from monomial matrices --------------------------------

    def is_monomial(self, g: LaurentMatrix) -> bool:
        for i in range(self.n):
            if sum(0 if g.entry(i, j).is_zero() else 1 for j in range(self.n)) != 1:
                return False
            if sum(0 if g.entry(j, i).is_zero() else 1 for j in range(self.n)) != 1:
                return False
        return all(
            g.entry(i, j).is_zero() or g.entry(i, j).is_monomial()
            for i in range(self.n)
            for j in range(self.n)
        )

    def _conjugate_root(self, m: LaurentMatrix, m_inv: LaurentMatrix, root: AffineRoot) -> AffineRoot:
        conj = m * self.root_group_element(root, 1) * m_inv
        found = None
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                p = conj.entry(i, j)
                if p.is_zero():
                    continue
                if found is not None or not p.is_monomial():
                    raise OracleInconsistent("conjugate of a root element is not a root element")
                found = (i, j, p.val)
        if found is None:
            raise OracleInconsistent("conjugate of a root element is trivial")
        return found

    def weyl_from_monomial(self, m: LaurentMatrix) -> WeylElement:
        """Abstract affine Weyl element of a monomial matrix, read off from
        its conjugation action on the simple root groups."""
        m_inv = m.inverse()
        cols = []
        cols_inv = []
        for root in self.simple_roots:
            cols.append(self.root_vector(self._conjugate_root(m, m_inv, root)))
            cols_inv.append(self.root_vector(self._conjugate_root(m_inv, m, root)))
        mat = tuple(tuple(cols[j][i] for j in range(self.n)) for i in range(self.n))
        inv = tuple(tuple(cols_inv[j][i] for j in range(self.n)) for i in range(self.n))
        return weyl.WeylElement(self.gcm, weyl._canonical_word(self.gcm, mat, inv), mat, inv)

    @lru_cache(maxsize=None)
    def _canonical_s(self, node: int) -> LaurentMatrix:
        return self.mu_map(self.simple_roots[node], 1)

    def canonical_representative(self, w: WeylElement) -> LaurentMatrix:
        out = self.identity()
        for i in w.word:
            out = out * self._canonical_s(i)
        return out

    # --- flag-jump invariants -------------------------------------------------
    #
    # The f-index of a term t^v e_i is i - n*v; the t=0 lattice flag is
    # Lambda_d = span{f-index <= d} over F_q[[t]] and the t=infinity flag is
    # indexed by the reversed basis.  The relative position of the standard
    # flag with g times the standard (resp. reversed) flag is a complete
    # invariant of the Iwahori double coset (resp. of B_+ g B_-).

    def _check_window(self, g: LaurentMatrix):
        if g.max_degree_span() > self.window:
            raise DegreeWindowExceeded(
                f"matrix spans t-degrees beyond the window +-{self.window}"
            )

    def _column(self, g: LaurentMatrix, j: int):
        return [g.entry(i, j) for i in range(self.n)]

    @staticmethod
    def _fmax(col, n: int):
        best = None
        for i, p in enumerate(col):
            for e, _v in p.terms:
                d = i - n * e
                if best is None or d > best:
                    best = d
        return best

    def _top_coeff(self, col, d: int):
        i = d % self.n
        e = (i - d) // self.n
        return i, e, col[i].coeff(e)

    def _reduce_profile(self, columns, down: bool):
        """Jump profile u(k) of the ordered columns modulo the span of the
        earlier ones over F_q[[t]] (down=True) or F_q[[1/t]] (down=False)."""
        n = self.n
        f = self.field
        shift = 1 if down else -1

        def kill(target, gen, s, coef_t, coef_g):
            # target -= (coef_t / coef_g) * t^(s*shift... computed by caller) * gen
            factor = f.mul(coef_t, f.inv(coef_g))
            return [
                tp - gp.shift(s).scale(factor) for tp, gp in zip(target, gen)
            ]

        out = []
        for k in range(n):
            gens = [list(columns[kp]) for kp in range(k)] + [
                [p.shift(shift) for p in columns[kp]] for kp in range(k, n)
            ]
            # echelon the generators: distinct leading classes
            changed = True
            while changed:
                changed = False
                by_class: dict[int, int] = {}
                for gi, gen in enumerate(gens):
                    d = self._fmax(gen, n)
                    if d is None:
                        raise NotUnimodular("dependent columns; matrix not invertible")
                    cls = d % n
                    if cls in by_class:
                        oi = by_class[cls]
                        od = self._fmax(gens[oi], n)
                        # kill the smaller lead (down) / the larger one (up)
                        if (d <= od) == down:
                            tgt, src, td, sd = gi, oi, d, od
                        else:
                            tgt, src, td, sd = oi, gi, od, d
                        _, te, tc = self._top_coeff(gens[tgt], td)
                        _, se, sc = self._top_coeff(gens[src], sd)
                        gens[tgt] = kill(gens[tgt], gens[src], te - se, tc, sc)
                        changed = True
                        break
                    by_class[cls] = gi
            lead_of_class = {}
            for gen in gens:
                d = self._fmax(gen, n)
                lead_of_class[d % n] = (d, gen)
            # reduce the k-th column against the echeloned generators
            v = list(columns[k])
            while True:
                d = self._fmax(v, n)
                if d is None:
                    raise NotUnimodular("column reduced to zero; matrix not invertible")
                cls = d % n
                gd, gen = lead_of_class[cls]
                can = gd >= d if down else gd <= d
                if not can:
                    break
                _, te, tc = self._top_coeff(v, d)
                _, se, sc = self._top_coeff(gen, gd)
                v = kill(v, gen, te - se, tc, sc)
            out.append(d)
        return out

    def _pattern_from_profile(self, profile, reversed_basis: bool) -> LaurentMatrix:
        n = self.n
        f = self.field
        zero = LaurentPoly.zero(f)
        cols = {}
        for k, d in enumerate(profile):
            src = (n - 1 - k) if reversed_basis else k
            i = d % n
            e = (i - d) // n
            cols[src] = (i, e)
        rows = [[zero] * n for _ in range(n)]
        for src, (i, e) in cols.items():
            rows[i][src] = LaurentPoly.monomial(f, e, 1)
        m = LaurentMatrix(f, n, tuple(tuple(r) for r in rows))
        if m.det().is_unit():
            return m
        raise OracleInconsistent("jump profile did not produce a monomial pattern")

    def bruhat_weyl(self, g: LaurentMatrix) -> WeylElement:
        """Iwahori-Bruhat cell of g (w with g in B_+ w B_+)."""
        self._check_window(g)
        if not g.det().is_one():
            raise NotUnimodular("group elements must have determinant 1")
        cols = [self._column(g, k) for k in range(self.n)]
        profile = self._reduce_profile(cols, down=True)
        return self.weyl_from_monomial(self._pattern_from_profile(profile, False))

    def birkhoff_cell(self, g: LaurentMatrix) -> WeylElement:
        """w with g in B_+ w B_-."""
        self._check_window(g)
        if not g.det().is_one():
            raise NotUnimodular("group elements must have determinant 1")
        cols = [self._column(g, self.n - 1 - k) for k in range(self.n)]
        profile = self._reduce_profile(cols, down=False)
        return self.weyl_from_monomial(self._pattern_from_profile(profile, True))

    def bruhat_cell(self, g: LaurentMatrix, rng=None):
        """(w, b1, b2) with g = b1 * canonical_rep(w) * b2 exactly.

        w comes from the flag invariant (hence independent of any choices);
        b1 and b2 are recovered by peeling the canonical word letter by
        letter, probing the q parameters of each panel.  rng, when given,
        only shuffles the probe order.
        """
        w = self.bruhat_weyl(g)
        f = self.field
        rest = g
        b1 = self.identity()
        prefix = self.identity()
        for pos, i in enumerate(w.word):
            s_i = self._canonical_s(i)
            s_inv = s_i.inverse()
            target = weyl.from_word(self.gcm, w.word[pos + 1 :])
            params = list(f.elements())
            if rng is not None:
                rng.shuffle(params)
            hit = None
            for r in params:
                cand = s_inv * self.root_group_element(self.simple_roots[i], f.neg(r)) * rest
                if self.bruhat_weyl(cand) == target:
                    hit = (r, cand)
                    break
            if hit is None:
                raise OracleInconsistent("descent peeling failed to shorten the cell")
            r, rest = hit
            u_conj = prefix * self.root_group_element(self.simple_roots[i], r) * prefix.inverse()
            b1 = b1 * u_conj
            prefix = prefix * s_i
        if not self.in_positive_borel(rest):
            raise OracleInconsistent("peeled remainder is not in the Iwahori subgroup")
        if not self.in_positive_borel(b1):
            raise OracleInconsistent("accumulated unipotent part left the Iwahori subgroup")
        assert b1 * prefix * rest == g
        return w, b1, rest

    # --- misc ----------------------------------------------------------------

    def random_element(self, rng, steps: int = 6) -> LaurentMatrix:
        """Random bounded product of root group elements and torus units."""
        g = self.identity()
        guard = 0
        while guard < 200:
            guard += 1
            out = g
            for _ in range(steps):
                kind = rng.randrange(3)
                if kind < 2:
                    i, j = rng.sample(range(self.n), 2)
                    k = rng.randint(-1, 1)
                    r = rng.randrange(1, self.field.q)
                    out = out * self.root_group_element((i, j, k), r)
                else:
                    units = [LaurentPoly.monomial(self.field, 0, 1)] * self.n
                    a = rng.randrange(1, self.field.q)
                    e = rng.randint(-1, 1)
                    units[0] = LaurentPoly.monomial(self.field, e, a)
                    units[-1] = LaurentPoly.monomial(self.field, -e, self.field.inv(a))
                    out = out * self.torus_diag(units)
            if out.max_degree_span() <= self.window:
                return out
        raise DegreeWindowExceeded("could not sample inside the degree window")


@lru_cache(maxsize=None)
def loop_group(q: int, n: int, window: int = 8) -> LoopGroup:
    return LoopGroup(gf_of_order(q), n, window)
