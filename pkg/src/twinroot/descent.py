"""Quasi-split unitary descent: SU_3(F_q[t,t^-1]) inside SL_3(F_{q^2}[t,t^-1]).

The Galois involution is sigma(g) = J (bar(g)^T)^{-1} J^{-1} with J the
antidiagonal Hermitian form and bar the coefficientwise Frobenius; its fixed
points form the quasi-split group.  The relative Weyl group is infinite
dihedral: node 0 carries the abelian root group {I + r t E_20 : tr r = 0} of
order q, node 1 the metabelian group {u(c,b) : b + bar b = -c bar c} of order
q^3 whose center is the b-line.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import weyl
from .chevalley import LoopGroup, loop_group
from .errors import (
    BadRoot,
    OracleInconsistent,
    RankMismatch,
    TrivialElement,
    UnsupportedLevel,
)
from .fields import GF, GaloisField
from .gcm import AFFINE_A1, GeneralizedCartanMatrix
from .laurent import LaurentMatrix, LaurentPoly, diagonal, elementary
from .weyl import WeylElement

REL_GCM: GeneralizedCartanMatrix = AFFINE_A1  # infinite dihedral realization


def _antidiag_form(ext: GaloisField) -> LaurentMatrix:
    one = LaurentPoly.one(ext)
    zero = LaurentPoly.zero(ext)
    return LaurentMatrix(ext, 3, ((zero, zero, one), (zero, one, zero), (one, zero, zero)))


@dataclass(frozen=True)
class HermitianDescentDatum:
    """Base field, quadratic extension, Hermitian form and the induced
    semilinear involution of the ambient loop group."""

    q: int
    base: GaloisField = dc_field(compare=False)
    ext: GaloisField = dc_field(compare=False)
    ambient: LoopGroup = dc_field(compare=False)
    form: LaurentMatrix = dc_field(compare=False)

    def sigma(self, g: LaurentMatrix) -> LaurentMatrix:
        return self.form * g.bar().transpose().inverse() * self.form.inverse()

    def is_fixed(self, g: LaurentMatrix) -> bool:
        return self.sigma(g) == g

    # --- distinguished constants -------------------------------------------

    @property
    def kappa(self) -> int:
        """Canonical nonzero trace-zero element of the extension."""
        return self.ext.trace_zero()[1]

    def subfield_value(self, a: int) -> int:
        """Embed an element of F_q (encoded 0..q-1) into F_{q^2}."""
        return a  # base-p digit encoding: the prime subfield is 0..p-1

    # --- the two simple relative root groups at level 0 ----------------------

    def unipotent_upper(self, c: int, b: int) -> LaurentMatrix:
        """u(c, b) = [[1, -bar c, b], [0, 1, c], [0, 0, 1]]; needs
        tr(b) = -N(c)."""
        e = self.ext
        if e.add(b, e.frobenius(b)) != e.neg(e.mul(c, e.frobenius(c))):
            raise BadRoot("parameters violate the Hermitian trace condition")
        zero, one = LaurentPoly.zero(e), LaurentPoly.one(e)
        rows = (
            (one, LaurentPoly.const(e, e.neg(e.frobenius(c))), LaurentPoly.const(e, b)),
            (zero, one, LaurentPoly.const(e, c)),
            (zero, zero, one),
        )
        return LaurentMatrix(e, 3, rows)

    def unipotent_lower(self, z: int, y: int) -> LaurentMatrix:
        """u_-(z, y) = [[1,0,0],[-bar z,1,0],[y,z,1]]; needs tr(y) = -N(z)."""
        e = self.ext
        if e.add(y, e.frobenius(y)) != e.neg(e.mul(z, e.frobenius(z))):
            raise BadRoot("parameters violate the Hermitian trace condition")
        zero, one = LaurentPoly.zero(e), LaurentPoly.one(e)
        rows = (
            (one, zero, zero),
            (LaurentPoly.const(e, e.neg(e.frobenius(z))), one, zero),
            (LaurentPoly.const(e, y), LaurentPoly.const(e, z), one),
        )
        return LaurentMatrix(e, 3, rows)

    def affine_node_element(self, r: int, sign: int = 1) -> LaurentMatrix:
        """I + r t E_20 (sign > 0) or I + r t^-1 E_02 (sign < 0); tr r = 0."""
        e = self.ext
        if e.trace(r) != 0:
            raise BadRoot("affine node parameter must have trace zero")
        if sign > 0:
            return elementary(e, 3, 2, 0, LaurentPoly.monomial(e, 1, r))
        return elementary(e, 3, 0, 2, LaurentPoly.monomial(e, -1, r))

    def metabelian_parameters(self):
        e = self.ext
        out = []
        for c in e.elements():
            target = e.neg(e.norm(c))
            for b in e.elements():
                if e.add(b, e.frobenius(b)) == target:
                    out.append((c, b))
        return out

    # --- mu-maps (closed forms, verified in the test-suite) ------------------

    def mu_metabelian(self, c: int, b: int) -> LaurentMatrix:
        """m(u(c,b)) = u_-(bar c / bar b, 1/bar b) u(c,b) u_-(bar c / b, 1/bar b)."""
        e = self.ext
        if b == 0 and c == 0:
            raise TrivialElement("mu-map of the trivial element")
        if b == 0:
            raise OracleInconsistent("nontrivial u(c, b) always has b != 0")
        bbar = e.frobenius(b)
        cbar = e.frobenius(c)
        left = self.unipotent_lower(e.mul(cbar, e.inv(bbar)), e.inv(bbar))
        right = self.unipotent_lower(e.mul(cbar, e.inv(b)), e.inv(bbar))
        m = left * self.unipotent_upper(c, b) * right
        return m

    def mu_affine(self, r: int) -> LaurentMatrix:
        if r == 0:
            raise TrivialElement("mu-map of the trivial element")
        e = self.ext
        minus = self.affine_node_element(e.neg(e.inv(r)), sign=-1)
        return minus * self.affine_node_element(r) * minus

    @property
    def s0(self) -> LaurentMatrix:
        """Canonical reflection representative for relative node 0."""
        return self.mu_affine(self.ext.inv(self.kappa))

    @property
    def s1(self) -> LaurentMatrix:
        """Canonical reflection representative for relative node 1."""
        return self.mu_metabelian(0, self.kappa)

    def canonical_s(self, node: int) -> LaurentMatrix:
        return self.s0 if node == 0 else self.s1

    def canonical_representative(self, w: WeylElement) -> LaurentMatrix:
        out = LaurentMatrix.identity(self.ext, 3)
        for i in w.word:
            out = out * self.canonical_s(i)
        return out

    # --- relative root groups -------------------------------------------------

    def simple_root_group(self, node: int, positive: bool = True):
        """All elements of the simple relative root group (finite)."""
        e = self.ext
        if node == 0:
            out = [self.affine_node_element(r, 1 if positive else -1) for r in e.trace_zero()]
            return out
        ups = [self.unipotent_upper(c, b) for c, b in self.metabelian_parameters()]
        if positive:
            return ups
        s = self.s1
        sinv = s.inverse()
        return [s * u * sinv for u in ups]

    def simple_root_group_center(self, node: int, positive: bool = True):
        e = self.ext
        if node == 0:
            return self.simple_root_group(node, positive)
        cent = [self.unipotent_upper(0, b) for b in e.trace_zero()]
        if positive:
            return cent
        s = self.s1
        sinv = s.inverse()
        return [s * u * sinv for u in cent]

    def root_group(self, vector) -> list[LaurentMatrix]:
        """Relative root group for any real root of the infinite dihedral
        system, by conjugating a simple one along a Weyl witness."""
        w, node, sgn = _dihedral_witness(vector)
        rep = self.canonical_representative(w)
        rep_inv = rep.inverse()
        return [rep * u * rep_inv for u in self.simple_root_group(node, sgn > 0)]

    def root_group_center(self, vector) -> list[LaurentMatrix]:
        w, node, sgn = _dihedral_witness(vector)
        rep = self.canonical_representative(w)
        rep_inv = rep.inverse()
        return [rep * u * rep_inv for u in self.simple_root_group_center(node, sgn > 0)]

    def mu_for(self, vector, u: LaurentMatrix) -> LaurentMatrix:
        """mu-map of a nontrivial element of the root group at `vector`."""
        w, node, sgn = _dihedral_witness(vector)
        rep = self.canonical_representative(w)
        u0 = rep.inverse() * u * rep
        if not sgn > 0:
            s = self.canonical_s(node)
            u0 = s * u0 * s.inverse()
        m0 = self._mu_simple(node, u0)
        if not sgn > 0:
            s = self.canonical_s(node)
            m0 = s.inverse() * m0 * s
        return rep * m0 * rep.inverse()

    def _mu_simple(self, node: int, u: LaurentMatrix) -> LaurentMatrix:
        e = self.ext
        if node == 0:
            p = u.entry(2, 0)
            if p.is_zero():
                raise TrivialElement("mu-map of the trivial element")
            return self.mu_affine(p.coeff(1))
        c = u.entry(1, 2).coeff(0)
        b = u.entry(0, 2).coeff(0)
        return self.mu_metabelian(c, b)

    # --- torus ---------------------------------------------------------------

    def torus_element(self, a: int, m: int = 0) -> LaurentMatrix:
        """diag(a t^m, bar(a)/a, bar(a)^{-1} t^{-m})."""
        e = self.ext
        if a == 0:
            raise BadRoot("torus parameter must be a unit")
        abar = e.frobenius(a)
        return diagonal(
            e,
            (
                LaurentPoly.monomial(e, m, a),
                LaurentPoly.const(e, e.mul(abar, e.inv(a))),
                LaurentPoly.monomial(e, -m, e.inv(abar)),
            ),
        )

    def anisotropic_kernel_elements(self) -> list[LaurentMatrix]:
        """The sigma-fixed diagonal subgroup at level 0."""
        return [self.torus_element(a) for a in self.ext.units()]

    def is_torus(self, g: LaurentMatrix) -> bool:
        return self.ambient.is_torus(g) and self.is_fixed(g)

    def in_borel(self, sign: int, g: LaurentMatrix) -> bool:
        return self.ambient.in_borel(sign, g) and self.is_fixed(g)


@lru_cache(maxsize=None)
def _dihedral_ball(radius: int):
    return weyl.enumerate_ball(REL_GCM, radius)


def _dihedral_witness(vector):
    """(w, node, sign) with vector = w(sign * alpha_node) in the infinite
    dihedral root system."""
    vector = tuple(vector)
    for radius in (6, 12, 24, 48):
        for w in _dihedral_ball(radius):
            for node in (0, 1):
                alpha = tuple(1 if k == node else 0 for k in range(2))
                for sgn in (1, -1):
                    if w.apply(tuple(sgn * x for x in alpha)) == vector:
                        return w, node, sgn
    raise BadRoot(f"{vector} is not a real root of the relative system")


@lru_cache(maxsize=None)
def su3_datum(q: int, window: int = 8) -> HermitianDescentDatum:
    if q not in (2, 3):
        raise RankMismatch("unitary descent is implemented for q in {2, 3}")
    base = GF(q, 1)
    ext = GF(q, 2)
    ambient = LoopGroup(ext, 3, window)
    return HermitianDescentDatum(q, base, ext, ambient, _antidiag_form(ext))


# --- top-level operations -------------------------------------------------


def su3_fixed_points(d: HermitianDescentDatum, g: LaurentMatrix) -> bool:
    """Membership test for the quasi-split group: g = sigma(g)."""
    if g.n != 3:
        raise RankMismatch("expected a 3x3 matrix")
    return d.is_fixed(g)


def relative_root_group(d: HermitianDescentDatum, node: int, level: int = 0):
    """(elements, center) of the simple relative root group; level 0 only."""
    if level != 0:
        raise UnsupportedLevel("explicit enumeration is exposed at level 0")
    if node not in (0, 1):
        raise BadRoot("relative simple roots are indexed by {0, 1}")
    return d.simple_root_group(node), d.simple_root_group_center(node)


def anisotropic_kernel(d: HermitianDescentDatum):
    """Level-0 anisotropic kernel with a total-commutativity report."""
    elems = d.anisotropic_kernel_elements()
    commutative = all(x * y == y * x for x in elems for y in elems)
    return elems, commutative


# --- maximal split subgroup ---------------------------------------------------


@dataclass(frozen=True)
class MaximalSplitSubgroup:
    """F = <split torus, centers of the simple relative root groups>,
    isomorphic to SL_2 over the base field's Laurent ring."""

    datum: HermitianDescentDatum
    sl2: LoopGroup = dc_field(compare=False)

    def embed_poly(self, p: LaurentPoly, twist: int) -> LaurentPoly:
        e = self.datum.ext
        out = {}
        for exp, v in p.terms:
            value = self.datum.subfield_value(v)
            if twist:
                value = e.mul(value, twist)
            out[exp] = value
        return LaurentPoly.of(e, out)

    def restrict_poly(self, p: LaurentPoly, untwist: int, base_field: GaloisField) -> LaurentPoly:
        e = self.datum.ext
        out = {}
        for exp, v in p.terms:
            if untwist:
                v = e.mul(v, untwist)
            if e.frobenius(v) != v or v >= base_field.q:
                raise OracleInconsistent("entry does not restrict to the base field")
            out[exp] = v
        return LaurentPoly.of(base_field, out)

    def from_sl2(self, g: LaurentMatrix) -> LaurentMatrix:
        """[[A,B],[C,D]] -> [[A,0,kB],[0,1,0],[k^-1 C,0,D]] (k = kappa)."""
        d = self.datum
        e = d.ext
        kap = d.kappa
        kinv = e.inv(kap)
        zero, one = LaurentPoly.zero(e), LaurentPoly.one(e)
        rows = (
            (self.embed_poly(g.entry(0, 0), 0), zero, self.embed_poly(g.entry(0, 1), kap)),
            (zero, one, zero),
            (self.embed_poly(g.entry(1, 0), kinv), zero, self.embed_poly(g.entry(1, 1), 0)),
        )
        return LaurentMatrix(e, 3, rows)

    def to_sl2(self, g: LaurentMatrix) -> LaurentMatrix:
        d = self.datum
        e = d.ext
        f = self.sl2.field
        kap, kinv = d.kappa, e.inv(d.kappa)
        if not self.contains(g):
            raise OracleInconsistent("matrix is not in the maximal split subgroup")
        rows = (
            (
                self.restrict_poly(g.entry(0, 0), 0, f),
                self.restrict_poly(g.entry(0, 2), kinv, f),
            ),
            (
                self.restrict_poly(g.entry(2, 0), kap, f),
                self.restrict_poly(g.entry(2, 2), 0, f),
            ),
        )
        return LaurentMatrix(f, 2, rows)

    def contains(self, g: LaurentMatrix) -> bool:
        d = self.datum
        e = d.ext
        if not d.is_fixed(g):
            return False
        if not g.entry(1, 1).is_one():
            return False
        for i, j in ((0, 1), (1, 0), (1, 2), (2, 1)):
            if not g.entry(i, j).is_zero():
                return False
        kap, kinv = d.kappa, e.inv(d.kappa)
        fixed_under_frob = lambda p: all(e.frobenius(v) == v for _, v in p.terms)
        if not fixed_under_frob(g.entry(0, 0)) or not fixed_under_frob(g.entry(2, 2)):
            return False
        if not fixed_under_frob(g.entry(0, 2).scale(kinv)):
            return False
        if not fixed_under_frob(g.entry(2, 0).scale(kap)):
            return False
        return True

    def split_torus_elements(self) -> list[LaurentMatrix]:
        d = self.datum
        e = d.ext
        out = []
        for a in d.base.units():
            out.append(
                diagonal(
                    e,
                    (
                        LaurentPoly.const(e, a),
                        LaurentPoly.one(e),
                        LaurentPoly.const(e, e.inv(a)),
                    ),
                )
            )
        return out

    def root_group(self, vector) -> list[LaurentMatrix]:
        return self.datum.root_group_center(vector)


def maximal_split_subgroup(d: HermitianDescentDatum) -> MaximalSplitSubgroup:
    return MaximalSplitSubgroup(d, loop_group(d.q, 2, d.ambient.window))
