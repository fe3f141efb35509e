"""Real-root combinatorics: enumeration, prenilpotency, intervals, nibbling.

Roots are integer vectors in the W-orbit of the (signed) simple roots,
identified with half-spaces of chambers: the chamber indexed by u in W lies
on the positive side of gamma iff u(gamma) > 0.  Decision procedures are
certificate-based; a bounded search that produces neither a witness nor a
certificate raises UndecidedError (or returns the UNDECIDED sentinel), never
a silent guess.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import weyl
from .errors import (
    ExplosionGuard,
    MixedSign,
    NotNilpotentSet,
    NotPrenilpotent,
    NotSpherical,
    OrderingFailed,
    RankMismatch,
    UndecidedError,
)
from .gcm import GeneralizedCartanMatrix, IntVector
from .weyl import WeylElement, mat_mul, mat_vec, root_sign


class _Undecided:
    __slots__ = ()

    def __repr__(self):
        return "UNDECIDED"

    def __bool__(self):
        raise TypeError("UNDECIDED has no truth value; compare with `is`")


UNDECIDED = _Undecided()

DEFAULT_SEARCH_RADIUS = 8
DEFAULT_ROOT_CAP = 10**5


@dataclass(frozen=True)
class RootVector:
    """A real root as a sign-coherent integer vector in Z^n."""

    coords: IntVector

    def __post_init__(self):
        root_sign(self.coords)  # raises MixedSign when not coherent

    @property
    def sign(self) -> int:
        return root_sign(self.coords)

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-x for x in self.coords))

    def __repr__(self):
        return f"Root{self.coords}"


def is_positive(alpha: RootVector) -> bool:
    return alpha.sign > 0


def simple_root(A: GeneralizedCartanMatrix, i: int) -> RootVector:
    return RootVector(tuple(1 if k == i else 0 for k in range(A.n)))


def enumerate_real_roots(
    A: GeneralizedCartanMatrix, L: int, cap: int = DEFAULT_ROOT_CAP
) -> list[RootVector]:
    """All w(+-v_i) with l(w) <= L, deterministic (level, lex) order."""
    return [RootVector(v) for v in _root_vectors(A, L, cap)]


def _root_vectors(A: GeneralizedCartanMatrix, L: int, cap: int = DEFAULT_ROOT_CAP):
    s = weyl._simple_actions(A)
    level = sorted(
        {tuple(sgn * x for x in row) for row in weyl.identity_matrix(A.n) for sgn in (1, -1)}
    )
    seen = set(level)
    out = list(level)
    for _ in range(L):
        nxt = set()
        for v in level:
            for m in s:
                w = mat_vec(m, v)
                if w not in seen:
                    nxt.add(w)
        if not nxt:
            break
        level = sorted(nxt)
        seen.update(nxt)
        out.extend(level)
        if len(seen) > cap:
            raise ExplosionGuard(f"root enumeration exceeded cap {cap}")
    return out


@lru_cache(maxsize=256)
def roots_with_witnesses(
    A: GeneralizedCartanMatrix, L: int, cap: int = DEFAULT_ROOT_CAP
) -> dict[IntVector, tuple[WeylElement, int, int]]:
    """Map root -> (w, i, sign) with root = w(sign * v_i), BFS-minimal w."""
    ident = weyl.identity_element(A)
    gens = [weyl.simple_element(A, i) for i in range(A.n)]
    out: dict[IntVector, tuple[WeylElement, int, int]] = {}
    level = []
    for i in range(A.n):
        for sgn in (1, -1):
            v = tuple(sgn if k == i else 0 for k in range(A.n))
            if v not in out:
                out[v] = (ident, i, sgn)
                level.append(v)
    for _ in range(L):
        nxt = []
        for v in sorted(level):
            w0, i0, sgn0 = out[v]
            for j, g in enumerate(gens):
                u = mat_vec(g.mat, v)
                if u not in out:
                    out[u] = (g * w0, i0, sgn0)
                    nxt.append(u)
        if not nxt:
            break
        level = nxt
        if len(out) > cap:
            raise ExplosionGuard(f"root enumeration exceeded cap {cap}")
    return out


def _find_witness(A: GeneralizedCartanMatrix, target: IntVector, max_radius: int = 24):
    """Express target as w(sign*v_i); raises MixedSign/ValueError if not real."""
    radius = 4
    while radius <= max_radius:
        table = roots_with_witnesses(A, radius)
        if target in table:
            return table[target]
        radius *= 2
    raise ValueError(f"{target} not recognized as a real root within radius {max_radius}")


@lru_cache(maxsize=4096)
def reflection_matrix(A: GeneralizedCartanMatrix, alpha: RootVector):
    """Action matrix of the reflection through alpha (= w s_i w^{-1})."""
    w, i, _sign = _find_witness(A, alpha.coords)
    s = weyl.simple_reflection_action(A, i)
    return mat_mul(mat_mul(w.mat, s), w.inv)


# --- prenilpotency -----------------------------------------------------------
#
# For distinct walls the classical dichotomy holds: the product of the two
# reflections has finite order iff the walls cross (all four sign-quadrants
# contain chambers); with infinite order exactly one quadrant is empty.  A
# ball scan that locates chambers in three quadrants therefore certifies the
# emptiness of the fourth.


@lru_cache(maxsize=128)
def _cached_ball(A: GeneralizedCartanMatrix, radius: int):
    return tuple(weyl.enumerate_ball(A, radius))


def _ball_mats(A: GeneralizedCartanMatrix, radius: int):
    return [w.mat for w in _cached_ball(A, radius)]


def _quadrant_scan(ball_mats, alpha: IntVector, beta: IntVector):
    found = set()
    witnesses = {}
    for m in ball_mats:
        qa = root_sign(mat_vec(m, alpha))
        qb = root_sign(mat_vec(m, beta))
        if (qa, qb) not in found:
            found.add((qa, qb))
            witnesses[(qa, qb)] = m
            if len(found) == 4:
                break
    return found, witnesses


def is_prenilpotent_pair(
    A: GeneralizedCartanMatrix,
    alpha: RootVector,
    beta: RootVector,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
):
    """True / False / UNDECIDED, never a guess.

    True needs either chambers where both roots are positive and both
    negative (witnesses), or crossing walls (finite reflection-product
    order, a certified test).  False needs certified emptiness of a
    (+,+) or (-,-) quadrant, available once the three other quadrants
    have been seen.
    """
    if len(alpha.coords) != A.n or len(beta.coords) != A.n:
        raise RankMismatch("root length does not match the rank")
    if alpha == beta:
        return True
    if alpha.coords == tuple(-x for x in beta.coords):
        return False
    ball = _ball_mats(A, search_radius)
    found, _ = _quadrant_scan(ball, alpha.coords, beta.coords)
    if (1, 1) in found and (-1, -1) in found:
        return True
    order = weyl.matrix_order(
        mat_mul(reflection_matrix(A, alpha), reflection_matrix(A, beta))
    )
    if order != math.inf:
        return True
    if len(found) == 3:
        # infinite order: exactly one quadrant is empty, and it is the
        # missing one; the pair fails iff that quadrant is (+,+) or (-,-)
        return False
    return UNDECIDED


# --- region emptiness certificates ------------------------------------------


def _farkas_empty(deltas) -> bool:
    """True if a nonnegative nontrivial rational relation sum l_i d_i = 0
    exists: then no chamber interior satisfies f(d_i) > 0 for all i."""
    vecs = [tuple(Fraction(x) for x in d) for d in deltas]
    k = len(vecs)
    n = len(vecs[0])
    # kernel of the n x k matrix whose columns are the deltas
    rows = [[vecs[j][i] for j in range(k)] for i in range(n)]
    # Gauss elimination tracking free columns
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    for fc in free:
        sol = [Fraction(0)] * k
        sol[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            sol[pc] = -rows[rr][fc]
        if all(x >= 0 for x in sol) or all(x <= 0 for x in sol):
            return True
    return False


def _pair_plus_plus_empty(A, d1: IntVector, d2: IntVector, ball_mats):
    """Status of {chambers u : u d1 > 0 and u d2 > 0}: True = certified
    empty, False = witnessed nonempty, None = unknown."""
    if d1 == d2:
        return False  # every root has a chamber on its positive side
    if d1 == tuple(-x for x in d2):
        return True
    found, _ = _quadrant_scan(ball_mats, d1, d2)
    if (1, 1) in found:
        return False
    order = weyl.matrix_order(
        mat_mul(reflection_matrix(A, RootVector(d1)), reflection_matrix(A, RootVector(d2)))
    )
    if order != math.inf:
        return False  # crossing walls: all quadrants nonempty
    if len(found) == 3:
        return True
    return None


def _region_empty(A, deltas, ball_mats, exhaustive: bool):
    """Chamber-emptiness of {u : u d > 0 for all d in deltas}.

    Returns True/False when certified/witnessed, None when undecided.
    """
    for m in ball_mats:
        if all(root_sign(mat_vec(m, d)) > 0 for d in deltas):
            return False
    if exhaustive:
        return True
    # certificate 1: some pair already empty
    for i in range(len(deltas)):
        for j in range(i + 1, len(deltas)):
            st = _pair_plus_plus_empty(A, deltas[i], deltas[j], ball_mats)
            if st is True:
                return True
    # certificate 2: conic (Farkas) obstruction
    if _farkas_empty(deltas):
        return True
    return None


@dataclass(frozen=True)
class RootInterval:
    alpha: RootVector
    beta: RootVector
    members: tuple[RootVector, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "alpha": list(self.alpha.coords),
                "beta": list(self.beta.coords),
                "members": [list(r.coords) for r in self.members],
            },
            sort_keys=True,
        )

    @property
    def open(self) -> tuple[RootVector, ...]:
        return tuple(g for g in self.members if g != self.alpha and g != self.beta)

    @property
    def left_open(self) -> tuple[RootVector, ...]:
        return tuple(g for g in self.members if g != self.alpha)

    @property
    def right_open(self) -> tuple[RootVector, ...]:
        return tuple(g for g in self.members if g != self.beta)


def _inversion_roots(A, w: WeylElement):
    """Positive roots sent negative by w, via the suffix formula on the
    canonical word."""
    out = []
    suffix = weyl.identity_matrix(A.n)
    s = weyl._simple_actions(A)
    for idx in range(len(w.word) - 1, -1, -1):
        i = w.word[idx]
        alpha_i = tuple(1 if k == i else 0 for k in range(A.n))
        out.append(mat_vec(suffix, alpha_i))
        suffix = mat_mul(suffix, s[i])
    return out[::-1]


def closed_interval(
    A: GeneralizedCartanMatrix,
    alpha: RootVector,
    beta: RootVector,
    search_radius: int = DEFAULT_SEARCH_RADIUS,
) -> RootInterval:
    """[alpha, beta] by half-space containment.

    Candidates are the roots separating a both-positive witness chamber from
    a both-negative one (finitely many); each candidate gamma is kept iff the
    regions (-gamma, alpha, beta) and (gamma, -alpha, -beta) are certified
    chamber-empty.
    """
    pren = is_prenilpotent_pair(A, alpha, beta, search_radius)
    if pren is UNDECIDED:
        raise UndecidedError(f"prenilpotency of {alpha}, {beta} undecided at radius {search_radius}")
    if pren is False:
        raise NotPrenilpotent(f"{alpha}, {beta} is not a prenilpotent pair")
    if alpha == beta:
        return RootInterval(alpha, beta, (alpha,))
    ball_elems = _cached_ball(A, search_radius)
    ball_mats = [w.mat for w in ball_elems]
    exhaustive = all(w.length < search_radius for w in ball_elems)
    # witnesses exist (the pair is prenilpotent); widen the scan if needed
    u = v = None
    radius = search_radius
    while radius <= 8 * search_radius:
        scan = _cached_ball(A, radius)
        u = next(
            (
                w
                for w in scan
                if root_sign(w.apply(alpha.coords)) > 0
                and root_sign(w.apply(beta.coords)) > 0
            ),
            None,
        )
        v = next(
            (
                w
                for w in scan
                if root_sign(w.apply(alpha.coords)) < 0
                and root_sign(w.apply(beta.coords)) < 0
            ),
            None,
        )
        if u is not None and v is not None:
            break
        radius *= 2
    if u is None or v is None:
        raise UndecidedError("no witness chambers within the widened search radius")
    z = v * u.inverse()
    candidates = {mat_vec(u.inv, d) for d in _inversion_roots(A, z)}
    candidates.update({alpha.coords, beta.coords})
    members = []
    neg_a = tuple(-x for x in alpha.coords)
    neg_b = tuple(-x for x in beta.coords)

    def region_status(deltas):
        status = _region_empty(A, deltas, ball_mats, exhaustive)
        if status is None:
            wide = _ball_mats(A, 2 * search_radius)
            status = _region_empty(A, deltas, wide, exhaustive)
        return status

    for gamma in sorted(candidates):
        neg = tuple(-x for x in gamma)
        if gamma in (alpha.coords, beta.coords):
            members.append(gamma)
            continue
        e1 = region_status((neg, alpha.coords, beta.coords))
        if e1 is False:
            continue
        e2 = region_status((gamma, neg_a, neg_b))
        if e2 is False:
            continue
        if e1 is None or e2 is None:
            raise UndecidedError(
                f"containment test for candidate {gamma} undecided at radius {search_radius}"
            )
        members.append(gamma)
    return RootInterval(alpha, beta, tuple(RootVector(g) for g in sorted(members)))


def open_interval(A, alpha, beta, search_radius: int = DEFAULT_SEARCH_RADIUS):
    return closed_interval(A, alpha, beta, search_radius).open


# --- nibbling sequences ------------------------------------------------------


@dataclass(frozen=True)
class NibblingSequence:
    roots: tuple[RootVector, ...]


def _parabolic_setup(A: GeneralizedCartanMatrix, J, order_cap: int = 2000):
    J = tuple(sorted(J))
    sub = A.submatrix(J)
    try:
        ball = weyl.enumerate_ball(sub, order_cap, cap=order_cap)
    except ExplosionGuard:
        raise NotSpherical(f"W_J for J={J} is not finite (cap {order_cap})")
    if any(w.length >= order_cap for w in ball):
        raise NotSpherical(f"W_J for J={J} is not finite (cap {order_cap})")
    return J, sub, ball


def _embed(J, n, vec_sub):
    out = [0] * n
    for pos, j in enumerate(J):
        out[j] = vec_sub[pos]
    return tuple(out)


def _restrict(J, vec, n):
    if any(vec[k] != 0 for k in range(n) if k not in J):
        return None
    return tuple(vec[j] for j in J)


def longest_element(A: GeneralizedCartanMatrix, order_cap: int = 2000) -> WeylElement:
    """Longest element of a finite Weyl group (NotSpherical otherwise)."""
    _, _, ball = _parabolic_setup(A, tuple(range(A.n)), order_cap)
    top = max(w.length for w in ball)
    longest = [w for w in ball if w.length == top]
    if len(longest) != 1:
        raise NotSpherical("no unique longest element; group not finite?")
    return longest[0]


def inversion_order(A: GeneralizedCartanMatrix, w: WeylElement):
    """beta_k = s_{i1}...s_{i(k-1)}(alpha_{ik}) along the canonical word."""
    s = weyl._simple_actions(A)
    prefix = weyl.identity_matrix(A.n)
    out = []
    for i in w.word:
        alpha_i = tuple(1 if t == i else 0 for t in range(A.n))
        out.append(mat_vec(prefix, alpha_i))
        prefix = mat_mul(prefix, s[i])
    return out


def nibbling_sequence(
    A: GeneralizedCartanMatrix,
    J,
    psi,
    order_cap: int = 2000,
) -> NibblingSequence:
    """Order a nilpotent root set inside a spherical parabolic so that every
    open interval of a pair is sandwiched between its endpoints.

    Construction: the inversion order along the ShortLex-least reduced word
    of the longest element of W_J, restricted to psi (after translating psi
    into the positive system).  The nibbling property is re-verified and
    OrderingFailed is raised if it does not hold.
    """
    J, sub, ball = _parabolic_setup(A, J, order_cap)
    n = A.n
    psi = [p if isinstance(p, RootVector) else RootVector(tuple(p)) for p in psi]
    sub_psi = []
    for p in psi:
        r = _restrict(J, p.coords, n)
        if r is None:
            raise NotNilpotentSet(f"{p} is not a root of the parabolic W_J, J={J}")
        sub_psi.append(r)
    sub_roots = {tuple(v) for v in _root_vectors(sub, 2 * max(w.length for w in ball) + 2)}
    for r in sub_psi:
        if r not in sub_roots:
            raise NotNilpotentSet(f"{r} is not a real root of W_J")
    mover = next(
        (w for w in ball if all(root_sign(w.apply(r)) > 0 for r in sub_psi)), None
    )
    if mover is None:
        raise NotNilpotentSet("no element of W_J makes the whole set positive")
    top = max(w.length for w in ball)
    w0 = min((w for w in ball if w.length == top), key=lambda w: w.word)
    order = inversion_order(sub, w0)
    position = {v: k for k, v in enumerate(order)}
    moved = [(position[mover.apply(r)], r) for r in sub_psi]
    moved.sort()
    ordered_sub = [r for _, r in moved]
    _verify_nibbling(sub, ordered_sub, search_radius=top + 1)
    return NibblingSequence(tuple(RootVector(_embed(J, n, r)) for r in ordered_sub))


def _verify_nibbling(sub, ordered, search_radius):
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            a, b = RootVector(ordered[i]), RootVector(ordered[j])
            if is_prenilpotent_pair(sub, a, b, search_radius) is not True:
                raise OrderingFailed(f"pair {a}, {b} is not prenilpotent")
            between = {tuple(r) for r in ordered[i + 1 : j]}
            for g in closed_interval(sub, a, b, search_radius).open:
                if g.coords not in between:
                    raise OrderingFailed(
                        f"open interval of {a}, {b} contains {g} outside positions {i}..{j}"
                    )
