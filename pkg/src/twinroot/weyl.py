"""Coxeter/Weyl group engine over the integral root-lattice action.

The Weyl group of a GCM acts on Q = Z^n by s_i(v_j) = v_j - a[i][j] v_i.
This action is faithful, so an element IS its action matrix; the canonical
ShortLex-minimal reduced word is derived data, recomputed from the matrix by
descent normalization.  All arithmetic is exact Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ExplosionGuard, IndexOutOfRange, MixedSign, RankMismatch
from .gcm import GeneralizedCartanMatrix, IntMatrix, IntVector

INF = math.inf

_PRODUCT_TO_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class CoxeterMatrix:
    n: int
    m: tuple[tuple[float, ...], ...]  # entries in {1,2,3,4,6} or math.inf


def coxeter_matrix(A: GeneralizedCartanMatrix) -> CoxeterMatrix:
    """m[i][j] = 2,3,4,6,inf for a_ij*a_ji = 0,1,2,3,>=4; 1 on the diagonal."""
    n = A.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(1)
            else:
                row.append(_PRODUCT_TO_ORDER.get(A.a[i][j] * A.a[j][i], INF))
        rows.append(tuple(row))
    return CoxeterMatrix(n, tuple(rows))


# --- integer matrix helpers -------------------------------------------------

def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: IntMatrix, v: IntVector) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    result = identity_matrix(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def simple_reflection_action(A: GeneralizedCartanMatrix, i: int) -> IntMatrix:
    """Matrix of s_i on Q: column j is v_j - a[i][j] v_i."""
    if not 0 <= i < A.n:
        raise IndexOutOfRange(f"generator index {i} out of range for rank {A.n}")
    rows = [list(row) for row in identity_matrix(A.n)]
    for j in range(A.n):
        rows[i][j] = (1 if i == j else 0) - A.a[i][j]
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _simple_actions(A: GeneralizedCartanMatrix) -> tuple[IntMatrix, ...]:
    return tuple(simple_reflection_action(A, i) for i in range(A.n))


def root_sign(v: IntVector) -> int:
    """+1 for a positive real root, -1 for negative; MixedSign otherwise."""
    has_pos = any(x > 0 for x in v)
    has_neg = any(x < 0 for x in v)
    if has_pos and not has_neg:
        return 1
    if has_neg and not has_pos:
        return -1
    raise MixedSign(f"{v} is not sign-coherent")


_CANON_GUARD = 10**6


def _canonical_word(A: GeneralizedCartanMatrix, mat: IntMatrix, inv: IntMatrix) -> tuple[int, ...]:
    """ShortLex-least reduced word from the action matrix.

    Greedy: the least left descent i (column i of the inverse is a negative
    root) is the correct first letter; strip and repeat.
    """
    n = A.n
    ident = identity_matrix(n)
    s = _simple_actions(A)
    word = []
    m, mi = mat, inv
    for _ in range(_CANON_GUARD):
        if m == ident:
            return tuple(word)
        for i in range(n):
            col = tuple(mi[k][i] for k in range(n))
            if root_sign(col) < 0:
                word.append(i)
                m = mat_mul(s[i], m)
                mi = mat_mul(mi, s[i])
                break
        else:
            raise MixedSign("non-identity action matrix with no descent; not a Weyl element")
    raise ExplosionGuard("word normalization exceeded the iteration guard")


@dataclass(frozen=True)
class WeylElement:
    """Canonical reduced word plus the exact action matrix on Q.

    Equality and hashing go through the matrix (the representation is
    faithful); the word is the ShortLex-minimal reduced expression.
    """

    gcm: GeneralizedCartanMatrix
    word: tuple[int, ...]
    mat: IntMatrix
    inv: IntMatrix = field(compare=False)

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.gcm == other.gcm
            and self.mat == other.mat
        )

    def __hash__(self):
        return hash((self.gcm, self.mat))

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, v: IntVector) -> IntVector:
        if len(v) != self.gcm.n:
            raise RankMismatch("vector length does not match the rank")
        return mat_vec(self.mat, v)

    def apply_inverse(self, v: IntVector) -> IntVector:
        return mat_vec(self.inv, v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def inverse(self) -> "WeylElement":
        return _from_matrices(self.gcm, self.inv, self.mat)

    def is_identity(self) -> bool:
        return not self.word

    def __repr__(self):
        return f"W{list(self.word)}"


def _from_matrices(A: GeneralizedCartanMatrix, mat: IntMatrix, inv: IntMatrix) -> WeylElement:
    return WeylElement(A, _canonical_word(A, mat, inv), mat, inv)


def identity_element(A: GeneralizedCartanMatrix) -> WeylElement:
    ident = identity_matrix(A.n)
    return WeylElement(A, (), ident, ident)


def simple_element(A: GeneralizedCartanMatrix, i: int) -> WeylElement:
    s = simple_reflection_action(A, i)
    return WeylElement(A, (i,), s, s)


def from_word(A: GeneralizedCartanMatrix, word) -> WeylElement:
    """Element represented by an arbitrary (not necessarily reduced) word."""
    s = _simple_actions(A)
    mat = identity_matrix(A.n)
    inv = mat
    for i in word:
        if not 0 <= i < A.n:
            raise IndexOutOfRange(f"generator index {i} out of range for rank {A.n}")
        mat = mat_mul(mat, s[i])
        inv = mat_mul(s[i], inv)
    return _from_matrices(A, mat, inv)


def multiply(w1: WeylElement, w2: WeylElement) -> WeylElement:
    if w1.gcm != w2.gcm:
        raise RankMismatch("elements live over different Cartan matrices")
    return _from_matrices(w1.gcm, mat_mul(w1.mat, w2.mat), mat_mul(w2.inv, w1.inv))


def length(w: WeylElement) -> int:
    return w.length


def is_reduced(A: GeneralizedCartanMatrix, word) -> bool:
    """Right-to-left descent test: word reduced iff no prefix-letter kills length.

    Maintains the inverse of the growing suffix u; the next letter i keeps
    the word reduced iff u^{-1}(alpha_i) > 0.
    """
    s = _simple_actions(A)
    n = A.n
    suffix_inv = identity_matrix(n)
    for i in reversed(tuple(word)):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"generator index {i} out of range for rank {A.n}")
        col = tuple(suffix_inv[k][i] for k in range(n))
        if root_sign(col) < 0:
            return False
        suffix_inv = mat_mul(suffix_inv, s[i])
    return True


DEFAULT_BALL_CAP = 10**6


def enumerate_ball(A: GeneralizedCartanMatrix, L: int, cap: int = DEFAULT_BALL_CAP) -> list[WeylElement]:
    """All elements of length <= L, each once, in (length, ShortLex) order."""
    if L < 0:
        raise IndexOutOfRange("ball radius must be nonnegative")
    s = _simple_actions(A)
    n = A.n
    seen = {identity_matrix(n)}
    result = [identity_element(A)]
    layer = [result[0]]
    for _ in range(L):
        nxt = {}
        for w in layer:
            for i in range(n):
                col = tuple(w.mat[k][i] for k in range(n))
                if root_sign(col) < 0:
                    continue  # w alpha_i < 0: length would drop
                mat = mat_mul(w.mat, s[i])
                if mat in seen:
                    continue
                nxt[mat] = mat_mul(s[i], w.inv)
        layer = sorted(
            (_from_matrices(A, mat, inv) for mat, inv in nxt.items()),
            key=lambda w: w.word,
        )
        seen.update(nxt)
        if len(seen) > cap:
            raise ExplosionGuard(f"ball enumeration exceeded cap {cap}")
        if not layer:
            break
        result.extend(layer)
    return result


def group_order(A: GeneralizedCartanMatrix, cap: int = 10**4) -> int | float:
    """|W| by raw matrix closure, or math.inf once the cap is passed."""
    s = _simple_actions(A)
    seen = {identity_matrix(A.n)}
    layer = list(seen)
    while layer:
        nxt = []
        for m in layer:
            for g in s:
                prod = mat_mul(m, g)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
        if len(seen) > cap:
            return INF
        layer = nxt
    return len(seen)


# --- exact order of integer matrices ---------------------------------------

@lru_cache(maxsize=None)
def _torsion_exponent(n: int) -> int:
    """lcm of all d with phi(d) <= n: every finite-order element of GL_n(Z)
    has order dividing this."""
    def phi(d):
        result, x, p = d, d, 2
        while p * p <= x:
            if x % p == 0:
                while x % p == 0:
                    x //= p
                result -= result // p
            p += 1
        if x > 1:
            result -= result // x
        return result

    out = 1
    for d in range(1, 2 * n * n + 2):
        if phi(d) <= n:
            out = math.lcm(out, d)
    return out


def matrix_order(mat: IntMatrix, cap: int = 10**4) -> int | float:
    """Exact order of an integer matrix, math.inf if infinite.

    Finiteness is certified: a finite-order element of GL_n(Z) has order
    dividing the torsion exponent for n, so one fast exponentiation decides.
    """
    n = len(mat)
    ident = identity_matrix(n)
    if mat == ident:
        return 1
    exponent = _torsion_exponent(n)
    if mat_pow(mat, exponent) != ident:
        return INF
    power = mat
    for k in range(1, min(exponent, cap) + 1):
        if power == ident:
            return k
        power = mat_mul(power, mat)
    raise ExplosionGuard("order exceeded cap despite finite certificate")
