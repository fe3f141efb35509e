"""Laurent polynomials and matrices over small finite fields, exactly.

Polynomials are sparse (exponent -> nonzero coefficient value); matrices are
immutable with explicit adjugate inversion for n <= 3.  Determinant-1 is the
group condition checked by the callers in chevalley.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import NotUnimodular, RankMismatch
from .fields import FqElement, GaloisField


@dataclass(frozen=True)
class LaurentPoly:
    field: GaloisField
    terms: tuple[tuple[int, int], ...]  # sorted (exponent, value), value != 0

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.field is other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.field), self.terms))

    @staticmethod
    def of(field: GaloisField, mapping) -> "LaurentPoly":
        items = tuple(sorted((int(k), v) for k, v in mapping.items() if v != 0))
        return LaurentPoly(field, items)

    @staticmethod
    def zero(field: GaloisField) -> "LaurentPoly":
        return LaurentPoly(field, ())

    @staticmethod
    def monomial(field: GaloisField, exp: int, value: int) -> "LaurentPoly":
        value %= field.q
        return LaurentPoly(field, ((exp, value),)) if value else LaurentPoly(field, ())

    @staticmethod
    def const(field: GaloisField, value: int) -> "LaurentPoly":
        return LaurentPoly.monomial(field, 0, value)

    @staticmethod
    def one(field: GaloisField) -> "LaurentPoly":
        return LaurentPoly(field, ((0, 1),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == ((0, 1),)

    def coeff(self, exp: int) -> int:
        for e, v in self.terms:
            if e == exp:
                return v
        return 0

    @property
    def val(self) -> int:
        """Lowest exponent (raises on the zero polynomial)."""
        return self.terms[0][0]

    @property
    def deg(self) -> int:
        return self.terms[-1][0]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        f = self.field
        if other.field is not f:
            raise RankMismatch("polynomials over different fields")
        acc = dict(self.terms)
        for e, v in other.terms:
            s = f.add(acc.get(e, 0), v)
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        return LaurentPoly(f, tuple(sorted(acc.items())))

    def __neg__(self) -> "LaurentPoly":
        f = self.field
        return LaurentPoly(f, tuple((e, f.neg(v)) for e, v in self.terms))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        f = self.field
        if other.field is not f:
            raise RankMismatch("polynomials over different fields")
        acc: dict[int, int] = {}
        for e1, v1 in self.terms:
            for e2, v2 in other.terms:
                e = e1 + e2
                s = f.add(acc.get(e, 0), f.mul(v1, v2))
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return LaurentPoly(f, tuple(sorted(acc.items())))

    def scale(self, value: int) -> "LaurentPoly":
        """Multiply by an encoded field value."""
        f = self.field
        if value == 0:
            return LaurentPoly.zero(f)
        return LaurentPoly(f, tuple((e, f.mul(v, value)) for e, v in self.terms))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(self.field, tuple((e + k, v) for e, v in self.terms))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise NotUnimodular(f"{self} is not a unit of the Laurent ring")
        (e, v), = self.terms
        return LaurentPoly(self.field, ((-e, self.field.inv(v)),))

    def bar(self) -> "LaurentPoly":
        """Coefficientwise Frobenius (t is fixed)."""
        f = self.field
        return LaurentPoly(f, tuple((e, f.frobenius(v)) for e, v in self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        return "+".join(
            (f"{v}" if e == 0 else f"{v}*t^{e}" if e != 1 else f"{v}*t") for e, v in self.terms
        )


@dataclass(frozen=True)
class LaurentMatrix:
    field: GaloisField
    n: int
    rows: tuple[tuple[LaurentPoly, ...], ...]

    def __eq__(self, other):
        return (
            isinstance(other, LaurentMatrix)
            and self.field is other.field
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((id(self.field), self.n, tuple(p.terms for row in self.rows for p in row)))

    @staticmethod
    def identity(field: GaloisField, n: int) -> "LaurentMatrix":
        one, zero = LaurentPoly.one(field), LaurentPoly.zero(field)
        return LaurentMatrix(
            field, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @staticmethod
    def from_rows(field: GaloisField, rows) -> "LaurentMatrix":
        rows = tuple(tuple(rows[i][j] for j in range(len(rows))) for i in range(len(rows)))
        return LaurentMatrix(field, len(rows), rows)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.field is not other.field or self.n != other.n:
            raise RankMismatch("matrix shape or field mismatch")
        n = self.n
        zero = LaurentPoly.zero(self.field)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return LaurentMatrix(self.field, n, tuple(out))

    def det(self) -> LaurentPoly:
        r = self.rows
        if self.n == 1:
            return r[0][0]
        if self.n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        if self.n == 3:
            return (
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            )
        raise RankMismatch("determinant implemented for n <= 3")

    def adjugate(self) -> "LaurentMatrix":
        r = self.rows
        f = self.field
        if self.n == 1:
            return LaurentMatrix(f, 1, ((LaurentPoly.one(f),),))
        if self.n == 2:
            return LaurentMatrix(f, 2, ((r[1][1], -r[0][1]), (-r[1][0], r[0][0])))
        if self.n == 3:
            def c(i, j):
                i1, i2 = [x for x in range(3) if x != i]
                j1, j2 = [x for x in range(3) if x != j]
                minor = r[i1][j1] * r[i2][j2] - r[i1][j2] * r[i2][j1]
                return minor if (i + j) % 2 == 0 else -minor

            return LaurentMatrix(f, 3, tuple(tuple(c(j, i) for j in range(3)) for i in range(3)))
        raise RankMismatch("adjugate implemented for n <= 3")

    def inverse(self) -> "LaurentMatrix":
        d = self.det()
        if not d.is_unit():
            raise NotUnimodular("matrix determinant is not a unit")
        dinv = d.unit_inverse()
        adj = self.adjugate()
        return LaurentMatrix(
            self.field,
            self.n,
            tuple(tuple(adj.rows[i][j] * dinv for j in range(self.n)) for i in range(self.n)),
        )

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(
            self.field,
            self.n,
            tuple(tuple(self.rows[j][i] for j in range(self.n)) for i in range(self.n)),
        )

    def bar(self) -> "LaurentMatrix":
        return LaurentMatrix(
            self.field, self.n, tuple(tuple(p.bar() for p in row) for row in self.rows)
        )

    def is_identity(self) -> bool:
        return self == LaurentMatrix.identity(self.field, self.n)

    def constant_term(self) -> tuple[tuple[int, ...], ...]:
        """Value at t = 0 when all valuations are >= 0."""
        return tuple(tuple(p.coeff(0) for p in row) for row in self.rows)

    def max_degree_span(self) -> int:
        exps = [e for row in self.rows for p in row for e, _ in p.terms]
        return max((abs(e) for e in exps), default=0)

    def to_json_obj(self):
        def poly_obj(p: LaurentPoly):
            return [
                {"k": e, "c": list(FqElement(self.field, v).coeffs)} for e, v in p.terms
            ]

        return {"n": self.n, "q": self.field.q, "entries": [[poly_obj(p) for p in row] for row in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    def __repr__(self):
        return "[" + "; ".join(", ".join(str(p) for p in row) for row in self.rows) + "]"


def matrix_from_json(field: GaloisField, data) -> LaurentMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    rows = []
    for row in data["entries"]:
        out_row = []
        for poly in row:
            acc = {}
            for term in poly:
                coeffs = term["c"]
                value = coeffs[0] + (coeffs[1] * field.p if len(coeffs) > 1 else 0)
                if value:
                    acc[int(term["k"])] = value
            out_row.append(LaurentPoly(field, tuple(sorted(acc.items()))))
        rows.append(tuple(out_row))
    return LaurentMatrix(field, n, tuple(rows))


@lru_cache(maxsize=None)
def _zero_one(field):
    return LaurentPoly.zero(field), LaurentPoly.one(field)


def elementary(field: GaloisField, n: int, i: int, j: int, poly: LaurentPoly) -> LaurentMatrix:
    """I + poly * E_ij."""
    if i == j:
        raise RankMismatch("elementary matrices need i != j")
    base = [list(row) for row in LaurentMatrix.identity(field, n).rows]
    base[i][j] = base[i][j] + poly
    return LaurentMatrix(field, n, tuple(tuple(r) for r in base))


def diagonal(field: GaloisField, entries) -> LaurentMatrix:
    n = len(entries)
    zero = LaurentPoly.zero(field)
    return LaurentMatrix(
        field, n, tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n))
    )
