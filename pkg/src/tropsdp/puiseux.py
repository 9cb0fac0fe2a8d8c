"""Formal Puiseux polynomials over the rationals, the exact ground field.

A value is a finite sum of terms c * t^e with rational c != 0 and rational
exponents stored in strictly decreasing order, t a large formal parameter.
The empty sum is 0.  Canonical form makes equality of values structural.
The leading term orders the field: x >= y iff the leading coefficient of
x - y is >= 0, so e.g. t > 1 and t^(1/2) > 1000.

Symmetric matrices over this field support exact principal minors and a
positive-semidefiniteness test by exhausting them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionTooLarge
from .signed import MINUS_INF, ExtRat, SignedTrop, TROP_MINUS_INF


@dataclass(frozen=True)
class PuiseuxPoly:
    """Finite formal sum of (exponent, coefficient) terms, exponents decreasing."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    @staticmethod
    def from_terms(terms: Iterable[tuple[Fraction, Fraction]]) -> "PuiseuxPoly":
        """Canonicalize: merge equal exponents, drop zeros, sort decreasing."""
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e, c = Fraction(e), Fraction(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        out = tuple((e, c) for e, c in sorted(acc.items(), reverse=True) if c != 0)
        return PuiseuxPoly(out)

    @staticmethod
    def zero() -> "PuiseuxPoly":
        return PuiseuxPoly(())

    @staticmethod
    def constant(c) -> "PuiseuxPoly":
        return PuiseuxPoly.from_terms([(Fraction(0), Fraction(c))])

    @staticmethod
    def monomial(c, e) -> "PuiseuxPoly":
        return PuiseuxPoly.from_terms([(Fraction(e), Fraction(c))])

    @staticmethod
    def t_power(e) -> "PuiseuxPoly":
        return PuiseuxPoly.monomial(1, e)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return add(self, other)

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return add(self, neg(other))

    def __neg__(self) -> "PuiseuxPoly":
        return neg(self)

    def __mul__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return mul(self, other)

    def lc(self) -> Fraction:
        """Leading coefficient; 0 for the zero series."""
        return self.terms[0][1] if self.terms else Fraction(0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.terms):
            mag = abs(c)
            body = f"{mag}*t^{e}"
            if idx == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)


def add(x: PuiseuxPoly, y: PuiseuxPoly) -> PuiseuxPoly:
    """Exact term-wise merge with cancellation."""
    return PuiseuxPoly.from_terms(x.terms + y.terms)


def neg(x: PuiseuxPoly) -> PuiseuxPoly:
    return PuiseuxPoly(tuple((e, -c) for e, c in x.terms))


def mul(x: PuiseuxPoly, y: PuiseuxPoly) -> PuiseuxPoly:
    """Exact convolution; exponents add."""
    if not x.terms or not y.terms:
        return PuiseuxPoly.zero()
    acc: dict[Fraction, Fraction] = {}
    for ex, cx in x.terms:
        for ey, cy in y.terms:
            e = ex + ey
            acc[e] = acc.get(e, Fraction(0)) + cx * cy
    out = tuple((e, c) for e, c in sorted(acc.items(), reverse=True) if c != 0)
    return PuiseuxPoly(out)


def val(x: PuiseuxPoly) -> ExtRat:
    """Leading exponent; val(0) = -inf."""
    return x.terms[0][0] if x.terms else MINUS_INF


def sign_of(x: PuiseuxPoly) -> int:
    """Sign of the leading coefficient; induces the total order of the field."""
    if not x.terms:
        return 0
    return 1 if x.terms[0][1] > 0 else -1


def sval(x: PuiseuxPoly) -> SignedTrop:
    """Signed valuation: (sign of lc, leading exponent)."""
    if not x.terms:
        return TROP_MINUS_INF
    e, c = x.terms[0]
    return SignedTrop(1 if c > 0 else -1, e)


class SeriesPolynomial:
    """Polynomial in n variables with PuiseuxPoly coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[tuple[int, ...], PuiseuxPoly]):
        self.n = n
        clean: dict[tuple[int, ...], PuiseuxPoly] = {}
        for alpha, c in coeffs.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha!r} for {n} variables")
            if c:
                clean[alpha] = c
        self.coeffs = clean

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesPolynomial)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def evaluate(self, point: Sequence[PuiseuxPoly]) -> PuiseuxPoly:
        if len(point) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(point)}")
        total = PuiseuxPoly.zero()
        for alpha, c in sorted(self.coeffs.items()):
            term = c
            for k, a in enumerate(alpha):
                for _ in range(a):
                    term = mul(term, point[k])
            total = add(total, term)
        return total


@dataclass(frozen=True)
class PuiseuxSymMatrix:
    """Symmetric square matrix of Puiseux polynomials."""

    entries: tuple[tuple[PuiseuxPoly, ...], ...]

    def __post_init__(self):
        m = len(self.entries)
        for row in self.entries:
            if len(row) != m:
                raise ValueError("matrix is not square")
        for i in range(m):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i},{j})")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[PuiseuxPoly]]) -> "PuiseuxSymMatrix":
        return PuiseuxSymMatrix(tuple(tuple(row) for row in rows))

    @property
    def m(self) -> int:
        return len(self.entries)


def _det(entries, rows: tuple[int, ...], cols: tuple[int, ...], memo) -> PuiseuxPoly:
    # division-free expansion along the first row, memoized on (rows, cols)
    if not rows:
        return PuiseuxPoly.constant(1)
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    r = rows[0]
    rest = rows[1:]
    total = PuiseuxPoly.zero()
    for idx, c in enumerate(cols):
        a = entries[r][c]
        if not a:
            continue
        sub = _det(entries, rest, cols[:idx] + cols[idx + 1 :], memo)
        term = mul(a, sub)
        total = add(total, term if idx % 2 == 0 else neg(term))
    memo[key] = total
    return total


def principal_minor(a: PuiseuxSymMatrix, index_set: Iterable[int]) -> PuiseuxPoly:
    """Exact determinant of the submatrix on the given (0-based) indices."""
    idx = tuple(sorted(set(int(i) for i in index_set)))
    if not idx:
        raise ValueError("index set must be nonempty")
    if idx[0] < 0 or idx[-1] >= a.m:
        raise ValueError(f"index set {idx!r} out of range for dimension {a.m}")
    return _det(a.entries, idx, idx, {})


def _components(a: PuiseuxSymMatrix) -> list[tuple[int, ...]]:
    # connected components of the nonzero off-diagonal pattern; principal
    # minors factor across them, so PSD can be decided block by block
    m = a.m
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if a.entries[i][j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [tuple(sorted(g)) for g in sorted(groups.values())]


def is_psd(a: PuiseuxSymMatrix, max_dim: int = 8) -> bool:
    """True iff every principal minor is nonnegative in the series order.

    Raises DimensionTooLarge above max_dim: the minor count is 2^m - 1.
    """
    if a.m > max_dim:
        raise DimensionTooLarge(f"dimension {a.m} exceeds bound {max_dim}")
    from itertools import combinations

    for comp in _components(a):
        memo: dict = {}
        for size in range(1, len(comp) + 1):
            for idx in combinations(comp, size):
                if sign_of(_det(a.entries, idx, idx, memo)) < 0:
                    return False
    return True
