"""Tropical linear matrix pencils and their spectrahedron predicates.

A pencil is a list of n symmetric m x m matrices of signed tropical
numbers, one per variable.  Membership of a point x in the associated
tropical spectrahedron is decided by the order-1 and order-2 principal
minor inequalities; the Metzler case (all off-diagonal coefficients
negative or -inf) admits the direct predicate, the general case reduces
to Metzler pieces indexed by a subset Sigma of row pairs and a direction
map on its complement.

Points live in (Q union {-inf})^n.  Affine problems are handled by
homogenization only: the constant matrix becomes the coefficient of a
fresh first variable, and affine membership fixes that coordinate to 0.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DimensionTooLarge, NotMetzler, PencilFormatError
from .polynomials import TropPoly
from .signed import (
    MINUS_INF,
    ExtRat,
    SignedTrop,
    TROP_MINUS_INF,
    format_signed,
    is_minus_inf,
    parse_signed,
)

Matrix = tuple[tuple[SignedTrop, ...], ...]


@dataclass(frozen=True)
class TropicalPencil:
    """n symmetric m x m signed tropical matrices, one per variable."""

    m: int
    n: int
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.n:
            raise ValueError(f"expected {self.n} matrices, got {len(self.matrices)}")
        for mat in self.matrices:
            if len(mat) != self.m or any(len(row) != self.m for row in mat):
                raise ValueError("matrix dimension mismatch")
            for i in range(self.m):
                for j in range(i):
                    if mat[i][j] != mat[j][i]:
                        raise ValueError(f"matrix not symmetric at ({i},{j})")

    @staticmethod
    def from_rows(m: int, n: int, matrices) -> "TropicalPencil":
        return TropicalPencil(
            m, n, tuple(tuple(tuple(row) for row in mat) for mat in matrices)
        )

    @cached_property
    def is_metzler(self) -> bool:
        """Every off-diagonal coefficient tropically negative or -inf."""
        return all(
            mat[i][j].sign <= 0
            for mat in self.matrices
            for i in range(self.m)
            for j in range(self.m)
            if i != j
        )

    @cached_property
    def _ij(self):
        # per entry position: (k, value) lists for positive, negative and all
        # finite coefficients; the driver of every predicate below
        data = {}
        for i in range(self.m):
            for j in range(i, self.m):
                pos, neg_, fin = [], [], []
                for k in range(self.n):
                    a = self.matrices[k][i][j]
                    if a.sign == 1:
                        pos.append((k, a.value))
                        fin.append((k, a.value))
                    elif a.sign == -1:
                        neg_.append((k, a.value))
                        fin.append((k, a.value))
                data[(i, j)] = (tuple(pos), tuple(neg_), tuple(fin))
        return data


def _family_max(family: Sequence[tuple[int, Fraction]], x: Sequence[ExtRat]) -> ExtRat:
    best: ExtRat = MINUS_INF
    for k, v in family:
        xk = x[k]
        if is_minus_inf(xk):
            continue
        val = v + xk
        if best < val:
            best = val
    return best


def qij_poly(pencil: TropicalPencil, i: int, j: int) -> TropPoly:
    """The degree-1 tropical polynomial with coefficient Q^(k)_ij on X_k."""
    coeffs = {}
    for k in range(pencil.n):
        a = pencil.matrices[k][i][j]
        if a.sign != 0:
            alpha = tuple(1 if t == k else 0 for t in range(pencil.n))
            coeffs[alpha] = a
    return TropPoly(pencil.n, coeffs)


def _check_point(pencil: TropicalPencil, x: Sequence[ExtRat]) -> None:
    if len(x) != pencil.n:
        raise ValueError(f"expected {pencil.n} coordinates, got {len(x)}")


def _require_metzler(pencil: TropicalPencil) -> None:
    if not pencil.is_metzler:
        raise NotMetzler("pencil has a tropically positive off-diagonal coefficient")


def metzler_member(pencil: TropicalPencil, x: Sequence[ExtRat]) -> bool:
    """Membership in the tropical Metzler spectrahedron of the pencil.

    Diagonal constraints compare positive against negative parts; pair
    constraints compare the product of positive diagonal parts against the
    squared off-diagonal modulus.  -inf >= -inf holds.
    """
    _require_metzler(pencil)
    _check_point(pencil, x)
    ij = pencil._ij
    for i in range(pencil.m):
        pos, neg_, _ = ij[(i, i)]
        if not _family_max(pos, x) >= _family_max(neg_, x):
            return False
    for i in range(pencil.m):
        for j in range(i + 1, pencil.m):
            _, _, fin = ij[(i, j)]
            rhs = _family_max(fin, x)
            if is_minus_inf(rhs):
                continue
            lhs_i = _family_max(ij[(i, i)][0], x)
            lhs_j = _family_max(ij[(j, j)][0], x)
            if is_minus_inf(lhs_i) or is_minus_inf(lhs_j):
                return False
            if not lhs_i + lhs_j >= 2 * rhs:
                return False
    return True


def metzler_strict_member(pencil: TropicalPencil, x: Sequence[Fraction]) -> bool:
    """Strict versions of the nontrivial inequalities at a finite point.

    Constraints whose right-hand side is the zero polynomial are skipped:
    they hold identically and have no strict form.
    """
    _require_metzler(pencil)
    _check_point(pencil, x)
    if any(is_minus_inf(v) for v in x):
        raise ValueError("strict membership is defined for finite points only")
    ij = pencil._ij
    for i in range(pencil.m):
        pos, neg_, _ = ij[(i, i)]
        if not neg_:
            continue
        if not _family_max(pos, x) > _family_max(neg_, x):
            return False
    for i in range(pencil.m):
        for j in range(i + 1, pencil.m):
            _, _, fin = ij[(i, j)]
            if not fin:
                continue
            lhs_i = _family_max(ij[(i, i)][0], x)
            lhs_j = _family_max(ij[(j, j)][0], x)
            if is_minus_inf(lhs_i) or is_minus_inf(lhs_j):
                return False
            if not lhs_i + lhs_j > 2 * _family_max(fin, x):
                return False
    return True


def general_member(pencil: TropicalPencil, x: Sequence[ExtRat]) -> bool:
    """Membership for arbitrary sign patterns.

    The pair constraint may also be discharged by an exact tie between the
    positive and negative off-diagonal parts.
    """
    _check_point(pencil, x)
    ij = pencil._ij
    for i in range(pencil.m):
        pos, neg_, _ = ij[(i, i)]
        if not _family_max(pos, x) >= _family_max(neg_, x):
            return False
    for i in range(pencil.m):
        for j in range(i + 1, pencil.m):
            pos, neg_, fin = ij[(i, j)]
            plus = _family_max(pos, x)
            minus = _family_max(neg_, x)
            rhs = plus if plus >= minus else minus
            if is_minus_inf(rhs):
                continue
            lhs_i = _family_max(ij[(i, i)][0], x)
            lhs_j = _family_max(ij[(j, j)][0], x)
            ok = (
                not is_minus_inf(lhs_i)
                and not is_minus_inf(lhs_j)
                and lhs_i + lhs_j >= 2 * rhs
            )
            if not ok and plus != minus:
                return False
    return True


@dataclass(frozen=True)
class SigmaChoice:
    """A subset of row pairs plus a direction for each remaining pair."""

    m: int
    sigma: frozenset[tuple[int, int]]
    diamond: tuple[tuple[tuple[int, int], str], ...]

    def __post_init__(self):
        pairs = {(i, j) for i in range(self.m) for j in range(i + 1, self.m)}
        comp = {p for p, _ in self.diamond}
        if not self.sigma <= pairs or not comp <= pairs:
            raise ValueError("pair out of range")
        if self.sigma & comp or self.sigma | comp != pairs:
            raise ValueError("sigma and diamond must partition the strict upper triangle")
        if any(d not in (">=", "<=") for _, d in self.diamond):
            raise ValueError("directions must be '>=' or '<='")
        if list(self.diamond) != sorted(self.diamond):
            raise ValueError("diamond pairs must be sorted")

    @staticmethod
    def make(m: int, sigma: Iterable[tuple[int, int]], diamond) -> "SigmaChoice":
        dia = tuple(sorted((tuple(p), d) for p, d in dict(diamond).items()))
        return SigmaChoice(m, frozenset(tuple(p) for p in sigma), dia)


def enumerate_choices(m: int, max_m: int = 5):
    """All (sigma, diamond) pairs in a fixed order: larger sigma first."""
    if m > max_m:
        raise DimensionTooLarge(f"m = {m} exceeds choice-enumeration bound {max_m}")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    p = len(pairs)
    for mask in range(2**p - 1, -1, -1):
        sigma = frozenset(pairs[b] for b in range(p) if mask >> b & 1)
        comp = [pairs[b] for b in range(p) if not mask >> b & 1]
        for dirs in itertools.product((">=", "<="), repeat=len(comp)):
            yield SigmaChoice(m, sigma, tuple(zip(comp, dirs)))


def decompose(pencil: TropicalPencil, choice: SigmaChoice) -> TropicalPencil:
    """The Metzler pencil whose spectrahedron is the (sigma, diamond) piece.

    Block structure: the original diagonal with off-diagonal entries turned
    into negated moduli inside sigma and erased outside, plus one extra
    diagonal row per complement pair carrying that pair's off-diagonal
    polynomial, sign-flipped when the direction is "<=".
    """
    if choice.m != pencil.m:
        raise ValueError("choice built for a different dimension")
    comp = [p for p, _ in choice.diamond]
    dirs = dict(choice.diamond)
    m2 = pencil.m + len(comp)
    mats = []
    for k in range(pencil.n):
        src = pencil.matrices[k]
        rows = [[TROP_MINUS_INF] * m2 for _ in range(m2)]
        for i in range(pencil.m):
            rows[i][i] = src[i][i]
            for j in range(i + 1, pencil.m):
                if (i, j) in choice.sigma:
                    a = src[i][j]
                    entry = TROP_MINUS_INF if a.sign == 0 else SignedTrop(-1, a.value)
                    rows[i][j] = rows[j][i] = entry
        for idx, (i, j) in enumerate(comp):
            a = src[i][j]
            if dirs[(i, j)] == "<=" and a.sign != 0:
                a = SignedTrop(-a.sign, a.value)
            rows[pencil.m + idx][pencil.m + idx] = a
        mats.append(tuple(tuple(r) for r in rows))
    return TropicalPencil(m2, pencil.n, tuple(mats))


def check_assumption_nondeg(pencil: TropicalPencil) -> list[tuple[int, int, int]]:
    """Pairs (k, i, j) where two positive diagonal coefficients exactly
    balance twice the off-diagonal modulus; empty means nondegenerate."""
    bad = []
    for k in range(pencil.n):
        mat = pencil.matrices[k]
        for i in range(pencil.m):
            for j in range(i + 1, pencil.m):
                if mat[i][i].sign == 1 and mat[j][j].sign == 1:
                    if mat[i][i].value + mat[j][j].value == 2 * mat[i][j].value:
                        bad.append((k, i, j))
    return bad


def homogenize(q0: Matrix, pencil: TropicalPencil) -> TropicalPencil:
    """Adjoin q0 as the coefficient of a fresh first variable."""
    q0 = tuple(tuple(row) for row in q0)
    return TropicalPencil(pencil.m, pencil.n + 1, (q0,) + pencil.matrices)


def stratum_restrict(pencil: TropicalPencil, support: Iterable[int]) -> TropicalPencil:
    """Sub-pencil on the given variable set, in ascending variable order."""
    ks = sorted(set(int(k) for k in support))
    if not ks:
        raise ValueError("support must be nonempty")
    if ks[0] < 0 or ks[-1] >= pencil.n:
        raise ValueError(f"support {ks!r} out of range for n = {pencil.n}")
    return TropicalPencil(pencil.m, len(ks), tuple(pencil.matrices[k] for k in ks))


# -- pencil documents ---------------------------------------------------------
#
# {"m": int, "n": int, "homogeneous": bool,
#  "matrices": [{"k": int, "entries": [{"i": int, "j": int, "coeff": str}, ...]}, ...]}
#
# k is 0-based; for affine documents (homogeneous = false) k = 0 is the
# constant matrix and k = 1..n match the variables.  i, j are 1-based row
# indices with i <= j; omitted entries are -inf.


def pencil_from_obj(obj) -> tuple[TropicalPencil, bool]:
    """Parse a pencil document; returns the homogenized pencil and the flag."""
    if not isinstance(obj, dict):
        raise PencilFormatError("document must be a JSON object")
    try:
        m = int(obj["m"])
        n = int(obj["n"])
        homogeneous = bool(obj["homogeneous"])
        matrices = obj["matrices"]
    except (KeyError, TypeError, ValueError) as exc:
        raise PencilFormatError(f"missing or malformed header field: {exc}") from exc
    if m < 1 or n < 1:
        raise PencilFormatError("m and n must be positive")
    if not isinstance(matrices, list):
        raise PencilFormatError("'matrices' must be a list")
    k_max = n - 1 if homogeneous else n
    built: dict[int, list[list[SignedTrop]]] = {}
    for entry in matrices:
        try:
            k = int(entry["k"])
            entries = entry["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PencilFormatError(f"malformed matrix record: {exc}") from exc
        if not 0 <= k <= k_max:
            raise PencilFormatError(f"matrix index k = {k} out of range 0..{k_max}")
        if k in built:
            raise PencilFormatError(f"duplicate matrix index k = {k}")
        rows = [[TROP_MINUS_INF] * m for _ in range(m)]
        seen = set()
        for cell in entries:
            try:
                i = int(cell["i"])
                j = int(cell["j"])
                coeff = parse_signed(str(cell["coeff"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise PencilFormatError(f"malformed entry in matrix {k}: {exc}") from exc
            if not (1 <= i <= j <= m):
                raise PencilFormatError(
                    f"entry ({i},{j}) of matrix {k} violates 1 <= i <= j <= {m}"
                )
            if (i, j) in seen:
                raise PencilFormatError(f"duplicate entry ({i},{j}) in matrix {k}")
            seen.add((i, j))
            rows[i - 1][j - 1] = coeff
            rows[j - 1][i - 1] = coeff
        built[k] = rows
    empty = tuple(tuple([TROP_MINUS_INF] * m) for _ in range(m))

    def mat(k):
        rows = built.get(k)
        return empty if rows is None else tuple(tuple(r) for r in rows)

    if homogeneous:
        pencil = TropicalPencil(m, n, tuple(mat(k) for k in range(n)))
    else:
        base = TropicalPencil(m, n, tuple(mat(k) for k in range(1, n + 1)))
        pencil = homogenize(mat(0), base)
    return pencil, homogeneous


def pencil_to_obj(pencil: TropicalPencil, homogeneous: bool = True) -> dict:
    """Inverse of pencil_from_obj (affine documents split off the constant)."""
    n_file = pencil.n if homogeneous else pencil.n - 1
    mats = []
    for k in range(pencil.n):
        entries = []
        mat = pencil.matrices[k]
        for i in range(pencil.m):
            for j in range(i, pencil.m):
                if mat[i][j] != TROP_MINUS_INF:
                    entries.append(
                        {"i": i + 1, "j": j + 1, "coeff": format_signed(mat[i][j])}
                    )
        if entries:
            mats.append({"k": k, "entries": entries})
    return {"m": pencil.m, "n": n_file, "homogeneous": homogeneous, "matrices": mats}


def load_pencil(path) -> tuple[TropicalPencil, bool]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PencilFormatError(f"invalid JSON: {exc}") from exc
    return pencil_from_obj(obj)


def parse_point(text: str) -> tuple[ExtRat, ...]:
    """Comma-separated coordinates; each "p/q" or "-inf"."""
    out: list[ExtRat] = []
    for piece in text.split(","):
        piece = piece.strip()
        if piece == "-inf":
            out.append(MINUS_INF)
        else:
            try:
                out.append(Fraction(piece))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad coordinate {piece!r}") from exc
    return tuple(out)


def format_point(x: Sequence[ExtRat]) -> list[str]:
    return ["-inf" if is_minus_inf(v) else str(v) for v in x]
