"""Ground-truth checks over the series field.

Everything here validates the tropical predicates against exact
semidefiniteness of lifted pencils: the outer set (order-2 minor
inequalities) contains every positive-semidefinite point, the inner set
(same inequalities with an (m-1)^2 safety factor) is contained in it, and
monomial lifts of member points of a certified pencil land inside the
inner set for the canonical lift.  Cross-validation walks a grid and
asserts exactly those implications.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .errors import NotCertified
from .hypergraphs import (
    Certificate,
    canonical_lift,
    certify_generic_general,
    perturb_to_interior,
)
from .pencils import (
    SigmaChoice,
    TropicalPencil,
    decompose,
    enumerate_choices,
    format_point,
    general_member,
    metzler_member,
    metzler_strict_member,
    stratum_restrict,
)
from .polynomials import TropPoly, eval_part, tropicalize
from .puiseux import (
    PuiseuxPoly,
    PuiseuxSymMatrix,
    SeriesPolynomial,
    add,
    is_psd,
    mul,
    sign_of,
    sval,
)
from .signed import ExtRat, is_minus_inf


@dataclass(frozen=True)
class PuiseuxPencil:
    """n symmetric series matrices, one per variable (homogeneous form)."""

    m: int
    n: int
    matrices: tuple[PuiseuxSymMatrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.n:
            raise ValueError(f"expected {self.n} matrices, got {len(self.matrices)}")
        for mat in self.matrices:
            if mat.m != self.m:
                raise ValueError("matrix dimension mismatch")


def sval_pencil(bp: PuiseuxPencil) -> TropicalPencil:
    """Entry-wise signed valuation of a series pencil."""
    mats = tuple(
        tuple(tuple(sval(e) for e in row) for row in mat.entries)
        for mat in bp.matrices
    )
    return TropicalPencil(bp.m, bp.n, mats)


def monomial_lift(x: Sequence[ExtRat]) -> tuple[PuiseuxPoly, ...]:
    """Entry-wise t^{x_k}; a -inf coordinate lifts to 0."""
    return tuple(
        PuiseuxPoly.zero() if is_minus_inf(v) else PuiseuxPoly.t_power(v) for v in x
    )


def entrywise_lift(pencil: TropicalPencil) -> PuiseuxPencil:
    """Plain sval-faithful lift: sign * t^value per entry, 0 for -inf."""
    mats = []
    for k in range(pencil.n):
        rows = []
        for i in range(pencil.m):
            row = []
            for j in range(pencil.m):
                a = pencil.matrices[k][i][j]
                if a.sign == 0:
                    row.append(PuiseuxPoly.zero())
                else:
                    row.append(PuiseuxPoly.monomial(a.sign, a.value))
            rows.append(row)
        mats.append(PuiseuxSymMatrix.from_rows(rows))
    return PuiseuxPencil(pencil.m, pencil.n, tuple(mats))


def canonical_lift_pencil(pencil: TropicalPencil) -> PuiseuxPencil:
    """The Metzler-only lift with the m*n diagonal factor, as a pencil."""
    return PuiseuxPencil(pencil.m, pencil.n, canonical_lift(pencil))


def evaluate_pencil(bp: PuiseuxPencil, bx: Sequence[PuiseuxPoly]) -> PuiseuxSymMatrix:
    """Exact sum of coordinate times matrix."""
    if len(bx) != bp.n:
        raise ValueError(f"expected {bp.n} coordinates, got {len(bx)}")
    rows = [[PuiseuxPoly.zero()] * bp.m for _ in range(bp.m)]
    for k in range(bp.n):
        coord = bx[k]
        if not coord:
            continue
        mat = bp.matrices[k]
        for i in range(bp.m):
            for j in range(i, bp.m):
                e = mat.entries[i][j]
                if e:
                    rows[i][j] = add(rows[i][j], mul(coord, e))
    for i in range(bp.m):
        for j in range(i):
            rows[i][j] = rows[j][i]
    return PuiseuxSymMatrix.from_rows(rows)


def _check_nonneg_point(bx: Sequence[PuiseuxPoly]) -> None:
    if any(sign_of(v) < 0 for v in bx):
        raise ValueError("point must be entry-wise nonnegative")


def sout_member(bp: PuiseuxPencil, bx: Sequence[PuiseuxPoly]) -> bool:
    """Order-2 minor relaxation: necessary for semidefiniteness."""
    _check_nonneg_point(bx)
    a = evaluate_pencil(bp, bx)
    return _minor_conditions(a, Fraction(1))


def sin_member(bp: PuiseuxPencil, bx: Sequence[PuiseuxPoly]) -> bool:
    """Order-2 minors with the (m-1)^2 factor: sufficient for semidefiniteness."""
    _check_nonneg_point(bx)
    a = evaluate_pencil(bp, bx)
    return _minor_conditions(a, Fraction((bp.m - 1) ** 2) if bp.m > 1 else Fraction(1))


def _minor_conditions(a: PuiseuxSymMatrix, factor: Fraction) -> bool:
    scale = PuiseuxPoly.constant(factor)
    for i in range(a.m):
        if sign_of(a.entries[i][i]) < 0:
            return False
    for i in range(a.m):
        for j in range(i + 1, a.m):
            lhs = mul(a.entries[i][i], a.entries[j][j])
            rhs = mul(scale, mul(a.entries[i][j], a.entries[i][j]))
            if sign_of(lhs - rhs) < 0:
                return False
    return True


def psd_member(
    bp: PuiseuxPencil, bx: Sequence[PuiseuxPoly], max_dim: int = 8
) -> bool:
    """Exact semidefiniteness of the evaluated pencil by principal minors."""
    return is_psd(evaluate_pencil(bp, bx), max_dim=max_dim)


# -- grid cross-validation ----------------------------------------------------


def grid_points(n: int, lo, hi, step) -> list[tuple[Fraction, ...]]:
    """Lexicographically ordered rational grid over a box."""
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    axis = []
    v = lo
    while v <= hi:
        axis.append(v)
        v += step
    return [tuple(p) for p in itertools.product(axis, repeat=n)]


def default_grid(n: int) -> list[tuple[Fraction, ...]]:
    """Integer points of [-2, 2]^n plus half-integer midpoints."""
    return grid_points(n, -2, 2, Fraction(1, 2))


@dataclass
class ValidationRecord:
    """Outcome of all oracle checks at one grid point."""

    x: tuple[ExtRat, ...]
    member: bool
    sout: bool | None = None
    sin: bool | None = None
    psd: bool | None = None
    ok: bool = True
    failures: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)

    def to_obj(self) -> dict:
        return {
            "x": format_point(self.x),
            "member": self.member,
            "checks": {"sout": self.sout, "sin": self.sin, "psd": self.psd},
            "ok": self.ok,
        }


@lru_cache(maxsize=None)
def _piece_table(pencil: TropicalPencil, max_choice_m: int):
    """Pieces grouped by sigma, in enumeration order; Metzler pencils are
    their own single piece."""
    if pencil.is_metzler:
        pairs = frozenset(
            (i, j) for i in range(pencil.m) for j in range(i + 1, pencil.m)
        )
        choice = SigmaChoice(pencil.m, pairs, ())
        return ((pairs, ((choice, pencil),)),)
    by_sigma: dict[frozenset, list[tuple[SigmaChoice, TropicalPencil]]] = {}
    order: list[frozenset] = []
    for choice in enumerate_choices(pencil.m, max_m=max_choice_m):
        if choice.sigma not in by_sigma:
            by_sigma[choice.sigma] = []
            order.append(choice.sigma)
        by_sigma[choice.sigma].append((choice, decompose(pencil, choice)))
    return tuple((sigma, tuple(by_sigma[sigma])) for sigma in order)


@lru_cache(maxsize=None)
def _lift_for(pencil: TropicalPencil) -> PuiseuxPencil:
    return canonical_lift_pencil(pencil) if pencil.is_metzler else entrywise_lift(pencil)


@lru_cache(maxsize=None)
def _canonical_for(piece: TropicalPencil) -> PuiseuxPencil:
    return canonical_lift_pencil(piece)


def _strict_pieces(pencil: TropicalPencil, x, max_choice_m: int):
    """First sigma whose every diamond piece contains x."""
    for sigma, pieces in _piece_table(pencil, max_choice_m):
        if all(metzler_member(piece, x) for _, piece in pieces):
            return sigma, pieces
    return None, []


def cross_validate(
    pencil: TropicalPencil,
    grid: Sequence[Sequence[ExtRat]],
    *,
    assume_certified: bool = False,
    max_m: int = 4,
    max_n: int = 4,
    psd_dim_bound: int = 8,
) -> list[ValidationRecord]:
    """Check the membership predicate against the exact PSD oracle on a grid.

    Requires a genericity certificate (computed here unless
    assume_certified is set, in which case the caller vouches and the grid
    soundness checks run regardless).  Non-member points must fall outside
    the outer relaxation of the lift; member points must land inside the
    inner relaxation of the canonical lift of a qualifying Metzler piece,
    strictly perturbed first when they sit on the boundary.
    """
    if not assume_certified:
        result = certify_generic_general(pencil, max_m=max_m, max_n=max_n)
        if not isinstance(result, Certificate):
            raise NotCertified("pencil has a circulation witness; oracle out of scope")
    records = []
    for point in sorted(grid):
        records.append(
            _validate_point(pencil, tuple(point), psd_dim_bound, max_choice_m=max(5, max_m + 1))
        )
    return records


def _validate_point(
    pencil: TropicalPencil, x, psd_dim_bound: int, max_choice_m: int
) -> ValidationRecord:
    member = general_member(pencil, x)
    rec = ValidationRecord(x=x, member=member)
    support = tuple(k for k, v in enumerate(x) if not is_minus_inf(v))
    if len(support) < pencil.n:
        if not support:
            # all coordinates -inf: the zero matrix, trivially inside
            rec.sout = rec.sin = rec.psd = True
            if not member:
                rec.fail("all--inf point must be a member")
            return rec
        sub = stratum_restrict(pencil, support)
        sub_x = tuple(x[k] for k in support)
        if general_member(sub, sub_x) != member:
            rec.fail("membership disagrees with its support stratum")
            return rec
        inner = _validate_point(sub, sub_x, psd_dim_bound, max_choice_m)
        rec.sout, rec.sin, rec.psd = inner.sout, inner.sin, inner.psd
        if not inner.ok:
            rec.ok = False
            rec.failures = inner.failures
        return rec

    metz = pencil.is_metzler
    lift = _lift_for(pencil)
    bx = monomial_lift(x)
    rec.sout = sout_member(lift, bx)
    rec.sin = sin_member(lift, bx)

    if not member:
        rec.psd = psd_member(lift, bx, max_dim=psd_dim_bound)
        if rec.sout:
            rec.fail("non-member point satisfies the outer minor inequalities")
        if rec.psd:
            rec.fail("non-member point lifts to a semidefinite matrix")
        if rec.sin:
            rec.fail("non-member point satisfies the inner minor inequalities")
        return rec

    if metz:
        rec.psd = psd_member(lift, bx, max_dim=psd_dim_bound)
        if not rec.sin:
            rec.fail("member point escapes the inner set of the canonical lift")
        if not rec.psd:
            rec.fail("member point lifts to a non-semidefinite matrix")
        if not rec.sout:
            rec.fail("member point escapes the outer set")

    sigma, pieces = _strict_pieces(pencil, x, max_choice_m)
    if sigma is None:
        rec.fail("no sigma piece family contains the member point")
        return rec
    for choice, piece in pieces:
        piece_lift = _canonical_for(piece)
        if metzler_strict_member(piece, x):
            target = x
        else:
            eta, rho0 = perturb_to_interior(piece, x)
            target = tuple(v + rho0 * d for v, d in zip(x, eta))
            if not metzler_strict_member(piece, target):
                rec.fail(f"perturbation not strict in piece sigma={sorted(choice.sigma)}")
                continue
        if not psd_member(piece_lift, monomial_lift(target), max_dim=psd_dim_bound):
            rec.fail(
                f"strict point of piece sigma={sorted(choice.sigma)} lifts outside PSD"
            )
    return rec


# -- tropicalized inequality systems ------------------------------------------


class SandwichVerdict(Enum):
    STRICT_IN = "StrictIn"
    WEAK_ONLY = "WeakOnly"
    OUT = "Out"


def valuation_sandwich_check(
    polys: Sequence[SeriesPolynomial], x: Sequence[Fraction]
) -> SandwichVerdict:
    """Classify a point against the tropicalized system of a series system.

    Strictly inside means every tropicalized inequality holds strictly; the
    monomial lift is then checked to satisfy the exact system, which is the
    half of the sandwich that single lifts can witness.  Outside means some
    weak inequality fails, so no lift exists at all.  Anything else is
    undetermined at this level.
    """
    trops: list[TropPoly] = [tropicalize(bp) for bp in polys]
    strict = True
    for tp in trops:
        plus = eval_part(tp, "+", x)
        minus = eval_part(tp, "-", x)
        if not plus >= minus:
            return SandwichVerdict.OUT
        if not plus > minus:
            strict = False
    if not strict:
        return SandwichVerdict.WEAK_ONLY
    bx = monomial_lift(x)
    for bp in polys:
        value = bp.evaluate(bx)
        assert sign_of(value) > 0, "strict tropical point must lift strictly"
    return SandwichVerdict.STRICT_IN
