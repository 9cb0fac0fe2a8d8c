from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from conftest import FIXTURES
from helpers import pencil_of, random_pencil
from tropsdp.errors import CirculationExists, DimensionTooLarge, NotMetzler
from tropsdp.hypergraphs import (
    Certificate,
    Edge,
    Hypergraph,
    Witness,
    build_tangent_hypergraph,
    canonical_lift,
    certify_generic_general,
    certify_generic_metzler,
    farkas_direction,
    find_circulation,
    perturb_to_interior,
    result_to_obj,
)
from tropsdp.pencils import (
    decompose,
    load_pencil,
    metzler_strict_member,
    stratum_restrict,
)
from tropsdp.polynomials import tropicalize
from tropsdp.puiseux import PuiseuxPoly as P, SeriesPolynomial, sval
from tropsdp.signed import neg, pos

Z = F(0)


@pytest.fixture(scope="module")
def hyp():
    return load_pencil(FIXTURES / "line_pencil.json")[0]


@pytest.fixture(scope="module")
def poly9():
    return load_pencil(FIXTURES / "polygon9.json")[0]


@pytest.fixture(scope="module")
def quad_ray():
    return load_pencil(FIXTURES / "quadrant_ray.json")[0]


def edge_set(graph):
    return {(e.tails, e.head) for e in graph.edges}


# a 2x2 matrix with Q_00 + Q_11 = 2|Q_01| (degenerate order-2 minor)
DEGENERATE = {(0, 0, 0): "+1", (0, 1, 1): "+3", (0, 0, 1): "-2"}


def test_tangent_hypergraph_examples(hyp):
    g = build_tangent_hypergraph(hyp, (Z, Z, Z))
    assert edge_set(g) == {((0,), 1), ((0,), 2), ((1, 2), 0)}
    assert build_tangent_hypergraph(hyp, (Z, F(-1), F(-1))).edges == ()
    degen = pencil_of(2, 2, {**DEGENERATE, (1, 0, 0): "+0", (1, 1, 1): "+0"})
    g2 = build_tangent_hypergraph(degen, (F(10), Z))
    assert ((0, 0), 0) in edge_set(g2)


def test_tangent_hypergraph_preconditions(hyp, quad_ray):
    with pytest.raises(NotMetzler):
        build_tangent_hypergraph(quad_ray, (Z, Z, Z))
    from tropsdp.signed import MINUS_INF

    with pytest.raises(ValueError):
        build_tangent_hypergraph(hyp, (Z, Z, MINUS_INF))


def test_find_circulation_examples(hyp):
    g = build_tangent_hypergraph(hyp, (Z, Z, Z))
    circ = find_circulation(g)
    assert circ is not None
    assert sum(circ.gamma) == 1 and all(v >= 0 for v in circ.gamma)
    self_loop = Hypergraph(1, (Edge((0, 0), 0),))
    got = find_circulation(self_loop)
    assert got is not None and got.gamma == (F(1),)
    single = Hypergraph(2, (Edge((0,), 1),))
    assert find_circulation(single) is None


def test_farkas_examples(hyp):
    assert farkas_direction(Hypergraph(3, ())) == (Z, Z, Z)
    single = Hypergraph(2, (Edge((0,), 1),))
    eta = farkas_direction(single)
    assert eta is not None and eta[0] > eta[1]
    g = build_tangent_hypergraph(hyp, (Z, Z, Z))
    assert farkas_direction(g) is None


def test_exactly_one_of_circulation_or_direction():
    rng = random.Random(41)
    all_edges = [
        Edge(tuple(sorted(t)), h)
        for t in list(itertools.product(range(3), repeat=1))
        + list(itertools.combinations_with_replacement(range(3), 2))
        for h in range(3)
    ]
    for _ in range(300):
        combo = tuple(
            sorted(
                rng.sample(all_edges, rng.randint(0, 4)),
                key=lambda e: (len(e.tails), e.tails, e.head),
            )
        )
        g = Hypergraph(3, combo)
        circ = find_circulation(g)
        eta = farkas_direction(g)
        assert (circ is None) != (eta is None)
        if eta is not None:
            for e in g.edges:
                assert sum(eta[v] for v in e.tails) > len(e.tails) * eta[e.head]


def test_canonical_lift_entries(hyp):
    mats = canonical_lift(hyp)
    # (-)3 -> -t^3 pattern: check the fixture's (-)0 entries and diagonal factor
    assert mats[0].entries[0][0] == P.monomial(12, 0)  # m*n = 12 on +0
    assert mats[1].entries[0][0] == P.monomial(-1, 0)  # -t^0 on (-)0
    assert mats[2].entries[0][0] == P.zero()  # -inf -> 0
    explicit = pencil_of(1, 1, {(0, 0, 0): neg(3)})
    assert canonical_lift(explicit)[0].entries[0][0] == P.monomial(-1, 3)
    diag = pencil_of(3, 2, {(0, 0, 0): pos(2)})
    assert canonical_lift(diag)[0].entries[0][0] == P.monomial(6, 2)


def test_canonical_lift_svals_match(hyp):
    mats = canonical_lift(hyp)
    for k in range(hyp.n):
        for i in range(hyp.m):
            for j in range(hyp.m):
                entry = SeriesPolynomial(1, {(0,): mats[k].entries[i][j]})
                got = tropicalize(entry)
                want = hyp.matrices[k][i][j]
                if want.sign == 0:
                    assert got.is_zero()
                else:
                    assert got.coeffs[(0,)] == want
                assert sval(mats[k].entries[i][j]) == want


def test_canonical_lift_requires_metzler(quad_ray):
    with pytest.raises(NotMetzler):
        canonical_lift(quad_ray)


def test_certify_metzler_witness(hyp):
    res = certify_generic_metzler(hyp)
    assert isinstance(res, Witness)
    g = build_tangent_hypergraph(hyp, res.x)
    assert g.edges == res.edges
    circ = find_circulation(g)
    assert circ is not None


def test_certify_metzler_certificate():
    diag = pencil_of(2, 2, {(0, 0, 0): "+0", (0, 1, 1): "+5", (1, 0, 0): "+1", (1, 1, 1): "+3"})
    assert isinstance(certify_generic_metzler(diag), Certificate)


def test_certificate_implies_no_grid_circulation():
    # soundness spot-check: scan a dense grid after a certificate
    rng = random.Random(42)
    found = 0
    while found < 5:
        p = random_pencil(rng, max_m=3, max_n=2, metzler=True, value_pool=7)
        try:
            res = certify_generic_metzler(p)
        except DimensionTooLarge:
            continue
        if not isinstance(res, Certificate):
            continue
        found += 1
        from tropsdp.oracle import grid_points

        for x in grid_points(p.n, -3, 3, F(1, 2)):
            g = build_tangent_hypergraph(p, x)
            assert find_circulation(g) is None


def test_certify_degenerate_minor_gives_witness():
    degen = pencil_of(2, 2, {**DEGENERATE, (1, 0, 0): "+0", (1, 1, 1): "+0"})
    res = certify_generic_metzler(degen)
    assert isinstance(res, Witness)
    g = build_tangent_hypergraph(degen, res.x)
    assert find_circulation(g) is not None


def test_certify_bounds():
    big = pencil_of(5, 1, {(0, i, i): pos(i) for i in range(5)})
    with pytest.raises(DimensionTooLarge):
        certify_generic_metzler(big)
    with pytest.raises(DimensionTooLarge):
        certify_generic_general(big)
    certify_generic_general(big, max_m=5)


def test_certify_general_on_fixtures(hyp, quad_ray, poly9):
    res = certify_generic_general(hyp)
    assert isinstance(res, Witness)
    assert res.stratum == (0, 1, 2)
    obj = result_to_obj(res)
    assert obj["status"] == "witness"
    assert obj["x"] == ["0", "0", "0"]
    assert isinstance(certify_generic_general(quad_ray), Certificate)
    assert isinstance(certify_generic_general(poly9, max_m=9), Certificate)
    m1 = load_pencil(FIXTURES / "m1_distinct.json")[0]
    assert isinstance(certify_generic_general(m1), Certificate)
    assert result_to_obj(Certificate()) == {"status": "generic"}


def test_certify_general_witness_in_piece(quad_ray):
    # force a witness on a non-Metzler pencil by degenerate diagonal ties
    p = pencil_of(
        2,
        2,
        {(0, 0, 0): "+0", (0, 1, 1): "+0", (0, 0, 1): "+0", (1, 0, 0): "-0", (1, 1, 1): "-0"},
    )
    res = certify_generic_general(p)
    assert isinstance(res, Witness)
    piece = stratum_restrict(
        decompose(p, _choice_of(p.m, res.sigma, res.diamond)), res.stratum
    )
    g = build_tangent_hypergraph(piece, res.x)
    assert find_circulation(g) is not None


def _choice_of(m, sigma, diamond):
    from tropsdp.pencils import SigmaChoice

    return SigmaChoice(m, sigma, diamond)


def test_perturb_interior_point(poly9):
    x = (Z, F(2), F(5))
    eta, rho0 = perturb_to_interior(poly9, x)
    assert rho0 > 0
    x2 = tuple(v + rho0 * d for v, d in zip(x, eta))
    assert metzler_strict_member(poly9, x2)


def test_perturb_boundary_points(poly9):
    for a, b in [(1, 4), (4, 1), (8, 8), (2, 4), (F(7, 2), F(17, 4))]:
        x = (Z, F(a), F(b))
        from tropsdp.pencils import metzler_member

        if not metzler_member(poly9, x) or metzler_strict_member(poly9, x):
            continue
        eta, rho0 = perturb_to_interior(poly9, x)
        x2 = tuple(v + rho0 * d for v, d in zip(x, eta))
        assert metzler_strict_member(poly9, x2)
        # the bound must hold on the whole interval, spot-check the midpoint
        mid = tuple(v + rho0 / 2 * d for v, d in zip(x, eta))
        assert metzler_strict_member(poly9, mid)


def test_perturb_rejects_circulation(hyp):
    with pytest.raises(CirculationExists):
        perturb_to_interior(hyp, (Z, Z, Z))


def test_perturb_rejects_nonmember(poly9):
    with pytest.raises(ValueError):
        perturb_to_interior(poly9, (Z, Z, Z))


def test_perturb_interior_gives_zero_direction(poly9):
    eta, rho0 = perturb_to_interior(poly9, (Z, F(2), F(5)))
    assert eta == (Z, Z, Z) and rho0 > 0
