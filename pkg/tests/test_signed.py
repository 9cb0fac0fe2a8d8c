from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from tropsdp.errors import OppositeSigns
from tropsdp.signed import (
    MINUS_INF,
    SignedTrop,
    TROP_MINUS_INF,
    format_signed,
    modulus,
    neg,
    parse_signed,
    pos,
    tadd,
    tmul,
)


def test_tmul_examples():
    assert tmul(pos(2), neg(3)) == neg(5)
    assert tmul(TROP_MINUS_INF, pos(7)) == TROP_MINUS_INF
    assert tmul(neg(2), neg(3)) == pos(5)


def test_tadd_examples():
    assert tadd(pos(2), pos(3)) == pos(3)
    assert tadd(neg(2), neg(3)) == neg(3)
    assert tadd(pos(5), TROP_MINUS_INF) == pos(5)
    with pytest.raises(OppositeSigns):
        tadd(pos(2), neg(3))


def test_modulus_examples():
    assert modulus(neg(-2)) == F(-2)
    assert modulus(TROP_MINUS_INF) == MINUS_INF
    assert modulus(pos(F(7, 2))) == F(7, 2)


def test_invalid_construction():
    with pytest.raises(ValueError):
        SignedTrop(2, F(0))
    with pytest.raises(ValueError):
        SignedTrop(0, F(0))
    with pytest.raises(ValueError):
        SignedTrop(1, MINUS_INF)


def _random_elements(rng, count):
    out = []
    for _ in range(count):
        if rng.random() < 0.15:
            out.append(TROP_MINUS_INF)
        else:
            out.append(
                SignedTrop(rng.choice([1, -1]), F(rng.randint(-9, 9), rng.randint(1, 4)))
            )
    return out


def test_tmul_algebra():
    rng = random.Random(1)
    unit = pos(0)
    for a, b, c in zip(*(_random_elements(rng, 200) for _ in range(3))):
        assert tmul(a, b) == tmul(b, a)
        assert tmul(tmul(a, b), c) == tmul(a, tmul(b, c))
        assert tmul(a, unit) == a
        assert tmul(a, TROP_MINUS_INF) == TROP_MINUS_INF
        assert modulus(tmul(a, b)) == modulus(a) + modulus(b)


def test_tadd_algebra_where_defined():
    rng = random.Random(2)
    for _ in range(200):
        sign = rng.choice([1, -1])
        vals = [F(rng.randint(-9, 9)) for _ in range(3)]
        a, b, c = (SignedTrop(sign, v) for v in vals)
        assert tadd(a, b) == tadd(b, a)
        assert tadd(tadd(a, b), c) == tadd(a, tadd(b, c))
        assert tadd(a, a) == a


def test_minus_inf_ordering():
    assert MINUS_INF < F(-1000)
    assert not MINUS_INF < MINUS_INF
    assert MINUS_INF <= MINUS_INF
    assert F(0) >= MINUS_INF
    assert not MINUS_INF >= F(0)
    assert MINUS_INF + F(5) == MINUS_INF
    assert 2 * MINUS_INF == MINUS_INF


def test_text_encoding_round_trip():
    cases = [TROP_MINUS_INF, pos(0), neg(0), pos(F(7, 2)), neg(F(-2)), pos(-3)]
    for a in cases:
        assert parse_signed(format_signed(a)) == a
    assert format_signed(pos(F(7, 2))) == "+7/2"
    assert format_signed(neg(2)) == "-2"
    assert format_signed(TROP_MINUS_INF) == "-inf"


def test_parse_rejects_garbage():
    for bad in ["", "7/2", "inf", "+q/0", "+1/0", "--", "+"]:
        with pytest.raises(ValueError):
            parse_signed(bad)
