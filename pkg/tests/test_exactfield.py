import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartic_cert.exactfield import (
    QQ,
    QQW,
    CycNum,
    Rat,
    cyc_inv,
    cyc_mul,
    parse_cyc,
    parse_rat,
    render,
    render_rat,
)

from .conftest import cycnums, rationals

RHO = cmath.exp(2j * cmath.pi / 3)


def test_rho_relations(w):
    assert cyc_mul(w, w) == CycNum(-1, -1)
    assert cyc_mul(w, w * w) == 1
    assert 1 + w + w * w == 0
    assert w**3 == 1


def test_one_plus_rho_squared(w):
    sq = cyc_mul(1 + w, 1 + w)
    assert sq == w
    assert abs(sq.to_complex() - (1 + RHO) ** 2) < 1e-12


def test_inverse_examples(w):
    assert cyc_inv(w) == CycNum(-1, -1)
    assert cyc_inv(CycNum(2)) == Rat(1, 2)
    assert cyc_inv(1 + w) == -w
    assert cyc_mul(1 + w, -w) == 1


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        cyc_inv(CycNum(0))
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Rat(0))


def test_rationals_are_reduced():
    x = Rat(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert Rat(0, 7).denominator == 1


@pytest.mark.parametrize(
    "text, value",
    [("3", Rat(3)), ("-3/6", Rat(-1, 2)), ("0/1", Rat(0)), (" 7 / 3 ", Rat(7, 3))],
)
def test_parse_rat(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("text", ["abc", "1/0", "", "1.5", "2/-3"])
def test_parse_rat_rejects(text):
    with pytest.raises(ValueError):
        parse_rat(text)


def test_render_rat():
    assert render_rat(Rat(4, 2)) == "2"
    assert render_rat(Rat(-3, 9)) == "-1/3"


@pytest.mark.parametrize(
    "value, text",
    [
        (CycNum(0, 1), "w"),
        (CycNum(0, -1), "-w"),
        (CycNum(-1, -1), "-1 - w"),
        (CycNum(Rat(1, 2), 3), "1/2 + 3*w"),
        (CycNum(2, Rat(-3, 4)), "2 - 3/4*w"),
        (CycNum(5), "5"),
        (CycNum(0), "0"),
    ],
)
def test_render_and_parse_cyc(value, text):
    assert render(value) == text
    assert parse_cyc(text) == value


def test_parse_cyc_term_order():
    assert parse_cyc("w + 2") == CycNum(2, 1)
    with pytest.raises(ValueError):
        parse_cyc("2w")
    with pytest.raises(ValueError):
        parse_cyc("1 2")


@given(cycnums)
def test_render_roundtrip(x):
    assert parse_cyc(render(x)) == x


@settings(max_examples=1000, deadline=None)
@given(cycnums, cycnums, cycnums)
def test_field_axioms_cyclotomic(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x + (-x) == QQW.zero
    if x != 0:
        assert x * QQW.inv(x) == QQW.one


@settings(max_examples=1000, deadline=None)
@given(rationals, rationals, rationals)
def test_field_axioms_rational(x, y, z):
    assert QQ.add(QQ.add(x, y), z) == QQ.add(x, QQ.add(y, z))
    assert QQ.mul(x, QQ.add(y, z)) == QQ.add(QQ.mul(x, y), QQ.mul(x, z))
    if x != 0:
        assert QQ.mul(x, QQ.inv(x)) == QQ.one


@given(cycnums, cycnums)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()


@given(cycnums)
def test_norm_zero_iff_zero(x):
    assert (x.norm() == 0) == (x == 0)


@given(cycnums)
def test_matches_complex_embedding(x):
    assert abs(x.to_complex() - (float(x.a) + float(x.b) * RHO)) < 1e-9
    if x != 0:
        assert abs(x.inverse().to_complex() * x.to_complex() - 1) < 1e-9


@given(rationals, rationals)
def test_rational_embedding_is_homomorphism(a, b):
    assert CycNum(a) + CycNum(b) == CycNum(a + b)
    assert CycNum(a) * CycNum(b) == CycNum(a * b)
    assert hash(CycNum(a)) == hash(a)


def test_immutable(w):
    with pytest.raises(AttributeError):
        w.a = 3
