from math import comb

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quartic_cert.exactfield import Rat
from quartic_cert.groebner import (
    NonHomogeneousError,
    buchberger,
    hilbert_function,
    is_reduced,
    normal_form,
    quotient_graded_dim,
    s_pairs_reduce_to_zero,
    s_polynomial,
    stable_hilbert_value,
)
from quartic_cert.multipoly import MPoly, parse_poly, power_sum
from quartic_cert.pencil import fermat_jacobian_basis, jacobian_basis

small_rats = st.builds(lambda n, d: Rat(n, d), st.integers(-6, 6), st.integers(1, 4))


@st.composite
def quintic_ring_polys(draw, max_deg=4):
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        e = tuple(draw(st.integers(0, 3)) for _ in range(5))
        if sum(e) <= max_deg:
            terms[e] = draw(small_rats)
    return MPoly(terms, 5)


def fermat_series_oracle(d):
    """Coefficient of z^d in ((1 - z^3) / (1 - z))^5 = (1 + z + z^2)^5."""
    coeffs = [1]
    for _ in range(5):
        nxt = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            for j in range(3):
                nxt[i + j] += c
        coeffs = nxt
    return coeffs[d] if d < len(coeffs) else 0


def y(i):
    return MPoly.var(i, 5)


def test_monomial_ideal_is_its_own_basis():
    gb = buchberger([y(0), y(1)])
    assert list(gb.generators) == [y(0), y(1)]


def test_fermat_basis():
    gb = fermat_jacobian_basis()
    assert set(gb.generators) == {y(i) ** 3 for i in range(5)}


def test_empty_input():
    gb = buchberger([])
    assert len(gb) == 0


def test_normal_form_examples():
    gb = fermat_jacobian_basis()
    assert normal_form(y(0) ** 3, gb).is_zero()
    m = y(0) ** 2 * y(1) ** 2
    assert normal_form(m, gb) == m


@pytest.mark.parametrize("d", range(0, 13))
def test_fermat_hilbert_function(d):
    assert quotient_graded_dim(fermat_jacobian_basis(), d) == fermat_series_oracle(d)


def test_fermat_degree_seven():
    assert quotient_graded_dim(fermat_jacobian_basis(), 7) == 330 - 350 + 50 == 30
    assert quotient_graded_dim(fermat_jacobian_basis(), 3) == 35 - 5


@pytest.mark.parametrize("t", [Rat(1), Rat(3), Rat(-1), Rat(5), Rat(7, 3)])
def test_jacobian_ring_degree_seven(t):
    assert quotient_graded_dim(jacobian_basis(t), 7) == 35


@pytest.mark.parametrize("t", [Rat(1), Rat(7, 3)])
def test_degree_seven_independent_of_chart(t):
    assert quotient_graded_dim(jacobian_basis(t, 0), 7) == quotient_graded_dim(jacobian_basis(t), 7)
    assert hilbert_function(jacobian_basis(t, 0), 14) == hilbert_function(jacobian_basis(t), 14)


def test_degree_zero_is_one():
    assert quotient_graded_dim(jacobian_basis(Rat(1)), 0) == 1
    assert quotient_graded_dim(fermat_jacobian_basis(), 0) == 1


def test_stable_values():
    assert stable_hilbert_value(jacobian_basis(Rat(1)), 10, 3) == 30
    assert stable_hilbert_value(buchberger([y(i) for i in range(5)]), 1, 3) == 0
    assert stable_hilbert_value(fermat_jacobian_basis(), 11, 3) == 0
    # socle degree 5 * (3 - 1) = 10
    assert quotient_graded_dim(fermat_jacobian_basis(), 10) == 1
    assert stable_hilbert_value(fermat_jacobian_basis(), 8, 3) is None


def test_hilbert_function_bounded_by_ambient():
    gb = jacobian_basis(Rat(1))
    for d, v in enumerate(hilbert_function(gb, 15)):
        assert v <= comb(d + 4, 4)


def test_inhomogeneous_graded_query_raises():
    gb = buchberger([y(0) + 1])
    with pytest.raises(NonHomogeneousError):
        quotient_graded_dim(gb, 2)


def _sympy_reduced_basis(t):
    ys = sympy.symbols("y0:5")
    xs = list(ys) + [-sum(ys)]
    F = t * sum(v**4 for v in xs) - sum(v**2 for v in xs) ** 2
    G = sympy.groebner([sympy.diff(F, v) for v in ys], *ys, order="grevlex")
    out = set()
    for g in G.exprs:
        p = sympy.Poly(g, *ys)
        lc = p.LC(order="grevlex")
        out.add(MPoly({m: Rat(int(c.p), int(c.q)) / Rat(int(lc.p), int(lc.q)) for m, c in p.as_dict().items()}, 5))
    return out


@pytest.mark.parametrize("t", [1, sympy.Rational(7, 3)])
def test_matches_sympy_reduced_basis(t):
    ours = set(jacobian_basis(Rat(int(sympy.Rational(t).p), int(sympy.Rational(t).q))).generators)
    assert ours == _sympy_reduced_basis(t)


@pytest.mark.parametrize("t", [Rat(1), Rat(-1), Rat(2), Rat(6), Rat(10, 7)])
def test_bases_satisfy_buchberger_criterion(t):
    gb = jacobian_basis(t)
    assert s_pairs_reduce_to_zero(gb)
    assert is_reduced(gb)


def test_small_bases_satisfy_criterion_and_are_reduced():
    cases = [
        [parse_poly("y0^2 - y1*y2", 5), parse_poly("y0*y1 - y2^2", 5)],
        [parse_poly("y0^2*y1 - y3^3", 5), parse_poly("y1^2 - y0*y2", 5), parse_poly("y2*y4 - y3^2", 5)],
        power_sum(4, 5).gradient(),
    ]
    for gens in cases:
        for order in ("grevlex", "lex"):
            gb = buchberger(gens, order)
            assert s_pairs_reduce_to_zero(gb)
            assert is_reduced(gb)
            assert all(gb.contains(g) for g in gens)


def test_lex_elimination_example():
    # twisted cubic: lex basis contains a polynomial in the last variables only
    gens = [parse_poly("y0^2 - y1*y2", 5), parse_poly("y0*y2 - y1^2", 5)]
    gb = buchberger(gens, "lex")
    assert all(normal_form(s_polynomial(a, b, "lex"), gb).is_zero() for a in gb.generators for b in gb.generators)


def test_deterministic():
    a = buchberger(jacobian_basis(Rat(3)).generators)
    b = buchberger(jacobian_basis(Rat(3)).generators)
    assert a.render() == b.render() == jacobian_basis(Rat(3)).render()
    gens = list(jacobian_basis(Rat(3)).generators)
    assert buchberger(gens).render() == buchberger(gens).render()


@settings(max_examples=40, deadline=None)
@given(quintic_ring_polys(), quintic_ring_polys(), small_rats, small_rats)
def test_normal_form_linear_and_idempotent(f, g, a, b):
    gb = jacobian_basis(Rat(1))
    nf = lambda p: normal_form(p, gb)
    assert nf(f.scale(a) + g.scale(b)) == nf(f).scale(a) + nf(g).scale(b)
    assert nf(nf(f)) == nf(f)
    lms = gb.leading_monomials
    for m in nf(f).terms:
        assert not any(all(x <= y for x, y in zip(lm, m)) for lm in lms)


@settings(max_examples=20, deadline=None)
@given(quintic_ring_polys(max_deg=2))
def test_ideal_members_reduce_to_zero(h):
    gb = jacobian_basis(Rat(1))
    member = sum((h * g for g in gb.generators[:3]), MPoly.zero(5))
    assert normal_form(member, gb).is_zero()
