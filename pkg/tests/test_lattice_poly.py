import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from lsk.errors import (
    InvalidInput,
    InvalidTorusParameters,
    NonIntegralExponents,
    NotSymmetric,
    TailNotRecognized,
)
from lsk.poly import (
    LaurentPoly,
    NegPowerSeries,
    divide_by_geometric_squared,
    parse_poly,
    series_over_one_minus_tinv,
    tilde_normalize,
    torus_knot_alexander,
    whitehead_alexander,
    whitehead_tilde,
)

from conftest import poly1, poly2

t = LaurentPoly.variable(0, 1)
t1 = LaurentPoly.variable(0, 2)
t2 = LaurentPoly.variable(1, 2)


def test_ring_examples():
    assert (t - 1) * t ** -1 == 1 - t ** -1
    assert (t1 - 1) * (t2 - 1) == t1 * t2 - t1 - t2 + 1
    p = t ** 2 - 3 * t + 5
    assert (p + (-p)).terms == {}


@given(poly2(half=True), poly2(half=True), poly2(half=True))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == LaurentPoly.zero(2)


@given(poly1(), poly1())
def test_multiplication_matches_sympy(a, b):
    x = sympy.Symbol("x")

    def to_sym(p):
        return sum(c * x ** sympy.Rational(k[0], 2) for k, c in p.terms.items())

    assert sympy.expand(to_sym(a * b) - to_sym(a) * to_sym(b)) == 0


def test_symmetry_examples():
    assert (t - 1 + t ** -1).is_symmetric(1)
    assert whitehead_alexander().is_symmetric(1)
    assert parse_poly("-t1*t2 + t1 + t2 - 1").shift(-1, -1) == whitehead_alexander()
    for sign in (1, -1):
        assert not (t ** 2 + t).is_symmetric(sign)


def test_tilde_normalize_whitehead():
    assert whitehead_tilde() == -(t1 - 1) * (t2 - 1)


def test_tilde_normalize_knot_series():
    unknot = tilde_normalize(LaurentPoly.const(1), 1)
    assert unknot.window(-6) == {e: 1 for e in range(0, -7, -1)}
    assert unknot.tail_kind == "constant"

    trefoil = tilde_normalize(t - 1 + t ** -1, 1)
    assert trefoil.window(-8) == {1: 1, 0: 0, **{e: 1 for e in range(-1, -9, -1)}}
    assert trefoil.coefficient(-100) == 1


def test_tilde_normalize_errors():
    with pytest.raises(NotSymmetric):
        tilde_normalize(t ** 2 + t, 1)
    with pytest.raises(NonIntegralExponents):
        tilde_normalize(LaurentPoly({(1, 0): 1, (-1, 0): 1}, 2), 2)
    with pytest.raises(InvalidInput):
        tilde_normalize(LaurentPoly.const(1), 3)


def test_divide_examples():
    ones = series_over_one_minus_tinv(LaurentPoly.const(1))
    s = divide_by_geometric_squared(NegPowerSeries.from_poly(LaurentPoly.const(1)))
    assert s.window(-10) == {-k: k + 1 for k in range(11)}
    assert s.tail_kind == "linear" and s.tail_slope == 1
    assert ones.coefficient(-3) == 1

    tref = divide_by_geometric_squared(NegPowerSeries.from_poly(t ** -1 * (t - 1 + t ** -1)))
    # brute-force convolution with sum (k+1) t^-k
    src = {0: 1, -1: -1, -2: 1}
    for e in range(0, -11, -1):
        expected = sum(c * (j - e + 1) for j, c in src.items() if j >= e)
        assert tref.coefficient(e) == expected
    assert [tref.coefficient(-k) for k in range(4)] == [1, 1, 2, 3]

    assert divide_by_geometric_squared(NegPowerSeries.from_poly(LaurentPoly.zero())).is_zero()


def test_divide_rejects_nonlinear_tail():
    quadratic = NegPowerSeries({0: 1}, low=0, tail_slope=1)
    with pytest.raises(TailNotRecognized):
        divide_by_geometric_squared(quadratic)


@given(poly1(max_exp=4, max_terms=5))
def test_divide_inverts_geometric_squared(p):
    s = NegPowerSeries.from_poly(p)
    q = divide_by_geometric_squared(s)
    back = q.times((1 - t ** -1) ** 2, down_to=s.low - 20)
    top = max(back, default=0)
    for e in range(max(top, s.top or 0), s.low - 21, -1):
        assert back.get(e, 0) == s.coefficient(e)


def _torus_oracle(p, q):
    x = sympy.Symbol("x")
    quot = sympy.cancel((x ** (p * q) - 1) * (x - 1) / ((x ** p - 1) * (x ** q - 1)))
    coeffs = sympy.Poly(quot, x).all_coeffs()[::-1]
    shift = (p - 1) * (q - 1)
    return {(2 * i - shift,): int(c) for i, c in enumerate(coeffs) if c}


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7), (4, 5), (5, 6)])
def test_torus_matches_sympy(p, q):
    got = torus_knot_alexander(p, q)
    assert got.terms == _torus_oracle(p, q)
    assert got.is_symmetric(1)
    assert got.value_at_one() == 1


def test_torus_examples():
    assert torus_knot_alexander(2, 3) == t - 1 + t ** -1
    assert torus_knot_alexander(2, 5) == t ** 2 - t + 1 - t ** -1 + t ** -2
    for bad in [(2, 4), (1, 3), (0, 5), (3, 3)]:
        with pytest.raises(InvalidTorusParameters):
            torus_knot_alexander(*bad)


@pytest.mark.parametrize("text,expected", [
    ("t - 1 + t^(-1)", {(2,): 1, (0,): -1, (-2,): 1}),
    ("-t1*t2 + t1 + t2 - 1", {(2, 2): -1, (2, 0): 1, (0, 2): 1, (0, 0): -1}),
    ("t^(1/2) - t^(-1/2)", {(1,): 1, (-1,): -1}),
    ("3*t^2 - 2", {(4,): 3, (0,): -2}),
    ("t1^(1/2)*t2^(-1/2)", {(1, -1): 1}),
])
def test_parse(text, expected):
    assert parse_poly(text).terms == expected


@pytest.mark.parametrize("text", ["", "t +", "x^2", "t^(1/", "t3"])
def test_parse_rejects(text):
    with pytest.raises(InvalidInput):
        parse_poly(text)


@given(st.one_of(poly1(), poly2(half=True)))
def test_text_and_json_round_trip(p):
    assert parse_poly(str(p), p.nvars) == p
    assert LaurentPoly.from_json(p.to_json(), p.nvars) == p


@given(poly2(half=True))
def test_inverse_substitution_is_involution(p):
    assert p.inverse_substitution().inverse_substitution() == p
    assert (p + p.inverse_substitution()).is_symmetric(1)
