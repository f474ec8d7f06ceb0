import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsk.errors import InvalidSpinc, ZeroFraming
from lsk.h_engine import h_from_alexander_knot, link_from_h_support, unknot
from lsk.poly import torus_knot_alexander
from lsk.surgery_d import (
    canonical_residue,
    d_circle_bundle,
    d_knot_surgery,
    d_link_surgery,
    f_g,
    format_rational,
    phi,
    quadrant_points,
    reduce_spinc,
    spinc_labels,
)

from conftest import seeds, synthetic_link

F = Fraction
framings = st.integers(-6, 6).filter(bool)


def phi_oracle(p, i):
    """Closed form for p > 0 with i taken in [0, p)."""
    i %= p
    return F((2 * i - p) ** 2 - p, 4 * p)


def test_phi_examples():
    assert phi(1, 0) == 0
    assert (phi(2, 0), phi(2, 1)) == (F(1, 4), F(-1, 4))
    assert (phi(3, 0), phi(3, 1), phi(3, -1)) == (F(1, 2), F(-1, 6), F(-1, 6))


@pytest.mark.parametrize("p", range(1, 51))
def test_phi_matches_oracle(p):
    for i in spinc_labels(p, 1):
        assert phi(p, i.i1) == phi_oracle(p, i.i1)
        assert phi(p, i.i1) == phi(p, -i.i1) or 2 * abs(i.i1) == p
        assert phi(-p, i.i1) == -phi(p, i.i1)


def test_phi_errors():
    with pytest.raises(ZeroFraming):
        phi(0, 0)
    with pytest.raises(InvalidSpinc):
        phi(3, 2)


def test_reduce_spinc():
    assert reduce_spinc(3, 3, 4, -4) == (1, -1)
    assert reduce_spinc(2, 2, 1, 1) == (1, 1)
    assert reduce_spinc(1, 1, 7, -9) == (0, 0)
    assert reduce_spinc(-4, 5, 6, 3) == (2, -2)
    with pytest.raises(ZeroFraming):
        reduce_spinc(0, 1, 0, 0)


@given(framings, framings)
def test_spinc_labels_are_canonical(p1, p2):
    labels = spinc_labels(p1, p2)
    assert len(labels) == abs(p1 * p2)
    assert labels == sorted(labels)
    assert all(reduce_spinc(p1, p2, *lab) == lab for lab in labels)


def test_quadrant_points():
    assert set(quadrant_points(1, 1, (0, 0))) == {(0, 0)}
    q = quadrant_points(3, 3, (1, 1))
    assert (q.pp, q.mm, q.pm, q.mp) == ((1, 1), (-2, -2), (1, -2), (-2, 1))
    q = quadrant_points(2, 3, (0, 1))
    assert (q.pp, q.mp, q.pm, q.mm) == ((0, 1), (0, 1), (0, -2), (0, -2))


def test_d_knot_examples():
    tref = h_from_alexander_knot(torus_knot_alexander(2, 3))
    assert d_knot_surgery(tref, 1, 0) == -2
    assert d_knot_surgery(tref, 2, 0) == F(-7, 4)
    assert d_knot_surgery(tref, 2, 1) == F(-1, 4)
    for p in range(1, 8):
        for lab in spinc_labels(p, 1):
            assert d_knot_surgery(unknot(), p, lab.i1) == phi(p, lab.i1)


def test_d_link_examples(whitehead, unlink):
    assert d_link_surgery(whitehead, 1, 1, (0, 0)) == -2
    assert d_link_surgery(whitehead, -1, -1, (0, 0)) == 0
    assert d_link_surgery(whitehead, 1, -1, (0, 0)) == 0
    assert d_link_surgery(whitehead, -1, 1, (0, 0)) == 0


@given(framings, framings)
def test_unlink_is_phi_sum(unlink, p1, p2):
    for lab in spinc_labels(p1, p2):
        assert d_link_surgery(unlink, p1, p2, lab) == phi(p1, lab.i1) + phi(p2, lab.i2)


@settings(max_examples=60)
@given(seeds, framings, framings)
def test_conjugation_invariance(seed, p1, p2):
    L = synthetic_link(seed)
    for i1, i2 in spinc_labels(p1, p2):
        c = (canonical_residue(p1, -i1), canonical_residue(p2, -i2))
        assert d_link_surgery(L, p1, p2, (i1, i2)) == d_link_surgery(L, p1, p2, c)


@settings(max_examples=40)
@given(seeds)
def test_unit_framing_is_minus_twice_h00(seed):
    L = synthetic_link(seed, knotted=False)
    d = d_link_surgery(L, 1, 1, (0, 0))
    assert d == -2 * L.h(0, 0)
    assert d.denominator == 1 and d <= 0 and d % 2 == 0


def test_link_label_errors(whitehead):
    with pytest.raises(InvalidSpinc):
        d_link_surgery(whitehead, 2, 2, (0, 2))
    with pytest.raises(ZeroFraming):
        d_link_surgery(whitehead, 0, 1, (0, 0))


def test_wider_support_uses_max_over_quadrants():
    L = link_from_h_support({(0, 0): 2, (1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1}, 3)
    # s++ = (1, 0) and s-+ = (-1, 0) for label (1, 0) with p = (2, 1)
    assert d_link_surgery(L, 2, 1, (1, 0)) == phi(2, 1) + phi(1, 0) - 2
    assert d_link_surgery(L, 1, 1, (0, 0)) == -4


def test_f_g():
    assert all(f_g(0, t) == 0 for t in range(-4, 5))
    assert (f_g(1, 0), f_g(1, 1), f_g(1, -1)) == (1, 0, 0)
    assert f_g(2, 1) == 1
    assert f_g(3, 0) == 2 and f_g(4, 0) == 2 and f_g(4, 5) == 0


@given(st.integers(0, 8), st.integers(-10, 10))
def test_f_g_is_ceiling(g, t):
    expected = math.ceil(F(g - abs(t), 2)) if abs(t) <= g else 0
    assert f_g(g, t) == expected
    assert f_g(g, t) == f_g(g, -t) >= 0


def test_circle_bundle_examples():
    assert d_circle_bundle(1, 0, 0).bot_neg == 0
    assert d_circle_bundle(1, 1, 0).bot_neg == 1
    assert d_circle_bundle(1, 1, 0).bot_pos == -1


@given(st.integers(1, 30), st.integers(0, 5), st.data())
def test_circle_bundle_identities(p, g, data):
    i = data.draw(st.sampled_from(spinc_labels(p, 1))).i1
    d = d_circle_bundle(p, g, i)
    assert d.bot_pos == phi(p, i) - g == -d.top_neg
    assert d.bot_neg == -phi(p, i) + 2 * f_g(g, i) - g == -d.top_pos
    if g == 0:
        assert d.bot_pos == d.top_pos == phi(p, i)


def test_format_rational():
    assert format_rational(F(-7, 4)) == "-7/4"
    assert format_rational(F(0)) == "0"
    assert format_rational(F(6, 3)) == "2"
