"""Closed-form d-invariants: lens spaces, circle bundles, knot and two-component link surgeries.

All values are exact Fractions, in the convention d(S^3) = 0.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidSpinc, ZeroFraming
from .h_engine import KnotHFunction, LinkHFunction2


class SpincLabel2(NamedTuple):
    i1: int
    i2: int


class QuadrantPoints(NamedTuple):
    pp: tuple[int, int]
    pm: tuple[int, int]
    mp: tuple[int, int]
    mm: tuple[int, int]


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def canonical_residue(p: int, s: int) -> int:
    """Representative of s mod |p| in (-|p|/2, |p|/2]."""
    if p == 0:
        raise ZeroFraming("framing must be nonzero")
    n = abs(p)
    r = s % n
    return r - n if 2 * r > n else r


def _check_label(p: int, i: int):
    if p == 0:
        raise ZeroFraming("framing must be nonzero")
    if 2 * abs(i) > abs(p):
        raise InvalidSpinc(f"label {i} is outside [-{abs(p)}/2, {abs(p)}/2]")


def reduce_spinc(p1: int, p2: int, s1: int, s2: int) -> SpincLabel2:
    return SpincLabel2(canonical_residue(p1, s1), canonical_residue(p2, s2))


def spinc_labels(p1: int, p2: int) -> list[SpincLabel2]:
    """All canonical labels, in lexicographic order."""
    if p1 == 0 or p2 == 0:
        raise ZeroFraming("framing must be nonzero")
    r1 = sorted({canonical_residue(p1, s) for s in range(abs(p1))})
    r2 = sorted({canonical_residue(p2, s) for s in range(abs(p2))})
    return [SpincLabel2(a, b) for a in r1 for b in r2]


def phi(p: int, i: int) -> Fraction:
    """d-invariant of L(p, 1) in label i; phi(-p, i) = -phi(p, i)."""
    _check_label(p, i)
    if p < 0:
        return -phi(-p, i)
    # s ranges over i + pZ; |p + 2s| is minimized near s = -p/2
    s0 = i + p * ((-p // 2 - i) // p)
    best = min(((p + 2 * s) ** 2 for s in (s0 - p, s0, s0 + p, s0 + 2 * p)))
    return Fraction(best - p, 4 * p)


def _s_plus_minus(p: int, i: int) -> tuple[int, int]:
    sp = i % p
    sm = sp - p if sp > 0 else 0
    return sp, sm


def quadrant_points(p1: int, p2: int, label) -> QuadrantPoints:
    if p1 <= 0 or p2 <= 0:
        raise ValueError("quadrant points need positive framings")
    a_p, a_m = _s_plus_minus(p1, label[0])
    b_p, b_m = _s_plus_minus(p2, label[1])
    return QuadrantPoints((a_p, b_p), (a_p, b_m), (a_m, b_p), (a_m, b_m))


def d_knot_surgery(K: KnotHFunction, p: int, i: int) -> Fraction:
    """Positive surgery only: phi(p, i) - 2 max(h(s+), h(s-))."""
    if p <= 0:
        raise ValueError("knot surgery formula is for positive framings")
    _check_label(p, i)
    sp, sm = _s_plus_minus(p, i)
    return phi(p, i) - 2 * max(K.h(sp), K.h(sm))


def d_link_surgery(L: LinkHFunction2, p1: int, p2: int, label) -> Fraction:
    i1, i2 = label
    _check_label(p1, i1)
    _check_label(p2, i2)
    if p1 < 0 and p2 < 0:
        return phi(p1, i1) + phi(p2, i2)
    if p1 > 0 and p2 > 0:
        q = quadrant_points(p1, p2, label)
        return phi(p1, i1) + phi(p2, i2) - 2 * max(L.h(*s) for s in q)
    if p1 > 0:
        return d_knot_surgery(L.comp1, p1, i1) + phi(p2, i2)
    return phi(p1, i1) + d_knot_surgery(L.comp2, p2, i2)


def f_g(g: int, t: int) -> int:
    if abs(t) > g:
        return 0
    return -((abs(t) - g) // 2)  # ceil((g - |t|) / 2)


class CircleBundleD(NamedTuple):
    """d_bot / d_top for the bundles B_p and B_{-p} of Euler number +-p over a genus g surface."""
    bot_pos: Fraction
    top_pos: Fraction
    bot_neg: Fraction
    top_neg: Fraction


def d_circle_bundle(p: int, g: int, i: int) -> CircleBundleD:
    if p <= 0:
        raise ValueError("p must be positive")
    _check_label(p, i)
    bot_pos = phi(p, i) - g
    top_neg = -bot_pos
    bot_neg = -phi(p, i) + 2 * f_g(g, i) - g
    top_pos = -bot_neg
    return CircleBundleD(bot_pos, top_pos, bot_neg, top_neg)
