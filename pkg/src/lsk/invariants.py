"""Classical invariants and applications derived from H-functions and d-invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import ComponentNotUnknot, LabelMismatch, TorsionUnknown, TrivialLink
from .h_engine import (
    KnotHFunction,
    LinkHFunction2,
    b_invariants,
    h_prime,
    nu_plus,
)
from .poly import LaurentPoly
from .surgery_d import canonical_residue, f_g, phi


def _sum_knot_h(K: KnotHFunction) -> int:
    return sum(K.h_support().values())


def sato_levine(L: LinkHFunction2) -> int:
    return -sum(h_prime(L).values())


def beta_from_alexander(delta_tilde: LaurentPoly) -> int:
    """Value at (1, 1) of delta_tilde / ((t1 - 1)(t2 - 1)).

    That value is the mixed partial derivative of delta_tilde at (1, 1), which
    is sum c * e1 * e2 once divisibility by (t1 - 1)(t2 - 1) is checked.
    """
    terms = delta_tilde.integer_terms()
    by1: dict[int, int] = {}
    by2: dict[int, int] = {}
    for (e1, e2), c in terms.items():
        by1[e1] = by1.get(e1, 0) + c
        by2[e2] = by2.get(e2, 0) + c
    if any(by1.values()) or any(by2.values()):
        raise ValueError("polynomial is not divisible by (t1 - 1)(t2 - 1)")
    return sum(c * e1 * e2 for (e1, e2), c in terms.items())


def conway_a2(K: KnotHFunction) -> int:
    return _sum_knot_h(K)


def casson_link_pm1(L: LinkHFunction2, e1: int, e2: int) -> int:
    if e1 not in (1, -1) or e2 not in (1, -1):
        raise ValueError("framings must be +-1")
    return e1 * e2 * sum(h_prime(L).values()) + e1 * _sum_knot_h(L.comp1) + e2 * _sum_knot_h(L.comp2)


def casson_table(L: LinkHFunction2) -> dict[str, int]:
    signs = {"+": 1, "-": -1}
    return {a + b: casson_link_pm1(L, signs[a], signs[b]) for a in "+-" for b in "+-"}


def casson_knot_pm1(K: KnotHFunction, e: int, lspace_knot: bool = False) -> int:
    """Only defined here for L-space knots, where the torsion correction vanishes."""
    if e not in (1, -1):
        raise ValueError("framing must be +-1")
    if not lspace_knot:
        raise TorsionUnknown("the torsion term is only known to vanish for L-space knots")
    return e * _sum_knot_h(K)


def torsion_euler_blowdown(L: LinkHFunction2) -> int:
    if not L.comp1.is_unknot():
        raise ComponentNotUnknot("component 1 must be an unknot")
    return -sum(v for (s1, _), v in L.h_support().items() if s1 != 0)


@dataclass
class LSpaceRegion:
    kind: str  # "exact" or "necessary"
    thresholds: tuple[int, int] | None = None
    conditions: list[str] = field(default_factory=list)
    nu: tuple[int, int] | None = None

    def describe(self) -> str:
        if self.kind == "exact":
            t1, t2 = self.thresholds
            return f"p1>{t1} and p2>{t2} (exact)"
        return " and ".join(f"({c})" for c in self.conditions) + " (necessary only)"

    def contains(self, p1: int, p2: int) -> bool | None:
        """True/False for exact regions; for necessary-only regions False or None (unknown)."""
        if p1 == 0 or p2 == 0:
            return False
        if self.kind == "exact":
            return p1 > self.thresholds[0] and p2 > self.thresholds[1]
        nu1, nu2 = self.nu
        if not (p1 > 0 or p2 > 0):
            return False
        if not (_knot_lspace(p1, nu1) or _knot_lspace(p2, nu2)):
            return False
        return None

    def to_json(self):
        out = {"kind": self.kind, "description": self.describe()}
        if self.thresholds is not None:
            out["thresholds"] = list(self.thresholds)
        if self.conditions:
            out["conditions"] = list(self.conditions)
        return out


def _knot_lspace(p: int, nu: int) -> bool:
    # nonzero surgery on an unknot is a lens space; otherwise p >= 2 nu - 1
    return p != 0 if nu == 0 else p >= 2 * nu - 1


def lspace_region(L: LinkHFunction2) -> LSpaceRegion:
    b1, b2 = b_invariants(L)  # raises TrivialLink
    nu = (nu_plus(L.comp1), nu_plus(L.comp2))
    if L.comp1.is_unknot() and L.comp2.is_unknot():
        return LSpaceRegion("exact", thresholds=(2 * b1, 2 * b2), nu=nu)
    conds = ["p1>0 or p2>0"]
    parts = [f"p{k}>={2 * n - 1}" if n else f"p{k}!=0" for k, n in ((1, nu[0]), (2, nu[1]))]
    conds.append(" or ".join(parts))
    return LSpaceRegion("necessary", conditions=conds, nu=nu)


@dataclass
class GenusBoundReport:
    cap: int
    excluded: set[tuple[int, int]]
    min_total: int | None

    def to_json(self):
        return {"cap": self.cap, "min_total": self.min_total,
                "excluded": sorted(list(p) for p in self.excluded)}


def genus_lower_bound(L: LinkHFunction2, cap: int = 4) -> GenusBoundReport:
    """Exclude (g1, g2) when some h(s) > f_g1(t1) + f_g2(t2), t_k the reduction of s_k mod p_k."""
    support = L.h_support()
    pmax = 2 * L.radius + 2
    reductions = set()
    for (s1, s2), v in support.items():
        for p1 in range(1, pmax + 1):
            for p2 in range(1, pmax + 1):
                reductions.add((v, canonical_residue(p1, s1), canonical_residue(p2, s2)))
    excluded = set()
    for g1, g2 in product(range(cap + 1), repeat=2):
        if any(v > f_g(g1, t1) + f_g(g2, t2) for v, t1, t2 in reductions):
            excluded.add((g1, g2))
    allowed = [g1 + g2 for g1, g2 in product(range(cap + 1), repeat=2) if (g1, g2) not in excluded]
    return GenusBoundReport(cap, excluded, min(allowed) if allowed else None)


def _labels(framings) -> set[tuple[int, ...]]:
    axes = [sorted({canonical_residue(p, s) for s in range(p)}) for p in framings]
    return set(product(*axes))


def _canonical_keys(d_values, framings):
    out = {}
    for key, v in d_values.items():
        key = tuple(key)
        if len(key) != len(framings):
            raise LabelMismatch(f"label {key} does not match {len(framings)} framings")
        if any(2 * abs(t) > p for t, p in zip(key, framings)):
            raise LabelMismatch(f"label {key} is out of range for framings {framings}")
        canon = tuple(canonical_residue(p, t) for t, p in zip(key, framings))
        if canon in out:
            raise LabelMismatch(f"labels {key} and another one name the same Spin^c structure")
        out[canon] = Fraction(v)
    if set(out) != _labels(framings):
        missing = sorted(_labels(framings) - set(out))
        raise LabelMismatch(f"d-values missing for labels {missing[:4]}")
    return out


def d_genus_check(genera, framings, d_neg=None, d_pos=None) -> bool:
    """Check d(S^3_{-p}(L), t) <= bound(t) and -d(S^3_{p}(L), t) <= bound(t) for all labels,

    where bound(t) = sum_i phi(-p_i, t_i) + 2 f_{g_i}(t_i). Either family of
    d-values may be omitted; at least one is required.
    """
    if len(genera) != len(framings):
        raise LabelMismatch("need one genus per framing")
    if any(p <= 0 for p in framings):
        raise ValueError("framings must be positive")
    if d_neg is None and d_pos is None:
        raise ValueError("no d-values supplied")

    def bound(t):
        return sum(phi(-p, ti) + 2 * f_g(g, ti) for p, g, ti in zip(framings, genera, t))

    if d_neg is not None:
        for t, d in _canonical_keys(d_neg, framings).items():
            if d > bound(t):
                return False
    if d_pos is not None:
        for t, d in _canonical_keys(d_pos, framings).items():
            if -d > bound(t):
                return False
    return True


def skein_check(d_plus, d_minus) -> bool:
    d_plus, d_minus = Fraction(d_plus), Fraction(d_minus)
    return d_minus - 2 <= d_plus <= d_minus


def report(L: LinkHFunction2, cap: int = 4) -> dict:
    try:
        region = lspace_region(L).describe()
    except TrivialLink:
        region = "unlink: every nonzero framing"
    return {
        "beta": sato_levine(L),
        "casson": casson_table(L),
        "lspace_region": region,
        "genus_lower_bound": genus_lower_bound(L, cap).min_total,
    }
