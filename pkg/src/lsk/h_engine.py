"""H- and h-functions of knots and two-component, linking-number-zero links.

A knot H-function is stored on a window [-R, R] and extended by H(s) = 0 for
s > R and H(s) = -s for s < -R. A link H-function is stored on the box
[-R, R]^2; outside it, stabilization gives H(s1, s2) = H2(s2) for s1 > R and
H1(s1) for s2 > R, and symmetry H(-s) = H(s) + s1 + s2 covers the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    AmbiguousSign,
    ComponentNotUnknot,
    InvalidHTable,
    NonIntegralExponents,
    NonZeroLinking,
    NotLSpaceConsistent,
    TrivialLink,
)
from .poly import (
    LaurentPoly,
    NegPowerSeries,
    divide_by_geometric_squared,
)


def unlink_H(*s: int) -> int:
    """H-function of the unlink with len(s) components."""
    return sum(max(0, -x) for x in s)


class Violation(NamedTuple):
    axiom: str
    point: tuple
    detail: str


@dataclass
class HValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, point, detail):
        self.violations.append(Violation(axiom, tuple(point), detail))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __str__(self):
        if self.ok:
            return "valid"
        lines = [f"{len(self.violations)} violation(s):"]
        lines += [f"  {v.axiom} at {v.point}: {v.detail}" for v in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append("  ...")
        return "\n".join(lines)


class KnotHFunction:
    """H_K on Z, stored on [-radius, radius]."""

    def __init__(self, window: dict[int, int], radius: int, alexander: LaurentPoly | None = None):
        missing = [s for s in range(-radius, radius + 1) if s not in window]
        if radius < 0 or missing:
            raise InvalidHTable(f"knot window is missing values at {missing[:5]}")
        self.radius = radius
        self._window = {s: int(window[s]) for s in range(-radius, radius + 1)}
        self.alexander = alexander

    def __call__(self, s: int) -> int:
        if s > self.radius:
            return 0
        if s < -self.radius:
            return -s
        return self._window[s]

    def h(self, s: int) -> int:
        return self(s) - max(0, -s)

    def values(self, lo: int, hi: int) -> list[int]:
        return [self(s) for s in range(lo, hi + 1)]

    def h_support(self) -> dict[int, int]:
        return {s: self.h(s) for s in range(-self.radius, self.radius + 1) if self.h(s)}

    def is_unknot(self) -> bool:
        return not self.h_support()

    def __eq__(self, other):
        if not isinstance(other, KnotHFunction):
            return NotImplemented
        r = max(self.radius, other.radius) + 1
        return all(self(s) == other(s) for s in range(-r, r + 1))

    def __hash__(self):
        return hash(tuple(sorted(self.h_support().items())))

    def __repr__(self):
        return f"KnotHFunction(radius={self.radius}, h={self.h_support()})"


def _trim(K: KnotHFunction) -> KnotHFunction:
    # smallest radius r >= 1 with H(r) = 0 and H(-r) = r, if the window has one
    for r in range(1, K.radius + 1):
        if K(r) == 0 and K(-r) == r:
            return KnotHFunction({s: K(s) for s in range(-r, r + 1)}, r, K.alexander)
    return K


def unknot() -> KnotHFunction:
    return KnotHFunction({s: max(0, -s) for s in range(-1, 2)}, 1)


def knot_from_table(values, radius: int, kind: str = "H") -> KnotHFunction:
    """values lists H (or h) at s = -radius .. radius."""
    if len(values) != 2 * radius + 1:
        raise InvalidHTable(f"expected {2 * radius + 1} values for radius {radius}")
    window = {}
    for s, v in zip(range(-radius, radius + 1), values):
        window[s] = int(v) + (max(0, -s) if kind == "h" else 0)
    K = KnotHFunction(window, radius)
    report = validate(K)
    if not report.ok:
        raise InvalidHTable(f"knot table fails validation: {report}", report)
    return K


def _validate_knot(K: KnotHFunction, report: HValidationReport, prefix=""):
    R = K.radius
    if K._window[R] != 0:
        report.add(prefix + "stabilization", (R,), f"H({R}) = {K._window[R]}, expected 0")
    if K._window[-R] != R:
        report.add(prefix + "stabilization", (-R,), f"H({-R}) = {K._window[-R]}, expected {R}")
    for s in range(-R - 1, R + 2):
        v = K(s)
        if v < 0:
            report.add(prefix + "nonnegativity", (s,), f"H = {v}")
        step = K(s - 1) - v
        if step not in (0, 1):
            report.add(prefix + "growth", (s,), f"H({s - 1}) - H({s}) = {step}")
        if K(-s) != v + s:
            report.add(prefix + "symmetry", (s,), f"H({-s}) = {K(-s)} but H({s}) + {s} = {v + s}")
        if K.h(s) < 0:
            report.add(prefix + "h_nonnegative", (s,), f"h = {K.h(s)}")


def h_from_alexander_knot(delta: LaurentPoly) -> KnotHFunction:
    """H(s) is the coefficient of t^s in t^-1 delta / (1 - t^-1)^2, for the sign that validates."""
    if delta.nvars != 1:
        raise NotLSpaceConsistent("knot input needs a one-variable polynomial")
    if not delta.has_integral_exponents():
        raise NonIntegralExponents("knot Alexander polynomial must have integer exponents")
    candidates = {}
    for sign in (1, -1):
        series = divide_by_geometric_squared(NegPowerSeries.from_poly((delta * sign).shift(-2)))
        top = series.top if series.top is not None else 0
        radius = max(abs(top), abs(series.low), 1) + 1
        K = KnotHFunction({s: series.coefficient(s) for s in range(-radius, radius + 1)},
                          radius, alexander=delta * sign)
        K = _trim(K)
        if validate(K).ok:
            candidates[sign] = K
    return _pick_sign(candidates)


def _pick_sign(candidates):
    if not candidates:
        raise NotLSpaceConsistent("neither sign of the Alexander polynomial gives a valid H-function")
    if len(candidates) == 2 and candidates[1] != candidates[-1]:
        raise AmbiguousSign("both signs give valid, different H-functions")
    return candidates[1] if 1 in candidates else candidates[-1]


class LinkHFunction2:
    """H(s1, s2) for a two-component link with linking number zero."""

    def __init__(self, core: dict[tuple[int, int], int], comp1: KnotHFunction,
                 comp2: KnotHFunction, radius: int, alexander_tilde: LaurentPoly | None = None):
        R = radius
        missing = [(a, b) for a in range(-R, R + 1) for b in range(-R, R + 1) if (a, b) not in core]
        if R < 1 or missing:
            raise InvalidHTable(f"core is missing values at {missing[:5]}")
        self.radius = R
        self.comp1 = comp1
        self.comp2 = comp2
        self._core = {(a, b): int(core[a, b]) for a in range(-R, R + 1) for b in range(-R, R + 1)}
        self.alexander_tilde = alexander_tilde
        self._dense: dict[int, np.ndarray] = {}

    def __call__(self, s1: int, s2: int) -> int:
        R = self.radius
        if s1 > R:
            return self.comp2(s2)
        if s2 > R:
            return self.comp1(s1)
        if s1 < -R or s2 < -R:
            return self(-s1, -s2) - s1 - s2
        return self._core[s1, s2]

    def h(self, s1: int, s2: int) -> int:
        return self(s1, s2) - unlink_H(s1, s2)

    def h_support(self) -> dict[tuple[int, int], int]:
        R = self.radius
        out = {}
        for a in range(-R, R + 1):
            for b in range(-R, R + 1):
                v = self.h(a, b)
                if v:
                    out[a, b] = v
        return out

    def stable_radius(self) -> int:
        """Smallest r >= 0 with H(s1, s2) = H2(s2) for s1 >= r and H1(s1) for s2 >= r."""
        R = self.radius
        span = range(-R - 1, R + 2)
        r = R
        while r > 0 and all(self(r - 1, x) == self.comp2(x) and self(x, r - 1) == self.comp1(x)
                            for x in span):
            r -= 1
        return r

    def dense(self, m: int) -> np.ndarray:
        """H on [-m, m]^2 as an int64 array indexed [s1 + m, s2 + m]."""
        if m not in self._dense:
            arr = np.empty((2 * m + 1, 2 * m + 1), dtype=np.int64)
            for a in range(-m, m + 1):
                for b in range(-m, m + 1):
                    arr[a + m, b + m] = self(a, b)
            arr.flags.writeable = False
            self._dense[m] = arr
        return self._dense[m]

    def rows(self, radius: int | None = None, kind: str = "H") -> list[list[int]]:
        """Table in figure orientation: first row is s2 = radius, columns s1 = -radius .. radius."""
        r = self.radius if radius is None else radius
        f = self if kind == "H" else self.h
        return [[f(a, b) for a in range(-r, r + 1)] for b in range(r, -r - 1, -1)]

    def transpose(self) -> "LinkHFunction2":
        core = {(b, a): v for (a, b), v in self._core.items()}
        tilde = None
        if self.alexander_tilde is not None:
            tilde = LaurentPoly({(k[1], k[0]): c for k, c in self.alexander_tilde.terms.items()}, 2)
        return LinkHFunction2(core, self.comp2, self.comp1, self.radius, tilde)

    def __eq__(self, other):
        if not isinstance(other, LinkHFunction2):
            return NotImplemented
        r = max(self.radius, other.radius) + 1
        return all(self(a, b) == other(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1))

    def __hash__(self):
        return hash(tuple(sorted(self.h_support().items())))

    def __repr__(self):
        return f"LinkHFunction2(radius={self.radius}, h={self.h_support()})"


def _validate_link(L: LinkHFunction2, report: HValidationReport):
    _validate_knot(L.comp1, report, "component1.")
    _validate_knot(L.comp2, report, "component2.")
    R = L.radius
    for a in range(-R - 1, R + 2):
        if L(a, R) != L.comp1(a):
            report.add("stabilization", (a, R), f"H = {L(a, R)} but H1({a}) = {L.comp1(a)}")
        if L(R, a) != L.comp2(a):
            report.add("stabilization", (R, a), f"H = {L(R, a)} but H2({a}) = {L.comp2(a)}")
    for a in range(-R - 1, R + 2):
        for b in range(-R - 1, R + 2):
            v = L(a, b)
            if v < 0:
                report.add("nonnegativity", (a, b), f"H = {v}")
            for name, (da, db) in (("growth_s1", (1, 0)), ("growth_s2", (0, 1))):
                step = L(a - da, b - db) - v
                if step not in (0, 1):
                    report.add("growth", (a, b), f"{name}: H({a - da},{b - db}) - H({a},{b}) = {step}")
            if L(-a, -b) != v + a + b:
                report.add("symmetry", (a, b), f"H({-a},{-b}) = {L(-a, -b)} but H + s1 + s2 = {v + a + b}")
            if L.h(a, b) < 0:
                report.add("h_nonnegative", (a, b), f"h = {L.h(a, b)}")


def validate(H) -> HValidationReport:
    report = HValidationReport()
    if isinstance(H, KnotHFunction):
        _validate_knot(H, report)
    elif isinstance(H, LinkHFunction2):
        _validate_link(H, report)
    else:
        raise TypeError(f"cannot validate {type(H).__name__}")
    return report


def h_from_alexander_link(delta_tilde: LaurentPoly, H1: KnotHFunction | None = None,
                          H2: KnotHFunction | None = None) -> LinkHFunction2:
    """H(s) = H1(s1) + H2(s2) - sum_{s' > s} a_{s'}, a the coefficients of +-delta_tilde."""
    if delta_tilde.nvars != 2:
        raise NonZeroLinking("link input needs a two-variable polynomial")
    if not delta_tilde.has_integral_exponents():
        raise NonZeroLinking("normalized polynomial has half-integer exponents")
    H1 = H1 or unknot()
    H2 = H2 or unknot()
    coeffs = delta_tilde.integer_terms()
    span = max((abs(x) for k in coeffs for x in k), default=0)
    R = max(span + 2, H1.radius, H2.radius, 2)

    # a on [-R, R+1]^2 (support fits inside), then suffix sums over s' > s
    n = 2 * R + 2
    a = np.zeros((n + 1, n + 1), dtype=np.int64)
    for (e1, e2), c in coeffs.items():
        a[e1 + R, e2 + R] = c
    suffix = a[::-1, ::-1].cumsum(0).cumsum(1)[::-1, ::-1]

    candidates = {}
    for sign in (1, -1):
        core = {}
        for s1 in range(-R, R + 1):
            for s2 in range(-R, R + 1):
                strict = int(suffix[s1 + R + 1, s2 + R + 1])
                core[s1, s2] = H1(s1) + H2(s2) - sign * strict
        L = LinkHFunction2(core, H1, H2, R, alexander_tilde=delta_tilde * sign)
        if validate(L).ok:
            candidates[sign] = L
    return _pick_sign(candidates)


def link_from_table(rows, radius: int, kind: str = "H", comp1: KnotHFunction | None = None,
                    comp2: KnotHFunction | None = None) -> LinkHFunction2:
    """Build from a table in figure orientation (first row s2 = radius, columns s1 = -radius..radius).

    Components default to the boundary row s2 = radius and column s1 = radius.
    """
    R = radius
    if len(rows) != 2 * R + 1 or any(len(r) != 2 * R + 1 for r in rows):
        raise InvalidHTable(f"table must be {2 * R + 1} x {2 * R + 1} for radius {R}")
    core = {}
    for i, row in enumerate(rows):
        s2 = R - i
        for j, v in enumerate(row):
            s1 = j - R
            core[s1, s2] = int(v) + (unlink_H(s1, s2) if kind == "h" else 0)
    if comp1 is None:
        comp1 = KnotHFunction({a: core[a, R] for a in range(-R, R + 1)}, R)
    if comp2 is None:
        comp2 = KnotHFunction({b: core[R, b] for b in range(-R, R + 1)}, R)
    L = LinkHFunction2(core, comp1, comp2, R)
    report = validate(L)
    if not report.ok:
        raise InvalidHTable(f"link table fails validation: {report}", report)
    return L


def link_from_h_support(support: dict[tuple[int, int], int], radius: int,
                        comp1: KnotHFunction | None = None,
                        comp2: KnotHFunction | None = None) -> LinkHFunction2:
    """Convenience: unknotted-or-given components plus a finitely supported h."""
    comp1 = comp1 or unknot()
    comp2 = comp2 or unknot()
    R = max(radius, comp1.radius, comp2.radius)
    rows = [[support.get((a, b), 0) for a in range(-R, R + 1)] for b in range(R, -R - 1, -1)]
    return link_from_table(rows, R, kind="h", comp1=comp1, comp2=comp2)


def chi_from_H(L: LinkHFunction2) -> LaurentPoly:
    """Recover the Euler characteristics -H(s-1,s-1) + H(s-1,s) + H(s,s-1) - H(s) as a polynomial."""
    R = L.radius
    terms = {}
    for a in range(-R - 1, R + 3):
        for b in range(-R - 1, R + 3):
            c = -L(a - 1, b - 1) + L(a - 1, b) + L(a, b - 1) - L(a, b)
            if c:
                terms[2 * a, 2 * b] = c
    return LaurentPoly(terms, 2)


def h_prime(L: LinkHFunction2) -> dict[tuple[int, int], int]:
    R = L.radius
    out = {}
    for a in range(-R, R + 1):
        for b in range(-R, R + 1):
            v = L(a, b) - L.comp1(a) - L.comp2(b)
            if v:
                out[a, b] = v
    return out


def b_invariants(L: LinkHFunction2) -> tuple[int, int]:
    if L.h(0, 0) == 0:
        raise TrivialLink("h(0,0) = 0, so the link is the unlink")
    R = L.radius
    b1 = max(a for a in range(-R, R + 1) if L.h(a, 0) > 0)
    b2 = max(b for b in range(-R, R + 1) if L.h(0, b) > 0)
    return b1, b2


def blowdown_h(L: LinkHFunction2, which: int) -> KnotHFunction:
    """H-function of the knot left after blowing down the other (unknotted) component.

    which=2 gives s -> H(0, s); which=1 gives s -> H(s, 0).
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    other = L.comp1 if which == 2 else L.comp2
    if not other.is_unknot():
        raise ComponentNotUnknot(f"component {3 - which} is knotted")
    R = L.radius
    f = (lambda s: L(0, s)) if which == 2 else (lambda s: L(s, 0))
    K = KnotHFunction({s: f(s) for s in range(-R, R + 1)}, R)
    report = validate(K)
    if not report.ok:
        raise InvalidHTable(f"blow-down H-function fails validation: {report}", report)
    return K


def nu_plus(K: KnotHFunction) -> int:
    s = 0
    while K(s) != 0:
        s += 1
    return s
