"""Combinatorial recomputation of surgery d-invariants from the truncated cell complex.

The complex for framing (p1, p2) and label (i1, i2) lives on a rectangle. Along
axis k, 2-cell coordinates are S_k = {s = i_k mod |p_k|, |s| <= b} and vertex
coordinates are V_k = S_k together with one extra point s + p_k, so V_k is S_k
extended by one step in the direction of p_k. Cells:

    z0(s)  2-cell    s in S1 x S2
    z1(s)  1-cell    s in V1 x S2   (joins z12(s) and z12(s1, s2 + p2))
    z2(s)  1-cell    s in S1 x V2   (joins z12(s) and z12(s1 + p1, s2))
    z12(s) 0-cell    s in V1 x V2

Degrees are only relative: deg z12 is 0 at the smallest nonnegative residues
and changes by 2*s_k when s_k moves to s_k + p_k. The d-invariant difference
against the unlink with the same framing does not depend on that base point.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

from .errors import TruncationTooSmall, ZeroFraming
from .h_engine import LinkHFunction2, unlink_H
from .surgery_d import (
    SpincLabel2,
    _s_plus_minus,
    d_link_surgery,
    phi,
    reduce_spinc,
    spinc_labels,
)

_NO_PATH = np.iinfo(np.int64).min


class GradedCell(NamedTuple):
    dim: int
    position: tuple[int, int]
    flavor: str  # "z0", "z1", "z2", "z12"
    rel_deg: int
    erased: bool


@dataclass
class TruncatedComplex:
    L: LinkHFunction2
    p: tuple[int, int]
    label: SpincLabel2
    b: int
    case: str           # "a" (both negative), "b" (both positive), "c" (mixed)
    erased_sides: str   # "none", "all", "s1" (left/right sides), "s2" (top/bottom sides)
    S1: np.ndarray
    S2: np.ndarray
    V1: np.ndarray
    V2: np.ndarray
    deg12: np.ndarray   # V1 x V2
    deg1: np.ndarray    # V1 x S2
    deg2: np.ndarray    # S1 x V2
    deg0: np.ndarray    # S1 x S2
    erased12: np.ndarray
    erased1: np.ndarray
    erased2: np.ndarray

    @property
    def off1(self) -> int:
        # index of S1[0] inside V1
        return 0 if self.p[0] > 0 else 1

    @property
    def off2(self) -> int:
        return 0 if self.p[1] > 0 else 1

    def cells(self) -> Iterator[GradedCell]:
        S1, S2, V1, V2 = (x.tolist() for x in (self.S1, self.S2, self.V1, self.V2))
        for a, s1 in enumerate(S1):
            for c, s2 in enumerate(S2):
                yield GradedCell(2, (s1, s2), "z0", int(self.deg0[a, c]), False)
        for a, v1 in enumerate(V1):
            for c, s2 in enumerate(S2):
                yield GradedCell(1, (v1, s2), "z1", int(self.deg1[a, c]), bool(self.erased1[a, c]))
        for a, s1 in enumerate(S1):
            for c, v2 in enumerate(V2):
                yield GradedCell(1, (s1, v2), "z2", int(self.deg2[a, c]), bool(self.erased2[a, c]))
        for a, v1 in enumerate(V1):
            for c, v2 in enumerate(V2):
                yield GradedCell(0, (v1, v2), "z12", int(self.deg12[a, c]), bool(self.erased12[a, c]))

    def dump_tsv(self) -> str:
        rows = ["dim\ts1\ts2\trel_deg\terased"]
        for cell in sorted(self.cells(), key=lambda c: (c.dim, c.position, c.flavor)):
            rows.append(f"{cell.dim}\t{cell.position[0]}\t{cell.position[1]}\t{cell.rel_deg}\t{int(cell.erased)}")
        return "\n".join(rows) + "\n"


def default_b(L: LinkHFunction2, p1: int, p2: int) -> int:
    return max(abs(p1), abs(p2), L.radius) + 1


def _axis(p: int, i: int, b: int):
    n = abs(p)
    base = i % n
    first = base - n * ((base + b) // n)
    S = np.arange(first, b + 1, n, dtype=np.int64)
    if p > 0:
        V = np.append(S, S[-1] + p)
    else:
        V = np.insert(S, 0, S[0] + p)
    # deg contribution g with g(base) = 0 and g(s + p) = g(s) + 2s
    g = np.zeros(len(V), dtype=np.int64)
    j0 = int(np.searchsorted(V, base))
    for j in range(j0 + 1, len(V)):
        prev, cur = int(V[j - 1]), int(V[j])
        # cur = prev + |p|; if p > 0 cur = prev + p, else prev = cur + p
        g[j] = g[j - 1] + 2 * prev if p > 0 else g[j - 1] - 2 * cur
    for j in range(j0 - 1, -1, -1):
        cur, nxt = int(V[j]), int(V[j + 1])
        g[j] = g[j + 1] - 2 * cur if p > 0 else g[j + 1] + 2 * nxt
    return S, V, g


def build_complex(L: LinkHFunction2, p1: int, p2: int, label, b: int | None = None) -> TruncatedComplex:
    if p1 == 0 or p2 == 0:
        raise ZeroFraming("framings must be nonzero")
    label = reduce_spinc(p1, p2, *label)
    if b is None:
        b = default_b(L, p1, p2)
    r = L.stable_radius()
    if b <= max(abs(p1), abs(p2), r):
        raise TruncationTooSmall(f"b={b} must exceed max(|p1|, |p2|) and the stabilization radius {r}")

    S1, V1, g1 = _axis(p1, label.i1, b)
    S2, V2, g2 = _axis(p2, label.i2, b)
    m = b + max(abs(p1), abs(p2)) + 1
    Hd = L.dense(m)
    H1 = np.array([L.comp1(int(x)) for x in range(-m, m + 1)], dtype=np.int64)
    H2 = np.array([L.comp2(int(x)) for x in range(-m, m + 1)], dtype=np.int64)

    deg12 = g1[:, None] + g2[None, :]
    o1 = 0 if p1 > 0 else 1
    o2 = 0 if p2 > 0 else 1
    n1, n2 = len(S1), len(S2)
    deg1 = deg12[:, o2:o2 + n2] - 2 * H2[S2 + m][None, :]
    deg2 = deg12[o1:o1 + n1, :] - 2 * H1[S1 + m][:, None]
    deg0 = deg12[o1:o1 + n1, o2:o2 + n2] - 2 * Hd[np.ix_(S1 + m, S2 + m)]

    e12 = np.zeros(deg12.shape, dtype=bool)
    e1 = np.zeros(deg1.shape, dtype=bool)
    e2 = np.zeros(deg2.shape, dtype=bool)
    ends1 = np.zeros(len(V1), dtype=bool)
    ends1[[0, -1]] = True
    ends2 = np.zeros(len(V2), dtype=bool)
    ends2[[0, -1]] = True
    if p1 < 0 and p2 < 0:
        case, sides = "a", "none"
    elif p1 > 0 and p2 > 0:
        case, sides = "b", "all"
        e12 |= ends1[:, None] | ends2[None, :]
        e1 |= ends1[:, None]
        e2 |= ends2[None, :]
    else:
        case = "c"
        if p1 > 0:
            sides = "s1"
            e12 |= ends1[:, None]
            e1 |= ends1[:, None]
        else:
            sides = "s2"
            e12 |= ends2[None, :]
            e2 |= ends2[None, :]
    return TruncatedComplex(L, (p1, p2), label, b, case, sides, S1, S2, V1, V2,
                            deg12, deg1, deg2, deg0, e12, e1, e2)


def fine_grid(cx: TruncatedComplex) -> tuple[np.ndarray, np.ndarray]:
    """The 1-skeleton as a grid indexed [x, y]: vertices at (even, even), edges at mixed parity.

    Returns (weights, blocked); 2-cells and erased cells are blocked.
    """
    nv1, nv2 = cx.deg12.shape
    W = np.zeros((2 * nv1 - 1, 2 * nv2 - 1), dtype=np.int64)
    blocked = np.ones(W.shape, dtype=bool)
    W[0::2, 0::2] = cx.deg12
    blocked[0::2, 0::2] = cx.erased12
    # z1(V1[a], S2[c]) joins V2 indices c and c + 1 whatever the sign of p2; same for z2
    W[0::2, 1::2] = cx.deg1
    blocked[0::2, 1::2] = cx.erased1
    W[1::2, 0::2] = cx.deg2
    blocked[1::2, 0::2] = cx.erased2
    return W, blocked


def straight_path_value(cx: TruncatedComplex, t: int) -> int:
    """Bottleneck of the straight path at height (p1 > 0) or abscissa (p2 > 0) t."""
    W, blocked = fine_grid(cx)
    if cx.erased_sides == "s1":
        j = int(np.searchsorted(cx.V2, t))
        line, mask = W[:, 2 * j], blocked[:, 2 * j]
    else:
        j = int(np.searchsorted(cx.V1, t))
        line, mask = W[2 * j, :], blocked[2 * j, :]
    return int(line[~mask].min())


def relative_d(cx: TruncatedComplex) -> int:
    if cx.case == "a":
        return int(cx.deg12.max())
    if cx.case == "b":
        return int(cx.deg0.min()) + 2
    W, blocked = fine_grid(cx)
    # drop the erased sides; paths then join the cells next to them
    if cx.erased_sides == "s1":
        W, blocked, axis = W[1:-1, :], blocked[1:-1, :], "horizontal"
    else:
        W, blocked, axis = W[:, 1:-1], blocked[:, 1:-1], "vertical"
    grid, mask = W.T, blocked.T  # rows are s2, columns are s1
    value = maximin_bottleneck(grid, axis, blocked=mask)
    if value is None:
        raise TruncationTooSmall("no path joins the erased sides")
    return value + 1


# bottleneck search


def _connected_bool(open_: np.ndarray) -> np.ndarray:
    """open_ has shape (B, rows, cols); is some open cell in column 0 joined to one in the last column?"""
    reach = np.zeros_like(open_)
    reach[:, :, 0] = open_[:, :, 0]
    while True:
        grown = reach.copy()
        grown[:, 1:, :] |= reach[:, :-1, :]
        grown[:, :-1, :] |= reach[:, 1:, :]
        grown[:, :, 1:] |= reach[:, :, :-1]
        grown[:, :, :-1] |= reach[:, :, 1:]
        grown &= open_
        if np.array_equal(grown, reach):
            break
        reach = grown
    return reach[:, :, -1].any(axis=1)


def _connected_bits(open_: np.ndarray) -> np.ndarray:
    """Same as _connected_bool, with each grid packed into one uint64 (rows * cols <= 63)."""
    _, rows, cols = open_.shape
    weights = np.left_shift(np.uint64(1), np.arange(rows * cols, dtype=np.uint64))
    bits = (open_.reshape(len(open_), -1).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    first = np.uint64(sum(1 << (r * cols) for r in range(rows)))
    last = np.uint64(int(first) << (cols - 1))
    one, width = np.uint64(1), np.uint64(cols)
    reach = bits & first
    while True:
        grown = (reach
                 | ((reach << one) & ~first)
                 | ((reach >> one) & ~last)
                 | (reach << width)
                 | (reach >> width)) & bits
        if np.array_equal(grown, reach):
            break
        reach = grown
    return (reach & last) != 0


def _connected(open_: np.ndarray) -> np.ndarray:
    if open_.shape[1] * open_.shape[2] <= 63:
        return _connected_bits(open_)
    return _connected_bool(open_)


def maximin_bottleneck(weights, axis: str = "horizontal", blocked=None):
    """Max over simple 4-connected paths joining two opposite sides of the min weight on the path.

    axis="horizontal" joins the first and last column, "vertical" the first and
    last row. `weights` may be nested lists (None marks a blocked cell) or an
    integer array; a 3-d array is treated as a batch of grids and an array is
    returned. Returns None (or the int64 minimum in batch mode) if no path exists.
    """
    if isinstance(weights, np.ndarray) and weights.dtype != object:
        arr = weights.astype(np.int64, copy=False)
        mask = np.zeros(arr.shape, dtype=bool) if blocked is None else np.asarray(blocked, dtype=bool)
    else:
        rows = [list(r) for r in weights]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("weights must be a nonempty rectangular grid")
        mask = np.array([[v is None for v in r] for r in rows], dtype=bool)
        arr = np.array([[0 if v is None else int(v) for v in r] for r in rows], dtype=np.int64)
        if blocked is not None:
            mask |= np.asarray(blocked, dtype=bool)
    batch = arr.ndim == 3
    if not batch:
        arr, mask = arr[None], mask[None]
    if axis == "vertical":
        arr, mask = arr.transpose(0, 2, 1), mask.transpose(0, 2, 1)
    elif axis != "horizontal":
        raise ValueError("axis must be 'horizontal' or 'vertical'")

    values = np.unique(arr[~mask])
    n = arr.shape[0]
    # largest index k with a path through cells of weight >= values[k]; -1 if none
    lo = np.full(n, -1, dtype=np.int64)
    hi = np.full(n, len(values) - 1, dtype=np.int64)
    while True:
        active = lo < hi
        if not active.any():
            break
        mid = (lo + hi + 1) // 2
        thresh = values[np.where(active, mid, 0)] if len(values) else np.zeros(n, dtype=np.int64)
        ok = _connected((arr >= thresh[:, None, None]) & ~mask)
        lo = np.where(active & ok, mid, lo)
        hi = np.where(active & ~ok, mid - 1, hi)
    out = np.where(lo >= 0, values[np.maximum(lo, 0)] if len(values) else 0, _NO_PATH)
    if batch:
        return out
    return None if out[0] == _NO_PATH else int(out[0])


# differential checks


def _edge_exponents(cx: TruncatedComplex):
    """(name, source degrees, target degrees, formula exponents, target erased) for every boundary component."""
    L = cx.L
    p1, p2 = cx.p
    o1, o2 = cx.off1, cx.off2
    d1, d2 = (1 if p1 > 0 else -1), (1 if p2 > 0 else -1)
    S1, S2, V1, V2 = cx.S1, cx.S2, cx.V1, cx.V2
    n1, n2 = len(S1), len(S2)
    a1 = np.arange(n1) + o1  # V1 index of S1 entries
    a2 = np.arange(n2) + o2

    def H(x, y):
        return np.array([[L(int(u), int(v)) for v in y] for u in x], dtype=np.int64)

    H1 = np.array([L.comp1(int(u)) for u in S1], dtype=np.int64)
    H1m = np.array([L.comp1(int(-u)) for u in S1], dtype=np.int64)
    H2 = np.array([L.comp2(int(v)) for v in S2], dtype=np.int64)
    H2m = np.array([L.comp2(int(-v)) for v in S2], dtype=np.int64)
    Hs = H(S1, S2)
    Hms = H(-S1, -S2)

    out = []
    # z0(s) -> z2(s1, s2), z2(s1, s2 + p2), z1(s1, s2), z1(s1 + p1, s2)
    out.append(("z0->z2(s)", cx.deg0, cx.deg2[:, a2], Hs - H1[:, None], cx.erased2[:, a2]))
    out.append(("z0->z2(s+p2)", cx.deg0, cx.deg2[:, a2 + d2], Hms - H1m[:, None], cx.erased2[:, a2 + d2]))
    out.append(("z0->z1(s)", cx.deg0, cx.deg1[a1, :], Hs - H2[None, :], cx.erased1[a1, :]))
    out.append(("z0->z1(s+p1)", cx.deg0, cx.deg1[a1 + d1, :], Hms - H2m[None, :], cx.erased1[a1 + d1, :]))
    # z2(s1, t) -> z12(s1, t), z12(s1 + p1, t)
    out.append(("z2->z12(s)", cx.deg2, cx.deg12[a1, :], np.repeat(H1[:, None], len(V2), 1),
                cx.erased12[a1, :]))
    out.append(("z2->z12(s+p1)", cx.deg2, cx.deg12[a1 + d1, :], np.repeat(H1m[:, None], len(V2), 1),
                cx.erased12[a1 + d1, :]))
    # z1(t, s2) -> z12(t, s2), z12(t, s2 + p2)
    out.append(("z1->z12(s)", cx.deg1, cx.deg12[:, a2], np.repeat(H2[None, :], len(V1), 0),
                cx.erased12[:, a2]))
    out.append(("z1->z12(s+p2)", cx.deg1, cx.deg12[:, a2 + d2], np.repeat(H2m[None, :], len(V1), 0),
                cx.erased12[:, a2 + d2]))
    return out


def differential_problems(cx: TruncatedComplex) -> list[str]:
    problems = []
    parities = np.concatenate([x.ravel() % 2 for x in (cx.deg0, cx.deg1, cx.deg2, cx.deg12)])
    if len(np.unique(parities)) > 1:
        problems.append("cell degrees do not share one parity")
    for name, src, tgt, formula, _erased in _edge_exponents(cx):
        diff = tgt - src
        if (diff % 2).any():
            problems.append(f"{name}: odd degree difference")
            continue
        expo = diff // 2
        if (expo < 0).any():
            problems.append(f"{name}: negative U-exponent")
        if not np.array_equal(expo, formula):
            problems.append(f"{name}: exponent disagrees with the H-function formula")
    problems += _d_squared_problems(cx)
    return problems


def _d_squared_problems(cx: TruncatedComplex) -> list[str]:
    """D^2 = 0 over F_2[U] on the complex with erased cells removed."""
    p1, p2 = cx.p
    o1, o2 = cx.off1, cx.off2
    d1, d2 = (1 if p1 > 0 else -1), (1 if p2 > 0 else -1)
    problems = []

    def expo(src_deg, tgt_deg):
        return (int(tgt_deg) - int(src_deg)) // 2

    for a in range(len(cx.S1)):
        for c in range(len(cx.S2)):
            src = cx.deg0[a, c]
            va, vc = a + o1, c + o2
            first = []  # (kind, index, exponent) for the present 1-cells in D(z0)
            for ca in (vc, vc + d2):
                if not cx.erased2[a, ca]:
                    first.append(("z2", (a, ca), expo(src, cx.deg2[a, ca])))
            for aa in (va, va + d1):
                if not cx.erased1[aa, c]:
                    first.append(("z1", (aa, c), expo(src, cx.deg1[aa, c])))
            total: dict[tuple, int] = {}
            for kind, (x, y), e in first:
                if kind == "z2":
                    ends = [(x + o1, y), (x + o1 + d1, y)]
                    sdeg = cx.deg2[x, y]
                else:
                    ends = [(x, y + o2), (x, y + o2 + d2)]
                    sdeg = cx.deg1[x, y]
                for v in ends:
                    if cx.erased12[v]:
                        continue
                    key = (v, e + expo(sdeg, cx.deg12[v]))
                    total[key] = total.get(key, 0) + 1
            odd = [k for k, n in total.items() if n % 2]
            if odd:
                pos = (int(cx.S1[a]), int(cx.S2[c]))
                problems.append(f"D^2 z0{pos} != 0 (terms {odd[:2]})")
    return problems


def verify_differential(cx: TruncatedComplex) -> bool:
    return not differential_problems(cx)


# formula comparison


class Mismatch(NamedTuple):
    p1: int
    p2: int
    label: SpincLabel2
    oracle: int
    formula: object
    note: str


@dataclass
class OracleReport:
    cases: int
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches


_UNLINK: dict[int, LinkHFunction2] = {}


def _unlink(radius: int) -> LinkHFunction2:
    if radius not in _UNLINK:
        from .h_engine import unknot

        R = radius
        core = {(a, b): unlink_H(a, b) for a in range(-R, R + 1) for b in range(-R, R + 1)}
        _UNLINK[radius] = LinkHFunction2(core, unknot(), unknot(), R)
    return _UNLINK[radius]


@lru_cache(maxsize=None)
def _unlink_relative_d(p1, p2, i1, i2, b):
    return relative_d(build_complex(_unlink(1), p1, p2, (i1, i2), b))


def oracle_difference(L: LinkHFunction2, p1: int, p2: int, label, b: int | None = None) -> int:
    """relative_d(L) - relative_d(unlink) for the same framing, label and truncation."""
    label = reduce_spinc(p1, p2, *label)
    if b is None:
        b = default_b(L, p1, p2)
    return relative_d(build_complex(L, p1, p2, label, b)) - _unlink_relative_d(p1, p2, label.i1, label.i2, b)


def check_against_formula(L: LinkHFunction2, p_max: int) -> OracleReport:
    framings = [p for p in range(-p_max, p_max + 1) if p]
    cases, mismatches = 0, []
    for p1 in framings:
        for p2 in framings:
            b = default_b(L, p1, p2)
            for label in spinc_labels(p1, p2):
                cases += 1
                expected = d_link_surgery(L, p1, p2, label) - phi(p1, label.i1) - phi(p2, label.i2)
                got = oracle_difference(L, p1, p2, label, b)
                again = oracle_difference(L, p1, p2, label, b + 2)
                if got != again:
                    mismatches.append(Mismatch(p1, p2, label, got, expected, f"unstable: {again} at b+2"))
                elif got != expected:
                    mismatches.append(Mismatch(p1, p2, label, got, expected, "formula disagrees"))
    return OracleReport(cases, mismatches)


def quadrant_min_check(cx: TruncatedComplex) -> bool:
    """Case b: the global minimum over 2-cells is attained at a quadrant point."""
    p1, p2 = cx.p
    sp1, sm1 = _s_plus_minus(p1, cx.label.i1)
    sp2, sm2 = _s_plus_minus(p2, cx.label.i2)
    S1, S2 = cx.S1.tolist(), cx.S2.tolist()
    quad = [cx.deg0[S1.index(x), S2.index(y)] for x in (sp1, sm1) for y in (sp2, sm2)]
    return int(min(quad)) == int(cx.deg0.min())


def straight_path_check(cx: TruncatedComplex) -> bool:
    """Case c: the best path is the straight one through s_+ + p of the negative-framing axis."""
    p1, p2 = cx.p
    if cx.erased_sides == "s1":
        t0 = _s_plus_minus(abs(p2), cx.label.i2)[0] + p2
    else:
        t0 = _s_plus_minus(abs(p1), cx.label.i1)[0] + p1
    return straight_path_value(cx, t0) + 1 == relative_d(cx)
