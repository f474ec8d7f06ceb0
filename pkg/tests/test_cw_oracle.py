import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsk.cw_oracle import (
    _connected_bits,
    _connected_bool,
    build_complex,
    check_against_formula,
    differential_problems,
    maximin_bottleneck,
    oracle_difference,
    quadrant_min_check,
    relative_d,
    straight_path_check,
    verify_differential,
)
from lsk.errors import TruncationTooSmall, ZeroFraming
from lsk.surgery_d import d_link_surgery, phi, spinc_labels

from conftest import seeds, synthetic_link


def brute_maximin(grid, blocked=None, axis="horizontal"):
    """Max over simple 4-connected paths of the path minimum, by depth-first enumeration."""
    g = [list(r) for r in grid]
    rows, cols = len(g), len(g[0])
    bl = blocked if blocked is not None else [[False] * cols for _ in range(rows)]
    if axis == "vertical":
        g = [list(c) for c in zip(*g)]
        bl = [list(c) for c in zip(*bl)]
        rows, cols = cols, rows
    best = None

    def walk(x, y, seen, low):
        nonlocal best
        if y == cols - 1:
            best = low if best is None else max(best, low)
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= nx < rows and 0 <= ny < cols and (nx, ny) not in seen and not bl[nx][ny]:
                seen.add((nx, ny))
                walk(nx, ny, seen, min(low, g[nx][ny]))
                seen.discard((nx, ny))

    for x in range(rows):
        if not bl[x][0]:
            walk(x, 0, {(x, 0)}, g[x][0])
    return best


def test_maximin_examples():
    assert maximin_bottleneck([[5]]) == 5
    assert maximin_bottleneck([[1, 9], [9, 1]]) == 1
    assert maximin_bottleneck([[1, 9], [9, 1]], "vertical") == 1
    assert maximin_bottleneck([[3] * 4] * 3) == 3
    assert maximin_bottleneck([[None, 2], [4, None]]) is None
    assert maximin_bottleneck([[7, None, 1], [7, 7, 7]]) == 7


def test_maximin_rejects_bad_input():
    with pytest.raises(ValueError):
        maximin_bottleneck([[1, 2], [3]])
    with pytest.raises(ValueError):
        maximin_bottleneck([[1]], axis="diagonal")


@pytest.mark.parametrize("rows,cols", [(r, c) for r in range(1, 4) for c in range(1, 4)])
def test_maximin_exhaustive_small(rows, cols):
    # every grid with weights in {0, 1, 2}, plus every blocking pattern on one weighting
    for values in itertools.product(range(3), repeat=rows * cols):
        grid = np.array(values).reshape(rows, cols)
        for axis in ("horizontal", "vertical"):
            assert maximin_bottleneck(grid.tolist(), axis) == brute_maximin(grid.tolist(), axis=axis)
    grid = np.arange(rows * cols).reshape(rows, cols) % 3
    for mask in itertools.product([False, True], repeat=rows * cols):
        bl = np.array(mask).reshape(rows, cols)
        assert maximin_bottleneck(grid, blocked=bl) == brute_maximin(grid.tolist(), bl.tolist())


def test_maximin_random_4x4():
    rng = random.Random(7)
    for _ in range(300):
        grid = [[rng.randint(0, 5) for _ in range(4)] for _ in range(4)]
        bl = [[rng.random() < 0.2 for _ in range(4)] for _ in range(4)]
        for axis in ("horizontal", "vertical"):
            assert maximin_bottleneck(grid, axis, bl) == brute_maximin(grid, bl, axis)


@settings(max_examples=60)
@given(st.integers(1, 9), st.integers(1, 7), st.data())
def test_connectivity_backends_agree(rows, cols, data):
    bits = data.draw(st.lists(st.booleans(), min_size=rows * cols, max_size=rows * cols))
    open_ = np.array(bits, dtype=bool).reshape(1, rows, cols)
    assert _connected_bits(open_)[0] == _connected_bool(open_)[0]


def test_batch_matches_single():
    rng = np.random.default_rng(3)
    grids = rng.integers(0, 4, size=(200, 3, 4))
    out = maximin_bottleneck(grids, "vertical")
    assert [int(v) for v in out] == [maximin_bottleneck(g.tolist(), "vertical") for g in grids]


def test_large_grid_uses_bool_backend():
    grid = np.zeros((9, 9), dtype=np.int64)
    grid[4, :] = 5
    assert maximin_bottleneck(grid) == 5


def test_whitehead_complex_degrees(whitehead, unlink):
    cx = build_complex(whitehead, 1, 1, (0, 0), b=3)
    i, j = list(cx.S1).index(0), list(cx.S2).index(0)
    assert cx.deg0[i, j] == -2
    assert verify_differential(cx)
    assert relative_d(cx) - relative_d(build_complex(unlink, 1, 1, (0, 0), b=3)) == -2


def test_unlink_complex_case_a(unlink):
    cx = build_complex(unlink, -1, -1, (0, 0), b=3)
    assert cx.case == "a" and not cx.erased12.any()
    top = cx.deg12.max()
    where = {(int(cx.V1[a]), int(cx.V2[c])) for a, c in zip(*np.nonzero(cx.deg12 == top))}
    assert (0, 0) in where and all(abs(x) <= 1 and abs(y) <= 1 for x, y in where)
    assert verify_differential(cx)


def test_oracle_differences(whitehead, unlink):
    assert oracle_difference(whitehead, 1, 1, (0, 0)) == -2
    assert oracle_difference(whitehead, 1, -1, (0, 0)) == 0
    assert oracle_difference(whitehead, -1, -1, (0, 0)) == 0
    for lab in spinc_labels(-2, -3):
        assert oracle_difference(unlink, -2, -3, lab) == 0


def test_build_errors(whitehead):
    with pytest.raises(TruncationTooSmall):
        build_complex(whitehead, 3, 1, (0, 0), b=3)
    with pytest.raises(ZeroFraming):
        build_complex(whitehead, 0, 1, (0, 0))


def test_corrupted_degrees_are_caught(whitehead):
    cx = build_complex(whitehead, 1, 1, (0, 0), b=3)
    cx.deg0 = cx.deg0.copy()
    cx.deg0[0, 0] += 4
    problems = differential_problems(cx)
    assert not verify_differential(cx)
    assert any("negative U-exponent" in p or "disagrees" in p for p in problems)

    cx = build_complex(whitehead, 2, -1, (1, 0), b=4)
    cx.deg1 = cx.deg1.copy()
    cx.deg1[1, 1] += 1
    assert not verify_differential(cx)


def test_formula_agreement_whitehead_and_unlink(whitehead, unlink):
    report = check_against_formula(whitehead, 3)
    assert report.ok and report.cases == 144
    assert check_against_formula(unlink, 4).ok


@settings(max_examples=12)
@given(seeds)
def test_formula_agreement_synthetic(seed):
    L = synthetic_link(seed)
    report = check_against_formula(L, 3)
    assert report.ok, report.mismatches[:3]


@settings(max_examples=20)
@given(seeds, st.integers(-4, 4).filter(bool), st.integers(-4, 4).filter(bool), st.data())
def test_every_complex_is_well_formed(seed, p1, p2, data):
    L = synthetic_link(seed)
    label = data.draw(st.sampled_from(spinc_labels(p1, p2)))
    cx = build_complex(L, p1, p2, label)
    assert differential_problems(cx) == []
    if cx.case == "b":
        assert quadrant_min_check(cx)
    if cx.case == "c":
        assert straight_path_check(cx)


@settings(max_examples=20)
@given(seeds, st.integers(-4, 4).filter(bool), st.integers(-4, 4).filter(bool), st.data())
def test_truncation_stability(seed, p1, p2, data):
    L = synthetic_link(seed)
    label = data.draw(st.sampled_from(spinc_labels(p1, p2)))
    base = oracle_difference(L, p1, p2, label)
    b = max(abs(p1), abs(p2), L.radius) + 1
    assert all(oracle_difference(L, p1, p2, label, b + k) == base for k in (1, 3))
    assert base == d_link_surgery(L, p1, p2, label) - phi(p1, label.i1) - phi(p2, label.i2)


def test_tsv_dump(whitehead):
    text = build_complex(whitehead, 1, 1, (0, 0), b=3).dump_tsv()
    lines = text.splitlines()
    assert lines[0] == "dim\ts1\ts2\trel_deg\terased"
    assert "2\t0\t0\t-2\t0" in lines
