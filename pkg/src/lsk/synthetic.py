"""Random H-functions that satisfy every axiom checked by `validate`.

These are test inputs, not necessarily H-functions of actual links.
"""
from __future__ import annotations

import random

from .h_engine import KnotHFunction, LinkHFunction2, validate


def random_knot_h(rng: random.Random, max_drop: int = 2, radius: int = 3) -> KnotHFunction:
    """h(s) for s >= 0 is a unit staircase; the negative side follows from symmetry."""
    n = rng.randint(0, max_drop)
    drops = sorted(rng.sample(range(0, radius), min(n, radius)))
    # H(s) for s >= 0 counts the drops strictly after s
    window = {s: sum(1 for d in drops if d >= s) for s in range(0, radius + 1)}
    for s in range(1, radius + 1):
        window[-s] = window[s] + s
    K = KnotHFunction(window, radius)
    assert validate(K).ok
    return K


def random_link_h(rng: random.Random, radius: int = 3, steps: int = 60,
                  knotted: bool = False, up_bias: float = 0.7) -> LinkHFunction2:
    """Markov chain of +-1 moves on a split-link table, keeping only moves that validate.

    A move at s also moves -s by the same amount, so symmetry is preserved.
    Moves stay one step inside the core so the boundary keeps stabilizing.
    """
    if knotted:
        comp1 = random_knot_h(rng, radius=radius - 1)
        comp2 = random_knot_h(rng, radius=radius - 1)
    else:
        comp1 = comp2 = KnotHFunction({s: max(0, -s) for s in range(-1, 2)}, 1)
    R = radius
    core = {(a, b): comp1(a) + comp2(b) for a in range(-R, R + 1) for b in range(-R, R + 1)}
    L = LinkHFunction2(core, comp1, comp2, R)
    interior = [(a, b) for a in range(-R + 1, R) for b in range(-R + 1, R)]
    for _ in range(steps):
        a, b = rng.choice(interior)
        delta = 1 if rng.random() < up_bias else -1
        trial = dict(L._core)
        trial[a, b] += delta
        if (a, b) != (0, 0):
            trial[-a, -b] += delta
        candidate = LinkHFunction2(trial, comp1, comp2, R)
        if validate(candidate).ok:
            L = candidate
    return L
