"""Exact Laurent polynomials in one or two variables, with half-integer exponents.

Exponents are stored doubled: c*t^(k/2) lives at key (k,), and c*t1^(a/2)*t2^(b/2)
at key (a, b). Integer-exponent polynomials therefore have only even keys.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    InvalidInput,
    InvalidTorusParameters,
    NonIntegralExponents,
    NotSymmetric,
    TailNotRecognized,
)

Key = tuple[int, ...]


def _as_key(k, nvars: int) -> Key:
    key = (k,) if isinstance(k, int) else tuple(int(x) for x in k)
    if len(key) != nvars:
        raise InvalidInput(f"exponent key {k!r} does not have {nvars} entries")
    return key


class LaurentPoly:
    """Immutable integer Laurent polynomial in `nvars` (1 or 2) variables."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, terms: Mapping | None = None, nvars: int = 1):
        if nvars not in (1, 2):
            raise InvalidInput("only 1 or 2 variables are supported")
        clean: dict[Key, int] = {}
        for k, c in (terms or {}).items():
            c = int(c)
            if c:
                key = _as_key(k, nvars)
                clean[key] = clean.get(key, 0) + c
        self.nvars = nvars
        self._terms = {k: c for k, c in clean.items() if c}

    # construction helpers

    @classmethod
    def zero(cls, nvars=1):
        return cls({}, nvars)

    @classmethod
    def const(cls, c, nvars=1):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, coeff, *exps):
        """monomial(3, 1, Fraction(-1, 2)) is 3*t1*t2^(-1/2); exponents are true (not doubled)."""
        return cls({tuple(_double(e) for e in exps): coeff}, len(exps))

    @classmethod
    def variable(cls, i=0, nvars=1):
        key = [0] * nvars
        key[i] = 2
        return cls({tuple(key): 1}, nvars)

    @property
    def terms(self) -> dict[Key, int]:
        return dict(self._terms)

    # ring structure

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise InvalidInput("cannot combine polynomials in different numbers of variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Key, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1 or next(iter(self._terms.values())) not in (1, -1):
                raise ValueError("negative powers are only defined for monomials with unit coefficient")
            (k, c), = self._terms.items()
            return LaurentPoly({tuple(n * e for e in k): c ** -n}, self.nvars)
        out = LaurentPoly.const(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms.items(), reverse=True))

    # structure queries

    def coefficient(self, *doubled) -> int:
        return self._terms.get(tuple(doubled), 0)

    def shift(self, *doubled):
        """Multiply by the monomial with the given doubled exponents."""
        return LaurentPoly({tuple(a + b for a, b in zip(k, doubled)): c
                            for k, c in self._terms.items()}, self.nvars)

    def inverse_substitution(self):
        """Substitute t_i -> t_i^-1 in every variable."""
        return LaurentPoly({tuple(-a for a in k): c for k, c in self._terms.items()}, self.nvars)

    def is_symmetric(self, sign: int = 1) -> bool:
        return self.inverse_substitution() == self * sign

    def has_integral_exponents(self) -> bool:
        return all(a % 2 == 0 for k in self._terms for a in k)

    def integer_terms(self) -> dict[Key, int]:
        """Terms keyed by true (halved) exponents; requires integral exponents."""
        if not self.has_integral_exponents():
            raise NonIntegralExponents(f"{self} has half-integer exponents")
        return {tuple(a // 2 for a in k): c for k, c in self._terms.items()}

    def value_at_one(self) -> int:
        return sum(self._terms.values())

    def max_abs_exponent(self) -> Fraction:
        return max((Fraction(abs(a), 2) for k in self._terms for a in k), default=Fraction(0))

    # I/O

    def to_json(self) -> list[list[int]]:
        return [[c, *k] for k, c in self]

    @classmethod
    def from_json(cls, data, nvars: int | None = None):
        if not isinstance(data, list):
            raise InvalidInput("polynomial JSON must be a list of [coeff, doubled exponents...]")
        rows = []
        for row in data:
            if not isinstance(row, list) or len(row) not in (2, 3) or not all(isinstance(x, int) for x in row):
                raise InvalidInput(f"bad polynomial term {row!r}")
            rows.append(row)
        if nvars is None:
            nvars = len(rows[0]) - 1 if rows else 1
        terms: dict[Key, int] = {}
        for c, *k in rows:
            key = _as_key(k, nvars)
            terms[key] = terms.get(key, 0) + c
        return cls(terms, nvars)

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["t"] if self.nvars == 1 else ["t1", "t2"]
        parts = []
        for k, c in self:
            factors = [_fmt_factor(n, a) for n, a in zip(names, k) if a]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, nvars={self.nvars})"


def _double(e) -> int:
    d = Fraction(e) * 2
    if d.denominator != 1:
        raise InvalidInput(f"exponent {e} is not a multiple of 1/2")
    return int(d)


def _fmt_factor(name: str, doubled: int) -> str:
    if doubled == 2:
        return name
    if doubled % 2 == 0:
        e = doubled // 2
        return f"{name}^{e}" if e > 0 else f"{name}^({e})"
    return f"{name}^({doubled}/2)"


_FACTOR = re.compile(r"(?:(?P<coef>\d+)|(?P<var>t[12]?)(?:\^(?P<exp>-?\d+|\(\s*[+-]?\d+(?:\s*/\s*\d+)?\s*\)))?)")


def parse_poly(text: str, nvars: int | None = None) -> LaurentPoly:
    """Parse e.g. "-t1*t2 + t1 + t2 - 1" or "t^(1/2) - t^(-1/2)"."""
    src = text.replace(" ", "")
    if not src:
        raise InvalidInput("empty polynomial")
    if nvars is None:
        nvars = 2 if re.search(r"t[12]", src) else 1
    names = {"t": 0} if nvars == 1 else {"t1": 0, "t2": 1}

    terms: list[tuple[int, str]] = []
    depth, start, sign = 0, 0, 1
    if src[0] in "+-":
        sign = -1 if src[0] == "-" else 1
        start = 1
    for i in range(start, len(src)):
        ch = src[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and src[i - 1] != "^":
            terms.append((sign, src[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
    terms.append((sign, src[start:]))

    out: dict[Key, int] = {}
    for sign, body in terms:
        if not body:
            raise InvalidInput(f"dangling sign in {text!r}")
        coeff = sign
        key = [0] * nvars
        for factor in body.split("*"):
            m = _FACTOR.fullmatch(factor)
            if not m or not factor:
                raise InvalidInput(f"cannot parse factor {factor!r} in {text!r}")
            if m["coef"]:
                coeff *= int(m["coef"])
                continue
            if m["var"] not in names:
                raise InvalidInput(f"unexpected variable {m['var']!r} for {nvars}-variable polynomial")
            exp = m["exp"] or "1"
            exp = exp.strip("()").replace(" ", "")
            key[names[m["var"]]] += _double(Fraction(exp))
        k = tuple(key)
        out[k] = out.get(k, 0) + coeff
    return LaurentPoly(out, nvars)


@dataclass(frozen=True)
class NegPowerSeries:
    """Formal series in t^-1 with bounded-above (integer) exponents.

    Coefficients are stored for exponents >= `low`; below the window the
    coefficient continues linearly: c(e) = c(low) + tail_slope * (low - e).
    tail_slope == 0 is an eventually-constant tail.
    """

    coeffs: dict[int, int] = field(default_factory=dict)
    low: int = 0
    tail_slope: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: c for e, c in self.coeffs.items() if c})
        if any(e < self.low for e in self.coeffs):
            raise ValueError("stored coefficient below the window")

    @classmethod
    def from_poly(cls, p: LaurentPoly):
        if p.nvars != 1:
            raise InvalidInput("series expansion is univariate")
        terms = {k[0]: c for k, c in p.integer_terms().items()}
        # one zero slot below the support so the constant tail is 0
        return cls(terms, low=min(terms, default=0) - 1)

    @property
    def top(self) -> int | None:
        return max(self.coeffs, default=None)

    @property
    def tail_kind(self) -> str:
        return "constant" if self.tail_slope == 0 else "linear"

    def coefficient(self, e: int) -> int:
        if e >= self.low:
            return self.coeffs.get(e, 0)
        return self.coeffs.get(self.low, 0) + self.tail_slope * (self.low - e)

    def is_zero(self) -> bool:
        return not self.coeffs and self.tail_slope == 0

    def window(self, down_to: int) -> dict[int, int]:
        top = self.top if self.top is not None else down_to
        return {e: self.coefficient(e) for e in range(top, down_to - 1, -1)}

    def times(self, p: LaurentPoly, down_to: int) -> dict[int, int]:
        """Coefficients of p * self for exponents >= down_to (p univariate, integral)."""
        terms = {k[0]: c for k, c in p.integer_terms().items()}
        if self.top is None and self.tail_slope == 0 and not self.coeffs:
            return {}
        top = (self.top or 0) + max(terms, default=0)
        out = {}
        for e in range(top, down_to - 1, -1):
            v = sum(c * self.coefficient(e - j) for j, c in terms.items())
            if v:
                out[e] = v
        return out


def series_over_one_minus_tinv(p: LaurentPoly) -> NegPowerSeries:
    """p / (1 - t^-1) expanded in t^-1; the tail is constant p(1)."""
    base = NegPowerSeries.from_poly(p)
    if base.top is None:
        return NegPowerSeries()
    coeffs, acc = {}, 0
    for e in range(base.top, base.low, -1):
        acc += base.coefficient(e)
        coeffs[e] = acc
    return NegPowerSeries(coeffs, low=base.low + 1, tail_slope=0)


def tilde_normalize(delta: LaurentPoly, n_components: int):
    """Two components: (t1 t2)^(1/2) * delta. One component: the series delta / (1 - t^-1)."""
    if not (delta.is_symmetric(1) or delta.is_symmetric(-1)):
        raise NotSymmetric(f"{delta} is not symmetric under t -> 1/t")
    if n_components == 2:
        if delta.nvars != 2:
            raise InvalidInput("two-component normalization needs a 2-variable polynomial")
        out = delta.shift(1, 1)
        if not out.has_integral_exponents():
            raise NonIntegralExponents("normalized polynomial has half-integer exponents (linking number is not zero)")
        return out
    if n_components == 1:
        if delta.nvars != 1:
            raise InvalidInput("knot normalization needs a 1-variable polynomial")
        return series_over_one_minus_tinv(delta)
    raise InvalidInput("n_components must be 1 or 2")


def divide_by_geometric_squared(s: NegPowerSeries) -> NegPowerSeries:
    """Multiply by sum_{k>=0} (k+1) t^-k and record the eventually-linear tail."""
    top = s.top
    if top is None:
        if s.tail_slope:
            raise TailNotRecognized("input tail is not eventually zero")
        return NegPowerSeries()
    span = top - s.low
    n_terms = 2 * span + 8
    bottom = top - n_terms + 1
    vals = {}
    for e in range(top, bottom - 1, -1):
        vals[e] = sum(s.coefficient(j) * (j - e + 1) for j in range(e, top + 1))
    check = [vals[e] for e in range(bottom, bottom + span + 3)]
    second = [check[i] - 2 * check[i + 1] + check[i + 2] for i in range(len(check) - 2)]
    if any(second):
        raise TailNotRecognized("no linear tail within the computed window")
    slope = vals[bottom] - vals[bottom + 1]
    return NegPowerSeries(vals, low=bottom, tail_slope=slope)


def torus_knot_alexander(p: int, q: int) -> LaurentPoly:
    """Symmetrized (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))."""
    if not (isinstance(p, int) and isinstance(q, int)) or p < 2 or q < 2 or _gcd(p, q) != 1:
        raise InvalidTorusParameters(f"T({p},{q}) needs coprime p, q >= 2")
    num = _pmul(_binom_minus(p * q), _binom_minus(1))
    den = _pmul(_binom_minus(p), _binom_minus(q))
    quot = _pdiv_exact(num, den)
    shift = (p - 1) * (q - 1)  # doubled half-degree
    return LaurentPoly({(2 * i - shift,): c for i, c in enumerate(quot)}, 1)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _binom_minus(n):
    # coefficients (ascending) of t^n - 1
    out = [0] * (n + 1)
    out[0], out[n] = -1, 1
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pdiv_exact(num, den):
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dq] // den[dq]
        quot[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("division was not exact")
    return quot


# family generators

def unknot_alexander() -> LaurentPoly:
    return LaurentPoly.const(1, 1)


def whitehead_alexander() -> LaurentPoly:
    """Symmetric two-variable polynomial -(t1^(1/2)-t1^(-1/2))(t2^(1/2)-t2^(-1/2))."""
    a = LaurentPoly({(1, 0): 1, (-1, 0): -1}, 2)
    b = LaurentPoly({(0, 1): 1, (0, -1): -1}, 2)
    return -(a * b)


def whitehead_tilde() -> LaurentPoly:
    return tilde_normalize(whitehead_alexander(), 2)


def unlink_tilde() -> LaurentPoly:
    return LaurentPoly.zero(2)

