"""Exact multivariate polynomials over Q and tensor-grid interpolation."""
from __future__ import annotations

from fractions import Fraction
from math import factorial, prod

import numpy as np

NEG_INF = float("-inf")


class Poly:
    """Sparse polynomial in ``nvars`` variables: exponent tuple -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean

    # constructors
    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs, c0=0):
        """sum coeffs[i]*x_i + c0."""
        n = len(coeffs)
        terms = {(0,) * n: c0}
        for i, a in enumerate(coeffs):
            terms[tuple(int(j == i) for j in range(n))] = a
        return cls(n, terms)

    # structure
    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=NEG_INF)

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    def top_part(self):
        r = self.total_degree
        return {e: c for e, c in self.terms.items() if sum(e) == r}

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    # evaluation and substitution
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list, np.ndarray)):
            point = tuple(point[0])
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * prod(Fraction(x) ** k for x, k in zip(point, e))
        return total

    def substitute(self, images):
        """Replace variable i by the polynomial images[i]."""
        nv = images[0].nvars
        out = Poly(nv)
        for e, c in self.terms.items():
            term = Poly.const(nv, c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    # serialization
    def to_json(self):
        rows = []
        for e in sorted(self.terms):
            c = self.terms[e]
            rows.append({"exponent": list(e), "num": c.numerator, "den": c.denominator})
        return {"nvars": self.nvars, "terms": rows}

    @classmethod
    def from_json(cls, data):
        return cls(data["nvars"], {tuple(r["exponent"]): Fraction(r["num"], r["den"]) for r in data["terms"]})

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, names=None) -> str:
    if p.is_zero():
        return "0"
    names = names or (["t"] if p.nvars == 1 else ["u", "v", "w"] if p.nvars <= 3 else [f"u{i}" for i in range(p.nvars)])
    parts = []
    for e in sorted(p.terms, key=lambda e: (-sum(e), [-x for x in e])):
        c = p.terms[e]
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _falling_binomial(k: int, shift: int) -> list[Fraction]:
    """Power-basis coefficients of C(t - shift, k) in t, lowest degree first."""
    coeffs = [Fraction(1)]
    for j in range(k):
        root = shift + j
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= c * root
        coeffs = nxt
    f = factorial(k)
    return [c / f for c in coeffs]


def interpolate_grid(values, lower) -> Poly:
    """Interpolate a polynomial of degree < side in each variable from a tensor grid.

    ``values`` is an array indexed by t - lower over [0, side)^k.  Forward
    differences give the coefficients in the basis prod C(t_i - lower_i, a_i),
    which are then expanded to the power basis.
    """
    diffs = np.array(values, dtype=object)
    k = diffs.ndim
    for axis in range(k):
        slabs = [np.take(diffs, [0], axis=axis)]
        cur = diffs
        for _ in range(diffs.shape[axis] - 1):
            cur = np.diff(cur, axis=axis)
            slabs.append(np.take(cur, [0], axis=axis))
        diffs = np.concatenate(slabs, axis=axis)
    uni = [[_falling_binomial(a, int(lower[i])) for a in range(diffs.shape[i])] for i in range(k)]
    terms = {}
    for alpha in np.ndindex(*diffs.shape):
        c = diffs[alpha]
        if c == 0:
            continue
        factors = [uni[i][a] for i, a in enumerate(alpha)]
        for expo in np.ndindex(*[len(f) for f in factors]):
            w = prod(f[j] for f, j in zip(factors, expo))
            if w:
                terms[expo] = terms.get(expo, 0) + Fraction(c) * w
    return Poly(k, terms)


def binomial_poly(nvars: int, i: int, k: int, shift: int = 0) -> Poly:
    """C(x_i + shift, k) as a polynomial."""
    coeffs = _falling_binomial(k, -shift)
    return Poly(nvars, {tuple(d if j == i else 0 for j in range(nvars)): c for d, c in enumerate(coeffs)})
