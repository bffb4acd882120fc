"""Multigraded Hilbert functions, stable-region detection and exact polynomial fits.

A Hilbert function is handled as a plain callable on integer tuples.  Fitting
interpolates on a small tensor window inside a candidate region, validates on a
larger window, and pushes the region outward on failure.  Two region shapes are
supported: an orthant u >= u0 (standard gradings) and a cone
u >= d*v + u0, v >= v0 (bigradings with generators of degree (d_j, 1)).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable

import numpy as np

from .errors import FitCorruption, PreconditionError, PresentationError, UnstableRegion
from .monomial import (
    MonomialIdeal,
    RingContext,
    UndefinedColon,
    _monomials_of_degree,
    contains_many,
    ideal_sum,
    krull_dim,
    height_in,
    saturate,
)
from .polynomial import NEG_INF, Poly, format_poly, interpolate_grid


# ---------------------------------------------------------------- regions


@dataclass(frozen=True)
class OrthantRegion:
    corner: tuple

    @property
    def arity(self):
        return len(self.corner)

    def chart(self, t):
        return tuple(c + x for c, x in zip(self.corner, t))

    def contains(self, u):
        return all(x >= c for x, c in zip(u, self.corner))

    def to_json(self):
        return {"kind": "orthant", "corner": list(self.corner)}


@dataclass(frozen=True)
class ConeRegion:
    """u >= slope*v + u0 and v >= v0."""

    slope: int
    u0: int
    v0: int

    arity = 2

    def chart(self, t):
        i, j = t
        v = j + self.v0
        return (i + self.slope * v + self.u0, v)

    def contains(self, p):
        u, v = p
        return v >= self.v0 and u >= self.slope * v + self.u0

    def to_json(self):
        return {"kind": "cone", "slope": self.slope, "u0": self.u0, "v0": self.v0}


def _region_at(kind, arity, offset, slope):
    if kind == "orthant":
        return OrthantRegion((offset,) * arity)
    if kind == "cone":
        return ConeRegion(slope, offset, offset)
    raise ValueError(f"unknown region kind {kind!r}")


def _chart_poly(region, q: Poly) -> Poly:
    """Turn a polynomial in chart coordinates into one in degree coordinates."""
    if isinstance(region, OrthantRegion):
        k = region.arity
        return q.substitute([Poly.var(k, i) - region.corner[i] for i in range(k)])
    u, v = Poly.var(2, 0), Poly.var(2, 1)
    i = u - region.slope * v - region.u0
    j = v - region.v0
    return q.substitute([i, j])


# ---------------------------------------------------------------- results


def _deg_json(d):
    return "-inf" if d == NEG_INF else int(d)


@dataclass
class HilbertTable:
    arity: int
    lower: tuple
    upper: tuple
    values: dict

    def __getitem__(self, u):
        return self.values[tuple(u)]

    def points(self):
        return itertools.product(*[range(a, b + 1) for a, b in zip(self.lower, self.upper)])

    def to_json(self):
        return {
            "arity": self.arity,
            "lower": list(self.lower),
            "upper": list(self.upper),
            "values": [[list(u), int(self.values[u])] for u in sorted(self.values)],
        }


@dataclass
class HilbertPolynomial:
    poly: Poly
    region: object
    degree_hint: object = None

    @property
    def arity(self):
        return self.poly.nvars

    @property
    def total_degree(self):
        return self.poly.total_degree

    def __call__(self, *u):
        return self.poly(*u)

    def partial_degree(self, i):
        return self.poly.degree_in(i)

    def to_json(self):
        return {
            "arity": self.arity,
            "text": format_poly(self.poly),
            "total_degree": _deg_json(self.total_degree),
            "coefficients": self.poly.to_json()["terms"],
            "region": self.region.to_json(),
        }


@dataclass
class MixedMultiplicityVector:
    total_degree: object
    entries: dict
    polynomial: HilbertPolynomial | None = None

    def __getitem__(self, alpha):
        return self.entries.get(tuple(alpha), 0)

    def positive_support(self):
        return sorted(a for a, e in self.entries.items() if e > 0)

    def as_list(self):
        """Bigraded convenience: [e_{(r,0)}, ..., e_{(0,r)}] indexed by the second slot."""
        r = self.total_degree
        if r == NEG_INF:
            return []
        return [self.entries.get((r - j, j), 0) for j in range(r + 1)]

    def to_json(self):
        out = {
            "total_degree": _deg_json(self.total_degree),
            "entries": [{"alpha": list(a), "value": int(e)} for a, e in sorted(self.entries.items())],
        }
        if self.polynomial is not None:
            out["polynomial"] = self.polynomial.to_json()
        return out


@dataclass(frozen=True)
class FitConfig:
    """Region search schedule: offsets start, 2*start, ... while <= cap."""

    start: int = 1
    cap: int = 40
    margin: int = 2
    validate_factor: int = 2

    def offsets(self):
        o = self.start
        yield o
        if o == 0:
            o = 1
            yield o
        while 2 * o <= self.cap:
            o *= 2
            yield o


# ---------------------------------------------------------------- presentations


@dataclass(frozen=True)
class GradedPresentation:
    """k[x1..xn]/relations with the grading carried by the ring context."""

    ring: RingContext
    relations: MonomialIdeal = None

    def __post_init__(self):
        rel = self.relations if self.relations is not None else self.ring.zero()
        if rel.ring.num_vars != self.ring.num_vars:
            raise PresentationError("relations live in a different ring")
        if rel.ring != self.ring:
            rel = MonomialIdeal(self.ring, rel.gens)
        if rel.is_unit():
            raise PresentationError("relations must be a proper ideal")
        object.__setattr__(self, "relations", rel)

    @property
    def s(self):
        return self.ring.s

    def monomials_of(self, u) -> np.ndarray:
        """All exponent vectors of multidegree u (standard monomials or not)."""
        u = tuple(int(x) for x in u)
        if len(u) != self.s:
            raise PresentationError(f"degree must have {self.s} entries")
        if any(x < 0 for x in u):
            return np.zeros((0, self.ring.num_vars), np.int64)
        if self.ring.is_standard():
            return self._standard_monomials(u)
        return self._general_monomials(u)

    def _standard_monomials(self, u):
        n = self.ring.num_vars
        blocks = [self.ring.block_of(k) for k in range(self.s)]
        parts = []
        for k, idx in enumerate(blocks):
            if not idx:
                if u[k]:
                    return np.zeros((0, n), np.int64)
                parts.append((idx, np.zeros((1, 0), np.int64)))
            else:
                parts.append((idx, _monomials_of_degree(len(idx), u[k])))
        total = prod(len(p) for _, p in parts)
        out = np.zeros((total, n), np.int64)
        grids = np.meshgrid(*[np.arange(len(p)) for _, p in parts], indexing="ij")
        for (idx, p), g in zip(parts, grids):
            if idx:
                out[:, idx] = p[g.ravel()]
        return out

    def _general_monomials(self, u):
        n = self.ring.num_vars
        grading = self.ring.grading
        rows = []

        def rec(i, rem, cur):
            if i == n:
                if not any(rem):
                    rows.append(list(cur))
                return
            g = grading[i]
            k = 0
            while all(r - k * c >= 0 for r, c in zip(rem, g)):
                cur.append(k)
                rec(i + 1, tuple(r - k * c for r, c in zip(rem, g)), cur)
                cur.pop()
                k += 1

        rec(0, u, [])
        return np.array(rows, dtype=np.int64).reshape(len(rows), n)

    def hilbert(self, u) -> int:
        if self.relations.is_zero():
            return self._count_free(tuple(int(x) for x in u))
        mons = self.monomials_of(u)
        if len(mons) == 0:
            return 0
        return int((~contains_many(self.relations, mons)).sum())

    def _count_free(self, u) -> int:
        """Number of exponent vectors of multidegree u, by dynamic programming."""
        if len(u) != self.s:
            raise PresentationError(f"degree must have {self.s} entries")
        if any(x < 0 for x in u):
            return 0
        ways = {u: 1}
        for g in self.ring.grading:
            nxt = {}
            for rem, c in ways.items():
                k = 0
                while all(r - k * x >= 0 for r, x in zip(rem, g)):
                    key = tuple(r - k * x for r, x in zip(rem, g))
                    nxt[key] = nxt.get(key, 0) + c
                    k += 1
            ways = nxt
        return ways.get((0,) * self.s, 0)

    def irrelevant(self) -> MonomialIdeal:
        """R_+: products of one variable from each degree block."""
        if not self.ring.is_standard():
            raise PreconditionError("irrelevant ideal needs a standard grading")
        blocks = [self.ring.block_of(k) for k in range(self.s)]
        n = self.ring.num_vars
        gens = []
        for choice in itertools.product(*blocks):
            e = [0] * n
            for i in choice:
                e[i] += 1
            gens.append(e)
        return MonomialIdeal(self.ring, gens)


def hilbert_function(P: GradedPresentation, box) -> HilbertTable:
    """Enumerate H on the box given as (lower, upper), both inclusive."""
    lower, upper = (tuple(int(x) for x in b) for b in box)
    if len(lower) != P.s or len(upper) != P.s:
        raise PresentationError("box arity does not match the grading")
    for g in P.ring.grading:
        if not any(g):
            raise PresentationError("a variable of degree zero gives infinite graded pieces")
    vals = {}
    for u in itertools.product(*[range(a, b + 1) for a, b in zip(lower, upper)]):
        vals[u] = P.hilbert(u)
    return HilbertTable(P.s, lower, upper, vals)


def table_from(fn: Callable, lower, upper) -> HilbertTable:
    vals = {u: int(fn(u)) for u in itertools.product(*[range(a, b + 1) for a, b in zip(lower, upper)])}
    return HilbertTable(len(lower), tuple(lower), tuple(upper), vals)


def sum_transform(T: HilbertTable, directions) -> HilbertTable:
    """Prefix sums along the given axes; the table must start at the origin on those axes."""
    for ax in directions:
        if T.lower[ax] != 0:
            raise PreconditionError("sum transform needs the table to start at 0 on summed axes")
    shape = tuple(b - a + 1 for a, b in zip(T.lower, T.upper))
    arr = np.zeros(shape, dtype=object)
    for u, x in T.values.items():
        arr[tuple(a - l for a, l in zip(u, T.lower))] = x
    for ax in directions:
        arr = np.cumsum(arr, axis=ax)
    vals = {tuple(int(i + l) for i, l in zip(idx, T.lower)): int(arr[idx]) for idx in np.ndindex(*shape)}
    return HilbertTable(T.arity, T.lower, T.upper, vals)


# ---------------------------------------------------------------- fitting


def _window(degree, margin):
    if degree == NEG_INF or degree < 0:
        return max(margin, 1)
    return int(degree) + margin


def _try_region(getval, region, degree, config: FitConfig, extra_points=()):
    """Fit inside ``region``; return (HilbertPolynomial, None) or (None, mismatch point)."""
    k = region.arity
    w = _window(degree, config.margin)
    vals = np.empty((w,) * k, dtype=object)
    for t in np.ndindex(*vals.shape):
        vals[t] = getval(region.chart(t))
    q = interpolate_grid(vals, (0,) * k)
    poly = _chart_poly(region, q)
    side = config.validate_factor * w
    for t in itertools.product(range(side), repeat=k):
        if max(t) < w:
            continue
        pt = region.chart(t)
        if q(t) != getval(pt):
            return None, pt
    for pt in extra_points:
        if region.contains(pt) and poly(pt) != getval(pt):
            return None, pt
    if degree != NEG_INF and poly.total_degree > degree:
        return None, region.chart((w - 1,) * k)
    return HilbertPolynomial(poly, region, degree), None


def fit_hilbert(
    fn: Callable,
    arity: int,
    degree,
    kind: str = "orthant",
    slope: int = 0,
    config: FitConfig | None = None,
) -> HilbertPolynomial:
    """Search for the smallest validated region of the schedule and fit there."""
    config = config or FitConfig()
    cache = {}

    def getval(u):
        u = tuple(int(x) for x in u)
        if u not in cache:
            cache[u] = int(fn(u))
        return cache[u]

    last = None
    for o in config.offsets():
        region = _region_at(kind, arity, o, slope)
        hp, bad = _try_region(getval, region, degree, config)
        if hp is not None:
            return hp
        last = (bad, region)
    raise UnstableRegion(
        f"no stable {kind} region up to offset {config.cap}; last mismatch at {last[0]}",
        point=last[0],
        region=last[1].to_json(),
    )


def fit_polynomial(T: HilbertTable, expected_degree, region_hypothesis) -> HilbertPolynomial:
    """Fit a table on a window at the corner of the region and validate on every
    remaining table point inside the region."""

    def getval(u):
        if tuple(u) not in T.values:
            raise UnstableRegion(f"table does not cover {tuple(u)}", point=tuple(u))
        return T.values[tuple(u)]

    cfg = FitConfig(validate_factor=1)
    inside = [u for u in T.values if region_hypothesis.contains(u)]
    hp, bad = _try_region(getval, region_hypothesis, expected_degree, cfg, extra_points=sorted(inside))
    if hp is None:
        raise UnstableRegion(f"table disagrees with the fit at {bad}", point=bad, region=region_hypothesis.to_json())
    return hp


def spot_check(hp: HilbertPolynomial, fn: Callable, count: int = 50, reach: int = 30, seed: int = 0):
    """Compare the fit with ``fn`` at random points of its region; return mismatches."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        t = tuple(rng.randrange(reach) for _ in range(hp.arity))
        pt = hp.region.chart(t)
        if hp(pt) != fn(pt):
            bad.append(pt)
    return bad


# ---------------------------------------------------------------- invariants


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def extract_mixed_multiplicities(hp: HilbertPolynomial, degree=None) -> MixedMultiplicityVector:
    """e_alpha = alpha! * coefficient of u^alpha in the top-degree part.

    This reads the binomial-basis coefficients in the standard case and the
    normalized power-basis ones in the non-standard case.  ``degree`` fixes the
    top degree when it is known independently of the fit.
    """
    r = hp.total_degree if degree is None else degree
    if r == NEG_INF or r < 0:
        return MixedMultiplicityVector(NEG_INF, {}, hp)
    entries = {}
    for alpha in compositions(int(r), hp.arity):
        c = hp.poly.coeff(alpha) * prod(factorial(a) for a in alpha)
        if c.denominator != 1:
            raise FitCorruption(f"non-integral top coefficient {c} at {alpha}")
        entries[alpha] = int(c)
    return MixedMultiplicityVector(int(r), entries, hp)


def relevant_dimension(P: GradedPresentation):
    """dim R/0:R_+^infinity, or -1 when that quotient is zero."""
    try:
        sat = saturate(P.relations, P.irrelevant())
    except UndefinedColon:
        return -1
    return krull_dim(sat)


def total_degree(P: GradedPresentation):
    rd = relevant_dimension(P)
    return NEG_INF if rd < 0 else rd - P.s


def partial_degrees(P: GradedPresentation):
    """(r_1, r_2) = (dim R/(sat + R_(0,1)) - 1, dim R/(sat + R_(1,0)) - 1)."""
    if P.s != 2 or not P.ring.is_standard():
        raise PreconditionError("partial degrees need a standard bigrading")
    try:
        sat = saturate(P.relations, P.irrelevant())
    except UndefinedColon:
        return (NEG_INF, NEG_INF)
    out = []
    for other in (1, 0):
        d = krull_dim(ideal_sum(sat, P.ring.variables(P.ring.block_of(other))))
        out.append(NEG_INF if d < 0 else d - 1)
    return tuple(out)


def presentation_mixed(P: GradedPresentation, config: FitConfig | None = None) -> MixedMultiplicityVector:
    r = total_degree(P)
    hp = fit_hilbert(P.hilbert, P.s, r, config=config)
    return extract_mixed_multiplicities(hp, r)


def total_grading_multiplicity_fn(fn: Callable, dim: int, config: FitConfig | None = None):
    """e(R) for the N-grading R_t = sum_{u+v=t} R_(u,v) of a bigraded algebra of dimension ``dim``.

    Returns (e, fitted polynomial).
    """
    deg = dim - 1

    def total(t):
        (t,) = t
        return sum(fn((u, t - u)) for u in range(t + 1))

    hp = fit_hilbert(total, 1, deg, config=config)
    if deg < 0:
        return 0, hp
    e = hp.poly.coeff((deg,)) * factorial(deg)
    if e.denominator != 1:
        raise FitCorruption(f"non-integral multiplicity {e}")
    return int(e), hp


def total_grading_multiplicity(P: GradedPresentation, config: FitConfig | None = None) -> int:
    """Multiplicity of the total N-grading of a standard bigraded presentation."""
    if P.s != 2 or not P.ring.is_standard():
        raise PreconditionError("total grading multiplicity needs a standard bigrading")
    for k in range(2):
        block = P.ring.block_of(k)
        if not block:
            raise PreconditionError("each degree block must be nonempty")
        try:
            h = height_in(P.ring.variables(block), P.relations)
        except ValueError:
            h = 0
        if h < 1:
            raise PreconditionError(f"the ideal generated by degree block {k} has height 0")
    e, _ = total_grading_multiplicity_fn(P.hilbert, krull_dim(P.relations), config)
    return e


def diagonal_multiplicity_fn(fn: Callable, lam, degree: int, config: FitConfig | None = None):
    """Multiplicity of the lambda-diagonal subalgebra: fit t -> H(t*lambda) of degree ``degree``."""
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam):
        raise PreconditionError("diagonal weights must be positive")
    hp = fit_hilbert(lambda t: fn(tuple(t[0] * x for x in lam)), 1, degree, config=config)
    e = hp.poly.coeff((degree,)) * factorial(degree)
    if e.denominator != 1:
        raise FitCorruption(f"non-integral diagonal multiplicity {e}")
    return int(e)


def diagonal_multiplicity(P: GradedPresentation, lam, config: FitConfig | None = None) -> int:
    r = total_degree(P)
    if r == NEG_INF:
        return 0
    return diagonal_multiplicity_fn(P.hilbert, lam, r, config)


def diagonal_formula(mm: MixedMultiplicityVector, lam) -> Fraction:
    """r! * sum_alpha e_alpha lam^alpha / alpha!."""
    r = mm.total_degree
    total = Fraction(0)
    for alpha, e in mm.entries.items():
        total += Fraction(e * prod(x ** a for x, a in zip(lam, alpha)), prod(factorial(a) for a in alpha))
    return total * factorial(r)


def free_hilbert(sizes, u) -> int:
    """Hilbert function of a polynomial ring with standard blocks of the given sizes."""
    return prod(comb(x + m - 1, m - 1) if m else int(x == 0) for x, m in zip(u, sizes))


def kmv_presentation(a) -> GradedPresentation:
    """Katz-Mandal-Verma: a bigraded algebra with e_(i, n-i) = a_i for i = 0..n.

    S = k[x_0..x_n, y_0..y_n] and R = S / Q_0 cap ... cap Q_n with
    Q_t = (x_0^{a_t}, x_1..x_{n-t-1}, y_0..y_{t-1}) for t < n and
    Q_n = (y_0^{a_n}, y_1..y_{n-1}), so every component has the same dimension.
    A component with a_t = 0 is the unit ideal and drops out.
    """
    from .monomial import intersect

    a = [int(x) for x in a]
    if len(a) < 2 or any(x < 0 for x in a) or not any(a):
        raise PreconditionError("need at least two non-negative integers with a positive entry")
    n = len(a) - 1
    ring = RingContext.blocks(n + 1, n + 1)
    N = 2 * (n + 1)

    def unit_vec(i, k=1):
        return tuple(k if j == i else 0 for j in range(N))

    def y(j):
        return n + 1 + j

    rel = None
    for t, at in enumerate(a):
        if at == 0:
            continue
        if t < n:
            gens = [unit_vec(0, at)] + [unit_vec(i) for i in range(1, n - t)] + [unit_vec(y(j)) for j in range(t)]
        else:
            gens = [unit_vec(y(0), at)] + [unit_vec(y(j)) for j in range(1, n)]
        Q = MonomialIdeal(ring, gens)
        rel = Q if rel is None else intersect(rel, Q)
    return GradedPresentation(ring, rel)
