"""Monomial ideals in a polynomial ring k[x1..xn] with an N^s grading.

Ideals are immutable and always carry their minimal generating set, sorted
lexicographically.  The numeric kernels work on int64 arrays of exponent
vectors.  Most of them go through the *staircase* of an ideal: for every
prefix p = (a_1..a_{n-1}) the least exponent t with x^p * x_n^t in the ideal.
Products, sums and finite lengths all reduce to cheap array operations on
staircases, which is what keeps the Hilbert-function enumeration fast.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import DimensionError, InfiniteLength, InputError, RingMismatch, UndefinedColon, UndefinedInvariant

INF = np.int64(1) << 40

# largest staircase box (in cells) before falling back to pairwise tests
_BOX_LIMIT = 4_000_000


@dataclass(frozen=True)
class RingContext:
    """Polynomial ring in ``num_vars`` variables with a degree vector per variable."""

    num_vars: int
    grading: tuple = None

    def __post_init__(self):
        if self.num_vars < 1:
            raise DimensionError("a ring needs at least one variable")
        grading = self.grading
        if grading is None:
            grading = tuple((1,) for _ in range(self.num_vars))
        grading = tuple(tuple(int(c) for c in g) for g in grading)
        if len(grading) != self.num_vars:
            raise DimensionError("one degree vector per variable is required")
        if len({len(g) for g in grading}) != 1 or len(grading[0]) < 1:
            raise DimensionError("degree vectors must share a positive length")
        for g in grading:
            if any(c < 0 for c in g) or not any(g):
                raise DimensionError(f"degree vector {g} must be nonzero and non-negative")
        object.__setattr__(self, "grading", grading)

    @property
    def s(self) -> int:
        return len(self.grading[0])

    @classmethod
    def standard(cls, n: int) -> RingContext:
        return cls(n)

    @classmethod
    def blocks(cls, *sizes: int) -> RingContext:
        """Standard N^s grading: variables of block k have degree e_k."""
        s = len(sizes)
        grading = []
        for k, size in enumerate(sizes):
            unit = tuple(1 if j == k else 0 for j in range(s))
            grading.extend([unit] * size)
        return cls(len(grading), tuple(grading))

    def is_standard(self) -> bool:
        return all(sum(g) == 1 for g in self.grading)

    def block_of(self, k: int) -> list[int]:
        """Indices of the variables whose degree is the k-th unit vector."""
        return [i for i, g in enumerate(self.grading) if g[k] == 1 and sum(g) == 1]

    def unit(self) -> MonomialIdeal:
        return MonomialIdeal(self, [(0,) * self.num_vars])

    def zero(self) -> MonomialIdeal:
        return MonomialIdeal(self, [])

    def maximal(self) -> MonomialIdeal:
        n = self.num_vars
        return MonomialIdeal(self, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    def variables(self, indices) -> MonomialIdeal:
        n = self.num_vars
        return MonomialIdeal(self, [tuple(int(i == j) for j in range(n)) for i in indices])


# ---------------------------------------------------------------- kernels


def _as_array(gens, n: int) -> np.ndarray:
    a = np.asarray(list(gens), dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, n), dtype=np.int64)
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionError(f"exponent vectors must have length {n}")
    if (a < 0).any():
        raise DimensionError("exponents must be non-negative")
    return a


def _staircase(a: np.ndarray, shape: tuple) -> np.ndarray:
    """Least last exponent over each prefix in ``shape``; INF where none."""
    f = np.full(shape, INF, dtype=np.int64)
    if len(a):
        if len(shape) == 0:
            f[()] = a[:, -1].min()
        else:
            keep = (a[:, :-1] < np.asarray(shape)).all(axis=1)
            b = a[keep]
            np.minimum.at(f, tuple(b[:, :-1].T), b[:, -1])
    for axis in range(len(shape)):
        f = np.minimum.accumulate(f, axis=axis)
    return f


def _shifted(f: np.ndarray, axis: int) -> np.ndarray:
    """f(p - e_axis), INF on the first layer."""
    g = np.full_like(f, INF)
    src = [slice(None)] * f.ndim
    dst = [slice(None)] * f.ndim
    src[axis] = slice(0, -1)
    dst[axis] = slice(1, None)
    g[tuple(dst)] = f[tuple(src)]
    return g


def _corners(f: np.ndarray) -> np.ndarray:
    """Minimal generators read off a staircase."""
    mask = f < INF
    for axis in range(f.ndim):
        mask &= f < _shifted(f, axis)
    idx = np.argwhere(mask)
    return np.column_stack([idx, f[mask]]).astype(np.int64)


def _minimal(a: np.ndarray, n: int) -> np.ndarray:
    """Minimal elements of a set of exponent vectors under divisibility, lex-sorted."""
    if len(a) == 0:
        return np.zeros((0, n), dtype=np.int64)
    if (a.sum(axis=1) == 0).any():
        return np.zeros((1, n), dtype=np.int64)
    if n == 1:
        return a.min(axis=0, keepdims=True)
    shape = tuple(int(c) + 1 for c in a[:, :-1].max(axis=0))
    if int(np.prod(shape)) <= _BOX_LIMIT:
        return _corners(_staircase(a, shape))
    a = np.unique(a, axis=0)
    a = a[np.argsort(a.sum(axis=1), kind="stable")]
    keep = np.ones(len(a), dtype=bool)
    for start in range(0, len(a), 512):
        block = a[start:start + 512]
        divides = (a[None, :, :] <= block[:, None, :]).all(axis=2)
        divides[np.arange(len(block)), np.arange(start, start + len(block))] = False
        keep[start:start + len(block)] = ~divides.any(axis=1)
    out = a[keep]
    return out[np.lexsort(out.T[::-1])]


def _product(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros((0, n), dtype=np.int64)
    return _minimal((a[:, None, :] + b[None, :, :]).reshape(-1, n), n)


def _contains_points(gens: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Vectorised membership of each row of ``pts`` in the ideal generated by ``gens``."""
    n = pts.shape[1]
    if len(gens) == 0:
        return np.zeros(len(pts), dtype=bool)
    if n == 1:
        return pts[:, 0] >= gens[:, 0].min()
    shape = tuple(int(c) + 1 for c in gens[:, :-1].max(axis=0))
    if int(np.prod(shape)) <= _BOX_LIMIT:
        f = _staircase(gens, shape)
        clamp = np.minimum(pts[:, :-1], np.asarray(shape) - 1)
        return f[tuple(clamp.T)] <= pts[:, -1]
    out = np.zeros(len(pts), dtype=bool)
    for start in range(0, len(pts), 256):
        block = pts[start:start + 256]
        out[start:start + 256] = (gens[None, :, :] <= block[:, None, :]).all(axis=2).any(axis=1)
    return out


def count_difference(k_gens: np.ndarray, m_gens: np.ndarray, n: int) -> int:
    """Number of monomials in (k_gens) but not in (m_gens).

    Raises InfiniteLength when that set is infinite.  The count is exact for
    any pair of monomial ideals, nested or not.
    """
    if len(k_gens) == 0:
        return 0
    if n == 1:
        fk = int(k_gens[:, 0].min())
        if len(m_gens) == 0:
            raise InfiniteLength("quotient is not of finite length")
        return max(0, int(m_gens[:, 0].min()) - fk)
    hi = k_gens[:, :-1].max(axis=0)
    if len(m_gens):
        hi = np.maximum(hi, m_gens[:, :-1].max(axis=0))
    shape = tuple(int(c) + 2 for c in hi)
    if int(np.prod(shape)) > 4 * _BOX_LIMIT:
        raise InfiniteLength(f"length count box {shape} too large")
    fk = _staircase(k_gens, shape)
    fm = _staircase(m_gens, shape)
    live = fk < INF
    if (live & (fm >= INF)).any():
        raise InfiniteLength("quotient is not of finite length")
    d = np.where(live, np.maximum(fm - fk, 0), 0)
    for axis in range(d.ndim):
        edge = [slice(None)] * d.ndim
        edge[axis] = -1
        if d[tuple(edge)].any():
            raise InfiniteLength("quotient is not of finite length")
    return int(d.sum())


# ---------------------------------------------------------------- ideals


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by generators; stored in canonical minimal form."""

    ring: RingContext
    gens: tuple

    def __post_init__(self):
        n = self.ring.num_vars
        a = _minimal(_as_array(self.gens, n), n)
        object.__setattr__(self, "gens", tuple(tuple(int(c) for c in row) for row in a))

    @classmethod
    def _wrap(cls, ring: RingContext, a: np.ndarray) -> MonomialIdeal:
        # ``a`` is already minimal and lex sorted
        obj = object.__new__(cls)
        object.__setattr__(obj, "ring", ring)
        object.__setattr__(obj, "gens", tuple(tuple(int(c) for c in row) for row in a))
        return obj

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.ring.num_vars)
        a.setflags(write=False)
        return a

    @property
    def n(self) -> int:
        return self.ring.num_vars

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    def __len__(self):
        return len(self.gens)

    def __mul__(self, other):
        return product(self, other)

    def __add__(self, other):
        return ideal_sum(self, other)

    def __pow__(self, k):
        return power(self, k)

    def __contains__(self, m):
        return contains(self, m)

    def __str__(self):
        return format_ideal(self)

    def __repr__(self):
        return f"MonomialIdeal({format_ideal(self)})"


def _same_ring(*ideals):
    ring = ideals[0].ring
    for J in ideals[1:]:
        if J.ring != ring:
            raise RingMismatch("ideals live in different rings")
    return ring


def minimalize(gens, ring: RingContext) -> MonomialIdeal:
    return MonomialIdeal(ring, gens)


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(I, J)
    return MonomialIdeal._wrap(ring, _product(I.array, J.array, ring.num_vars))


@lru_cache(maxsize=4096)
def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 0:
        raise InputError("negative power")
    if k == 0:
        return I.ring.unit()
    if k == 1:
        return I
    half = power(I, k // 2)
    sq = product(half, half)
    return product(sq, I) if k % 2 else sq


def ideal_sum(*ideals: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(*ideals)
    n = ring.num_vars
    a = np.concatenate([J.array for J in ideals]) if ideals else np.zeros((0, n), np.int64)
    return MonomialIdeal._wrap(ring, _minimal(a, n))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    ring = _same_ring(I, J)
    n = ring.num_vars
    if I.is_zero() or J.is_zero():
        return ring.zero()
    lcm = np.maximum(I.array[:, None, :], J.array[None, :, :]).reshape(-1, n)
    return MonomialIdeal._wrap(ring, _minimal(lcm, n))


def colon_monomial(I: MonomialIdeal, m) -> MonomialIdeal:
    """I : x^m."""
    n = I.n
    a = np.asarray(m, dtype=np.int64)
    if a.shape != (n,):
        raise DimensionError(f"monomial must have length {n}")
    return MonomialIdeal._wrap(I.ring, _minimal(np.maximum(I.array - a, 0), n))


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J, the intersection of I : g over the generators g of J."""
    _same_ring(I, J)
    if J.is_zero():
        raise UndefinedColon("colon by the zero ideal")
    out = None
    for g in J.gens:
        Q = colon_monomial(I, g)
        out = Q if out is None else intersect(out, Q)
    return out


def saturate(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """I : J^infinity, iterating the colon to its fixed point."""
    cur = I
    while True:
        nxt = colon(cur, J)
        if nxt == cur:
            return cur
        cur = nxt


def contains(I: MonomialIdeal, m) -> bool:
    a = np.asarray(m, dtype=np.int64)
    if a.shape != (I.n,):
        raise DimensionError(f"monomial must have length {I.n}")
    if I.is_zero():
        return False
    return bool((I.array <= a).all(axis=1).any())


def contains_many(I: MonomialIdeal, pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, dtype=np.int64).reshape(-1, I.n)
    return _contains_points(I.array, pts)


# ------------------------------------------------------ dimension theory


def _supports(I: MonomialIdeal) -> list[int]:
    """Generator supports as bitmasks."""
    masks = []
    for g in I.gens:
        masks.append(sum(1 << i for i, c in enumerate(g) if c))
    return masks


@lru_cache(maxsize=4096)
def minimal_primes(I: MonomialIdeal) -> tuple[frozenset, ...]:
    """Minimal primes of I, each a frozenset of variable indices.

    These are the minimal sets of variables meeting every generator support.
    The unit ideal has none; the zero ideal has the single prime (0).
    """
    if I.is_unit():
        return ()
    supports = sorted(set(_supports(I)), key=lambda m: bin(m).count("1"))
    covers = {0}
    for sup in supports:
        nxt = set()
        for c in covers:
            if c & sup:
                nxt.add(c)
            else:
                for i in range(I.n):
                    if sup >> i & 1:
                        nxt.add(c | 1 << i)
        covers = {c for c in nxt if not any(o != c and o & c == o for o in nxt)}
    out = [frozenset(i for i in range(I.n) if c >> i & 1) for c in covers]
    return tuple(sorted(out, key=lambda p: (len(p), sorted(p))))


def krull_dim(I: MonomialIdeal) -> int:
    """Dimension of k[x]/I; -1 for the unit ideal."""
    primes = minimal_primes(I)
    if not primes:
        return -1
    return I.n - min(len(p) for p in primes)


def height(I: MonomialIdeal) -> int:
    """Least size of a variable set meeting every generator support."""
    if I.is_zero():
        return 0
    if I.is_unit():
        raise UndefinedInvariant("height of the unit ideal is undefined")
    return min(len(p) for p in minimal_primes(I))


def is_primary_to_m(I: MonomialIdeal) -> bool:
    if I.is_unit():
        return False
    pure = set()
    for g in I.gens:
        nz = [i for i, c in enumerate(g) if c]
        if len(nz) == 1:
            pure.add(nz[0])
    return len(pure) == I.n


def order(I: MonomialIdeal) -> int:
    """Largest k with I inside m^k."""
    if I.is_zero() or I.is_unit():
        raise UndefinedInvariant("order of the zero or unit ideal is undefined")
    return min(sum(g) for g in I.gens)


def height_in(J: MonomialIdeal, base: MonomialIdeal | None) -> int:
    """Height of the image of J in k[x]/base."""
    if base is None or base.is_zero():
        return height(J)
    total = ideal_sum(J, base)
    if total.is_unit():
        raise UndefinedInvariant("J is the unit ideal modulo base")
    base_primes = minimal_primes(base)
    best = None
    for P in minimal_primes(total):
        h = max(len(P) - len(Q) for Q in base_primes if Q <= P)
        best = h if best is None else min(best, h)
    return best


def dim_in(J: MonomialIdeal, base: MonomialIdeal | None) -> int:
    """dim of k[x]/(J + base)."""
    return krull_dim(J if base is None else ideal_sum(J, base))


# ---------------------------------------------------------------- lengths


def length_between(K: MonomialIdeal, M: MonomialIdeal, base: MonomialIdeal | None = None) -> int:
    """Length of (K + base)/(M + base) as a count of monomials in K outside M + base.

    When M is inside K this is the length of K/M over k[x]/base.
    """
    n = K.n
    m = M.array if base is None else np.concatenate([M.array, base.array])
    return count_difference(K.array, m, n)


def colength(I: MonomialIdeal, base: MonomialIdeal | None = None) -> int:
    """Length of k[x]/(I + base)."""
    return length_between(I.ring.unit(), I, base)


def monomials_of_degree(n: int, d: int) -> np.ndarray:
    """All exponent vectors of total degree d in n variables (lex order)."""
    return _monomials_of_degree(n, d)


@lru_cache(maxsize=512)
def _monomials_of_degree(n, d):
    if n == 1:
        out = np.array([[d]], dtype=np.int64)
    else:
        rows = []
        for first in range(d, -1, -1):
            rest = _monomials_of_degree(n - 1, d - first)
            rows.append(np.column_stack([np.full(len(rest), first, np.int64), rest]))
        out = np.concatenate(rows)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------- text form

_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, ring: RingContext) -> tuple[int, ...]:
    """Parse ``x1^2*x3`` (or ``1``) into an exponent vector."""
    n = ring.num_vars
    s = re.sub(r"\s+", "", text)
    exps = [0] * n
    if s in ("1", ""):
        return tuple(exps)
    for factor in s.split("*"):
        m = _VAR.match(factor)
        if not m:
            raise DimensionError(f"cannot parse monomial factor {factor!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise DimensionError(f"variable x{i} outside x1..x{n}")
        exps[i - 1] += int(m.group(2) or 1)
    return tuple(exps)


def parse_ideal(text: str, ring: RingContext) -> MonomialIdeal:
    """Parse ``ideal(x1^2, x1*x2)``; ``ideal()`` is the zero ideal."""
    s = re.sub(r"\s+", "", text)
    m = re.fullmatch(r"ideal\((.*)\)", s)
    if not m:
        raise DimensionError(f"ideal text must look like ideal(...), got {text!r}")
    body = m.group(1)
    gens = [parse_monomial(part, ring) for part in body.split(",")] if body else []
    return MonomialIdeal(ring, gens)


def format_monomial(e) -> str:
    parts = []
    for i, c in enumerate(e):
        if c == 1:
            parts.append(f"x{i + 1}")
        elif c > 1:
            parts.append(f"x{i + 1}^{c}")
    return "*".join(parts) if parts else "1"


def format_ideal(I: MonomialIdeal) -> str:
    return "ideal(" + ", ".join(format_monomial(g) for g in I.gens) + ")"


def ideal(ring: RingContext | int, *gens) -> MonomialIdeal:
    """Convenience constructor: ``ideal(2, (2, 0), (1, 1))`` or text generators."""
    if isinstance(ring, int):
        ring = RingContext(ring)
    vecs = [parse_monomial(g, ring) if isinstance(g, str) else tuple(g) for g in gens]
    return MonomialIdeal(ring, vecs)


def pure_powers(ring: RingContext | int, exps) -> MonomialIdeal:
    """(x1^a1, ..., xk^ak) for the given exponents (zeros skipped)."""
    if isinstance(ring, int):
        ring = RingContext(ring)
    n = ring.num_vars
    gens = [tuple(a if j == i else 0 for j in range(n)) for i, a in enumerate(exps) if a]
    return MonomialIdeal(ring, gens)


def all_subsets(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)
