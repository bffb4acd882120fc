"""Exact lattice polytopes: hulls, volumes, mixed volumes and the Bernstein bound.

Everything is integer or Fraction arithmetic.  A polytope is carried in the
coordinates of its affine lattice (aff P intersected with Z^n), obtained from a
unimodular change of basis; hull facets are found there by testing candidate
hyperplanes through affinely independent point subsets, after discarding points
already known to be interior.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd, prod

import numpy as np

from .errors import DimensionError, FitCorruption, InputError, InvariantFailure
from .polynomial import Poly, interpolate_grid


class DegenerateVolume(InputError):
    """Full-dimensional volume requested for a lower-dimensional polytope."""


# ---------------------------------------------------------------- integer linear algebra


def _det(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def _rank(rows) -> int:
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return 0
    rank, ncols = 0, len(A[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def lattice_chart(points: np.ndarray):
    """Unimodular chart of the affine lattice spanned by ``points``.

    Returns (origin, U, j): lattice coordinates of x are the first j entries
    of (x - origin) @ U, an isomorphism aff(P) cap Z^n -> Z^j.
    """
    P = np.asarray(points, dtype=np.int64)
    n = P.shape[1]
    p0 = P[0].copy()
    M = [[int(x) for x in row] for row in (P - p0)]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, q):  # column dst -= q * column src
        for row in M:
            row[dst] -= q * row[src]
        for row in U:
            row[dst] -= q * row[src]

    def swap(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    col = 0
    for r in range(len(M)):
        if col == n:
            break
        for c in range(col + 1, n):
            while M[r][c] != 0:
                q = M[r][col] // M[r][c]
                colop(col, c, q)
                swap(col, c)
        if M[r][col] != 0:
            col += 1
    return p0, np.array(U, dtype=np.int64), col


# ---------------------------------------------------------------- hull kernels


def _hull2(P: np.ndarray):
    """Monotone chain: vertices of a full-dimensional planar point set, counterclockwise."""
    pts = sorted(set(map(tuple, P.tolist())))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _normals(D: np.ndarray) -> np.ndarray:
    """Integer normals to the rows of each (k-1) x k matrix in the stack D."""
    T, m, k = D.shape
    out = np.zeros((T, k), dtype=np.int64)
    for i in range(k):
        minor = np.delete(D, i, axis=2)
        out[:, i] = (-1) ** i * _stack_det(minor)
    return out


def _stack_det(M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of small integer matrices by Laplace expansion."""
    k = M.shape[1]
    if k == 1:
        return M[:, 0, 0].copy()
    if k == 2:
        return M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    total = np.zeros(M.shape[0], dtype=np.int64)
    for j in range(k):
        sub = np.delete(M[:, 1:, :], j, axis=2)
        total += (-1) ** j * M[:, 0, j] * _stack_det(sub)
    return total


def _canonical(a: np.ndarray, b: int):
    g = 0
    for x in a:
        g = gcd(g, int(x))
    g = gcd(g, int(b))
    return tuple(int(x) // g for x in a), int(b) // g


def _brute_facets(P: np.ndarray):
    """Facets (a, b) with a.x <= b of a full-dimensional point set in Z^k, k >= 3."""
    N, k = P.shape
    facets = set()
    combos = itertools.combinations(range(N), k)
    while True:
        chunk = list(itertools.islice(combos, 20000))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.int64)
        base = P[idx[:, 0]]
        D = P[idx[:, 1:]] - base[:, None, :]
        A = _normals(D)
        keep = (A != 0).any(axis=1)
        A, base = A[keep], base[keep]
        if not len(A):
            continue
        B = (A * base).sum(axis=1)
        V = P @ A.T
        le = (V <= B).all(axis=0)
        ge = (V >= B).all(axis=0)
        for t in np.nonzero(le)[0]:
            facets.add(_canonical(A[t], B[t]))
        for t in np.nonzero(ge)[0]:
            facets.add(_canonical(-A[t], -B[t]))
    return sorted(facets)


def _facets_full(P: np.ndarray):
    """Facets of the hull of a full-dimensional point set in Z^k."""
    k = P.shape[1]
    if k == 1:
        return [((1,), int(P[:, 0].max())), ((-1,), -int(P[:, 0].min()))]
    if k == 2:
        vs = _hull2(P)
        out = set()
        for p, q in zip(vs, vs[1:] + vs[:1]):
            a = np.array([q[1] - p[1], p[0] - q[0]], dtype=np.int64)
            out.add(_canonical(a, int(a @ np.array(p))))
        return sorted(out)
    # drop points strictly inside the hull of known extreme points
    known = set()
    dirs = [np.array(d) for d in itertools.product((-1, 0, 1), repeat=k) if any(d)]
    for d in dirs:
        vals = P @ d
        best = np.nonzero(vals == vals.max())[0]
        cand = P[best]
        order = np.lexsort(cand.T[::-1])
        known.add(tuple(cand[order[-1]].tolist()))
    K = np.array(sorted(known), dtype=np.int64)
    if len(K) > k and _rank((K[1:] - K[0]).tolist()) == k and len(K) < len(P):
        inner = _brute_facets(K)
        A = np.array([a for a, _ in inner], dtype=np.int64)
        B = np.array([b for _, b in inner], dtype=np.int64)
        strict = (P @ A.T < B).all(axis=1)
        P = np.concatenate([K, P[~strict]])
        P = np.unique(P, axis=0)
    return _brute_facets(P)


def _vertices_from_facets(P: np.ndarray, facets):
    A = np.array([a for a, _ in facets], dtype=np.int64)
    B = np.array([b for _, b in facets], dtype=np.int64)
    tight = (P @ A.T) == B
    k = P.shape[1]
    out = []
    for i in range(len(P)):
        rows = A[tight[i]]
        if len(rows) >= k and _rank(rows.tolist()) == k:
            out.append(tuple(int(x) for x in P[i]))
    return sorted(set(out))


def _volume_full(V: np.ndarray) -> Fraction:
    """Euclidean volume of the hull of a full-dimensional point set in Z^k."""
    k = V.shape[1]
    if k == 1:
        return Fraction(int(V[:, 0].max() - V[:, 0].min()))
    if k == 2:
        vs = _hull2(V)
        area2 = sum(p[0] * q[1] - q[0] * p[1] for p, q in zip(vs, vs[1:] + vs[:1]))
        return Fraction(abs(area2), 2)
    facets = _facets_full(V)
    verts = np.array(_vertices_from_facets(V, facets), dtype=np.int64)
    o = verts[0]
    total = Fraction(0)
    for a, b in facets:
        a = np.array(a, dtype=np.int64)
        h = b - int(a @ o)
        if h == 0:
            continue
        on = verts[(verts @ a) == b]
        i = int(np.argmax(np.abs(a)))
        proj = np.delete(on, i, axis=1)
        total += Fraction(h, abs(int(a[i]))) * _volume_full(proj)
    return total / k


# ---------------------------------------------------------------- polytopes


@dataclass(frozen=True)
class LatticePolytope:
    ambient_dim: int
    vertices: tuple
    dim: int

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=np.int64).reshape(len(self.vertices), self.ambient_dim)

    @cached_property
    def chart(self):
        return lattice_chart(self.array)

    def lattice_coords(self, pts=None) -> np.ndarray:
        p0, U, j = self.chart
        X = self.array if pts is None else np.asarray(pts, dtype=np.int64)
        return (X - p0) @ U[:, :j]

    @cached_property
    def facets(self):
        """Facets in lattice coordinates (a, b) meaning a.y <= b."""
        if self.dim == 0:
            return []
        return _facets_full(self.lattice_coords())

    def to_json(self):
        return {"dim": self.ambient_dim, "points": [list(v) for v in self.vertices], "affine_dim": self.dim}

    def __add__(self, other):
        return minkowski_sum(self, other)

    def scale(self, t: int) -> LatticePolytope:
        if t < 0:
            raise InputError("negative dilation")
        if t == 0:
            return LatticePolytope(self.ambient_dim, ((0,) * self.ambient_dim,), 0)
        return LatticePolytope(self.ambient_dim, tuple(tuple(t * x for x in v) for v in self.vertices), self.dim)


def hull(points) -> LatticePolytope:
    """Extreme points of the convex hull of a nonempty set of integer points."""
    P = np.asarray(list(points), dtype=np.int64)
    if P.size == 0:
        raise InputError("hull of an empty point set")
    if P.ndim != 2:
        raise DimensionError("points must share one dimension")
    P = np.unique(P, axis=0)
    n = P.shape[1]
    p0, U, j = lattice_chart(P)
    if j == 0:
        return LatticePolytope(n, (tuple(int(x) for x in P[0]),), 0)
    Y = (P - p0) @ U[:, :j]
    facets = _facets_full(Y)
    vy = set(_vertices_from_facets(Y, facets))
    verts = sorted(tuple(int(x) for x in P[i]) for i in range(len(P)) if tuple(int(x) for x in Y[i]) in vy)
    return LatticePolytope(n, tuple(verts), j)


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionError("Minkowski sum of polytopes in different dimensions")
    sums = (P.array[:, None, :] + Q.array[None, :, :]).reshape(-1, P.ambient_dim)
    return hull(sums)


def volume(P: LatticePolytope, strict: bool = False) -> Fraction:
    """Euclidean volume in the ambient space; 0 for lower-dimensional polytopes."""
    if P.dim < P.ambient_dim:
        if strict:
            raise DegenerateVolume(f"polytope has dimension {P.dim} < {P.ambient_dim}")
        return Fraction(0)
    return _volume_full(P.array)


def normalized_volume(P: LatticePolytope) -> Fraction:
    """Volume measured in the affine lattice of P (a point has volume 1)."""
    if P.dim == 0:
        return Fraction(1)
    return _volume_full(P.lattice_coords())


def lattice_points(P: LatticePolytope, t: int = 1) -> int:
    """Number of points of t*P in its affine lattice."""
    if P.dim == 0:
        return 1
    Y = P.lattice_coords()
    A = np.array([a for a, _ in P.facets], dtype=np.int64)
    B = np.array([b for _, b in P.facets], dtype=np.int64) * t
    lo, hi = t * Y.min(axis=0), t * Y.max(axis=0)
    axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    return int(((grid @ A.T) <= B).all(axis=1).sum())


def ehrhart_polynomial(P: LatticePolytope) -> Poly:
    """Fit t -> #(tP in the lattice) for t = 0..dim and check it at t = dim + 1."""
    j = P.dim
    vals = [lattice_points(P, t) for t in range(j + 1)]
    poly = interpolate_grid(vals, (0,))
    if poly(j + 1) != lattice_points(P, j + 1):
        raise InvariantFailure("Ehrhart fit failed validation")
    return poly


def ehrhart_volume(P: LatticePolytope) -> Fraction:
    """Normalized volume read off the leading Ehrhart coefficient."""
    return ehrhart_polynomial(P).coeff((P.dim,))


def check_volume(P: LatticePolytope) -> bool:
    return normalized_volume(P) == ehrhart_volume(P)


# ---------------------------------------------------------------- mixed volumes


def _sum_all(polys) -> LatticePolytope:
    out = polys[0]
    for Q in polys[1:]:
        out = minkowski_sum(out, Q)
    return out


def mixed_volume(polys, ehrhart_check: bool = False) -> Fraction:
    """MV_n by inclusion-exclusion over nonempty subsets."""
    polys = list(polys)
    if not polys:
        raise InputError("need at least one polytope")
    n = polys[0].ambient_dim
    if len(polys) != n:
        raise InputError(f"mixed volume in dimension {n} needs exactly {n} polytopes, got {len(polys)}")
    if any(P.ambient_dim != n for P in polys):
        raise DimensionError("polytopes live in different dimensions")
    total = Fraction(0)
    for h in range(1, n + 1):
        for S in itertools.combinations(range(n), h):
            Q = _sum_all([polys[i] for i in S])
            v = volume(Q)
            if ehrhart_check and Q.dim == n and v != ehrhart_volume(Q):
                raise InvariantFailure("triangulation and Ehrhart volumes disagree")
            total += (-1) ** (n - h) * v
    return total


def mixed_volume_multi(polys, alpha) -> Fraction:
    """MV_n(Q_alpha): Q_i repeated alpha_i times."""
    seq = [P for P, a in zip(polys, alpha) for _ in range(a)]
    return mixed_volume(seq)


def _scaled_sum(polys, lam) -> LatticePolytope:
    return _sum_all([P.scale(int(x)) for P, x in zip(polys, lam)])


@dataclass
class VolumePolynomial:
    poly: Poly
    mixed: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "coefficients": self.poly.to_json()["terms"],
            "mixed_volumes": [{"alpha": list(a), "num": v.numerator, "den": v.denominator} for a, v in sorted(self.mixed.items())],
        }


def minkowski_volume_polynomial(polys, check: bool = True) -> VolumePolynomial:
    """V_n(lambda_0 Q_0 + ... + lambda_s Q_s) as an exact polynomial in lambda."""
    polys = list(polys)
    n = polys[0].ambient_dim
    k = len(polys)
    vals = np.empty((n + 1,) * k, dtype=object)
    for lam in np.ndindex(*vals.shape):
        vals[lam] = volume(_scaled_sum(polys, lam))
    poly = interpolate_grid(vals, (0,) * k)
    if any(sum(e) != n for e in poly.terms):
        raise InvariantFailure("volume polynomial is not homogeneous of degree n")
    out = VolumePolynomial(poly)
    if check:
        from .hilbert import compositions

        for alpha in compositions(n, k):
            mv = mixed_volume_multi(polys, alpha)
            out.mixed[alpha] = mv
            if poly.coeff(alpha) * prod(factorial(a) for a in alpha) != mv:
                raise InvariantFailure(f"volume polynomial coefficient at {alpha} disagrees with the mixed volume")
    return out


def simplex(n: int, d: int = 1) -> LatticePolytope:
    """d times the standard simplex conv(0, e_1, ..., e_n)."""
    pts = [(0,) * n] + [tuple(d if j == i else 0 for j in range(n)) for i in range(n)]
    return hull(pts)


def cube(n: int, side: int = 1) -> LatticePolytope:
    return hull(list(itertools.product((0, side), repeat=n)))


def newton_polytope(support) -> LatticePolytope:
    return hull(support)


def bernstein_bound(supports) -> int:
    """Mixed volume of the Newton polytopes of n supports in dimension n."""
    polys = [newton_polytope(S) for S in supports]
    mv = mixed_volume(polys)
    if mv.denominator != 1:
        raise FitCorruption(f"mixed volume {mv} of lattice polytopes is not an integer")
    return int(mv)


# ---------------------------------------------------------------- bridge


def degree_hyperplane_projection(P: LatticePolytope) -> LatticePolytope:
    """Drop x_0 from a polytope lying in a hyperplane sum(x) = const.

    This is a lattice isomorphism of the hyperplane onto Z^n (after a
    translation), so normalized volumes are preserved.
    """
    sums = {sum(v) for v in P.vertices}
    if len(sums) != 1:
        raise InputError("polytope does not lie in a degree hyperplane")
    return hull([v[1:] for v in P.vertices])


@dataclass
class BridgeReport:
    mixed: dict
    volumes: dict
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {
            "mixed_multiplicities": [{"alpha": list(a), "value": v} for a, v in sorted(self.mixed.items())],
            "mixed_volumes": [{"alpha": list(a), "num": v.numerator, "den": v.denominator} for a, v in sorted(self.volumes.items())],
            "checks": [c.to_json() for c in self.checks],
        }


def mixed_mult_volume_bridge(ideals, config=None, all_alpha: bool = True) -> BridgeReport:
    """Compare e_alpha(m | J_1..J_n) with lattice-normalized mixed volumes of Newton polytopes.

    Each J_i lives in n + 1 variables and is generated in a single degree.
    The slot of m uses the standard simplex, the Newton polytope of m.
    """
    from .hilbert import compositions, diagonal_formula, diagonal_multiplicity_fn
    from .multiplicities import Check, IdealTuple, _rij_function, mixed_multiplicities

    ideals = list(ideals)
    ring = ideals[0].ring
    n = ring.num_vars - 1
    if len(ideals) != n:
        raise InputError(f"need {n} ideals in {n + 1} variables")
    for J in ideals:
        if len({sum(g) for g in J.gens}) != 1:
            raise InputError("each ideal must be generated in a single degree")
    T = IdealTuple(ring.maximal(), ideals)
    mm = mixed_multiplicities(T, config)
    polys = [degree_hyperplane_projection(newton_polytope(ring.maximal().gens))]
    polys += [degree_hyperplane_projection(newton_polytope(J.gens)) for J in ideals]
    target = (0,) + (1,) * n
    alphas = list(compositions(n, n + 1)) if all_alpha else [target]
    vols, checks = {}, []
    for alpha in alphas:
        mv = mixed_volume_multi(polys, alpha)
        vols[alpha] = mv
        checks.append(
            Check(
                f"bridge {alpha}",
                "Trung-Verma mixed multiplicity = mixed volume (lattice normalized)",
                mv == mm[alpha],
                {"e": mm[alpha], "mv": str(mv)},
            )
        )
    # diagonal subalgebras: fitted multiplicity, mixed-multiplicity formula and n! V_n(lambda Q)
    h = _rij_function(T)
    for lam in [(1,) * (n + 1), tuple(range(1, n + 2))]:
        fit = diagonal_multiplicity_fn(h, lam, n, config)
        formula = diagonal_formula(mm, lam)
        geometric = factorial(n) * volume(_scaled_sum(polys, lam))
        checks.append(
            Check(
                f"diagonal {lam}",
                "e(R^lambda) = n! sum e_alpha lambda^alpha/alpha! = n! V_n(lambda Q) (lattice normalized)",
                fit == formula == geometric,
                {"fit": fit, "formula": str(formula), "volume": str(geometric)},
            )
        )
    return BridgeReport(dict(mm.entries), vols, checks)
