"""Mixed multiplicities and blow-up multiplicities of monomial ideals.

The ambient ring is A = k[x1..xn]/Q localized at the variables, with Q a
monomial ideal (zero by default).  Every length is a count of monomials: the
length of (K + Q)/(M + Q) for monomial ideals M inside K is the number of
monomials of K outside M + Q.  Each invariant is read off an exact polynomial
fit of such counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import FitCorruption, InfiniteLength, InputError, PreconditionError, RingMismatch
from .hilbert import (
    FitConfig,
    MixedMultiplicityVector,
    compositions,
    extract_mixed_multiplicities,
    fit_hilbert,
    total_grading_multiplicity_fn,
)
from .monomial import (
    MonomialIdeal,
    count_difference,
    height_in,
    ideal_sum,
    is_primary_to_m,
    krull_dim,
    order,
    power,
    product,
    saturate,
)
from .polynomial import NEG_INF

import numpy as np


@dataclass
class Check:
    """One line of an identity ledger."""

    name: str
    anchor: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "anchor": self.anchor, "passed": bool(self.passed), "detail": self.detail}


# ---------------------------------------------------------------- helpers


def _base(I: MonomialIdeal, base):
    return I.ring.zero() if base is None else base


def ring_dim(I: MonomialIdeal, base=None) -> int:
    """dim A for A = k[x]/base."""
    return krull_dim(_base(I, base))


def is_primary_in(I: MonomialIdeal, base=None) -> bool:
    """Whether I is primary to the maximal ideal of k[x]/base."""
    if base is None or base.is_zero():
        return is_primary_to_m(I)
    return krull_dim(ideal_sum(I, base)) == 0


def _count(K: MonomialIdeal, M: MonomialIdeal, base) -> int:
    """Monomials of K outside M + base."""
    n = K.n
    m = M.array if base is None or base.is_zero() else np.concatenate([M.array, base.array])
    return count_difference(K.array, m, n)


def _mu(K: MonomialIdeal, base) -> int:
    """Minimal generators of K that survive modulo base."""
    if base is None or base.is_zero():
        return len(K.gens)
    return sum(1 for g in K.gens if not base.__contains__(g))


class PowerProducts:
    """Memoized I_0^{u_0} I_1^{u_1} ... built one factor at a time."""

    def __init__(self, ideals):
        self.ideals = list(ideals)
        k = len(self.ideals)
        self.cache = {(0,) * k: self.ideals[0].ring.unit()}

    def __call__(self, u) -> MonomialIdeal:
        u = tuple(int(x) for x in u)
        hit = self.cache.get(u)
        if hit is not None:
            return hit
        # walk down along the largest coordinate to reuse earlier products
        i = max(range(len(u)), key=lambda j: u[j])
        prev = list(u)
        prev[i] -= 1
        out = product(self(tuple(prev)), self.ideals[i])
        self.cache[u] = out
        return out


def _check_ring(*ideals):
    ring = ideals[0].ring
    for J in ideals:
        if J is not None and J.ring != ring:
            raise RingMismatch("ideals live in different rings")


@dataclass
class IdealTuple:
    """(I | J_1, ..., J_s) with I primary to the maximal ideal of A = k[x]/base."""

    primary: MonomialIdeal
    others: list
    base: MonomialIdeal | None = None

    def __post_init__(self):
        self.others = list(self.others)
        _check_ring(self.primary, *self.others, *([self.base] if self.base is not None else []))
        if not is_primary_in(self.primary, self.base):
            raise PreconditionError("the first ideal must be primary to the maximal ideal")
        b = _base(self.primary, self.base)
        for J in self.others:
            if J.is_unit() or ideal_sum(J, b) == b:
                raise PreconditionError("the other ideals must be nonzero and proper in A")
        if self.base is not None and self.base.is_unit():
            raise PreconditionError("the base ring is zero")

    @property
    def s(self):
        return len(self.others)

    def joint(self) -> MonomialIdeal:
        out = self.others[0]
        for J in self.others[1:]:
            out = product(out, J)
        return out

    def dim(self) -> int:
        """d = dim A/0:J^infinity for J the product of the others."""
        return krull_dim(saturate(_base(self.primary, self.base), self.joint()))


# ---------------------------------------------------------------- lengths and fits


def bhattacharya_length(ideals, u, base=None) -> int:
    """Length of A/I_1^{u_1} ... I_k^{u_k} for ideals primary to the maximal ideal."""
    ideals = list(ideals)
    if len(ideals) != len(u):
        raise InputError("one exponent per ideal is required")
    K = ideals[0].ring.unit()
    for J, k in zip(ideals, u):
        K = product(K, power(J, int(k)))
    try:
        return _count(K.ring.unit(), K, base)
    except InfiniteLength as exc:
        raise InfiniteLength("lengths need ideals primary to the maximal ideal") from exc


def samuel_multiplicity(I: MonomialIdeal, base=None, config: FitConfig | None = None) -> int:
    """e(I, A): d! times the leading coefficient of t -> length A/I^t."""
    if not is_primary_in(I, base):
        raise InfiniteLength("Samuel multiplicity needs an ideal primary to the maximal ideal")
    d = ring_dim(I, base)
    hp = fit_hilbert(lambda t: _count(I.ring.unit(), power(I, t[0]), base), 1, d, config=config)
    e = hp.poly.coeff((d,)) * factorial(d)
    if e.denominator != 1 or e <= 0:
        raise FitCorruption(f"Samuel multiplicity came out as {e}")
    return int(e)


def staircase_volume_multiplicity(I: MonomialIdeal) -> int:
    """n! times the volume of the region under the Newton polyhedron of I.

    The Newton polyhedron is cut by the box [0, B]^n with B at least every
    generator coordinate; the cut body is the hull of the generators with
    every subset of coordinates raised to B.
    """
    from .polytope import hull, volume

    if not is_primary_to_m(I):
        raise InfiniteLength("staircase volume needs an ideal primary to the maximal ideal")
    n = I.n
    B = max(max(g) for g in I.gens)
    pts = set()
    for g in I.gens:
        for mask in range(1 << n):
            pts.add(tuple(B if mask >> i & 1 else c for i, c in enumerate(g)))
    inside = volume(hull(sorted(pts)))
    e = (Fraction(B) ** n - inside) * factorial(n)
    if e.denominator != 1:
        raise FitCorruption(f"non-integral staircase volume {e}")
    return int(e)


def analytic_spread(J: MonomialIdeal, base=None, config: FitConfig | None = None) -> int:
    """dim of the fiber ring: one more than the degree of n -> mu(J^n)."""
    b = _base(J, base)
    if J.is_unit() or ideal_sum(J, b) == b:
        raise PreconditionError("analytic spread needs a nonzero proper ideal")
    d = ring_dim(J, base)
    hp = fit_hilbert(lambda t: _mu(power(J, t[0]), base), 1, max(d - 1, 0), config=config)
    deg = hp.total_degree
    return 0 if deg == NEG_INF else int(deg) + 1


def mixed_multiplicities(T: IdealTuple, config: FitConfig | None = None) -> MixedMultiplicityVector:
    """e_alpha(I | J_1..J_s) from the fitted Hilbert polynomial of R(I|J)."""
    d = T.dim()
    hp = fit_hilbert(_rij_function(T), T.s + 1, d - 1, config=config)
    return extract_mixed_multiplicities(hp, d - 1)


def _rij_function(T: IdealTuple):
    """u -> length of I^{u_0} J^{u'} / I^{u_0 + 1} J^{u'} in A."""
    pp = PowerProducts([T.primary] + T.others)
    base = T.base

    def h(u):
        K = pp(u)
        nxt = pp((u[0] + 1,) + tuple(u[1:]))
        return _count(K, nxt, base)

    return h


def rij_total_check(T: IdealTuple, mm: MixedMultiplicityVector | None = None, config=None) -> Check:
    """Dade: e(R(I|J)) in the total grading equals the sum of all e_alpha."""
    mm = mm or mixed_multiplicities(T, config)
    r = mm.total_degree
    total = sum(mm.entries.values())
    if r == NEG_INF:
        return Check("total grading", "Dade total-grading identity", total == 0, {"sum": total})
    h = _rij_function(T)
    deg = r + T.s
    hp = fit_hilbert(lambda t: sum(h(u) for u in compositions(t[0], T.s + 1)), 1, deg, config=config)
    e = hp.poly.coeff((deg,)) * factorial(deg)
    return Check(
        "total grading",
        "Dade total-grading identity e(R) = sum e_alpha",
        e == total,
        {"e_total": str(e), "sum": total},
    )


def mixed_sequence(I: MonomialIdeal, J: MonomialIdeal, base=None, config=None) -> list[int]:
    """[e_0(I|J), ..., e_{d-1}(I|J)] with e_j the coefficient indexed by J's exponent j."""
    mm = mixed_multiplicities(IdealTuple(I, [J], base), config)
    r = mm.total_degree
    if r == NEG_INF:
        return []
    return [mm[(r - j, j)] for j in range(r + 1)]


def bhattacharya_mixed(I: MonomialIdeal, J: MonomialIdeal, base=None, config=None) -> list[int]:
    """[e_0(I|J), ..., e_d(I|J)] from the fit of (u, v) -> length A/I^u J^v."""
    for K in (I, J):
        if not is_primary_in(K, base):
            raise InfiniteLength("both ideals must be primary to the maximal ideal")
    d = ring_dim(I, base)
    pp = PowerProducts([I, J])
    unit = I.ring.unit()
    hp = fit_hilbert(lambda u: _count(unit, pp(u), base), 2, d, config=config)
    mm = extract_mixed_multiplicities(hp, d)
    return [mm[(d - i, i)] for i in range(d + 1)]


def teissier_mixed(ideals, base=None, config=None) -> MixedMultiplicityVector:
    """Mixed multiplicities of several primary ideals via length A/I_1^{u_1}...I_k^{u_k}."""
    ideals = list(ideals)
    for K in ideals:
        if not is_primary_in(K, base):
            raise InfiniteLength("all ideals must be primary to the maximal ideal")
    d = ring_dim(ideals[0], base)
    pp = PowerProducts(ideals)
    unit = ideals[0].ring.unit()
    hp = fit_hilbert(lambda u: _count(unit, pp(u), base), len(ideals), d, config=config)
    return extract_mixed_multiplicities(hp, d)


# ---------------------------------------------------------------- rigidity


def rho(mm_or_list) -> int:
    """Largest index with a positive mixed multiplicity, or -1."""
    seq = mm_or_list if isinstance(mm_or_list, list) else None
    if seq is None:
        r = mm_or_list.total_degree
        seq = [mm_or_list[(r - j, j)] for j in range(r + 1)]
    pos = [i for i, e in enumerate(seq) if e > 0]
    return max(pos) if pos else -1


def rigidity_check(T: IdealTuple, mm: MixedMultiplicityVector | None = None, config=None) -> list[Check]:
    """Positivity bracket for pairs and downward closure for tuples."""
    mm = mm or mixed_multiplicities(T, config)
    checks = []
    r = mm.total_degree
    negative = [a for a, e in mm.entries.items() if e < 0]
    checks.append(Check("nonnegative", "standard multigraded mixed multiplicities", not negative, {"negative": [list(a) for a in negative]}))
    if T.s == 1:
        J = T.others[0]
        seq = [mm[(r - j, j)] for j in range(r + 1)]
        p = rho(seq)
        h = height_in(J, T.base)
        sp = analytic_spread(J, T.base, config)
        checks.append(Check("rho bracket", "Trung rigidity (height J - 1 <= rho <= s(J) - 1)", h - 1 <= p <= sp - 1, {"rho": p, "height": h, "spread": sp}))
        checks.append(Check("positive up to rho", "Trung rigidity (e_i > 0 for i <= rho)", all(e > 0 for e in seq[: p + 1]), {"sequence": seq}))
        if mm.polynomial is not None:
            dj = mm.polynomial.partial_degree(1)
            checks.append(Check("J-degree bound", "Trung degree bound deg_J P < s(J)", dj < sp, {"deg_J": "-inf" if dj == NEG_INF else int(dj), "spread": sp}))
    # downward closure in the J-slots
    bad = []
    for alpha, e in mm.entries.items():
        if e <= 0:
            continue
        for beta in mm.entries:
            if all(b <= a for b, a in zip(beta[1:], alpha[1:])) and mm[beta] <= 0:
                bad.append([list(alpha), list(beta)])
    checks.append(Check("downward closure", "Trung-Verma rigidity (beta <= alpha in the J-slots)", not bad, {"violations": bad[:5]}))
    return checks


def positivity_set(mm: MixedMultiplicityVector) -> list:
    return mm.positive_support()


def order_formula_check(J: MonomialIdeal, config=None) -> Check:
    """e_1(m|J) = o(J) in the polynomial ring, for height J >= 2."""
    h = height_in(J, None)
    if h < 2:
        raise PreconditionError("the order formula needs height J >= 2")
    seq = mixed_sequence(J.ring.maximal(), J, None, config)
    o = order(J)
    return Check("order formula", "Katz-Verma order formula e_1(m|J) = o(J)", seq[1] == o, {"e1": seq[1], "order": o})


# ---------------------------------------------------------------- multiplicity sequence


def _bigraded_m_adic(I: MonomialIdeal, base):
    """(u, v) -> length of (m^u I^v + I^{v+1}) / (m^{u+1} I^v + I^{v+1})."""
    m = I.ring.maximal()
    pp = PowerProducts([m, I])

    def h(u):
        a, b = u
        top = ideal_sum(pp((a, b)), pp((0, b + 1)))
        low = ideal_sum(pp((a + 1, b)), pp((0, b + 1)))
        return _count(top, low, base)

    return h


def _prefix2(h):
    memo = {}

    def S(u):
        a, b = u
        if a < 0 or b < 0:
            return 0
        if (a, b) not in memo:
            # row sums first keep the recursion shallow
            for i in range(a + 1):
                for j in range(b + 1):
                    if (i, j) not in memo:
                        memo[(i, j)] = h((i, j)) + memo.get((i - 1, j), 0) + memo.get((i, j - 1), 0) - memo.get((i - 1, j - 1), 0)
        return memo[(a, b)]

    return S


@dataclass
class MultiplicitySequence:
    values: list
    d: int
    polynomial: object = None

    def to_json(self):
        out = {"d": self.d, "values": list(self.values)}
        if self.polynomial is not None:
            out["polynomial"] = self.polynomial.to_json()
        return out


def multiplicity_sequence(I: MonomialIdeal, base=None, config=None) -> MultiplicitySequence:
    """c_0..c_d from the doubly summed Hilbert function of gr_{mG}(gr_I A)."""
    b = _base(I, base)
    if I.is_unit() or ideal_sum(I, b) == b:
        raise PreconditionError("multiplicity sequence needs a nonzero proper ideal")
    d = ring_dim(I, base)
    S = _prefix2(_bigraded_m_adic(I, base))
    hp = fit_hilbert(S, 2, d, config=config)
    vals = []
    for i in range(d + 1):
        c = hp.poly.coeff((i, d - i)) * factorial(i) * factorial(d - i)
        if c.denominator != 1 or c < 0:
            raise FitCorruption(f"c_{i} came out as {c}")
        vals.append(int(c))
    return MultiplicitySequence(vals, d, hp)


def multiplicity_sequence_support_check(I: MonomialIdeal, seq: MultiplicitySequence | None = None, base=None, config=None) -> Check:
    """Achilles-Manaresi vanishing: c_j = 0 for j < d - s(I) and j > dim A/I."""
    seq = seq or multiplicity_sequence(I, base, config)
    d = seq.d
    s = analytic_spread(I, base, config)
    r = krull_dim(ideal_sum(I, _base(I, base)))
    bad = [j for j, c in enumerate(seq.values) if c and (j < d - s or j > r)]
    return Check(
        "multiplicity sequence support",
        "Achilles-Manaresi vanishing",
        not bad,
        {"values": seq.values, "spread": s, "dim A/I": r, "outside": bad},
    )


def j_multiplicity(I: MonomialIdeal, base=None, config=None) -> int:
    return multiplicity_sequence(I, base, config).values[0]


def gm_multiplicity(I: MonomialIdeal, base=None, config=None) -> int:
    """e(G_M) for G = gr_I(A) and M its maximal homogeneous ideal.

    The n-th power of M modulo the next one has length sum_{u+v=n} H(u, v) with
    H the bigraded function above.
    """
    d = ring_dim(I, base)
    h = _bigraded_m_adic(I, base)
    e, _ = total_grading_multiplicity_fn(h, d, config)
    return e


# ---------------------------------------------------------------- blow-up algebras


def _positive_height(I, base):
    b = _base(I, base)
    if I.is_unit() or ideal_sum(I, b) == b:
        raise PreconditionError("ideal must be nonzero and proper")
    if height_in(I, base) < 1:
        raise PreconditionError("ideal must have positive height")


def rees_algebra_multiplicity(I: MonomialIdeal, base=None, config=None) -> int:
    """e(A[It]_M) through length M^n/M^{n+1} = sum_i mu(m^{n-i} I^i)."""
    _positive_height(I, base)
    d = ring_dim(I, base)
    pp = PowerProducts([I.ring.maximal(), I])

    def f(t):
        n = t[0]
        return sum(_mu(pp((n - i, i)), base) for i in range(n + 1))

    hp = fit_hilbert(f, 1, d, config=config)
    e = hp.poly.coeff((d,)) * factorial(d)
    if e.denominator != 1 or e <= 0:
        raise FitCorruption(f"Rees algebra multiplicity came out as {e}")
    return int(e)


def multi_rees_multiplicity(ideals, base=None, config=None) -> int:
    """e(A[J_1 t_1, ..., J_s t_s]_M) by the same transform with all s + 1 gradings."""
    ideals = list(ideals)
    for J in ideals:
        _positive_height(J, base)
    d = ring_dim(ideals[0], base)
    s = len(ideals)
    pp = PowerProducts([ideals[0].ring.maximal()] + ideals)

    def f(t):
        n = t[0]
        return sum(_mu(pp(u), base) for u in compositions(n, s + 1))

    deg = d + s - 1
    hp = fit_hilbert(f, 1, deg, config=config)
    e = hp.poly.coeff((deg,)) * factorial(deg)
    if e.denominator != 1 or e <= 0:
        raise FitCorruption(f"multi-Rees multiplicity came out as {e}")
    return int(e)


def multi_rees_formula(ideals, base=None, config=None) -> int:
    """Verma's sum of the top mixed multiplicities of (m | J_1, ..., J_s)."""
    ideals = list(ideals)
    m = ideals[0].ring.maximal()
    mm = mixed_multiplicities(IdealTuple(m, ideals, base), config)
    return sum(mm.entries.values())


def extended_rees_multiplicity(I: MonomialIdeal, base=None, config=None) -> int:
    """Katz-Verma: (1/2^d)[e(m^2 + I) + sum_j 2^j e_j(m^2 + I | I)]."""
    from .closed_forms import katz_verma_rhs

    _positive_height(I, base)
    d = ring_dim(I, base)
    front = ideal_sum(power(I.ring.maximal(), 2), I)
    e_front = samuel_multiplicity(front, base, config)
    seq = mixed_sequence(front, I, base, config)
    seq = (seq + [0] * d)[:d]
    val = katz_verma_rhs(e_front, seq, d)
    if val.denominator != 1:
        raise FitCorruption(f"extended Rees multiplicity {val} is not an integer")
    return int(val)


def stuckrad_vogel_degrees(I: MonomialIdeal, base=None, config=None) -> dict:
    """deg v_i = e_{i-1}(m|I) - e_i(m|I) for i = 1..d; indices outside 0..d-1 read as 0."""
    seq = mixed_sequence(I.ring.maximal(), I, base, config)
    d = ring_dim(I, base)

    def e(i):
        return seq[i] if 0 <= i < len(seq) else 0

    degs = [e(i - 1) - e(i) for i in range(1, d + 1)]
    return {
        "e": seq,
        "degrees": degs,
        "negative": [i + 1 for i, x in enumerate(degs) if x < 0],
        "convention": "e_i read as 0 outside 0..d-1",
    }


# ---------------------------------------------------------------- Milnor numbers


@dataclass
class MilnorSequence:
    exponents: tuple
    values: list  # mu^(0), ..., mu^(n+1)

    @property
    def star(self):
        """(mu^(n+1), ..., mu^(0))."""
        return tuple(reversed(self.values))

    def to_json(self):
        return {"exponents": list(self.exponents), "mu": list(self.values), "mu_star": list(self.star)}


def milnor_sequence(exponents, config=None) -> MilnorSequence:
    """Milnor numbers of general plane sections of x_0^{a_0} + ... + x_n^{a_n}."""
    from .monomial import pure_powers, RingContext

    a = tuple(int(x) for x in exponents)
    if not a or any(x < 2 for x in a):
        raise InputError("Brieskorn exponents must all be at least 2")
    ring = RingContext(len(a))
    J = pure_powers(ring, [x - 1 for x in a])
    seq = mixed_sequence(ring.maximal(), J, None, config)
    top = samuel_multiplicity(J, None, config)
    return MilnorSequence(a, seq + [top])


# ---------------------------------------------------------------- inequalities


def _root_lower_upper(x: int, d: int, scale: int):
    """Integer bounds lo/scale <= x^(1/d) <= hi/scale."""
    target = x * scale ** d
    lo = _iroot(target, d)
    hi = lo if lo ** d == target else lo + 1
    return lo, hi


def _iroot(x: int, d: int) -> int:
    """floor(x^(1/d)) exactly."""
    from sympy import integer_nthroot

    return int(integer_nthroot(x, d)[0])


def minkowski_holds(eI: int, eJ: int, eIJ: int, d: int) -> bool:
    """Exact test of e(IJ)^(1/d) <= e(I)^(1/d) + e(J)^(1/d)."""
    for k in range(1, 40):
        scale = 10 ** k
        alo, ahi = _root_lower_upper(eI, d, scale)
        blo, bhi = _root_lower_upper(eJ, d, scale)
        clo, chi = _root_lower_upper(eIJ, d, scale)
        if chi <= alo + blo:
            return True
        if clo > ahi + bhi:
            return False
    import sympy

    lhs = sympy.root(eIJ, d)
    rhs = sympy.root(eI, d) + sympy.root(eJ, d)
    return bool(sympy.simplify(rhs ** d - eIJ) == 0) or bool(lhs <= rhs)


def inequality_suite(I: MonomialIdeal, J: MonomialIdeal, config=None) -> list[Check]:
    """Expansion identity and the Teissier, log-convexity and Minkowski inequalities."""
    d = I.n
    seq = mixed_sequence(I, J, None, config)
    eI = samuel_multiplicity(I, None, config)
    eJ = samuel_multiplicity(J, None, config)
    eIJ = samuel_multiplicity(product(I, J), None, config)
    e = seq + [eJ]
    checks = [Check("e_0 is e(I)", "e_0(I|J) = e(I) for primary J", e[0] == eI, {"e0": e[0], "eI": eI})]
    expansion = sum(comb(d, i) * e[i] for i in range(d + 1))
    checks.append(Check("expansion", "e(IJ) = sum binom(d,i) e_i(I|J)", expansion == eIJ, {"e": e, "eIJ": eIJ}))
    bad = [i for i in range(d + 1) if e[i] ** d > e[0] ** (d - i) * e[d] ** i]
    checks.append(Check("Teissier powers", "e_i^d <= e_0^{d-i} e_d^i", not bad, {"violations": bad}))
    bad = [i for i in range(1, d) if e[i] ** 2 > e[i - 1] * e[i + 1]]
    checks.append(Check("log-convexity", "e_i^2 <= e_{i-1} e_{i+1}", not bad, {"violations": bad}))
    checks.append(Check("Minkowski", "e(IJ)^{1/d} <= e(I)^{1/d} + e(J)^{1/d}", minkowski_holds(eI, eJ, eIJ, d), {"eI": eI, "eJ": eJ, "eIJ": eIJ}))
    return checks


def leading_reduction_check(T: IdealTuple, mm: MixedMultiplicityVector | None = None, config=None) -> Check:
    """e_(r,0,..,0)(I|J) = e(I, A/0:J^infinity) with J the product of the others."""
    mm = mm or mixed_multiplicities(T, config)
    r = mm.total_degree
    if r == NEG_INF:
        return Check("leading coefficient", "e_0(I|J) = e(I, A/0:J^inf)", True, {"note": "empty"})
    sat = saturate(_base(T.primary, T.base), T.joint())
    lead = mm[(r,) + (0,) * T.s]
    e = samuel_multiplicity(T.primary, sat, config)
    return Check("leading coefficient", "e_0(I|J) = e(I, A/0:J^inf)", lead == e, {"e0": lead, "e(I, A/0:J^inf)": e})
