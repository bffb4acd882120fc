"""Rees algebras A[It] with the bigrading deg x_i = (1, 0), deg (f_j t) = (deg f_j, 1).

The Hilbert function is a polynomial only on a cone u >= d*v + u0, v >= v0
with d the largest generator degree, so all fits here use cone regions and
the mixed multiplicities may be negative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .errors import FitCorruption, InvariantFailure, PreconditionError
from .hilbert import (
    FitConfig,
    GradedPresentation,
    HilbertPolynomial,
    MixedMultiplicityVector,
    extract_mixed_multiplicities,
    fit_hilbert,
    table_from,
)
from .closed_forms import embedded_degree_formula
from .monomial import (
    MonomialIdeal,
    RingContext,
    contains_many,
    krull_dim,
    monomials_of_degree,
    power,
    saturate,
)
from .multiplicities import Check, samuel_multiplicity
from .polynomial import Poly


def _in_degree(I: MonomialIdeal, u: int, base) -> int:
    """Monomials of degree u in I and outside base."""
    if u < 0 or I.is_zero():
        return 0
    mons = monomials_of_degree(I.n, u)
    mask = contains_many(I, mons)
    if base is not None and not base.is_zero():
        mask &= ~contains_many(base, mons)
    return int(mask.sum())


def rees_function(I: MonomialIdeal, base=None):
    """(u, v) -> dim_k (I^v)_u modulo base."""
    return lambda p: _in_degree(power(I, int(p[1])), int(p[0]), base)


def rees_hilbert(I: MonomialIdeal, box, base=None):
    lower, upper = box
    return table_from(rees_function(I, base), lower, upper)


def generator_degrees(I: MonomialIdeal) -> list[int]:
    return sorted(sum(g) for g in I.gens)


@dataclass
class ReesBigradedData:
    I: MonomialIdeal
    degrees: list
    slope: int
    s: int
    polynomial: HilbertPolynomial
    mixed: list
    rho: int
    e_top_expected: int
    checks: list = field(default_factory=list)

    def to_json(self):
        return {
            "ideal": str(self.I),
            "generator_degrees": self.degrees,
            "cone": {"d": self.slope, "u0": self.polynomial.region.u0, "v0": self.polynomial.region.v0},
            "s": self.s,
            "polynomial": self.polynomial.to_json(),
            "e": self.mixed,
            "rho": self.rho,
            "checks": [c.to_json() for c in self.checks],
        }


def rees_mixed_multiplicities(I: MonomialIdeal, base=None, config: FitConfig | None = None) -> ReesBigradedData:
    """Fit P_{A[It]} on a cone and read e_0..e_s, s = dim A/0:I^infinity - 1."""
    if I.is_zero() or I.is_unit():
        raise PreconditionError("Rees data needs a nonzero proper ideal")
    b = I.ring.zero() if base is None else base
    sat = saturate(b, I)
    s = krull_dim(sat) - 1
    degs = generator_degrees(I)
    d = max(degs)
    hp = fit_hilbert(rees_function(I, base), 2, s, kind="cone", slope=d, config=config)
    if s < 0:
        return ReesBigradedData(I, degs, d, s, hp, [], -1, 0)
    mm = extract_mixed_multiplicities(hp, s)
    e = [mm[(i, s - i)] for i in range(s + 1)]
    nonzero = [i for i, x in enumerate(e) if x]
    rho = max(nonzero) if nonzero else -1
    top = samuel_multiplicity(I.ring.maximal(), sat, config)
    checks = [
        Check("top coefficient", "Hoang-Trung e_s(A[It]) = e(A/0:I^inf)", e[s] == top, {"e_s": e[s], "expected": top}),
        Check("leading sign", "Hoang-Trung e_rho > 0", rho >= 0 and e[rho] > 0, {"rho": rho}),
        Check("degree", "Hoang-Trung deg P = deg_u P = s", hp.total_degree == s and hp.partial_degree(0) == s, {"total": str(hp.total_degree), "deg_u": str(hp.partial_degree(0))}),
    ]
    return ReesBigradedData(I, degs, d, s, hp, e, rho, top, checks)


def sdim_flag(data: ReesBigradedData, base=None, config=None) -> Check:
    """Compare deg_u P with the growth degree of a single v-column."""
    region = data.polynomial.region
    t = region.v0 + 1
    f = rees_function(data.I, base)
    col = fit_hilbert(lambda u: f((u[0] + data.slope * t, t)), 1, max(data.s, 0), config=config)
    grow = col.total_degree
    return Check("sdim", "deg_u P = sdim R", grow == data.polynomial.partial_degree(0), {"column_degree": str(grow), "deg_u": str(data.polynomial.partial_degree(0))})


def ring_hilbert_polynomial(ring: RingContext, base=None, config=None) -> HilbertPolynomial:
    """Hilbert polynomial of k[x]/base in the standard grading."""
    b = ring.zero() if base is None else base
    d = krull_dim(b)
    return fit_hilbert(lambda u: _in_degree(ring.unit(), u[0], b), 1, d - 1, config=config)


def quotient_hilbert_polynomial(data: ReesBigradedData, v: int, base=None, config=None) -> Poly:
    """P_{A/I^v}(u) = P_A(u) - P_{A[It]}(u, v), for v in the validated region."""
    region = data.polynomial.region
    if v < region.v0:
        raise PreconditionError(f"v = {v} is below the validated region v >= {region.v0}")
    PA = ring_hilbert_polynomial(data.I.ring, base, config).poly
    P = data.polynomial.poly
    at_v = P.substitute([Poly.var(1, 0), Poly.const(1, v)])
    return PA - at_v


def quotient_degree_values(I: MonomialIdeal, v: int, us, base=None) -> list[int]:
    """Direct values of dim_k (A/I^v)_u."""
    Iv = power(I, v)
    out = []
    for u in us:
        total = _in_degree(I.ring.unit(), u, base)
        out.append(total - _in_degree(Iv, u, base))
    return out


def embedded_degree(data: ReesBigradedData, c: int, e: int, base=None, config=None) -> dict:
    """deg V_{c,e} from the mixed multiplicities, checked against a diagonal fit."""
    if e < 1:
        raise PreconditionError("the embedding needs e >= 1")
    if c <= data.slope * e:
        raise PreconditionError(f"need c > d*e = {data.slope * e}")
    formula = embedded_degree_formula(data.mixed, c, e)
    if formula <= 0:
        raise InvariantFailure(f"embedded degree {formula} is not positive")
    f = rees_function(data.I, base)
    s = data.s
    hp = fit_hilbert(lambda t: f((c * t[0], e * t[0])), 1, s, config=config)
    diag = hp.poly.coeff((s,)) * factorial(s)
    if diag.denominator != 1:
        raise FitCorruption(f"diagonal multiplicity {diag} is not an integer")
    return {
        "c": c,
        "e": e,
        "formula": formula,
        "diagonal": int(diag),
        "check": Check("embedded degree", "deg V_{c,e} = sum binom(s,i) e_i c^i e^{s-i}", formula == int(diag), {}),
    }


def free_bigraded_presentation(m: int, degrees) -> GradedPresentation:
    """k[X_1..X_m, Y_1..Y_n], deg X = (1, 0), deg Y_j = (d_j, 1)."""
    grading = [(1, 0)] * m + [(int(d), 1) for d in degrees]
    return GradedPresentation(RingContext(len(grading), tuple(grading)))


def nonstandard_mixed(P: GradedPresentation, degree: int, config=None) -> MixedMultiplicityVector:
    """Cone fit for a bigrading whose generators have degrees (1, 0) and (d_j, 1)."""
    if P.s != 2:
        raise PreconditionError("cone fits need a bigrading")
    slope = max(g[0] for g in P.ring.grading if g[1] > 0) if any(g[1] for g in P.ring.grading) else 0
    hp = fit_hilbert(P.hilbert, 2, degree, kind="cone", slope=slope, config=config)
    return extract_mixed_multiplicities(hp, degree)


def free_bigraded_mixed(m: int, degrees, config=None) -> list[int]:
    """Fitted e_0..e_{m+n-2} of the free bigraded ring, in power-basis normalization."""
    P = free_bigraded_presentation(m, degrees)
    r = m + len(degrees) - 2
    mm = nonstandard_mixed(P, r, config)
    return [mm[(i, r - i)] for i in range(r + 1)]
