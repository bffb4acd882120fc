"""Seeded random instances and the identity ledger behind the ``suite`` command.

Every family draws its instances from one numpy Generator seeded by the
caller, so a seed fixes the whole ledger.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, prod

import numpy as np

from .closed_forms import (
    bigraded_free_mixed,
    filter_regular_extended,
    filter_regular_rees,
    hoang_mixed,
    htu_rees,
    regular_sequence_rees_mixed,
)
from .hilbert import FitConfig
from .monomial import MonomialIdeal, RingContext, format_ideal, order, pure_powers
from .multiplicities import (
    Check,
    IdealTuple,
    extended_rees_multiplicity,
    gm_multiplicity,
    inequality_suite,
    milnor_sequence,
    mixed_multiplicities,
    mixed_sequence,
    multiplicity_sequence,
    multiplicity_sequence_support_check,
    order_formula_check,
    rees_algebra_multiplicity,
    rigidity_check,
    rij_total_check,
    samuel_multiplicity,
    staircase_volume_multiplicity,
)
from .polytope import (
    hull,
    minkowski_volume_polynomial,
    mixed_volume,
    mixed_volume_multi,
    simplex,
    check_volume,
    volume,
)
from .rees import free_bigraded_mixed, rees_mixed_multiplicities

SIZES = {
    "small": {
        "samuel": 6, "order": 4, "bhattacharya": 4, "rees_verma": 3, "multseq": 3,
        "polytopes": 5, "minkowski": 3, "regular": 5, "milnor": 4, "dade": 3, "positivity": 3, "nonprimary": 3,
    },
    "full": {
        "samuel": 25, "order": 15, "bhattacharya": 15, "rees_verma": 10, "multseq": 10,
        "polytopes": 20, "minkowski": 10, "regular": 6, "milnor": 10, "dade": 8, "positivity": 10, "nonprimary": 10,
    },
}


# ---------------------------------------------------------------- generators


def random_monomial(rng, n: int, max_deg: int, min_deg: int = 1):
    d = int(rng.integers(min_deg, max_deg + 1))
    cuts = np.sort(rng.integers(0, d + 1, size=n - 1))
    parts = np.diff(np.concatenate([[0], cuts, [d]]))
    return tuple(int(x) for x in parts)


def random_primary_ideal(rng, n: int, max_deg: int = 6, extra: int = 3) -> MonomialIdeal:
    """Pure powers plus a few random monomials, all of degree <= max_deg."""
    ring = RingContext(n)
    gens = [tuple(int(rng.integers(1, max_deg + 1)) if j == i else 0 for j in range(n)) for i in range(n)]
    for _ in range(int(rng.integers(0, extra + 1))):
        gens.append(random_monomial(rng, n, max_deg))
    return MonomialIdeal(ring, gens)


def random_ideal(rng, n: int, max_deg: int = 3, count: int = 3) -> MonomialIdeal:
    """A proper nonzero monomial ideal, usually not primary."""
    ring = RingContext(n)
    gens = [random_monomial(rng, n, max_deg) for _ in range(int(rng.integers(1, count + 1)))]
    return MonomialIdeal(ring, gens)


def random_positive_height_ideal(rng, n: int, max_deg: int = 3, count: int = 3) -> MonomialIdeal:
    """A nonzero proper ideal; every nonzero monomial ideal of k[x] has positive height."""
    return random_ideal(rng, n, max_deg, count)


def random_polytope(rng, n: int, points: int = 5, box: int = 3):
    while True:
        pts = rng.integers(0, box + 1, size=(points, n))
        P = hull(pts.tolist())
        if P.dim == n:
            return P


def random_regular_sequence(rng, n: int, max_deg: int = 3) -> MonomialIdeal:
    """Monomials with pairwise disjoint supports, generated by pure powers of distinct variables."""
    k = int(rng.integers(1, n + 1))
    vars_ = sorted(int(v) for v in rng.choice(n, size=k, replace=False))
    exps = [0] * n
    for v in vars_:
        exps[v] = int(rng.integers(1, max_deg + 1))
    return pure_powers(RingContext(n), exps)


# ---------------------------------------------------------------- ledger


@dataclass
class Ledger:
    checks: list = field(default_factory=list)
    cases: list = field(default_factory=list)
    family_of: list = field(default_factory=list)

    def add(self, family: str, inputs: dict, checks, values=None):
        checks = list(checks)
        for c in checks:
            self.checks.append(Check(c.name, c.anchor, c.passed, dict(c.detail, family=family)))
            self.family_of.append(family)
        self.cases.append({
            "family": family,
            "inputs": inputs,
            "values": values or {},
            "passed": all(c.passed for c in checks),
        })

    def summary(self) -> dict:
        out = {}
        for case in self.cases:
            ok, total = out.get(case["family"], (0, 0))
            out[case["family"]] = (ok + int(case["passed"]), total + 1)
        return out

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _id(I) -> str:
    return format_ideal(I)


def _rigidity(ledger: Ledger, family: str, T: IdealTuple, mm, config):
    ledger.add(family + "/rigidity", {"I": _id(T.primary), "J": [_id(J) for J in T.others]}, rigidity_check(T, mm, config))


# ---------------------------------------------------------------- families


def samuel_family(rng, count, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 6 if n == 2 else 4)
        a = samuel_multiplicity(I, None, config)
        b = staircase_volume_multiplicity(I)
        ledger.add("samuel_staircase", {"I": _id(I)}, [Check("staircase", "e(I) = n! vol of the staircase complement", a == b, {"e": a, "staircase": b})], {"e": a})


def order_family(rng, count, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        o = 1 + k % 3
        while True:
            I = random_primary_ideal(rng, n, o + 2, extra=3)
            gens = list(I.gens) + [random_monomial(rng, n, o, o)]
            I = MonomialIdeal(I.ring, gens)
            if order(I) == o:
                break
        chk = order_formula_check(I, config)
        ledger.add("order_formula", {"J": _id(I)}, [chk], {"order": o})
        T = IdealTuple(I.ring.maximal(), [I])
        _rigidity(ledger, "order_formula", T, mixed_multiplicities(T, config), config)


def bhattacharya_family(rng, count, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 3, extra=2)
        J = random_primary_ideal(rng, n, 3, extra=2)
        checks = inequality_suite(I, J, config)
        ledger.add("bhattacharya", {"I": _id(I), "J": _id(J)}, checks)
        T = IdealTuple(I, [J])
        _rigidity(ledger, "bhattacharya", T, mixed_multiplicities(T, config), config)


def rees_verma_family(rng, count, ledger, config):
    # Huneke-Sally pinned case: integrally closed m-primary ideals of k[x,y], here powers of m
    for p in (1, 2):
        I = MonomialIdeal(RingContext(2), [(p - i, i) for i in range(p + 1)])
        e = rees_algebra_multiplicity(I, None, config)
        ledger.add("rees_verma", {"I": _id(I)}, [Check("Huneke-Sally", "e(A[It]_M) = 1 + o(I)", e == 1 + order(I), {"e": e})])
    for k in range(count):
        n = 2 + k % 2
        I = random_positive_height_ideal(rng, n, 3 if n == 2 else 2)
        e = rees_algebra_multiplicity(I, None, config)
        m = I.ring.maximal()
        T = IdealTuple(m, [I])
        mm = mixed_multiplicities(T, config)
        seq = mm.as_list()
        ledger.add("rees_verma", {"I": _id(I)}, [Check("Rees-Verma", "e(A[It]_M) = sum_j e_j(m|I)", e == sum(seq), {"e": e, "sequence": seq})])
        _rigidity(ledger, "rees_verma", T, mm, config)


def multseq_family(rng, count, nonprimary, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 3, extra=2)
        seq = multiplicity_sequence(I, None, config)
        e = samuel_multiplicity(I, None, config)
        want = [e] + [0] * (len(seq.values) - 1)
        ledger.add("multiplicity_sequence", {"I": _id(I)}, [Check("primary", "c_0(I) = e(I) and c_i(I) = 0", seq.values == want, {"c": seq.values})])
    I = MonomialIdeal(RingContext(2), [(1, 0)])
    seq = multiplicity_sequence(I, None, config)
    ledger.add("multiplicity_sequence", {"I": _id(I)}, [Check("principal", "c(x) = (0, 1, 0)", seq.values == [0, 1, 0], {"c": seq.values})])
    for k in range(nonprimary):
        n = 2 + k % 2
        I = random_ideal(rng, n, 2, 3)
        chk = multiplicity_sequence_support_check(I, None, None, config)
        ledger.add("multiplicity_sequence", {"I": _id(I)}, [chk])


def polytope_family(rng, count, minkowski, ledger, ehrhart):
    segx, segy = hull([[0, 0], [1, 0]]), hull([[0, 0], [0, 1]])
    mv = mixed_volume([segx, segy])
    ledger.add("mixed_volume", {"case": "segments"}, [Check("segments", "MV_2(seg_x, seg_y) = 1", mv == 1, {"mv": str(mv)})])
    for n in (1, 2, 3):
        for ds in np.ndindex(*(4,) * n):
            ds = [d + 1 for d in ds]
            mv = mixed_volume([simplex(n, d) for d in ds])
            ledger.add("mixed_volume", {"bezout": ds}, [Check("Bezout", "MV(d_1 D, ..., d_n D) = prod d_i", mv == prod(ds), {"mv": str(mv)})])
    for k in range(count):
        n = 1 + k % 3
        P = random_polytope(rng, n, points=n + 3)
        mv = mixed_volume([P] * n)
        nv = factorial(n) * volume(P)
        checks = [Check("diagonal", "MV_n(Q,...,Q) = n! V_n(Q)", mv == nv, {"mv": str(mv)})]
        if ehrhart:
            checks.append(Check("Ehrhart", "triangulation volume = Ehrhart volume", check_volume(P), {}))
        ledger.add("mixed_volume", {"Q": [list(v) for v in P.vertices]}, checks)
    for k in range(minkowski):
        n = 2 + k % 2
        polys = [random_polytope(rng, n, points=n + 2, box=2) for _ in range(2)]
        vp = minkowski_volume_polynomial(polys)
        ok = True
        for alpha, val in vp.mixed.items():
            direct = mixed_volume_multi(polys, alpha)
            coeff = vp.poly.coeff(alpha) * prod(factorial(a) for a in alpha)
            ok &= direct == val == coeff
        ledger.add("mixed_volume", {"polytopes": [[list(v) for v in P.vertices] for P in polys]}, [Check("volume polynomial", "Minkowski polynomial coefficients = inclusion-exclusion mixed volumes", ok, {})])


def regular_family(rng, count, ledger, config):
    """Dual oracles on monomial regular sequences."""
    for k in range(count):
        n = 2 + k % 2
        I = random_regular_sequence(rng, n)
        degs = sorted(sum(g) for g in I.gens)
        data = rees_mixed_multiplicities(I, None, config)
        oracle = regular_sequence_rees_mixed(degs, 1, n)
        checks = list(data.checks)
        checks.append(Check("regular sequence", "Hoang-Trung closed form for regular sequences", data.mixed == oracle, {"fit": data.mixed, "oracle": oracle}))
        m = I.ring.maximal()
        seq = mixed_sequence(m, I, None, config)
        r = len(degs)
        hoang = hoang_mixed([prod(degs[:j]) for j in range(r)], [n - j for j in range(r)], n)
        checks.append(Check("Hoang", "e_i(m|I) from the colon chain of a d-sequence", seq == hoang, {"fit": seq, "oracle": hoang}))
        rees = rees_algebra_multiplicity(I, None, config)
        htu = htu_rees([prod(degs[:j]) for j in range(r)], [n - j for j in range(r)], n, 1)
        checks.append(Check("HTU", "Herzog-Trung-Ulrich e(R(I)) for d-sequences", rees == htu, {"fit": rees, "oracle": htu}))
        # a regular sequence of monomials is a filter-regular subsystem of parameters
        checks.append(Check("filter-regular", "Trung filter-regular Rees multiplicity", rees == filter_regular_rees(degs), {"fit": rees}))
        ext = extended_rees_multiplicity(I, None, config)
        checks.append(Check("extended filter-regular", "Trung filter-regular extended Rees multiplicity", ext == filter_regular_extended(degs), {"fit": ext}))
        ledger.add("regular_sequences", {"I": _id(I)}, checks, {"e": data.mixed})
    for m_, degs in ((2, [1]), (2, [1, 2]), (3, [2]), (2, [2, 3]), (3, [1, 1])):
        fit = free_bigraded_mixed(m_, degs, config)
        oracle = bigraded_free_mixed(m_, len(degs), degs)
        ledger.add("regular_sequences", {"free": [m_, degs]}, [Check("free bigraded", "free bigraded ring closed form", fit == oracle, {"fit": fit, "oracle": oracle})])
    I = MonomialIdeal(RingContext(2), [(2, 0)])
    data = rees_mixed_multiplicities(I, None, config)
    ledger.add("regular_sequences", {"I": _id(I)}, [Check("pinned", "P = u - 2v + 1", data.mixed == [-2, 1], {"P": data.polynomial.to_json()["text"]})])


def milnor_family(rng, count, ledger, config):
    ms = milnor_sequence([3, 3, 3], config)
    ledger.add("milnor", {"a": [3, 3, 3]}, [Check("pinned", "mu*(x^3+y^3+z^3) = (8,4,2,1)", ms.star == (8, 4, 2, 1), {"mu_star": list(ms.star)})])
    for k in range(count):
        n = 2 + k % 2
        a = sorted(int(x) for x in rng.integers(2, 6, size=n))
        ms = milnor_sequence(a, config)
        checks = [
            Check("mu^(1)", "mu^(1) = min a_i - 1", ms.values[1] == min(a) - 1, {"mu": ms.values}),
            Check("mu^(n+1)", "mu^(n+1) = prod (a_i - 1)", ms.values[-1] == prod(x - 1 for x in a), {"mu": ms.values}),
        ]
        ledger.add("milnor", {"a": a}, checks, {"mu_star": list(ms.star)})


def dade_family(rng, count, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 2, extra=1)
        J = random_ideal(rng, n, 2, 3)
        T = IdealTuple(I, [J])
        mm = mixed_multiplicities(T, config)
        ledger.add("dade", {"I": _id(I), "J": _id(J)}, [rij_total_check(T, mm, config)], {"e": mm.as_list()})
        _rigidity(ledger, "dade", T, mm, config)
    for k in range(max(5 * count // 8, 1)):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 3, extra=2)
        gm = gm_multiplicity(I, None, config)
        c = multiplicity_sequence(I, None, config).values
        ledger.add("dade", {"I": _id(I)}, [Check("Dade sum", "Dade e(G_M) = sum_j c_j(I)", gm == sum(c), {"e_GM": gm, "c": c})])


def positivity_family(rng, count, ledger, config):
    for k in range(count):
        n = 2 + k % 2
        I = random_primary_ideal(rng, n, 2, extra=1)
        I2 = random_primary_ideal(rng, n, 2, extra=1)
        J = random_ideal(rng, n, 2, 3)
        T1, T2 = IdealTuple(I, [J]), IdealTuple(I2, [J])
        m1, m2 = mixed_multiplicities(T1, config), mixed_multiplicities(T2, config)
        same = m1.positive_support() == m2.positive_support()
        ledger.add("positivity", {"I": _id(I), "I'": _id(I2), "J": _id(J)}, [Check("positivity set", "positivity set independent of I", same, {"support": [list(a) for a in m1.positive_support()]})])
        _rigidity(ledger, "positivity", T1, m1, config)
        _rigidity(ledger, "positivity", T2, m2, config)


def run_suite(seed: int, size: str = "small", config: FitConfig | None = None, ehrhart_check: bool = True) -> Ledger:
    sizes = SIZES[size]
    rng = np.random.default_rng(seed)
    ledger = Ledger()
    samuel_family(rng, sizes["samuel"], ledger, config)
    order_family(rng, sizes["order"], ledger, config)
    bhattacharya_family(rng, sizes["bhattacharya"], ledger, config)
    rees_verma_family(rng, sizes["rees_verma"], ledger, config)
    multseq_family(rng, sizes["multseq"], sizes["nonprimary"], ledger, config)
    polytope_family(rng, sizes["polytopes"], sizes["minkowski"], ledger, ehrhart_check)
    regular_family(rng, sizes["regular"], ledger, config)
    milnor_family(rng, sizes["milnor"], ledger, config)
    dade_family(rng, sizes["dade"], ledger, config)
    positivity_family(rng, sizes["positivity"], ledger, config)
    return ledger
