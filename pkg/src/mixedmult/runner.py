"""Dispatch a parsed job to the engines and collect a deterministic report."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial

from .closed_forms import ORACLES, regular_sequence_rees_mixed
from .errors import InputError, PreconditionError
from .hilbert import (
    GradedPresentation,
    diagonal_formula,
    diagonal_multiplicity,
    extract_mixed_multiplicities,
    fit_hilbert,
    hilbert_function,
    partial_degrees,
    total_degree,
    total_grading_multiplicity,
)
from .jobs import SCHEMA_VERSION, JobSpec
from .monomial import height_in
from .multiplicities import (
    Check,
    IdealTuple,
    gm_multiplicity,
    inequality_suite,
    is_primary_in,
    leading_reduction_check,
    milnor_sequence,
    mixed_multiplicities,
    multi_rees_multiplicity,
    multiplicity_sequence,
    multiplicity_sequence_support_check,
    order_formula_check,
    rees_algebra_multiplicity,
    rigidity_check,
    rij_total_check,
    samuel_multiplicity,
)
from .polynomial import NEG_INF
from .polytope import (
    check_volume,
    hull,
    mixed_mult_volume_bridge,
    mixed_volume,
    minkowski_volume_polynomial,
    newton_polytope,
    volume,
)
from .rees import (
    embedded_degree,
    nonstandard_mixed,
    quotient_degree_values,
    quotient_hilbert_polynomial,
    rees_mixed_multiplicities,
    sdim_flag,
)


@dataclass
class RunOptions:
    box: int | None = None
    seed: int | None = None
    ehrhart_check: bool = True


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    text: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [c.to_json() for c in self.checks],
            "status": "pass" if self.passed else "fail",
        }


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _deg(x):
    return "-inf" if x == NEG_INF else int(x)


# ---------------------------------------------------------------- handlers


def _hilbert(job: JobSpec, rep: Report, opts: RunOptions):
    ring = job.ring
    P = GradedPresentation(ring, job.ideals.get("relations"))
    p = job.payload
    if "box" in p:
        rep.results["table"] = hilbert_function(P, (p["box"]["lower"], p["box"]["upper"])).to_json()
    standard = ring.is_standard()
    if "degree" in p:
        r = p["degree"]
    elif standard:
        r = total_degree(P)
    else:
        raise InputError("degree: non-standard gradings need an explicit degree hint")
    if p.get("region", "orthant") == "cone":
        mm = nonstandard_mixed(P, r, job.fit)
    else:
        mm = extract_mixed_multiplicities(fit_hilbert(P.hilbert, P.s, r, config=job.fit), r)
    rep.results["mixed"] = mm.to_json()
    rep.text.append(f"P = {mm.polynomial.to_json()['text']}")
    rep.text.append("e = " + ", ".join(f"e_{a}={v}" for a, v in sorted(mm.entries.items())))
    if not (standard and P.s == 2):
        return
    expected = total_degree(P)
    rep.checks.append(Check("total degree", "deg P = dim R/0:R_+^inf - s", mm.total_degree == expected, {"fitted": _deg(mm.total_degree), "expected": _deg(expected)}))
    pd = partial_degrees(P)
    got = tuple(mm.polynomial.partial_degree(i) for i in range(2))
    rep.checks.append(Check("partial degrees", "deg_i P from the saturated presentation", got == pd, {"fitted": [_deg(x) for x in got], "expected": [_deg(x) for x in pd]}))
    if expected == NEG_INF:
        return
    try:
        e = total_grading_multiplicity(P, job.fit)
    except PreconditionError as exc:
        rep.results["total_grading"] = {"skipped": str(exc)}
    else:
        total = sum(mm.entries.values())
        rep.results["total_grading"] = {"e": e, "sum": total}
        rep.checks.append(Check("total grading", "Dade total-grading identity e(R) = sum e_alpha", e == total, {"e": e, "sum": total}))
    for lam in ((1, 1), (1, 2), (2, 1)):
        diag = diagonal_multiplicity(P, lam, job.fit)
        formula = diagonal_formula(mm, lam)
        rep.checks.append(Check(f"diagonal {lam}", "diagonal subalgebra multiplicity r! sum e_alpha lambda^alpha/alpha!", diag == formula, {"fit": diag, "formula": _frac(formula)}))


def _is_maximal(I, base) -> bool:
    return I == I.ring.maximal() and (base is None or base.is_zero())


def _single_degree(J) -> bool:
    return len({sum(g) for g in J.gens}) == 1


def _mixedmult(job: JobSpec, rep: Report, opts: RunOptions):
    I = job.ideals["I"]
    Js = job.ideals["J"]
    base = job.base
    T = IdealTuple(I, Js, base)
    mm = mixed_multiplicities(T, job.fit)
    rep.results["d"] = T.dim()
    rep.results["mixed"] = mm.to_json()
    if T.s == 1:
        rep.results["sequence"] = mm.as_list()
        rep.text.append("e_j(I|J) = " + ", ".join(str(x) for x in mm.as_list()))
    else:
        rep.text.append("e = " + ", ".join(f"e_{a}={v}" for a, v in sorted(mm.entries.items())))
    rep.checks.extend(rigidity_check(T, mm, job.fit))
    rep.checks.append(leading_reduction_check(T, mm, job.fit))
    rep.checks.append(rij_total_check(T, mm, job.fit))
    plain = base is None or base.is_zero()
    if T.s == 1 and plain:
        J = Js[0]
        if _is_maximal(I, base) and height_in(J, base) >= 2:
            rep.checks.append(order_formula_check(J, job.fit))
        if is_primary_in(J, base):
            rep.checks.extend(inequality_suite(I, J, job.fit))
    if _is_maximal(I, base) and all(height_in(J, base) >= 1 for J in Js):
        fit = rees_algebra_multiplicity(Js[0], base, job.fit) if T.s == 1 else multi_rees_multiplicity(Js, base, job.fit)
        formula = sum(mm.entries.values())
        rep.results["rees_multiplicity"] = {"fit": fit, "formula": formula}
        anchor = "Rees-Verma e(A[Jt]_M) = sum_j e_j(m|J)" if T.s == 1 else "Verma multi-Rees sum of e_alpha(m|J_1..J_s)"
        rep.checks.append(Check("Rees multiplicity", anchor, fit == formula, {"fit": fit, "formula": formula}))
    n = I.n - 1
    if _is_maximal(I, base) and len(Js) == n and n >= 1 and all(_single_degree(J) for J in Js):
        bridge = mixed_mult_volume_bridge(Js, job.fit)
        rep.results["bridge"] = bridge.to_json()
        rep.checks.extend(bridge.checks)


def _multseq(job: JobSpec, rep: Report, opts: RunOptions):
    I = job.ideals["I"]
    base = job.base
    seq = multiplicity_sequence(I, base, job.fit)
    rep.results["multiplicity_sequence"] = seq.to_json()
    rep.text.append("c = (" + ", ".join(str(c) for c in seq.values) + ")")
    rep.checks.append(multiplicity_sequence_support_check(I, seq, base, job.fit))
    gm = gm_multiplicity(I, base, job.fit)
    rep.results["e_GM"] = gm
    rep.checks.append(Check("Dade sum", "Dade e(G_M) = sum_j c_j(I)", gm == sum(seq.values), {"e_GM": gm, "sum": sum(seq.values)}))
    if is_primary_in(I, base):
        e = samuel_multiplicity(I, base, job.fit)
        want = [e] + [0] * (len(seq.values) - 1)
        rep.checks.append(Check("primary sequence", "c_0(I) = e(I) and c_i(I) = 0 for i > 0", seq.values == want, {"e": e}))


def _regular_degrees(I):
    """Degrees of the generators when they have pairwise disjoint supports, else None."""
    used = set()
    for g in I.gens:
        supp = {i for i, c in enumerate(g) if c}
        if used & supp:
            return None
        used |= supp
    return sorted(sum(g) for g in I.gens)


def _rees(job: JobSpec, rep: Report, opts: RunOptions):
    I = job.ideals["I"]
    base = job.base
    data = rees_mixed_multiplicities(I, base, job.fit)
    rep.results["rees"] = data.to_json()
    rep.text.append(f"P = {data.polynomial.to_json()['text']}")
    rep.text.append("e = (" + ", ".join(str(x) for x in data.mixed) + ")")
    rep.checks.extend(data.checks)
    if data.s < 0:
        return
    rep.checks.append(sdim_flag(data, base, job.fit))
    if base is None or base.is_zero():
        degs = _regular_degrees(I)
        if degs is not None:
            oracle = regular_sequence_rees_mixed(degs, 1, I.n)
            rep.checks.append(Check("regular sequence", "Hoang-Trung closed form for regular sequences", oracle == data.mixed, {"oracle": oracle}))
    for c, e in job.payload.get("embedded", []):
        out = embedded_degree(data, c, e, base, job.fit)
        rep.results.setdefault("embedded", []).append({k: v for k, v in out.items() if k != "check"})
        rep.checks.append(out["check"])
    for v in job.payload.get("quotient_v", []):
        q = quotient_hilbert_polynomial(data, v, base, job.fit)
        region = data.polynomial.region
        us = [data.slope * v + region.u0 + k for k in range(4)]
        direct = quotient_degree_values(I, v, us, base)
        fitted = [q(u) for u in us]
        rep.results.setdefault("quotients", []).append({"v": v, "u": us, "direct": direct})
        rep.checks.append(Check(f"quotient v={v}", "P_{A/I^v}(u) = P_A(u) - P_{A[It]}(u, v)", all(a == b for a, b in zip(direct, fitted)), {"fitted": [_frac(x) for x in fitted]}))


def _mixedvolume(job: JobSpec, rep: Report, opts: RunOptions):
    polys = [hull(P["points"]) for P in job.payload["polytopes"]]
    n = polys[0].ambient_dim
    rep.results["polytopes"] = [P.to_json() for P in polys]
    if opts.ehrhart_check:
        for k, P in enumerate(polys):
            if P.dim == n:
                rep.checks.append(Check(f"Ehrhart volume {k}", "triangulation volume = Ehrhart leading coefficient", check_volume(P), {"volume": _frac(volume(P))}))
    if len(polys) == n:
        mv = mixed_volume(polys)
        rep.results["mixed_volume"] = _frac(mv)
        rep.text.append(f"MV = {_frac(mv)}")
        if all(P == polys[0] for P in polys):
            nv = factorial(n) * volume(polys[0])
            rep.checks.append(Check("diagonal mixed volume", "MV_n(Q,...,Q) = n! V_n(Q)", mv == nv, {"n!V": _frac(nv)}))
    if job.payload.get("volume_polynomial"):
        vp = minkowski_volume_polynomial(polys)
        rep.results["volume_polynomial"] = vp.to_json()


def _bernstein(job: JobSpec, rep: Report, opts: RunOptions):
    from .polytope import bernstein_bound

    supports = job.payload["supports"]
    bound = bernstein_bound(supports)
    rep.results["bound"] = bound
    rep.text.append(f"bound = {bound}")
    degs = []
    for S in supports:
        P = newton_polytope(S)
        d = max(sum(v) for v in P.vertices)
        simplex = hull([[0] * P.ambient_dim] + [[d if j == i else 0 for j in range(P.ambient_dim)] for i in range(P.ambient_dim)])
        degs.append(d if P == simplex else None)
    if all(d is not None for d in degs):
        bez = 1
        for d in degs:
            bez *= d
        rep.results["degrees"] = degs
        rep.checks.append(Check("Bezout", "Bernstein bound = deg f_1 ... deg f_n for full simplices", bound == bez, {"product": bez}))


def _milnor(job: JobSpec, rep: Report, opts: RunOptions):
    a = job.payload["exponents"]
    ms = milnor_sequence(a, job.fit)
    rep.results["milnor"] = ms.to_json()
    rep.text.append("μ* = (" + ", ".join(str(x) for x in ms.star) + ")")
    low = min(a) - 1
    top = 1
    for x in a:
        top *= x - 1
    rep.checks.append(Check("mu^(1)", "mu^(1) = min a_i - 1", ms.values[1] == low, {"expected": low}))
    rep.checks.append(Check("mu^(n+1)", "Milnor number prod (a_i - 1)", ms.values[-1] == top, {"expected": top}))


def _oracle(job: JobSpec, rep: Report, opts: RunOptions):
    fn = ORACLES[job.payload["variant"]]
    try:
        value = fn(**job.payload["args"])
    except TypeError as exc:
        raise InputError(f"args: {exc}") from exc
    if isinstance(value, Fraction):
        value = _frac(value)
    rep.results["value"] = value
    rep.text.append(f"{job.payload['variant']} = {value}")


def _suite(job: JobSpec, rep: Report, opts: RunOptions):
    from .suite import run_suite

    seed = opts.seed if opts.seed is not None else job.payload.get("seed", 0)
    ledger = run_suite(seed, size=job.payload.get("size", "small"), config=job.fit, ehrhart_check=opts.ehrhart_check)
    rep.results["seed"] = seed
    rep.results["families"] = ledger.summary()
    rep.results["cases"] = ledger.cases
    rep.checks.extend(ledger.checks)
    for fam, (ok, total) in sorted(ledger.summary().items()):
        rep.text.append(f"{fam}: {ok}/{total}")


HANDLERS = {
    "hilbert": _hilbert,
    "mixedmult": _mixedmult,
    "multseq": _multseq,
    "rees": _rees,
    "mixedvolume": _mixedvolume,
    "bernstein": _bernstein,
    "milnor": _milnor,
    "oracle": _oracle,
    "suite": _suite,
}


def run(job: JobSpec, opts: RunOptions | None = None) -> Report:
    opts = opts or RunOptions()
    if opts.box is not None:
        job.fit = replace(job.fit, cap=opts.box)
    rep = Report(job.command, job.echo())
    HANDLERS[job.command](job, rep, opts)
    return rep
