"""Job files: JSON payloads validated against schemas/job.v1.json."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import jsonschema

from .errors import DimensionError, InputError
from .hilbert import FitConfig
from .monomial import MonomialIdeal, RingContext, parse_ideal

SCHEMA_VERSION = 1
COMMANDS = ("hilbert", "mixedmult", "multseq", "rees", "mixedvolume", "bernstein", "milnor", "oracle", "suite")


@lru_cache(maxsize=None)
def job_schema() -> dict:
    text = resources.files("mixedmult").joinpath("schemas", "job.v1.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class JobSpec:
    command: str
    payload: dict
    ring: RingContext | None = None
    base: MonomialIdeal | None = None
    ideals: dict = field(default_factory=dict)
    fit: FitConfig = field(default_factory=FitConfig)

    def echo(self) -> dict:
        return dict(sorted(self.payload.items()))


def _field_path(err: jsonschema.ValidationError) -> str:
    path = "/".join(str(p) for p in err.absolute_path)
    return path or "<root>"


def _ring(desc: dict) -> RingContext:
    n = desc["vars"]
    if "grading" in desc and "blocks" in desc:
        raise InputError("ring: give either grading or blocks, not both")
    if "blocks" in desc:
        if sum(desc["blocks"]) != n:
            raise DimensionError(f"ring.blocks: sizes sum to {sum(desc['blocks'])}, ring has {n} variables")
        return RingContext.blocks(*desc["blocks"])
    if "grading" in desc:
        g = desc["grading"]
        if len(g) != n:
            raise DimensionError(f"ring.grading: {len(g)} degrees for {n} variables")
        if len({len(x) for x in g}) != 1:
            raise DimensionError("ring.grading: all degrees need the same length")
        return RingContext(n, tuple(tuple(x) for x in g))
    return RingContext(n)


def _parse(text: str, ring: RingContext, where: str) -> MonomialIdeal:
    try:
        return parse_ideal(text, ring)
    except InputError as exc:
        raise type(exc)(f"{where}: {exc}") from exc


def _check_points(points, dim: int, where: str):
    for k, p in enumerate(points):
        if len(p) != dim:
            raise DimensionError(f"{where}/{k}: point has {len(p)} coordinates, expected {dim}")


def _arity(job: JobSpec):
    p = job.payload
    c = job.command
    if c == "mixedvolume":
        polys = p["polytopes"]
        n = polys[0]["dim"]
        for k, P in enumerate(polys):
            if P["dim"] != n:
                raise DimensionError(f"polytopes/{k}: dim {P['dim']} differs from {n}")
            _check_points(P["points"], n, f"polytopes/{k}/points")
        if len(polys) != n and not p.get("volume_polynomial"):
            raise DimensionError(f"polytopes: mixed volume in dimension {n} needs {n} polytopes, got {len(polys)}")
    elif c == "bernstein":
        sup = p["supports"]
        n = len(sup[0][0])
        for k, S in enumerate(sup):
            _check_points(S, n, f"supports/{k}")
        if len(sup) != n:
            raise DimensionError(f"supports: {n} variables need {n} supports, got {len(sup)}")
    elif c == "hilbert":
        ring = job.ring
        for key in ("lower", "upper"):
            if "box" in p and len(p["box"][key]) != ring.s:
                raise DimensionError(f"box/{key}: need {ring.s} entries")
        if p.get("region") == "cone" and ring.s != 2:
            raise DimensionError("region: cone fits need a bigrading")
    elif c == "rees":
        for k, pair in enumerate(p.get("embedded", [])):
            if pair[1] < 1:
                raise InputError(f"embedded/{k}: e must be positive")


def parse_job(text: str | bytes | dict) -> JobSpec:
    """Validate a job and parse every ideal against the declared ring."""
    if isinstance(text, dict):
        data = text
    else:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"job is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("job must be a JSON object")
    validator = jsonschema.Draft202012Validator(job_schema())
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise InputError(f"{_field_path(err)}: {err.message}")
    job = JobSpec(data["command"], data)
    if "fit" in data:
        job.fit = FitConfig(start=data["fit"].get("start", 1), cap=data["fit"].get("cap", 40))
    if "ring" in data:
        job.ring = _ring(data["ring"])
        if "base" in data:
            job.base = _parse(data["base"], job.ring, "base")
        for key in ("I", "relations"):
            if key in data:
                job.ideals[key] = _parse(data[key], job.ring, key)
        if "J" in data:
            job.ideals["J"] = [_parse(t, job.ring, f"J/{k}") for k, t in enumerate(data["J"])]
    elif any(k in data for k in ("I", "J", "base", "relations")):
        raise InputError("ring: ideals need a declared ring")
    _arity(job)
    return job
