"""Analysis reports: versioned `key = <json value>` text, one field per line."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import metrics as M
from .boolfun import BooleanFunction
from .vectorial import VectorialFunction

SCHEMA_VERSION = 1


class ReportError(ValueError):
    pass


@dataclass
class AnalysisReport:
    provenance: dict
    scalar: dict | None = None
    vectorial: dict | None = None
    timing: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = {"schema_version": self.schema_version, "input": self.provenance}
        if self.scalar is not None:
            out["scalar"] = self.scalar
        if self.vectorial is not None:
            out["vectorial"] = self.vectorial
        out["timing"] = self.timing
        return out

    def render(self) -> str:
        return render(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(
            provenance=d.get("input", {}),
            scalar=d.get("scalar"),
            vectorial=d.get("vectorial"),
            timing=d.get("timing", {}),
            schema_version=d.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def parse(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(parse(text))


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict) and value:
        for k, v in value.items():
            if "." in str(k) or " = " in str(k):
                raise ReportError(f"key {k!r} cannot be serialized")
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    else:
        out.append((prefix, value))


def render(d: dict) -> str:
    rows: list = []
    _flatten("", d, rows)
    return "".join(f"{k} = {json.dumps(v)}\n" for k, v in rows)


def parse(text: str) -> dict:
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        key, sep, raw = line.partition(" = ")
        if not sep:
            raise ReportError(f"line {lineno}: expected 'key = value'")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ReportError(f"line {lineno}: {exc}") from None
        node = out
        parts = key.split(".")
        for p in parts[:-1]:
            node = node.setdefault(p, {})
        node[parts[-1]] = value
    if out.get("schema_version") != SCHEMA_VERSION:
        raise ReportError(f"unsupported schema_version {out.get('schema_version')!r}")
    return out


def _outcome(o: M.PredicateOutcome) -> dict:
    return {
        "expected": o.expected_value,
        "actual": o.actual_value,
        "relation": o.relation,
        "verdict": o.verdict,
        "precondition": o.precondition,
        "gap": o.gap,
    }


def scalar_section(f: BooleanFunction, verify: bool = False) -> dict:
    cls = f.classify()
    prof = M.scalar_profile(f, verify=verify)
    return {
        "n": f.n,
        "weight": f.weight(),
        "balanced": cls.is_balanced,
        "fourier": f.fourier(),
        "nonlinearity": cls.nonlinearity,
        "degree": cls.degree,
        "linear_space_dim": cls.linear_space_dim,
        "bent": cls.is_bent,
        "semi_bent": cls.is_semi_bent,
        "plateaued_order": cls.plateaued_order,
        "partially_bent": cls.is_partially_bent,
        "quadratic": cls.is_quadratic,
        "s1": prof.s1,
        "s1_sq": prof.s1_sq,
        "s2": prof.s2,
        "ell": prof.ell,
        "walsh4": prof.walsh4,
        "predicates": {
            o.name: _outcome(o) for o in (M.check_balanced_by_s1(f), M.check_bent_by_s2(f))
        },
    }


def vectorial_predicates(F: VectorialFunction, prof) -> dict[str, M.PredicateOutcome]:
    fsq, fsq_dir = M.check_fsq_bounds(F, prof)
    outs = [
        M.check_permutation_by_s1(F, prof),
        M.check_apn_permutation_by_s1sq(F, prof),
        M.check_apn_by_s2(F, prof),
        M.apn_per_direction_summary(F, prof),
        fsq,
        fsq_dir,
    ]
    return {o.name: o for o in outs}


def vectorial_section(F: VectorialFunction, verify: bool = False, census: bool = True) -> dict:
    prof = M.vectorial_profile(F, verify=verify)
    preds = vectorial_predicates(F, prof)
    per_dir = M.check_apn_per_direction(F, prof)
    sec = {
        "n": F.n,
        "is_permutation": F.is_permutation(),
        "delta": F.differential_uniformity(),
        "is_apn": F.is_apn(),
        "degree": F.degree(),
        "vs1": prof.vs1,
        "vs1_sq": prof.vs1_sq,
        "vs2": prof.vs2,
        "fsq": prof.fsq,
        "apn_direction_failures": [a for a, o in per_dir.items() if not o.verdict],
        "predicates": {name: _outcome(o) for name, o in preds.items()},
    }
    if census:
        q = M.check_quadratic_apn_s1(F, prof)
        c = q.census
        sec["census"] = {
            "convention": "dot-product components",
            "bent": c.bent,
            "semi_bent": c.semi_bent,
            "unbalanced_semi_bent": c.unbalanced_semi_bent,
            "other": c.other,
            "quadratic": c.quadratic,
        }
        sec["predicates"][q.outcome.name] = _outcome(q.outcome)
        sec["quad_apn_hypotheses_hold"] = q.hypotheses_hold
        sec["quad_apn_split_holds"] = q.split_holds
    return sec


def analyze(func, provenance: dict, verify: bool = False) -> AnalysisReport:
    t0 = time.perf_counter()
    rep = AnalysisReport(provenance=dict(provenance))
    if isinstance(func, BooleanFunction):
        rep.scalar = scalar_section(func, verify)
    else:
        rep.vectorial = vectorial_section(func, verify)
    rep.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    return rep


def predicates_consistent(report: AnalysisReport) -> bool:
    """Every stored verdict/relation agrees with its own expected/actual numbers."""
    for sec in (report.scalar, report.vectorial):
        if not sec:
            continue
        for name, p in sec.get("predicates", {}).items():
            o = M.PredicateOutcome(name, p["expected"], p["actual"], p["relation"], p["verdict"],
                                   p.get("precondition", True))
            if not o.consistent() or o.gap != p["gap"]:
                return False
    return True
