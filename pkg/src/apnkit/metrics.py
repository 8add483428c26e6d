"""Totals of first- and second-order derivative weights, and the predicates built on them.

Notation used throughout:
  s1      = sum_{a != 0} wt(D_a f)
  s1_sq   = sum_{a != 0} wt(D_a f)^2
  s2      = sum_{a, b != 0} wt(D_b D_a f)
  vs1, vs1_sq, vs2 are the same sums additionally taken over all nonzero components lam.F.
Every quantity is an exact python int.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .boolfun import BooleanFunction, classify, power_sum
from .vectorial import VectorialFunction


class MetricsError(ValueError):
    pass


class OracleMismatch(AssertionError):
    """A fast path disagreed with its brute-force twin."""


def _agree(name: str, fast: int, slow: int) -> int:
    if fast != slow:
        raise OracleMismatch(f"{name}: fast path {fast} != oracle {slow}")
    return fast


# --- scalar totals ----------------------------------------------------------

def s1_total(f: BooleanFunction, verify: bool = False) -> int:
    w = f.weight()
    fast = 2 * w * (f.size - w)
    if verify:
        from .oracle import naive_s1

        _agree("s1", fast, naive_s1(f))
    return fast


def s1_via_fourier(f: BooleanFunction) -> int:
    four = f.fourier()
    return (1 << (2 * f.n - 1)) - four * four // 2


def derivative_weights(f: BooleanFunction) -> np.ndarray:
    """wt(D_a f) for every a, read off the autocorrelation."""
    return (f.size - f.autocorrelation()) // 2


def s1_sq_total(f: BooleanFunction, verify: bool = False) -> int:
    fast = power_sum(derivative_weights(f)[1:], 2)
    if verify:
        from .oracle import naive_s1_sq

        _agree("s1_sq", fast, naive_s1_sq(f))
    return fast


def weight_from_s1(s1: int, n: int, branch: int | str = -1) -> int:
    """wt(f) = 2^(n-1) +/- sqrt(2^(2n) - 2 s1) / 2; `branch` is -1/'-' or +1/'+'."""
    if branch in ("-", "minus"):
        branch = -1
    elif branch in ("+", "plus"):
        branch = 1
    if branch not in (-1, 1):
        raise MetricsError(f"branch must be -1 or +1, got {branch!r}")
    rad = (1 << (2 * n)) - 2 * s1
    if rad < 0:
        raise MetricsError(f"s1={s1} exceeds 2^(2n-1) for n={n}")
    root = isqrt(rad)
    if root * root != rad or root % 2:
        raise MetricsError(f"s1={s1} is not realizable: 2^(2n) - 2*s1 = {rad} is not an even square")
    return (1 << (n - 1)) + branch * (root // 2)


def ell_parameter(f: BooleanFunction) -> int:
    return abs(f.fourier()) // 2


def s2_total(f: BooleanFunction, verify: bool = False) -> int:
    """2^(n+1) s1 - 2 s1_sq (first/second order relation)."""
    fast = (1 << (f.n + 1)) * s1_total(f) - 2 * s1_sq_total(f)
    if verify:
        from .oracle import naive_s2

        _agree("s2", fast, naive_s2(f))
    return fast


def s2_via_walsh_moment(f: BooleanFunction) -> int:
    n = f.n
    w4 = f.walsh_transform().moment(4)
    q, r = divmod(w4, 1 << (n + 1))
    if r:
        raise AssertionError("fourth Walsh moment is not divisible by 2^(n+1)")
    return (1 << (3 * n - 1)) - q


def s2_via_autocorrelation(f: BooleanFunction) -> int:
    """2^(2n-1)(2^n - 1) - 1/2 sum_{a != 0} F(D_a f)^2."""
    n = f.n
    return (1 << (2 * n - 1)) * ((1 << n) - 1) - power_sum(f.autocorrelation()[1:], 2) // 2


@dataclass(frozen=True)
class ScalarDerivativeProfile:
    n: int
    s1: int
    s1_sq: int
    s2: int
    ell: int
    walsh4: int


def scalar_profile(f: BooleanFunction, verify: bool = False) -> ScalarDerivativeProfile:
    s1 = s1_total(f, verify)
    s1_sq = s1_sq_total(f, verify)
    s2 = s2_total(f, verify)
    if verify:
        _agree("s2 (walsh moment)", s2, s2_via_walsh_moment(f))
    return ScalarDerivativeProfile(
        n=f.n,
        s1=s1,
        s1_sq=s1_sq,
        s2=s2,
        ell=ell_parameter(f),
        walsh4=f.walsh_transform().moment(4),
    )


# --- closed forms -----------------------------------------------------------

def closed_form_s1(kind: str, n: int, param: int | None = None) -> int:
    """Expected s1 for a named class (unbalanced branch unless kind == 'balanced').

    kind: 'balanced', 'bent', 'quadratic' (param k = dim V(f)),
    'partially_bent' (param h), 'plateaued' (param r).
    """
    top = 1 << (2 * n - 1)
    if kind == "balanced":
        return top
    if kind == "bent":
        if n % 2:
            raise MetricsError("bent functions need even n")
        return top - (1 << (n - 1))
    if param is None:
        raise MetricsError(f"{kind} needs a parameter")
    if kind == "quadratic":
        if not 0 <= param <= n:
            raise MetricsError(f"k must be in [0, {n}]")
        return top - (1 << (n + param - 1))
    if kind == "partially_bent":
        if not 0 <= 2 * param <= n:
            raise MetricsError(f"h must be in [0, {n // 2}]")
        return top - (1 << (2 * n - 2 * param - 1))
    if kind == "plateaued":
        if not 0 <= param <= n or param % 2:
            raise MetricsError(f"r must be even and in [0, {n}]")
        return top - (1 << (2 * n - param - 1))
    raise MetricsError(f"unknown kind {kind!r}")


def closed_form_s2(kind: str, n: int, h: int | None = None) -> int:
    if kind == "bent":
        if n % 2:
            raise MetricsError("bent functions need even n")
        return (1 << (2 * n - 1)) * ((1 << n) - 1)
    if kind == "partially_bent":
        if h is None or not 0 <= 2 * h <= n:
            raise MetricsError(f"h must be in [0, {n // 2}]")
        return (1 << (2 * n - 1)) * ((1 << n) - (1 << (n - 2 * h)))
    raise MetricsError(f"unknown kind {kind!r}")


# --- predicate outcomes -----------------------------------------------------

EQUAL = "equal"
BELOW = "below-bound"
ABOVE = "above-bound"


@dataclass(frozen=True)
class PredicateOutcome:
    name: str
    expected_value: int
    actual_value: int
    relation: str
    verdict: bool
    precondition: bool = True

    @property
    def gap(self) -> int:
        return self.expected_value - self.actual_value

    @classmethod
    def compare(cls, name: str, expected: int, actual: int, precondition: bool = True):
        expected, actual = int(expected), int(actual)
        relation = EQUAL if actual == expected else (BELOW if actual < expected else ABOVE)
        precondition = bool(precondition)
        return cls(name, expected, actual, relation, precondition and relation == EQUAL, precondition)

    def consistent(self) -> bool:
        """Recompute relation and verdict from the raw values (used on parsed reports)."""
        fresh = PredicateOutcome.compare(self.name, self.expected_value, self.actual_value, self.precondition)
        return fresh.relation == self.relation and fresh.verdict == self.verdict


def check_balanced_by_s1(f: BooleanFunction) -> PredicateOutcome:
    return PredicateOutcome.compare("balanced-s1", 1 << (2 * f.n - 1), s1_total(f))


def check_bent_by_s2(f: BooleanFunction) -> PredicateOutcome:
    n = f.n
    bound = (1 << (2 * n - 1)) * ((1 << n) - 1)
    return PredicateOutcome.compare("bent-s2", bound, s2_total(f))


# --- vectorial --------------------------------------------------------------

@dataclass(frozen=True)
class VectorialDerivativeProfile:
    n: int
    vs1: int
    vs1_sq: int
    vs2: int
    fsq: int
    per_direction_s2: dict = field(repr=False)
    per_direction_fsq: dict = field(repr=False)


def _sum_sq(values) -> int:
    return power_sum(values, 2)


def vectorial_profile(F: VectorialFunction, verify: bool = False) -> VectorialDerivativeProfile:
    n, size = F.n, F.size
    ac = F.autocorrelation_matrix()  # ac[lam, a] = F(D_a F_lam)
    comp = ac[1:]
    wts = (size - comp[:, 1:]) // 2
    vs1 = int(wts.sum(dtype=np.int64))
    vs1_sq = power_sum(wts, 2)
    fsq = _sum_sq(comp)
    # per component: s2(F_lam) = 2^(2n-1)(2^n-1) - 1/2 sum_{a != 0} F(D_a F_lam)^2
    per_comp_const = (1 << (2 * n - 1)) * (size - 1)
    vs2 = sum(per_comp_const - _sum_sq(row[1:]) // 2 for row in comp)
    # per direction a != 0: sum_{lam, b != 0} wt(D_b D_a F_lam) = sum_lam 2^(2n-1) - F^2/2
    per_dir_fsq = {}
    per_dir_s2 = {}
    for a in range(1, size):
        col = ac[:, a]
        per_dir_fsq[a] = _sum_sq(col)  # includes lam = 0
        per_dir_s2[a] = (size - 1) * (1 << (2 * n - 1)) - _sum_sq(col[1:]) // 2
    prof = VectorialDerivativeProfile(n, vs1, vs1_sq, vs2, fsq, per_dir_s2, per_dir_fsq)
    if verify:
        from . import oracle

        _agree("vs1", prof.vs1, oracle.naive_vs1(F))
        _agree("vs1_sq", prof.vs1_sq, oracle.naive_vs1_sq(F))
        _agree("fsq", prof.fsq, oracle.naive_fsq(F))
        if n <= oracle.NAIVE_VS2_MAX_N:
            _agree("vs2", prof.vs2, oracle.naive_vs2(F))
    return prof


def permutation_bound(n: int) -> int:
    return (1 << (2 * n - 1)) * ((1 << n) - 1)


def apn_permutation_sq_bound(n: int) -> int:
    return (1 << (2 * n - 1)) * ((1 << n) - 1) * ((1 << (n - 1)) + 1)


def apn_s2_bound(n: int) -> int:
    return (1 << (2 * n - 1)) * ((1 << n) - 1) * ((1 << n) - 2)


def apn_direction_bound(n: int) -> int:
    return (1 << (2 * n - 1)) * ((1 << n) - 2)


def quadratic_apn_s1(n: int) -> int:
    return (1 << (n - 1)) * ((1 << n) - 1) * ((1 << n) - 2)


def fsq_bound(n: int) -> int:
    return (1 << (2 * n + 1)) * ((1 << n) - 1)


def fsq_direction_bound(n: int) -> int:
    return 1 << (2 * n + 1)


def _prof(F, profile):
    return profile if profile is not None else vectorial_profile(F)


def check_permutation_by_s1(F: VectorialFunction, profile=None) -> PredicateOutcome:
    p = _prof(F, profile)
    return PredicateOutcome.compare("perm-s1", permutation_bound(F.n), p.vs1)


def check_apn_permutation_by_s1sq(F: VectorialFunction, profile=None) -> PredicateOutcome:
    """Equality characterizes APN permutations; defined false for non-bijective F."""
    p = _prof(F, profile)
    return PredicateOutcome.compare(
        "apn-perm-s1sq", apn_permutation_sq_bound(F.n), p.vs1_sq, precondition=F.is_permutation()
    )


def check_apn_by_s2(F: VectorialFunction, profile=None) -> PredicateOutcome:
    p = _prof(F, profile)
    return PredicateOutcome.compare("apn-s2", apn_s2_bound(F.n), p.vs2)


def check_apn_per_direction(F: VectorialFunction, profile=None) -> dict[int, PredicateOutcome]:
    p = _prof(F, profile)
    bound = apn_direction_bound(F.n)
    return {
        a: PredicateOutcome.compare(f"apn-direction[{a}]", bound, v)
        for a, v in p.per_direction_s2.items()
    }


def apn_per_direction_summary(F: VectorialFunction, profile=None) -> PredicateOutcome:
    """Single outcome: the smallest per-direction total against the bound."""
    p = _prof(F, profile)
    worst = min(p.per_direction_s2.values()) if p.per_direction_s2 else 0
    return PredicateOutcome.compare("apn-per-direction", apn_direction_bound(F.n), worst)


def check_fsq_bounds(F: VectorialFunction, profile=None) -> tuple[PredicateOutcome, PredicateOutcome]:
    """(global sum vs 2^(2n+1)(2^n-1), per-direction sums vs 2^(2n+1)).

    The per-direction outcome reports the largest direction sum, since every
    direction is bounded below and APN means all of them sit on the bound.
    """
    p = _prof(F, profile)
    total = PredicateOutcome.compare("fsq", fsq_bound(F.n), p.fsq)
    worst = max(p.per_direction_fsq.values()) if p.per_direction_fsq else 0
    per_dir = PredicateOutcome.compare("fsq-per-direction", fsq_direction_bound(F.n), worst)
    return total, per_dir


@dataclass(frozen=True)
class ComponentCensus:
    bent: int
    semi_bent: int
    unbalanced_semi_bent: int
    other: int
    quadratic: int
    semi_bent_dims: tuple[int, ...]

    @property
    def total(self) -> int:
        return self.bent + self.semi_bent + self.other


def component_census(F: VectorialFunction) -> ComponentCensus:
    bent = semi = unbal_semi = other = quad = 0
    dims = set()
    for lam in range(1, F.size):
        c = classify(F.component(lam))
        quad += c.is_quadratic
        if c.is_bent:
            bent += 1
        elif c.is_semi_bent:
            semi += 1
            if not c.is_balanced:
                unbal_semi += 1
                dims.add(c.linear_space_dim)
        else:
            other += 1
    return ComponentCensus(bent, semi, unbal_semi, other, quad, tuple(sorted(dims)))


@dataclass(frozen=True)
class QuadraticApnCheck:
    outcome: PredicateOutcome
    census: ComponentCensus
    hypotheses_hold: bool
    split_holds: bool
    violations: tuple[str, ...]


def check_quadratic_apn_s1(F: VectorialFunction, profile=None) -> QuadraticApnCheck:
    """vs1 against 2^(n-1)(2^n-1)(2^n-2), with the component hypotheses measured, not assumed."""
    p = _prof(F, profile)
    n = F.n
    outcome = PredicateOutcome.compare("quad-apn-s1", quadratic_apn_s1(n), p.vs1)
    census = component_census(F)
    violations = []
    if census.quadratic != F.size - 1:
        violations.append(f"{F.size - 1 - census.quadratic} components are not quadratic")
    if census.other:
        violations.append(f"{census.other} components are neither bent nor semi-bent")
    if census.semi_bent != census.unbalanced_semi_bent:
        violations.append(f"{census.semi_bent - census.unbalanced_semi_bent} semi-bent components are balanced")
    if census.semi_bent_dims and census.semi_bent_dims != (2,):
        violations.append(f"semi-bent linear space dimensions {census.semi_bent_dims} != (2,)")
    m = F.size - 1
    split = m % 3 == 0 and census.bent == 2 * m // 3 and census.semi_bent == m // 3
    return QuadraticApnCheck(outcome, census, not violations, split, tuple(violations))
