"""Acceptance criteria, one test per criterion; each appends a PASS/FAIL line to the summary."""

import time
from functools import lru_cache

import numpy as np
import pytest

from apnkit import catalog as C
from apnkit import metrics as M
from apnkit import oracle as O
from apnkit.boolfun import BooleanFunction, fwht

from conftest import ACCEPTANCE_LINES, all_functions, seeded_functions

SAMPLES = 1000


def record(num, title, problems):
    status = "PASS" if not problems else "FAIL"
    line = f"[{status}] criterion {num}: {title}"
    if problems:
        line += " | " + "; ".join(problems[:5]) + (f" (+{len(problems) - 5} more)" if len(problems) > 5 else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not problems, line


def expect(problems, what, got, want):
    if got != want:
        problems.append(f"{what} = {got}, expected {want}")


@lru_cache(maxsize=None)
def apn_catalog():
    return tuple(C.apn_catalog(8))


@lru_cache(maxsize=None)
def controls():
    return tuple(C.non_apn_controls(8))


@lru_cache(maxsize=None)
def profile(F):
    return M.vectorial_profile(F)


@lru_cache(maxsize=None)
def random_non_apn():
    """>= 100 random LUTs per n in {4, 5}, non-APN confirmed by the literal DDT."""
    out = []
    for n in (4, 5):
        kept = 0
        seed = 0
        while kept < 100:
            F = C.random_lut(n, [n, seed])
            seed += 1
            if not O.naive_ddt_apn(F)[1]:
                out.append(F)
                kept += 1
    return tuple(out)


def test_criterion_01_dillon_vs1():
    problems = []
    t0 = time.perf_counter()
    p = M.vectorial_profile(C.dillon_permutation())
    dt = time.perf_counter() - t0
    expect(problems, "vs1(dillon)", p.vs1, 129024)
    if dt >= 1.0:
        problems.append(f"runtime {dt:.2f}s >= 1s")
    record(1, f"vs1(dillon) = {p.vs1} in {dt:.3f}s", problems)


def test_criterion_02_apn_permutation_sq():
    problems = []
    expect(problems, "vs1_sq(dillon)", profile(C.dillon_permutation()).vs1_sq, 4257792)
    expect(problems, "vs1_sq(gold(3,1))", profile(C.gold(3, 1)).vs1_sq, 1120)
    for F in apn_catalog():
        o = M.check_apn_permutation_by_s1sq(F, profile(F))
        if not F.is_permutation():
            if o.verdict or o.relation == M.EQUAL:
                problems.append(f"{F!r} n={F.n}: non-bijective APN gives {o.relation}")
        elif not o.verdict:
            problems.append(f"{F!r} n={F.n}: APN permutation misses the bound ({o.relation})")
    record(2, "vs1_sq criterion: equality on APN permutations, never on non-bijective APN", problems)


def test_criterion_03_quadratic_apn_s1():
    """Checks the listed integers verbatim. The n=8 entries are half of 2^7*255*254, so
    no correct implementation can reproduce them; see the formula test below."""
    problems = []
    listed = {4: 1680, 6: 124992, 8: 4145280}
    for n, want in listed.items():
        expect(problems, f"vs1(gold({n},1))", profile(C.gold(n, 1)).vs1, want)
    expect(problems, "vs1(kasami(8,3))", profile(C.kasami(8, 3)).vs1, 4145280)
    record(3, "vs1 of Gold n=4,6,8 and Kasami(8,3) equal the listed values", problems)


def test_criterion_03_formula_values():
    problems = []
    for n in (4, 6, 8):
        expect(problems, f"vs1(gold({n},1))", profile(C.gold(n, 1)).vs1, M.quadratic_apn_s1(n))
    expect(problems, "vs1(kasami(8,3))", profile(C.kasami(8, 3)).vs1, M.quadratic_apn_s1(8))
    assert M.quadratic_apn_s1(8) == 2 ** 7 * 255 * 254 == 8290560
    assert not problems, problems


def test_criterion_04_apn_by_s2():
    problems = []
    on_bound = [C.gold(n, 1) for n in range(3, 9)] + [C.kasami(8, 3), C.dillon_permutation()]
    for F in on_bound:
        expect(problems, f"vs2({F!r}, n={F.n})", profile(F).vs2, M.apn_s2_bound(F.n))
    below = [C.identity(n) for n in range(3, 9)] + [C.inverse_map(4), C.inverse_map(8)]
    below += list(random_non_apn())
    for F in below:
        o = M.check_apn_by_s2(F, profile(F))
        if o.relation != M.BELOW:
            problems.append(f"{F!r} n={F.n}: vs2 {o.relation} bound")
    record(4, f"vs2 on the bound for {len(on_bound)} APN maps, strictly below for {len(below)} non-APN", problems)


def test_criterion_05_per_direction():
    problems = []
    for F in apn_catalog():
        bad = [a for a, o in M.check_apn_per_direction(F, profile(F)).items() if not o.verdict]
        if bad or len(profile(F).per_direction_s2) != F.size - 1:
            problems.append(f"{F!r} n={F.n}: {len(bad)} directions off the bound")
    ctrl = list(controls()) + list(random_non_apn())
    for F in ctrl:
        if all(o.verdict for o in M.check_apn_per_direction(F, profile(F)).values()):
            problems.append(f"{F!r} n={F.n}: no deviating direction")
    record(5, f"per-direction s2 on {len(apn_catalog())} APN maps and {len(ctrl)} controls", problems)


def test_criterion_06_permutation_by_s1():
    problems = []
    funcs = list(apn_catalog()) + list(controls())
    for n in (3, 4, 5):
        funcs += [C.random_lut(n, [6, n, s]) for s in range(200)]
        funcs += [C.random_permutation(n, [6, n, s]) for s in range(150)]
    for F in funcs:
        verdict = M.check_permutation_by_s1(F, M.vectorial_profile(F)).verdict
        if verdict != O.naive_is_permutation(F):
            problems.append(f"{F!r} n={F.n}: verdict {verdict}")
    n_rand = len(funcs) - len(apn_catalog()) - len(controls())
    record(6, f"perm-s1 verdict = bijection on {len(funcs)} functions ({n_rand} random)", problems)


# --- scalar identity plan, shared by criteria 7 and 10 -------------------------------

def _plan():
    yield from ((3, f) for f in all_functions(3))
    for n in range(4, 9):
        yield from ((n, f) for f in seeded_functions(n, SAMPLES))
    for n in range(4, 9):
        yield from ((n, C.random_balanced(n, [7, n, s])) for s in range(SAMPLES))


@lru_cache(maxsize=None)
def identity_plan():
    """Per function: naive (literal) quantities and fast-path quantities."""
    rows = []
    for n, f in _plan():
        N = f.size
        dw = O.naive_derivative_weights(f)
        fd = [N - 2 * w for w in dw]  # F(D_a f)
        walsh = O.naive_walsh(f).values
        naive = {
            "s1": sum(dw[1:]),
            "s1_sq": sum(w * w for w in dw[1:]),
            "s2": O.naive_s2(f),
            "fourier_sq": sum(v * v for v in fd[1:]),
            "sum_fd": sum(fd),
            "walsh4": sum(int(v) ** 4 for v in walsh),
        }
        fast = {
            "s1": M.s1_total(f),
            "s1_fourier": M.s1_via_fourier(f),
            "s1_sq": M.s1_sq_total(f),
            "s2": M.s2_total(f),
            "s2_walsh": M.s2_via_walsh_moment(f),
            "s2_ac": M.s2_via_autocorrelation(f),
        }
        rows.append((n, f, naive, fast))
    return rows


@pytest.mark.slow
def test_criterion_07_identity_suites():
    problems = []
    rows = identity_plan()
    counts = {}
    for n, f, nv, fs in rows:
        counts[n] = counts.get(n, 0) + 1
        N, w = f.size, f.weight()
        tag = f"n={n} {f.to_bits() if n <= 4 else hash(f)}"
        fourier = N - 2 * w
        ell = abs((N >> 1) - w)
        checks = [
            ("weight/s1", nv["s1"], 2 * w * (N - w)),
            ("fourier-sq-sum", fourier ** 2, nv["sum_fd"]),
            ("s2-from-s1", nv["s2"], (N << 1) * nv["s1"] - 2 * nv["s1_sq"]),
            ("s2-autocorrelation", nv["s2"], (1 << (2 * n - 1)) * (N - 1) - nv["fourier_sq"] // 2),
            ("s2-walsh4", nv["s2"], (1 << (3 * n - 1)) - nv["walsh4"] // (2 * N)),
            ("ell-form", nv["s1"], (1 << (2 * n - 1)) - 2 * ell ** 2),
        ]
        if nv["fourier_sq"] % 2 or nv["walsh4"] % (2 * N):
            problems.append(f"{tag}: non-integral halving")
        if 2 * w == N:
            checks.append(("s2-balanced", nv["s2"], (1 << (3 * n)) - 2 * nv["s1_sq"]))
        for name, got, want in checks:
            if got != want:
                problems.append(f"{tag} {name}: {got} != {want}")
    balanced = sum(1 for _, f, _, _ in rows if f.is_balanced())
    short = [n for n in range(4, 9) if counts.get(n, 0) < SAMPLES]
    if counts.get(3) != 256 or short:
        problems.append(f"plan sizes {counts}")
    record(7, f"identity suites on {len(rows)} functions ({balanced} balanced) n=3..8", problems)


def test_criterion_08_class_closed_forms():
    problems = []
    bent = [C.quadratic_canonical(n, n // 2) for n in (2, 4, 6)]
    bent += [C.random_maiorana_mcfarland(n, s) for n in (2, 4, 6) for s in range(20)]
    for f in bent:
        n = f.n
        if not f.classify().is_bent:
            problems.append(f"catalog bent n={n} is not bent")
        expect(problems, f"s1 bent n={n}", M.s1_total(f), (1 << (2 * n - 1)) - (1 << (n - 1)))
        expect(problems, f"s2 bent n={n}", M.s2_total(f), (1 << (2 * n - 1)) * ((1 << n) - 1))
    non_bent = [f for n in (2, 4, 6) for f in seeded_functions(n, 100, seed=8) if not f.classify().is_bent]
    non_bent += [C.quadratic_canonical(n, k) for n in (2, 4, 6) for k in range(n // 2)]
    for f in non_bent:
        if M.check_bent_by_s2(f).relation != M.BELOW:
            problems.append(f"non-bent n={f.n}: s2 not strictly below")
    n_quad = 0
    for n in range(2, 9):
        for k in range(n // 2 + 1):
            for balanced in (False, True):
                if balanced and 2 * k >= n:
                    continue
                f = C.quadratic_canonical(n, k, balanced=balanced)
                kd = f.linear_space().dim
                n_quad += 1
                if f.is_balanced():
                    expect(problems, f"s1 balanced quadratic n={n}", M.s1_total(f), 1 << (2 * n - 1))
                else:
                    expect(problems, f"s1 quadratic n={n} dimV={kd}", M.s1_total(f),
                           M.closed_form_s1("quadratic", n, kd))
    for n in range(1, 9):
        for mask in range(1 << n):
            for c in (0, 1):
                f = BooleanFunction.linear(n, mask, c)
                if not f.classify().is_partially_bent:
                    problems.append(f"affine n={n} not partially bent")
                expect(problems, f"s2 affine n={n}", M.s2_total(f), 0)
    semi = [f for f in all_functions(3) if f.classify().plateaued_order == 2]
    for f in semi:
        want = M.closed_form_s1("plateaued", 3, 2) if not f.is_balanced() else M.closed_form_s1("balanced", 3)
        expect(problems, f"s1 semi-bent {f.to_bits()}", M.s1_total(f), want)
    unbalanced = [f for f in semi if not f.is_balanced()]
    if not unbalanced or any(M.s1_total(f) != 24 for f in unbalanced):
        problems.append("unbalanced semi-bent n=3 do not all give 24")
    record(8, f"closed forms: {len(bent)} bent, {len(non_bent)} non-bent, {n_quad} quadratics, "
              f"affine n<=8, {len(semi)} semi-bent n=3 ({len(unbalanced)} unbalanced -> 24)", problems)


def test_criterion_09_fsq_bounds():
    problems = []
    for F in apn_catalog():
        p = profile(F)
        expect(problems, f"fsq({F!r}, n={F.n})", p.fsq, M.fsq_bound(F.n))
        off = [a for a, v in p.per_direction_fsq.items() if v != M.fsq_direction_bound(F.n)]
        if off:
            problems.append(f"{F!r} n={F.n}: {len(off)} directions off 2^(2n+1)")
    ctrl = list(controls()) + list(random_non_apn())
    for F in ctrl:
        tot, per = M.check_fsq_bounds(F, profile(F))
        if tot.relation != M.ABOVE or per.relation != M.ABOVE:
            problems.append(f"{F!r} n={F.n}: not strict ({tot.relation}, {per.relation})")
    record(9, f"fsq bounds: equality on {len(apn_catalog())} APN maps, strict on {len(ctrl)} controls", problems)


@pytest.mark.slow
def test_criterion_10_oracle_equivalence():
    problems = []
    rng = np.random.default_rng(10)
    n_wht = 0
    for n in range(1, 4):
        for f in all_functions(n):
            n_wht += 1
            if not np.array_equal(f.walsh_transform().values, O.naive_walsh(f).values):
                problems.append(f"WHT mismatch {f.to_bits()}")
    for n in range(4, 7):
        for _ in range(300):
            f = BooleanFunction(n, rng.integers(0, 2, 1 << n))
            n_wht += 1
            if not np.array_equal(f.walsh_transform().values, O.naive_walsh(f).values):
                problems.append(f"WHT mismatch n={n}")
    # the raw butterfly against the definitional sum, independent of BooleanFunction
    signs = 1 - 2 * rng.integers(0, 2, 64)
    if not np.array_equal(fwht(signs), O.naive_walsh(BooleanFunction(6, (1 - signs) // 2)).values):
        problems.append("fwht butterfly mismatch")
    rows = identity_plan()
    for n, f, nv, fs in rows:
        if not (fs["s1"] == fs["s1_fourier"] == nv["s1"] and fs["s1_sq"] == nv["s1_sq"]
                and fs["s2"] == fs["s2_walsh"] == fs["s2_ac"] == nv["s2"]):
            problems.append(f"n={n}: fast {fs} vs naive {nv}")
    vec = list(apn_catalog()) + list(controls()) + list(random_non_apn())
    vec += [C.power_map(n, d) for n in range(3, 8) for d in range(1 << n)]
    vec += [C.random_permutation(n, [10, n, s]) for n in (3, 4, 5) for s in range(50)]
    for F in vec:
        ddt_apn = O.naive_ddt_apn(F)[1]
        if ddt_apn != F.is_apn() or ddt_apn != M.check_apn_by_s2(F, profile(F)).verdict:
            problems.append(f"{F!r} n={F.n}: DDT apn={ddt_apn}")
    record(10, f"oracle equivalence: {n_wht} spectra, {len(rows)} s1/s2 plan functions, "
               f"{len(vec)} DDT-vs-s2 verdicts", problems)


# A worked-example value that disagrees with its own formula. Strict xfail: if it ever
# passes, the arithmetic above has changed.

@pytest.mark.xfail(strict=True, reason="listed 8,001,792 != 2^11*63*62 = 7,999,488")
def test_listed_dillon_vs2():
    assert profile(C.dillon_permutation()).vs2 == 8001792
