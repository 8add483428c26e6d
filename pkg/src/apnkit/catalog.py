"""Known-answer function families: power maps, the n=6 APN permutation, bent and
quadratic generators, and seeded random inputs.

Declared properties on a CatalogEntry are claims, re-measured by `CatalogEntry.check`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .boolfun import BooleanFunction, parity
from .gf2n import FieldContext
from .vectorial import VectorialFunction


class CatalogError(ValueError):
    pass


# APN permutation of F_2^6 from Browning, Dillon, McQuistan and Wolfe (2010),
# in the LUT form circulated with the open-butterfly decomposition of Perrin et al.
DILLON_LUT = (
    0, 54, 48, 13, 15, 18, 53, 35, 25, 63, 45, 52, 3, 20, 41, 33,
    59, 36, 2, 34, 10, 8, 57, 37, 60, 19, 42, 14, 50, 26, 58, 24,
    39, 27, 21, 17, 16, 29, 1, 62, 47, 40, 51, 56, 7, 43, 44, 38,
    31, 11, 4, 28, 61, 46, 5, 49, 9, 6, 23, 32, 30, 12, 55, 22,
)
DILLON_SHA256 = "59e2605fd8b117f2cb23408026ade98035874de87881d3e0faf85b168252e710"


# --- vectorial families -----------------------------------------------------

def _ctx(n: int, modulus=None) -> FieldContext:
    return FieldContext.build(n, modulus)


def power_map(n: int, d: int, modulus=None, name: str | None = None) -> VectorialFunction:
    F = VectorialFunction.from_power(_ctx(n, modulus), d)
    if name:
        F.provenance["name"] = name
    return F


def gold(n: int, k: int = 1, modulus=None) -> VectorialFunction:
    """x^(2^k + 1), APN whenever gcd(k, n) = 1."""
    if not 1 <= k < n or gcd(k, n) != 1:
        raise CatalogError(f"gold needs 1 <= k < n and gcd(k, n) = 1 (n={n}, k={k})")
    return power_map(n, (1 << k) + 1, modulus, name=f"gold(n={n},k={k})")


def kasami(n: int, k: int = 1, modulus=None) -> VectorialFunction:
    """x^(2^(2k) - 2^k + 1), APN whenever gcd(k, n) = 1."""
    if not 1 <= k < n or gcd(k, n) != 1:
        raise CatalogError(f"kasami needs 1 <= k < n and gcd(k, n) = 1 (n={n}, k={k})")
    d = (1 << (2 * k)) - (1 << k) + 1
    # exponents act modulo 2^n - 1 on the nonzero elements; keep 0 -> 0
    d = d % ((1 << n) - 1) or (1 << n) - 1
    return power_map(n, d, modulus, name=f"kasami(n={n},k={k})")


def inverse_map(n: int, modulus=None) -> VectorialFunction:
    """x^(2^n - 2) with 0 -> 0."""
    if n < 2:
        return VectorialFunction.identity(n)
    return power_map(n, (1 << n) - 2, modulus, name=f"inverse(n={n})")


def dillon_permutation() -> VectorialFunction:
    if hashlib.sha256(bytes(DILLON_LUT)).hexdigest() != DILLON_SHA256:
        raise CatalogError("Dillon LUT fixture failed its integrity checksum")
    return VectorialFunction(6, DILLON_LUT, {"kind": "lut-fixture", "name": "dillon"})


def identity(n: int) -> VectorialFunction:
    return VectorialFunction.identity(n)


def random_lut(n: int, seed: int) -> VectorialFunction:
    rng = np.random.default_rng(seed)
    return VectorialFunction(n, rng.integers(0, 1 << n, 1 << n), {"kind": "random-lut", "seed": seed})


def random_permutation(n: int, seed: int) -> VectorialFunction:
    rng = np.random.default_rng(seed)
    return VectorialFunction(n, rng.permutation(1 << n), {"kind": "random-permutation", "seed": seed})


# --- Boolean families -------------------------------------------------------

def quadratic_canonical(n: int, k: int, balanced: bool = False, c: int = 0) -> BooleanFunction:
    """x1x2 + ... + x(2k-1)x(2k) + x(2k+1) (balanced) or + c (unbalanced)."""
    limit = (n - 1) // 2 if balanced else n // 2
    if not 0 <= k <= limit:
        raise CatalogError(f"k must be in [0, {limit}] for n={n} ({'balanced' if balanced else 'unbalanced'})")
    x = np.arange(1 << n)
    tt = np.zeros(1 << n, dtype=np.uint8)
    for i in range(k):
        tt ^= ((x >> (2 * i)) & (x >> (2 * i + 1)) & 1).astype(np.uint8)
    if balanced:
        tt ^= ((x >> (2 * k)) & 1).astype(np.uint8)
    else:
        tt ^= c & 1
    return BooleanFunction(n, tt)


def maiorana_mcfarland(n: int, perm=None, g=None) -> BooleanFunction:
    """f(x, y) = x . perm(y) + g(y); x is the low half of the input bits, y the high half."""
    if n % 2 or n < 2:
        raise CatalogError("Maiorana-McFarland needs even n >= 2")
    m = n // 2
    half = 1 << m
    perm = np.arange(half) if perm is None else np.asarray(perm, dtype=np.int64)
    g = np.zeros(half, dtype=np.int64) if g is None else np.asarray(g, dtype=np.int64) & 1
    if perm.shape != (half,) or np.unique(perm).size != half or perm.min() < 0 or perm.max() >= half:
        raise CatalogError("perm must be a bijection of [0, 2^(n/2))")
    if g.shape != (half,):
        raise CatalogError("g must have 2^(n/2) entries")
    idx = np.arange(1 << n)
    x, y = idx & (half - 1), idx >> m
    return BooleanFunction(n, parity(x & perm[y]) ^ g[y])


def random_maiorana_mcfarland(n: int, seed: int) -> BooleanFunction:
    rng = np.random.default_rng(seed)
    half = 1 << (n // 2)
    return maiorana_mcfarland(n, rng.permutation(half), rng.integers(0, 2, half))


def random_balanced(n: int, seed: int) -> BooleanFunction:
    rng = np.random.default_rng(seed)
    tt = np.zeros(1 << n, dtype=np.uint8)
    tt[rng.permutation(1 << n)[: 1 << (n - 1)]] = 1
    return BooleanFunction(n, tt)


def random_function(n: int, seed: int) -> BooleanFunction:
    rng = np.random.default_rng(seed)
    return BooleanFunction(n, rng.integers(0, 2, 1 << n))


# --- registry ---------------------------------------------------------------

@dataclass
class CatalogEntry:
    name: str
    kind: str
    parameters: dict
    expected_properties: dict = field(default_factory=dict)
    notes: str = ""

    def build(self):
        return _BUILDERS[self.kind](**self.parameters)

    def check(self, func=None) -> dict:
        """Re-measure every declared property; raises CatalogError on disagreement."""
        from . import metrics

        func = self.build() if func is None else func
        measured = {}
        for key, want in self.expected_properties.items():
            if isinstance(func, VectorialFunction):
                if key == "is_permutation":
                    got = func.is_permutation()
                elif key == "is_apn":
                    got = func.is_apn()
                elif key == "delta":
                    got = func.differential_uniformity()
                elif key in ("vs1", "vs1_sq", "vs2"):
                    got = getattr(metrics.vectorial_profile(func), key)
                elif key == "degree":
                    got = func.degree()
                else:
                    raise CatalogError(f"unknown property {key!r}")
            else:
                cls = func.classify()
                if key == "weight":
                    got = func.weight()
                elif key in ("s1", "s2"):
                    got = getattr(metrics.scalar_profile(func), key)
                elif hasattr(cls, key):
                    got = getattr(cls, key)
                else:
                    raise CatalogError(f"unknown property {key!r}")
            measured[key] = got
            if got != want:
                raise CatalogError(f"{self.name}: {key} measured {got}, declared {want}")
        return measured


_BUILDERS = {
    "power": lambda n, d, modulus=None: power_map(n, d, modulus),
    "gold": gold,
    "kasami": kasami,
    "inverse": inverse_map,
    "lut-fixture": lambda name: dillon_permutation(),
    "identity": identity,
    "quadratic-form": quadratic_canonical,
    "maiorana-mcfarland": lambda n, seed=None: (
        maiorana_mcfarland(n) if seed is None else random_maiorana_mcfarland(n, seed)
    ),
    "random-balanced": random_balanced,
    "random-lut": random_lut,
    "random-permutation": random_permutation,
}

# name -> (kind, required parameters, short description)
FAMILIES = {
    "identity": ("identity", ("n",), "identity permutation"),
    "gold": ("gold", ("n", "k"), "Gold power map x^(2^k+1)"),
    "kasami": ("kasami", ("n", "k"), "Kasami power map x^(2^2k-2^k+1)"),
    "inverse": ("inverse", ("n",), "inverse map x^(2^n-2)"),
    "dillon": ("lut-fixture", (), "APN permutation of F_2^6 (fixed LUT)"),
    "quadratic": ("quadratic-form", ("n", "k"), "canonical quadratic form (Boolean)"),
    "mm": ("maiorana-mcfarland", ("n",), "Maiorana-McFarland bent function (Boolean)"),
    "random-balanced": ("random-balanced", ("n", "seed"), "seeded balanced Boolean function"),
    "random-lut": ("random-lut", ("n", "seed"), "seeded random LUT"),
    "random-perm": ("random-permutation", ("n", "seed"), "seeded random permutation"),
}


def entry(name: str, n: int | None = None, k: int | None = None, seed: int | None = None,
          balanced: bool = False, c: int = 0, modulus=None) -> CatalogEntry:
    if name not in FAMILIES:
        raise CatalogError(f"unknown catalog name {name!r}; try one of {sorted(FAMILIES)}")
    kind, required, desc = FAMILIES[name]
    params: dict = {}
    if "n" in required:
        if n is None:
            raise CatalogError(f"{name} needs --n")
        params["n"] = n
    if name in ("gold", "kasami"):
        params["k"] = 1 if k is None else k
    if name == "quadratic":
        params.update(k=(n // 2 if k is None else k), balanced=balanced, c=c)
    if "seed" in required:
        params["seed"] = 0 if seed is None else seed
    if name == "mm" and seed is not None:
        params["seed"] = seed
    if name == "dillon":
        params["name"] = "dillon"
    if modulus is not None and name in ("gold", "kasami", "inverse"):
        params["modulus"] = modulus
    return CatalogEntry(name, kind, params, _expected(name, params), desc)


def _expected(name: str, p: dict) -> dict:
    n = p.get("n")
    if name == "dillon":
        return {
            "is_permutation": True,
            "is_apn": True,
            "vs1": 129024,  # 2^11 (2^6 - 1)
            "vs1_sq": 4257792,  # 2^11 (2^6 - 1)(2^5 + 1)
            "vs2": 7999488,  # 2^11 (2^6 - 1)(2^6 - 2)
        }
    if name == "gold":
        return {"is_apn": True, "is_permutation": n % 2 == 1, "degree": 2}
    if name == "kasami":
        return {"is_apn": True}
    if name == "identity":
        return {"is_permutation": True, "delta": 1 << n, "degree": 1}
    if name == "inverse":
        return {"is_permutation": True}
    if name == "mm":
        return {"is_bent": True}
    if name == "random-balanced":
        return {"weight": 1 << (n - 1)}
    if name == "random-perm":
        return {"is_permutation": True}
    return {}


def get(name: str, **kwargs):
    """Build a catalog function and re-check its declared properties."""
    e = entry(name, **kwargs)
    func = e.build()
    e.check(func)
    if isinstance(func, VectorialFunction):
        func.provenance.setdefault("name", name)
        func.provenance["catalog"] = {"name": name, **{k: v for k, v in e.parameters.items() if k != "name"}}
    return e, func


def apn_catalog(max_n: int = 8) -> list[VectorialFunction]:
    """Every APN catalog function up to max_n: Gold and Kasami maps for each valid k,
    the inverse map in odd dimension, and the n=6 permutation."""
    out: dict[tuple, VectorialFunction] = {}
    for n in range(3, max_n + 1):
        for k in range(1, n):
            if gcd(k, n) != 1:
                continue
            for F in (gold(n, k), kasami(n, k)):
                out.setdefault((n, F.provenance["exponent"]), F)
        if n % 2:
            F = inverse_map(n)
            out.setdefault((n, F.provenance["exponent"]), F)
    if max_n >= 6:
        out[(6, "dillon")] = dillon_permutation()
    return list(out.values())


def non_apn_controls(max_n: int = 8) -> list[VectorialFunction]:
    out = [identity(n) for n in range(2, max_n + 1)]
    out += [inverse_map(n) for n in range(4, max_n + 1, 2)]
    return out
