"""Vectorial Boolean functions F: F_2^n -> F_2^n as lookup tables."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boolfun import BooleanFunction, check_n, fwht, mobius, parity
from .gf2n import FieldContext, parse_field_spec

MAX_N = 20
DDT_FULL_MAX_N = 12


class VectorialFunctionError(ValueError):
    pass


class VectorialFunction:
    """Immutable LUT of 2^n outputs, each in [0, 2^n)."""

    __slots__ = ("n", "_lut", "provenance")

    def __init__(self, n: int, lut, provenance: dict | None = None, cap: int = MAX_N):
        n = check_n(n, cap)
        arr = np.array(lut, dtype=np.int64).ravel()
        if arr.size != 1 << n:
            raise VectorialFunctionError(f"LUT has {arr.size} entries, expected {1 << n}")
        if arr.size and (arr.min() < 0 or arr.max() >= 1 << n):
            raise VectorialFunctionError(f"LUT entries must lie in [0, {1 << n})")
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_lut", arr)
        object.__setattr__(self, "provenance", dict(provenance or {}))

    def __setattr__(self, key, value):
        raise AttributeError("VectorialFunction is immutable")

    @property
    def lut(self) -> np.ndarray:
        return self._lut

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return int(self._lut[x])

    def __eq__(self, other):
        if not isinstance(other, VectorialFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._lut, other._lut)

    def __hash__(self):
        return hash((self.n, self._lut.tobytes()))

    def __repr__(self):
        name = self.provenance.get("name", "")
        return f"VectorialFunction(n={self.n}{', ' + name if name else ''})"

    @classmethod
    def identity(cls, n: int) -> "VectorialFunction":
        return cls(n, np.arange(1 << n), {"name": "identity"})

    # --- components ---

    def component(self, lam: int) -> BooleanFunction:
        """x -> lam . F(x); the zero mask is rejected."""
        if not 1 <= lam < self.size:
            raise VectorialFunctionError(f"component mask must be in [1, {self.size}), got {lam}")
        return BooleanFunction(self.n, parity(self._lut & lam))

    def components(self) -> np.ndarray:
        """Row lam holds the truth table of lam . F (row 0 is the zero function)."""
        lam = np.arange(self.size, dtype=np.int64)
        return parity(lam[:, None] & self._lut[None, :]).astype(np.uint8)

    def coordinate(self, j: int) -> BooleanFunction:
        return self.component(1 << j)

    def walsh_matrix(self) -> np.ndarray:
        """W[lam, u] = sum_x (-1)^(lam.F(x) + u.x)."""
        graph = np.zeros((self.size, self.size), dtype=np.int64)
        graph[self._lut, np.arange(self.size)] = 1
        return fwht(fwht(graph, axis=0), axis=1)

    def autocorrelation_matrix(self) -> np.ndarray:
        """A[lam, a] = F(D_a F_lam) = sum_x (-1)^(lam.(F(x) + F(x+a))).

        Obtained from the DDT as A[lam, a] = sum_b ddt[a, b] (-1)^(lam.b).
        """
        return np.ascontiguousarray(fwht(self.ddt().counts, axis=1).T)

    # --- permutation / differential properties ---

    def is_permutation(self) -> bool:
        return np.unique(self._lut).size == self.size

    def inverse(self) -> "VectorialFunction":
        if not self.is_permutation():
            raise VectorialFunctionError("not a permutation")
        inv = np.empty_like(self._lut)
        inv[self._lut] = np.arange(self.size)
        return VectorialFunction(self.n, inv)

    def ddt_row(self, a: int) -> np.ndarray:
        idx = np.arange(self.size)
        return np.bincount(self._lut ^ self._lut[idx ^ a], minlength=self.size)

    def ddt(self) -> "DifferenceDistributionTable":
        if self.n > DDT_FULL_MAX_N:
            raise VectorialFunctionError(
                f"full DDT is only materialized for n <= {DDT_FULL_MAX_N}; "
                "use differential_uniformity() for larger n"
            )
        size = self.size
        idx = np.arange(size)
        diffs = self._lut[None, :] ^ self._lut[idx[:, None] ^ idx[None, :]]
        flat = np.bincount((diffs + (idx * size)[:, None]).ravel(), minlength=size * size)
        return DifferenceDistributionTable(self.n, flat.reshape(size, size))

    def differential_uniformity(self) -> int:
        if self.n <= DDT_FULL_MAX_N:
            return self.ddt().differential_uniformity()
        return max(int(self.ddt_row(a).max()) for a in range(1, self.size))

    def is_apn(self) -> bool:
        return self.differential_uniformity() == 2

    def degree(self) -> int:
        """max over lam != 0 of deg(lam . F).

        A sum of coordinates never exceeds the largest coordinate degree, and every
        coordinate is itself a component, so the coordinate maximum is the answer.
        """
        coords = parity(self._lut[None, :] & (1 << np.arange(self.n))[:, None]).astype(np.uint8)
        anf = mobius(coords, axis=1)
        weights = np.bitwise_count(np.arange(self.size, dtype=np.uint64))
        deg = 0
        for row in anf:
            nz = weights[row.astype(bool)]
            if nz.size:
                deg = max(deg, int(nz.max()))
        return deg

    def nonlinearity(self) -> int:
        w = np.abs(self.walsh_matrix()[1:])
        return (1 << (self.n - 1)) - int(w.max()) // 2

    # --- serialization ---

    def to_text(self, header: bool = True, hex_values: bool = False) -> str:
        fmt = (lambda v: f"0x{v:x}") if hex_values else str
        body = " ".join(fmt(int(v)) for v in self._lut)
        return (f"n={self.n}\n" if header else "") + body + "\n"

    # --- field constructions ---

    @classmethod
    def from_power(cls, ctx: FieldContext, d: int) -> "VectorialFunction":
        if not 0 <= d <= ctx.order - 1:
            raise VectorialFunctionError(f"exponent must be in [0, {ctx.order - 1}], got {d}")
        lut = ctx.pow_array(ctx.elements(), d)
        prov = {"kind": "power", "exponent": d, "n": ctx.n, "modulus": ctx.modulus}
        return cls(ctx.n, lut, prov)

    @classmethod
    def from_univariate(cls, ctx: FieldContext, coeffs) -> "VectorialFunction":
        """Evaluate sum_i coeffs[i] x^i at every field element."""
        coeffs = [ctx.check(int(c)) for c in coeffs]
        if len(coeffs) > ctx.order:
            raise VectorialFunctionError(f"at most {ctx.order} coefficients allowed")
        xs = ctx.elements()
        acc = np.zeros(ctx.order, dtype=np.int64)
        # Horner from the top coefficient down
        for c in reversed(coeffs):
            acc = ctx.mul_array(acc, xs) ^ c
        nonzero = [i for i, c in enumerate(coeffs) if c]
        prov = {
            "kind": "univariate",
            "coeffs": coeffs,
            "n": ctx.n,
            "modulus": ctx.modulus,
            "w2_degree": max((bin(i).count("1") for i in nonzero), default=0),
        }
        return cls(ctx.n, acc, prov)

    def trace_component(self, ctx: FieldContext, nu: int) -> BooleanFunction:
        """x -> Tr(nu F(x))."""
        if ctx.n != self.n:
            raise VectorialFunctionError("field dimension mismatch")
        return BooleanFunction(self.n, ctx.trace_array(ctx.mul_array(self._lut, nu)))


@dataclass(frozen=True, eq=False)
class DifferenceDistributionTable:
    n: int
    counts: np.ndarray = field(repr=False)

    def __getitem__(self, ab):
        return int(self.counts[ab])

    def differential_uniformity(self) -> int:
        if self.counts.shape[0] < 2:
            return int(self.counts.max())
        return int(self.counts[1:].max())

    def is_apn(self) -> bool:
        return self.differential_uniformity() == 2


# --- text formats and spec strings ---

_INT = r"(0[xX][0-9a-fA-F]+|0[bB][01]+|\d+)"


def parse_lut(text: str) -> VectorialFunction:
    """Whitespace/comma separated integers (decimal or 0x-hex) with optional 'n=<k>' header."""
    n = None
    body = []
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("n=") and n is None and not body:
            try:
                n = int(s[2:])
            except ValueError:
                raise VectorialFunctionError(f"bad header {s!r}") from None
            continue
        body.extend(t for t in re.split(r"[\s,]+", s) if t)
    try:
        values = [int(t, 0) for t in body]
    except ValueError as exc:
        raise VectorialFunctionError(f"bad LUT entry: {exc}") from None
    size = len(values)
    if size < 2 or size & (size - 1):
        raise VectorialFunctionError(f"LUT length {size} is not 2^n with n >= 1")
    inferred = size.bit_length() - 1
    if n is not None and n != inferred:
        raise VectorialFunctionError(f"header says n={n} but LUT has {size} entries")
    return VectorialFunction(inferred, values, {"kind": "lut"})


def load_lut(path) -> VectorialFunction:
    f = parse_lut(Path(path).read_text())
    f.provenance["file"] = str(path)
    return f


def parse_power_spec(spec: str, modulus=None) -> VectorialFunction:
    """'n=<k>,d=<int>[,poly=<mask>]'"""
    n, poly = parse_field_spec(spec)
    m = re.search(r"\bd\s*=\s*" + _INT, spec)
    if not m:
        raise VectorialFunctionError(f"missing d=<exponent> in {spec!r}")
    ctx = FieldContext.build(n, poly if poly is not None else modulus)
    return VectorialFunction.from_power(ctx, int(m.group(1), 0))


def parse_univariate_spec(spec: str, modulus=None) -> VectorialFunction:
    """'n=<k>,coeffs=<c_0,c_1,...>[,poly=<mask>]'"""
    n, poly = parse_field_spec(spec)
    m = re.search(r"\bcoeffs\s*=\s*([0-9a-fA-FxXbB,\s]+?)(?:,\s*poly\s*=|$)", spec)
    if not m:
        raise VectorialFunctionError(f"missing coeffs=<...> in {spec!r}")
    try:
        coeffs = [int(t, 0) for t in re.split(r"[,\s]+", m.group(1).strip()) if t]
    except ValueError as exc:
        raise VectorialFunctionError(f"bad coefficient: {exc}") from None
    ctx = FieldContext.build(n, poly if poly is not None else modulus)
    return VectorialFunction.from_univariate(ctx, coeffs)
