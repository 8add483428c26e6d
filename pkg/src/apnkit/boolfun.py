"""Single-output Boolean functions on F_2^n stored as truth tables.

Input index convention: x = (x_1, ..., x_n) is the integer whose bit (j-1) is x_j,
so a.x = popcount(a & x) mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

MAX_N = 20


class BooleanFunctionError(ValueError):
    pass


def check_n(n: int, cap: int = MAX_N) -> int:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= cap:
        raise BooleanFunctionError(f"n must be an integer in [1, {cap}], got {n!r}")
    return int(n)


def parity(v):
    """a.x convention helper: popcount(v) mod 2, elementwise."""
    return np.bitwise_count(np.asarray(v, dtype=np.uint64)) & 1


def fwht(values, axis: int = -1) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along `axis` (length 2^n).

    Butterfly with exact int64 arithmetic; returns a new array.
    """
    a = np.moveaxis(np.asarray(values, dtype=np.int64), axis, -1)
    a = np.ascontiguousarray(a).copy()
    size = a.shape[-1]
    if size & (size - 1):
        raise BooleanFunctionError(f"length {size} is not a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] += hi
        v[..., 1, :] = lo - hi
        h *= 2
    return np.moveaxis(a, -1, axis)


def mobius(bits, axis: int = -1) -> np.ndarray:
    """Binary Moebius transform (truth table <-> ANF coefficients); an involution."""
    a = np.moveaxis(np.asarray(bits, dtype=np.uint8), axis, -1)
    a = np.ascontiguousarray(a).copy()
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        v[..., 1, :] ^= v[..., 0, :]
        h *= 2
    return np.moveaxis(a, -1, axis)


def power_sum(values, p: int) -> int:
    """Exact sum of v**p over an integer array (no int64 overflow)."""
    vals, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
    return sum(int(c) * int(v) ** p for v, c in zip(vals, counts))


class BooleanFunction:
    """Immutable truth table of f: F_2^n -> F_2."""

    __slots__ = ("n", "_tt")

    def __init__(self, n: int, table, cap: int = MAX_N):
        n = check_n(n, cap)
        tt = np.array(table, dtype=np.uint8).ravel()
        if tt.size != 1 << n:
            raise BooleanFunctionError(f"table has {tt.size} entries, expected {1 << n}")
        if tt.size and tt.max() > 1:
            raise BooleanFunctionError("truth table entries must be 0 or 1")
        tt.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_tt", tt)

    def __setattr__(self, key, value):
        raise AttributeError("BooleanFunction is immutable")

    @property
    def table(self) -> np.ndarray:
        return self._tt

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return int(self._tt[x])

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._tt, other._tt)

    def __hash__(self):
        return hash((self.n, self._tt.tobytes()))

    def __repr__(self):
        bits = self.to_bits()
        if len(bits) > 32:
            bits = bits[:32] + "..."
        return f"BooleanFunction(n={self.n}, {bits})"

    # --- constructors ---

    @classmethod
    def from_bits(cls, bits: str, n: int | None = None) -> "BooleanFunction":
        bits = "".join(bits.split())
        if not bits or set(bits) - {"0", "1"}:
            raise BooleanFunctionError("truth table must be a string of 0/1 characters")
        size = len(bits)
        if size & (size - 1) or size < 2:
            raise BooleanFunctionError(f"truth table length {size} is not 2^n with n >= 1")
        if n is None:
            n = size.bit_length() - 1
        return cls(n, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))

    @classmethod
    def from_callable(cls, n: int, fn) -> "BooleanFunction":
        return cls(n, [fn(x) & 1 for x in range(1 << n)])

    @classmethod
    def from_int(cls, n: int, value: int) -> "BooleanFunction":
        """Bit i of `value` is f(i)."""
        return cls(n, [(value >> i) & 1 for i in range(1 << n)])

    @classmethod
    def constant(cls, n: int, c: int = 0) -> "BooleanFunction":
        return cls(n, np.full(1 << n, c & 1, dtype=np.uint8))

    @classmethod
    def linear(cls, n: int, mask: int, c: int = 0) -> "BooleanFunction":
        """x -> mask.x + c"""
        return cls(n, parity(np.arange(1 << n) & mask) ^ (c & 1))

    @classmethod
    def from_bytes(cls, data: bytes, n: int | None = None) -> "BooleanFunction":
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        if n is None:
            n = bits.size.bit_length() - 1
        if bits.size != 1 << n or n < 3:
            raise BooleanFunctionError("binary truth tables hold 2^n/8 bytes with n >= 3")
        return cls(n, bits)

    # --- serialization ---

    def to_bits(self) -> str:
        return (self._tt + ord("0")).tobytes().decode()

    def to_text(self, header: bool = True) -> str:
        head = f"n={self.n}\n" if header else ""
        return head + self.to_bits() + "\n"

    def to_bytes(self) -> bytes:
        if self.n < 3:
            raise BooleanFunctionError("binary format needs n >= 3")
        return np.packbits(self._tt, bitorder="little").tobytes()

    # --- basic metrics ---

    def weight(self) -> int:
        return int(self._tt.sum(dtype=np.int64))

    def fourier(self) -> int:
        """F(f) = sum_x (-1)^f(x) = 2^n - 2 wt(f)."""
        return self.size - 2 * self.weight()

    def is_balanced(self) -> bool:
        return 2 * self.weight() == self.size

    def is_constant(self) -> bool:
        w = self.weight()
        return w == 0 or w == self.size

    def signs(self) -> np.ndarray:
        return 1 - 2 * self._tt.astype(np.int64)

    def __add__(self, other: "BooleanFunction") -> "BooleanFunction":
        if self.n != other.n:
            raise BooleanFunctionError("dimension mismatch")
        return BooleanFunction(self.n, self._tt ^ other._tt)

    def _direction(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise BooleanFunctionError(f"direction {a} out of range for n={self.n}")
        return int(a)

    def shift(self, a: int) -> "BooleanFunction":
        """x -> f(x + a)"""
        a = self._direction(a)
        return BooleanFunction(self.n, self._tt[np.arange(self.size) ^ a])

    def derivative(self, a: int) -> "BooleanFunction":
        a = self._direction(a)
        return BooleanFunction(self.n, self._tt ^ self._tt[np.arange(self.size) ^ a])

    def second_derivative(self, a: int, b: int) -> "BooleanFunction":
        a, b = self._direction(a), self._direction(b)
        idx = np.arange(self.size)
        t = self._tt
        return BooleanFunction(self.n, t ^ t[idx ^ a] ^ t[idx ^ b] ^ t[idx ^ a ^ b])

    # --- spectra ---

    def walsh_transform(self) -> "WalshSpectrum":
        return WalshSpectrum(self.n, fwht(self.signs()))

    def autocorrelation(self) -> np.ndarray:
        """Entry a is F(D_a f), obtained as WHT(W^2) / 2^n."""
        w = self.walsh_transform().values
        return fwht(w * w) >> self.n

    def nonlinearity(self) -> int:
        return self.walsh_transform().nonlinearity()

    def anf(self) -> "AnfPolynomial":
        return AnfPolynomial(self.n, mobius(self._tt))

    def degree(self) -> int:
        return self.anf().degree()

    def linear_space(self) -> "LinearSpace":
        return LinearSpace.of(self)

    def classify(self) -> "Classification":
        return classify(self)


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __getitem__(self, a):
        return int(self.values[a])

    def __len__(self):
        return self.values.size

    def __eq__(self, other):
        return (
            isinstance(other, WalshSpectrum)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    def max_abs(self) -> int:
        return int(np.abs(self.values).max())

    def nonlinearity(self) -> int:
        return (1 << (self.n - 1)) - self.max_abs() // 2

    def moment(self, p: int) -> int:
        return power_sum(self.values, p)

    def parseval_ok(self) -> bool:
        return self.moment(2) == 1 << (2 * self.n)

    def plateaued_order(self) -> int | None:
        """Even r with every nonzero W^2 equal to 2^(2n - r), or None."""
        sq = np.unique(self.values[self.values != 0] ** 2)
        if sq.size != 1:
            return None
        v = int(sq[0])
        if v & (v - 1):
            return None
        r = 2 * self.n - (v.bit_length() - 1)
        if r < 0 or r > self.n or r % 2:
            return None
        return r


@dataclass(frozen=True, eq=False)
class AnfPolynomial:
    """coeffs[I] = a_I for the monomial prod_{j in I} x_j, I a subset bitmask."""

    n: int
    coeffs: np.ndarray

    def monomials(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.coeffs)]

    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            return 0
        return int(np.bitwise_count(nz.astype(np.uint64)).max())

    def truth_table(self) -> BooleanFunction:
        return BooleanFunction(self.n, mobius(self.coeffs))

    def __str__(self):
        terms = []
        for m in self.monomials():
            if m == 0:
                terms.append("1")
            else:
                terms.append("".join(f"x{j + 1}" for j in range(self.n) if m >> j & 1))
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class LinearSpace:
    """V(f): directions a with D_a f constant, plus that constant."""

    dim: int
    basis: tuple[int, ...]
    constant_map: dict = field(hash=False, compare=False)

    @classmethod
    def of(cls, f: BooleanFunction) -> "LinearSpace":
        ac = f.autocorrelation()
        consts = {int(a): int(ac[a] < 0) for a in np.flatnonzero(np.abs(ac) == f.size)}
        basis = []
        pivots = {}  # leading bit -> reduced vector
        for a in sorted(consts):
            r = a
            while r:
                top = r.bit_length() - 1
                if top not in pivots:
                    pivots[top] = r
                    basis.append(a)
                    break
                r ^= pivots[top]
        space = cls(len(basis), tuple(basis), consts)
        if len(consts) != 1 << space.dim:
            raise AssertionError("linear structures are not closed under addition")
        return space

    def elements(self) -> list[int]:
        return sorted(self.constant_map)

    def __contains__(self, a: int) -> bool:
        return a in self.constant_map


@dataclass(frozen=True)
class Classification:
    is_balanced: bool
    is_bent: bool
    is_semi_bent: bool
    plateaued_order: int | None
    is_partially_bent: bool
    is_quadratic: bool
    nonlinearity: int
    degree: int
    linear_space_dim: int

    @property
    def is_plateaued(self) -> bool:
        return self.plateaued_order is not None


def semi_bent_nonlinearity(n: int) -> int:
    if n % 2:
        return (1 << (n - 1)) - (1 << ((n - 1) // 2))
    return (1 << (n - 1)) - (1 << (n // 2))


def classify(f: BooleanFunction) -> Classification:
    n = f.n
    spec = f.walsh_transform()
    nl = spec.nonlinearity()
    absw = np.abs(spec.values)
    bent = n % 2 == 0 and bool(np.all(absw == 1 << (n // 2)))
    # partially bent: each D_a f is balanced (F = 0) or constant (|F| = 2^n)
    ac = fwht(spec.values * spec.values) >> n
    partially = bool(np.all((ac == 0) | (np.abs(ac) == f.size)))
    deg = f.degree()
    dim_v = int(np.count_nonzero(np.abs(ac) == f.size)).bit_length() - 1
    return Classification(
        is_balanced=f.is_balanced(),
        is_bent=bent,
        is_semi_bent=nl == semi_bent_nonlinearity(n),
        plateaued_order=spec.plateaued_order(),
        is_partially_bent=partially,
        is_quadratic=deg == 2,
        nonlinearity=nl,
        degree=deg,
        linear_space_dim=dim_v,
    )


# --- text / binary formats ---

def parse_truth_table(text: str) -> BooleanFunction:
    """Single line of 0/1 characters, optionally preceded by an 'n=<k>' line."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    n = None
    if lines and lines[0].startswith("n="):
        try:
            n = int(lines[0][2:])
        except ValueError:
            raise BooleanFunctionError(f"bad header {lines[0]!r}") from None
        lines = lines[1:]
    if len(lines) != 1:
        raise BooleanFunctionError("expected exactly one line of truth-table bits")
    f = BooleanFunction.from_bits(lines[0])
    if n is not None and n != f.n:
        raise BooleanFunctionError(f"header says n={n} but table has 2^{f.n} entries")
    return f


def load_truth_table(path) -> BooleanFunction:
    p = Path(path)
    data = p.read_bytes()
    try:
        text = data.decode("ascii")
        if set(text) <= set("01n=0123456789\r\n \t#"):
            return parse_truth_table(text)
    except UnicodeDecodeError:
        pass
    return BooleanFunction.from_bytes(data)
