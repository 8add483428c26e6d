"""Arithmetic in GF(2^n) with elements stored as polynomial-basis bitmasks."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_N = 20

# Lowest-weight, then numerically smallest, irreducible polynomial of each degree.
# Regenerated and checked against `find_default_modulus` in the test suite.
DEFAULT_MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000000011,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000000001001,
    13: 0b10000000011011,
    14: 0b100000000100001,
    15: 0b1000000000000011,
    16: 0b10000000000101011,
    17: 0b100000000000001001,
    18: 0b1000000000000001001,
    19: 0b10000000000000100111,
    20: 0b100000000000000001001,
}


class FieldError(ValueError):
    pass


# --- polynomials over GF(2) as python ints ---------------------------------

def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == m.bit_length():
            a ^= m
    return r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def is_irreducible(m: int) -> bool:
    """Rabin's test: x^(2^n) = x mod m and gcd(x^(2^(n/q)) - x, m) = 1 for primes q | n."""
    n = poly_degree(m)
    if n < 1:
        return False
    if n == 1:
        return True

    def frob(k: int) -> int:
        # x^(2^k) mod m
        t = 0b10
        for _ in range(k):
            t = poly_mulmod(t, t, m)
        return t

    if frob(n) != poly_mod(0b10, m):
        return False
    for q in _prime_factors(n):
        if poly_gcd(m, frob(n // q) ^ 0b10) != 1:
            return False
    return True


def find_default_modulus(n: int) -> int:
    """Search for the lowest-weight, numerically smallest irreducible of degree n."""
    from itertools import combinations

    for inner in range(0, n):
        # weight = inner + 2 (leading and constant terms always present)
        cands = sorted(
            (1 << n) | 1 | sum(1 << j for j in mids)
            for mids in combinations(range(1, n), inner)
        )
        for m in cands:
            if is_irreducible(m):
                return m
    raise FieldError(f"no irreducible polynomial of degree {n}")  # unreachable


def parse_modulus(text: str) -> int:
    """Accept '0b1011', '0xB', '11' or 'poly=...'."""
    s = text.strip()
    if s.startswith("poly="):
        s = s[5:]
    try:
        return int(s, 0)
    except ValueError:
        raise FieldError(f"cannot parse modulus {text!r}") from None


@lru_cache(maxsize=None)
def _checked(n: int, modulus: int) -> None:
    if poly_degree(modulus) != n:
        raise FieldError(f"modulus {modulus:#b} does not have degree {n}")
    if not is_irreducible(modulus):
        raise FieldError(f"modulus {modulus:#b} is reducible")


@dataclass(frozen=True)
class FieldContext:
    n: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise FieldError(f"n must be in [1, {MAX_N}], got {self.n}")
        _checked(self.n, self.modulus)

    @classmethod
    def default(cls, n: int) -> "FieldContext":
        if n not in DEFAULT_MODULI:
            raise FieldError(f"n must be in [1, {MAX_N}], got {n}")
        return cls(n, DEFAULT_MODULI[n])

    @classmethod
    def build(cls, n: int, modulus: int | str | None = None) -> "FieldContext":
        if modulus is None:
            return cls.default(n)
        if isinstance(modulus, str):
            modulus = parse_modulus(modulus)
        return cls(n, modulus)

    @property
    def order(self) -> int:
        return 1 << self.n

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of GF(2^{self.n})")
        return a

    # --- scalar ops ---

    def mul(self, a: int, b: int) -> int:
        r = 0
        top = self.order
        m = self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= m
        return r

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise FieldError("negative exponent")
        r = 1  # 0^0 = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inverse(self, a: int) -> int:
        """a^(2^n - 2); maps 0 to 0."""
        return self.pow(a, self.order - 2)

    def trace(self, z: int) -> int:
        t, s = 0, z
        for _ in range(self.n):
            t ^= s
            s = self.mul(s, s)
        # t lies in GF(2), i.e. is 0 or 1
        return t

    # --- vectorized ops over numpy arrays of elements ---

    def mul_array(self, a, b) -> np.ndarray:
        a = np.array(a, dtype=np.int64)
        b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape).copy()
        r = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        top, m = self.order, self.modulus
        for _ in range(self.n):
            r ^= np.where(b & 1, a, 0)
            b >>= 1
            a <<= 1
            a = np.where(a & top, a ^ m, a)
        return r

    def pow_array(self, a, e: int) -> np.ndarray:
        if e < 0:
            raise FieldError("negative exponent")
        base = np.array(a, dtype=np.int64)
        r = np.ones_like(base)
        while e:
            if e & 1:
                r = self.mul_array(r, base)
            e >>= 1
            if e:
                base = self.mul_array(base, base)
        return r

    def trace_array(self, z) -> np.ndarray:
        s = np.array(z, dtype=np.int64)
        t = np.zeros_like(s)
        for _ in range(self.n):
            t ^= s
            s = self.mul_array(s, s)
        return t

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def describe(self) -> str:
        return f"GF(2^{self.n}) mod {self.modulus:#x}"


def parse_field_spec(text: str) -> tuple[int, int | None]:
    """Parse 'n=<k>[,poly=<mask>]'-style fragments; returns (n, modulus or None)."""
    n = re.search(r"\bn\s*=\s*(\d+)", text)
    p = re.search(r"\bpoly\s*=\s*(0[xXbB][0-9a-fA-F]+|\d+)", text)
    if not n:
        raise FieldError(f"missing n=<k> in {text!r}")
    return int(n.group(1)), (int(p.group(1), 0) if p else None)
