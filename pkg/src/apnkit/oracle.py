"""Brute-force twins of the fast paths, written straight from the definitions.

Nothing here calls the Walsh transform, autocorrelation or closed forms; these are
the ground truth that `verify --oracle` and the test suite compare against.
"""

from __future__ import annotations

import numpy as np

from .boolfun import BooleanFunction, WalshSpectrum
from .vectorial import VectorialFunction

NAIVE_WALSH_MAX_N = 14
NAIVE_S2_MAX_N = 10
NAIVE_DDT_MAX_N = 12
NAIVE_VS1_MAX_N = 10
NAIVE_VS2_MAX_N = 6


class OracleSizeError(ValueError):
    pass


def _guard(n: int, cap: int, what: str):
    if n > cap:
        raise OracleSizeError(f"{what} is limited to n <= {cap} (got n={n})")


def _dot(a, x):
    return np.bitwise_count(np.asarray(a & x, dtype=np.uint64)).astype(np.int64) & 1


def naive_walsh(f: BooleanFunction) -> WalshSpectrum:
    """W_f(a) = sum_x (-1)^(f(x) + a.x), one row of masks at a time."""
    _guard(f.n, NAIVE_WALSH_MAX_N, "naive_walsh")
    xs = np.arange(f.size, dtype=np.int64)
    tt = f.table.astype(np.int64)
    out = np.empty(f.size, dtype=np.int64)
    for a in range(f.size):
        out[a] = int(np.sum(1 - 2 * ((tt + _dot(a, xs)) & 1)))
    return WalshSpectrum(f.n, out)


def _derivative_table(tt: np.ndarray, a: int) -> np.ndarray:
    idx = np.arange(tt.size)
    return tt[idx ^ a] ^ tt


def naive_derivative_weights(f: BooleanFunction) -> list[int]:
    tt = f.table
    return [int(_derivative_table(tt, a).sum(dtype=np.int64)) for a in range(f.size)]


def naive_s1(f: BooleanFunction) -> int:
    return sum(naive_derivative_weights(f)[1:])


def naive_s1_sq(f: BooleanFunction) -> int:
    return sum(w * w for w in naive_derivative_weights(f)[1:])


def naive_fourier_sq(f: BooleanFunction) -> int:
    """sum_{a != 0} F(D_a f)^2 with F(g) = sum_x (-1)^g(x)."""
    return sum((f.size - 2 * w) ** 2 for w in naive_derivative_weights(f)[1:])


def naive_s2(f: BooleanFunction) -> int:
    """sum_{a, b != 0} wt(D_b D_a f), differentiating the derivative tables literally."""
    _guard(f.n, NAIVE_S2_MAX_N, "naive_s2")
    tt = f.table
    size = f.size
    idx = np.arange(size)
    shifts = idx[:, None] ^ idx[None, :]  # shifts[b, x] = x + b
    total = 0
    for a in range(1, size):
        d = _derivative_table(tt, a)
        dd = d[shifts[1:]] ^ d[None, :]
        total += int(dd.sum(dtype=np.int64))
    return total


def naive_second_derivative_weight(f: BooleanFunction, a: int, b: int) -> int:
    tt = f.table
    return int(sum(tt[x] ^ tt[x ^ a] ^ tt[x ^ b] ^ tt[x ^ a ^ b] for x in range(f.size)))


def naive_ddt(F: VectorialFunction) -> np.ndarray:
    _guard(F.n, NAIVE_DDT_MAX_N, "naive_ddt")
    size = F.size
    lut = F.lut
    counts = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for x in range(size):
            counts[a, lut[x] ^ lut[x ^ a]] += 1
    return counts


def naive_ddt_apn(F: VectorialFunction) -> tuple[int, bool]:
    counts = naive_ddt(F)
    delta = int(counts[1:].max()) if F.size > 1 else int(counts.max())
    return delta, delta == 2


def naive_is_permutation(F: VectorialFunction) -> bool:
    return len(set(int(v) for v in F.lut)) == F.size


def _components(F: VectorialFunction):
    for lam in range(1, F.size):
        yield F.component(lam)


def naive_vs1(F: VectorialFunction) -> int:
    _guard(F.n, NAIVE_VS1_MAX_N, "naive_vs1")
    return sum(naive_s1(c) for c in _components(F))


def naive_vs1_sq(F: VectorialFunction) -> int:
    _guard(F.n, NAIVE_VS1_MAX_N, "naive_vs1_sq")
    return sum(naive_s1_sq(c) for c in _components(F))


def naive_fsq(F: VectorialFunction) -> int:
    """sum over lam != 0 and all a (a = 0 included) of F(D_a F_lam)^2."""
    _guard(F.n, NAIVE_VS1_MAX_N, "naive_fsq")
    return sum(naive_fourier_sq(c) + c.size ** 2 for c in _components(F))


def naive_vs2(F: VectorialFunction) -> int:
    _guard(F.n, NAIVE_VS2_MAX_N, "naive_vs2")
    return sum(naive_s2(c) for c in _components(F))


def naive_per_direction_s2(F: VectorialFunction) -> dict[int, int]:
    """a -> sum_{lam, b != 0} wt(D_b D_a F_lam)."""
    _guard(F.n, NAIVE_VS2_MAX_N, "naive_per_direction_s2")
    size = F.size
    idx = np.arange(size)
    shifts = idx[:, None] ^ idx[None, :]
    out = {a: 0 for a in range(1, size)}
    for c in _components(F):
        tt = c.table
        for a in range(1, size):
            d = _derivative_table(tt, a)
            out[a] += int((d[shifts[1:]] ^ d[None, :]).sum(dtype=np.int64))
    return out
