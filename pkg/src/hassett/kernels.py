"""Hot search loops of the divisor predicates.

Each kernel has a numba ``@njit`` body and a vectorised numpy fallback.
Set ``HASSETT_DISABLE_NUMBA=1`` to force the numpy path (numba missing has
the same effect). Arguments too large for int64 arithmetic go to a plain
Python loop on big ints regardless of backend.
"""

from __future__ import annotations

import os
from math import isqrt

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None

_DISABLED = os.environ.get("HASSETT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and not _DISABLED

# 2n^2 + 2n + 2 must stay below 2**63 for every n the kernels touch.
INT64_LIMIT = 1 << 30
_CHUNK = 1 << 16


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# smallest n in [0, g) with g | 2n^2 + 2n + 2

def _min_root_py(g: int) -> int:
    for n in range(g):
        if (2 * n * n + 2 * n + 2) % g == 0:
            return n
    return -1


def _min_root_np(g: int) -> int:
    for start in range(0, g, _CHUNK):
        n = np.arange(start, min(g, start + _CHUNK), dtype=np.int64)
        hit = np.flatnonzero((2 * n * n + 2 * n + 2) % g == 0)
        if hit.size:
            return int(n[hit[0]])
    return -1


# ---------------------------------------------------------------------------
# smallest n in [2, cap] with 2n^2 + 2n + 2 = d * a^2; returns (n, a) or (-1, -1).
# n grows with a, so walking a = 1, 2, ... finds the least n in ~cap*sqrt(2/d) steps.

def _fano_py(d: int, cap: int) -> tuple[int, int]:
    # (2n + 1)^2 = 2 d a^2 - 3
    a = 1
    while True:
        t = 2 * d * a * a - 3
        r = isqrt(t) if t >= 0 else -1
        n = (r - 1) // 2
        if n > cap:
            return -1, -1
        if r * r == t and r % 2 == 1 and n >= 2:
            return n, a
        a += 1


def _isqrt_np(t: np.ndarray) -> np.ndarray:
    r = np.sqrt(t.astype(np.float64)).astype(np.int64)
    r -= (r * r > t).astype(np.int64)
    r += ((r + 1) * (r + 1) <= t).astype(np.int64)
    return r


def _fano_np(d: int, cap: int) -> tuple[int, int]:
    a_max = isqrt((2 * cap * cap + 2 * cap + 2) // d) + 1
    for start in range(1, a_max + 1, _CHUNK):
        a = np.arange(start, min(a_max, start + _CHUNK - 1) + 1, dtype=np.int64)
        t = 2 * d * a * a - 3
        r = _isqrt_np(np.maximum(t, 0))
        n = (r - 1) // 2
        ok = (r * r == t) & (r % 2 == 1) & (n >= 2) & (n <= cap)
        hit = np.flatnonzero(ok)
        if hit.size:
            return int(n[hit[0]]), int(a[hit[0]])
    return -1, -1


if HAS_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def _min_root_nb(g):
        for n in range(g):
            if (2 * n * n + 2 * n + 2) % g == 0:
                return n
        return -1

    @numba.njit(cache=True, nogil=True)
    def _isqrt_nb(x):
        r = np.int64(np.sqrt(np.float64(x)))
        while r * r > x:
            r -= 1
        while (r + 1) * (r + 1) <= x:
            r += 1
        return r

    @numba.njit(cache=True, nogil=True)
    def _fano_nb(d, cap):
        a = 1
        while True:
            t = 2 * d * a * a - 3
            r = _isqrt_nb(t) if t >= 0 else -1
            n = (r - 1) // 2
            if n > cap:
                return -1, -1
            if r * r == t and r % 2 == 1 and n >= 2:
                return n, a
            a += 1

    @numba.njit(cache=True, nogil=True)
    def _min_roots_nb(values):
        out = np.empty(values.shape[0], dtype=np.int64)
        for k in range(values.shape[0]):
            out[k] = _min_root_nb(values[k])
        return out


def min_quadratic_root(g: int) -> int:
    """Smallest n in [0, g) with g | 2n^2+2n+2, or -1."""
    if g < 1:
        raise ValueError("g must be positive")
    if g >= INT64_LIMIT:
        return _min_root_py(g)
    if USE_NUMBA:
        return int(_min_root_nb(g))
    return _min_root_np(g)


def fano_search(d: int, cap: int) -> tuple[int, int]:
    """Smallest n in [2, cap] with d*a^2 = 2n^2+2n+2; (-1, -1) if none."""
    if d < 1:
        raise ValueError("d must be positive")
    if cap < 2:
        return -1, -1
    if cap >= INT64_LIMIT or d >= INT64_LIMIT:
        return _fano_py(d, cap)
    if USE_NUMBA:
        n, a = _fano_nb(d, cap)
        return int(n), int(a)
    return _fano_np(d, cap)


def min_quadratic_roots(values) -> np.ndarray:
    """Vector form of :func:`min_quadratic_root` for int64 inputs."""
    arr = np.ascontiguousarray(values, dtype=np.int64)
    if arr.size and (arr.min() < 1 or arr.max() >= INT64_LIMIT):
        raise ValueError("values must lie in [1, 2**30)")
    if USE_NUMBA:
        return _min_roots_nb(arr)
    return np.array([_min_root_np(int(g)) for g in arr], dtype=np.int64)


def pure_python() -> dict:
    """The big-int reference loops, exposed for tests and benchmarks."""
    return {"min_quadratic_root": _min_root_py, "fano_search": _fano_py}
