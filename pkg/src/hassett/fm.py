"""Fourier-Mukai partner counts for a very general cubic fourfold in C_d."""

from __future__ import annotations

from dataclasses import dataclass

from .divisors import factorize
from .errors import NotApplicableError


@dataclass(frozen=True)
class FmCount:
    """``count`` includes X itself."""

    d: int
    a: int
    k: int
    m: int
    count: int


def check_applicable(d: int) -> None:
    """Raise NotApplicableError naming the first failed hypothesis."""
    if d < 8:
        raise NotApplicableError(d, "d >= 8 required")
    if d % 6 not in (0, 2):
        raise NotApplicableError(d, "d must be 0 or 2 mod 6")
    if d % 9 == 0:
        raise NotApplicableError(d, "d divisible by 9")
    for p, e in factorize(d).pairs:
        if p > 2 and e > 1:
            raise NotApplicableError(d, f"odd part not squarefree ({p}^{e} divides d)")


def fm_partner_count(d: int) -> FmCount:
    check_applicable(d)
    fac = factorize(d)
    a = fac.exponent(2)
    k = len(fac.pairs) - (1 if a else 0)
    if k == 0:
        m = 1
    elif a == 1:
        m = 2 ** (k - 1)
    else:
        m = 2**k
    if d % 6 == 2:
        count = m
    else:
        # 3 | d forces k >= 1, and a = 1 with k = 1 would mean d = 6
        assert m % 2 == 0, d
        count = m // 2
    return FmCount(d=d, a=a, k=k, m=m, count=count)
