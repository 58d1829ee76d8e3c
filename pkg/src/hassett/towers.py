"""Genus towers from K3 surfaces with an order-3 symplectic automorphism.

A polarized K3 of genus g = n^2+n+2 has degree 6d = 2g-2; its quotient
carries genus g' = (n^2+n+1)/3 + 1 = d + 1. The tower is kept when g' is
again of the form m^2+m+2, m >= 2, pairing the divisors C_6d and C_2d.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import isqrt
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class TowerEntry:
    n: int
    g: int
    deg6d: int
    d: int
    gprime: int
    m: int
    divisor_pair: tuple[int, int]

    def check(self) -> bool:
        n, m = self.n, self.m
        return (
            self.g == n * n + n + 2
            and self.deg6d == 2 * self.g - 2 == 6 * self.d
            and self.gprime == self.d + 1 == m * m + m + 2
            and m >= 2
            and self.divisor_pair == (self.deg6d, 2 * self.d)
        )

    def to_dict(self) -> dict:
        out = asdict(self)
        out["divisor_pair"] = list(self.divisor_pair)
        return out


def _quotient_m(gprime: int) -> Optional[int]:
    # m^2 + m + 2 = g'  <=>  (2m+1)^2 = 4(g'-2) + 1
    t = 4 * (gprime - 2) + 1
    if t < 0:
        return None
    r = isqrt(t)
    if r * r != t:
        return None
    return (r - 1) // 2


def tower_for(n: int) -> Optional[TowerEntry]:
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if (n * n + n + 1) % 3:
        return None
    g = n * n + n + 2
    deg6d = 2 * g - 2
    d = deg6d // 6
    gprime = (n * n + n + 1) // 3 + 1
    m = _quotient_m(gprime)
    if m is None or m < 2:
        return None
    return TowerEntry(n=n, g=g, deg6d=deg6d, d=d, gprime=gprime, m=m, divisor_pair=(deg6d, 2 * d))


def enumerate_towers(n_max: int) -> list[TowerEntry]:
    if n_max < 2:
        raise DomainError(f"n_max must be >= 2, got {n_max}")
    # only n = 1 mod 3 makes 3 | n^2+n+1
    return [e for n in range(4, n_max + 1, 3) if (e := tower_for(n)) is not None]
