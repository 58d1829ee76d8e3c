"""Arithmetic predicates on a discriminant d.

Conventions: the (*) test counts only odd primes p = 2 mod 3 as
obstructions and is conjoined with d > 6, d = 0, 2 mod 6. In (**) the
integer n ranges over n >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple, Optional

from . import kernels
from .errors import DomainError, NotApplicableError, WitnessError

DEFAULT_FANO_CAP = 10_000

# obstruction tags, in reporting order
TOO_SMALL = "too-small"
NOT_0_2_MOD_6 = "not-0-2-mod-6"
DIV_BY_4 = "div-by-4"
DIV_BY_9 = "div-by-9"
ODD_PRIME = "odd-prime"


@dataclass(frozen=True)
class Factorization:
    value: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.pairs:
            if p <= last or e < 1:
                raise ValueError(f"bad factorization pairs {self.pairs}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"pairs {self.pairs} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def exponent(self, p: int) -> int:
        return dict(self.pairs).get(p, 0)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def factorize(v: int) -> Factorization:
    """Trial division; fine for the discriminant sizes this package sweeps."""
    if v < 1:
        raise DomainError(f"cannot factor {v}: need v >= 1")
    pairs = []
    n = v
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            pairs.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            pairs.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        pairs.append((n, 1))
    return Factorization(v, tuple(pairs))


class Obstruction(NamedTuple):
    kind: str
    prime: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == ODD_PRIME:
            return f"{ODD_PRIME}-{self.prime}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Obstruction":
        if text.startswith(ODD_PRIME + "-"):
            return cls(ODD_PRIME, int(text[len(ODD_PRIME) + 1:]))
        if text in (TOO_SMALL, NOT_0_2_MOD_6, DIV_BY_4, DIV_BY_9):
            return cls(text)
        raise ValueError(f"unknown obstruction {text!r}")


class BullesWitness(NamedTuple):
    f: int
    g: int
    n: int


class FanoWitness(NamedTuple):
    n: int
    a: int


def is_hassett_divisor(d: int) -> bool:
    return d > 6 and d % 6 in (0, 2)


def star_obstruction(d: int) -> Optional[Obstruction]:
    """First reason d fails (*), or None if it holds."""
    if d <= 6:
        return Obstruction(TOO_SMALL)
    if d % 6 not in (0, 2):
        return Obstruction(NOT_0_2_MOD_6)
    if d % 4 == 0:
        return Obstruction(DIV_BY_4)
    if d % 9 == 0:
        return Obstruction(DIV_BY_9)
    for p in factorize(d).primes:
        if p % 2 == 1 and p % 3 == 2:
            return Obstruction(ODD_PRIME, p)
    return None


def satisfies_star(d: int) -> tuple[bool, Optional[Obstruction]]:
    obs = star_obstruction(d)
    return obs is None, obs


def solve_congruence(g: int) -> Optional[int]:
    """Smallest n in [0, g) with g | 2n^2+2n+2, else None."""
    if g < 1:
        raise DomainError(f"modulus must be positive, got {g}")
    n = kernels.min_quadratic_root(g)
    return None if n < 0 else n


def satisfies_bulles(d: int) -> Optional[BullesWitness]:
    """Witness (f, g, n) of d = f^2 g, g | 2n^2+2n+2 with least f."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    for f in range(1, isqrt(d) + 1):
        if d % (f * f):
            continue
        g = d // (f * f)
        n = solve_congruence(g)
        if n is not None:
            return BullesWitness(f, g, n)
    return None


def fano_condition_one(d: int, cap: int = DEFAULT_FANO_CAP) -> Optional[FanoWitness]:
    """Least (n, a), n >= 2, a >= 1, with d a^2 = 2n^2+2n+2 and n <= cap.

    None means no witness up to ``cap``, not that none exists.
    """
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    n, a = kernels.fano_search(d, cap)
    return None if n < 0 else FanoWitness(n, a)


def fano_condition_two(d: int) -> bool:
    """d even and d/2 a perfect square."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    if d % 2:
        return False
    h = d // 2
    return isqrt(h) ** 2 == h


def check_bulles(d: int, w: BullesWitness) -> bool:
    f, g, n = w
    return f >= 1 and g >= 1 and n >= 0 and d == f * f * g and (2 * n * n + 2 * n + 2) % g == 0


def check_fano(d: int, w: FanoWitness) -> bool:
    n, a = w
    return n >= 2 and a >= 1 and d * a * a == 2 * n * n + 2 * n + 2


@dataclass(frozen=True)
class DivisorReport:
    d: int
    is_divisor: bool
    star: bool
    star_failure: Optional[Obstruction] = None
    bulles: Optional[BullesWitness] = None
    fano1: Optional[FanoWitness] = None
    fano2: bool = False
    fm_count: Optional[int] = None

    def validate(self) -> "DivisorReport":
        """Re-check every stored witness and derived flag; raise on mismatch."""
        d = self.d
        if self.is_divisor != is_hassett_divisor(d):
            raise WitnessError(f"d={d}: is_divisor flag is wrong")
        if self.star != (self.star_failure is None):
            raise WitnessError(f"d={d}: star flag disagrees with obstruction")
        if self.bulles is not None and not check_bulles(d, self.bulles):
            raise WitnessError(f"d={d}: bulles witness {tuple(self.bulles)} fails")
        if self.fano1 is not None and not check_fano(d, self.fano1):
            raise WitnessError(f"d={d}: fano1 witness {tuple(self.fano1)} fails")
        if self.is_divisor:
            if satisfies_star(d) != (self.star, self.star_failure):
                raise WitnessError(f"d={d}: star result does not match recomputation")
            if self.fano2 != fano_condition_two(d):
                raise WitnessError(f"d={d}: fano2 flag is wrong")
            if self.fm_count != _fm_count_or_none(d):
                raise WitnessError(f"d={d}: fm_count does not match recomputation")
        return self

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "is_divisor": self.is_divisor,
            "star": self.star,
            "star_failure": None if self.star_failure is None else str(self.star_failure),
            "bulles": None if self.bulles is None else self.bulles._asdict(),
            "fano1": None if self.fano1 is None else self.fano1._asdict(),
            "fano2": self.fano2,
            "fm_count": self.fm_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DivisorReport":
        sf = data.get("star_failure")
        b = data.get("bulles")
        f1 = data.get("fano1")
        return cls(
            d=int(data["d"]),
            is_divisor=bool(data["is_divisor"]),
            star=bool(data["star"]),
            star_failure=None if sf is None else Obstruction.parse(sf),
            bulles=None if b is None else BullesWitness(int(b["f"]), int(b["g"]), int(b["n"])),
            fano1=None if f1 is None else FanoWitness(int(f1["n"]), int(f1["a"])),
            fano2=bool(data["fano2"]),
            fm_count=None if data.get("fm_count") is None else int(data["fm_count"]),
        )


def _fm_count_or_none(d: int) -> Optional[int]:
    from .fm import fm_partner_count

    try:
        return fm_partner_count(d).count
    except NotApplicableError:
        return None


def classify(d: int, fano_cap: int = DEFAULT_FANO_CAP) -> DivisorReport:
    """Run every predicate on d.

    For d outside the Hassett range only the (*) obstruction is recorded;
    the remaining predicates are only meaningful on actual divisors.
    """
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    ok, obs = satisfies_star(d)
    if not is_hassett_divisor(d):
        return DivisorReport(d=d, is_divisor=False, star=False, star_failure=obs)
    report = DivisorReport(
        d=d,
        is_divisor=True,
        star=ok,
        star_failure=obs,
        bulles=satisfies_bulles(d),
        fano1=fano_condition_one(d, fano_cap),
        fano2=fano_condition_two(d),
        fm_count=_fm_count_or_none(d),
    )
    return report.validate()
