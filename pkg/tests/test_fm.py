import pytest

from hassett.divisors import is_hassett_divisor
from hassett.errors import NotApplicableError
from hassett.fm import fm_partner_count


def oracle_count(d):
    """Direct reading of the case split, from a fresh factorization."""
    a = 0
    x = d
    while x % 2 == 0:
        x //= 2
        a += 1
    primes = []
    p = 3
    while x > 1:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return None
            primes.append(p)
        else:
            p += 2
    k = len(primes)
    if k == 0:
        m = 1
    elif a == 1:
        m = 2 ** (k - 1)
    else:
        m = 2**k
    return m if d % 6 == 2 else m // 2


def applicable(d):
    return d >= 8 and d % 6 in (0, 2) and d % 9 and oracle_count(d) is not None


@pytest.mark.parametrize(
    "d, m, count",
    [(20, 2, 2), (42, 2, 1), (12, 2, 1), (546, 4, 2), (8, 1, 1), (14, 1, 1)],
)
def test_examples(d, m, count):
    c = fm_partner_count(d)
    assert (c.m, c.count) == (m, count)


def test_fields_546():
    c = fm_partner_count(546)
    assert (c.a, c.k) == (1, 3)


@pytest.mark.parametrize(
    "d, fragment",
    [(50, "odd part not squarefree"), (18, "divisible by 9"), (7, "d >= 8"), (10, "0 or 2 mod 6"), (6, "d >= 8")],
)
def test_not_applicable(d, fragment):
    with pytest.raises(NotApplicableError) as exc:
        fm_partner_count(d)
    assert fragment in exc.value.hypothesis


def test_range_properties():
    seen = 0
    for d in range(1, 10_001):
        if not applicable(d):
            with pytest.raises(NotApplicableError):
                fm_partner_count(d)
            continue
        seen += 1
        c = fm_partner_count(d)
        assert c.count >= 1
        assert c.count in (c.m, c.m // 2)
        if d % 6 == 0:
            assert c.m % 2 == 0 and c.k >= 1
        if c.k == 0:
            assert c.count == 1
        assert c.count == oracle_count(d), d
        assert is_hassett_divisor(d)
    assert seen > 1000
