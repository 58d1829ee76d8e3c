"""Named lattices and intersection configurations.

Basis conventions (h^2 always first):

* scroll pair:   (h^2, T)
* scroll K_X:    ambient (h^2, a_k, a_i, a_j), generators h^2, a_k, a_i - a_j
* Eckardt:       (h^2, F_0, F_1, ..., F_6)
* Eckardt F:     (F_0, ..., F_6), the nondegenerate lattice the F's span
* E8:            Bourbaki labelling, chain 1-3-4-5-6-7-8 with 2 on node 4
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstraintError
from .intlat import GramMatrix, SublatticeSpec, gram_from_generators, pairing

H4 = 3  # h^2 . h^2 on a cubic fourfold

SCROLL_T_SQUARE = 7
SCROLL_T_H2 = 3

# Eckardt data as given: F0.F0, F0.Fi, Fi.Fi, F0.h^2
ECKARDT_F0_SQUARE = 7
ECKARDT_F0_FI = 3
ECKARDT_FI_SQUARE = 3
ECKARDT_F0_H2 = 3
# h^2 - 3 F_0 + F_1 + ... + F_6 = 0 in the (h^2, F_0..F_6) basis
ECKARDT_RELATION = (1, -3, 1, 1, 1, 1, 1, 1)
# h^2 in the (F_0..F_6) basis
ECKARDT_H2_IN_F = (3, -1, -1, -1, -1, -1, -1)


@dataclass(frozen=True)
class LabellingData:
    """v of a labelling <h^2, v>: p = v.h^2, q = v.v."""

    p: int
    q: int

    def gram(self) -> GramMatrix:
        return GramMatrix([[H4, self.p], [self.p, self.q]])


def labelling_discriminant(data: LabellingData) -> int:
    return H4 * data.q - data.p * data.p


def k_ab(a: int, b: int) -> GramMatrix:
    if a not in (-1, 0, 1):
        raise ConstraintError(f"a must be -1, 0 or 1, got {a}")
    if (a - b) % 2:
        raise ConstraintError(f"a and b must have equal parity, got a={a}, b={b}")
    return GramMatrix([[3, 6, a], [6, 18, 1], [a, 1, b]])


def admissible_a_matrix(b: int) -> GramMatrix:
    if b % 2:
        raise ConstraintError(f"b must be even, got {b}")
    return GramMatrix([[3, 0, 0], [0, b, 1], [0, 1, 6]])


def _triple_spec(square: int, k_i: int, k_j: int, i_j: int) -> SublatticeSpec:
    # ambient (h^2, x_k, x_i, x_j), all x orthogonal to h^2
    ambient = GramMatrix(
        [
            [H4, 0, 0, 0],
            [0, square, k_i, k_j],
            [0, k_i, square, i_j],
            [0, k_j, i_j, square],
        ]
    )
    return SublatticeSpec(ambient, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, -1)])


def scroll_kx_spec() -> SublatticeSpec:
    # a_i.a_j = 1, a_k.a_i = 2, a_k.a_j = 1, all squares 4
    return _triple_spec(4, k_i=2, k_j=1, i_j=1)


def scroll_ky_spec() -> SublatticeSpec:
    """Ambient (h^2, b_l, b_m, b_n); generators h^2, b_n, b_l - b_m."""
    l_m, n_l, n_m = 1, 2, 1
    ambient = GramMatrix(
        [
            [H4, 0, 0, 0],
            [0, 4, l_m, n_l],
            [0, l_m, 4, n_m],
            [0, n_l, n_m, 4],
        ]
    )
    return SublatticeSpec(ambient, [(1, 0, 0, 0), (0, 0, 0, 1), (0, 1, -1, 0)])


def scroll_kx_gram() -> GramMatrix:
    return gram_from_generators(scroll_kx_spec())


def scroll_ky_gram() -> GramMatrix:
    return gram_from_generators(scroll_ky_spec())


def scroll_gram() -> GramMatrix:
    """Pairing on (h^2, T) for a cubic scroll T."""
    return GramMatrix([[H4, SCROLL_T_H2], [SCROLL_T_H2, SCROLL_T_SQUARE]])


def scroll_alpha_square() -> int:
    """(T - h^2)^2."""
    g = scroll_gram().entries
    alpha = (-1, 1)
    return pairing(g, alpha, alpha)


def scroll_dual_alpha() -> tuple[int, int]:
    """T* - h^2 in the (h^2, T) basis, using T + T* = 2h^2."""
    t_star = (2, -1)
    return (t_star[0] - 1, t_star[1])


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over Q for a square nonsingular system."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def eckardt_derived_entries() -> tuple[int, int]:
    """(h^2.F_i, F_i.F_j) forced by the relation h^2 = 3F_0 - sum F_i.

    The six F_i enter symmetrically, so each unknown is a single number.
    Pairing the relation with h^2 and with F_i gives two linear equations.
    """
    c_h, c_0, c_i = (Fraction(x) for x in ECKARDT_RELATION[:3])
    # with h^2:  c_h*3 + c_0*F0.h + 6*c_i*u          = 0
    # with F_i:  c_h*u + c_0*F0.Fi + c_i*Fi.Fi + 5*c_i*w = 0
    rows = [[6 * c_i, Fraction(0)], [c_h, 5 * c_i]]
    rhs = [
        -(c_h * H4 + c_0 * ECKARDT_F0_H2),
        -(c_0 * ECKARDT_F0_FI + c_i * ECKARDT_FI_SQUARE),
    ]
    u, w = _solve(rows, rhs)
    if u.denominator != 1 or w.denominator != 1:
        raise ArithmeticError(f"non-integral Eckardt completion u={u}, w={w}")
    return int(u), int(w)


def eckardt_gram() -> GramMatrix:
    u, w = eckardt_derived_entries()
    m = [[0] * 8 for _ in range(8)]
    m[0][0] = H4
    m[0][1] = m[1][0] = ECKARDT_F0_H2
    m[1][1] = ECKARDT_F0_SQUARE
    for i in range(2, 8):
        m[0][i] = m[i][0] = u
        m[1][i] = m[i][1] = ECKARDT_F0_FI
        for j in range(2, 8):
            m[i][j] = ECKARDT_FI_SQUARE if i == j else w
    gram = GramMatrix(m)
    for k in range(8):
        e = [int(i == k) for i in range(8)]
        if gram.pair(ECKARDT_RELATION, e):
            raise ArithmeticError("Eckardt relation does not lie in the radical")
    return gram


def eckardt_f_gram() -> GramMatrix:
    """Pairing on (F_0, ..., F_6); h^2 is ECKARDT_H2_IN_F there."""
    return eckardt_gram().submatrix(range(1, 8))


_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def e8() -> GramMatrix:
    m = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        m[i][j] = m[j][i] = -1
    return GramMatrix(m)


def e8_2() -> GramMatrix:
    return GramMatrix([[2 * x for x in row] for row in e8()])


def named(name: str, *args: int) -> GramMatrix:
    """Look up a constructor by its CLI name."""
    builders = {
        "kab": (k_ab, 2),
        "admissible": (admissible_a_matrix, 1),
        "scroll": (scroll_gram, 0),
        "scroll-kx": (scroll_kx_gram, 0),
        "scroll-ky": (scroll_ky_gram, 0),
        "eckardt": (eckardt_gram, 0),
        "eckardt-f": (eckardt_f_gram, 0),
        "e8": (e8, 0),
        "e8-2": (e8_2, 0),
    }
    try:
        fn, arity = builders[name]
    except KeyError:
        raise ConstraintError(f"unknown lattice {name!r}; choose from {sorted(builders)}") from None
    if len(args) != arity:
        raise ConstraintError(f"{name} takes {arity} integer argument(s), got {len(args)}")
    return fn(*args)


NAMES = ("kab", "admissible", "scroll", "scroll-kx", "scroll-ky", "eckardt", "eckardt-f", "e8", "e8-2")
