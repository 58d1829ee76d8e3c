import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hassett import catalog
from hassett.errors import DegenerateError, RankError, ShapeError
from hassett.intlat import (
    GramMatrix,
    SublatticeSpec,
    determinant,
    direct_sum,
    discriminant_group,
    gram_from_generators,
    is_positive_definite,
    is_primitive,
    matrix_rank,
    orthogonal_complement,
    saturation,
    smith_normal_form,
)

from conftest import cofactor_det, gram_matrices, int_matrices, matmul, rational_kernel_rank

PROP23_AMBIENT = [
    [3, 0, 0, 0],
    [0, 4, 2, 1],
    [0, 2, 4, 1],
    [0, 1, 1, 4],
]


def sympy_divisors(m):
    """Nonzero invariant factors from sympy, sorted by divisibility."""
    d = sympy_snf(Matrix(m), domain=ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    return sorted(x for x in diag if x)


class TestGramMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(ShapeError):
            GramMatrix([[1, 2], [3, 4]])

    def test_rejects_non_square(self):
        with pytest.raises(ShapeError):
            GramMatrix([[1, 2, 3], [2, 1, 0]])

    def test_rejects_floats(self):
        with pytest.raises(ShapeError):
            GramMatrix([[1.5]])

    def test_zero_lattice(self):
        g = GramMatrix([])
        assert g.dim == 0
        assert determinant(g) == 1


class TestGramFromGenerators:
    def test_identity(self):
        spec = SublatticeSpec([[1, 0], [0, 1]], [[1, 0], [0, 1]])
        assert gram_from_generators(spec) == GramMatrix([[1, 0], [0, 1]])

    def test_alpha_triple(self):
        spec = SublatticeSpec(PROP23_AMBIENT, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, -1]])
        assert gram_from_generators(spec).tolist() == [[3, 0, 0], [0, 4, 1], [0, 1, 6]]

    @given(gram_matrices())
    def test_negated_basis(self, g):
        n = len(g)
        neg = [[-int(i == j) for j in range(n)] for i in range(n)]
        assert gram_from_generators(SublatticeSpec(g, neg)) == GramMatrix(g)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            SublatticeSpec([[1, 0], [0, 1]], [[1, 0, 0]])

    @given(gram_matrices(max_dim=4), st.data())
    def test_permuting_generators_permutes_gram(self, g, data):
        n = len(g)
        k = data.draw(st.integers(1, 4))
        gens = [[data.draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(k)]
        perm = data.draw(st.permutations(range(k)))
        base = gram_from_generators(SublatticeSpec(g, gens))
        permuted = gram_from_generators(SublatticeSpec(g, [gens[p] for p in perm]))
        assert permuted.tolist() == [[base[perm[i], perm[j]] for j in range(k)] for i in range(k)]


class TestDeterminant:
    @pytest.mark.parametrize(
        "m, expected",
        [
            ([[3, 3], [3, 7]], 12),
            ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1),
            ([[3, 6, 0], [6, 18, 1], [0, 1, 6]], 105),
        ],
    )
    def test_examples(self, m, expected):
        assert cofactor_det(m) == expected
        assert determinant(m) == expected

    @given(int_matrices(max_rows=6, max_cols=6))
    def test_matches_cofactor(self, m):
        n = min(len(m), len(m[0]))
        sq = [row[:n] for row in m[:n]]
        assert determinant(sq) == cofactor_det(sq)

    def test_big_entries(self):
        m = [[10**40, 3], [7, 10**35 + 1]]
        assert determinant(m) == 10**40 * (10**35 + 1) - 21


class TestDefinite:
    def test_examples(self, e8_2):
        assert is_positive_definite([[3, 3], [3, 7]])
        assert not is_positive_definite([[0]])
        assert is_positive_definite(e8_2)

    def test_indefinite(self):
        assert not is_positive_definite([[1, 2], [2, 1]])
        assert not is_positive_definite([[-2]])

    @given(gram_matrices())
    def test_definite_implies_positive_det(self, g):
        if is_positive_definite(g):
            assert determinant(g) > 0


def check_snf(m):
    s = smith_normal_form(m)
    assert [list(r) for r in matmul(matmul(s.left, m), s.right)] == [list(r) for r in s.d]
    assert abs(determinant(s.left)) == 1
    assert abs(determinant(s.right)) == 1
    rows, cols = len(m), len(m[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert s.d[i][j] == 0
    divs = s.elementary_divisors
    assert list(divs) == [s.d[i][i] for i in range(min(rows, cols))]
    assert all(x >= 0 for x in divs)
    nz = [x for x in divs if x]
    assert list(divs[: len(nz)]) == nz, "zeros must come last"
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    if rows == cols:
        assert abs(determinant(m)) == abs(determinant(s.d))
    return s


class TestSmithNormalForm:
    def test_identity(self):
        assert smith_normal_form([[1, 0], [0, 1]]).elementary_divisors == (1, 1)

    def test_diagonal(self):
        assert smith_normal_form([[2, 0], [0, 2]]).elementary_divisors == (2, 2)

    def test_e8_2(self, e8_2):
        s = check_snf(e8_2.tolist())
        assert s.elementary_divisors == (2,) * 8
        assert sympy_divisors(e8_2.tolist()) == [2] * 8
        assert determinant(e8_2) == 256

    def test_zero_and_rectangular(self):
        check_snf([[0, 0], [0, 0]])
        check_snf([[2, 4, 6]])
        check_snf([[2], [4], [7]])

    def test_deterministic(self):
        m = [[6, 4, 0], [4, 10, 2], [0, 2, 8]]
        assert smith_normal_form(m) == smith_normal_form(m)

    @settings(max_examples=200)
    @given(int_matrices())
    def test_round_trip(self, m):
        s = check_snf(m)
        assert [x for x in s.elementary_divisors if x] == sympy_divisors(m)


class TestDiscriminantGroup:
    def test_examples(self, e8_2):
        assert discriminant_group([[3, 3], [3, 7]]).invariant_factors == (12,)
        assert discriminant_group([[1, 0], [0, 1]]).invariant_factors == ()
        assert discriminant_group(e8_2).invariant_factors == (2,) * 8

    def test_degenerate(self):
        with pytest.raises(DegenerateError):
            discriminant_group([[1, 1], [1, 1]])

    @given(gram_matrices())
    def test_order_is_abs_det(self, g):
        det = determinant(g)
        assume(det != 0)
        assert discriminant_group(g).order == abs(det)


def check_complement(ambient, gens):
    spec = SublatticeSpec(ambient, gens)
    comp = orthogonal_complement(spec)
    for c in comp:
        for g in gens:
            assert spec.ambient.pair(c, g) == 0
    if comp:
        assert all(x == 1 for x in smith_normal_form(comp).elementary_divisors), "not saturated"
    n = spec.ambient.dim
    pair_matrix = [[spec.ambient.pair(e, g) for g in gens] for e in ([int(i == j) for j in range(n)] for i in range(n))]
    assert len(comp) == (rational_kernel_rank(pair_matrix) if gens else n)
    return comp


class TestOrthogonalComplement:
    def test_block_diagonal(self):
        assert check_complement([[3, 0], [0, 4]], [[1, 0]]) == ((0, 1),)

    def test_rank3_block(self):
        comp = check_complement([[3, 0, 0], [0, 4, 1], [0, 1, 6]], [[1, 0, 0]])
        assert saturation(comp, 3) == saturation([[0, 1, 0], [0, 0, 1]], 3)

    def test_empty_generators(self):
        assert orthogonal_complement(SublatticeSpec([[2, 1], [1, 2]])) == ((1, 0), (0, 1))

    def test_eckardt_h2_complement(self):
        f = catalog.eckardt_f_gram()
        comp = check_complement(f, [catalog.ECKARDT_H2_IN_F])
        assert len(comp) == 6

    def test_degenerate_ambient_keeps_radical(self):
        g = catalog.eckardt_gram()
        comp = check_complement(g, [[1, 0, 0, 0, 0, 0, 0, 0]])
        assert len(comp) == 7
        stacked = list(comp) + [list(catalog.ECKARDT_RELATION)]
        assert matrix_rank(stacked) == 7

    @settings(max_examples=200)
    @given(gram_matrices(max_dim=5, lo=-6, hi=6), st.data())
    def test_random(self, g, data):
        n = len(g)
        assume(determinant(g) != 0)
        k = data.draw(st.integers(1, n))
        gens = [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(k)]
        comp = check_complement(g, gens)
        restricted = gram_from_generators(SublatticeSpec(g, gens))
        if matrix_rank(gens) == k and determinant(restricted) != 0:
            assert k + len(comp) == n

    @given(gram_matrices(max_dim=5, lo=-6, hi=6), st.data())
    def test_double_complement(self, g, data):
        n = len(g)
        assume(determinant(g) != 0)
        k = data.draw(st.integers(1, n))
        gens = [[data.draw(st.integers(-4, 4)) for _ in range(n)] for _ in range(k)]
        assume(matrix_rank(gens) == k)
        s = saturation(gens, n)
        assume(determinant(gram_from_generators(SublatticeSpec(g, s))) != 0)
        cc = orthogonal_complement(SublatticeSpec(g, orthogonal_complement(SublatticeSpec(g, s))))
        assert len(cc) == len(s)
        assert matrix_rank(list(cc) + list(s)) == len(s)


class TestPrimitive:
    def test_examples(self):
        amb2 = [[1, 0], [0, 1]]
        amb3 = [[3, 0, 0], [0, 4, 1], [0, 1, 6]]
        assert is_primitive(SublatticeSpec(amb3, [[1, 0, 0], [0, 0, 1]]))
        assert not is_primitive(SublatticeSpec(amb2, [[2, 0]]))
        assert is_primitive(SublatticeSpec(amb3, [[1, 0, 0], [0, 3, 1]]))
        assert sympy_divisors([[1, 0, 0], [0, 3, 1]]) == [1, 1]

    def test_dependent(self):
        with pytest.raises(RankError):
            is_primitive(SublatticeSpec([[1, 0], [0, 1]], [[1, 2], [2, 4]]))


class TestDirectSum:
    def test_examples(self, e8_2):
        g = GramMatrix([[2, 1], [1, 2]])
        assert direct_sum(g, GramMatrix([])) == g
        s = direct_sum([[3]], e8_2)
        assert s.dim == 9
        assert determinant(s) == 768
        assert direct_sum([[3]], [[4, 1], [1, 6]]).tolist() == [[3, 0, 0], [0, 4, 1], [0, 1, 6]]

    @given(gram_matrices(max_dim=4), gram_matrices(max_dim=4))
    def test_det_multiplies(self, a, b):
        assert determinant(direct_sum(a, b)) == determinant(a) * determinant(b)
