"""Tests for exact linear algebra and G-modules over prime fields."""

import random

import numpy as np
import pytest

from sporadic_forge.core.errors import (
    FieldMismatchError,
    MeataxeInconclusiveError,
    ParseError,
    ShapeError,
    SingularMatrixError,
)
from sporadic_forge.gflin import (
    GModule,
    Mat,
    block_diagonal,
    charpoly,
    dual_gen,
    hom_space,
    irreducible_factors,
    is_irreducible,
    mat_inv,
    mat_mul,
    meataxe_chop,
    module_iso,
    parse_mat,
    parse_mod,
    format_mod,
    spin,
)
from sporadic_forge.gflin import linalg
from sporadic_forge.gflin.matrix import vectors_times
from sporadic_forge.gflin.field import FieldSpec
from sporadic_forge.gflin.meataxe import MeataxeSettings
from sporadic_forge.gflin.polyfactor import evaluate_at, poly_mul

# S3 on three points: a transposition and a 3-cycle
S3_PERMS = {"s": [1, 0, 2], "r": [1, 2, 0]}


def random_mat(rng, q, n):
    return Mat(q, rng.integers(0, q, size=(n, n)))


def random_invertible(rng, q, n):
    while True:
        m = random_mat(rng, q, n)
        if m.is_invertible():
            return m


class TestFieldSpec:
    """Test prime field validation."""

    def test_valid_fields(self):
        """Test that primes are accepted."""
        assert FieldSpec(2).q == 2
        assert FieldSpec(13).inverse(2) == 7

    def test_non_prime_rejected(self):
        """Test that composite moduli are rejected."""
        with pytest.raises(ValueError, match="Invalid field modulus"):
            FieldSpec(4)

    def test_zero_has_no_inverse(self):
        """Test inverting zero."""
        with pytest.raises(ZeroDivisionError):
            FieldSpec(13).inverse(0)


class TestMat:
    """Test matrix arithmetic over GF(2) and GF(13)."""

    def test_identity_product(self):
        """Test multiplying by the identity."""
        rng = np.random.default_rng(1)
        a = random_mat(rng, 2, 10)
        assert mat_mul(Mat.identity(2, 10), a) == a
        assert mat_mul(a, Mat.identity(2, 10)) == a

    def test_scalar_inverse(self):
        """Test the inverse of [2] over GF(13)."""
        assert mat_inv(Mat(13, [[2]])) == Mat(13, [[7]])

    def test_inverse_of_identity(self):
        """Test the inverse of the identity."""
        assert mat_inv(Mat.identity(13, 4)).is_identity()

    def test_inverse_round_trip(self):
        """Test a * inv(a) is the identity over both fields."""
        rng = np.random.default_rng(2)
        for q, n in [(2, 10), (13, 10), (2, 70)]:
            a = random_invertible(rng, q, n)
            assert (a * mat_inv(a)).is_identity()
            assert (mat_inv(a) * a).is_identity()

    def test_inverse_against_adjugate(self):
        """Test 2x2 inverses against the adjugate formula."""
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = random_invertible(rng, 13, 2)
            (w, x), (y, z) = a.tolist()
            det_inv = pow((w * z - x * y) % 13, -1, 13)
            expected = Mat(13, [[z * det_inv, -x * det_inv], [-y * det_inv, w * det_inv]])
            assert mat_inv(a) == expected

    def test_singular_matrix(self):
        """Test that singular matrices raise."""
        with pytest.raises(SingularMatrixError):
            mat_inv(Mat(13, [[1, 2], [2, 4]]))

    def test_shape_mismatch(self):
        """Test multiplying incompatible shapes."""
        with pytest.raises(ShapeError):
            Mat(13, [[1, 2]]) * Mat(13, [[1, 2]])

    def test_field_mismatch(self):
        """Test multiplying over different fields."""
        with pytest.raises(FieldMismatchError):
            Mat.identity(2, 2) * Mat.identity(13, 2)

    def test_associativity_and_distributivity(self):
        """Test exact ring laws on random GF(13) triples."""
        rng = np.random.default_rng(4)
        for _ in range(1000):
            a, b, c = (random_mat(rng, 13, 3) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_gf2_product_matches_integer_product(self):
        """Test the packed GF(2) product against integer arithmetic."""
        rng = np.random.default_rng(5)
        a = rng.integers(0, 2, size=(37, 90))
        b = rng.integers(0, 2, size=(90, 71))
        assert (Mat(2, a) * Mat(2, b)).tolist() == ((a @ b) % 2).tolist()

    def test_dual_gen(self):
        """Test the contragredient is an involutive homomorphism."""
        rng = np.random.default_rng(6)
        a = random_invertible(rng, 13, 5)
        b = random_invertible(rng, 13, 5)
        assert dual_gen(dual_gen(a)) == a
        assert dual_gen(a * b) == dual_gen(a) * dual_gen(b)

    def test_order_and_powers(self):
        """Test matrix order and negative powers."""
        rotation = Mat.from_permutation(13, [1, 2, 3, 0])
        assert rotation.order() == 4
        assert rotation ** -1 == rotation ** 3
        assert (rotation ** 4).is_identity()

    def test_block_diagonal(self):
        """Test assembling and cutting block matrices."""
        a = Mat(13, [[2]])
        b = Mat(13, [[1, 2], [3, 4]])
        assembled = block_diagonal(a, b)
        assert assembled.shape == (3, 3)
        assert assembled.block(1, 3, 1, 3) == b
        assert assembled.block(0, 1, 1, 3).is_zero()

    def test_hash_and_equality(self):
        """Test equal matrices hash equally."""
        a = Mat(2, [[1, 0], [1, 1]])
        b = Mat(2, [[3, 0], [1, 1]])
        assert a == b
        assert len({a, b}) == 1

    def test_large_prime_product(self):
        """Test products over GF(2^61 - 1) are exact where int64 sums overflow."""
        q = 2**61 - 1
        a = Mat(q, [[q - 1, q - 1], [q - 1, q - 2]])
        assert (a * a).tolist() == [[2, 3], [3, 5]]
        assert a.scale(q - 1).tolist() == [[1, 1], [1, 2]]
        assert vectors_times(np.asarray([[q - 1, 1]]), a).tolist() == [[0, q - 1]]

    @pytest.mark.parametrize("q, n", [(13, 200), (1000003, 40), (2**31 - 1, 2), (2**31 - 1, 5)])
    def test_products_match_exact_integers(self, q, n):
        """Test products agree with Python integer arithmetic on every size path."""
        rng = random.Random(q + n)
        a = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        b = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        expected = [[sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n)] for i in range(n)]
        assert (Mat(q, a) * Mat(q, b)).tolist() == expected
        assert linalg.product_mod(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), q).tolist() == expected


class TestPolynomials:
    """Test characteristic polynomials and factorization."""

    def test_charpoly_diagonal(self):
        """Test the characteristic polynomial of a diagonal matrix."""
        assert charpoly(Mat(13, [[2, 0], [0, 3]])) == [1, 8, 6]

    def test_charpoly_identity(self):
        """Test (x+1)^3 for the GF(2) identity."""
        assert charpoly(Mat.identity(2, 3)) == [1, 1, 1, 1]

    def test_cayley_hamilton(self):
        """Test every matrix annihilates its characteristic polynomial."""
        rng = np.random.default_rng(7)
        for q, n in [(2, 12), (13, 9), (13, 1)]:
            a = random_mat(rng, q, n)
            chi = charpoly(a)
            assert len(chi) == n + 1 and chi[0] == 1
            assert evaluate_at(chi, a).is_zero()

    def test_charpoly_of_block_sum(self):
        """Test several Krylov chains multiply out to the product of the blocks."""
        rng = np.random.default_rng(11)
        blocks = [random_mat(rng, 13, 6), Mat.identity(13, 4), random_mat(rng, 13, 3)]
        expected = [1]
        for block in blocks:
            expected = poly_mul(expected, charpoly(block), 13)
        assert charpoly(block_diagonal(*blocks)) == expected

    def test_factors(self):
        """Test splitting x^2 + 1 over GF(13)."""
        factors = list(irreducible_factors([1, 0, 1], 13, random.Random(0)))
        assert factors == [[1, 5], [1, 8]]

    def test_irreducible_stays_whole(self):
        """Test x^2 + x + 1 is irreducible over GF(2)."""
        assert list(irreducible_factors([1, 1, 1], 2, random.Random(0))) == [[1, 1, 1]]


class TestModules:
    """Test module constructions and spinning."""

    def test_spin_zero(self):
        """Test spinning the zero vector."""
        module = GModule.from_perms(2, S3_PERMS)
        assert len(spin(module, [0, 0, 0])) == 0
        assert len(spin(module, [])) == 0

    def test_spin_permutation_module(self):
        """Test the sum-zero submodule of the S3 permutation module."""
        module = GModule.from_perms(2, S3_PERMS)
        basis = spin(module, [1, 1, 0])
        assert len(basis) == 2
        # brute force: every sum-zero vector is in the span
        span = {tuple((c @ basis) % 2) for c in np.ndindex(2, 2)}
        assert span == {(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)}

    def test_spin_gives_invariant_echelon_basis(self):
        """Test a spun basis is in RREF, invariant and contains the seed."""
        rng = np.random.default_rng(12)
        a = random_invertible(rng, 5, 4)
        b = random_invertible(rng, 5, 3)
        module = GModule(5, 7, {"g": block_diagonal(a, b), "h": block_diagonal(a * a, b)})
        seed = [1, 2, 0, 4, 0, 0, 0]
        basis = spin(module, seed)
        assert len(basis) <= 4
        assert np.array_equal(basis, linalg.rref(basis, 5)[0])
        assert module.is_invariant(basis)
        assert not linalg.reduce_against(np.asarray(seed), basis, linalg.rref(basis, 5)[1], 5).any()

    def test_spin_seed_length(self):
        """Test seeds of the wrong length."""
        module = GModule.from_perms(2, S3_PERMS)
        with pytest.raises(ShapeError):
            spin(module, [1, 0])

    def test_tensor_and_exterior_dimensions(self):
        """Test dimensions of tensor products and exterior powers."""
        rng = np.random.default_rng(8)
        a = GModule(13, 2, {"g": random_invertible(rng, 13, 2)})
        b = GModule(13, 3, {"g": random_invertible(rng, 13, 3)})
        assert a.tensor(b).dim == 6
        c = GModule(13, 6, {"g": random_invertible(rng, 13, 6)})
        assert c.exterior_power(2).dim == 15
        assert c.exterior_power(1)["g"] == c["g"]

    def test_exterior_power_is_multiplicative(self):
        """Test the wedge action respects products."""
        rng = np.random.default_rng(9)
        g = random_invertible(rng, 13, 5)
        h = random_invertible(rng, 13, 5)
        module = GModule(13, 5, {"g": g, "h": h, "gh": g * h})
        wedge = module.exterior_power(3)
        assert wedge["g"] * wedge["h"] == wedge["gh"]

    def test_exterior_power_range(self):
        """Test exterior powers beyond the dimension."""
        module = GModule.from_perms(2, S3_PERMS)
        with pytest.raises(ValueError):
            module.exterior_power(4)

    def test_submodule_and_quotient(self):
        """Test sub- and quotient modules of the S3 permutation module."""
        module = GModule.from_perms(2, S3_PERMS)
        basis = spin(module, [1, 1, 0])
        assert module.is_invariant(basis)
        assert module.submodule(basis).dim == 2
        quotient = module.quotient(basis)
        assert quotient.dim == 1
        assert all(g.is_identity() for _, g in quotient)

    def test_restrict(self):
        """Test restriction keeps only the named generators."""
        module = GModule.from_perms(2, S3_PERMS)
        assert module.restrict(["r"]).names == ["r"]
        with pytest.raises(KeyError):
            module.restrict(["t"])


class TestMeataxe:
    """Test irreducibility, chopping and module isomorphism."""

    def test_chop_permutation_module(self):
        """Test the S3 permutation module over GF(2) has factors 1 and 2."""
        module = GModule.from_perms(2, S3_PERMS)
        result = meataxe_chop(module, seed=1)
        assert result.dimensions == [1, 2]
        assert result.total_dimension == 3

    def test_chop_factors_retest_irreducible(self):
        """Test chopped factors pass a fresh irreducibility test."""
        module = GModule.from_perms(13, S3_PERMS)
        result = meataxe_chop(module, seed=2)
        assert result.dimensions == [1, 2]
        for factor in result.factors:
            assert is_irreducible(factor.module, seed=99)

    def test_chop_multiplicities(self):
        """Test isomorphic factors are grouped."""
        module = GModule.from_perms(13, {"s": [1, 0, 3, 2], "r": [1, 0, 3, 2]})
        result = meataxe_chop(module, seed=3)
        assert result.dimensions == [1, 1, 1, 1]
        assert sorted(f.multiplicity for f in result.factors) == [2, 2]

    def test_reducible_is_not_irreducible(self):
        """Test a reducible module is split."""
        assert not is_irreducible(GModule.from_perms(2, S3_PERMS), seed=4)

    def test_seeded_runs_are_deterministic(self):
        """Test the same seed gives the same factors."""
        module = GModule.from_perms(13, {"r": [1, 2, 3, 4, 0]})
        first = meataxe_chop(module, seed=5)
        second = meataxe_chop(module, seed=5)
        assert first.dimensions == second.dimensions
        assert [f.module["r"] for f in first.factors] == [f.module["r"] for f in second.factors]

    def test_iso_with_itself(self):
        """Test a module is isomorphic to itself."""
        module = GModule.from_perms(13, S3_PERMS)
        t = module_iso(module, module, seed=6)
        assert t is not None
        assert all(t.inverse() * module[n] * t == module[n] for n in module.names)

    def test_iso_of_conjugated_module(self):
        """Test a conjugated module is recognized with a verified witness."""
        rng = np.random.default_rng(10)
        module = GModule.from_perms(13, S3_PERMS)
        change = random_invertible(rng, 13, 3)
        other = module.with_generators(
            {n: change.inverse() * g * change for n, g in module}
        )
        t = module_iso(module, other, seed=7)
        assert t is not None
        assert all(t.inverse() * module[n] * t == other[n] for n in module.names)

    def test_non_isomorphic(self):
        """Test the trivial and sign modules of S3 over GF(13)."""
        trivial = GModule(13, 1, {"s": Mat(13, [[1]]), "r": Mat(13, [[1]])})
        sign = GModule(13, 1, {"s": Mat(13, [[12]]), "r": Mat(13, [[1]])})
        assert module_iso(trivial, sign) is None
        assert hom_space(trivial, sign) == []

    def test_dimension_mismatch(self):
        """Test modules of different dimension are never isomorphic."""
        a = GModule.from_perms(13, S3_PERMS)
        b = GModule(13, 1, {"s": Mat(13, [[1]]), "r": Mat(13, [[1]])})
        assert module_iso(a, b) is None

    def test_name_mismatch(self):
        """Test generator names must agree."""
        a = GModule(13, 1, {"s": Mat(13, [[1]])})
        b = GModule(13, 1, {"t": Mat(13, [[1]])})
        with pytest.raises(KeyError):
            module_iso(a, b)

    def unipotent_pair(self, q):
        identity = GModule(q, 4, {"u": Mat.identity(q, 4)})
        jordan = GModule(q, 4, {"u": Mat(q, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]])})
        return identity, jordan

    def test_non_isomorphic_small_hom_space(self):
        """Test a hom space searched completely certifies non-isomorphism."""
        identity, jordan = self.unipotent_pair(2)
        assert len(hom_space(identity, jordan)) == 4
        assert module_iso(identity, jordan) is None

    def test_random_search_exhausted(self):
        """Test a large hom space without invertible elements is inconclusive, not None."""
        identity, jordan = self.unipotent_pair(13)
        assert len(hom_space(identity, jordan)) == 4
        with pytest.raises(MeataxeInconclusiveError):
            module_iso(identity, jordan, seed=2, settings=MeataxeSettings(retries=5))


class TestMatrixFiles:
    """Test MAT and MOD file parsing."""

    def test_parse_dotted_matrix(self):
        """Test '.' entries and compact rows."""
        mat = parse_mat("MAT 2 2 3\n1 . 1\n.11\n")
        assert mat.tolist() == [[1, 0, 1], [0, 1, 1]]

    def test_parse_errors(self):
        """Test malformed matrix files."""
        with pytest.raises(ParseError):
            parse_mat("MAT 2 2 2\n1 1\n")
        with pytest.raises(ParseError):
            parse_mat("MAT 2 1 2\n1 2\n")
        with pytest.raises(ParseError):
            parse_mat("MATRIX 2 1 1\n1\n")

    def test_module_file(self):
        """Test reading a module written by format_mod."""
        module = GModule.from_perms(13, S3_PERMS)
        parsed = parse_mod(format_mod(module))
        assert parsed.names == ["s", "r"]
        assert all(parsed[n] == module[n] for n in module.names)

    def test_module_shape_mismatch(self):
        """Test a generator block of the wrong size."""
        text = "MOD 2 2 1\nGEN a\nMAT 2 1 1\n1\n"
        with pytest.raises(ParseError):
            parse_mod(text)
