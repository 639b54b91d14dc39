"""Tests for cyclotomics, character tables, fusions and compatible pairs."""

import re
from pathlib import Path

import numpy as np
import pytest

from sporadic_forge.chartab import (
    check_fusion,
    compatible_pairs,
    compatible_pairs_exhaustive,
    cyclotomic_field,
    decompose,
    fingerprint_fusion,
    iterate_fusions,
    multiplicity_free_sums,
    parse_cyclotomic,
    parse_fusion,
    parse_table,
    restrict,
    verify_character_table,
    verify_class_data,
)
from sporadic_forge.chartab.cyclotomic import contract_products, coordinate_array
from sporadic_forge.chartab.fusion import FusionMap
from sporadic_forge.core.checks import CheckStatus
from sporadic_forge.core.errors import ParseError, TableInconsistencyError
from sporadic_forge.permcore import parse_cycles, schreier_sims

S3_TABLE = """\
CT S3 order=6 gens=a,b
class 1a size=1 pow2=1a pow3=1a
class 2a size=3 rep=a pow2=1a pow3=2a
class 3a size=2 rep=ab pow2=3a pow3=1a
chi 1 1 1 1
chi 2 1 -1 1
chi 3 2 . -1
"""

S4_TABLE = """\
CT S4 order=24 gens=a,b
class 1a size=1
class 2a size=6 rep=a pow2=1a pow3=2a
class 2b cent=8 rep=b^2 pow2=1a pow3=2b
class 3a size=8 rep=ab pow2=3a pow3=1a
class 4a size=6 rep=b pow2=2b pow3=4a
chi 1 1 1 1 1 1
chi 2 1 -1 1 1 -1
chi 3 2 0 2 -1 0
chi 4 3 1 -1 0 -1
chi 5 3 -1 -1 0 1
"""

C3_TABLE = """\
CT C3 order=3
const A = z3
class 1a size=1
class 3a size=1 pow3=1a
class 3b size=1 pow3=1a
chi 1 1 1 1
chi 2 1 A A*
chi 3 1 A* A
"""


def cyc(n, text):
    return parse_cycles(text, n)


def all_passed(checks):
    return [c.claim for c in checks if c.status is not CheckStatus.PASS]


@pytest.fixture
def s3():
    return parse_table(S3_TABLE, source="s3")


@pytest.fixture
def s4():
    return parse_table(S4_TABLE, source="s4")


@pytest.fixture
def c3():
    return parse_table(C3_TABLE, source="c3")


class TestCyclotomics:
    """Test exact cyclotomic arithmetic"""

    @pytest.mark.parametrize("n", [1, 3, 4, 8, 12, 21])
    def test_zeta_has_order_n(self, n):
        """Test zeta_N^N = 1 in every field"""
        field = cyclotomic_field(n)
        assert field.zeta(1) ** n == 1

    def test_conjugation_is_an_involution(self):
        """Test conj(conj(x)) = x and x * conj(x) is real for a unit"""
        x = parse_cyclotomic("(-1 + sqrt(-7))/2 + 3*z28^5")
        assert x.conj().conj() == x
        z = cyclotomic_field(12).zeta(5)
        assert z * z.conj() == 1

    def test_sqrt_minus_seven_is_a_gauss_sum(self):
        """Test sqrt(-7) = 1 + 2(z7 + z7^2 + z7^4)"""
        assert parse_cyclotomic("sqrt(-7)") == parse_cyclotomic("2*(z7+z7^2+z7^4)+1")

    @pytest.mark.parametrize("d", [-1, 2, -2, -3, 5, 12, -15])
    def test_square_roots_square_back(self, d):
        """Test sqrt(d)^2 = d"""
        assert parse_cyclotomic(f"sqrt({d})") ** 2 == d

    def test_i_is_sqrt_minus_one(self):
        """Test i and sqrt(-1) agree"""
        assert parse_cyclotomic("i") == parse_cyclotomic("sqrt(-1)")
        assert parse_cyclotomic("-2*(z8^3+z8)") == parse_cyclotomic("-2*i*sqrt(2)")

    def test_equality_across_fields(self):
        """Test a value compares equal after embedding into a larger field"""
        small = parse_cyclotomic("z3")
        large = parse_cyclotomic("z3", cyclotomic_field(6))
        assert small == large
        assert small.embed(cyclotomic_field(6)).coeffs == large.coeffs

    def test_constants_and_bar(self):
        """Test constant substitution and bar() conjugation"""
        a = parse_cyclotomic("sqrt(-3)")
        value = parse_cyclotomic("A + bar(A)", constants={"A": a})
        assert value == 0

    @pytest.mark.parametrize("text", ["1 +", "sqrt(x)", "Q", "(1 + 2", "2^-1"])
    def test_malformed_expressions(self, text):
        """Test parse errors for malformed expressions"""
        with pytest.raises(ParseError):
            parse_cyclotomic(text)

    def test_zeta_outside_field(self):
        """Test z5 is rejected in Q(zeta_3)"""
        with pytest.raises(ParseError):
            parse_cyclotomic("z5", cyclotomic_field(3))

    def test_declared_python_has_lcm(self):
        """Test the declared Python floor provides math.lcm used for conductors"""
        pyproject = (Path(__file__).resolve().parents[2] / "pyproject.toml").read_text()
        floor = re.search(r'requires-python = ">=(\d+)\.(\d+)"', pyproject)
        assert floor is not None
        assert (int(floor.group(1)), int(floor.group(2))) >= (3, 9)
        assert "py38" not in pyproject

    def test_contracted_products_match_multiplication(self):
        """Test a sum of products in the power basis equals the cyclotomic arithmetic"""
        field = cyclotomic_field(12)
        x, y = parse_cyclotomic("sqrt(-3) + i", field), parse_cyclotomic("z12^5 - 2", field)
        u, v = parse_cyclotomic("sqrt(3)", field), parse_cyclotomic("3*z12^7 + z12", field)
        left = coordinate_array([[x, y]], field)
        right = coordinate_array([[u, v]], field)
        result = contract_products(field, left, right, 1, 100)
        assert result.shape == (1, 1, field.degree)
        assert [int(c) for c in result[0, 0]] == (x * u + y * v).integral_coords()

    def test_large_conductor_products(self):
        """Test products in Q(zeta_3080) without a degree-cubed intermediate"""
        field = cyclotomic_field(3080)
        assert field.degree == 960
        x = field.zeta(1) + field.zeta(7) * 2
        y = field.zeta(5) - field.zeta(1540)
        left = coordinate_array([[x]], field).astype(np.int64)
        right = coordinate_array([[y]], field).astype(np.int64)
        result = contract_products(field, left, right, 1, 16)
        assert [int(c) for c in result[0, 0]] == (x * y).integral_coords()


class TestCharacterTables:
    """Test table parsing and consistency checks"""

    def test_parse_s3(self, s3):
        """Test classes, sizes, centralizers and power maps"""
        assert s3.class_names == ["1a", "2a", "3a"]
        assert [c.centralizer for c in s3.classes] == [6, 2, 3]
        assert s3.classes[1].element_order == 2
        assert s3.classes[2].powers == {2: "3a", 3: "1a"}
        assert s3.degree(2) == 2
        assert s3.characters[2][1] == 0

    def test_trivial_group(self):
        """Test the table of the trivial group passes"""
        table = parse_table("CT 1 order=1\nclass 1a size=1\nchi 1 1\n")
        assert all_passed(verify_character_table(table)) == []

    @pytest.mark.parametrize("text", [S3_TABLE, S4_TABLE, C3_TABLE])
    def test_valid_tables_pass(self, text):
        """Test small textbook tables pass every identity"""
        assert all_passed(verify_character_table(parse_table(text))) == []

    def test_c3_field(self, c3):
        """Test the conductor comes from the constants"""
        assert c3.number_field.n == 3
        assert c3.characters[1][2] == c3.characters[1][1].conj()

    def test_transcription_error_surfaces(self):
        """Test a wrong value fails row orthogonality"""
        table = parse_table(S3_TABLE.replace("chi 3 2 . -1", "chi 3 2 . 1"))
        failed = all_passed(verify_character_table(table))
        assert "row orthogonality" in failed
        assert "column orthogonality" in failed

    def test_wrong_class_size_fails(self):
        """Test the class equation catches a bad size"""
        table = parse_table(S3_TABLE.replace("class 3a size=2", "class 3a size=3"))
        failed = all_passed(verify_character_table(table))
        assert "sum of class sizes" in failed

    def test_power_map_to_wrong_order(self):
        """Test power maps must land on classes of the right order"""
        table = parse_table(S3_TABLE.replace("pow2=3a pow3=1a", "pow2=2a pow3=1a"))
        assert "power maps reach valid classes" in all_passed(verify_character_table(table))

    def test_class_only_table(self):
        """Test a table without characters checks class data only"""
        text = "\n".join(line for line in S3_TABLE.splitlines() if not line.startswith("chi"))
        checks = verify_character_table(parse_table(text))
        assert all_passed(checks) == []
        assert not any("orthogonality" in c.claim for c in checks)

    @pytest.mark.parametrize(
        "text",
        [
            "class 1a size=1\n",
            "CT S3 order=6\nclass 1a\n",
            "CT S3 order=6\nclass 1a size=1\nchi 1 1 1\n",
            "CT S3 order=6\nclass 1a size=1\nchi 1 B\n",
            "CT S3 order=6\nwhat 1\n",
        ],
    )
    def test_parse_errors(self, text):
        """Test malformed table files raise ParseError"""
        with pytest.raises(ParseError):
            parse_table(text)

    def test_class_data_against_live_group(self, s3):
        """Test representative orders and class sizes in S3"""
        a, b = cyc(3, "(1,2)"), cyc(3, "(2,3)")
        group = schreier_sims([a, b], seed=1)
        checks = verify_class_data(s3, group, {"a": a, "b": b})
        assert all_passed(checks) == []
        sizes = {c.claim: c for c in checks if c.claim.startswith("|2a|") or c.claim.startswith("|3a|")}
        assert sizes["|2a|"].computed == 3
        assert sizes["|3a|"].details["centralizer"] == 3

    def test_class_data_cap_skips(self, s3):
        """Test classes above the cap are skipped, not failed"""
        a, b = cyc(3, "(1,2)"), cyc(3, "(2,3)")
        group = schreier_sims([a, b], seed=1)
        checks = verify_class_data(s3, group, {"a": a, "b": b}, class_cap=2)
        skipped = [c.claim for c in checks if c.status is CheckStatus.SKIPPED]
        assert skipped == ["|2a|"]


class TestFusion:
    """Test fusion fingerprints and fusion files"""

    def test_s3_into_s4_by_cycle_type(self, s3, s4):
        """Test cycle types settle the transposition class"""
        s3_gens = {"a": cyc(4, "(1,2)"), "b": cyc(4, "(2,3)")}
        s4_gens = {"a": cyc(4, "(1,2)"), "b": cyc(4, "(1,2,3,4)")}
        fusion = fingerprint_fusion(s3, s4, s3_gens, s4_gens)
        assert fusion.candidates == {"1a": ("1a",), "2a": ("2a",), "3a": ("3a",)}
        assert fusion.definite
        assert all_passed(check_fusion(fusion, s3, s4)) == []

    def test_table_data_alone_leaves_ambiguity(self, s3, s4):
        """Test orders and centralizers alone cannot separate 2a from 2b"""
        fusion = fingerprint_fusion(s3, s4)
        assert fusion.candidates["2a"] == ("2a", "2b")
        assert fusion.choices() == 2
        assert sorted(f["2a"] for f in iterate_fusions(fusion, cap=10)) == ["2a", "2b"]
        statuses = [c.status for c in check_fusion(fusion, s3, s4)]
        assert statuses[-1] is CheckStatus.UNCHECKED

    def test_identity_goes_to_identity(self, s4):
        """Test the identity class fuses to the identity class"""
        fusion = fingerprint_fusion(parse_table("CT 1 order=1\nclass 1a size=1\n"), s4)
        assert fusion.candidates == {"1a": ("1a",)}

    def test_empty_candidate_set(self, s3, c3):
        """Test a class with no admissible image is an inconsistency"""
        with pytest.raises(TableInconsistencyError):
            fingerprint_fusion(s3, c3)

    def test_fusion_file_and_override(self, s3, s4):
        """Test parsing a fusion file and overriding fingerprint candidates"""
        filed = parse_fusion("FUSE S3 -> S4\nmap 2a 2a\n")
        merged = fingerprint_fusion(s3, s4).override(filed)
        assert merged.definite
        assert merged.image("2a") == "2a"

    @pytest.mark.parametrize(
        "text", ["map 1a 1a\n", "FUSE S3 S4\n", "FUSE S3 -> S4\nmap 1a\n", "FUSE S3 -> S4\nmap 1a 1a\nmap 1a 1a\n"]
    )
    def test_fusion_parse_errors(self, text):
        """Test malformed fusion files"""
        with pytest.raises(ParseError):
            parse_fusion(text)

    def test_non_total_fusion(self, s3, s4):
        """Test index lookup rejects a partial fusion"""
        partial = FusionMap("S3", "S4", {"1a": ("1a",)})
        with pytest.raises(TableInconsistencyError):
            partial.indices(s3, s4)


class TestCompatiblePairs:
    """Test the compatible-pair search"""

    def fusion_c3(self):
        return FusionMap("C3", "S3", {"1a": ("1a",), "3a": ("3a",), "3b": ("3a",)})

    def test_faithful_sums(self, s3):
        """Test multiplicity-free faithful sums of S3 by degree"""
        sums = multiplicity_free_sums(s3, 4)
        assert [s.labels for s in sums] == [("3",), ("1", "3"), ("2", "3"), ("1", "2", "3")]
        assert [s.labels for s in multiplicity_free_sums(s3, 1, faithful=False)] == [("1",), ("2",)]

    def test_matches_brute_force(self, s3, c3):
        """Test the search agrees with an exhaustive subset oracle"""
        fusion = self.fusion_c3()
        search = compatible_pairs(s3, s3, c3, fusion, fusion, max_degree=4)
        found = sorted((p.h_side.labels, p.e_side.labels) for p in search.pairs)
        assert found == compatible_pairs_exhaustive(s3, s3, c3, [0, 2, 2], [0, 2, 2], 4)
        assert len(found) == 6
        assert search.settled
        assert search.minimal_degree == 2

    def test_restriction_decomposition(self, s3, c3):
        """Test the degree-2 character of S3 restricts to the two nontrivial linear characters of C3"""
        fusion = self.fusion_c3()
        search = compatible_pairs(s3, s3, c3, fusion, fusion, max_degree=2)
        assert len(search.pairs) == 1
        assert search.pairs[0].restriction == {"2": 1, "3": 1}

    def test_order_of_rows_does_not_matter(self, s3, c3):
        """Test reordering table rows leaves the pair set unchanged"""
        lines = S3_TABLE.splitlines()
        swapped = parse_table("\n".join(lines[:4] + [lines[6], lines[5], lines[4]]))
        fusion = self.fusion_c3()
        plain = compatible_pairs(s3, s3, c3, fusion, fusion, 4)
        reordered = compatible_pairs(swapped, s3, c3, fusion, fusion, 4)
        assert [p.to_dict() for p in plain.pairs] == [p.to_dict() for p in reordered.pairs]

    def test_ambiguous_fusion_reports_possible_pairs(self, s3, s4):
        """Test ambiguous candidates yield possible but not definite pairs"""
        fusion = fingerprint_fusion(s3, s4)
        search = compatible_pairs(s4, s4, s3, fusion, fusion, max_degree=3)
        pair = next(p for p in search.pairs if p.h_side.labels == ("4",) and p.e_side.labels == ("4",))
        assert not pair.definite
        assert not search.settled
        assert search.ambiguous_classes == 2

    def test_restriction_is_linear(self, s4):
        """Test restricting a sum is the sum of restrictions"""
        into_s4 = [(0,), (1,), (3,)]
        alpha, beta = s4.characters[3], s4.characters[4]
        total = [x + y for x, y in zip(alpha, beta)]
        assert restrict(total, into_s4) == [x + y for x, y in zip(restrict(alpha, into_s4), restrict(beta, into_s4))]

    def test_decompose(self, s3):
        """Test the permutation character of S4 restricted to S3"""
        values = np.array([[3], [1], [0]])
        assert decompose(s3, values, cyclotomic_field(1)) == {"1": 1, "3": 1}
        with pytest.raises(TableInconsistencyError):
            decompose(s3, np.array([[1], [0], [0]]), cyclotomic_field(1))
