"""Tests for words, presentations and coset enumeration."""

from pathlib import Path

import pytest

from sporadic_forge.core.errors import MissingAssignmentError, ParseError, ShapeError
from sporadic_forge.fpres import (
    Alphabet,
    Presentation,
    Word,
    coset_action,
    evaluate,
    format_presentation,
    format_word,
    parse_presentation,
    parse_word,
    read_presentation,
    relators_hold,
    todd_coxeter,
)
from sporadic_forge.permcore import parse_cycles, schreier_sims

A5_TEXT = """\
FP A5
# the (2,3,5) triangle group
gen a b
rel a^2 = b^3 = (a b)^5 = 1
sub B b
sub A a
"""

D8_TEXT = """\
FP D8
gen r s
rel r^4
rel s^2
rel (r s)^2
"""


@pytest.fixture
def a5():
    return parse_presentation(A5_TEXT)


class TestWords:
    """Test word parsing, printing and evaluation."""

    def test_empty_word(self):
        """Test the empty string and '1' are the identity."""
        assert parse_word("", ["a"]).is_identity()
        assert parse_word("1", ["a"]).is_identity()
        assert format_word(Word(), ["a"]) == "1"

    def test_power_of_product(self):
        """Test (pq^2v_1)^5 expands to 20 letters."""
        names = ["p", "q", "v_1"]
        word = parse_word("(pq^2v_1)^5", names)
        assert len(word) == 20
        assert word == parse_word("p q q v_1", names) ** 5

    def test_left_normed_commutator(self):
        """Test [x, y, z] is [[x, y], z] with [x, y] = x^-1 y^-1 x y."""
        names = ["h_1", "h_5"]
        h1 = Word.generator(0)
        h5 = Word.generator(1)
        inner = h5.inverse() * h1 * h5 * h1.inverse()
        expected = inner.inverse() * h5.inverse() * inner * h5
        assert parse_word("[h_5, h_1^-1, h_5]", names) == expected

    def test_conjugation(self):
        """Test x^g = g^-1 x g for generator, bracketed and braced conjugators."""
        names = ["x", "g", "h"]
        expected = parse_word("g^-1 x g", names)
        assert parse_word("x^g", names) == expected
        assert parse_word("x^(g h)", names) == parse_word("h^-1 g^-1 x g h", names)
        assert parse_word("x^{g h}", names) == parse_word("x^(g h)", names)

    def test_exponents(self):
        """Test negative and braced exponents and free reduction."""
        names = ["a", "b"]
        assert parse_word("a^-2", names) == Word.generator(0, -2)
        assert parse_word("a^{-1}", names) == parse_word("a^-1", names)
        assert parse_word("a b b^-1 a^-1", names).is_identity()
        assert parse_word("(a b)^0", names).is_identity()

    def test_longest_name_wins(self):
        """Test h_14 is not read as h_1 followed by a digit."""
        names = ["h_1", "h_14"]
        assert parse_word("h_14", names) == Word.generator(1)
        assert parse_word("h_1h_14", names) == Word((0, 2))

    def test_print_then_parse(self):
        """Test printed words parse back to the same word."""
        alphabet = Alphabet(["p", "q", "v_1", "v_10"])
        for text in ["(pq^2v_1)^5", "[p, q]^3 v_10^-1", "v_1^(p q) v_10^2", "1"]:
            word = alphabet.parse(text)
            assert alphabet.parse(alphabet.format(word)) == word

    def test_parse_errors(self):
        """Test unknown generators and malformed exponents carry a position."""
        with pytest.raises(ParseError) as info:
            parse_word("a b c", ["a", "b"])
        assert info.value.position == 4
        for text in ["a^", "a^-b", "(a", "[a]", "a)"]:
            with pytest.raises(ParseError):
                parse_word(text, ["a", "b"])

    def test_evaluate_permutations(self):
        """Test words evaluate left to right in permutation groups."""
        a = parse_cycles("(1,2)", 3)
        b = parse_cycles("(2,3)", 3)
        word = parse_word("a b", ["a", "b"])
        assert evaluate(word, {0: a, 1: b}) == a * b
        assert evaluate(Word(), {0: a}).is_identity()

    def test_missing_assignment(self):
        """Test a generator without an element is reported."""
        with pytest.raises(MissingAssignmentError):
            evaluate(parse_word("a b", ["a", "b"]), {0: parse_cycles("(1,2)", 2)})


class TestPresentations:
    """Test presentation files and relator checks."""

    def test_relation_chain(self, a5):
        """Test a relation chain gives one relator per side."""
        assert len(a5.relators) == 3
        assert [a5.format(r) for r in a5.relators] == ["a^2", "b^3", "a b a b a b a b a b"]

    def test_relation_with_two_sides(self):
        """Test w1 = w2 becomes w1 w2^-1."""
        p = parse_presentation("FP T\ngen a b\nrel a b = b a\n")
        assert p.relators == [parse_word("a b a^-1 b^-1", ["a", "b"])]

    def test_subgroups(self, a5):
        """Test named subgroup generator lists."""
        assert a5.subgroup("B") == [Word.generator(1)]
        with pytest.raises(KeyError):
            a5.subgroup("C")

    def test_format_round_trip(self, a5):
        """Test a written presentation reads back unchanged."""
        again = parse_presentation(format_presentation(a5))
        assert again.generators == a5.generators
        assert again.relators == a5.relators
        assert again.subgroups == a5.subgroups

    def test_repeated_generator_repaired(self):
        """Test a numbered generator list with one repeat is normalized."""
        p = parse_presentation("FP E\ngen v1 v2 v2 v4\nrel v3^2\n")
        assert p.generators == ["v1", "v2", "v3", "v4"]
        assert p.notes
        mixed = parse_presentation("FP E\ngen a b v_1 v_1 v_3\nrel a v_2 a^-1 v_3\n")
        assert mixed.generators == ["a", "b", "v_1", "v_2", "v_3"]

    def test_bad_files(self):
        """Test malformed presentation files."""
        with pytest.raises(ParseError):
            parse_presentation("gen a\n")
        with pytest.raises(ParseError):
            parse_presentation("FP X\nrel a\n")
        with pytest.raises(ParseError):
            parse_presentation("FP X\ngen a\nrel b\n")
        with pytest.raises(ParseError):
            parse_presentation("FP X\ngen a\nfoo a\n")

    def test_relators_hold_reports_first_failure(self, a5):
        """Test S3 generators satisfy a^2 and b^3 but not (ab)^5."""
        check = relators_hold(a5, {"a": parse_cycles("(1,2)", 3), "b": parse_cycles("(1,2,3)", 3)})
        assert not check
        assert check.first_failure == 2
        assert check.failure_text == "a b a b a b a b a b"


class TestToddCoxeter:
    """Test coset enumeration against known indices."""

    def test_a5_over_cyclic_subgroups(self, a5):
        """Test the indices of <b> and <a> in A5."""
        assert todd_coxeter(a5, a5.subgroup("B")).index == 20
        assert todd_coxeter(a5, a5.subgroup("A")).index == 30

    def test_a5_regular(self, a5):
        """Test the trivial subgroup has index 60 and the action has order 60."""
        table = todd_coxeter(a5)
        assert table.complete and table.index == 60
        perms = coset_action(table)
        assert schreier_sims(list(perms.values()), seed=1).order() == 60
        assert relators_hold(a5, perms)

    def test_felsch_agrees(self, a5):
        """Test both strategies give the same index."""
        for sub in ([], a5.subgroup("B"), a5.subgroup("A")):
            hlt = todd_coxeter(a5, sub)
            felsch = todd_coxeter(a5, sub, felsch=True)
            assert hlt.index == felsch.index
            assert felsch.strategy == "felsch"

    def test_dihedral(self):
        """Test D8 with separate relator lines."""
        d8 = parse_presentation(D8_TEXT)
        assert todd_coxeter(d8).index == 8
        assert todd_coxeter(d8, [Word.generator(0)]).index == 2

    def test_whole_group(self, a5):
        """Test the whole group gives the degree-1 action."""
        table = todd_coxeter(a5, [Word.generator(0), Word.generator(1)])
        assert table.index == 1
        assert all(p.is_identity() for p in coset_action(table).values())

    def test_collapse_to_trivial(self):
        """Test coincidences collapse a presentation of the trivial group."""
        p = parse_presentation("FP T\ngen a b\nrel a^2\nrel b^3\nrel a b\n")
        assert todd_coxeter(p).index == 1

    def test_overflow(self, a5):
        """Test a small table limit yields an explicit overflow result."""
        table = todd_coxeter(a5, max_cosets=10)
        assert table.overflow and not table.complete
        assert table.index is None
        with pytest.raises(ShapeError):
            coset_action(table)
        assert todd_coxeter(a5, max_cosets=10, felsch=True).overflow

    def test_lookahead_recovers(self, a5):
        """Test a table limit just above the index still closes."""
        table = todd_coxeter(a5, a5.subgroup("B"), max_cosets=50)
        assert table.index == 20

    def test_standard_numbering(self, a5):
        """Test coset 0 is the subgroup and the table is consistent."""
        table = todd_coxeter(a5, a5.subgroup("B"))
        assert table.table[0, 2] == 0
        assert sorted(table.table[:, 0].tolist()) == list(range(20))

    def test_invalid_limit(self, a5):
        """Test the table limit must be positive."""
        with pytest.raises(ValueError):
            todd_coxeter(a5, max_cosets=0)

    def test_presentation_rejects_foreign_words(self):
        """Test relators must use declared generators."""
        with pytest.raises(ValueError):
            Presentation(["a"], [Word.generator(1)])


DATA = Path(__file__).resolve().parents[2] / "data"

SHIPPED = sorted(DATA.rglob("*.fp"))

# (file, subgroup, index) for the shipped presentations of small groups
SHIPPED_INDICES = [
    ("co2/D.fp", "W", 512),
    ("co2/W.fp", "L", 32),
    ("co2/Q.fp", "trivial", 512),
    ("co2/L.fp", "trivial", 720),
    ("co2/H.fp", "T", 512),
    ("fi22/D.fp", "U", 1024),
    ("fi22/H.fp", "T", 1024),
    ("fi22/S5.fp", "trivial", 120),
    ("extensions/E5.fp", "U", 88),
    pytest.param("a22/A22.fp", "trivial", 887040, marks=pytest.mark.slow),
]


class TestShippedPresentations:
    """Test every shipped presentation file."""

    @pytest.mark.parametrize("path", SHIPPED, ids=lambda p: str(p.relative_to(DATA)))
    def test_print_then_parse(self, path):
        """Test a shipped presentation reads back unchanged after formatting."""
        presentation = read_presentation(path)
        again = parse_presentation(format_presentation(presentation))
        assert again.generators == presentation.generators
        assert again.relators == presentation.relators
        assert again.subgroups == presentation.subgroups

    @pytest.mark.parametrize("name, subgroup, expected", SHIPPED_INDICES)
    def test_coset_action(self, name, subgroup, expected):
        """Test the coset action satisfies the relators and has the right order."""
        presentation = read_presentation(DATA / name)
        words = [] if subgroup == "trivial" else presentation.subgroup(subgroup)
        table = todd_coxeter(presentation, words, max_cosets=10**6)
        assert table.index == expected
        perms = coset_action(table)
        assert relators_hold(presentation, perms)
        assignment = presentation.assignment(perms)
        for word in words:
            assert evaluate(word, assignment)(0) == 0
        order = schreier_sims(list(perms.values()), seed=1).order()
        if words:
            assert order % expected == 0
        else:
            assert order == expected
