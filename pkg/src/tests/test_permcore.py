"""Tests for permutations, orbits, BSGS construction and class orbits."""

import random

import numpy as np
import pytest

from sporadic_forge.core.errors import NotInGroupError, ParseError, ShapeError
from sporadic_forge.gflin import Mat
from sporadic_forge.permcore import (
    PermAction,
    Perm,
    ProjectiveAction,
    VectorAction,
    center_small,
    class_orbit,
    common_fixed_line,
    derived_subgroup,
    enumerate_small,
    format_cycles,
    nonzero_vectors,
    normal_closure,
    orbit,
    orbit_permutations,
    parse_cycles,
    parse_perm,
    permutations_on_points,
    schreier_sims,
)


def cyc(n, text):
    return parse_cycles(text, n)


def brute_force_closure(gens):
    """All products of generators, as image tuples."""
    n = gens[0].degree
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    images = [tuple(int(i) for i in g.image) for g in gens]
    while frontier:
        nxt = []
        for e in frontier:
            for g in images:
                product = tuple(g[i] for i in e)
                if product not in seen:
                    seen.add(product)
                    nxt.append(product)
        frontier = nxt
    return seen


S5 = [cyc(5, "(1,2)"), cyc(5, "(1,2,3,4,5)")]
A5 = [cyc(5, "(1,2,3)"), cyc(5, "(1,2,3,4,5)")]
D8 = [cyc(4, "(1,2,3,4)"), cyc(4, "(1,3)")]
M11 = [cyc(11, "(1,2,3,4,5,6,7,8,9,10,11)"), cyc(11, "(3,7,11,8)(4,10,5,6)")]


class TestPerm:
    """Test permutation arithmetic and notation."""

    def test_product_convention(self):
        """Test products apply the left factor first."""
        p = cyc(3, "(1,2)")
        q = cyc(3, "(2,3)")
        assert (p * q)(0) == 2
        assert p * q == cyc(3, "(1,3,2)")

    def test_order_and_cycle_type(self):
        """Test order and cycle type of a product of disjoint cycles."""
        p = cyc(5, "(1,2,3)(4,5)")
        assert p.order() == 6
        assert p.cycle_type() == (3, 2)
        assert (p ** 6).is_identity()
        assert p ** -1 == p.inverse()

    def test_conjugate_and_commutator(self):
        """Test conjugation x^g = g^-1 x g."""
        x = cyc(4, "(1,2)")
        g = cyc(4, "(2,3,4)")
        assert x.conjugate(g) == cyc(4, "(1,3)")
        assert x.commutator(x).is_identity()

    def test_not_a_bijection(self):
        """Test rejecting non-bijective images."""
        with pytest.raises(ValueError):
            Perm([0, 0, 1])

    def test_cycle_files(self):
        """Test CYC and PERM permutation files."""
        p = parse_perm("CYC 5\n(1,2,3)\n(4,5)\n")
        assert p.image.tolist() == [1, 2, 0, 4, 3]
        assert format_cycles(p) == "(1,2,3)(4,5)"
        assert parse_perm("PERM 3\n2 3 1\n") == cyc(3, "(1,2,3)")

    def test_bad_files(self):
        """Test malformed permutation files."""
        with pytest.raises(ParseError):
            parse_perm("PERM 3\n2 3\n")
        with pytest.raises(ParseError):
            parse_perm("CYC 3\n(1,2\n")
        with pytest.raises(ParseError):
            parse_perm("CYC 3\n(1,2)(2,3)\n")


class TestOrbit:
    """Test orbits and matrix-to-permutation conversion."""

    def test_trivial_orbit(self):
        """Test the orbit of a point under the identity."""
        found = orbit(PermAction({"e": Perm.identity(4)}), 2)
        assert len(found) == 1

    def test_words_reconstruct_points(self):
        """Test Schreier vector words map the start to each point."""
        gens = {"a": cyc(6, "(1,2,3)"), "b": cyc(6, "(3,4)(5,6)")}
        found = orbit(PermAction(gens), 0)
        assert len(found) == 4
        for position, point in enumerate(found.points):
            image = 0
            for name in found.word(position):
                image = gens[name](image)
            assert image == point

    def test_gl32_on_nonzero_vectors(self):
        """Test GL(3,2) acting on the seven nonzero vectors has order 168."""
        mats = {
            "t": Mat(2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
            "c": Mat(2, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        }
        perms = permutations_on_points(VectorAction(mats), nonzero_vectors(2, 3))
        assert perms["t"].degree == 7
        assert schreier_sims(list(perms.values()), seed=1).order() == 168

    def test_point_list_must_be_invariant(self):
        """Test a non-invariant point list is rejected."""
        mats = {"c": Mat(2, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])}
        with pytest.raises(ShapeError):
            permutations_on_points(VectorAction(mats), np.asarray([[1, 0, 0]]))

    def test_projective_orbit(self):
        """Test SL(2,3) permutes the four 1-spaces of GF(3)^2."""
        mats = {"u": Mat(3, [[1, 1], [0, 1]]), "l": Mat(3, [[1, 0], [1, 1]])}
        perms, points = orbit_permutations(ProjectiveAction(mats), [2, 0])
        assert len(points) == 4
        assert points.tolist()[0] == [0, 1]
        # the kernel {+1, -1} acts trivially, leaving A4
        assert schreier_sims(list(perms.values())).order() == 12

    def test_common_fixed_line(self):
        """Test the common eigenvector of commuting diagonal matrices."""
        mats = [Mat(13, [[2, 0], [0, 3]]), Mat(13, [[5, 0], [0, 3]])]
        v = common_fixed_line(mats)
        assert v.tolist() == [0, 1]
        assert common_fixed_line([Mat(13, [[0, 1], [2, 0]])]) is None

    def test_large_field_vectors_are_distinct(self):
        """Test vectors over GF(257) with entries above 255 keep distinct keys."""
        action = VectorAction({"u": Mat(257, [[1, 1], [0, 1]])})
        assert action.key(np.asarray([1, 256])) != action.key(np.asarray([1, 0]))
        found = orbit(action, [1, 0])
        assert len(found) == 257
        assert [1, 256] in found.points.tolist()


class TestSchreierSims:
    """Test BSGS construction, order and membership."""

    def test_s5_order(self):
        """Test the order of S5 against brute force."""
        group = schreier_sims(S5, seed=1)
        assert group.order() == 120 == len(brute_force_closure(S5))

    @pytest.mark.parametrize("gens", [S5, A5, D8, M11])
    def test_orders_match_enumeration(self, gens):
        """Test orders against exhaustive closure."""
        assert schreier_sims(gens, seed=2).order() == len(brute_force_closure(gens))

    def test_m11(self):
        """Test the Mathieu group M11."""
        assert schreier_sims(M11, seed=3).order() == 7920

    def test_orbit_stabilizer(self):
        """Test every level's orbit length times the stabilizer below is the order."""
        group = schreier_sims(M11, seed=4)
        elements = enumerate_small(group)
        for depth, point in enumerate(group.base):
            fixing = [e for e in elements if all(e(b) == b for b in group.base[:depth])]
            assert len(fixing) == group.stabilizer_order(depth)
            assert len({e(point) for e in fixing}) == group.orbit_lengths[depth]

    def test_membership(self):
        """Test random words are members and odd permutations are not in A5."""
        group = schreier_sims(A5, seed=5)
        rng = random.Random(6)
        for _ in range(100):
            word = Perm.identity(5)
            for _ in range(rng.randint(1, 12)):
                word = word * rng.choice(A5)
            assert group.contains(word)
        odd = [Perm(rng.sample(range(5), 5)) for _ in range(400)]
        odd = [p for p in odd if len(p.cycle_type()) % 2 == 0][:100]
        assert odd
        assert not any(group.contains(p) for p in odd)

    def test_deterministic(self):
        """Test identical seeds give identical BSGS data."""
        first = schreier_sims(M11, seed=7)
        second = schreier_sims(M11, seed=7)
        assert first.base == second.base
        assert first.orbit_lengths == second.orbit_lengths
        assert first.strong_generators == second.strong_generators

    def test_random_bases_agree(self):
        """Test orders computed from independent random bases agree."""
        orders = {schreier_sims(M11, seed=s, randomize_base=True).order() for s in range(3)}
        assert orders == {7920}

    def test_base_prefix(self):
        """Test a requested base prefix is honoured."""
        group = schreier_sims(S5, seed=8, base=[4])
        assert group.base[0] == 4

    def test_element_from_base_images(self):
        """Test elements are recovered from their base images."""
        group = schreier_sims(M11, seed=9)
        rng = random.Random(10)
        for _ in range(20):
            g = group.random_element(rng)
            assert group.element_from_base_images(group.base_images(g)) == g

    def test_points_under(self):
        """Test point images agree with the element rebuilt from its base images."""
        group = schreier_sims(M11, seed=13)
        rng = random.Random(14)
        points = list(range(11))
        for _ in range(20):
            g = group.random_element(rng)
            assert group.points_under(group.base_images(g), points).tolist() == list(g.image)
        with pytest.raises(ShapeError):
            group.points_under([0], points)
        swap = schreier_sims([cyc(3, "(1,2)")])
        with pytest.raises(NotInGroupError):
            swap.points_under([2], [0, 1, 2])

    def test_identity_among_generators(self):
        """Test identity generators are ignored when the chain is verified."""
        group = schreier_sims([Perm.identity(11)] + M11, seed=15)
        assert group.order() == 7920

    def test_trivial_group(self):
        """Test the group generated by the identity."""
        group = schreier_sims([Perm.identity(3)])
        assert group.order() == 1
        assert group.contains(Perm.identity(3))


class TestSubgroups:
    """Test normal closures, derived subgroups, centers and classes."""

    def test_derived_of_abelian(self):
        """Test the derived subgroup of a cyclic group is trivial."""
        group = schreier_sims([cyc(5, "(1,2,3,4,5)")])
        assert derived_subgroup(group).order() == 1

    def test_derived_of_s5(self):
        """Test S5' = A5 has index 2."""
        group = schreier_sims(S5, seed=11)
        derived = derived_subgroup(group, seed=11)
        assert group.order() // derived.order() == 2

    def test_normal_closure(self):
        """Test the normal closure of a 3-cycle in S4 is A4."""
        group = schreier_sims([cyc(4, "(1,2)"), cyc(4, "(1,2,3,4)")])
        assert normal_closure(group, [cyc(4, "(1,2,3)")]).order() == 12

    def test_normal_closure_seed_outside(self):
        """Test seeds outside the group are rejected."""
        group = schreier_sims(A5)
        with pytest.raises(NotInGroupError):
            normal_closure(group, [cyc(5, "(1,2)")])

    def test_center(self):
        """Test centers of an abelian group and of D8."""
        cyclic = schreier_sims([cyc(5, "(1,2,3,4,5)")])
        assert center_small(cyclic).order() == 5
        d8 = schreier_sims(D8)
        center = center_small(d8)
        assert center.order() == 2
        assert center.contains(cyc(4, "(1,3)(2,4)"))

    def test_enumerate_small(self):
        """Test enumeration lists each element once."""
        group = schreier_sims(S5)
        elements = enumerate_small(group)
        assert len(set(elements)) == 120

    def test_class_sizes(self):
        """Test class sizes in S5."""
        group = schreier_sims(S5, seed=12)
        assert class_orbit(group, Perm.identity(5)).size == 1
        assert class_orbit(group, cyc(5, "(1,2)")).size == 10
        assert class_orbit(group, cyc(5, "(1,2,3,4,5)")).size == 24
        assert class_orbit(group, cyc(5, "(1,2)(3,4)")).size == 15

    def test_m11_class_sizes(self):
        """Test class sizes in M11 for elements of order 11, 4 and 2."""
        group = schreier_sims(M11, seed=16)
        a, b = M11
        assert class_orbit(group, a).size == 720
        assert class_orbit(group, b).size == 990
        assert class_orbit(group, b * b).size == 165

    def test_class_cap(self):
        """Test the cap produces an overflow result."""
        group = schreier_sims(S5)
        result = class_orbit(group, cyc(5, "(1,2,3,4,5)"), cap=5)
        assert result.overflow

    def test_class_orbit_needs_member(self):
        """Test a representative outside the group."""
        group = schreier_sims(A5)
        with pytest.raises(NotInGroupError):
            class_orbit(group, cyc(5, "(1,2)"))
