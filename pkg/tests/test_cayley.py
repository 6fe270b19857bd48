"""Cayley tables, subgroups, quotients, and isomorphism machinery."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngroups import (
    CapExceededError,
    CayleyGroup,
    ParseError,
    Subgroup,
    all_subgroups,
    are_isomorphic,
    automorphism_group,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    from_transgroup,
    group_dump,
    group_load,
    induced_group,
    is_characteristic,
    is_normal,
    ng_witness,
    normal_closure,
    product_set,
    quotient_group,
    subgroup_generated,
    subnormal_depth,
    symmetric_group,
)

S3 = symmetric_group(3)
S4 = symmetric_group(4)
D4 = dihedral_group(4)
C4 = cyclic_group(4)
C6 = cyclic_group(6)
KLEIN = elementary_abelian_group(2, 2)

# S3 element indices, from the lexicographic permutation order:
# 0=e, 1=(1 2), 2=(0 1), 3=(0 1 2), 4=(0 2 1), 5=(0 2)
A3 = subgroup_generated(S3, [3])
TRANSPOSITION = subgroup_generated(S3, [1])


def groups_equal(a: CayleyGroup, b: CayleyGroup) -> bool:
    return a.table == b.table


class TestFromTable:
    def test_accepts_valid_table(self):
        g = CayleyGroup.from_table([[0, 1], [1, 0]])
        assert g.identity == 0
        assert g.inverses == (0, 1)

    def test_rejects_non_latin_row(self):
        with pytest.raises(ValueError):
            CayleyGroup.from_table([[0, 0], [1, 0]])

    def test_rejects_non_associative(self):
        # a Latin square that is not a group table (order 5 loop)
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError):
            CayleyGroup.from_table(table)

    def test_rejects_ragged_table(self):
        with pytest.raises(ValueError):
            CayleyGroup.from_table([[0, 1], [1]])

    def test_cap(self):
        m = 130
        table = [[(i + j) % m for j in range(m)] for i in range(m)]
        with pytest.raises(CapExceededError):
            CayleyGroup.from_table(table)
        m = 128
        table = [[(i + j) % m for j in range(m)] for i in range(m)]
        assert CayleyGroup.from_table(table).order == m

    def test_label_count_must_match(self):
        with pytest.raises(ValueError):
            CayleyGroup.from_table([[0, 1], [1, 0]], labels=["e"])


class TestElementOps:
    def test_mul_inv(self):
        r = 1  # rotation in C4
        assert C4.mul(r, r) == 2
        assert C4.inv(1) == 3
        assert C4.mul(1, C4.inv(1)) == C4.identity

    def test_element_order(self):
        assert C6.element_order(1) == 6
        assert C6.element_order(2) == 3
        assert C6.element_order(3) == 2
        assert C6.element_order(0) == 1

    def test_conjugate(self):
        # conjugating a transposition by a 3-cycle gives another transposition
        c = S3.conjugate(3, 1)
        assert S3.element_order(c) == 2
        assert c != 1


class TestFromTransgroup:
    def test_round_trip_structure(self):
        group = ng_witness(4)  # order 6, isomorphic to S3
        cg = from_transgroup(group)
        assert len(cg.table) == 6
        assert are_isomorphic(cg, S3)

    def test_labels_are_map_literals(self):
        cg = from_transgroup(ng_witness(3))
        assert set(cg.labels) == {"[0,0,2]", "[2,2,0]"}


class TestSubgroups:
    def test_subgroup_validation(self):
        with pytest.raises(ValueError):
            Subgroup(S3, (1, 2))  # no identity
        with pytest.raises(ValueError):
            Subgroup(S3, (0, 3))  # not closed: (0 1 2)^2 = (0 2 1) missing

    def test_membership_closure(self):
        assert A3.members == (0, 3, 4)
        assert subgroup_generated(S3, [4]).members == (0, 3, 4)

    @pytest.mark.parametrize(
        "group,count",
        [(S3, 6), (C4, 3), (D4, 10), (KLEIN, 5), (S4, 30), (C6, 4)],
    )
    def test_subgroup_census(self, group, count):
        assert len(all_subgroups(group)) == count

    def test_subgroup_cap(self):
        with pytest.raises(CapExceededError):
            all_subgroups(symmetric_group(4), cap=10)

    def test_lagrange(self):
        for h in all_subgroups(S4):
            assert S4.order % len(h.members) == 0

    @given(st.sets(st.integers(0, 23), min_size=1, max_size=3))
    @settings(max_examples=40)
    def test_generated_subgroup_is_closed(self, seeds):
        h = subgroup_generated(S4, seeds)
        members = set(h.members)
        for a, b in itertools.product(h.members, repeat=2):
            assert S4.mul(a, b) in members
        assert all(S4.inv(a) in members for a in h.members)


class TestNormality:
    def test_a3_is_normal(self):
        assert is_normal(S3, A3)

    def test_transposition_not_normal(self):
        assert not is_normal(S3, TRANSPOSITION)

    def test_normal_closure_of_transposition_is_everything(self):
        assert normal_closure(S3, TRANSPOSITION).members == tuple(range(6))

    def test_normal_closure_fixes_normal_subgroup(self):
        assert normal_closure(S3, A3).members == A3.members

    @pytest.mark.parametrize(
        "group,seeds,depth",
        [
            (S3, [3], 1),            # A3 is normal
            (S3, [0], 1),            # trivial subgroup is normal
            (S3, [1], None),         # a transposition is not subnormal in S3
            (D4, [1], 1),            # rotation subgroup, index 2
        ],
    )
    def test_subnormal_depth(self, group, seeds, depth):
        assert subnormal_depth(group, subgroup_generated(group, seeds)) == depth

    def test_depth_two_in_d4(self):
        # a reflection generates C2, normal in the Klein subgroup but not in D4
        reflections = [
            i for i in range(8) if D4.element_order(i) == 2 and not is_normal(D4, subgroup_generated(D4, [i]))
        ]
        assert reflections
        h = subgroup_generated(D4, [reflections[0]])
        assert subnormal_depth(D4, h) == 2


class TestQuotient:
    def test_s3_mod_a3(self):
        q, proj = quotient_group(S3, A3)
        assert len(q.table) == 2
        assert proj[0] == q.identity
        assert proj[3] == q.identity  # A3 members collapse to identity
        assert proj[1] != q.identity

    def test_s4_mod_klein_is_s3(self):
        # indices 7 and 16 are double transpositions; together they give V4
        v4 = subgroup_generated(S4, [7, 16])
        assert len(v4.members) == 4
        assert is_normal(S4, v4)
        q, proj = quotient_group(S4, v4)
        assert are_isomorphic(q, S3)
        for a, b in itertools.product(range(24), repeat=2):
            assert proj[S4.mul(a, b)] == q.mul(proj[a], proj[b])

    def test_d4_mod_center_is_klein(self):
        center = subgroup_generated(D4, [2])  # r^2 generates the center
        assert is_normal(D4, center)
        q, _ = quotient_group(D4, center)
        assert are_isomorphic(q, KLEIN)

    def test_quotient_requires_normal(self):
        with pytest.raises(ValueError):
            quotient_group(S3, TRANSPOSITION)


class TestProductSet:
    def test_normal_times_subgroup_is_subgroup(self):
        members, is_sub = product_set(S3, A3, TRANSPOSITION)
        assert members == tuple(range(6))
        assert is_sub

    def test_two_transpositions_not_a_subgroup(self):
        u = subgroup_generated(S3, [1])
        v = subgroup_generated(S3, [2])
        members, is_sub = product_set(S3, u, v)
        assert len(members) == 4
        assert not is_sub


class TestInducedGroup:
    def test_child_structure(self):
        child, to_parent = induced_group(A3)
        assert len(child.table) == 3
        assert are_isomorphic(child, cyclic_group(3))
        assert [to_parent[i] for i in range(3)] == list(A3.members)

    def test_induced_group_is_cached(self):
        a, _ = induced_group(A3)
        b, _ = induced_group(A3)
        assert a is b


class TestAutomorphisms:
    @pytest.mark.parametrize(
        "group,count",
        [
            (cyclic_group(1), 1),
            (cyclic_group(2), 1),
            (cyclic_group(3), 2),
            (cyclic_group(4), 2),
            (C6, 2),
            (KLEIN, 6),
            (S3, 6),
            (D4, 8),
        ],
    )
    def test_automorphism_counts(self, group, count):
        assert len(automorphism_group(group)) == count

    def test_automorphisms_are_homomorphisms(self):
        for phi in automorphism_group(S3):
            for a, b in itertools.product(range(6), repeat=2):
                assert phi[S3.mul(a, b)] == S3.mul(phi[a], phi[b])

    def test_characteristic_subgroups(self):
        assert is_characteristic(S3, A3)
        center = subgroup_generated(D4, [2])
        assert is_characteristic(D4, center)
        # the rotation C4 in D4 is characteristic; the Klein subgroups are not
        rot = subgroup_generated(D4, [1])
        assert is_characteristic(D4, rot)

    def test_non_characteristic_example(self):
        # in the Klein group every nontrivial C2 moves under automorphisms
        h = subgroup_generated(KLEIN, [1])
        assert is_normal(KLEIN, h)
        assert not is_characteristic(KLEIN, h)


class TestIsomorphism:
    def test_s3_is_d3(self):
        assert are_isomorphic(S3, dihedral_group(3))

    def test_c4_not_klein(self):
        assert not are_isomorphic(C4, KLEIN)

    def test_c6_not_s3(self):
        assert not are_isomorphic(C6, S3)

    def test_different_orders(self):
        assert not are_isomorphic(C4, C6)


class TestDumpLoad:
    def test_round_trip(self):
        for g in (S3, C4, D4):
            loaded = group_load(group_dump(g))
            assert loaded.table == g.table
            assert loaded.labels == g.labels

    def test_load_rejects_bad_shape(self):
        with pytest.raises(ParseError):
            group_load({"order": 2})
        with pytest.raises(ParseError):
            group_load({"order": 2, "labels": ["e", "a"], "table": [[0, 1]]})
        with pytest.raises(ParseError):
            group_load([1, 2, 3])

    def test_load_rejects_non_group_table(self):
        with pytest.raises(ValueError):
            group_load({"order": 2, "labels": ["e", "a"], "table": [[0, 0], [1, 1]]})
