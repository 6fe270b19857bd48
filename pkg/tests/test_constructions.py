"""Standard group tables and the semidirect counterexample family."""

import itertools

import pytest

from ngroups import (
    ParseError,
    SemidirectSpec,
    are_isomorphic,
    belongs,
    check_radical_product,
    check_residual_product,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    is_normal,
    nilpotent,
    p_group,
    radical,
    residual,
    semidirect_q_p2,
    standard_group,
    subnormal_depth,
    symmetric_group,
    theorem33_report,
)


class TestStandardTables:
    def test_cyclic(self):
        g = cyclic_group(5)
        assert g.order == 5
        assert g.labels == ("e", "r", "r^2", "r^3", "r^4")
        assert g.element_order(1) == 5
        assert belongs(p_group(5), g)

    def test_cyclic_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            cyclic_group(0)

    def test_symmetric(self):
        g = symmetric_group(3)
        assert g.order == 6
        assert g.labels[0] == "e"
        # composition is right-to-left: (0 1) after (1 2)
        orders = sorted(g.element_order(i) for i in range(6))
        assert orders == [1, 2, 2, 2, 3, 3]

    def test_symmetric_cap(self):
        from ngroups import CapExceededError

        with pytest.raises(CapExceededError):
            symmetric_group(6)  # 720 exceeds the table cap

    def test_dihedral(self):
        g = dihedral_group(4)
        assert g.order == 8
        orders = sorted(g.element_order(i) for i in range(8))
        assert orders == [1, 2, 2, 2, 2, 2, 4, 4]

    def test_dihedral_of_3_is_s3(self):
        assert are_isomorphic(dihedral_group(3), symmetric_group(3))

    def test_elementary_abelian(self):
        g = elementary_abelian_group(2, 3)
        assert g.order == 8
        assert all(g.element_order(i) in (1, 2) for i in range(8))
        assert belongs(p_group(2), g)

    def test_elementary_abelian_needs_prime(self):
        with pytest.raises(ValueError):
            elementary_abelian_group(4, 2)

    def test_dispatcher(self):
        assert standard_group("cyclic", 6).order == 6
        assert standard_group("dihedral", 4).name == "D4"
        assert standard_group("symmetric", 3).order == 6
        assert standard_group("elementary_abelian", 2, 2).order == 4

    def test_dispatcher_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            standard_group("frobnitz", 3)

    def test_dispatcher_rejects_wrong_arity(self):
        with pytest.raises(ValueError):
            standard_group("cyclic", 2, 3)


class TestSemidirectSpec:
    def test_parse_with_chosen_a(self):
        spec = SemidirectSpec.parse("2,3")
        assert (spec.p, spec.q, spec.a) == (2, 3, 2)

    def test_parse_explicit_a(self):
        spec = SemidirectSpec.parse("3,7,2")
        assert spec.a == 2
        assert pow(spec.a, spec.p, spec.q) == 1

    @pytest.mark.parametrize(
        "bad",
        ["", "2", "2,3,4,5", "x,y", "4,3", "2,4", "3,5", "3,7,1", "3,7,6", "2,3,5"],
    )
    def test_parse_rejects(self, bad):
        # non-primes, q not 1 mod p, a outside 1<a<q or a^p != 1 mod q
        with pytest.raises((ParseError, ValueError)):
            SemidirectSpec.parse(bad)

    def test_choose_picks_valid_a(self):
        for p, q in ((2, 3), (2, 5), (3, 7), (5, 11)):
            spec = SemidirectSpec.choose(p, q)
            assert 1 < spec.a < q
            assert pow(spec.a, p, q) == 1


@pytest.fixture(scope="module", params=[(2, 3), (2, 5), (3, 7)])
def data(request):
    p, q = request.param
    return semidirect_q_p2(SemidirectSpec.choose(p, q))


@pytest.fixture(scope="module")
def contrast_data():
    return semidirect_q_p2(SemidirectSpec.choose(2, 3))


class TestSemidirectStructure:
    def test_order(self, data):
        p, q = data.spec.p, data.spec.q
        assert data.group.order == p * p * q

    def test_normal_structure(self, data):
        g = data.group
        assert is_normal(g, data.N)
        assert is_normal(g, data.U)
        assert is_normal(g, data.V)
        assert len(data.N.members) == data.spec.q
        assert len(data.U.members) == data.spec.p * data.spec.q
        assert len(data.V.members) == data.spec.p * data.spec.q
        assert subnormal_depth(g, data.U) == 1
        assert subnormal_depth(g, data.V) == 1

    def test_h_is_elementary_abelian(self, data):
        child = data.H
        from ngroups import induced_group

        hgrp, _ = induced_group(child)
        assert are_isomorphic(hgrp, elementary_abelian_group(data.spec.p, 2))

    def test_x_conjugates_n_by_power_a(self, data):
        g = data.group
        p, q, a = data.spec.p, data.spec.q, data.spec.a
        n_gen = data.N.members[1]  # some nontrivial element of N
        conjugated = g.conjugate(data.x, n_gen)
        # x n x^-1 = n^a inside the cyclic N
        expected = n_gen
        for _ in range(a - 1):
            expected = g.mul(expected, n_gen)
        assert conjugated == expected

    def test_y_centralizes_n(self, data):
        g = data.group
        for n_elem in data.N.members:
            assert g.mul(data.y, n_elem) == g.mul(n_elem, data.y)

    def test_xy_behaves_like_x_on_n(self, data):
        g = data.group
        xy = g.mul(data.x, data.y)
        for n_elem in data.N.members:
            assert g.conjugate(xy, n_elem) == g.conjugate(data.x, n_elem)


class TestRadicalResidualContrast:
    """The heart of the counterexample: with G = UV, U and V normal, the
    residual factorizes over the product while the radical does not."""

    def test_radical_is_generated_by_y(self, contrast_data):
        data = contrast_data
        g = data.group
        cls = p_group(data.spec.p)
        rad = radical(g, cls)
        assert set(rad.members) == {g.identity, data.y}

    def test_factor_radicals_are_trivial(self, contrast_data):
        data = contrast_data
        from ngroups import induced_group

        cls = p_group(data.spec.p)
        for factor in (data.U, data.V):
            child, _ = induced_group(factor)
            assert radical(child, cls).members == (child.identity,)

    def test_radical_product_violated(self, contrast_data):
        data = contrast_data
        report = check_radical_product(
            data.group, data.U, data.V, p_group(data.spec.p)
        )
        assert report["status"] == "violated"
        assert report["witness"]

    def test_residual_product_holds(self, contrast_data):
        data = contrast_data
        report = check_residual_product(
            data.group, data.U, data.V, p_group(data.spec.p)
        )
        assert report["status"] == "holds"

    def test_residuals_compose_through_n(self, contrast_data):
        data = contrast_data
        g = data.group
        cls = p_group(data.spec.p)
        assert set(residual(g, cls).members) == set(data.N.members)


class TestTheorem33Report:
    @pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 7)])
    def test_holds_for_known_instances(self, p, q):
        report = theorem33_report(SemidirectSpec.choose(p, q))
        assert report["status"] == "holds"
        assert all(c["status"] == "holds" for c in report["checks"])
        assert report["order"] == p * p * q

    def test_statement_reading_is_reported(self):
        report = theorem33_report(SemidirectSpec.choose(2, 3))
        sr = report["statement_reading"]
        assert sr["V_order"] == 2
        assert sr["V_subnormal"] is False
        assert sr["UV_covers_G"] is True

    def test_group_is_not_nilpotent(self):
        data = semidirect_q_p2(SemidirectSpec.choose(2, 3))
        assert not belongs(nilpotent(), data.group)


class TestLabels:
    def test_semidirect_labels_read_as_words(self):
        data = semidirect_q_p2(SemidirectSpec.choose(2, 3))
        labels = data.group.labels
        assert labels[0] == "e"
        assert labels[data.x] == "x"
        assert labels[data.y] == "y"
        assert "n" in labels

    def test_all_labels_unique(self):
        for g in (
            cyclic_group(12),
            dihedral_group(6),
            symmetric_group(4),
            elementary_abelian_group(3, 2),
            semidirect_q_p2(SemidirectSpec.choose(3, 7)).group,
        ):
            assert len(set(g.labels)) == g.order


def test_every_standard_table_is_a_valid_group():
    from ngroups import CayleyGroup

    for g in (
        cyclic_group(7),
        dihedral_group(5),
        symmetric_group(4),
        elementary_abelian_group(5, 2),
    ):
        rebuilt = CayleyGroup.from_table(g.table, labels=g.labels)
        assert rebuilt.identity == g.identity
        assert rebuilt.inverses == g.inverses


def test_associativity_spot_check():
    g = semidirect_q_p2(SemidirectSpec.choose(3, 7)).group
    for a, b, c in itertools.islice(
        itertools.product(range(g.order), repeat=3), 0, 5000, 7
    ):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
