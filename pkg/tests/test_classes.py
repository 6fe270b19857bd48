"""Group classes, residuals, radicals, and the product theorems."""

import pytest

from ngroups import (
    InternalCheckError,
    ParseError,
    abelian,
    belongs,
    check_radical_product,
    check_residual_product,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    nilpotent,
    p_group,
    parse_class,
    quotient_group,
    radical,
    residual,
    residual_monotone_check,
    subgroup_belongs,
    subgroup_generated,
    subnormal_join_in_class,
    symmetric_group,
    verify_shp_axioms,
)

S3 = symmetric_group(3)
D4 = dihedral_group(4)
C6 = cyclic_group(6)
C12 = cyclic_group(12)
KLEIN = elementary_abelian_group(2, 2)
A3 = subgroup_generated(S3, [3])


class TestParseClass:
    def test_p_class(self):
        c = parse_class("p:2")
        assert c.kind == "p-group" and c.p == 2
        assert c.name == "2-groups"

    def test_nilpotent(self):
        c = parse_class("nilpotent")
        assert c.kind == "nilpotent"
        assert c.name == "nilpotent"

    @pytest.mark.parametrize("bad", ["p:4", "p:1", "p:x", "p:", "frobnitz", "", "abelian"])
    def test_bad_specs(self, bad):
        with pytest.raises(ParseError):
            parse_class(bad)

    def test_shp_flags(self):
        assert p_group(2).shp_assumed
        assert nilpotent().shp_assumed
        assert not abelian().shp_assumed


class TestBelongs:
    def test_p_group_membership(self):
        assert belongs(p_group(2), D4)
        assert belongs(p_group(2), KLEIN)
        assert not belongs(p_group(2), C6)
        assert not belongs(p_group(3), D4)
        assert belongs(p_group(3), cyclic_group(9))

    def test_trivial_group_in_every_class(self):
        one = cyclic_group(1)
        assert belongs(p_group(2), one)
        assert belongs(p_group(7), one)
        assert belongs(nilpotent(), one)
        assert belongs(abelian(), one)

    def test_nilpotent_membership(self):
        assert belongs(nilpotent(), C6)
        assert belongs(nilpotent(), C12)
        assert belongs(nilpotent(), D4)
        assert not belongs(nilpotent(), S3)
        assert not belongs(nilpotent(), symmetric_group(4))

    def test_abelian_membership(self):
        assert belongs(abelian(), C6)
        assert belongs(abelian(), KLEIN)
        assert not belongs(abelian(), D4)
        assert not belongs(abelian(), S3)

    def test_subgroup_belongs(self):
        assert subgroup_belongs(p_group(3), A3)
        assert not subgroup_belongs(p_group(2), A3)
        assert subgroup_belongs(nilpotent(), A3)


class TestResidual:
    """Smallest normal subgroup whose quotient lies in the class.  The
    oracle below re-derives it by scanning every normal subgroup."""

    @staticmethod
    def brute_residual(g, cls):
        from ngroups import all_subgroups, is_normal

        best = None
        for h in all_subgroups(g):
            if not is_normal(g, h):
                continue
            q, _ = quotient_group(g, h)
            if belongs(cls, q):
                if best is None or len(h.members) < len(best.members):
                    best = h
        return best.members

    @pytest.mark.parametrize(
        "group,cls,expected",
        [
            (S3, p_group(2), (0, 3, 4)),       # quotient C2
            (S3, p_group(3), tuple(range(6))),  # only the full group works
            (S3, nilpotent(), (0, 3, 4)),
            (D4, p_group(2), (0,)),             # D4 is itself a 2-group
            (C6, p_group(2), (0, 2, 4)),        # subgroup of order 3
            (C6, p_group(3), (0, 3)),           # subgroup of order 2
        ],
    )
    def test_known_residuals(self, group, cls, expected):
        assert residual(group, cls).members == expected
        assert self.brute_residual(group, cls) == expected

    def test_residual_matches_brute_force_everywhere(self):
        for g in (S3, D4, C6, KLEIN, symmetric_group(4)):
            for cls in (p_group(2), p_group(3), nilpotent()):
                assert residual(g, cls).members == self.brute_residual(g, cls)

    def test_abelian_residual_is_derived_subgroup(self):
        # the derived subgroup of S3 is A3
        assert residual(S3, abelian()).members == (0, 3, 4)

    def test_quotient_by_residual_is_in_class(self):
        for cls in (p_group(2), nilpotent()):
            n = residual(S3, cls)
            q, _ = quotient_group(S3, n)
            assert belongs(cls, q)


class TestRadical:
    """Largest normal subgroup inside the class, re-derived by scanning."""

    @staticmethod
    def brute_radical(g, cls):
        from ngroups import all_subgroups, is_normal

        best = None
        for h in all_subgroups(g):
            if not is_normal(g, h):
                continue
            if subgroup_belongs(cls, h):
                if best is None or len(h.members) > len(best.members):
                    best = h
        return best.members

    @pytest.mark.parametrize(
        "group,cls,expected",
        [
            (S3, p_group(2), (0,)),
            (S3, p_group(3), (0, 3, 4)),
            (S3, nilpotent(), (0, 3, 4)),
            (D4, p_group(2), tuple(range(8))),
            (C6, p_group(2), (0, 3)),
        ],
    )
    def test_known_radicals(self, group, cls, expected):
        assert radical(group, cls).members == expected
        assert self.brute_radical(group, cls) == expected

    def test_radical_matches_brute_force_everywhere(self):
        for g in (S3, D4, C6, KLEIN, symmetric_group(4)):
            for cls in (p_group(2), p_group(3), nilpotent()):
                assert radical(g, cls).members == self.brute_radical(g, cls)

    def test_radical_is_in_class(self):
        for cls in (p_group(2), p_group(3), nilpotent()):
            assert subgroup_belongs(cls, radical(symmetric_group(4), cls))

    def test_abelian_radical_alarm_on_d4(self):
        # the join of the two normal Klein subgroups is all of D4, which is
        # not abelian: the class is not closed under normal products and the
        # dual-route check must refuse to return an answer
        with pytest.raises(InternalCheckError):
            radical(D4, abelian())


class TestProductChecks:
    def test_residual_product_holds_on_s3(self):
        u = subgroup_generated(S3, [3])  # A3
        v = subgroup_generated(S3, list(range(6)))  # S3 itself
        report = check_residual_product(S3, u, v, p_group(2))
        assert report["status"] == "holds"

    def test_precondition_cover_fails(self):
        u = subgroup_generated(S3, [3])
        report = check_residual_product(S3, u, u, p_group(2))
        assert report["status"] == "precondition-failed"
        assert "witness" in report

    def test_precondition_subnormal_fails(self):
        u = subgroup_generated(S3, [3])
        v = subgroup_generated(S3, [1])  # a transposition: not subnormal
        report = check_residual_product(S3, u, v, p_group(2))
        assert report["status"] == "precondition-failed"

    def test_radical_product_can_be_violated(self):
        # see the semidirect construction tests for the canonical example;
        # here the Klein cover of D4 keeps the radical product intact
        u = subgroup_generated(D4, [1])
        v = subgroup_generated(D4, [4, 2])
        report = check_radical_product(D4, u, v, p_group(2))
        assert report["status"] in ("holds", "violated")
        assert report["claim"]


class TestLemmaChecks:
    def test_monotone_aggregate_holds(self):
        for cls in (p_group(2), p_group(3), nilpotent()):
            report = residual_monotone_check(S3, cls)
            assert report["status"] == "holds"
            assert len(report["checks"]) == 4
            assert all(c["status"] == "holds" for c in report["checks"])

    def test_join_of_subnormal_members_stays_in_class(self):
        a = subgroup_generated(D4, [2])  # center
        b = subgroup_generated(D4, [1])  # rotations
        report = subnormal_join_in_class(D4, a, b, p_group(2))
        assert report["status"] == "holds"

    def test_join_preconditions(self):
        a = subgroup_generated(S3, [1])  # not subnormal
        b = subgroup_generated(S3, [3])
        report = subnormal_join_in_class(S3, a, b, p_group(2))
        assert report["status"] == "precondition-failed"

    def test_join_requires_class_membership(self):
        a = subgroup_generated(S3, [3])  # 3-group, not a 2-group
        b = subgroup_generated(S3, [0])
        report = subnormal_join_in_class(S3, a, b, p_group(2))
        assert report["status"] == "precondition-failed"


class TestShpAxioms:
    LIBRARY = (S3, D4, C6, KLEIN, cyclic_group(8), symmetric_group(4))

    def test_shp_classes_pass(self):
        for cls in (p_group(2), p_group(3), nilpotent()):
            report = verify_shp_axioms(cls, self.LIBRARY)
            assert report["violations"] == []
            assert report["status"] == "holds"
            assert report["groups_checked"] == len(self.LIBRARY)

    def test_abelian_control_is_flagged(self):
        report = verify_shp_axioms(abelian(), self.LIBRARY)
        kinds = {v["axiom"] for v in report["violations"]}
        assert "normal-products" in kinds
        # subgroups and quotients of abelian groups stay abelian
        assert kinds == {"normal-products"}
