"""Tests for symmetric multifunctors, multinatural transformations and the 2-category laws."""

import pytest

from multicoh.core.perm import identity, reversal
from multicoh.functors.symmetric import (
    MultiFunctor,
    MultiNatTrans,
    associator,
    check_multifunctor,
    check_multinat,
    compose_multifunctor,
    horiz_compose,
    identity_multifunctor,
    identity_multinat,
    multifunctor_equal,
    multinat_equal,
    product_multifunctor,
    projection,
    reversal_automorphism,
    vert_compose,
    whisker_left,
    whisker_right,
)
from multicoh.multicat.base import Signature
from multicoh.multicat.checks import check_multicat
from multicoh.multicat.construct import (
    STAR,
    SetMulticategory,
    barratt_eccles,
    cyclic_monoid,
    discrete_multicat,
    end_of_monoid,
    terminal_operad,
)
from multicoh.utils.exceptions import BoundaryMismatch


K = 5


class CyclicGroupUnary(SetMulticategory):
    """Z/k as a one-object multicategory with unary operations only."""

    name = f"Z/{K} unary"

    @property
    def objects(self):
        return (STAR,)

    def hom_set(self, sig):
        return tuple(range(K)) if sig.arity == 1 else ()

    def unit(self, a):
        return 0

    def compose(self, outer, inners, f, gs):
        return (f + sum(gs)) % K

    def act(self, sig, sigma, f):
        return f


@pytest.fixture(scope="module")
def group():
    return discrete_multicat(CyclicGroupUnary(2))


def scale(m, c: int) -> MultiFunctor:
    return MultiFunctor(m, m, lambda a: a, lambda sig, x: (c * x) % K,
                        lambda sig, mor: ((c * mor[0]) % K, (c * mor[1]) % K), name=f"x{c}")


def shift(f: MultiFunctor, c: int) -> MultiNatTrans:
    return MultiNatTrans(f, f, {STAR: c}, name=f"+{c}")


class TestMultifunctors:
    def test_group_is_a_multicategory(self, group):
        assert check_multicat(group).passed

    @pytest.mark.parametrize("c", [1, 2, 3, 4])
    def test_scaling_is_symmetric(self, group, c):
        assert check_multifunctor(scale(group, c)).passed

    def test_identity(self, be3):
        report = check_multifunctor(identity_multifunctor(be3))
        assert report.passed
        assert report.checked["multifunctor.symmetry"] > 0

    def test_reversal_is_an_involution(self):
        rev = reversal_automorphism(3)
        assert check_multifunctor(rev).passed
        assert multifunctor_equal(compose_multifunctor(rev, rev),
                                  identity_multifunctor(barratt_eccles(3)))
        assert rev.map_cell(Signature((STAR,) * 3, STAR), identity(3)) == reversal(3)

    def test_constant_identity_is_not_symmetric(self, be2):
        f = MultiFunctor(be2, be2, lambda a: a, lambda sig, x: identity(sig.arity),
                         lambda sig, mor: (identity(sig.arity), identity(sig.arity)), name="c")
        report = check_multifunctor(f)
        assert report.failures_for("multifunctor.symmetry")
        assert not report.failures_for("multifunctor.composition")
        assert not report.failures_for("multifunctor.units")

    def test_wrong_unit_image(self, group):
        f = MultiFunctor(group, group, lambda a: a, lambda sig, x: (x + 1) % K,
                         lambda sig, mor: ((mor[0] + 1) % K, (mor[1] + 1) % K), name="+1")
        report = check_multifunctor(f)
        assert report.first_witness("multifunctor.units") == STAR

    def test_object_outside_target(self, group):
        f = MultiFunctor(group, group, lambda a: "?", lambda sig, x: x, lambda sig, mor: mor)
        report = check_multifunctor(f)
        assert report.failures_for("multifunctor.objects")
        assert report.axioms() == ["multifunctor.boundary", "multifunctor.objects"]

    def test_compose_needs_matching_boundary(self, ass3):
        with pytest.raises(BoundaryMismatch):
            compose_multifunctor(reversal_automorphism(3), identity_multifunctor(ass3))

    def test_equality_needs_parallel_functors(self, ass3, be3):
        with pytest.raises(BoundaryMismatch):
            multifunctor_equal(identity_multifunctor(ass3), identity_multifunctor(be3))

    def test_tabulate_is_equal(self):
        rev = reversal_automorphism(2)
        assert multifunctor_equal(rev.tabulate(), rev)
        assert check_multifunctor(rev.tabulate()).passed


class TestProducts:
    def test_product_functor(self):
        f = product_multifunctor(identity_multifunctor(terminal_operad(2)),
                                 reversal_automorphism(2))
        assert check_multifunctor(f).passed

    def test_projections(self):
        m, n = end_of_monoid(cyclic_monoid(2), 2), barratt_eccles(2)
        for side in (0, 1):
            assert check_multifunctor(projection(m, n, side)).passed

    def test_associator(self):
        a = terminal_operad(2)
        b = end_of_monoid(cyclic_monoid(2), 2)
        c = barratt_eccles(2)
        assert check_multifunctor(associator(a, b, c)).passed


class TestNaturalTransformations:
    def test_shifts_are_natural(self, group):
        for c in range(K):
            assert check_multinat(shift(scale(group, 2), c)).passed

    def test_identity_nat(self, be3):
        assert check_multinat(identity_multinat(reversal_automorphism(3))).passed

    def test_non_natural_component(self, group):
        t = MultiNatTrans(identity_multifunctor(group), scale(group, 2), {STAR: 1})
        report = check_multinat(t)
        assert report.failures_for("multinat.cells")
        assert not report.failures_for("multinat.endpoints")

    def test_component_outside_hom(self, group):
        t = MultiNatTrans(identity_multifunctor(group), identity_multifunctor(group), {STAR: K})
        report = check_multinat(t)
        assert report.first_witness("multinat.endpoints") == STAR

    def test_non_parallel(self, group):
        t = MultiNatTrans(identity_multifunctor(group),
                          identity_multifunctor(barratt_eccles(2)),
                          {STAR: 0})
        assert check_multinat(t).failures_for("multinat.boundary")


class TestTwoCategoryLaws:
    def test_vertical_units(self, group):
        f = scale(group, 3)
        t = shift(f, 2)
        one = identity_multinat(f)
        assert multinat_equal(vert_compose(one, t), t)
        assert multinat_equal(vert_compose(t, one), t)

    def test_vertical_associativity(self, group):
        f = scale(group, 3)
        a, b, c = shift(f, 1), shift(f, 2), shift(f, 4)
        assert multinat_equal(vert_compose(vert_compose(c, b), a),
                              vert_compose(c, vert_compose(b, a)))
        assert vert_compose(c, b).raw_component(STAR) == 1

    def test_vertical_composite_is_natural(self, group):
        f = scale(group, 2)
        assert check_multinat(vert_compose(shift(f, 3), shift(f, 4))).passed

    def test_vertical_boundary(self, group):
        with pytest.raises(BoundaryMismatch):
            vert_compose(shift(scale(group, 2), 1), shift(scale(group, 3), 1))

    def test_horizontal_component(self, group):
        t = shift(scale(group, 1), 3)
        z = shift(scale(group, 2), 1)
        h = horiz_compose(z, t)
        assert h.raw_component(STAR) == (1 + 2 * 3) % K
        assert check_multinat(h).passed

    def test_horizontal_units(self, group):
        f, g = scale(group, 2), scale(group, 3)
        t = shift(f, 4)
        h = horiz_compose(identity_multinat(identity_multifunctor(group)), t)
        assert [h.raw_component(a) for a in group.objects] == [4]
        assert horiz_compose(t, identity_multinat(g)).raw_component(STAR) == 4

    def test_horizontal_associativity(self, group):
        a, b, c = shift(scale(group, 2), 1), shift(scale(group, 3), 2), shift(scale(group, 4), 3)
        lhs = horiz_compose(horiz_compose(c, b), a)
        rhs = horiz_compose(c, horiz_compose(b, a))
        assert [lhs.raw_component(STAR)] == [rhs.raw_component(STAR)]

    def test_interchange(self, group):
        f, g = scale(group, 2), scale(group, 3)
        t1, t2 = shift(f, 1), shift(f, 4)
        z1, z2 = shift(g, 2), shift(g, 3)
        lhs = horiz_compose(vert_compose(z2, z1), vert_compose(t2, t1))
        rhs = vert_compose(horiz_compose(z2, t2), horiz_compose(z1, t1))
        assert multinat_equal(lhs, rhs)

    def test_whiskers_are_horizontal_composites(self, group):
        f, g = scale(group, 2), scale(group, 3)
        t = shift(f, 4)
        assert multinat_equal(whisker_left(g, t), horiz_compose(identity_multinat(g), t))
        assert multinat_equal(whisker_right(t, g), horiz_compose(t, identity_multinat(g)))
        assert whisker_left(g, t).raw_component(STAR) == (3 * 4) % K
