"""Tests for the example builders and products."""

import pytest

from multicoh.core.fincat import check_category
from multicoh.core.perm import Perm, compose, identity
from multicoh.multicat.base import (
    Signature,
    gamma_eval,
    multicat_equal,
    multicat_summary,
)
from multicoh.multicat.checks import check_multicat
from multicoh.multicat.construct import (
    STAR,
    AssocSetOperad,
    FinCommMonoid,
    SetMulticategory,
    assoc_operad,
    assoc_set_operad,
    barratt_eccles,
    chaotic_E,
    check_comm_monoid,
    check_e_preserves_products,
    comm_set_operad,
    cyclic_monoid,
    end_of_monoid,
    is_barratt_eccles,
    monoid_end_set,
    product_multicat,
    terminal_operad,
    unary_monoid,
)
from multicoh.utils.exceptions import (
    ArityBoundMismatch,
    InvalidInput,
    InvalidSetMulticat,
    NotCommutative,
)


def operad_sig(n: int) -> Signature:
    return Signature((STAR,) * n, STAR)


class TrivialActionAssoc(AssocSetOperad):
    """Ass with the symmetric action replaced by the trivial one."""

    name = "Ass/trivial"

    def act(self, sig, sigma, f):
        return f


def left_zero_monoid() -> FinCommMonoid:
    """{e, a, b} with e neutral and x * y = x otherwise."""
    carrier = ("e", "a", "b")
    table = tuple(
        ((x, y), y if x == "e" else x) for x in carrier for y in carrier
    )
    return FinCommMonoid("L", carrier, table, "e")


class TestMonoids:
    def test_cyclic_sum(self):
        z4 = cyclic_monoid(4)
        assert z4.sum(["3", "2", "1"]) == "2"
        assert z4.sum([]) == "0"

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_cyclic_is_commutative_monoid(self, k):
        assert check_comm_monoid(cyclic_monoid(k)).passed

    def test_non_positive_order(self):
        with pytest.raises(InvalidInput):
            cyclic_monoid(0)

    def test_left_zero_monoid_is_not_commutative(self):
        report = check_comm_monoid(left_zero_monoid())
        assert report.failures_for("monoid.commutativity")
        assert not report.failures_for("monoid.associativity")

    def test_end_of_non_commutative_monoid(self):
        with pytest.raises(NotCommutative):
            end_of_monoid(left_zero_monoid(), 2)


class TestBuilders:
    def test_assoc_hom_counts(self, ass3):
        hom = ass3.hom(operad_sig(3))
        assert len(hom.objects) == 6
        assert len(hom.morphisms) == 6

    @pytest.mark.parametrize("arity,objects", [
        (2, 2),
        pytest.param(3, 6, marks=pytest.mark.slow),
    ])
    def test_chaotic_lift_of_assoc(self, arity, objects):
        e = chaotic_E(assoc_set_operad(arity))
        hom = e.hom(operad_sig(arity))
        assert len(hom.objects) == objects
        assert len(hom.morphisms) == objects * objects
        assert check_category(hom).passed
        assert check_multicat(e).passed

    def test_chaotic_lift_of_comm_is_terminal(self):
        assert multicat_equal(chaotic_E(comm_set_operad(3)), terminal_operad(3))

    def test_barratt_eccles_is_recognized(self, be3, ass3):
        assert is_barratt_eccles(be3)
        assert not is_barratt_eccles(ass3)
        assert multicat_equal(chaotic_E(assoc_set_operad(3)), be3)

    def test_builders_are_cached(self):
        assert assoc_operad(3) is assoc_operad(3)
        assert barratt_eccles(2) is not barratt_eccles(3)

    def test_chaotic_lift_rejects_invalid_set_multicat(self):
        with pytest.raises(InvalidSetMulticat):
            chaotic_E(TrivialActionAssoc(3))

    def test_barratt_eccles_2cells(self, be3):
        sig = operad_sig(2)
        swap = Perm((2, 1))
        hom = be3.hom(sig)
        assert hom.hom(identity(2), swap) == ((identity(2), swap),)
        assert be3.act(sig, swap, (identity(2), swap), two_cell=True) == (swap, identity(2))

    def test_units_are_neutral(self, be3):
        f = Perm((2, 3, 1))
        units = [identity(1)] * 3
        assert gamma_eval(be3, operad_sig(3), f, [operad_sig(1)] * 3, units) == f
        assert gamma_eval(be3, operad_sig(1), identity(1), [operad_sig(3)], [f]) == f

    def test_action_by_identity_is_trivial(self, ass3):
        f = Perm((3, 1, 2))
        assert ass3.act(operad_sig(3), identity(3), f) == f
        assert ass3.act(operad_sig(3), Perm((2, 1, 3)), f) == compose(f, Perm((2, 1, 3)))


class TestMonoidEndomorphisms:
    def test_homs(self, z3):
        assert not z3.hom(Signature(("1", "2"), "0")).is_empty()
        assert z3.hom(Signature(("1", "1"), "0")).is_empty()
        assert not z3.hom(Signature((), "0")).is_empty()
        assert z3.hom(Signature((), "1")).is_empty()

    def test_counts(self, z3):
        summary = multicat_summary(z3)
        assert [summary[n]["homs"] for n in range(4)] == [1, 3, 9, 27]
        assert summary[2]["two_cells"] == 9

    def test_nonempty_signatures_agree_with_search(self):
        s = monoid_end_set(cyclic_monoid(3), 2)
        searched = SetMulticategory.nonempty_signatures(s)
        assert sorted(s.nonempty_signatures(), key=Signature.sort_key) == \
            sorted(searched, key=Signature.sort_key)


class TestUnaryMonoid:
    def test_passes_and_is_cached(self, group5):
        report = check_multicat(group5)
        assert report.passed, report.render_text()
        assert group5 is unary_monoid(cyclic_monoid(5), 2)

    def test_only_unary_cells(self, group5):
        assert group5.hom(operad_sig(1)).objects == cyclic_monoid(5).carrier
        assert group5.hom(operad_sig(2)).is_empty()
        assert group5.hom(operad_sig(0)).is_empty()

    def test_composition_adds(self, group5):
        sig = operad_sig(1)
        assert gamma_eval(group5, sig, "3", [sig], ["4"]) == "2"

    def test_rejects_non_commutative_tables(self):
        with pytest.raises(NotCommutative):
            unary_monoid(left_zero_monoid(), 2)


class TestProducts:
    def test_product_passes(self, comm3, z2):
        m = product_multicat(comm3, z2)
        assert check_multicat(m).passed

    def test_product_with_barratt_eccles(self):
        m = product_multicat(terminal_operad(2), barratt_eccles(2))
        report = check_multicat(m)
        assert report.passed, report.render_text()
        assert m.unit((STAR, STAR)) == (STAR, identity(1))

    def test_product_is_cached(self, comm3, be3):
        assert product_multicat(comm3, be3) is product_multicat(comm3, be3)

    def test_bounds_must_agree(self):
        with pytest.raises(ArityBoundMismatch):
            product_multicat(terminal_operad(2), assoc_operad(3))

    @pytest.mark.parametrize("pair", [
        (comm_set_operad, assoc_set_operad),
        (assoc_set_operad, assoc_set_operad),
    ])
    def test_e_preserves_products(self, pair):
        left, right = pair
        report = check_e_preserves_products(left(2), right(2))
        assert report.passed, report.render_text()
        assert report.checked["construct.e_products"] > 0


@pytest.mark.slow
class TestArityFour:
    @pytest.mark.parametrize("build", [
        lambda: terminal_operad(4),
        lambda: assoc_operad(4),
        lambda: barratt_eccles(4),
        lambda: end_of_monoid(cyclic_monoid(2), 4),
        lambda: end_of_monoid(cyclic_monoid(3), 4),
        lambda: end_of_monoid(cyclic_monoid(4), 4),
    ])
    def test_builder_passes(self, build):
        report = check_multicat(build(), max_workers=4)
        assert report.passed, report.render_text()

    def test_products_pass(self):
        report = check_multicat(product_multicat(terminal_operad(4), barratt_eccles(4)),
                                max_workers=4)
        assert report.passed
