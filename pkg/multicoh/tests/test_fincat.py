"""Tests for finite categories, functors and natural transformations."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicoh.core.fincat import (
    EMPTY,
    FinCat,
    FinFunctor,
    FinNatTrans,
    category_equal,
    chaotic,
    check_category,
    check_functor,
    check_nattrans,
    compose_functor,
    discrete,
    functor_equal,
    identity_functor,
    inverse_of,
    is_natural_iso,
    product_cat,
    terminal,
)
from multicoh.core.perm import all_perms
from multicoh.utils.exceptions import BoundaryMismatch, EndpointError


def arrow_category():
    """The walking arrow 0 -> 1 as a table."""
    return FinCat(
        objects=["0", "1"],
        morphisms={"id0": ("0", "0"), "id1": ("1", "1"), "a": ("0", "1")},
        identities={"0": "id0", "1": "id1"},
        composition={
            ("id0", "id0"): "id0",
            ("id1", "id1"): "id1",
            ("a", "id0"): "a",
            ("id1", "a"): "a",
        },
    )


def test_terminal_passes():
    report = check_category(terminal())
    assert report.passed
    assert len(terminal().morphisms) == 1


def test_chaotic_counts():
    assert category_equal(chaotic(["*"]), terminal())
    assert len(chaotic(all_perms(2)).morphisms) == 4
    sigma3 = chaotic(all_perms(3))
    assert len(sigma3.objects) == 6
    assert len(sigma3.morphisms) == 36
    assert check_category(sigma3).passed


def test_chaotic_morphisms_are_invertible():
    c = chaotic(["a", "b", "c"])
    assert all(inverse_of(c, m) == (m[1], m[0]) for m in c.morphisms)


def test_table_category_passes():
    assert check_category(arrow_category()).passed


def parallel_arrows():
    """Two parallel arrows a, b: 0 -> 1."""
    c = arrow_category()
    c.endpoints["b"] = ("0", "1")
    c.composition[("b", "id0")] = "b"
    c.composition[("id1", "b")] = "b"
    return c


def test_corrupted_composite_is_reported_once():
    c = parallel_arrows()
    assert check_category(c).passed
    c.composition[("id1", "a")] = "b"
    report = check_category(c)
    assert len(report.violations) == 1
    assert report.violations[0].axiom == "category.identity"
    assert report.violations[0].witness == "a"


def test_composite_with_wrong_endpoints_is_reported_once():
    c = arrow_category()
    c.composition[("a", "id0")] = "id1"
    report = check_category(c)
    assert len(report.violations) == 1
    assert report.violations[0].axiom == "category.composition"


def test_wrong_identity_composite_is_reported():
    c = FinCat(
        objects=["0"],
        morphisms={"id": ("0", "0"), "e": ("0", "0")},
        identities={"0": "id"},
        composition={("id", "id"): "id", ("e", "id"): "id", ("id", "e"): "e", ("e", "e"): "e"},
    )
    report = check_category(c)
    assert "category.identity" in report.failed_axioms()


def test_missing_composite_is_reported():
    c = arrow_category()
    del c.composition[("id1", "a")]
    assert "category.composition" in check_category(c).failed_axioms()


def test_empty_product_is_terminal():
    p = product_cat([])
    assert p.objects == ((),)
    assert p.morphisms == ((),)
    assert check_category(p).passed


def test_unary_product_is_copy():
    c = arrow_category()
    p = product_cat([c])
    assert len(p.objects) == 2
    assert len(p.morphisms) == 3
    assert check_category(p).passed


@given(st.integers(0, 3), st.integers(0, 3))
def test_product_counts(m, n):
    a, b = chaotic(range(m)), discrete(range(n))
    p = product_cat([a, b])
    assert len(p.morphisms) == len(a.morphisms) * len(b.morphisms)
    assert len(p.objects) == m * n


def test_product_passes():
    assert check_category(product_cat([arrow_category(), chaotic("xy")])).passed


def test_empty_category():
    assert EMPTY.is_empty()
    assert check_category(EMPTY).passed


class TestFunctors:
    def collapse(self):
        """The functor walking-arrow -> terminal."""
        return FinFunctor(arrow_category(), terminal(), lambda x: "*", lambda m: ("*", "*"))

    def test_identity_functor(self):
        c = arrow_category()
        assert check_functor(identity_functor(c)).passed

    def test_compose_with_identity(self):
        f = self.collapse()
        composite = compose_functor(identity_functor(f.target), f)
        assert functor_equal(composite, f)
        assert check_functor(composite).passed

    def test_functor_equal_needs_parallel_functors(self):
        with pytest.raises(BoundaryMismatch):
            functor_equal(self.collapse(), identity_functor(arrow_category()))

    def test_bad_functor(self):
        c = arrow_category()
        swap = FinFunctor(c, c, {"0": "1", "1": "0"}, {"id0": "id1", "id1": "id0", "a": "a"})
        report = check_functor(swap)
        assert "functor.endpoints" in report.failed_axioms()

    def test_tabulate_roundtrip(self):
        f = self.collapse()
        assert functor_equal(f.tabulate(), f)


class TestNatTrans:
    def test_identity_transformation(self):
        c = arrow_category()
        ident = identity_functor(c)
        t = FinNatTrans(ident, ident, lambda x: c.identity(x))
        assert check_nattrans(t).passed
        assert is_natural_iso(t)

    def test_wrong_endpoint_names_object(self):
        c = arrow_category()
        ident = identity_functor(c)
        t = FinNatTrans(ident, ident, {"0": "a", "1": "id1"})
        with pytest.raises(EndpointError, match="'0'"):
            t.component("0")
        report = check_nattrans(t)
        assert report.first_witness("nattrans.endpoints") == "0"

    def test_non_iso_transformation(self):
        # constant-at-0 => identity on the walking arrow, components id0 and a
        c = arrow_category()
        const0 = FinFunctor(c, c, lambda x: "0", lambda m: "id0")
        t = FinNatTrans(const0, identity_functor(c), {"0": "id0", "1": "a"})
        assert check_nattrans(t).passed
        assert not is_natural_iso(t)
