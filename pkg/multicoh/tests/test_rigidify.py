"""Tests for eta, phi, eta*, psi, the D-composition and the adjunction checks."""

import pytest

from multicoh.core.perm import Perm, identity
from multicoh.functors.pseudo import (
    PseudoSymMultiFunctor,
    check_pseudo,
    horiz_compose_pseudo,
    identity_pseudo_nat,
    include_j,
    include_j_nat,
    pseudo_equal,
    pseudo_nat_equal,
    vert_compose_pseudo,
)
from multicoh.functors.symmetric import (
    MultiFunctor,
    check_multifunctor,
    check_multinat,
    compose_multifunctor,
    identity_multifunctor,
    identity_multinat,
    multifunctor_equal,
    multinat_equal,
    product_multifunctor,
    projection,
    reversal_automorphism,
    vert_compose,
)
from multicoh.multicat.base import Signature
from multicoh.multicat.construct import (
    STAR,
    assoc_operad,
    barratt_eccles,
    cyclic_monoid,
    end_of_monoid,
    product_multicat,
    terminal_operad,
)
from multicoh.rigidify.adjunction import (
    Corpus,
    build_corpus,
    check_adjunction,
    check_corpus,
    check_d_category,
    generate_symmetric_corpus,
    generate_symmetric_functors,
    monoid_maps,
    multiplication_map,
    psi_preserves_composition,
    scaling_map,
    translation,
    unary_cells,
)
from multicoh.rigidify.algebra import (
    ORDERINGS,
    algebra_of_monoid,
    check_algebra,
    rigid_algebra,
)
from multicoh.rigidify.construction import (
    d_compose,
    d_compose_nat,
    d_identity,
    delta,
    eta,
    eta_star,
    eta_star_nat,
    one_times_delta,
    phi_cell,
    pi,
    psi_1cell,
    psi_2cell,
    rigid_factor,
    rigidify,
    rigidify_nat,
    with_e,
)
from multicoh.utils.exceptions import InvalidInput, InvalidPseudo, ShapeMismatch


SIG2 = Signature((STAR, STAR), STAR)
SWAP = Perm((2, 1))


def constant_pseudo(m) -> PseudoSymMultiFunctor:
    underlying = MultiFunctor(m, m, lambda a: a, lambda sig, x: identity(sig.arity),
                              lambda sig, mor: (identity(sig.arity), identity(sig.arity)),
                              name="c")
    return PseudoSymMultiFunctor(underlying, lambda sig, sigma, x: (identity(sig.arity), sigma),
                                 name="c~")


class TestEta:
    @pytest.mark.parametrize("build", [
        lambda: assoc_operad(3),
        lambda: barratt_eccles(3),
        lambda: end_of_monoid(cyclic_monoid(3), 3),
    ])
    def test_eta_is_pseudo_symmetric(self, build):
        report = check_pseudo(eta(build()))
        assert report.passed, report.render_text()

    def test_eta_is_not_symmetric(self, ass3):
        report = check_multifunctor(eta(ass3).underlying)
        assert report.failures_for("multifunctor.symmetry")

    def test_eta_values(self, ass3):
        e = eta(ass3)
        assert e.map_object(STAR) == (STAR, STAR)
        assert e.map_cell(SIG2, SWAP) == (SWAP, identity(2))
        assert e.psi_component(SIG2, SWAP, identity(2)) == ((SWAP, SWAP), (identity(2), SWAP))


class TestRigidify:
    def test_phi_of_eta_is_identity(self, be2):
        assert multifunctor_equal(rigidify(eta(be2)), identity_multifunctor(with_e(be2)))

    def test_phi_of_constant_is_projection(self, be2):
        phi = rigidify(constant_pseudo(be2))
        assert check_multifunctor(phi).passed
        assert multifunctor_equal(phi, projection(be2, be2, side=1))

    def test_phi_values(self, ass3):
        phi = rigidify(eta(ass3))
        sig = Signature(((STAR, STAR),) * 2, (STAR, STAR))
        assert phi.map_cell(sig, (identity(2), SWAP)) == (identity(2), SWAP)
        mor = ((identity(2), identity(2)), (identity(2), SWAP))
        assert phi_cell(eta(ass3), SIG2, mor) == mor

    @pytest.mark.parametrize("build", [
        lambda: eta(barratt_eccles(2)),
        lambda: include_j(reversal_automorphism(2)),
        lambda: constant_pseudo(barratt_eccles(2)),
        lambda: eta(end_of_monoid(cyclic_monoid(2), 2)),
        lambda: algebra_of_monoid(cyclic_monoid(3), 3, "reverse"),
        pytest.param(lambda: eta(barratt_eccles(3)), marks=pytest.mark.slow),
        pytest.param(lambda: include_j(reversal_automorphism(3)), marks=pytest.mark.slow),
        pytest.param(lambda: constant_pseudo(barratt_eccles(3)), marks=pytest.mark.slow),
    ])
    def test_phi_is_symmetric_and_restricts_back(self, build):
        f = build()
        phi = rigidify(f)
        report = check_multifunctor(phi)
        assert report.passed, report.render_text()
        assert pseudo_equal(eta_star(phi), f)

    def test_rejects_non_pseudo(self, be2):
        bad = PseudoSymMultiFunctor(constant_pseudo(be2).underlying,
                                    lambda sig, sigma, x: (identity(sig.arity),) * 2)
        with pytest.raises(InvalidPseudo):
            rigidify(bad)

    def test_rigid_factor(self, be3, comm3):
        assert rigid_factor(with_e(comm3)) is comm3
        with pytest.raises(ShapeMismatch):
            rigid_factor(be3)
        with pytest.raises(ShapeMismatch):
            eta_star(identity_multifunctor(be3))


class TestRoundTrip:
    def test_pool_is_large_enough(self):
        assert len(generate_symmetric_functors(2)) >= 50

    def test_fifty_generated_functors(self):
        corpus = generate_symmetric_corpus(seed=7, size=50, arity_bound=2, orders=(2, 3, 4))
        assert len(corpus) == 50
        failures = []
        for g in corpus:
            restricted = eta_star(g)
            if not check_pseudo(restricted).passed:
                failures.append(f"{g.name}: eta* not pseudo")
            elif not multifunctor_equal(rigidify(restricted, validate=False), g):
                failures.append(f"{g.name}: phi(eta*(G)) != G")
        assert failures == []

    def test_corpus_is_seeded(self):
        first = [g.name for g in generate_symmetric_corpus(3, 10, 2)]
        again = [g.name for g in generate_symmetric_corpus(3, 10, 2)]
        assert first == again

    def test_multiplication_maps_are_symmetric(self):
        for h in monoid_maps(2, (2, 4)):
            assert check_multifunctor(h).passed, h.name
        assert multiplication_map(4, 2, 1, 2).map_object("3") == "1"


class TestAdjunction:
    def test_empty_corpus_checks_triangles(self, be2):
        report = check_adjunction(be2, be2, Corpus())
        assert report.passed, report.render_text()
        for axiom in ("adjunction.triangle_unit", "adjunction.triangle_counit",
                      "adjunction.psi_eta"):
            assert report.checked[axiom] == 1

    def test_psi_of_eta_is_one_times_delta(self, ass3):
        assert multifunctor_equal(psi_1cell(eta(ass3)), one_times_delta(ass3))

    def test_psi_of_j_is_f_times_one(self):
        rev = reversal_automorphism(2)
        e = barratt_eccles(2)
        assert multifunctor_equal(psi_1cell(include_j(rev)),
                                  product_multifunctor(rev, identity_multifunctor(e)))

    def test_delta(self):
        assert check_multifunctor(delta(2)).passed
        assert delta(2).map_cell(SIG2, SWAP) == (SWAP, SWAP)

    def test_adjunction_with_cells(self):
        z2 = end_of_monoid(cyclic_monoid(2), 2)
        e = barratt_eccles(2)
        h = multiplication_map(2, 2, 1, 2)
        g = product_multifunctor(h, reversal_automorphism(2))
        f = eta_star(g)
        corpus = Corpus(rigid=[g], pseudo=[f], symmetric=[h],
                        pseudo_nats=[identity_pseudo_nat(f)])
        report = check_adjunction(z2, product_multicat(z2, e), corpus)
        assert report.passed, report.render_text()
        assert report.checked["adjunction.roundtrip_symmetric"] == 1
        assert report.checked["adjunction.roundtrip_pseudo"] == 1
        assert report.checked["adjunction.roundtrip_pseudo_2cell"] == 1
        assert "adjunction.psi_j" not in report.checked

    def test_between(self, be2):
        rev = reversal_automorphism(2)
        corpus = Corpus(symmetric=[rev], pseudo=[eta(be2)])
        assert len(corpus.between(be2, be2)) == 1
        assert len(corpus.pairs()) == 2

    def test_small_generated_corpus(self):
        corpus = build_corpus(seed=1, size=8, arity_bound=2, orders=(2, 3))
        report = check_corpus(corpus)
        assert report.passed, report.render_text()


class TestDComposition:
    def test_units(self, be2):
        g = compose_multifunctor(reversal_automorphism(2), projection(be2, be2, side=1))
        assert multifunctor_equal(d_compose(g, d_identity(be2)), g)
        assert multifunctor_equal(d_compose(d_identity(be2), g), g)

    def test_composite_of_identity_transformations(self, be2):
        g = compose_multifunctor(reversal_automorphism(2), projection(be2, be2, side=1))
        f = pi(be2)
        t = d_compose_nat(identity_multinat(g), identity_multinat(f))
        assert check_multinat(t).passed
        assert multinat_equal(t, identity_multinat(d_compose(g, f)))

    def test_phi_preserves_composition(self, be2):
        f = include_j(reversal_automorphism(2))
        g = constant_pseudo(be2)
        corpus = Corpus(rigid=[rigidify(f), rigidify(g)], pseudo=[f, g])
        report = check_d_category(corpus)
        assert report.passed, report.render_text()
        assert report.checked["d_category.phi_composition"] == 4
        assert report.checked["d_category.associativity"] > 0

    def test_psi_functoriality(self, be2):
        f = include_j(reversal_automorphism(2))
        report = psi_preserves_composition(Corpus(pseudo=[f, eta(be2)]))
        assert report.passed
        assert report.checked["adjunction.psi_composition"] == 2

    def test_shape_mismatch(self, be2, comm3):
        with pytest.raises(ShapeMismatch):
            d_compose(pi(comm3), pi(be2))

    def test_pi(self, z2):
        assert check_multifunctor(pi(z2)).passed


class TestAlgebra:
    @pytest.mark.parametrize("ordering", sorted(ORDERINGS))
    def test_monoid_algebra(self, ordering):
        report = check_algebra(cyclic_monoid(3), 3, ordering)
        assert report.passed, report.render_text()

    def test_rigid_algebra_is_an_e_algebra(self):
        alg = rigid_algebra(cyclic_monoid(3), 3, "reverse")
        assert alg.source is barratt_eccles(3)
        assert check_multifunctor(alg).passed
        assert alg.map_cell(SIG2, SWAP) == (STAR, identity(2))

    def test_unknown_ordering(self):
        with pytest.raises(InvalidInput):
            algebra_of_monoid(cyclic_monoid(2), 2, "sideways")

    def test_pseudo_algebra_is_not_strict(self):
        alg = algebra_of_monoid(cyclic_monoid(2), 2)
        assert alg.psi_component(SIG2, SWAP, STAR) == ((STAR, STAR), (identity(2), SWAP))
        assert check_multifunctor(alg.underlying).failures_for("multifunctor.symmetry")
        assert alg.source is terminal_operad(2)


class TestTwoCells:
    def test_rigidify_nat_keeps_components(self):
        t = include_j_nat(translation(scaling_map(5, 2, 2), "3"))
        phi = rigidify_nat(t)
        report = check_multinat(phi)
        assert report.passed, report.render_text()
        assert phi.raw_component((STAR, STAR)) == "3"
        assert pseudo_nat_equal(eta_star_nat(phi), t)

    def test_rigidify_nat_preserves_vertical_composition(self):
        f = scaling_map(5, 2, 2)
        a = include_j_nat(translation(f, "1"))
        b = include_j_nat(translation(f, "3"))
        lhs = rigidify_nat(vert_compose_pseudo(a, b))
        rhs = vert_compose(rigidify_nat(a), rigidify_nat(b))
        assert multinat_equal(lhs, rhs)
        assert lhs.raw_component((STAR, STAR)) == "4"

    def test_psi_2cell_pairs_with_the_unit(self):
        t = include_j_nat(translation(scaling_map(5, 3, 2), "3"))
        psi_t = psi_2cell(t)
        assert check_multinat(psi_t).passed
        assert psi_t.raw_component((STAR, STAR)) == ("3", identity(1))

    def test_d_compose_nat_component(self, group5):
        g = compose_multifunctor(scaling_map(5, 3, 2), pi(group5))
        f = compose_multifunctor(scaling_map(5, 2, 2), pi(group5))
        z, t = translation(g, "1"), translation(f, "2")
        composite = d_compose_nat(z, t)
        assert check_multinat(composite).passed
        assert composite.raw_component((STAR, STAR)) == str((1 + 3 * 2) % 5)

    def test_phi_preserves_horizontal_composition(self):
        z = include_j_nat(translation(scaling_map(5, 3, 2), "1"))
        t = include_j_nat(translation(scaling_map(5, 2, 2), "2"))
        lhs = rigidify_nat(horiz_compose_pseudo(z, t))
        rhs = d_compose_nat(rigidify_nat(z), rigidify_nat(t))
        assert multinat_equal(lhs, rhs)
        assert lhs.raw_component((STAR, STAR)) == "2"

    def test_adjunction_with_translations(self, group5):
        report = check_adjunction(group5, group5, unary_cells(2))
        assert report.passed, report.render_text()
        assert report.checked["adjunction.roundtrip_pseudo_2cell"] == 6
        assert report.checked["adjunction.roundtrip_symmetric_2cell"] == 3
        assert report.checked["adjunction.psi_2cell"] == 6

    def test_d_category_on_translations(self):
        report = check_d_category(unary_cells(2))
        assert report.passed, report.render_text()
        assert report.checked["d_category.phi_2cell_composition"] == 36

    def test_generated_corpus_has_non_identity_cells(self):
        corpus = build_corpus(seed=1, size=4, arity_bound=2, orders=(2,))
        moved = [t for t in corpus.pseudo_nats
                 if not pseudo_nat_equal(t, identity_pseudo_nat(t.source))]
        assert len(moved) == 6
