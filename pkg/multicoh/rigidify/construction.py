"""
Rigidification of pseudo symmetric multifunctors.

For a multicategory M with arity bound N write ``ME = M x barratt_eccles(N)``. A 1-cell of
ME is a pair ``(f, sigma)`` and a 2-cell is ``(alpha, (sigma, tau))`` with ``(sigma, tau)``
the unique arrow ``sigma -> tau``.

- ``eta(M)``: the pseudo symmetric inclusion ``M -> ME``, ``f -> (f, id)``;
- ``rigidify(F)``: the symmetric ``phi(F): ME -> N`` with ``phi(F) . eta = F``;
- ``eta_star(G)``: restriction of a symmetric ``G: ME -> N`` along ``eta``, the inverse
  of ``rigidify``;
- ``psi_1cell`` and ``psi_2cell``: the induced 2-functor on symmetric cells;
- ``pi``, ``delta`` and the composition of the 2-category whose 1-cells ``M -> N`` are
  symmetric multifunctors ``ME -> N``.
"""

import logging
from typing import Tuple

from multicoh.core.perm import Perm, compose, identity, inverse
from multicoh.core.report import witness
from multicoh.functors.pseudo import (
    PseudoSymMultiFunctor,
    PseudoSymMultiNatTrans,
    check_pseudo,
    check_pseudo_nat,
    compose_pseudo,
    whisker_left_pseudo,
)
from multicoh.functors.symmetric import (
    MultiFunctor,
    MultiNatTrans,
    associator,
    compose_multifunctor,
    horiz_compose,
    identity_multifunctor,
    product_multifunctor,
    projection,
    whisker_right,
)
from multicoh.multicat.base import Cell, FinMulticategory, Signature, same_multicat, split_signature
from multicoh.multicat.construct import (
    STAR,
    ProductMulticategory,
    barratt_eccles,
    is_barratt_eccles,
    product_multicat,
)
from multicoh.utils.exceptions import (
    InvalidInput,
    InvalidPseudo,
    ShapeMismatch,
)


logger = logging.getLogger(__name__)


def with_e(m: FinMulticategory) -> ProductMulticategory:
    """``M x barratt_eccles(N)`` at the arity bound of M."""
    return product_multicat(m, barratt_eccles(m.arity_bound))


def rigid_factor(m: FinMulticategory) -> FinMulticategory:
    """
    The factor M of ``M x barratt_eccles(N)``.

    Raises:
        ShapeMismatch: If m is not such a product.
    """
    if isinstance(m, ProductMulticategory) and is_barratt_eccles(m.factors[1]):
        return m.factors[0]
    raise ShapeMismatch(f"{m.name} is not a product with the Barratt-Eccles operad")


# ---------------------------------------------------------------------------
# eta
# ---------------------------------------------------------------------------

def eta(m: FinMulticategory) -> PseudoSymMultiFunctor:
    """
    The pseudo symmetric ``eta_M: M -> M x E``: ``a -> (a, *)``, ``f -> (f, id_n)``, with
    symmetry cells ``eta_{sigma; f} = (1_{f sigma}, id_n -> sigma)``.
    """
    underlying = MultiFunctor(
        m,
        with_e(m),
        lambda a: (a, STAR),
        lambda sig, f: (f, identity(sig.arity)),
        lambda sig, alpha: (alpha, (identity(sig.arity), identity(sig.arity))),
        name=f"eta_{m.name}",
    )

    def psi(sig, sigma, f):
        moved = sig.permuted(sigma)
        return (m.identity_2cell(moved, m.act(sig, sigma, f)), (identity(sig.arity), sigma))

    return PseudoSymMultiFunctor(underlying, psi)


# ---------------------------------------------------------------------------
# phi
# ---------------------------------------------------------------------------

def _phi_cell(f: PseudoSymMultiFunctor, sig: Signature, x: Tuple[Cell, Perm]) -> Cell:
    """``phi(F)(g, sigma) = F(g sigma^-1) sigma``."""
    m, n = f.source, f.target
    g, sigma = x
    inv = inverse(sigma)
    moved = sig.permuted(inv)
    return n.act(f.map_signature(moved), sigma, f.map_cell(moved, m.act(sig, inv, g)))


def _phi_horizontal(f: PseudoSymMultiFunctor, sig: Signature, alpha: Cell, sigma: Perm) -> Cell:
    """``phi(F)(alpha, 1_sigma) = F(alpha sigma^-1) sigma``."""
    m, n = f.source, f.target
    inv = inverse(sigma)
    moved = sig.permuted(inv)
    return n.act(f.map_signature(moved), sigma,
                 f.map_two_cell(moved, m.act(sig, inv, alpha, two_cell=True)), two_cell=True)


def _phi_vertical(f: PseudoSymMultiFunctor, sig: Signature, g: Cell, sigma: Perm,
                  tau: Perm) -> Cell:
    """``phi(F)(1_g, sigma -> tau) = (F_{tau sigma^-1; g tau^-1}) sigma``."""
    m, n = f.source, f.target
    tau_inv = inverse(tau)
    kappa = compose(tau, inverse(sigma))
    moved = sig.permuted(tau_inv)
    cell = f.psi_component(moved, kappa, m.act(sig, tau_inv, g))
    return n.act(f.map_signature(moved).permuted(kappa), sigma, cell, two_cell=True)


def phi_cell(f: PseudoSymMultiFunctor, sig: Signature, mor: Cell,
             cross_validate: bool = True) -> Cell:
    """
    ``phi(F)`` on the 2-cell ``(alpha, sigma -> tau)`` of ``M(sig) x E(n)``, computed as
    ``phi(1_g, sigma -> tau) . phi(alpha, 1_sigma)`` for ``alpha: f -> g``.

    Raises:
        InvalidPseudo: With ``cross_validate``, if the other factorization
            ``phi(alpha, 1_tau) . phi(1_f, sigma -> tau)`` disagrees.
    """
    m, n = f.source, f.target
    alpha, (sigma, tau) = mor
    c = m.hom(sig)
    source_cell, target_cell = c.src(alpha), c.dst(alpha)
    hom = n.hom(f.map_signature(sig))
    result = hom.compose(_phi_vertical(f, sig, target_cell, sigma, tau),
                         _phi_horizontal(f, sig, alpha, sigma))
    if cross_validate:
        other = hom.compose(_phi_horizontal(f, sig, alpha, tau),
                            _phi_vertical(f, sig, source_cell, sigma, tau))
        if other != result:
            raise InvalidPseudo(f"phi({f.name}) is ambiguous at {witness(sig, mor)}: "
                                f"{result!r} != {other!r}")
    return result


def rigidify(f: PseudoSymMultiFunctor, validate: bool = True,
             cross_validate: bool = True) -> MultiFunctor:
    """
    The symmetric multifunctor ``phi(F): M x E -> N`` with ``phi(F) . eta_M = F``.

    Raises:
        InvalidPseudo: If ``validate`` is set and F fails ``check_pseudo``, or a 2-cell
            value is ambiguous.
    """
    if validate:
        report = check_pseudo(f)
        if not report.passed:
            first = report.violations[0]
            raise InvalidPseudo(f"{f.name} is not pseudo symmetric: {first.axiom} at "
                                f"{first.witness}")
    m = f.source
    logger.debug(f"rigidifying {f.name} over {m.name}")
    return MultiFunctor(
        with_e(m),
        f.target,
        lambda a: f.map_object(a[0]),
        lambda psig, x: _phi_cell(f, split_signature(psig)[0], x),
        lambda psig, mor: phi_cell(f, split_signature(psig)[0], mor, cross_validate),
        name=f"phi({f.name})",
    )


def rigidify_nat(t: PseudoSymMultiNatTrans, validate: bool = True) -> MultiNatTrans:
    """
    ``phi(theta)`` with components ``phi(theta)_(a, *) = theta_a``.

    Raises:
        InvalidInput: If ``validate`` is set and t fails ``check_pseudo_nat``.
    """
    if validate:
        report = check_pseudo_nat(t)
        if not report.passed:
            first = report.violations[0]
            raise InvalidInput(f"{t.name} is not a pseudo symmetric transformation: "
                               f"{first.axiom} at {first.witness}")
    return MultiNatTrans(
        rigidify(t.source, validate=False),
        rigidify(t.target, validate=False),
        lambda a: t.component(a[0]),
        name=f"phi({t.name})",
    )


def eta_star(g: MultiFunctor) -> PseudoSymMultiFunctor:
    """
    Restriction of a symmetric ``G: M x E -> N`` along ``eta_M``: ``a -> G(a, *)``,
    ``f -> G(f, id)``, symmetry cells ``G(1_{f sigma}, id -> sigma)``.

    Raises:
        ShapeMismatch: If the source of g is not ``M x E``.
    """
    m = rigid_factor(g.source)
    underlying = MultiFunctor(
        m,
        g.target,
        lambda a: g.map_object((a, STAR)),
        lambda sig, f: g.map_cell(_with_stars(sig), (f, identity(sig.arity))),
        lambda sig, alpha: g.map_two_cell(_with_stars(sig),
                                          (alpha, (identity(sig.arity), identity(sig.arity)))),
        name=f"eta*({g.name})",
    )

    def psi(sig, sigma, f):
        moved = sig.permuted(sigma)
        unit = m.identity_2cell(moved, m.act(sig, sigma, f))
        return g.map_two_cell(_with_stars(moved), (unit, (identity(sig.arity), sigma)))

    return PseudoSymMultiFunctor(underlying, psi)


def eta_star_nat(t: MultiNatTrans) -> PseudoSymMultiNatTrans:
    """Restriction of a symmetric transformation between functors out of ``M x E``."""
    return PseudoSymMultiNatTrans(eta_star(t.source), eta_star(t.target),
                                  lambda a: t.component((a, STAR)), name=f"eta*({t.name})")


def _with_stars(sig: Signature) -> Signature:
    return Signature(tuple((a, STAR) for a in sig.inputs), (sig.output, STAR))


# ---------------------------------------------------------------------------
# psi, pi, delta
# ---------------------------------------------------------------------------

def psi_1cell(f: PseudoSymMultiFunctor) -> MultiFunctor:
    """
    ``psi(F) = phi(eta_N . F): M x E -> N x E``, the unique symmetric functor with
    ``psi(F) . eta_M = eta_N . F``. For ``F = jG`` this is ``G x 1``.
    """
    return rigidify(compose_pseudo(eta(f.target), f), validate=False)


def psi_2cell(t: PseudoSymMultiNatTrans) -> MultiNatTrans:
    """``psi(theta) = phi(eta_N theta)`` with components ``(theta_a, id_1)`` at ``(a, *)``."""
    whiskered = whisker_left_pseudo(eta(t.source.target), t)
    return rigidify_nat(whiskered, validate=False)


def pi(m: FinMulticategory) -> MultiFunctor:
    """The projection ``M x E -> M``."""
    p = projection(m, barratt_eccles(m.arity_bound), side=0)
    p.name = f"pi_{m.name}"
    return p


def delta(arity_bound: int) -> MultiFunctor:
    """The diagonal ``E -> E x E``."""
    e = barratt_eccles(arity_bound)
    return MultiFunctor(
        e,
        product_multicat(e, e),
        lambda a: (a, a),
        lambda sig, x: (x, x),
        lambda sig, mor: (mor, mor),
        name="delta",
    )


def one_times_delta(m: FinMulticategory) -> MultiFunctor:
    """``assoc . (1 x delta): M x E -> (M x E) x E``, ``(f, sigma) -> ((f, sigma), sigma)``."""
    e = barratt_eccles(m.arity_bound)
    f = compose_multifunctor(associator(m, e, e),
                             product_multifunctor(identity_multifunctor(m), delta(m.arity_bound)))
    f.name = f"1x delta_{m.name}"
    return f


# ---------------------------------------------------------------------------
# Composition of rigid 1-cells and 2-cells
# ---------------------------------------------------------------------------

def d_compose(g: MultiFunctor, f: MultiFunctor) -> MultiFunctor:
    """
    ``g o f = g . (f x 1) . (1 x delta)`` for ``f: L x E -> M`` and ``g: M x E -> P``.

    Raises:
        ShapeMismatch: If a source is not a product with E or the target of f is not the
            left factor of the source of g.
    """
    left = rigid_factor(f.source)
    middle = rigid_factor(g.source)
    if not same_multicat(f.target, middle):
        raise ShapeMismatch(f"{f.name} lands in {f.target.name}, {g.name} starts at {middle.name}")
    e = barratt_eccles(left.arity_bound)
    widened = product_multifunctor(f, identity_multifunctor(e))
    composite = compose_multifunctor(g, compose_multifunctor(widened, one_times_delta(left)))
    composite.name = f"{g.name} o {f.name}"
    return composite


def d_identity(m: FinMulticategory) -> MultiFunctor:
    """The identity 1-cell ``pi_M``."""
    return pi(m)


def _times_identity(t: MultiNatTrans, e: FinMulticategory) -> MultiNatTrans:
    """``t x 1_E`` with components ``(t_a, 1_e)``."""
    ident = identity_multifunctor(e)
    return MultiNatTrans(
        product_multifunctor(t.source, ident),
        product_multifunctor(t.target, ident),
        lambda a: (t.component(a[0]), e.unit(a[1])),
        name=f"{t.name}x1",
    )


def d_compose_nat(z: MultiNatTrans, t: MultiNatTrans) -> MultiNatTrans:
    """
    Horizontal composite of rigid 2-cells: ``(z * (t x 1)) (1 x delta)``.

    Raises:
        ShapeMismatch: As for ``d_compose``.
        BoundaryMismatch: If the functors do not compose.
    """
    left = rigid_factor(t.source.source)
    rigid_factor(z.source.source)
    e = barratt_eccles(left.arity_bound)
    composite = horiz_compose(z, _times_identity(t, e))
    return whisker_right(composite, one_times_delta(left))
