"""
Rigidification of pseudo symmetric algebras.

A pseudo symmetric algebra of ``terminal_operad(N)`` in a multicategory M is a pseudo
symmetric multifunctor ``Comm -> M``. Its rigidification is a symmetric algebra of
``Comm x E``, and restricting along ``E -> Comm x E`` gives a symmetric algebra of the
Barratt-Eccles operad.

The target used here is ``end_of_monoid(mon, N) x barratt_eccles(N)``. The monoid
coordinate is fixed at the unit, so all order data sits in the E coordinate: the n-ary
operation goes to ``(*, c_n)`` with ``c_n`` the identity or the reversal, and the symmetry
cells are the unique arrows ``c_n -> c_n sigma``.
"""

import logging

from multicoh.core.perm import compose, identity, reversal
from multicoh.core.report import Report
from multicoh.functors.pseudo import PseudoSymMultiFunctor, check_pseudo
from multicoh.functors.symmetric import MultiFunctor, check_multifunctor, compose_multifunctor
from multicoh.multicat.construct import (
    STAR,
    FinCommMonoid,
    barratt_eccles,
    end_of_monoid,
    product_multicat,
    terminal_operad,
)
from multicoh.rigidify.construction import rigidify
from multicoh.utils.exceptions import InvalidInput


logger = logging.getLogger(__name__)

ORDERINGS = {"identity": identity, "reverse": reversal}


def algebra_of_monoid(mon: FinCommMonoid, arity_bound: int,
                      ordering: str = "identity") -> PseudoSymMultiFunctor:
    """
    The pseudo symmetric algebra ``Comm -> End(mon) x E`` with n-ary operation
    ``(*, c_n)``.

    Raises:
        InvalidInput: If the ordering is not one of ``ORDERINGS``.
        NotCommutative: If the monoid is not commutative.
    """
    try:
        order = ORDERINGS[ordering]
    except KeyError:
        raise InvalidInput(f"unknown ordering {ordering!r}, expected one of "
                           f"{sorted(ORDERINGS)}") from None
    target = product_multicat(end_of_monoid(mon, arity_bound), barratt_eccles(arity_bound))
    underlying = MultiFunctor(
        terminal_operad(arity_bound),
        target,
        lambda a: (mon.unit, STAR),
        lambda sig, x: (STAR, order(sig.arity)),
        lambda sig, mor: ((STAR, STAR), (order(sig.arity), order(sig.arity))),
        name=f"alg({mon.name}, {ordering})",
    )

    def psi(sig, sigma, x):
        c = order(sig.arity)
        return ((STAR, STAR), (c, compose(c, sigma)))

    return PseudoSymMultiFunctor(underlying, psi)


def e_to_comm_times_e(arity_bound: int) -> MultiFunctor:
    """The isomorphism ``E -> Comm x E``, ``sigma -> (*, sigma)``."""
    e = barratt_eccles(arity_bound)
    return MultiFunctor(
        e,
        product_multicat(terminal_operad(arity_bound), e),
        lambda a: (STAR, a),
        lambda sig, x: (STAR, x),
        lambda sig, mor: ((STAR, STAR), mor),
        name="E->Comm x E",
    )


def rigid_algebra(mon: FinCommMonoid, arity_bound: int,
                  ordering: str = "identity") -> MultiFunctor:
    """The symmetric E-algebra ``phi(alg) . (E -> Comm x E)``."""
    phi = rigidify(algebra_of_monoid(mon, arity_bound, ordering))
    return compose_multifunctor(phi, e_to_comm_times_e(arity_bound))


def check_algebra(mon: FinCommMonoid, arity_bound: int, ordering: str = "identity",
                  max_workers: int = 1) -> Report:
    """
    Check the pseudo algebra, its rigidification and the E-algebra obtained by restriction.
    """
    alg = algebra_of_monoid(mon, arity_bound, ordering)
    report = Report(f"algebra {alg.name}")
    report.merge(check_pseudo(alg, max_workers))
    if not report.passed:
        return report
    phi = rigidify(alg, validate=False)
    report.merge(check_multifunctor(phi, max_workers))
    report.merge(check_multifunctor(compose_multifunctor(phi, e_to_comm_times_e(arity_bound)),
                                    max_workers))
    logger.info(f"{alg.name} at N={arity_bound}: {len(report.violations)} violations")
    return report
