"""
Pseudo symmetric multifunctors and multinatural transformations.

A pseudo symmetric multifunctor keeps the unit and gamma axioms of a multifunctor but
preserves the symmetric action only up to chosen invertible 2-cells

    F_{sigma; f}: F(f sigma) -> F(f) sigma        in N(<Fa> sigma; Fb)

subject to naturality, the unit and product permutation axioms and top and bottom
equivariance. ``check_pseudo`` never checks the strict action square.
"""

import logging
from itertools import product
from typing import Callable, List, Mapping, Tuple, Union

from multicoh.core.fincat import FinFunctor, FinNatTrans, inverse_of
from multicoh.core.parallel import fan_out
from multicoh.core.perm import Perm, act_on_list, all_perms, block, compose, identity
from multicoh.core.report import Report, witness
from multicoh.functors.symmetric import (
    MultiFunctor,
    MultiNatTrans,
    check_multifunctor,
    check_multinat,
    check_underlying,
    compose_multifunctor,
    horiz_compose,
    identity_multifunctor,
    multifunctor_equal,
    vert_compose,
)
from multicoh.multicat.base import (
    Cell,
    FinMulticategory,
    Obj,
    Signature,
    composable_shapes,
    compose_signature,
)
from multicoh.utils.exceptions import BoundaryMismatch, InvalidInput, MulticohException


logger = logging.getLogger(__name__)

PsiMap = Union[Mapping[Tuple[Signature, Perm, Cell], Cell], Callable[[Signature, Perm, Cell], Cell]]


class PseudoSymMultiFunctor:
    """
    Underlying multifunctor data plus the pseudo symmetry 2-cells.

    ``psi`` is a table keyed by ``(signature, sigma, f)`` or a callable with those
    arguments, returning ``F_{sigma; f}``. The object and cell maps of the underlying
    functor are exposed directly, so transformations treat both kinds alike.
    """

    def __init__(self, underlying: MultiFunctor, psi: PsiMap, name: str = ""):
        self.underlying = underlying
        self.psi = psi
        self.name = name or underlying.name

    @property
    def source(self) -> FinMulticategory:
        return self.underlying.source

    @property
    def target(self) -> FinMulticategory:
        return self.underlying.target

    def map_object(self, a: Obj) -> Obj:
        return self.underlying.map_object(a)

    def map_signature(self, sig: Signature) -> Signature:
        return self.underlying.map_signature(sig)

    def map_cell(self, sig: Signature, x: Cell) -> Cell:
        return self.underlying.map_cell(sig, x)

    def map_two_cell(self, sig: Signature, m: Cell) -> Cell:
        return self.underlying.map_two_cell(sig, m)

    def apply(self, sig: Signature, x: Cell, two_cell: bool = False) -> Cell:
        return self.underlying.apply(sig, x, two_cell)

    def psi_component(self, sig: Signature, sigma: Perm, f: Cell) -> Cell:
        """``F_{sigma; f}`` for a 1-cell f of ``M(sig)``."""
        if callable(self.psi):
            return self.psi(sig, sigma, f)
        try:
            return self.psi[(sig, sigma, f)]
        except KeyError:
            raise InvalidInput(f"{self.name}: no pseudo symmetry cell at "
                               f"{witness(sig, sigma, f)}") from None

    def psi_iso(self, sig: Signature, sigma: Perm) -> FinNatTrans:
        """``F_sigma`` as a transformation ``F . (-)sigma => (-)sigma . F`` on ``M(sig)``."""
        m, n = self.source, self.target
        moved = sig.permuted(sigma)
        fsig = self.map_signature(sig)
        around = FinFunctor(
            m.hom(sig),
            n.hom(fsig.permuted(sigma)),
            lambda x: self.map_cell(moved, m.act(sig, sigma, x)),
            lambda a: self.map_two_cell(moved, m.act(sig, sigma, a, two_cell=True)),
        )
        across = FinFunctor(
            m.hom(sig),
            n.hom(fsig.permuted(sigma)),
            lambda x: n.act(fsig, sigma, self.map_cell(sig, x)),
            lambda a: n.act(fsig, sigma, self.map_two_cell(sig, a), two_cell=True),
        )
        return FinNatTrans(around, across, lambda x: self.psi_component(sig, sigma, x))

    def tabulate(self) -> "PseudoSymMultiFunctor":
        """A table-backed copy, including every pseudo symmetry cell."""
        m = self.source
        table = {}
        for sig in m.nonempty_signatures():
            for sigma in all_perms(sig.arity):
                for x in m.hom(sig).objects:
                    table[(sig, sigma, x)] = self.psi_component(sig, sigma, x)
        return PseudoSymMultiFunctor(self.underlying.tabulate(), table, self.name)

    def __repr__(self) -> str:
        return f"<PseudoSymMultiFunctor {self.name}: {self.source.name} -> {self.target.name}>"


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def _permutation_task(f: PseudoSymMultiFunctor, sig: Signature) -> Report:
    """Endpoints, invertibility, naturality, unit and product permutation at one signature."""
    report = Report(str(sig))
    m, n = f.source, f.target
    c = m.hom(sig)
    fsig = f.map_signature(sig)
    n_perms = all_perms(sig.arity)

    for sigma in n_perms:
        moved = sig.permuted(sigma)
        target_hom = n.hom(fsig.permuted(sigma))
        for x in c.objects:
            where = witness(sig, sigma, x)
            try:
                p = f.psi_component(sig, sigma, x)
                src = f.map_cell(moved, m.act(sig, sigma, x))
                dst = n.act(fsig, sigma, f.map_cell(sig, x))
                ok = (target_hom.has_morphism(p) and target_hom.src(p) == src
                      and target_hom.dst(p) == dst)
                if report.expect(ok, "pseudo.psi_endpoints", where,
                                 f"{p!r} is not a 2-cell {src!r} -> {dst!r}"):
                    report.expect(inverse_of(target_hom, p) is not None, "pseudo.psi_invertible",
                                  where, f"{p!r} has no inverse")
            except MulticohException as e:
                report.fail("pseudo.psi_endpoints", where, str(e))

        for alpha in c.morphisms:
            where = witness(sig, sigma, alpha)
            try:
                lhs = target_hom.compose(n.act(fsig, sigma, f.map_two_cell(sig, alpha), True),
                                         f.psi_component(sig, sigma, c.src(alpha)))
                rhs = target_hom.compose(f.psi_component(sig, sigma, c.dst(alpha)),
                                         f.map_two_cell(moved, m.act(sig, sigma, alpha, True)))
                report.expect(lhs == rhs, "pseudo.naturality", where, f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail("pseudo.naturality", where, str(e))

    ident = identity(sig.arity)
    for x in c.objects:
        where = witness(sig, ident, x)
        try:
            p = f.psi_component(sig, ident, x)
            unit = n.identity_2cell(fsig, f.map_cell(sig, x))
            report.expect(p == unit, "pseudo.unit_permutation", where, f"{p!r} is not {unit!r}")
        except MulticohException as e:
            report.fail("pseudo.unit_permutation", where, str(e))

    for sigma, tau in product(n_perms, repeat=2):
        moved = sig.permuted(sigma)
        hom_st = n.hom(fsig.permuted(compose(sigma, tau)))
        for x in c.objects:
            where = witness(sig, sigma, tau, x)
            try:
                lhs = f.psi_component(sig, compose(sigma, tau), x)
                rhs = hom_st.compose(
                    n.act(fsig.permuted(sigma), tau, f.psi_component(sig, sigma, x), True),
                    f.psi_component(moved, tau, m.act(sig, sigma, x)),
                )
                report.expect(lhs == rhs, "pseudo.product_permutation", where,
                              f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail("pseudo.product_permutation", where, str(e))
    return report


def _equivariance_task(f: PseudoSymMultiFunctor, outer: Signature,
                       inners: Tuple[Signature, ...]) -> Report:
    report = Report(str(outer))
    m, n = f.source, f.target
    composite = compose_signature(outer, inners)
    f_outer = f.map_signature(outer)
    f_inners = tuple(f.map_signature(s) for s in inners)
    cell_tuples = list(product(*(m.hom(s).objects for s in (outer,) + inners)))

    for sigma in all_perms(outer.arity):
        blocks = block(sigma, list(act_on_list(sigma, [identity(s.arity) for s in inners])))
        moved_inners = act_on_list(sigma, f_inners)
        for cells in cell_tuples:
            x, ys = cells[0], cells[1:]
            where = witness(outer, inners, sigma, cells)
            try:
                lhs = f.psi_component(composite, blocks, m.compose_cells(outer, inners, x, ys))
                units = tuple(n.identity_2cell(fs, f.map_cell(s, y))
                              for fs, s, y in zip(f_inners, inners, ys))
                rhs = n.compose_cells(f_outer.permuted(sigma), moved_inners,
                                      f.psi_component(outer, sigma, x),
                                      act_on_list(sigma, units), two_cell=True)
                report.expect(lhs == rhs, "pseudo.top_equivariance", where, f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail("pseudo.top_equivariance", where, str(e))

    for taus in product(*(all_perms(s.arity) for s in inners)):
        blocks = block(identity(outer.arity), list(taus))
        twisted = tuple(fs.permuted(t) for fs, t in zip(f_inners, taus))
        for cells in cell_tuples:
            x, ys = cells[0], cells[1:]
            where = witness(outer, inners, taus, cells)
            try:
                lhs = f.psi_component(composite, blocks, m.compose_cells(outer, inners, x, ys))
                rhs = n.compose_cells(
                    f_outer, twisted, n.identity_2cell(f_outer, f.map_cell(outer, x)),
                    tuple(f.psi_component(s, t, y) for s, t, y in zip(inners, taus, ys)),
                    two_cell=True)
                report.expect(lhs == rhs, "pseudo.bottom_equivariance", where,
                              f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail("pseudo.bottom_equivariance", where, str(e))
    return report


def check_pseudo(f: PseudoSymMultiFunctor, max_workers: int = 1) -> Report:
    """
    Check every pseudo symmetric multifunctor axiom within the arity bound.

    The unit, gamma and component checks are those of ``check_multifunctor`` without the
    strict action square. Failures name the axiom, signature, permutations and cell.
    """
    report = check_underlying(f.underlying, Report(f"pseudo {f.name}"), max_workers,
                              symmetric=False)
    if report.failures_for("multifunctor.objects") or report.failures_for("multifunctor.boundary"):
        return report
    m = f.source
    tasks: List[Callable[[], Report]] = [
        lambda s=sig: _permutation_task(f, s) for sig in m.nonempty_signatures()
    ]
    tasks += [lambda o=outer, i=inners: _equivariance_task(f, o, i)
              for outer, inners in composable_shapes(m)]
    report.extend(fan_out(tasks, max_workers))
    logger.debug(f"check_pseudo {f.name}: {len(report.violations)} violations")
    return report


# ---------------------------------------------------------------------------
# 1-cells
# ---------------------------------------------------------------------------

def _identity_psi(f) -> Callable[[Signature, Perm, Cell], Cell]:
    n = f.target

    def psi(sig, sigma, x):
        fsig = f.map_signature(sig)
        return n.identity_2cell(fsig.permuted(sigma), n.act(fsig, sigma, f.map_cell(sig, x)))

    return psi


def include_j(f: MultiFunctor, validate: bool = True) -> PseudoSymMultiFunctor:
    """
    A symmetric multifunctor as a pseudo symmetric one with identity symmetry cells.

    Raises:
        InvalidInput: If ``validate`` is set and f fails ``check_multifunctor``.
    """
    if validate:
        report = check_multifunctor(f)
        if not report.passed:
            first = report.violations[0]
            raise InvalidInput(f"{f.name} is not a symmetric multifunctor: "
                               f"{first.axiom} at {first.witness}")
    return PseudoSymMultiFunctor(f, _identity_psi(f), name=f"j{f.name}")


def identity_pseudo(m: FinMulticategory) -> PseudoSymMultiFunctor:
    return include_j(identity_multifunctor(m), validate=False)


def compose_pseudo(g: PseudoSymMultiFunctor, f: PseudoSymMultiFunctor) -> PseudoSymMultiFunctor:
    """
    ``(GF)_{sigma; x} = G_{sigma; Fx} . G(F_{sigma; x})``.

    Raises:
        BoundaryMismatch: If the target of f is not the source of g.
    """
    underlying = compose_multifunctor(g.underlying, f.underlying)
    p = g.target

    def psi(sig, sigma, x):
        moved_fsig = f.map_signature(sig).permuted(sigma)
        hom = p.hom(g.map_signature(moved_fsig))
        return hom.compose(g.psi_component(f.map_signature(sig), sigma, f.map_cell(sig, x)),
                           g.map_two_cell(moved_fsig, f.psi_component(sig, sigma, x)))

    return PseudoSymMultiFunctor(underlying, psi, name=f"{g.name}.{f.name}")


def pseudo_equal(f: PseudoSymMultiFunctor, g: PseudoSymMultiFunctor) -> bool:
    """
    Equality of the underlying data and of every pseudo symmetry cell.

    Raises:
        BoundaryMismatch: If f and g are not parallel.
    """
    if not multifunctor_equal(f.underlying, g.underlying):
        return False
    m = f.source
    for sig in m.nonempty_signatures():
        for sigma in all_perms(sig.arity):
            for x in m.hom(sig).objects:
                if f.psi_component(sig, sigma, x) != g.psi_component(sig, sigma, x):
                    return False
    return True


def is_strict(f: PseudoSymMultiFunctor) -> bool:
    """True iff every pseudo symmetry cell is an identity."""
    n, m = f.target, f.source
    for sig in m.nonempty_signatures():
        fsig = f.map_signature(sig)
        for sigma in all_perms(sig.arity):
            for x in m.hom(sig).objects:
                p = f.psi_component(sig, sigma, x)
                hom = n.hom(fsig.permuted(sigma))
                if p != hom.identity(hom.src(p)):
                    return False
    return True


# ---------------------------------------------------------------------------
# 2-cells
# ---------------------------------------------------------------------------

class PseudoSymMultiNatTrans(MultiNatTrans):
    """A multinatural transformation between pseudo symmetric multifunctors."""

    def __repr__(self) -> str:
        return f"<PseudoSymMultiNatTrans {self.name}: {self.source.name} => {self.target.name}>"


def _symmetry_task(t: PseudoSymMultiNatTrans, sig: Signature) -> Report:
    report = Report(str(sig))
    f, g = t.source, t.target
    n = f.target
    fsig, gsig = f.map_signature(sig), g.map_signature(sig)
    theta_b_sig = t.component_signature(sig.output)
    for sigma in all_perms(sig.arity):
        moved_inputs = act_on_list(sigma, sig.inputs)
        theta_sigs = tuple(t.component_signature(a) for a in moved_inputs)
        for x in f.source.hom(sig).objects:
            where = witness(sig, sigma, x)
            try:
                lhs = n.compose_cells(theta_b_sig, (fsig.permuted(sigma),),
                                      t.identity_2cell(sig.output),
                                      (f.psi_component(sig, sigma, x),), two_cell=True)
                rhs = n.compose_cells(gsig.permuted(sigma), theta_sigs,
                                      g.psi_component(sig, sigma, x),
                                      tuple(t.identity_2cell(a) for a in moved_inputs),
                                      two_cell=True)
                report.expect(lhs == rhs, "pseudo_nat.symmetry", where, f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail("pseudo_nat.symmetry", where, str(e))
    return report


def check_pseudo_nat(t: PseudoSymMultiNatTrans, max_workers: int = 1) -> Report:
    """
    Check both naturality equations and
    ``gamma(1_theta_b; F_{sigma; f}) = gamma(G_{sigma; f}; 1_theta_a_sigma(1), ...)``.
    """
    report = check_multinat(t, max_workers)
    report.subject = f"pseudo multinat {t.name}"
    if report.failures_for("multinat.boundary") or report.failures_for("multinat.endpoints"):
        return report
    tasks = [lambda s=sig: _symmetry_task(t, s) for sig in t.source.source.nonempty_signatures()]
    return report.extend(fan_out(tasks, max_workers))


def identity_pseudo_nat(f: PseudoSymMultiFunctor) -> PseudoSymMultiNatTrans:
    n = f.target
    return PseudoSymMultiNatTrans(f, f, lambda a: n.unit(f.map_object(a)), name=f"1_{f.name}")


def pseudo_nat_equal(s: PseudoSymMultiNatTrans, t: PseudoSymMultiNatTrans) -> bool:
    """
    Raises:
        BoundaryMismatch: If the transformations are not parallel.
    """
    if not (pseudo_equal(s.source, t.source) and pseudo_equal(s.target, t.target)):
        raise BoundaryMismatch(f"{s.name} and {t.name} are not parallel")
    return all(s.raw_component(a) == t.raw_component(a) for a in s.source.source.objects)


def vert_compose_pseudo(z: PseudoSymMultiNatTrans,
                        t: PseudoSymMultiNatTrans) -> PseudoSymMultiNatTrans:
    """
    Raises:
        BoundaryMismatch: If the target of t is not the source of z.
    """
    if not pseudo_equal(t.target, z.source):
        raise BoundaryMismatch(f"cannot compose {z.name} after {t.name}")
    v = vert_compose(z, t)
    return PseudoSymMultiNatTrans(t.source, z.target, v.components, name=v.name)


def horiz_compose_pseudo(z: PseudoSymMultiNatTrans,
                         t: PseudoSymMultiNatTrans) -> PseudoSymMultiNatTrans:
    """Components as for symmetric transformations; boundaries are pseudo composites."""
    h = horiz_compose(z, t)
    return PseudoSymMultiNatTrans(compose_pseudo(z.source, t.source),
                                  compose_pseudo(z.target, t.target), h.components, name=h.name)


def whisker_left_pseudo(g: PseudoSymMultiFunctor,
                        t: PseudoSymMultiNatTrans) -> PseudoSymMultiNatTrans:
    """``G t`` with components ``G(t_a)``."""
    return PseudoSymMultiNatTrans(
        compose_pseudo(g, t.source),
        compose_pseudo(g, t.target),
        lambda a: g.map_cell(t.component_signature(a), t.component(a)),
        name=f"{g.name}{t.name}",
    )


def include_j_nat(t: MultiNatTrans) -> PseudoSymMultiNatTrans:
    """A symmetric transformation between ``jF`` and ``jG``."""
    return PseudoSymMultiNatTrans(include_j(t.source, validate=False),
                                  include_j(t.target, validate=False),
                                  t.components, name=f"j{t.name}")
