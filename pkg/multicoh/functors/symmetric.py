"""
Symmetric Cat-multifunctors and Cat-multinatural transformations.

A ``MultiFunctor`` is given by an object map and, per signature, maps on 1-cells and
2-cells. Maps may be tables keyed by ``(signature, cell)`` or callables taking
``(signature, cell)``, so builders can stay formula-backed while fixtures stay tabular.
A ``MultiNatTrans`` has one unary 1-cell ``theta_a: Fa -> Ga`` per object.
"""

import logging
from typing import Callable, List, Mapping, Tuple, Union

from multicoh.core.fincat import FinFunctor, check_functor
from multicoh.core.parallel import fan_out
from multicoh.core.perm import all_perms, compose, reversal
from multicoh.core.report import Report, witness
from multicoh.multicat.base import (
    Cell,
    FinMulticategory,
    Obj,
    Signature,
    cells_of,
    composable_shapes,
    compose_signature,
    same_multicat,
    split_signature,
    unary,
)
from multicoh.multicat.construct import barratt_eccles, product_multicat
from multicoh.utils.exceptions import BoundaryMismatch, EndpointError, MulticohException


logger = logging.getLogger(__name__)

ObjectMap = Union[Mapping[Obj, Obj], Callable[[Obj], Obj]]
CellMap = Union[Mapping[Tuple[Signature, Cell], Cell], Callable[[Signature, Cell], Cell]]


def _lookup(table, key, what: str):
    try:
        return table[key]
    except KeyError:
        raise EndpointError(f"{what} undefined on {key!r}") from None


class MultiFunctor:
    """
    A map of multicategories: objects, 1-cells and 2-cells, signature by signature.

    Whether it strictly preserves the symmetric action is a property checked by
    ``check_multifunctor``; pseudo symmetric functors wrap the same data.
    """

    def __init__(
        self,
        source: FinMulticategory,
        target: FinMulticategory,
        ob: ObjectMap,
        cell: CellMap,
        two_cell: CellMap,
        name: str = "F",
    ):
        self.source = source
        self.target = target
        self.ob = ob
        self.cell = cell
        self.two_cell = two_cell
        self.name = name

    def map_object(self, a: Obj) -> Obj:
        if callable(self.ob):
            return self.ob(a)
        return _lookup(self.ob, a, f"{self.name} on objects")

    def map_signature(self, sig: Signature) -> Signature:
        return Signature(tuple(self.map_object(a) for a in sig.inputs), self.map_object(sig.output))

    def map_cell(self, sig: Signature, x: Cell) -> Cell:
        if callable(self.cell):
            return self.cell(sig, x)
        return _lookup(self.cell, (sig, x), f"{self.name} on cells")

    def map_two_cell(self, sig: Signature, m: Cell) -> Cell:
        if callable(self.two_cell):
            return self.two_cell(sig, m)
        return _lookup(self.two_cell, (sig, m), f"{self.name} on 2-cells")

    def apply(self, sig: Signature, x: Cell, two_cell: bool = False) -> Cell:
        return self.map_two_cell(sig, x) if two_cell else self.map_cell(sig, x)

    def component(self, sig: Signature) -> FinFunctor:
        """The component functor ``M(<a>; b) -> N(<Fa>; Fb)``."""
        return FinFunctor(
            self.source.hom(sig),
            self.target.hom(self.map_signature(sig)),
            lambda x: self.map_cell(sig, x),
            lambda m: self.map_two_cell(sig, m),
        )

    def tabulate(self) -> "MultiFunctor":
        """A table-backed copy evaluated on every object, cell and 2-cell of the source."""
        m = self.source
        cells, two_cells = {}, {}
        for sig in m.nonempty_signatures():
            c = m.hom(sig)
            for x in c.objects:
                cells[(sig, x)] = self.map_cell(sig, x)
            for mor in c.morphisms:
                two_cells[(sig, mor)] = self.map_two_cell(sig, mor)
        obs = {a: self.map_object(a) for a in m.objects}
        return MultiFunctor(m, self.target, obs, cells, two_cells, self.name)

    def __repr__(self) -> str:
        return f"<MultiFunctor {self.name}: {self.source.name} -> {self.target.name}>"


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def _component_task(f: MultiFunctor, sig: Signature, symmetric: bool) -> Report:
    report = Report(str(sig))
    m, n = f.source, f.target
    try:
        fsig = f.map_signature(sig)
        sub = check_functor(f.component(sig))
    except MulticohException as e:
        report.fail("multifunctor.components", witness(sig), str(e))
        return report
    report.tick("multifunctor.components", sum(sub.checked.values()))
    for v in sub.violations:
        report.fail("multifunctor.components", f"{sig} {v.witness}", f"{v.axiom}: {v.detail}")
    if not symmetric:
        return report

    c = m.hom(sig)
    for sigma in all_perms(sig.arity):
        where = witness(sig, sigma)
        try:
            moved = sig.permuted(sigma)
            bad = None
            for tc in (False, True):
                for x in cells_of(c, tc):
                    lhs = f.apply(moved, m.act(sig, sigma, x, tc), tc)
                    rhs = n.act(fsig, sigma, f.apply(sig, x, tc), tc)
                    if lhs != rhs:
                        bad = f"on {x!r}: {lhs!r} != {rhs!r}"
                        break
                if bad:
                    break
            report.expect(bad is None, "multifunctor.symmetry", where, bad or "")
        except MulticohException as e:
            report.fail("multifunctor.symmetry", where, str(e))
    return report


def _composition_task(f: MultiFunctor, outer: Signature, inners: Tuple[Signature, ...]) -> Report:
    report = Report(str(outer))
    m, n = f.source, f.target
    where = witness(outer, inners)
    try:
        f_outer = f.map_signature(outer)
        f_inners = tuple(f.map_signature(s) for s in inners)
        composite = m.gamma(outer, inners).source
        bad = None
        for tc in (False, True):
            for cells in cells_of(composite, tc):
                x, ys = cells[0], cells[1:]
                from_gamma = m.compose_cells(outer, inners, x, ys, tc)
                lhs = f.apply(compose_signature(outer, inners), from_gamma, tc)
                rhs = n.compose_cells(f_outer, f_inners, f.apply(outer, x, tc),
                                      tuple(f.apply(s, y, tc) for s, y in zip(inners, ys)), tc)
                if lhs != rhs:
                    bad = f"on {cells!r}: {lhs!r} != {rhs!r}"
                    break
            if bad:
                break
        report.expect(bad is None, "multifunctor.composition", where, bad or "")
    except MulticohException as e:
        report.fail("multifunctor.composition", where, str(e))
    return report


def check_underlying(f: MultiFunctor, report: Report, max_workers: int = 1,
                     symmetric: bool = True) -> Report:
    """
    Check objects, units, components and gamma preservation, and with ``symmetric`` also
    the action square ``F(x sigma) = F(x) sigma``.
    """
    m, n = f.source, f.target
    if not report.expect(m.arity_bound == n.arity_bound, "multifunctor.boundary", f.name,
                         f"arity bounds {m.arity_bound} and {n.arity_bound} differ"):
        return report

    targets = n.object_set
    for a in m.objects:
        try:
            fa = f.map_object(a)
        except MulticohException as e:
            report.fail("multifunctor.objects", witness(a), str(e))
            continue
        report.expect(fa in targets, "multifunctor.objects", witness(a),
                      f"image {fa!r} is not an object of {n.name}")
    if report.failures_for("multifunctor.objects"):
        return report

    for a in m.objects:
        fa = f.map_object(a)
        try:
            u = unary(a, a)
            ok = (f.map_cell(u, m.unit(a)) == n.unit(fa)
                  and f.map_two_cell(u, m.unit_2cell(a)) == n.unit_2cell(fa))
            report.expect(ok, "multifunctor.units", witness(a), "F(1_a) != 1_Fa")
        except MulticohException as e:
            report.fail("multifunctor.units", witness(a), str(e))

    tasks: List[Callable[[], Report]] = [
        lambda s=sig: _component_task(f, s, symmetric) for sig in m.nonempty_signatures()
    ]
    tasks += [lambda o=outer, i=inners: _composition_task(f, o, i)
              for outer, inners in composable_shapes(m)]
    return report.extend(fan_out(tasks, max_workers))


def check_multifunctor(f: MultiFunctor, max_workers: int = 1) -> Report:
    """Check units, gamma preservation, the action square and every component functor."""
    report = check_underlying(f, Report(f"multifunctor {f.name}"), max_workers)
    logger.debug(f"check_multifunctor {f.name}: {len(report.violations)} violations")
    return report


# ---------------------------------------------------------------------------
# 1-cell operations
# ---------------------------------------------------------------------------

def identity_multifunctor(m: FinMulticategory) -> MultiFunctor:
    return MultiFunctor(m, m, lambda a: a, lambda sig, x: x, lambda sig, mor: mor,
                        name=f"1_{m.name}")


def compose_multifunctor(g: MultiFunctor, f: MultiFunctor) -> MultiFunctor:
    """
    The composite ``g after f``.

    Raises:
        BoundaryMismatch: If the target of f is not the source of g.
    """
    if not same_multicat(f.target, g.source):
        raise BoundaryMismatch(f"cannot compose {g.name} after {f.name}: "
                               f"{f.target.name} is not {g.source.name}")
    return MultiFunctor(
        f.source,
        g.target,
        lambda a: g.map_object(f.map_object(a)),
        lambda sig, x: g.map_cell(f.map_signature(sig), f.map_cell(sig, x)),
        lambda sig, mor: g.map_two_cell(f.map_signature(sig), f.map_two_cell(sig, mor)),
        name=f"{g.name}.{f.name}",
    )


def _require_parallel(f: MultiFunctor, g: MultiFunctor) -> None:
    if not (same_multicat(f.source, g.source) and same_multicat(f.target, g.target)):
        raise BoundaryMismatch(f"{f.name} and {g.name} are not parallel")


def multifunctor_equal(f: MultiFunctor, g: MultiFunctor) -> bool:
    """
    Pointwise equality on objects and on every cell and 2-cell.

    Raises:
        BoundaryMismatch: If f and g are not parallel.
    """
    _require_parallel(f, g)
    m = f.source
    if any(f.map_object(a) != g.map_object(a) for a in m.objects):
        return False
    for sig in m.nonempty_signatures():
        c = m.hom(sig)
        if any(f.map_cell(sig, x) != g.map_cell(sig, x) for x in c.objects):
            return False
        if any(f.map_two_cell(sig, mor) != g.map_two_cell(sig, mor) for mor in c.morphisms):
            return False
    return True


def product_multifunctor(f: MultiFunctor, g: MultiFunctor) -> MultiFunctor:
    """``F x G: M x M' -> N x N'``, componentwise."""

    def on_cells(sig, x, two_cell):
        s, t = split_signature(sig)
        return (f.apply(s, x[0], two_cell), g.apply(t, x[1], two_cell))

    return MultiFunctor(
        product_multicat(f.source, g.source),
        product_multicat(f.target, g.target),
        lambda a: (f.map_object(a[0]), g.map_object(a[1])),
        lambda sig, x: on_cells(sig, x, False),
        lambda sig, mor: on_cells(sig, mor, True),
        name=f"{f.name}x{g.name}",
    )


def _reassociate(x):
    return ((x[0], x[1][0]), x[1][1])


def associator(a: FinMulticategory, b: FinMulticategory, c: FinMulticategory) -> MultiFunctor:
    """The isomorphism ``A x (B x C) -> (A x B) x C``."""
    return MultiFunctor(
        product_multicat(a, product_multicat(b, c)),
        product_multicat(product_multicat(a, b), c),
        _reassociate,
        lambda sig, x: _reassociate(x),
        lambda sig, mor: _reassociate(mor),
        name="assoc",
    )


def projection(m: FinMulticategory, n: FinMulticategory, side: int = 0) -> MultiFunctor:
    """Projection of ``M x N`` onto the factor ``side`` (0 or 1)."""
    target = (m, n)[side]
    return MultiFunctor(
        product_multicat(m, n),
        target,
        lambda a: a[side],
        lambda sig, x: x[side],
        lambda sig, mor: mor[side],
        name=f"pr{side}",
    )


def reversal_automorphism(arity_bound: int) -> MultiFunctor:
    """
    The automorphism of ``barratt_eccles(N)`` sending sigma to ``w_n sigma``, with ``w_n``
    the order-reversing permutation. It is symmetric and an involution.
    """
    m = barratt_eccles(arity_bound)
    return MultiFunctor(
        m,
        m,
        lambda a: a,
        lambda sig, x: compose(reversal(sig.arity), x),
        lambda sig, mor: (compose(reversal(sig.arity), mor[0]),
                          compose(reversal(sig.arity), mor[1])),
        name="rev",
    )


# ---------------------------------------------------------------------------
# Multinatural transformations
# ---------------------------------------------------------------------------

class MultiNatTrans:
    """
    A multinatural transformation ``theta: F => G`` with components
    ``theta_a`` in ``N(Fa; Ga)``, given as a table or a callable.
    """

    def __init__(self, source: MultiFunctor, target: MultiFunctor,
                 components: Union[Mapping[Obj, Cell], Callable[[Obj], Cell]],
                 name: str = "theta"):
        self.source = source
        self.target = target
        self.components = components
        self.name = name

    def raw_component(self, a: Obj) -> Cell:
        if callable(self.components):
            return self.components(a)
        return _lookup(self.components, a, f"{self.name} components")

    def component_signature(self, a: Obj) -> Signature:
        return unary(self.source.map_object(a), self.target.map_object(a))

    def component(self, a: Obj) -> Cell:
        """
        Raises:
            EndpointError: If the component is not a 1-cell ``Fa -> Ga``.
        """
        theta = self.raw_component(a)
        sig = self.component_signature(a)
        if not self.source.target.hom(sig).has_object(theta):
            raise EndpointError(f"component of {self.name} at {a!r} is not a cell of {sig}")
        return theta

    def identity_2cell(self, a: Obj) -> Cell:
        return self.source.target.identity_2cell(self.component_signature(a), self.component(a))

    def __repr__(self) -> str:
        return f"<MultiNatTrans {self.name}: {self.source.name} => {self.target.name}>"


def _trans_task(t: MultiNatTrans, sig: Signature) -> Report:
    """Both naturality equations for the cells and 2-cells of one signature."""
    report = Report(str(sig))
    f, g = t.source, t.target
    n = f.target
    c = f.source.hom(sig)
    g_sig, f_sig = g.map_signature(sig), f.map_signature(sig)
    theta_sigs = tuple(t.component_signature(a) for a in sig.inputs)
    out_sig = (t.component_signature(sig.output),)
    for tc, axiom in ((False, "multinat.cells"), (True, "multinat.two_cells")):
        for x in cells_of(c, tc):
            where = witness(sig, x)
            try:
                if tc:
                    thetas = tuple(t.identity_2cell(a) for a in sig.inputs)
                    theta_b = t.identity_2cell(sig.output)
                else:
                    thetas = tuple(t.component(a) for a in sig.inputs)
                    theta_b = t.component(sig.output)
                lhs = n.compose_cells(g_sig, theta_sigs, g.apply(sig, x, tc), thetas, tc)
                rhs = n.compose_cells(out_sig[0], (f_sig,), theta_b, (f.apply(sig, x, tc),), tc)
                report.expect(lhs == rhs, axiom, where, f"{lhs!r} != {rhs!r}")
            except MulticohException as e:
                report.fail(axiom, where, str(e))
    return report


def check_multinat(t: MultiNatTrans, max_workers: int = 1) -> Report:
    """
    Check component endpoints and, for every 1-cell f and 2-cell alpha,
    ``gamma(Gf; theta_a1, ..., theta_an) = gamma(theta_b; Ff)`` and
    ``gamma(G alpha; 1_theta_a1, ...) = gamma(1_theta_b; F alpha)``.
    """
    report = Report(f"multinat {t.name}")
    f, g = t.source, t.target
    if not (same_multicat(f.source, g.source) and same_multicat(f.target, g.target)):
        report.fail("multinat.boundary", t.name, "functors are not parallel")
        return report
    for a in f.source.objects:
        try:
            t.component(a)
            report.tick("multinat.endpoints")
        except MulticohException as e:
            report.fail("multinat.endpoints", witness(a), str(e))
    if not report.passed:
        return report
    tasks = [lambda s=sig: _trans_task(t, s) for sig in f.source.nonempty_signatures()]
    return report.extend(fan_out(tasks, max_workers))


def identity_multinat(f: MultiFunctor) -> MultiNatTrans:
    n = f.target
    return MultiNatTrans(f, f, lambda a: n.unit(f.map_object(a)), name=f"1_{f.name}")


def multinat_equal(s: MultiNatTrans, t: MultiNatTrans) -> bool:
    """
    Raises:
        BoundaryMismatch: If the transformations are not parallel.
    """
    if not (multifunctor_equal(s.source, t.source) and multifunctor_equal(s.target, t.target)):
        raise BoundaryMismatch(f"{s.name} and {t.name} are not parallel")
    return all(s.raw_component(a) == t.raw_component(a) for a in s.source.source.objects)


def _unary_gamma(n: FinMulticategory, outer: Signature, inner: Signature, x: Cell, y: Cell) -> Cell:
    return n.compose_cells(outer, (inner,), x, (y,))


def vert_compose(z: MultiNatTrans, t: MultiNatTrans) -> MultiNatTrans:
    """
    ``(z t)_a = gamma(z_a; t_a)`` for ``t: F => G`` and ``z: G => H``.

    Raises:
        BoundaryMismatch: If the target of t is not the source of z.
    """
    if not multifunctor_equal(t.target, z.source):
        raise BoundaryMismatch(f"cannot compose {z.name} after {t.name}")
    n = t.source.target
    return MultiNatTrans(
        t.source,
        z.target,
        lambda a: _unary_gamma(n, z.component_signature(a), t.component_signature(a),
                               z.component(a), t.component(a)),
        name=f"{z.name}.{t.name}",
    )


def horiz_compose(z: MultiNatTrans, t: MultiNatTrans) -> MultiNatTrans:
    """
    ``(z * t)_a = gamma(z_Ga; F' t_a)`` for ``t: F => G: M -> N`` and
    ``z: F' => G': N -> P``; source ``F' F``, target ``G' G``.

    Raises:
        BoundaryMismatch: If the target of t's functors is not the source of z's.
    """
    f, g = t.source, t.target
    f2, g2 = z.source, z.target
    if not same_multicat(f.target, f2.source):
        raise BoundaryMismatch(f"cannot compose {z.name} with {t.name}")
    p = f2.target

    def component(a):
        ga = g.map_object(a)
        moved = f2.map_cell(t.component_signature(a), t.component(a))
        return _unary_gamma(p, z.component_signature(ga), f2.map_signature(t.component_signature(a)),
                            z.component(ga), moved)

    return MultiNatTrans(compose_multifunctor(f2, f), compose_multifunctor(g2, g), component,
                         name=f"{z.name}*{t.name}")


def whisker_left(g: MultiFunctor, t: MultiNatTrans) -> MultiNatTrans:
    """``G t``: components ``G(t_a)``."""
    return MultiNatTrans(
        compose_multifunctor(g, t.source),
        compose_multifunctor(g, t.target),
        lambda a: g.map_cell(t.component_signature(a), t.component(a)),
        name=f"{g.name}{t.name}",
    )


def whisker_right(t: MultiNatTrans, f: MultiFunctor) -> MultiNatTrans:
    """``t F``: components ``t_Fa``."""
    return MultiNatTrans(
        compose_multifunctor(t.source, f),
        compose_multifunctor(t.target, f),
        lambda a: t.component(f.map_object(a)),
        name=f"{t.name}{f.name}",
    )

