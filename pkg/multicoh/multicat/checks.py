"""
Axiom checkers for finite Cat-multicategories.

Each checker enumerates every instance of one axiom family within the arity bound and
returns a ``Report``. Work is split into one task per signature or composable shape and
fanned out with ``multicoh.core.parallel.fan_out``; reports are merged in task order.

A violation is recorded once per failing instance (signature and permutations, or nesting
shape); the detail names the first cell tuple on which the two sides differ.
"""

import logging
from itertools import product
from typing import Callable, List, Sequence, Tuple

from multicoh.core.fincat import check_category, check_functor
from multicoh.core.parallel import fan_out
from multicoh.core.perm import act_on_list, all_perms, block, compose, identity
from multicoh.core.report import Report, witness
from multicoh.multicat.base import (
    FinMulticategory,
    Signature,
    cells_of,
    composable_shapes,
    compose_signature,
    nested_shapes,
    unary,
)
from multicoh.utils.exceptions import MulticohException


logger = logging.getLogger(__name__)

LEVELS = (False, True)


def _cell_tuples(m: FinMulticategory, sigs: Sequence[Signature], two_cell: bool):
    return product(*(cells_of(m.hom(s), two_cell) for s in sigs))


def _level(two_cell: bool) -> str:
    return "2-cells" if two_cell else "cells"


def _run(m: FinMulticategory, subject: str, tasks: List[Callable[[], Report]],
         max_workers: int) -> Report:
    report = Report(subject).extend(fan_out(tasks, max_workers))
    logger.debug(f"{subject}: {sum(report.checked.values())} instances, "
                 f"{len(report.violations)} violations")
    return report


def _absorb(report: Report, sub: Report, axiom: str, where: str) -> None:
    """Fold a sub-report (category or functor laws) into one multicategory axiom."""
    report.tick(axiom, sum(sub.checked.values()))
    for v in sub.violations:
        detail = f"{v.axiom}: {v.detail}" if v.detail else v.axiom
        report.fail(axiom, f"{where} {v.witness}", detail)


# ---------------------------------------------------------------------------
# Symmetric group action
# ---------------------------------------------------------------------------

def _sym_action_task(m: FinMulticategory, sig: Signature) -> Report:
    axiom = "multicat.sym_action"
    report = Report(str(sig))
    c = m.hom(sig)
    n = sig.arity
    try:
        ident = identity(n)
        moved = [(tc, x) for tc in LEVELS for x in cells_of(c, tc)
                 if m.act(sig, ident, x, tc) != x]
        report.expect(not moved, axiom, witness(sig, ident),
                      f"identity moves {moved[0][1]!r}" if moved else "")
    except MulticohException as e:
        report.fail(axiom, witness(sig, identity(n)), str(e))

    for sigma, tau in product(all_perms(n), repeat=2):
        where = witness(sig, sigma, tau)
        try:
            moved_sig = sig.permuted(sigma)
            bad = None
            for tc in LEVELS:
                for x in cells_of(c, tc):
                    lhs = m.act(moved_sig, tau, m.act(sig, sigma, x, tc), tc)
                    rhs = m.act(sig, compose(sigma, tau), x, tc)
                    if lhs != rhs:
                        bad = f"on {x!r}: {lhs!r} != {rhs!r}"
                        break
                if bad:
                    break
            report.expect(bad is None, axiom, where, bad or "")
        except MulticohException as e:
            report.fail(axiom, where, str(e))
    return report


def check_sym_action(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check that the identity permutation acts trivially and that acting by sigma then tau
    equals acting by ``compose(sigma, tau)``, on every cell and 2-cell.

    Failures are named ``(signature, sigma, tau)``.
    """
    tasks = [lambda s=sig: _sym_action_task(m, s) for sig in m.nonempty_signatures()]
    return _run(m, f"{m.name}: symmetric action", tasks, max_workers)


# ---------------------------------------------------------------------------
# Unity
# ---------------------------------------------------------------------------

def _unity_task(m: FinMulticategory, sig: Signature) -> Report:
    report = Report(str(sig))
    c = m.hom(sig)
    unit_sigs = tuple(unary(a, a) for a in sig.inputs)
    out_sig = unary(sig.output, sig.output)

    for tc in LEVELS:
        for f in cells_of(c, tc):
            where = witness(sig, f)
            try:
                units = tuple(m.unit_2cell(a) if tc else m.unit(a) for a in sig.inputs)
                right = m.compose_cells(sig, unit_sigs, f, units, tc)
                report.expect(right == f, "multicat.unity", where,
                              f"right unity gives {right!r}")
            except MulticohException as e:
                report.fail("multicat.unity", where, str(e))
            try:
                b = m.unit_2cell(sig.output) if tc else m.unit(sig.output)
                left = m.compose_cells(out_sig, (sig,), b, (f,), tc)
                report.expect(left == f, "multicat.unity", where,
                              f"left unity gives {left!r}")
            except MulticohException as e:
                report.fail("multicat.unity", where, str(e))
    return report


def check_unity(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check ``gamma(f; 1_a1, ..., 1_an) = f`` and ``gamma(1_b; f) = f`` for every cell and
    2-cell. For nullary f only the left law has content.
    """
    tasks = [lambda s=sig: _unity_task(m, s) for sig in m.nonempty_signatures()]
    return _run(m, f"{m.name}: unity", tasks, max_workers)


# ---------------------------------------------------------------------------
# Associativity
# ---------------------------------------------------------------------------

def _split(items: Sequence, lengths: Sequence[int]) -> List[Tuple]:
    out, pos = [], 0
    for k in lengths:
        out.append(tuple(items[pos:pos + k]))
        pos += k
    return out


def _associativity_task(m: FinMulticategory, outer: Signature, middle: Tuple[Signature, ...],
                        innermost: Tuple[Signature, ...]) -> Report:
    axiom = "multicat.associativity"
    report = Report(str(outer))
    where = witness(outer, middle, innermost)
    n = outer.arity
    lengths = [s.arity for s in middle]
    inner_groups = _split(innermost, lengths)
    first = compose_signature(outer, middle)
    regrouped = tuple(compose_signature(s, grp) for s, grp in zip(middle, inner_groups))
    try:
        bad = None
        for tc in LEVELS:
            for cells in _cell_tuples(m, (outer,) + middle + innermost, tc):
                f, gs, hs = cells[0], cells[1:n + 1], cells[n + 1:]
                lhs = m.compose_cells(first, innermost, m.compose_cells(outer, middle, f, gs, tc),
                                      hs, tc)
                h_groups = _split(hs, lengths)
                composed = tuple(
                    m.compose_cells(s, grp, g, h, tc)
                    for s, grp, g, h in zip(middle, inner_groups, gs, h_groups)
                )
                rhs = m.compose_cells(outer, regrouped, f, composed, tc)
                if lhs != rhs:
                    bad = f"on {_level(tc)} {cells!r}: {lhs!r} != {rhs!r}"
                    break
            if bad:
                break
        report.expect(bad is None, axiom, where, bad or "")
    except MulticohException as e:
        report.fail(axiom, where, str(e))
    return report


def check_associativity(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check that both evaluation orders of a doubly nested composite agree.

    Every nesting shape with total arity within the bound is enumerated, including shapes
    whose middle signatures are all nullary. Failures are named by the nesting shape.
    """
    tasks = [
        lambda o=outer, mid=middle, inn=innermost: _associativity_task(m, o, mid, inn)
        for outer, middle, innermost in nested_shapes(m)
    ]
    return _run(m, f"{m.name}: associativity", tasks, max_workers)


# ---------------------------------------------------------------------------
# Equivariance
# ---------------------------------------------------------------------------

def _top_task(m: FinMulticategory, outer: Signature, inners: Tuple[Signature, ...]) -> Report:
    axiom = "multicat.top_equivariance"
    report = Report(str(outer))
    n = outer.arity
    composite = compose_signature(outer, inners)
    for sigma in all_perms(n):
        where = witness(outer, inners, sigma)
        try:
            moved_outer = outer.permuted(sigma)
            moved_inners = act_on_list(sigma, inners)
            blocks = block(sigma, list(act_on_list(sigma, [identity(s.arity) for s in inners])))
            bad = None
            for tc in LEVELS:
                for cells in _cell_tuples(m, (outer,) + inners, tc):
                    f, gs = cells[0], cells[1:]
                    lhs = m.compose_cells(moved_outer, moved_inners, m.act(outer, sigma, f, tc),
                                          act_on_list(sigma, gs), tc)
                    rhs = m.act(composite, blocks, m.compose_cells(outer, inners, f, gs, tc), tc)
                    if lhs != rhs:
                        bad = f"on {_level(tc)} {cells!r}: {lhs!r} != {rhs!r}"
                        break
                if bad:
                    break
            report.expect(bad is None, axiom, where, bad or "")
        except MulticohException as e:
            report.fail(axiom, where, str(e))
    return report


def check_top_equivariance(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check ``gamma(f sigma; g_sigma(1), ..., g_sigma(n)) = gamma(f; g) sigma<id_k_sigma(j)>``
    for every composable shape and every sigma permuting the outer inputs.
    """
    tasks = [lambda o=outer, i=inners: _top_task(m, o, i) for outer, inners in composable_shapes(m)]
    return _run(m, f"{m.name}: top equivariance", tasks, max_workers)


def _bottom_task(m: FinMulticategory, outer: Signature, inners: Tuple[Signature, ...]) -> Report:
    axiom = "multicat.bottom_equivariance"
    report = Report(str(outer))
    composite = compose_signature(outer, inners)
    for taus in product(*(all_perms(s.arity) for s in inners)):
        where = witness(outer, inners, taus)
        try:
            moved_inners = tuple(s.permuted(t) for s, t in zip(inners, taus))
            blocks = block(identity(outer.arity), list(taus))
            bad = None
            for tc in LEVELS:
                for cells in _cell_tuples(m, (outer,) + inners, tc):
                    f, gs = cells[0], cells[1:]
                    twisted = tuple(m.act(s, t, g, tc) for s, t, g in zip(inners, taus, gs))
                    lhs = m.compose_cells(outer, moved_inners, f, twisted, tc)
                    rhs = m.act(composite, blocks, m.compose_cells(outer, inners, f, gs, tc), tc)
                    if lhs != rhs:
                        bad = f"on {_level(tc)} {cells!r}: {lhs!r} != {rhs!r}"
                        break
                if bad:
                    break
            report.expect(bad is None, axiom, where, bad or "")
        except MulticohException as e:
            report.fail(axiom, where, str(e))
    return report


def check_bottom_equivariance(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check ``gamma(f; g_1 tau_1, ..., g_n tau_n) = gamma(f; g) id<tau_1, ..., tau_n>`` for
    every composable shape and every tuple of inner permutations.
    """
    tasks = [lambda o=outer, i=inners: _bottom_task(m, o, i)
             for outer, inners in composable_shapes(m)]
    return _run(m, f"{m.name}: bottom equivariance", tasks, max_workers)


# ---------------------------------------------------------------------------
# Totality and invertibility
# ---------------------------------------------------------------------------

def _signature_structure_task(m: FinMulticategory, sig: Signature) -> Report:
    report = Report(str(sig))
    _absorb(report, check_category(m.hom(sig)), "multicat.hom_category", str(sig))
    for sigma in all_perms(sig.arity):
        where = witness(sig, sigma)
        try:
            functor = m.action(sig, sigma)
            _absorb(report, check_functor(functor), "multicat.functoriality", where)
            target = functor.target
            for tc in LEVELS:
                source_cells = cells_of(functor.source, tc)
                images = {functor.map_morphism(x) if tc else functor.map_object(x)
                          for x in source_cells}
                bijective = (len(images) == len(source_cells)
                             and images == set(cells_of(target, tc)))
                report.expect(bijective, "multicat.action_invertibility", where,
                              f"action is not a bijection on {_level(tc)}")
        except MulticohException as e:
            report.fail("multicat.totality", where, str(e))
    return report


def _gamma_structure_task(m: FinMulticategory, outer: Signature,
                          inners: Tuple[Signature, ...]) -> Report:
    report = Report(str(outer))
    where = witness(outer, inners)
    try:
        _absorb(report, check_functor(m.gamma(outer, inners)), "multicat.functoriality", where)
    except MulticohException as e:
        report.fail("multicat.totality", where, str(e))
    return report


def check_structure(m: FinMulticategory, max_workers: int = 1) -> Report:
    """
    Check that the data is total and well typed: every hom is a category, every unit
    exists, every action and gamma is a functor between the right homs, and every action
    is invertible.
    """
    report = Report(f"{m.name}: structure")
    for a in sorted(m.objects, key=str):
        try:
            u = m.unit(a)
            report.expect(m.hom(unary(a, a)).has_object(u), "multicat.units", witness(a),
                          f"unit {u!r} is not a cell of {unary(a, a)}")
        except MulticohException as e:
            report.fail("multicat.units", witness(a), str(e))

    tasks: List[Callable[[], Report]] = [
        lambda s=sig: _signature_structure_task(m, s) for sig in m.nonempty_signatures()
    ]
    tasks += [lambda o=outer, i=inners: _gamma_structure_task(m, o, i)
              for outer, inners in composable_shapes(m)]
    return report.extend(fan_out(tasks, max_workers))


CHECKERS = (
    check_structure,
    check_sym_action,
    check_unity,
    check_associativity,
    check_top_equivariance,
    check_bottom_equivariance,
)


def check_multicat(m: FinMulticategory, max_workers: int = 1) -> Report:
    """Run every multicategory checker and merge the results into one report."""
    report = Report(f"multicategory {m.name}")
    for checker in CHECKERS:
        report.merge(checker(m, max_workers))
    logger.info(f"check_multicat {m.name}: {'pass' if report.passed else 'FAIL'} "
                f"({sum(report.checked.values())} instances, "
                f"{len(report.violations)} violations)")
    return report
