"""
Verification of the rigidification 2-adjunction on finite corpora.

A ``Corpus`` holds cells between finitely many multicategories: symmetric functors
``G: M x E -> N`` (the rigid side), pseudo symmetric functors ``F: M -> N``, symmetric
functors ``F: M -> N`` and transformations between them. ``check_adjunction`` verifies,
for one pair of 0-cells, that ``rigidify`` and ``eta_star`` are mutually inverse, that the
triangle identities hold and that eta and pi are strictly natural. Passing is a bounded
certificate: only the enumerated cells are covered.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from multicoh.core.parallel import fan_out
from multicoh.core.report import Report
from multicoh.functors.pseudo import (
    PseudoSymMultiFunctor,
    PseudoSymMultiNatTrans,
    check_pseudo,
    compose_pseudo,
    horiz_compose_pseudo,
    identity_pseudo,
    identity_pseudo_nat,
    include_j,
    include_j_nat,
    pseudo_equal,
    pseudo_nat_equal,
)
from multicoh.functors.symmetric import (
    MultiFunctor,
    MultiNatTrans,
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
)
from multicoh.multicat.base import FinMulticategory, same_multicat
from multicoh.multicat.construct import (
    STAR,
    assoc_operad,
    barratt_eccles,
    cyclic_monoid,
    end_of_monoid,
    terminal_operad,
    unary_monoid,
)
from multicoh.rigidify.construction import (
    d_compose,
    d_compose_nat,
    d_identity,
    eta,
    eta_star,
    eta_star_nat,
    one_times_delta,
    pi,
    psi_1cell,
    psi_2cell,
    rigid_factor,
    rigidify,
    rigidify_nat,
    with_e,
)
from multicoh.utils.exceptions import MulticohException


logger = logging.getLogger(__name__)

MONOID_ORDERS = (2, 3, 4)
UNARY_ORDER = 5


def _spans(source: FinMulticategory, target: FinMulticategory, m: FinMulticategory,
           n: FinMulticategory) -> bool:
    return same_multicat(source, m) and same_multicat(target, n)


def _rigid_ends(g: MultiFunctor) -> Tuple[FinMulticategory, FinMulticategory]:
    return rigid_factor(g.source), g.target


@dataclass
class Corpus:
    """Cells of the two 2-categories, between arbitrary pairs of multicategories."""

    rigid: List[MultiFunctor] = field(default_factory=list)
    pseudo: List[PseudoSymMultiFunctor] = field(default_factory=list)
    symmetric: List[MultiFunctor] = field(default_factory=list)
    rigid_nats: List[MultiNatTrans] = field(default_factory=list)
    pseudo_nats: List[PseudoSymMultiNatTrans] = field(default_factory=list)

    def __len__(self) -> int:
        return (len(self.rigid) + len(self.pseudo) + len(self.symmetric)
                + len(self.rigid_nats) + len(self.pseudo_nats))

    def between(self, m: FinMulticategory, n: FinMulticategory) -> "Corpus":
        """The cells from m to n; rigid cells count as going from their left factor."""
        return Corpus(
            rigid=[g for g in self.rigid if _spans(*_rigid_ends(g), m, n)],
            pseudo=[f for f in self.pseudo if _spans(f.source, f.target, m, n)],
            symmetric=[f for f in self.symmetric if _spans(f.source, f.target, m, n)],
            rigid_nats=[t for t in self.rigid_nats if _spans(*_rigid_ends(t.source), m, n)],
            pseudo_nats=[t for t in self.pseudo_nats
                         if _spans(t.source.source, t.source.target, m, n)],
        )

    def pairs(self) -> List[Tuple[FinMulticategory, FinMulticategory]]:
        """Distinct (source, target) pairs carrying at least one 1-cell, in corpus order."""
        found: List[Tuple[FinMulticategory, FinMulticategory]] = []
        ends = ([_rigid_ends(g) for g in self.rigid]
                + [(f.source, f.target) for f in self.pseudo]
                + [(f.source, f.target) for f in self.symmetric])
        for m, n in ends:
            if not any(a is m and b is n for a, b in found):
                found.append((m, n))
        return found


# ---------------------------------------------------------------------------
# Per-cell tasks
# ---------------------------------------------------------------------------

def _first_problem(report: Report) -> str:
    if report.passed:
        return ""
    first = report.violations[0]
    return f"{len(report.violations)} violations, first {first.axiom} at {first.witness}"


def _rigid_task(g: MultiFunctor) -> Report:
    """``eta*(G)`` is pseudo symmetric, equals ``jG . eta`` and rigidifies back to G."""
    report = Report(g.name)
    try:
        restricted = eta_star(g)
        sub = check_pseudo(restricted)
        report.expect(sub.passed, "adjunction.eta_star_pseudo", g.name, _first_problem(sub))
        factored = compose_pseudo(include_j(g, validate=False), eta(rigid_factor(g.source)))
        report.expect(pseudo_equal(restricted, factored), "adjunction.eta_star_factorization",
                      g.name, "eta*(G) differs from jG . eta")
        back = rigidify(restricted, validate=False)
        report.expect(multifunctor_equal(back, g), "adjunction.roundtrip_symmetric", g.name,
                      "phi(eta*(G)) differs from G")
    except MulticohException as e:
        report.fail("adjunction.roundtrip_symmetric", g.name, str(e))
    return report


def _pseudo_task(f: PseudoSymMultiFunctor) -> Report:
    """``phi(F)`` is symmetric, restricts back to F, and ``psi(F) . eta = eta . F``."""
    report = Report(f.name)
    try:
        rigid = rigidify(f, validate=False)
        sub = check_multifunctor(rigid)
        report.expect(sub.passed, "adjunction.phi_symmetric", f.name, _first_problem(sub))
        report.expect(pseudo_equal(eta_star(rigid), f), "adjunction.roundtrip_pseudo", f.name,
                      "eta*(phi(F)) differs from F")
    except MulticohException as e:
        report.fail("adjunction.roundtrip_pseudo", f.name, str(e))
        return report
    try:
        around = compose_pseudo(include_j(psi_1cell(f), validate=False), eta(f.source))
        report.expect(pseudo_equal(around, compose_pseudo(eta(f.target), f)),
                      "adjunction.eta_naturality", f.name, "psi(F) . eta_M differs from eta_N . F")
    except MulticohException as e:
        report.fail("adjunction.eta_naturality", f.name, str(e))
    return report


def _symmetric_task(f: MultiFunctor) -> Report:
    """``psi(jF) = F x 1`` and ``pi_N . psi(jF) = F . pi_M``."""
    report = Report(f.name)
    try:
        psi_f = psi_1cell(include_j(f, validate=False))
        e = barratt_eccles(f.source.arity_bound)
        report.expect(multifunctor_equal(psi_f, product_multifunctor(f, identity_multifunctor(e))),
                      "adjunction.psi_j", f.name, "psi(jF) differs from F x 1")
        report.expect(
            multifunctor_equal(compose_multifunctor(pi(f.target), psi_f),
                               compose_multifunctor(f, pi(f.source))),
            "adjunction.pi_naturality", f.name, "pi_N . psi(jF) differs from F . pi_M")
    except MulticohException as e:
        report.fail("adjunction.psi_j", f.name, str(e))
    return report


def _rigid_nat_task(t: MultiNatTrans) -> Report:
    report = Report(t.name)
    try:
        back = rigidify_nat(eta_star_nat(t), validate=False)
        report.expect(multinat_equal(back, t), "adjunction.roundtrip_symmetric_2cell", t.name,
                      "phi(eta*(theta)) differs from theta")
    except MulticohException as e:
        report.fail("adjunction.roundtrip_symmetric_2cell", t.name, str(e))
    return report


def _pseudo_nat_task(t: PseudoSymMultiNatTrans) -> Report:
    report = Report(t.name)
    try:
        back = eta_star_nat(rigidify_nat(t, validate=False))
        report.expect(pseudo_nat_equal(back, t), "adjunction.roundtrip_pseudo_2cell", t.name,
                      "eta*(phi(theta)) differs from theta")
        sub = check_multinat(psi_2cell(t))
        report.expect(sub.passed, "adjunction.psi_2cell", t.name, _first_problem(sub))
    except MulticohException as e:
        report.fail("adjunction.roundtrip_pseudo_2cell", t.name, str(e))
    return report


def _triangle_task(m: FinMulticategory) -> Report:
    """Both triangle identities at m, and ``psi(eta_M) = 1 x delta``."""
    report = Report(m.name)
    try:
        unit_side = compose_pseudo(include_j(pi(m), validate=False), eta(m))
        report.expect(pseudo_equal(unit_side, identity_pseudo(m)), "adjunction.triangle_unit",
                      m.name, "j(pi_M) . eta_M is not the identity")
        psi_eta = psi_1cell(eta(m))
        report.expect(multifunctor_equal(psi_eta, one_times_delta(m)), "adjunction.psi_eta",
                      m.name, "psi(eta_M) differs from 1 x delta")
        report.expect(
            multifunctor_equal(compose_multifunctor(pi(with_e(m)), psi_eta),
                               identity_multifunctor(with_e(m))),
            "adjunction.triangle_counit", m.name, "pi_ME . psi(eta_M) is not the identity")
    except MulticohException as e:
        report.fail("adjunction.triangle_unit", m.name, str(e))
    return report


def check_adjunction(m: FinMulticategory, n: FinMulticategory, corpus: Corpus,
                     max_workers: int = 1, triangles: bool = True) -> Report:
    """
    Verify the 2-adjunction between pseudo symmetric and rigid cells from m to n.

    Covers the round trips on every 1-cell and 2-cell of the corpus between m and n, the
    triangle identities at m and n, and strict naturality of eta and pi. An empty corpus
    still checks the triangles unless ``triangles`` is off.
    """
    scoped = corpus.between(m, n)
    tasks: List[Callable[[], Report]] = []
    if triangles:
        tasks.append(lambda: _triangle_task(m))
        if n is not m:
            tasks.append(lambda: _triangle_task(n))
    tasks += [lambda g=g: _rigid_task(g) for g in scoped.rigid]
    tasks += [lambda f=f: _pseudo_task(f) for f in scoped.pseudo]
    tasks += [lambda f=f: _symmetric_task(f) for f in scoped.symmetric]
    tasks += [lambda t=t: _rigid_nat_task(t) for t in scoped.rigid_nats]
    tasks += [lambda t=t: _pseudo_nat_task(t) for t in scoped.pseudo_nats]

    report = Report(f"adjunction {m.name} -> {n.name}")
    report.extend(fan_out(tasks, max_workers))
    logger.info(f"adjunction {m.name} -> {n.name}: {len(scoped)} cells, "
                f"{len(report.violations)} violations")
    return report


# ---------------------------------------------------------------------------
# The 2-category of rigid cells
# ---------------------------------------------------------------------------

def _rigid_chains(rigid: Sequence[MultiFunctor]) -> Iterator[Tuple[MultiFunctor, MultiFunctor]]:
    for f in rigid:
        for g in rigid:
            if same_multicat(f.target, rigid_factor(g.source)):
                yield f, g


def _pseudo_chains(
    pseudo: Sequence[PseudoSymMultiFunctor],
) -> Iterator[Tuple[PseudoSymMultiFunctor, PseudoSymMultiFunctor]]:
    for f in pseudo:
        for g in pseudo:
            if same_multicat(f.target, g.source):
                yield f, g


def check_d_category(corpus: Corpus, max_pairs: int = 40, max_triples: int = 20) -> Report:
    """
    Units and associativity of ``d_compose`` on the rigid cells, and
    ``phi(G . F) = phi(G) o phi(F)`` on composable pseudo cells, and the same for
    horizontal composites of pseudo transformations.

    The number of composable pairs and triples examined is capped, in corpus order.
    """
    report = Report("d-category")
    for g in corpus.rigid:
        try:
            m, n = _rigid_ends(g)
            report.expect(multifunctor_equal(d_compose(g, d_identity(m)), g),
                          "d_category.unit", g.name, "G o pi_M differs from G")
            report.expect(multifunctor_equal(d_compose(d_identity(n), g), g),
                          "d_category.unit", g.name, "pi_N o G differs from G")
        except MulticohException as e:
            report.fail("d_category.unit", g.name, str(e))

    triples = ((f, g, h) for f, g in _rigid_chains(corpus.rigid)
               for h in corpus.rigid if same_multicat(g.target, rigid_factor(h.source)))
    for f, g, h in islice(triples, max_triples):
        where = f"{h.name} o {g.name} o {f.name}"
        try:
            lhs = d_compose(h, d_compose(g, f))
            rhs = d_compose(d_compose(h, g), f)
            report.expect(multifunctor_equal(lhs, rhs), "d_category.associativity", where)
        except MulticohException as e:
            report.fail("d_category.associativity", where, str(e))

    for f, g in islice(_pseudo_chains(corpus.pseudo), max_pairs):
        where = f"{g.name} . {f.name}"
        try:
            lhs = rigidify(compose_pseudo(g, f), validate=False)
            rhs = d_compose(rigidify(g, validate=False), rigidify(f, validate=False))
            report.expect(multifunctor_equal(lhs, rhs), "d_category.phi_composition", where)
        except MulticohException as e:
            report.fail("d_category.phi_composition", where, str(e))

    nat_pairs = ((t, z) for t in corpus.pseudo_nats for z in corpus.pseudo_nats
                 if same_multicat(t.source.target, z.source.source))
    for t, z in islice(nat_pairs, max_pairs):
        where = f"{z.name} * {t.name}"
        try:
            lhs = rigidify_nat(horiz_compose_pseudo(z, t), validate=False)
            rhs = d_compose_nat(rigidify_nat(z, validate=False), rigidify_nat(t, validate=False))
            report.expect(multinat_equal(lhs, rhs), "d_category.phi_2cell_composition", where)
        except MulticohException as e:
            report.fail("d_category.phi_2cell_composition", where, str(e))
    logger.info(f"d-category: {len(report.violations)} violations")
    return report


def psi_preserves_composition(corpus: Corpus, max_pairs: int = 40) -> Report:
    """``psi(G . F) = psi(G) . psi(F)`` on composable pseudo cells and ``psi(1) = 1``."""
    report = Report("psi functoriality")
    sources: List[FinMulticategory] = []
    for f in corpus.pseudo:
        if not any(s is f.source for s in sources):
            sources.append(f.source)
    for m in sources:
        try:
            report.expect(multifunctor_equal(psi_1cell(identity_pseudo(m)),
                                             identity_multifunctor(with_e(m))),
                          "adjunction.psi_identity", m.name)
        except MulticohException as e:
            report.fail("adjunction.psi_identity", m.name, str(e))
    for f, g in islice(_pseudo_chains(corpus.pseudo), max_pairs):
        where = f"{g.name} . {f.name}"
        try:
            lhs = psi_1cell(compose_pseudo(g, f))
            rhs = compose_multifunctor(psi_1cell(g), psi_1cell(f))
            report.expect(multifunctor_equal(lhs, rhs), "adjunction.psi_composition", where)
        except MulticohException as e:
            report.fail("adjunction.psi_composition", where, str(e))
    return report


def check_corpus(corpus: Corpus, max_workers: int = 1) -> Report:
    """``check_adjunction`` for every pair in the corpus plus the composition checks."""
    report = Report(f"corpus of {len(corpus)} cells")
    seen: List[FinMulticategory] = []
    for pair in corpus.pairs():
        for m in pair:
            if not any(s is m for s in seen):
                seen.append(m)
    report.extend(fan_out([lambda m=m: _triangle_task(m) for m in seen], max_workers))
    for m, n in corpus.pairs():
        report.merge(check_adjunction(m, n, corpus, max_workers, triangles=False))
    report.merge(check_d_category(corpus))
    report.merge(psi_preserves_composition(corpus))
    return report


# ---------------------------------------------------------------------------
# Generated corpora
# ---------------------------------------------------------------------------

def multiplication_map(k: int, j: int, c: int, arity_bound: int) -> MultiFunctor:
    """
    ``End(Z/k) -> End(Z/j)``, ``x -> c x``; needs ``c k = 0 mod j``.

    Every hom of either side has at most one cell, so the map is a symmetric multifunctor.
    """
    return MultiFunctor(
        end_of_monoid(cyclic_monoid(k), arity_bound),
        end_of_monoid(cyclic_monoid(j), arity_bound),
        lambda a: str((c * int(a)) % j),
        lambda sig, x: STAR,
        lambda sig, mor: (STAR, STAR),
        name=f"{c}x:Z/{k}->Z/{j}",
    )


def scaling_map(k: int, c: int, arity_bound: int) -> MultiFunctor:
    """``x -> c x`` on ``unary_monoid(Z/k)``; symmetric, since every cell is unary."""
    m = unary_monoid(cyclic_monoid(k), arity_bound)

    def scale(x):
        return str((c * int(x)) % k)

    return MultiFunctor(m, m, lambda a: a, lambda sig, x: scale(x),
                        lambda sig, mor: (scale(mor[0]), scale(mor[1])), name=f"{c}x:BZ/{k}")


def translation(f: MultiFunctor, element: str) -> MultiNatTrans:
    """``f => f`` with every component the unary cell ``element`` of a ``unary_monoid``."""
    return MultiNatTrans(f, f, {a: element for a in f.source.objects}, name=f"+{element}")


def unary_cells(arity_bound: int, k: int = UNARY_ORDER) -> Corpus:
    """
    Cells on ``unary_monoid(Z/k)`` with non-identity transformations: scalings, their
    rigid counterparts ``S . pi`` and translations of both.
    """
    scalings = [scaling_map(k, c, arity_bound) for c in (1, 2, 3)]
    group = scalings[0].source
    rigid = [compose_multifunctor(s, pi(group)) for s in scalings]
    return Corpus(
        rigid=rigid,
        symmetric=scalings,
        rigid_nats=[translation(g, "2") for g in rigid],
        pseudo_nats=[include_j_nat(translation(s, e)) for s in scalings for e in ("1", "3")],
    )


def monoid_maps(arity_bound: int, orders: Sequence[int] = MONOID_ORDERS) -> List[MultiFunctor]:
    return [multiplication_map(k, j, c, arity_bound)
            for k in orders for j in orders for c in range(j) if (c * k) % j == 0]


def e_automorphisms(arity_bound: int) -> List[MultiFunctor]:
    """The identity and the reversal automorphism of ``barratt_eccles(N)``."""
    return [identity_multifunctor(barratt_eccles(arity_bound)),
            reversal_automorphism(arity_bound)]


def generate_symmetric_functors(arity_bound: int,
                                orders: Sequence[int] = MONOID_ORDERS) -> List[MultiFunctor]:
    """
    The pool of symmetric ``G: M x E -> N`` built from the builders: ``H . pi_M`` and
    ``H x A`` for monoid maps H and automorphisms A of E, ``A . pr_E`` out of every
    builder, and ``A x A'`` on ``E x E``.
    """
    e = barratt_eccles(arity_bound)
    autos = e_automorphisms(arity_bound)
    maps = monoid_maps(arity_bound, orders)
    pool: List[MultiFunctor] = []
    for h in maps:
        pool.append(compose_multifunctor(h, pi(h.source)))
    for h in maps:
        pool.extend(product_multifunctor(h, a) for a in autos)
    sources = [end_of_monoid(cyclic_monoid(k), arity_bound) for k in orders]
    sources += [assoc_operad(arity_bound), terminal_operad(arity_bound), e]
    for m in sources:
        pool.extend(compose_multifunctor(a, projection(m, e, side=1)) for a in autos)
    pool.extend(product_multifunctor(a, b) for a in autos for b in autos)
    return pool


def generate_symmetric_corpus(seed: int, size: int, arity_bound: int,
                              orders: Sequence[int] = MONOID_ORDERS) -> List[MultiFunctor]:
    """
    ``size`` functors drawn without replacement from ``generate_symmetric_functors``;
    the whole pool when it is smaller.
    """
    pool = generate_symmetric_functors(arity_bound, orders)
    if size >= len(pool):
        logger.info(f"corpus size {size} covers the whole pool of {len(pool)}")
        return pool
    return random.Random(seed).sample(pool, size)


def pseudo_corpus(rigid: Sequence[MultiFunctor], symmetric: Sequence[MultiFunctor],
                  multicats: Sequence[FinMulticategory]) -> List[PseudoSymMultiFunctor]:
    """``eta*(G)`` for rigid G, ``jF`` for symmetric F and ``eta_M`` for each M."""
    found = [eta_star(g) for g in rigid]
    found += [include_j(f, validate=False) for f in symmetric]
    found += [eta(m) for m in multicats]
    return found


def build_corpus(seed: int, size: int, arity_bound: int,
                 orders: Sequence[int] = MONOID_ORDERS,
                 multicats: Optional[Sequence[FinMulticategory]] = None) -> Corpus:
    """
    A corpus for the adjunction demo: ``size`` generated rigid functors, the monoid maps
    and E automorphisms, and the ``unary_cells``. The builder homs of unary cells are
    trivial, so their transformations are identities; the unary cells add translations.
    """
    extra = unary_cells(arity_bound)
    rigid = generate_symmetric_corpus(seed, size, arity_bound, orders) + extra.rigid
    symmetric = monoid_maps(arity_bound, orders) + e_automorphisms(arity_bound) + extra.symmetric
    if multicats is None:
        multicats = [assoc_operad(arity_bound), barratt_eccles(arity_bound),
                     end_of_monoid(cyclic_monoid(orders[0]), arity_bound)]
    pseudo = pseudo_corpus(rigid, symmetric, multicats)
    corpus = Corpus(
        rigid=rigid,
        pseudo=pseudo,
        symmetric=symmetric,
        rigid_nats=[identity_multinat(g) for g in rigid] + extra.rigid_nats,
        pseudo_nats=extra.pseudo_nats + [identity_pseudo_nat(f) for f in pseudo],
    )
    logger.debug(f"built corpus: {len(rigid)} rigid, {len(pseudo)} pseudo, "
                 f"{len(symmetric)} symmetric")
    return corpus
