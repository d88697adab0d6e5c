"""
Builders for example multicategories and the product construction.

Set-multicategories (hom sets instead of hom categories) are lifted to Cat-multicategories
in two ways: ``discrete_multicat`` (discrete homs) and ``chaotic_E`` (chaotic homs, a
unique 2-cell between any two parallel 1-cells). Operad builders use the single object
``"*"``.

- ``terminal_operad(N)``: every hom is the terminal category;
- ``assoc_operad(N)``: hom at arity n is discrete on the permutations of degree n, gamma is
  the block permutation and the action is right multiplication;
- ``barratt_eccles(N)``: the chaotic lift of ``assoc_operad``; its 2-cells are the pairs
  ``(sigma, tau)``, the unique arrow ``sigma -> tau``;
- ``end_of_monoid(mon, N)``: the endomorphism multicategory of a finite commutative monoid
  seen as a discrete symmetric monoidal category.
- ``unary_monoid(mon, N)``: the monoid as a one-object multicategory whose only cells are
  unary, one per element; its unary cells carry non-identity transformations.

Builders are cached per arguments, so the same call returns the same instance.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from multicoh.core.fincat import EMPTY, Category, ChaoticCat, DiscreteCat, ProductCat
from multicoh.core.perm import Perm, all_perms, block, compose, identity
from multicoh.core.report import Report, witness
from multicoh.multicat.base import (
    Cell,
    FinMulticategory,
    Obj,
    Signature,
    pair_signature,
    split_signature,
)
from multicoh.utils.exceptions import (
    ArityBoundMismatch,
    InvalidInput,
    InvalidSetMulticat,
    NotCommutative,
)


logger = logging.getLogger(__name__)

STAR = "*"


# ---------------------------------------------------------------------------
# Commutative monoids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinCommMonoid:
    """
    A finite monoid given by its operation table.

    Attributes:
        carrier: Elements, in a fixed order.
        table: ``((a, b), a + b)`` entries for every ordered pair.
        unit: The neutral element.
    """

    name: str
    carrier: Tuple[Obj, ...]
    table: Tuple[Tuple[Tuple[Obj, Obj], Obj], ...]
    unit: Obj
    _op: Dict[Tuple[Obj, Obj], Obj] = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_op", dict(self.table))

    def mul(self, a: Obj, b: Obj) -> Obj:
        try:
            return self._op[(a, b)]
        except KeyError:
            raise InvalidInput(f"{self.name}: no product recorded for ({a!r}, {b!r})") from None

    def sum(self, xs: Sequence[Obj]) -> Obj:
        """Iterated product; the empty sum is the unit."""
        total = self.unit
        for x in xs:
            total = self.mul(total, x)
        return total


def cyclic_monoid(k: int) -> FinCommMonoid:
    """
    Integers mod k under addition, elements named ``"0"`` .. ``"k-1"``.

    >>> cyclic_monoid(3).sum(["1", "2"])
    '0'
    """
    if k < 1:
        raise InvalidInput(f"cyclic monoid needs a positive order, got {k}")
    carrier = tuple(str(i) for i in range(k))
    table = tuple(((str(a), str(b)), str((a + b) % k)) for a in range(k) for b in range(k))
    return FinCommMonoid(f"Z/{k}", carrier, table, "0")


def check_comm_monoid(mon: FinCommMonoid) -> Report:
    """Check closure, unit, associativity and commutativity of the table."""
    report = Report(f"monoid {mon.name}")
    elements = set(mon.carrier)
    report.expect(mon.unit in elements, "monoid.closure", witness(mon.unit), "unit not in carrier")
    for a, b in product(mon.carrier, repeat=2):
        ab = mon._op.get((a, b))
        report.expect(ab in elements, "monoid.closure", witness(a, b), f"{ab!r} not in carrier")
    if report.failures_for("monoid.closure"):
        return report

    for a in mon.carrier:
        report.expect(mon.mul(mon.unit, a) == a == mon.mul(a, mon.unit), "monoid.unit",
                      witness(a))
    for a, b in product(mon.carrier, repeat=2):
        report.expect(mon.mul(a, b) == mon.mul(b, a), "monoid.commutativity", witness(a, b))
    for a, b, c in product(mon.carrier, repeat=3):
        report.expect(mon.mul(mon.mul(a, b), c) == mon.mul(a, mon.mul(b, c)),
                      "monoid.associativity", witness(a, b, c))
    return report


# ---------------------------------------------------------------------------
# Set-multicategories
# ---------------------------------------------------------------------------

class SetMulticategory(ABC):
    """A multicategory with hom sets, given by formulas."""

    name: str = "set-multicategory"

    def __init__(self, arity_bound: int):
        self.arity_bound = arity_bound

    @property
    @abstractmethod
    def objects(self) -> Tuple[Obj, ...]:
        """Object ids."""

    @abstractmethod
    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        """Elements of the hom set, in a fixed order."""

    @abstractmethod
    def unit(self, a: Obj) -> Cell:
        """Unit element of ``hom(a; a)``."""

    @abstractmethod
    def compose(self, outer: Signature, inners: Sequence[Signature], f: Cell,
                gs: Sequence[Cell]) -> Cell:
        """gamma on elements."""

    @abstractmethod
    def act(self, sig: Signature, sigma: Perm, f: Cell) -> Cell:
        """Right action of sigma on an element of ``hom(sig)``."""

    def nonempty_signatures(self) -> List[Signature]:
        found = []
        for n in range(self.arity_bound + 1):
            for inputs in product(self.objects, repeat=n):
                for b in self.objects:
                    sig = Signature(inputs, b)
                    if self.hom_set(sig):
                        found.append(sig)
        return found


class CommSetOperad(SetMulticategory):
    """The commutative operad: one operation of every arity."""

    name = "Comm"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return (STAR,)

    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        return (STAR,)

    def unit(self, a: Obj) -> Cell:
        return STAR

    def compose(self, outer, inners, f, gs) -> Cell:
        return STAR

    def act(self, sig, sigma, f) -> Cell:
        return STAR


class AssocSetOperad(SetMulticategory):
    """The associative operad: arity n operations are the permutations of degree n."""

    name = "Ass"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return (STAR,)

    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        return tuple(all_perms(sig.arity))

    def unit(self, a: Obj) -> Cell:
        return identity(1)

    def compose(self, outer, inners, f, gs) -> Cell:
        return block(f, list(gs))

    def act(self, sig, sigma, f) -> Cell:
        return compose(f, sigma)


class MonoidEndSet(SetMulticategory):
    """
    Endomorphisms of a discrete commutative monoid: ``hom(<a>; b)`` is a point when
    ``a_1 + ... + a_n = b`` and empty otherwise.
    """

    def __init__(self, monoid: FinCommMonoid, arity_bound: int):
        super().__init__(arity_bound)
        self.monoid = monoid
        self.name = f"End({monoid.name})"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self.monoid.carrier

    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        return (STAR,) if self.monoid.sum(sig.inputs) == sig.output else ()

    def unit(self, a: Obj) -> Cell:
        return STAR

    def compose(self, outer, inners, f, gs) -> Cell:
        return STAR

    def act(self, sig, sigma, f) -> Cell:
        return STAR

    def nonempty_signatures(self) -> List[Signature]:
        return [
            Signature(inputs, self.monoid.sum(inputs))
            for n in range(self.arity_bound + 1)
            for inputs in product(self.monoid.carrier, repeat=n)
        ]


class MonoidUnarySet(SetMulticategory):
    """A commutative monoid as unary operations on one object; gamma is the product."""

    def __init__(self, monoid: FinCommMonoid, arity_bound: int):
        super().__init__(arity_bound)
        self.monoid = monoid
        self.name = f"B{monoid.name}"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return (STAR,)

    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        return self.monoid.carrier if sig.arity == 1 else ()

    def unit(self, a: Obj) -> Cell:
        return self.monoid.unit

    def compose(self, outer, inners, f, gs) -> Cell:
        return self.monoid.sum([f, *gs])

    def act(self, sig, sigma, f) -> Cell:
        return f


class ProductSetMulticategory(SetMulticategory):
    """Componentwise product; objects and elements are pairs."""

    def __init__(self, left: SetMulticategory, right: SetMulticategory):
        if left.arity_bound != right.arity_bound:
            raise ArityBoundMismatch(
                f"{left.name} has bound {left.arity_bound}, {right.name} has {right.arity_bound}")
        super().__init__(left.arity_bound)
        self.left, self.right = left, right
        self.name = f"{left.name} x {right.name}"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return tuple(product(self.left.objects, self.right.objects))

    def hom_set(self, sig: Signature) -> Tuple[Cell, ...]:
        s, t = split_signature(sig)
        return tuple(product(self.left.hom_set(s), self.right.hom_set(t)))

    def unit(self, a: Obj) -> Cell:
        return (self.left.unit(a[0]), self.right.unit(a[1]))

    def compose(self, outer, inners, f, gs) -> Cell:
        (lo, ro), split = split_signature(outer), [split_signature(s) for s in inners]
        return (
            self.left.compose(lo, [s[0] for s in split], f[0], [g[0] for g in gs]),
            self.right.compose(ro, [s[1] for s in split], f[1], [g[1] for g in gs]),
        )

    def act(self, sig, sigma, f) -> Cell:
        s, t = split_signature(sig)
        return (self.left.act(s, sigma, f[0]), self.right.act(t, sigma, f[1]))

    def nonempty_signatures(self) -> List[Signature]:
        return _paired_signatures(self.left.nonempty_signatures(),
                                  self.right.nonempty_signatures())


def _paired_signatures(left: Sequence[Signature], right: Sequence[Signature]) -> List[Signature]:
    by_arity: Dict[int, List[Signature]] = {}
    for sig in right:
        by_arity.setdefault(sig.arity, []).append(sig)
    return [pair_signature(s, t) for s in left for t in by_arity.get(s.arity, ())]


def comm_set_operad(arity_bound: int) -> CommSetOperad:
    return CommSetOperad(arity_bound)


def assoc_set_operad(arity_bound: int) -> AssocSetOperad:
    return AssocSetOperad(arity_bound)


def monoid_end_set(monoid: FinCommMonoid, arity_bound: int) -> MonoidEndSet:
    return MonoidEndSet(monoid, arity_bound)


def product_set_multicat(left: SetMulticategory, right: SetMulticategory) -> ProductSetMulticategory:
    return ProductSetMulticategory(left, right)


# ---------------------------------------------------------------------------
# Lifts to Cat
# ---------------------------------------------------------------------------

class SetBasedMulticategory(FinMulticategory):
    """
    A Set-multicategory with each hom set replaced by the discrete or the chaotic category
    on it. In both cases a 2-cell is a pair ``(x, y)`` of parallel cells and the structure
    maps act on the two ends separately.
    """

    def __init__(self, set_multicat: SetMulticategory, chaotic: bool, name: str = ""):
        super().__init__(set_multicat.arity_bound)
        self.set_multicat = set_multicat
        self.chaotic = chaotic
        self.name = name or (f"E{set_multicat.name}" if chaotic else set_multicat.name)

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self.set_multicat.objects

    def _hom(self, sig: Signature) -> Category:
        cells = self.set_multicat.hom_set(sig)
        if not cells:
            return EMPTY
        return ChaoticCat(cells) if self.chaotic else DiscreteCat(cells)

    def _find_nonempty(self) -> List[Signature]:
        return self.set_multicat.nonempty_signatures()

    def unit(self, a: Obj) -> Cell:
        return self.set_multicat.unit(a)

    def act(self, sig: Signature, sigma: Perm, x: Cell, two_cell: bool = False) -> Cell:
        sm = self.set_multicat
        if two_cell:
            return (sm.act(sig, sigma, x[0]), sm.act(sig, sigma, x[1]))
        return sm.act(sig, sigma, x)

    def compose_cells(self, outer, inners, f, gs, two_cell=False) -> Cell:
        sm = self.set_multicat
        if two_cell:
            return (
                sm.compose(outer, inners, f[0], [g[0] for g in gs]),
                sm.compose(outer, inners, f[1], [g[1] for g in gs]),
            )
        return sm.compose(outer, inners, f, gs)


def discrete_multicat(sm: SetMulticategory) -> SetBasedMulticategory:
    """The Cat-multicategory with discrete homs on the hom sets of sm."""
    return SetBasedMulticategory(sm, chaotic=False)


def chaotic_E(sm: SetMulticategory) -> SetBasedMulticategory:
    """
    The chaotic lift of a Set-multicategory.

    Raises:
        InvalidSetMulticat: If sm fails the multicategory axioms.
    """
    from multicoh.multicat.checks import check_multicat

    report = check_multicat(discrete_multicat(sm))
    if not report.passed:
        first = report.violations[0]
        raise InvalidSetMulticat(
            f"{sm.name} is not a multicategory: {len(report.violations)} violations, "
            f"first {first.axiom} at {first.witness}")
    return SetBasedMulticategory(sm, chaotic=True)


def is_barratt_eccles(m: FinMulticategory) -> bool:
    return (isinstance(m, SetBasedMulticategory) and m.chaotic
            and isinstance(m.set_multicat, AssocSetOperad))


@lru_cache(maxsize=None)
def terminal_operad(arity_bound: int) -> SetBasedMulticategory:
    """One object, every hom the terminal category."""
    return SetBasedMulticategory(CommSetOperad(arity_bound), chaotic=False, name="Comm")


@lru_cache(maxsize=None)
def assoc_operad(arity_bound: int) -> SetBasedMulticategory:
    return SetBasedMulticategory(AssocSetOperad(arity_bound), chaotic=False, name="Ass")


@lru_cache(maxsize=None)
def barratt_eccles(arity_bound: int) -> SetBasedMulticategory:
    """The chaotic lift of the associative operad, built without re-validating Ass."""
    return SetBasedMulticategory(AssocSetOperad(arity_bound), chaotic=True, name="ESigma")


@lru_cache(maxsize=None)
def end_of_monoid(monoid: FinCommMonoid, arity_bound: int) -> SetBasedMulticategory:
    """
    Raises:
        NotCommutative: If the table is not commutative.
        InvalidInput: If it fails closure, unit or associativity.
    """
    report = check_comm_monoid(monoid)
    if report.failures_for("monoid.commutativity"):
        raise NotCommutative(
            f"{monoid.name} is not commutative at {report.first_witness('monoid.commutativity')}")
    if not report.passed:
        first = report.violations[0]
        raise InvalidInput(f"{monoid.name} is not a monoid: {first.axiom} at {first.witness}")
    m = SetBasedMulticategory(MonoidEndSet(monoid, arity_bound), chaotic=False)
    logger.debug(f"built {m.name} with N={arity_bound}")
    return m


@lru_cache(maxsize=None)
def unary_monoid(monoid: FinCommMonoid, arity_bound: int) -> SetBasedMulticategory:
    """
    Raises:
        NotCommutative: If the table is not commutative.
    """
    report = check_comm_monoid(monoid)
    if not report.passed:
        raise NotCommutative(f"{monoid.name} is not a commutative monoid: "
                             f"{report.violations[0].axiom}")
    return SetBasedMulticategory(MonoidUnarySet(monoid, arity_bound), chaotic=False)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

class ProductMulticategory(FinMulticategory):
    """
    ``M x N``: objects are pairs, ``hom(<(a, c)>; (b, d)) = M(<a>; b) x N(<c>; d)``, and
    units, action and gamma are componentwise.
    """

    def __init__(self, left: FinMulticategory, right: FinMulticategory):
        if left.arity_bound != right.arity_bound:
            raise ArityBoundMismatch(
                f"{left.name} has bound {left.arity_bound}, {right.name} has {right.arity_bound}")
        super().__init__(left.arity_bound)
        self.factors = (left, right)
        self.name = f"{left.name} x {right.name}"

    @property
    def objects(self) -> Tuple[Obj, ...]:
        left, right = self.factors
        return tuple(product(left.objects, right.objects))

    def _hom(self, sig: Signature) -> Category:
        left, right = self.factors
        s, t = split_signature(sig)
        return ProductCat([left.hom(s), right.hom(t)])

    def _find_nonempty(self) -> List[Signature]:
        left, right = self.factors
        return _paired_signatures(left.nonempty_signatures(), right.nonempty_signatures())

    def unit(self, a: Obj) -> Cell:
        left, right = self.factors
        return (left.unit(a[0]), right.unit(a[1]))

    def act(self, sig: Signature, sigma: Perm, x: Cell, two_cell: bool = False) -> Cell:
        left, right = self.factors
        s, t = split_signature(sig)
        return (left.act(s, sigma, x[0], two_cell), right.act(t, sigma, x[1], two_cell))

    def compose_cells(self, outer, inners, f, gs, two_cell=False) -> Cell:
        left, right = self.factors
        lo, ro = split_signature(outer)
        split = [split_signature(s) for s in inners]
        return (
            left.compose_cells(lo, tuple(s[0] for s in split), f[0], tuple(g[0] for g in gs),
                               two_cell),
            right.compose_cells(ro, tuple(s[1] for s in split), f[1], tuple(g[1] for g in gs),
                                two_cell),
        )


@lru_cache(maxsize=None)
def product_multicat(left: FinMulticategory, right: FinMulticategory) -> ProductMulticategory:
    """
    Raises:
        ArityBoundMismatch: If the arity bounds differ.
    """
    return ProductMulticategory(left, right)


def check_e_preserves_products(s: SetMulticategory, t: SetMulticategory) -> Report:
    """
    Compare ``E(S x T)`` with ``E(S) x E(T)``.

    The comparison is the identity on objects and 1-cells and sends the 2-cell
    ``((x1, x2), (y1, y2))`` to ``((x1, y1), (x2, y2))``. It must be a multifunctor that is
    bijective on every hom category.
    """
    from multicoh.functors.symmetric import MultiFunctor, check_multifunctor

    left = chaotic_E(product_set_multicat(s, t))
    right = product_multicat(chaotic_E(s), chaotic_E(t))
    comparison = MultiFunctor(
        left, right,
        lambda a: a,
        lambda sig, x: x,
        lambda sig, m: ((m[0][0], m[1][0]), (m[0][1], m[1][1])),
        name="E(S x T) -> E(S) x E(T)",
    )
    report = check_multifunctor(comparison)
    report.subject = f"E preserves products: {s.name}, {t.name}"
    report.expect(left.nonempty_signatures() == right.nonempty_signatures(),
                  "construct.e_products", "signatures", "non-empty signatures differ")
    for sig in left.nonempty_signatures():
        source, target = left.hom(sig), right.hom(sig)
        images = {comparison.map_two_cell(sig, m) for m in source.morphisms}
        report.expect(
            set(source.objects) == set(target.objects)
            and len(images) == len(source.morphisms)
            and images == set(target.morphisms),
            "construct.e_products", witness(sig), "comparison is not bijective")
    return report
