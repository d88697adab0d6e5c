"""
Finite Cat-enriched multicategories with an arity bound.

A multicategory exposes, for every signature ``(<a_1, ..., a_n>; b)`` with ``n <= N``, a hom
category whose objects are 1-cells and whose morphisms are 2-cells, together with units,
the right action of the symmetric group and the composition gamma. Subclasses provide the
data either as tables (``TableMulticategory``, the form fixture files take) or by formulas
(the builders in ``multicoh.multicat.construct``); checkers only use this interface.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from multicoh.core.fincat import (
    EMPTY, Category, FinCat, FinFunctor, ProductCat, category_equal, composable_pairs,
)
from multicoh.core.ids import encode_id
from multicoh.core.perm import Perm, act_on_list, all_perms, identity
from multicoh.utils.exceptions import DegreeMismatch, UnknownSignature


logger = logging.getLogger(__name__)

Obj = Hashable
Cell = Hashable


@dataclass(frozen=True)
class Signature:
    """Inputs and output of a hom category, ``M(<a>; b)``."""

    inputs: Tuple[Obj, ...]
    output: Obj

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def permuted(self, sigma: Perm) -> "Signature":
        """The signature ``(<a>sigma; b)``."""
        return Signature(act_on_list(sigma, self.inputs), self.output)

    def sort_key(self) -> Tuple[int, str, str]:
        return (self.arity, encode_id(self.inputs), encode_id(self.output))

    def __str__(self) -> str:
        return "(" + ",".join(encode_id(a) for a in self.inputs) + ";" + encode_id(self.output) + ")"


def unary(a: Obj, b: Obj) -> Signature:
    return Signature((a,), b)


def compose_signature(outer: Signature, inners: Sequence[Signature]) -> Signature:
    """
    Signature of ``gamma(f; g_1, ..., g_n)``.

    Raises:
        DegreeMismatch: If the number of inner signatures is not the outer arity.
        UnknownSignature: If an inner output differs from the matching outer input.
    """
    if len(inners) != outer.arity:
        raise DegreeMismatch(f"{outer} needs {outer.arity} inner signatures, got {len(inners)}")
    for j, (b, s) in enumerate(zip(outer.inputs, inners), start=1):
        if s.output != b:
            raise UnknownSignature(f"inner signature {j} {s} does not end at input {encode_id(b)}")
    return Signature(tuple(a for s in inners for a in s.inputs), outer.output)


class FinMulticategory(ABC):
    """
    Access interface of a bounded-arity Cat-multicategory.

    Subclasses implement ``objects``, ``_hom``, ``unit``, ``act`` and ``compose_cells``.
    ``act`` and ``compose_cells`` are evaluated on 1-cells (``two_cell=False``) or on
    2-cells (``two_cell=True``) and assume well-typed arguments; ``act_eval`` and
    ``gamma_eval`` are the validating accessors.
    """

    name: str = "multicategory"

    def __init__(self, arity_bound: int):
        self.arity_bound = arity_bound
        self._hom_cache: Dict[Signature, Category] = {}
        self._nonempty: Optional[List[Signature]] = None

    @property
    @abstractmethod
    def objects(self) -> Tuple[Obj, ...]:
        """Object ids."""

    @abstractmethod
    def _hom(self, sig: Signature) -> Category:
        """Hom category of a validated signature."""

    @abstractmethod
    def unit(self, a: Obj) -> Cell:
        """The unit 1-cell ``1_a`` in ``hom(a; a)``."""

    @abstractmethod
    def act(self, sig: Signature, sigma: Perm, x: Cell, two_cell: bool = False) -> Cell:
        """Right action ``hom(<a>; b) -> hom(<a>sigma; b)`` on a 1-cell or 2-cell."""

    @abstractmethod
    def compose_cells(
        self,
        outer: Signature,
        inners: Sequence[Signature],
        f: Cell,
        gs: Sequence[Cell],
        two_cell: bool = False,
    ) -> Cell:
        """gamma on a tuple of 1-cells or of 2-cells."""

    def validate_signature(self, sig: Signature) -> None:
        """
        Raises:
            UnknownSignature: If the arity exceeds the bound or an object is undeclared.
        """
        if sig.arity > self.arity_bound:
            raise UnknownSignature(f"{sig} exceeds arity bound {self.arity_bound}")
        known = self.object_set
        for a in sig.inputs + (sig.output,):
            if a not in known:
                raise UnknownSignature(f"{sig} names unknown object {encode_id(a)}")

    @cached_property
    def object_set(self) -> frozenset:
        return frozenset(self.objects)

    def hom(self, sig: Signature) -> Category:
        """
        Hom category ``M(<a>; b)``.

        Raises:
            UnknownSignature: If the signature is outside the multicategory.
        """
        cached = self._hom_cache.get(sig)
        if cached is None:
            self.validate_signature(sig)
            cached = self._hom(sig)
            self._hom_cache[sig] = cached
        return cached

    def unit_2cell(self, a: Obj) -> Cell:
        """Identity 2-cell of the unit 1-cell."""
        return self.hom(unary(a, a)).identity(self.unit(a))

    def identity_2cell(self, sig: Signature, f: Cell) -> Cell:
        return self.hom(sig).identity(f)

    def signatures(self, arity: Optional[int] = None) -> Iterator[Signature]:
        """All signatures within the bound, ordered by arity then lexicographically."""
        objects = sorted(self.objects, key=encode_id)
        arities = range(self.arity_bound + 1) if arity is None else [arity]
        for n in arities:
            for inputs in product(objects, repeat=n):
                for b in objects:
                    yield Signature(inputs, b)

    def _find_nonempty(self) -> List[Signature]:
        return [sig for sig in self.signatures() if not self.hom(sig).is_empty()]

    def nonempty_signatures(self) -> List[Signature]:
        """Signatures with a non-empty hom category, in lexicographic order."""
        if self._nonempty is None:
            found = self._find_nonempty()
            self._nonempty = sorted(found, key=Signature.sort_key)
            logger.debug(f"{self.name}: {len(self._nonempty)} non-empty signatures")
        return self._nonempty

    def action(self, sig: Signature, sigma: Perm) -> FinFunctor:
        """The action functor ``hom(sig) -> hom(sig sigma)``."""
        return FinFunctor(
            self.hom(sig),
            self.hom(sig.permuted(sigma)),
            lambda x: self.act(sig, sigma, x),
            lambda m: self.act(sig, sigma, m, two_cell=True),
        )

    def gamma(self, outer: Signature, inners: Sequence[Signature]) -> FinFunctor:
        """gamma as a functor out of ``hom(outer) x hom(inner_1) x ... x hom(inner_n)``."""
        inners = tuple(inners)
        target = self.hom(compose_signature(outer, inners))
        source = ProductCat([self.hom(outer)] + [self.hom(s) for s in inners])
        return FinFunctor(
            source,
            target,
            lambda x: self.compose_cells(outer, inners, x[0], x[1:]),
            lambda m: self.compose_cells(outer, inners, m[0], m[1:], two_cell=True),
        )

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} N={self.arity_bound}>"


def act_eval(m: FinMulticategory, sig: Signature, sigma: Perm, x: Cell,
             two_cell: bool = False) -> Cell:
    """
    Apply the action of sigma to a cell of ``hom(sig)``.

    Raises:
        UnknownSignature: If sig is outside m or x is not a cell of ``hom(sig)``.
        DegreeMismatch: If the degree of sigma is not the arity of sig.
    """
    c = m.hom(sig)
    if sigma.degree != sig.arity:
        raise DegreeMismatch(f"{sigma} cannot act on arity {sig.arity} signature {sig}")
    present = c.has_morphism(x) if two_cell else c.has_object(x)
    if not present:
        raise UnknownSignature(f"{encode_id(x)} is not a {'2-cell' if two_cell else 'cell'} of {sig}")
    return m.act(sig, sigma, x, two_cell)


def gamma_eval(
    m: FinMulticategory,
    outer: Signature,
    f: Cell,
    inners: Sequence[Signature],
    gs: Sequence[Cell],
    two_cell: bool = False,
) -> Cell:
    """
    Compose ``gamma(f; g_1, ..., g_n)`` for 1-cells or 2-cells.

    Raises:
        DegreeMismatch: If the number of inner cells is not the arity of f.
        UnknownSignature: If a signature is outside m, the shapes do not compose, or a
            cell does not belong to its hom category.
    """
    if len(gs) != outer.arity or len(inners) != outer.arity:
        raise DegreeMismatch(f"{outer} takes {outer.arity} inner cells, got {len(gs)}")
    compose_signature(outer, inners)
    for sig, x in zip((outer,) + tuple(inners), (f,) + tuple(gs)):
        c = m.hom(sig)
        present = c.has_morphism(x) if two_cell else c.has_object(x)
        if not present:
            raise UnknownSignature(f"{encode_id(x)} is not a cell of {sig}")
    return m.compose_cells(outer, tuple(inners), f, tuple(gs), two_cell)


def cells_of(c: Category, two_cell: bool) -> Tuple[Cell, ...]:
    return c.morphisms if two_cell else c.objects


def signatures_by_output(m: FinMulticategory) -> Dict[Obj, List[Signature]]:
    index: Dict[Obj, List[Signature]] = {}
    for sig in m.nonempty_signatures():
        index.setdefault(sig.output, []).append(sig)
    return index


def inner_choices(
    index: Dict[Obj, List[Signature]], outputs: Sequence[Obj], budget: int
) -> Iterator[Tuple[Signature, ...]]:
    """Tuples of non-empty signatures ending at the given objects, total arity within budget."""
    if not outputs:
        yield ()
        return
    for s in index.get(outputs[0], ()):
        if s.arity > budget:
            continue
        for rest in inner_choices(index, outputs[1:], budget - s.arity):
            yield (s,) + rest


def composable_shapes(m: FinMulticategory) -> Iterator[Tuple[Signature, Tuple[Signature, ...]]]:
    """Every (outer, inners) with non-empty homs and composite arity within the bound."""
    index = signatures_by_output(m)
    for outer in m.nonempty_signatures():
        for inners in inner_choices(index, outer.inputs, m.arity_bound):
            yield outer, inners


def nested_shapes(
    m: FinMulticategory,
) -> Iterator[Tuple[Signature, Tuple[Signature, ...], Tuple[Signature, ...]]]:
    """Doubly nested shapes (outer, middle, innermost) for the associativity axiom."""
    index = signatures_by_output(m)
    for outer, middle in composable_shapes(m):
        composite = compose_signature(outer, middle)
        for innermost in inner_choices(index, composite.inputs, m.arity_bound):
            yield outer, middle, innermost


def multicat_summary(m: FinMulticategory) -> Dict[int, Dict[str, int]]:
    """Counts of non-empty homs, 1-cells and 2-cells per arity."""
    summary: Dict[int, Dict[str, int]] = {
        n: {"homs": 0, "cells": 0, "two_cells": 0} for n in range(m.arity_bound + 1)
    }
    for sig in m.nonempty_signatures():
        c = m.hom(sig)
        row = summary[sig.arity]
        row["homs"] += 1
        row["cells"] += len(c.objects)
        row["two_cells"] += len(c.morphisms)
    return summary


class TableMulticategory(FinMulticategory):
    """
    A multicategory given by explicit tables.

    Missing hom entries denote empty categories. A missing action table for the
    identity permutation means the identity functor; every other action and every
    gamma on non-empty homs must be present (``check_multicat`` reports gaps).
    """

    def __init__(
        self,
        name: str,
        objects: Sequence[Obj],
        arity_bound: int,
        homs: Dict[Signature, FinCat],
        units: Dict[Obj, Cell],
        actions: Dict[Tuple[Signature, Perm], FinFunctor],
        gammas: Dict[Tuple[Signature, Tuple[Signature, ...]], FinFunctor],
    ):
        super().__init__(arity_bound)
        self.name = name
        self._objects = tuple(objects)
        self.homs = dict(homs)
        self.units = dict(units)
        self.actions = dict(actions)
        self.gammas = dict(gammas)

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self._objects

    def _hom(self, sig: Signature) -> Category:
        return self.homs.get(sig, EMPTY)

    def _find_nonempty(self) -> List[Signature]:
        return [sig for sig, c in self.homs.items() if not c.is_empty()]

    def unit(self, a: Obj) -> Cell:
        try:
            return self.units[a]
        except KeyError:
            raise UnknownSignature(f"no unit recorded for object {encode_id(a)}") from None

    def action(self, sig: Signature, sigma: Perm) -> FinFunctor:
        table = self.actions.get((sig, sigma))
        if table is not None:
            return table
        if sigma == identity(sig.arity):
            c = self.hom(sig)
            return FinFunctor(c, c, lambda x: x, lambda x: x)
        raise UnknownSignature(f"no action table for {sig} and {sigma}")

    def act(self, sig: Signature, sigma: Perm, x: Cell, two_cell: bool = False) -> Cell:
        functor = self.action(sig, sigma)
        return functor.map_morphism(x) if two_cell else functor.map_object(x)

    def gamma(self, outer: Signature, inners: Sequence[Signature]) -> FinFunctor:
        table = self.gammas.get((outer, tuple(inners)))
        if table is None:
            raise UnknownSignature(f"no gamma table for {outer} with inputs "
                                   + ", ".join(str(s) for s in inners))
        return table

    def compose_cells(self, outer, inners, f, gs, two_cell=False):
        functor = self.gamma(outer, inners)
        x = (f,) + tuple(gs)
        return functor.map_morphism(x) if two_cell else functor.map_object(x)


def materialize(m: FinMulticategory, name: Optional[str] = None) -> TableMulticategory:
    """
    Table-backed copy of any multicategory: every non-empty hom, every action and every
    gamma within the bound is evaluated and stored.
    """
    homs: Dict[Signature, FinCat] = {}
    for sig in m.nonempty_signatures():
        c = m.hom(sig)
        homs[sig] = FinCat(
            c.objects,
            {mor: (c.src(mor), c.dst(mor)) for mor in c.morphisms},
            {x: c.identity(x) for x in c.objects},
            {(g, f): c.compose(g, f) for g, f in composable_pairs(c)},
        )

    actions = {}
    for sig in homs:
        for sigma in all_perms(sig.arity):
            actions[(sig, sigma)] = m.action(sig, sigma).tabulate()

    gammas = {}
    for outer, inners in composable_shapes(m):
        gammas[(outer, inners)] = m.gamma(outer, inners).tabulate()

    units = {a: m.unit(a) for a in m.objects if m.hom(unary(a, a)).has_object(m.unit(a))}
    table = TableMulticategory(name or m.name, m.objects, m.arity_bound, homs, units,
                               actions, gammas)
    # tabulated functors point at the copied homs
    for key, functor in list(table.actions.items()):
        sig, sigma = key
        functor.source, functor.target = homs[sig], table.hom(sig.permuted(sigma))
    for (outer, inners), functor in table.gammas.items():
        functor.source = ProductCat([homs[outer]] + [homs[s] for s in inners])
        functor.target = table.hom(compose_signature(outer, inners))
    logger.debug(f"materialized {m.name}: {len(homs)} homs, {len(gammas)} gamma tables")
    return table


def split_signature(sig: Signature) -> Tuple[Signature, Signature]:
    """Components of a signature of a product multicategory (objects are pairs)."""
    left = Signature(tuple(a[0] for a in sig.inputs), sig.output[0])
    right = Signature(tuple(a[1] for a in sig.inputs), sig.output[1])
    return left, right


def pair_signature(left: Signature, right: Signature) -> Signature:
    """Inverse of ``split_signature``."""
    if left.arity != right.arity:
        raise DegreeMismatch(f"cannot pair {left} with {right}")
    return Signature(tuple(zip(left.inputs, right.inputs)), (left.output, right.output))


def multicat_equal(m: FinMulticategory, n: FinMulticategory) -> bool:
    """Table equality: objects, homs, units, actions and gamma, all compared pointwise."""
    if set(m.objects) != set(n.objects) or m.arity_bound != n.arity_bound:
        return False
    if m.nonempty_signatures() != n.nonempty_signatures():
        return False
    for sig in m.nonempty_signatures():
        if not category_equal(m.hom(sig), n.hom(sig)):
            return False
        c = m.hom(sig)
        for sigma in all_perms(sig.arity):
            for two_cell in (False, True):
                for x in cells_of(c, two_cell):
                    if m.act(sig, sigma, x, two_cell) != n.act(sig, sigma, x, two_cell):
                        return False
    if any(m.unit(a) != n.unit(a) for a in m.objects):
        return False
    for outer, inners in composable_shapes(m):
        factors = [m.hom(outer)] + [m.hom(s) for s in inners]
        for two_cell in (False, True):
            for x in product(*(cells_of(c, two_cell) for c in factors)):
                lhs = m.compose_cells(outer, inners, x[0], x[1:], two_cell)
                if lhs != n.compose_cells(outer, inners, x[0], x[1:], two_cell):
                    return False
    return True


def same_multicat(m: FinMulticategory, n: FinMulticategory) -> bool:
    """Identity of instances, falling back to table equality."""
    return m is n or multicat_equal(m, n)
