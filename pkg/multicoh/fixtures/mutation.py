"""
Seeded single-entry mutations of fixture documents.

A slot is one table entry together with the other ids its hom category allows there.
A mutation replaces the value of one slot by one of those alternatives, so the mutated
document still parses and only the axioms can reject it.
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from multicoh.core.ids import encode_id
from multicoh.core.perm import Perm
from multicoh.fixtures.codec import Document, Fixture, IdDecoder
from multicoh.multicat.base import Signature, cells_of, compose_signature
from multicoh.utils.exceptions import InvalidInput


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mutation:
    """Which entry changed, and from what to what."""
    field: str
    old: str
    new: str

    def __str__(self) -> str:
        return f"{self.field}: {self.old} -> {self.new}"


@dataclass
class _Slot:
    field: str
    old: str
    alternatives: List[str]
    put: Callable[[str], None]


def _ids(c, two_cell: bool) -> List[str]:
    return [encode_id(x) for x in cells_of(c, two_cell)]


def _table_slots(slots: List[_Slot], field: str, table: dict, allowed: Sequence[str]) -> None:
    for key in sorted(table):
        old = table[key]
        alternatives = [v for v in allowed if v != old]
        if alternatives:
            slots.append(_Slot(f"{field}.{key}", old, alternatives,
                               lambda v, t=table, k=key: t.__setitem__(k, v)))


def _multicat_slots(document, m) -> List[_Slot]:
    payload = document.payload
    slots: List[_Slot] = []

    def sig_of(entry) -> Signature:
        return Signature(tuple(entry.inputs), entry.output)

    for i, entry in enumerate(payload.homs):
        allowed = [k.id for k in entry.morphisms]
        for j, comp in enumerate(entry.composition):
            alternatives = [v for v in allowed if v != comp.result]
            if alternatives:
                slots.append(_Slot(f"payload.homs.{i}.composition.{j}", comp.result, alternatives,
                                   lambda v, c=comp: setattr(c, "result", v)))
    for a in sorted(payload.units):
        old = payload.units[a]
        alternatives = [v for v in _ids(m.hom(Signature((a,), a)), False) if v != old]
        if alternatives:
            slots.append(_Slot(f"payload.units.{a}", old, alternatives,
                               lambda v, k=a: payload.units.__setitem__(k, v)))
    for i, entry in enumerate(payload.actions):
        target = m.hom(sig_of(entry).permuted(Perm(tuple(entry.sigma))))
        _table_slots(slots, f"payload.actions.{i}.cells", entry.cells, _ids(target, False))
        _table_slots(slots, f"payload.actions.{i}.morphisms", entry.morphisms, _ids(target, True))
    for i, entry in enumerate(payload.gammas):
        composite = compose_signature(sig_of(entry.outer), [sig_of(s) for s in entry.inners])
        target = m.hom(composite)
        for key, two_cell in (("cells", False), ("morphisms", True)):
            allowed = _ids(target, two_cell)
            for j, value in enumerate(getattr(entry, key)):
                alternatives = [v for v in allowed if v != value.result]
                if alternatives:
                    slots.append(_Slot(f"payload.gammas.{i}.{key}.{j}", value.result,
                                       alternatives, lambda v, x=value: setattr(x, "result", v)))
    return slots


def _functor_slots(document, f) -> List[_Slot]:
    payload = document.payload
    source = IdDecoder(f.source)
    slots: List[_Slot] = []
    for key, two_cell in (("cells", False), ("two_cells", True)):
        for i, entry in enumerate(getattr(payload, key)):
            field = f"payload.{key}.{i}"
            hom = f.target.hom(f.map_signature(source.signature(entry, field)))
            _table_slots(slots, f"{field}.map", entry.map, _ids(hom, two_cell))
    for i, entry in enumerate(getattr(payload, "psi", [])):
        field = f"payload.psi.{i}"
        sig = source.signature(entry, field)
        hom = f.target.hom(f.map_signature(sig).permuted(Perm(tuple(entry.sigma))))
        alternatives = [v for v in _ids(hom, True) if v != entry.value]
        if alternatives:
            slots.append(_Slot(field, entry.value, alternatives,
                               lambda v, x=entry: setattr(x, "value", v)))
    return slots


def _nat_slots(document, t) -> List[_Slot]:
    payload = document.payload
    source = IdDecoder(t.source.source)
    slots: List[_Slot] = []
    for a in sorted(payload.components):
        hom = t.source.target.hom(t.component_signature(source.obj(a, "payload.components")))
        old = payload.components[a]
        alternatives = [v for v in _ids(hom, False) if v != old]
        if alternatives:
            slots.append(_Slot(f"payload.components.{a}", old, alternatives,
                               lambda v, k=a: payload.components.__setitem__(k, v)))
    return slots


def _slots(document: Document, value) -> List[_Slot]:
    if document.kind == "multicat":
        return _multicat_slots(document, value)
    if document.kind in ("multifunctor", "pseudo"):
        return _functor_slots(document, value)
    return _nat_slots(document, value)


def mutable_fields(fixture: Fixture) -> List[str]:
    """Fields that admit a mutation, in document order."""
    return [s.field for s in _slots(fixture.document, fixture.value)]


def mutate(fixture: Fixture, seed: int, slot: Optional[int] = None) -> Tuple[Document, Mutation]:
    """
    Copy the document with one entry replaced.

    Args:
        fixture: A parsed fixture.
        seed: Seeds the choice of slot (unless ``slot`` is given) and of the new value.
        slot: Index into ``mutable_fields``.

    Raises:
        InvalidInput: If no entry admits another value.
    """
    document = fixture.document.model_copy(deep=True)
    slots = _slots(document, fixture.value)
    if not slots:
        raise InvalidInput(f"{fixture.document.name} has no entry with an alternative value")
    rng = random.Random(seed)
    chosen = slots[slot] if slot is not None else rng.choice(slots)
    new = rng.choice(chosen.alternatives)
    chosen.put(new)
    mutation = Mutation(chosen.field, chosen.old, new)
    logger.debug(f"mutated {fixture.document.name}: {mutation}")
    return document, mutation


def mutation_suite(fixture: Fixture, seed: int, count: int) -> List[Tuple[Document, Mutation]]:
    """``count`` mutations at distinct slots (fewer if the document has fewer slots)."""
    total = len(mutable_fields(fixture))
    rng = random.Random(seed)
    chosen = rng.sample(range(total), min(count, total))
    return [mutate(fixture, seed + k, slot=s) for k, s in enumerate(chosen)]
