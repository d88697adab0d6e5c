"""
Reading and writing fixture documents.

Ids in files are strings. Multicategories defined in a file keep those strings as ids;
references to builders resolve to the builder instances, and the strings of a functor
table are decoded against them with ``encode_id``, which is injective on builder ids.
So a fixture that maps into ``barratt_eccles(3)`` yields a functor into the very same
instance the library builds.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Union

from pydantic import ValidationError

from multicoh.core.fincat import FinCat, FinFunctor, ProductCat, composable_pairs
from multicoh.core.ids import encode_id
from multicoh.core.perm import Perm, all_perms
from multicoh.fixtures.schema import (
    DOCUMENT_ADAPTER,
    KINDS,
    ActionEntry,
    CellMapEntry,
    CompositeEntry,
    GammaEntry,
    GammaValue,
    HomEntry,
    MorphismEntry,
    MulticatDocument,
    MulticatPayload,
    MultifunctorDocument,
    FunctorPayload,
    NatDocument,
    NatPayload,
    PseudoDocument,
    PseudoNatDocument,
    PseudoPayload,
    PsiEntry,
    Reference,
    SignatureEntry,
)
from multicoh.functors.pseudo import PseudoSymMultiFunctor, PseudoSymMultiNatTrans
from multicoh.functors.symmetric import MultiFunctor, MultiNatTrans
from multicoh.multicat.base import (
    Cell,
    FinMulticategory,
    Obj,
    Signature,
    TableMulticategory,
    cells_of,
    composable_shapes,
    compose_signature,
)
from multicoh.multicat.construct import (
    AssocSetOperad,
    CommSetOperad,
    MonoidEndSet,
    ProductMulticategory,
    SetBasedMulticategory,
    assoc_operad,
    barratt_eccles,
    cyclic_monoid,
    end_of_monoid,
    product_multicat,
    terminal_operad,
)
from multicoh.utils.exceptions import (
    ArityMismatch,
    DanglingReference,
    MulticohException,
    SchemaError,
)


logger = logging.getLogger(__name__)

Document = Union[MulticatDocument, MultifunctorDocument, PseudoDocument, NatDocument,
                 PseudoNatDocument]
Value = Union[FinMulticategory, MultiFunctor, PseudoSymMultiFunctor, MultiNatTrans]


@dataclass
class Fixture:
    """A validated document and the value built from it."""
    document: Document
    value: Value
    path: Optional[Path] = None

    @property
    def kind(self) -> str:
        return self.document.kind


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------

def _problem(item: dict) -> str:
    loc = list(item["loc"])
    if loc and loc[0] in KINDS:
        loc = loc[1:]
    return f"{'.'.join(str(x) for x in loc) or 'document'}: {item['msg']}"


def validate_document(raw: Any, source: str = "document") -> Document:
    """
    Raises:
        SchemaError: With one ``"field: message"`` problem per failing field.
    """
    try:
        return DOCUMENT_ADAPTER.validate_python(raw)
    except ValidationError as e:
        problems = [_problem(item) for item in e.errors()]
        raise SchemaError(f"{source} does not match the fixture schema:\n  - "
                          + "\n  - ".join(problems), problems) from e


def load_document(path: Union[str, Path]) -> Document:
    """
    Read and validate one fixture document.

    Raises:
        DanglingReference: If the file does not exist.
        SchemaError: If it is not JSON or does not match the schema.
    """
    p = Path(path)
    if not p.exists():
        raise DanglingReference(f"fixture file not found: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        problem = f"document: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        raise SchemaError(f"{p}: {problem}", [problem]) from e
    except (IOError, UnicodeDecodeError) as e:
        raise SchemaError(f"failed to read {p}: {e}", [f"document: {e}"]) from e
    return validate_document(raw, str(p))


def write_document(document: Document, path: Union[str, Path]) -> None:
    p = Path(path)
    p.write_text(document.model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
    logger.info(f"wrote {document.kind} fixture {document.name} to {p}")


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------

class IdDecoder:
    """Maps file strings back to the ids of one multicategory."""

    def __init__(self, m: FinMulticategory):
        self.m = m
        self.objects = {encode_id(a): a for a in m.objects}
        self._cells: Dict[Signature, Dict[str, Cell]] = {}
        self._two_cells: Dict[Signature, Dict[str, Cell]] = {}

    def obj(self, s: str, field: str) -> Obj:
        try:
            return self.objects[s]
        except KeyError:
            raise DanglingReference(f"{field}: object {s!r} is not declared in "
                                    f"{self.m.name}") from None

    def signature(self, entry: SignatureEntry, field: str) -> Signature:
        sig = Signature(tuple(self.obj(a, field) for a in entry.inputs),
                        self.obj(entry.output, field))
        if sig.arity > self.m.arity_bound:
            raise ArityMismatch(f"{field}: {sig} exceeds arity bound {self.m.arity_bound}")
        return sig

    def _index(self, sig: Signature, two_cell: bool) -> Dict[str, Cell]:
        cache = self._two_cells if two_cell else self._cells
        if sig not in cache:
            cache[sig] = {encode_id(x): x for x in cells_of(self.m.hom(sig), two_cell)}
        return cache[sig]

    def cell(self, sig: Signature, s: str, field: str, two_cell: bool = False) -> Cell:
        try:
            return self._index(sig, two_cell)[s]
        except KeyError:
            what = "2-cell" if two_cell else "cell"
            raise DanglingReference(f"{field}: {what} {s!r} is not in {self.m.name}{sig}") from None


def _require(ok: bool, field: str, message: str) -> None:
    if not ok:
        raise DanglingReference(f"{field}: {message}")


def _hom_table(entry: HomEntry, field: str) -> FinCat:
    cells = set(entry.cells)
    morphisms = {m.id: (m.src, m.dst) for m in entry.morphisms}
    for i, m in enumerate(entry.morphisms):
        _require(m.src in cells and m.dst in cells, f"{field}.morphisms.{i}",
                 f"endpoints of {m.id!r} are not cells of the hom")
    for x, mor in entry.identities.items():
        _require(x in cells and mor in morphisms, f"{field}.identities",
                 f"identity {x!r} -> {mor!r} names an undeclared id")
    composition = {}
    for i, c in enumerate(entry.composition):
        _require(all(k in morphisms for k in (c.after, c.before, c.result)),
                 f"{field}.composition.{i}", "composite names an undeclared 2-cell")
        composition[(c.after, c.before)] = c.result
    return FinCat(entry.cells, morphisms, entry.identities, composition)


def build_multicat(document: MulticatDocument) -> TableMulticategory:
    """
    Raises:
        DanglingReference: If a table names an undeclared object, cell or 2-cell.
        ArityMismatch: If a signature exceeds the document's arity bound.
        SchemaError: If a gamma entry does not fit its shape.
    """
    payload = document.payload
    bound = document.arity_bound
    declared = set(payload.objects)

    def signature(entry: SignatureEntry, field: str) -> Signature:
        for a in list(entry.inputs) + [entry.output]:
            _require(a in declared, field, f"object {a!r} is not declared")
        if len(entry.inputs) > bound:
            raise ArityMismatch(f"{field}: arity {len(entry.inputs)} exceeds bound {bound}")
        return Signature(tuple(entry.inputs), entry.output)

    homs = {}
    for i, entry in enumerate(payload.homs):
        field = f"payload.homs.{i}"
        homs[signature(entry, field)] = _hom_table(entry, field)
    table = TableMulticategory(document.name, payload.objects, bound, homs, {}, {}, {})

    for a, u in payload.units.items():
        _require(a in declared, "payload.units", f"object {a!r} is not declared")
        table.units[a] = u

    for i, entry in enumerate(payload.actions):
        field = f"payload.actions.{i}"
        sig = signature(entry, field)
        sigma = Perm(tuple(entry.sigma))
        source, target = table.hom(sig), table.hom(sig.permuted(sigma))
        _require(all(source.has_object(x) and target.has_object(y)
                     for x, y in entry.cells.items()), f"{field}.cells",
                 "maps an undeclared cell")
        _require(all(source.has_morphism(x) and target.has_morphism(y)
                     for x, y in entry.morphisms.items()), f"{field}.morphisms",
                 "maps an undeclared 2-cell")
        table.actions[(sig, sigma)] = FinFunctor(source, target, entry.cells, entry.morphisms)

    for i, entry in enumerate(payload.gammas):
        field = f"payload.gammas.{i}"
        outer = signature(entry.outer, f"{field}.outer")
        inners = tuple(signature(s, f"{field}.inners.{j}") for j, s in enumerate(entry.inners))
        try:
            composite = compose_signature(outer, inners)
        except MulticohException as e:
            problem = f"{field}: {e}"
            raise SchemaError(problem, [problem]) from e
        factors = ProductCat([table.hom(outer)] + [table.hom(s) for s in inners])
        obj_map, mor_map = {}, {}
        for values, out, two_cell in ((entry.cells, obj_map, False),
                                      (entry.morphisms, mor_map, True)):
            for j, v in enumerate(values):
                if len(v.args) != 1 + len(inners):
                    problem = (f"{field}.{'morphisms' if two_cell else 'cells'}.{j}.args: "
                               f"expected {1 + len(inners)} ids, got {len(v.args)}")
                    raise SchemaError(problem, [problem])
                out[tuple(v.args)] = v.result
        table.gammas[(outer, inners)] = FinFunctor(factors, table.hom(composite), obj_map, mor_map)

    logger.debug(f"parsed multicategory {document.name}: {len(homs)} homs")
    return table


def resolve_reference(ref: Reference, base_dir: Path, arity_bound: int,
                      loading: FrozenSet[Path] = frozenset()) -> Value:
    """
    Raises:
        ArityMismatch: If a builder or file has a different arity bound.
        DanglingReference: If a referenced file does not exist.
        SchemaError: If a reference cycles or a file has the wrong kind.
    """
    if ref.builder is not None:
        if ref.arity_bound != arity_bound:
            raise ArityMismatch(f"builder {ref.builder} has bound {ref.arity_bound}, "
                                f"the document has {arity_bound}")
        if ref.builder == "terminal":
            return terminal_operad(arity_bound)
        if ref.builder == "assoc":
            return assoc_operad(arity_bound)
        if ref.builder == "barratt_eccles":
            return barratt_eccles(arity_bound)
        return end_of_monoid(cyclic_monoid(ref.order), arity_bound)
    if ref.product is not None:
        left, right = (resolve_reference(r, base_dir, arity_bound, loading) for r in ref.product)
        return product_multicat(left, right)
    path = (base_dir / ref.file).resolve()
    if path in loading:
        problem = f"reference cycle through {path}"
        raise SchemaError(problem, [problem])
    fixture = _parse(path, loading | {path})
    if fixture.document.arity_bound != arity_bound:
        raise ArityMismatch(f"{path} has bound {fixture.document.arity_bound}, "
                            f"the document has {arity_bound}")
    return fixture.value


def _resolve_multicat(ref: Reference, base_dir: Path, bound: int, field: str,
                      loading: FrozenSet[Path]) -> FinMulticategory:
    value = resolve_reference(ref, base_dir, bound, loading)
    if not isinstance(value, FinMulticategory):
        problem = f"{field}: reference is not a multicategory"
        raise SchemaError(problem, [problem])
    return value


def _functor_tables(payload: FunctorPayload, source: IdDecoder, target: IdDecoder,
                    name: str) -> MultiFunctor:
    obs = {}
    for a, b in payload.objects.items():
        obs[source.obj(a, "payload.objects")] = target.obj(b, "payload.objects")

    def target_signature(sig: Signature, field: str) -> Signature:
        try:
            return Signature(tuple(obs[a] for a in sig.inputs), obs[sig.output])
        except KeyError as e:
            raise DanglingReference(f"{field}: object map undefined on {e.args[0]!r}") from None

    tables = []
    for key, two_cell in (("cells", False), ("two_cells", True)):
        table = {}
        for i, entry in enumerate(getattr(payload, key)):
            field = f"payload.{key}.{i}"
            sig = source.signature(entry, field)
            tsig = target_signature(sig, field)
            for x, y in entry.map.items():
                table[(sig, source.cell(sig, x, field, two_cell))] = target.cell(tsig, y, field,
                                                                                 two_cell)
        tables.append(table)
    return MultiFunctor(source.m, target.m, obs, tables[0], tables[1], name=name)


def build_multifunctor(document: Union[MultifunctorDocument, PseudoDocument], base_dir: Path,
                       loading: FrozenSet[Path] = frozenset()) -> MultiFunctor:
    payload = document.payload
    bound = document.arity_bound
    source = _resolve_multicat(payload.source, base_dir, bound, "payload.source", loading)
    target = _resolve_multicat(payload.target, base_dir, bound, "payload.target", loading)
    return _functor_tables(payload, IdDecoder(source), IdDecoder(target),
                           document.name)


def build_pseudo(document: PseudoDocument, base_dir: Path,
                 loading: FrozenSet[Path] = frozenset()) -> PseudoSymMultiFunctor:
    underlying = build_multifunctor(document, base_dir, loading)
    source = IdDecoder(underlying.source)
    target = IdDecoder(underlying.target)
    psi = {}
    for i, entry in enumerate(document.payload.psi):
        field = f"payload.psi.{i}"
        sig = source.signature(entry, field)
        sigma = Perm(tuple(entry.sigma))
        try:
            moved = underlying.map_signature(sig).permuted(sigma)
        except MulticohException as e:
            raise DanglingReference(f"{field}: {e}") from None
        psi[(sig, sigma, source.cell(sig, entry.cell, field))] = target.cell(
            moved, entry.value, field, two_cell=True)
    return PseudoSymMultiFunctor(underlying, psi, name=document.name)


def build_nat(document: Union[NatDocument, PseudoNatDocument], base_dir: Path,
              loading: FrozenSet[Path] = frozenset()) -> MultiNatTrans:
    payload = document.payload
    pseudo = document.kind == "pseudonat"
    expected = PseudoSymMultiFunctor if pseudo else MultiFunctor
    ends = []
    for key in ("source", "target"):
        ref = getattr(payload, key)
        if ref.file is None:
            problem = f"payload.{key}: a transformation refers to functor files"
            raise SchemaError(problem, [problem])
        value = resolve_reference(ref, base_dir, document.arity_bound, loading)
        if not isinstance(value, expected):
            problem = f"payload.{key}: reference is not a {'pseudo' if pseudo else 'multi'}functor"
            raise SchemaError(problem, [problem])
        ends.append(value)
    f, g = ends
    source, target = IdDecoder(f.source), IdDecoder(f.target)
    components = {}
    for a, theta in payload.components.items():
        obj = source.obj(a, "payload.components")
        try:
            sig = Signature((f.map_object(obj),), g.map_object(obj))
        except MulticohException as e:
            raise DanglingReference(f"payload.components: {e}") from None
        components[obj] = target.cell(sig, theta, "payload.components")
    cls = PseudoSymMultiNatTrans if pseudo else MultiNatTrans
    return cls(f, g, components, name=document.name)


def build_value(document: Document, base_dir: Path,
                loading: FrozenSet[Path] = frozenset()) -> Value:
    if document.kind == "multicat":
        return build_multicat(document)
    if document.kind == "multifunctor":
        return build_multifunctor(document, base_dir, loading)
    if document.kind == "pseudo":
        return build_pseudo(document, base_dir, loading)
    return build_nat(document, base_dir, loading)


def _parse(path: Path, loading: FrozenSet[Path]) -> Fixture:
    document = load_document(path)
    return Fixture(document, build_value(document, path.parent, loading), path)


def parse_fixture(path: Union[str, Path]) -> Fixture:
    """
    Load, validate and build one fixture, following references.

    Raises:
        SchemaError: If the document does not match the schema.
        DanglingReference: If an id or a referenced file is undeclared.
        ArityMismatch: If arity bounds of referenced fixtures disagree.
    """
    p = Path(path).resolve()
    fixture = _parse(p, frozenset({p}))
    logger.info(f"loaded {fixture.kind} fixture {fixture.document.name} from {p}")
    return fixture


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def _sig_fields(sig: Signature) -> dict:
    return {"inputs": [encode_id(a) for a in sig.inputs], "output": encode_id(sig.output)}


def serialize_multicat(m: FinMulticategory, name: Optional[str] = None) -> MulticatDocument:
    """The full tables of m within its bound; ids rendered with ``encode_id``."""
    homs, actions, gammas = [], [], []
    for sig in m.nonempty_signatures():
        c = m.hom(sig)
        homs.append(HomEntry(
            **_sig_fields(sig),
            cells=[encode_id(x) for x in c.objects],
            morphisms=[MorphismEntry(id=encode_id(k), src=encode_id(c.src(k)),
                                     dst=encode_id(c.dst(k))) for k in c.morphisms],
            identities={encode_id(x): encode_id(c.identity(x)) for x in c.objects},
            composition=[CompositeEntry(after=encode_id(g), before=encode_id(f),
                                        result=encode_id(c.compose(g, f)))
                         for g, f in composable_pairs(c)],
        ))
        for sigma in all_perms(sig.arity):
            actions.append(ActionEntry(
                **_sig_fields(sig),
                sigma=list(sigma.images),
                cells={encode_id(x): encode_id(m.act(sig, sigma, x)) for x in c.objects},
                morphisms={encode_id(k): encode_id(m.act(sig, sigma, k, two_cell=True))
                           for k in c.morphisms},
            ))
    for outer, inners in composable_shapes(m):
        factors = ProductCat([m.hom(outer)] + [m.hom(s) for s in inners])
        entry = {}
        for key, two_cell in (("cells", False), ("morphisms", True)):
            xs = factors.morphisms if two_cell else factors.objects
            entry[key] = [GammaValue(args=[encode_id(a) for a in x],
                                     result=encode_id(m.compose_cells(outer, inners, x[0], x[1:],
                                                                      two_cell)))
                          for x in xs]
        gammas.append(GammaEntry(outer=SignatureEntry(**_sig_fields(outer)),
                                 inners=[SignatureEntry(**_sig_fields(s)) for s in inners],
                                 **entry))
    units = {encode_id(a): encode_id(m.unit(a)) for a in m.objects
             if m.hom(Signature((a,), a)).has_object(m.unit(a))}
    payload = MulticatPayload(objects=[encode_id(a) for a in m.objects], homs=homs, units=units,
                              actions=actions, gammas=gammas)
    return MulticatDocument(kind="multicat", name=name or m.name, arity_bound=m.arity_bound,
                            payload=payload)


def reference_for(m: FinMulticategory) -> Optional[Reference]:
    """A builder reference that resolves to m, or None when m is not built by a builder."""
    bound = m.arity_bound
    if isinstance(m, ProductMulticategory):
        refs = [reference_for(f) for f in m.factors]
        return None if None in refs else Reference(product=refs)
    if not isinstance(m, SetBasedMulticategory):
        return None
    sm = m.set_multicat
    if isinstance(sm, CommSetOperad) and not m.chaotic:
        return Reference(builder="terminal", arity_bound=bound)
    if isinstance(sm, AssocSetOperad):
        return Reference(builder="barratt_eccles" if m.chaotic else "assoc", arity_bound=bound)
    name = sm.monoid.name if isinstance(sm, MonoidEndSet) else ""
    if not m.chaotic and name.startswith("Z/") and name[2:].isdigit():
        order = int(name[2:])
        if sm.monoid == cyclic_monoid(order):
            return Reference(builder="end_of_monoid", arity_bound=bound, order=order)
    return None


def _cell_entries(f: MultiFunctor, two_cell: bool) -> List[CellMapEntry]:
    entries = []
    for sig in f.source.nonempty_signatures():
        c = f.source.hom(sig)
        entries.append(CellMapEntry(
            **_sig_fields(sig),
            map={encode_id(x): encode_id(f.apply(sig, x, two_cell)) for x in cells_of(c, two_cell)},
        ))
    return entries


def _functor_fields(f: MultiFunctor, source: Reference, target: Reference) -> dict:
    return {
        "source": source,
        "target": target,
        "objects": {encode_id(a): encode_id(f.map_object(a)) for a in f.source.objects},
        "cells": _cell_entries(f, False),
        "two_cells": _cell_entries(f, True),
    }


def _require_reference(m: FinMulticategory, given: Optional[Reference]) -> Reference:
    ref = given or reference_for(m)
    if ref is None:
        problem = f"{m.name} is not a builder; pass a file reference"
        raise SchemaError(problem, [problem])
    return ref


def serialize_multifunctor(f: MultiFunctor, source: Optional[Reference] = None,
                           target: Optional[Reference] = None,
                           name: Optional[str] = None) -> MultifunctorDocument:
    """
    Raises:
        SchemaError: If an end is not a builder and no reference is given for it.
    """
    payload = FunctorPayload(**_functor_fields(f, _require_reference(f.source, source),
                                               _require_reference(f.target, target)))
    return MultifunctorDocument(kind="multifunctor", name=name or f.name,
                                arity_bound=f.source.arity_bound, payload=payload)


def serialize_pseudo(f: PseudoSymMultiFunctor, source: Optional[Reference] = None,
                     target: Optional[Reference] = None,
                     name: Optional[str] = None) -> PseudoDocument:
    m = f.source
    psi = []
    for sig in m.nonempty_signatures():
        for sigma in all_perms(sig.arity):
            for x in m.hom(sig).objects:
                psi.append(PsiEntry(**_sig_fields(sig), sigma=list(sigma.images),
                                    cell=encode_id(x),
                                    value=encode_id(f.psi_component(sig, sigma, x))))
    fields = _functor_fields(f.underlying, _require_reference(m, source),
                             _require_reference(f.target, target))
    return PseudoDocument(kind="pseudo", name=name or f.name, arity_bound=m.arity_bound,
                          payload=PseudoPayload(**fields, psi=psi))


def serialize_nat(t: MultiNatTrans, source_file: str, target_file: str,
                  name: Optional[str] = None) -> Union[NatDocument, PseudoNatDocument]:
    """Components of t; the functors are referred to by file."""
    payload = NatPayload(
        source=Reference(file=source_file),
        target=Reference(file=target_file),
        components={encode_id(a): encode_id(t.raw_component(a)) for a in t.source.source.objects},
    )
    cls = PseudoNatDocument if isinstance(t, PseudoSymMultiNatTrans) else NatDocument
    kind = "pseudonat" if cls is PseudoNatDocument else "nattrans"
    return cls(kind=kind, name=name or t.name, arity_bound=t.source.source.arity_bound,
               payload=payload)


def export_builder(builder: str, arity_bound: int, order: Optional[int] = None) -> MulticatDocument:
    """
    Full tables of a builder multicategory.

    Raises:
        SchemaError: If the builder name or its arguments are invalid.
    """
    try:
        ref = Reference(builder=builder, arity_bound=arity_bound, order=order)
    except ValidationError as e:
        problems = [_problem(item) for item in e.errors()]
        raise SchemaError(f"invalid builder {builder!r}: " + "; ".join(problems), problems) from e
    m = resolve_reference(ref, Path("."), arity_bound)
    return serialize_multicat(m)
