"""
Pydantic models of fixture documents.

A fixture is one UTF-8 JSON document with top-level fields ``kind``, ``name``,
``arity_bound`` and ``payload``. Ids are strings; permutations are one-line image lists.
Payload tables mirror the in-memory types field for field.
"""

from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator


KINDS = ("multicat", "multifunctor", "pseudo", "nattrans", "pseudonat")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SignatureEntry(_Strict):
    inputs: List[str] = Field(description="Input object ids")
    output: str = Field(description="Output object id")


def _check_images(v: List[int]) -> List[int]:
    if sorted(v) != list(range(1, len(v) + 1)):
        raise ValueError(f"{v} is not a permutation of 1..{len(v)}")
    return v


def _check_degree(entry):
    if len(entry.sigma) != len(entry.inputs):
        raise ValueError(f"sigma has degree {len(entry.sigma)}, "
                         f"the signature has arity {len(entry.inputs)}")
    return entry


class MorphismEntry(_Strict):
    id: str
    src: str
    dst: str


class CompositeEntry(_Strict):
    """``after . before = result``."""
    after: str
    before: str
    result: str


class HomEntry(SignatureEntry):
    """One hom category: 1-cells, 2-cells with endpoints, identities and composites."""
    cells: List[str] = Field(default_factory=list)
    morphisms: List[MorphismEntry] = Field(default_factory=list)
    identities: Dict[str, str] = Field(default_factory=dict)
    composition: List[CompositeEntry] = Field(default_factory=list)


class ActionEntry(SignatureEntry):
    """The action of ``sigma`` on ``hom(inputs; output)``, as object and morphism maps."""
    sigma: List[int]
    cells: Dict[str, str] = Field(default_factory=dict)
    morphisms: Dict[str, str] = Field(default_factory=dict)

    @field_validator("sigma")
    @classmethod
    def check_images(cls, v):
        return _check_images(v)

    @model_validator(mode="after")
    def check_degree(self):
        return _check_degree(self)


class GammaValue(_Strict):
    """``gamma(args[0]; args[1:]) = result``."""
    args: List[str]
    result: str


class GammaEntry(_Strict):
    outer: SignatureEntry
    inners: List[SignatureEntry]
    cells: List[GammaValue] = Field(default_factory=list)
    morphisms: List[GammaValue] = Field(default_factory=list)


class MulticatPayload(_Strict):
    objects: List[str]
    homs: List[HomEntry] = Field(default_factory=list)
    units: Dict[str, str] = Field(default_factory=dict)
    actions: List[ActionEntry] = Field(default_factory=list)
    gammas: List[GammaEntry] = Field(default_factory=list)


class Reference(_Strict):
    """
    Where a multicategory or a functor comes from: a builder (``builder`` with an
    optional monoid ``order``), a product of two references, or another fixture file
    relative to the referring one.
    """
    builder: Optional[Literal["terminal", "assoc", "barratt_eccles", "end_of_monoid"]] = None
    arity_bound: Optional[int] = Field(default=None, ge=0, le=6)
    order: Optional[int] = Field(default=None, ge=1)
    product: Optional[List["Reference"]] = None
    file: Optional[str] = None

    @model_validator(mode="after")
    def check_one_form(self):
        forms = [self.builder is not None, self.product is not None, self.file is not None]
        if sum(forms) != 1:
            raise ValueError("a reference names exactly one of builder, product, file")
        if self.builder is not None and self.arity_bound is None:
            raise ValueError("a builder reference needs arity_bound")
        if self.builder == "end_of_monoid" and self.order is None:
            raise ValueError("end_of_monoid needs order")
        if self.product is not None and len(self.product) != 2:
            raise ValueError("a product reference has two factors")
        return self


class CellMapEntry(SignatureEntry):
    """Values of a functor on the cells (or 2-cells) of one source signature."""
    map: Dict[str, str] = Field(default_factory=dict)


class PsiEntry(SignatureEntry):
    """The symmetry 2-cell ``F_{sigma; cell}``."""
    sigma: List[int]
    cell: str
    value: str

    @field_validator("sigma")
    @classmethod
    def check_images(cls, v):
        return _check_images(v)

    @model_validator(mode="after")
    def check_degree(self):
        return _check_degree(self)


class FunctorPayload(_Strict):
    source: Reference
    target: Reference
    objects: Dict[str, str] = Field(default_factory=dict)
    cells: List[CellMapEntry] = Field(default_factory=list)
    two_cells: List[CellMapEntry] = Field(default_factory=list)


class PseudoPayload(FunctorPayload):
    psi: List[PsiEntry] = Field(default_factory=list)


class NatPayload(_Strict):
    source: Reference
    target: Reference
    components: Dict[str, str] = Field(default_factory=dict)


class _Document(_Strict):
    name: str
    arity_bound: int = Field(ge=0, le=6)


class MulticatDocument(_Document):
    kind: Literal["multicat"]
    payload: MulticatPayload


class MultifunctorDocument(_Document):
    kind: Literal["multifunctor"]
    payload: FunctorPayload


class PseudoDocument(_Document):
    kind: Literal["pseudo"]
    payload: PseudoPayload


class NatDocument(_Document):
    kind: Literal["nattrans"]
    payload: NatPayload


class PseudoNatDocument(_Document):
    kind: Literal["pseudonat"]
    payload: NatPayload


FixtureDocument = Annotated[
    Union[MulticatDocument, MultifunctorDocument, PseudoDocument, NatDocument,
          PseudoNatDocument],
    Field(discriminator="kind"),
]

DOCUMENT_ADAPTER: TypeAdapter = TypeAdapter(FixtureDocument)
