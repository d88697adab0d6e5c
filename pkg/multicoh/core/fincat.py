"""
Finite categories, functors and natural transformations.

Hom categories of multicategories are values of this module. Two kinds of category share
one access interface (``Category``):

- ``FinCat``: closed tables (objects, morphisms with endpoints, identities, composites),
  the form fixture files take;
- formula-backed categories (``DiscreteCat``, ``ChaoticCat``, ``ProductCat``) whose
  morphisms are computed on demand.

Morphisms of discrete and chaotic categories are the pairs ``(x, y)``.
"""

from abc import ABC, abstractmethod
from functools import cached_property
from itertools import product
from typing import (
    Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union,
)

from multicoh.core.report import Report, witness
from multicoh.utils.exceptions import BoundaryMismatch, EndpointError


Obj = Hashable
Mor = Hashable
MapLike = Union[Mapping, Callable]


class Category(ABC):
    """Access interface shared by table-backed and formula-backed finite categories."""

    @property
    @abstractmethod
    def objects(self) -> Tuple[Obj, ...]:
        """All objects, in a fixed order."""

    @property
    @abstractmethod
    def morphisms(self) -> Tuple[Mor, ...]:
        """All morphisms, in a fixed order."""

    @abstractmethod
    def src(self, m: Mor) -> Obj:
        """Source object of a morphism."""

    @abstractmethod
    def dst(self, m: Mor) -> Obj:
        """Target object of a morphism."""

    @abstractmethod
    def identity(self, x: Obj) -> Mor:
        """Identity morphism of an object."""

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor:
        """
        Composite ``g after f``.

        Raises:
            EndpointError: If ``dst(f) != src(g)``.
        """

    @cached_property
    def _object_set(self) -> frozenset:
        return frozenset(self.objects)

    @cached_property
    def _morphism_set(self) -> frozenset:
        return frozenset(self.morphisms)

    def has_object(self, x: Obj) -> bool:
        try:
            return x in self._object_set
        except TypeError:
            return False

    def has_morphism(self, m: Mor) -> bool:
        try:
            return m in self._morphism_set
        except TypeError:
            return False

    def hom(self, x: Obj, y: Obj) -> Tuple[Mor, ...]:
        """Morphisms from x to y."""
        return self._hom_index.get((x, y), ())

    @cached_property
    def _hom_index(self) -> Dict[Tuple[Obj, Obj], Tuple[Mor, ...]]:
        index: Dict[Tuple[Obj, Obj], List[Mor]] = {}
        for m in self.morphisms:
            index.setdefault((self.src(m), self.dst(m)), []).append(m)
        return {k: tuple(v) for k, v in index.items()}

    def is_empty(self) -> bool:
        return not self.objects


class FinCat(Category):
    """
    A category given by explicit tables.

    Args:
        objects: Object ids.
        morphisms: Morphism id -> (source, target).
        identities: Object -> identity morphism id.
        composition: (g, f) -> id of ``g after f``, on composable pairs.
    """

    def __init__(
        self,
        objects: Iterable[Obj],
        morphisms: Mapping[Mor, Tuple[Obj, Obj]],
        identities: Mapping[Obj, Mor],
        composition: Mapping[Tuple[Mor, Mor], Mor],
    ):
        self._objects = tuple(objects)
        self.endpoints: Dict[Mor, Tuple[Obj, Obj]] = dict(morphisms)
        self.identities: Dict[Obj, Mor] = dict(identities)
        self.composition: Dict[Tuple[Mor, Mor], Mor] = dict(composition)

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self._objects

    @property
    def morphisms(self) -> Tuple[Mor, ...]:
        return tuple(self.endpoints)

    def src(self, m: Mor) -> Obj:
        try:
            return self.endpoints[m][0]
        except KeyError:
            raise EndpointError(f"unknown morphism {m!r}") from None

    def dst(self, m: Mor) -> Obj:
        try:
            return self.endpoints[m][1]
        except KeyError:
            raise EndpointError(f"unknown morphism {m!r}") from None

    def identity(self, x: Obj) -> Mor:
        try:
            return self.identities[x]
        except KeyError:
            raise EndpointError(f"no identity recorded for object {x!r}") from None

    def compose(self, g: Mor, f: Mor) -> Mor:
        if self.dst(f) != self.src(g):
            raise EndpointError(f"{g!r} after {f!r} is not composable")
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise EndpointError(f"no composite recorded for {g!r} after {f!r}") from None


class DiscreteCat(Category):
    """Only identity morphisms ``(x, x)``."""

    def __init__(self, objects: Iterable[Obj]):
        self._objects = tuple(objects)

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self._objects

    @cached_property
    def morphisms(self) -> Tuple[Mor, ...]:
        return tuple((x, x) for x in self._objects)

    def src(self, m: Mor) -> Obj:
        return m[0]

    def dst(self, m: Mor) -> Obj:
        return m[1]

    def identity(self, x: Obj) -> Mor:
        return (x, x)

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f[1] != g[0]:
            raise EndpointError(f"{g!r} after {f!r} is not composable")
        return (f[0], g[1])

    def has_morphism(self, m: Mor) -> bool:
        return isinstance(m, tuple) and len(m) == 2 and m[0] == m[1] and self.has_object(m[0])

    def hom(self, x: Obj, y: Obj) -> Tuple[Mor, ...]:
        return ((x, y),) if x == y and self.has_object(x) else ()


class ChaoticCat(Category):
    """Exactly one morphism ``(x, y)`` between every ordered pair of objects."""

    def __init__(self, objects: Iterable[Obj]):
        self._objects = tuple(objects)

    @property
    def objects(self) -> Tuple[Obj, ...]:
        return self._objects

    @cached_property
    def morphisms(self) -> Tuple[Mor, ...]:
        return tuple((x, y) for x in self._objects for y in self._objects)

    def src(self, m: Mor) -> Obj:
        return m[0]

    def dst(self, m: Mor) -> Obj:
        return m[1]

    def identity(self, x: Obj) -> Mor:
        return (x, x)

    def compose(self, g: Mor, f: Mor) -> Mor:
        if f[1] != g[0]:
            raise EndpointError(f"{g!r} after {f!r} is not composable")
        return (f[0], g[1])

    def has_morphism(self, m: Mor) -> bool:
        return (isinstance(m, tuple) and len(m) == 2
                and self.has_object(m[0]) and self.has_object(m[1]))

    def hom(self, x: Obj, y: Obj) -> Tuple[Mor, ...]:
        return ((x, y),) if self.has_object(x) and self.has_object(y) else ()


class ProductCat(Category):
    """Componentwise product; objects and morphisms are tuples. The empty product is terminal."""

    def __init__(self, factors: Sequence[Category]):
        self.factors: Tuple[Category, ...] = tuple(factors)

    @cached_property
    def objects(self) -> Tuple[Obj, ...]:
        return tuple(product(*(c.objects for c in self.factors)))

    @cached_property
    def morphisms(self) -> Tuple[Mor, ...]:
        return tuple(product(*(c.morphisms for c in self.factors)))

    def src(self, m: Mor) -> Obj:
        return tuple(c.src(x) for c, x in zip(self.factors, m))

    def dst(self, m: Mor) -> Obj:
        return tuple(c.dst(x) for c, x in zip(self.factors, m))

    def identity(self, x: Obj) -> Mor:
        return tuple(c.identity(a) for c, a in zip(self.factors, x))

    def compose(self, g: Mor, f: Mor) -> Mor:
        return tuple(c.compose(b, a) for c, b, a in zip(self.factors, g, f))

    def has_object(self, x: Obj) -> bool:
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(c.has_object(a) for c, a in zip(self.factors, x)))

    def has_morphism(self, m: Mor) -> bool:
        return (isinstance(m, tuple) and len(m) == len(self.factors)
                and all(c.has_morphism(a) for c, a in zip(self.factors, m)))

    def hom(self, x: Obj, y: Obj) -> Tuple[Mor, ...]:
        if not (self.has_object(x) and self.has_object(y)):
            return ()
        return tuple(product(*(c.hom(a, b) for c, a, b in zip(self.factors, x, y))))


EMPTY = DiscreteCat(())


def discrete(objects: Iterable[Obj]) -> DiscreteCat:
    return DiscreteCat(objects)


def terminal() -> DiscreteCat:
    """The category with one object ``*`` and its identity."""
    return DiscreteCat(("*",))


def chaotic(objects: Iterable[Obj]) -> ChaoticCat:
    """
    The chaotic category: a unique (invertible) morphism between each ordered pair.

    >>> len(chaotic(["a", "b"]).morphisms)
    4
    """
    return ChaoticCat(objects)


def product_cat(cs: Sequence[Category]) -> ProductCat:
    return ProductCat(cs)


def composable_pairs(c: Category) -> Iterator[Tuple[Mor, Mor]]:
    """All pairs (g, f) with ``dst(f) == src(g)``."""
    by_src: Dict[Obj, List[Mor]] = {}
    for m in c.morphisms:
        by_src.setdefault(c.src(m), []).append(m)
    for f in c.morphisms:
        for g in by_src.get(c.dst(f), ()):
            yield g, f


def inverse_of(c: Category, m: Mor) -> Optional[Mor]:
    """A two-sided inverse of m, or None."""
    x, y = c.src(m), c.dst(m)
    for k in c.hom(y, x):
        if c.compose(k, m) == c.identity(x) and c.compose(m, k) == c.identity(y):
            return k
    return None


def hom_set(c: Category, x: Obj, y: Obj) -> Tuple[Mor, ...]:
    return c.hom(x, y)


def category_equal(a: Category, b: Category) -> bool:
    """Equality of tables: same objects, morphisms, endpoints, identities and composites."""
    if a is b:
        return True
    if set(a.objects) != set(b.objects) or set(a.morphisms) != set(b.morphisms):
        return False
    for m in a.morphisms:
        if a.src(m) != b.src(m) or a.dst(m) != b.dst(m):
            return False
    for x in a.objects:
        if a.identity(x) != b.identity(x):
            return False
    return all(a.compose(g, f) == b.compose(g, f) for g, f in composable_pairs(a))


def check_category(c: Category, subject: str = "category") -> Report:
    """
    Check the category laws on every object, morphism, pair and triple.

    Returns:
        Report with axioms ``category.identity``, ``category.composition`` (composites exist
        exactly on composable pairs and have the right endpoints) and ``category.associativity``.
    """
    report = Report(subject)

    for x in c.objects:
        try:
            ident = c.identity(x)
        except EndpointError as e:
            report.fail("category.identity", witness(x), str(e))
            continue
        report.expect(c.has_morphism(ident) and c.src(ident) == x and c.dst(ident) == x,
                      "category.identity", witness(x), "identity has wrong endpoints")

    if isinstance(c, FinCat):
        for (g, f) in c.composition:
            ok = c.has_morphism(g) and c.has_morphism(f) and c.dst(f) == c.src(g)
            report.expect(ok, "category.composition", witness(g, f),
                          "composite recorded on a non-composable pair")

    composites: Dict[Tuple[Mor, Mor], Mor] = {}
    for g, f in composable_pairs(c):
        try:
            h = c.compose(g, f)
        except EndpointError as e:
            report.fail("category.composition", witness(g, f), str(e))
            continue
        ok = c.has_morphism(h) and c.src(h) == c.src(f) and c.dst(h) == c.dst(g)
        if report.expect(ok, "category.composition", witness(g, f),
                         f"composite {h!r} has wrong endpoints"):
            composites[(g, f)] = h

    for m in c.morphisms:
        x, y = c.src(m), c.dst(m)
        try:
            left = composites.get((c.identity(y), m))
            right = composites.get((m, c.identity(x)))
        except EndpointError:
            continue
        if left is None or right is None:
            continue
        report.expect(left == m and right == m, "category.identity", witness(m),
                      "identity is not neutral")

    by_src: Dict[Obj, List[Mor]] = {}
    for m in c.morphisms:
        by_src.setdefault(c.src(m), []).append(m)
    for (g, f), gf in composites.items():
        for h in by_src.get(c.dst(g), ()):
            hg = composites.get((h, g))
            if hg is None:
                continue
            lhs = composites.get((h, gf))
            rhs = composites.get((hg, f))
            report.expect(lhs is not None and lhs == rhs, "category.associativity",
                          witness(h, g, f), f"{lhs!r} != {rhs!r}")
    return report


class FinFunctor:
    """
    A functor between finite categories.

    The object and morphism maps may be tables (mappings) or callables.
    """

    def __init__(self, source: Category, target: Category, obj_map: MapLike, mor_map: MapLike):
        self.source = source
        self.target = target
        self.obj_map = obj_map
        self.mor_map = mor_map

    def map_object(self, x: Obj) -> Obj:
        if callable(self.obj_map):
            return self.obj_map(x)
        try:
            return self.obj_map[x]
        except KeyError:
            raise EndpointError(f"functor undefined on object {x!r}") from None

    def map_morphism(self, m: Mor) -> Mor:
        if callable(self.mor_map):
            return self.mor_map(m)
        try:
            return self.mor_map[m]
        except KeyError:
            raise EndpointError(f"functor undefined on morphism {m!r}") from None

    def tabulate(self) -> "FinFunctor":
        """A table-backed copy, evaluated on every object and morphism of the source."""
        return FinFunctor(
            self.source,
            self.target,
            {x: self.map_object(x) for x in self.source.objects},
            {m: self.map_morphism(m) for m in self.source.morphisms},
        )


def identity_functor(c: Category) -> FinFunctor:
    return FinFunctor(c, c, lambda x: x, lambda m: m)


def compose_functor(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    """
    The composite ``g after f``, tabulated on the source of f.

    Raises:
        BoundaryMismatch: If the target of f is not the source of g.
    """
    if not category_equal(f.target, g.source):
        raise BoundaryMismatch("target of the first functor is not the source of the second")
    return FinFunctor(
        f.source,
        g.target,
        {x: g.map_object(f.map_object(x)) for x in f.source.objects},
        {m: g.map_morphism(f.map_morphism(m)) for m in f.source.morphisms},
    )


def functor_equal(f: FinFunctor, g: FinFunctor) -> bool:
    """
    Pointwise equality on objects and morphisms.

    Raises:
        BoundaryMismatch: If the functors are not parallel.
    """
    if not (category_equal(f.source, g.source) and category_equal(f.target, g.target)):
        raise BoundaryMismatch("functor_equal needs parallel functors")
    return (all(f.map_object(x) == g.map_object(x) for x in f.source.objects)
            and all(f.map_morphism(m) == g.map_morphism(m) for m in f.source.morphisms))


def check_functor(f: FinFunctor, subject: str = "functor") -> Report:
    """Check that f lands in its target and preserves endpoints, identities and composites."""
    report = Report(subject)
    s, t = f.source, f.target

    for x in s.objects:
        try:
            fx = f.map_object(x)
        except EndpointError as e:
            report.fail("functor.objects", witness(x), str(e))
            continue
        if not report.expect(t.has_object(fx), "functor.objects", witness(x),
                             f"image {fx!r} is not an object of the target"):
            continue
        try:
            preserved = f.map_morphism(s.identity(x)) == t.identity(fx)
        except EndpointError as e:
            report.fail("functor.identity", witness(x), str(e))
            continue
        report.expect(preserved, "functor.identity", witness(x))

    images: Dict[Mor, Mor] = {}
    for m in s.morphisms:
        try:
            fm = f.map_morphism(m)
            ok = (t.has_morphism(fm) and t.src(fm) == f.map_object(s.src(m))
                  and t.dst(fm) == f.map_object(s.dst(m)))
        except EndpointError as e:
            report.fail("functor.endpoints", witness(m), str(e))
            continue
        if report.expect(ok, "functor.endpoints", witness(m),
                         f"image {fm!r} has the wrong endpoints"):
            images[m] = fm

    for g, h in composable_pairs(s):
        if g not in images or h not in images:
            continue
        lhs = images.get(s.compose(g, h))
        rhs = t.compose(images[g], images[h])
        report.expect(lhs == rhs, "functor.composition", witness(g, h), f"{lhs!r} != {rhs!r}")
    return report


class FinNatTrans:
    """
    A natural transformation between parallel functors.

    Components may be a table or a callable.
    """

    def __init__(self, source: FinFunctor, target: FinFunctor, components: MapLike):
        self.source = source
        self.target = target
        self.components = components

    def raw_component(self, x: Obj) -> Mor:
        if callable(self.components):
            return self.components(x)
        try:
            return self.components[x]
        except KeyError:
            raise EndpointError(f"no component at object {x!r}") from None

    def component(self, x: Obj) -> Mor:
        """
        Component at x.

        Raises:
            EndpointError: If the component does not go from F(x) to G(x).
        """
        m = self.raw_component(x)
        c = self.source.target
        fx, gx = self.source.map_object(x), self.target.map_object(x)
        if not c.has_morphism(m) or c.src(m) != fx or c.dst(m) != gx:
            raise EndpointError(f"component at object {x!r} is not a morphism {fx!r} -> {gx!r}")
        return m


def check_nattrans(t: FinNatTrans, subject: str = "nattrans") -> Report:
    """Check component endpoints and every naturality square."""
    report = Report(subject)
    f, g = t.source, t.target
    if not (category_equal(f.source, g.source) and category_equal(f.target, g.target)):
        report.fail("nattrans.boundary", subject, "functors are not parallel")
        return report

    c, d = f.source, f.target
    components: Dict[Obj, Mor] = {}
    for x in c.objects:
        try:
            components[x] = t.component(x)
            report.tick("nattrans.endpoints")
        except EndpointError as e:
            report.fail("nattrans.endpoints", witness(x), str(e))

    for m in c.morphisms:
        x, y = c.src(m), c.dst(m)
        if x not in components or y not in components:
            continue
        lhs = d.compose(g.map_morphism(m), components[x])
        rhs = d.compose(components[y], f.map_morphism(m))
        report.expect(lhs == rhs, "nattrans.naturality", witness(m), f"{lhs!r} != {rhs!r}")
    return report


def is_natural_iso(t: FinNatTrans) -> bool:
    """True iff t is natural and every component has a two-sided inverse."""
    if not check_nattrans(t).passed:
        return False
    d = t.source.target
    return all(inverse_of(d, t.component(x)) is not None for x in t.source.source.objects)
