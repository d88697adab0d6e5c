"""
Custom exception classes for multicoh.
"""


class MulticohException(Exception):
    """Base exception for all multicoh errors."""
    pass


class DegreeMismatch(MulticohException):
    """Permutations or lists of different lengths were combined."""
    pass


class NotAPermutation(MulticohException):
    """An image list is not a bijection on {1, ..., n}."""
    pass


class EndpointError(MulticohException):
    """A morphism does not have the source/target the context requires."""
    pass


class UnknownSignature(MulticohException):
    """A signature is outside the arity bound or names an undeclared object."""
    pass


class ArityBoundMismatch(MulticohException):
    """Two multicategories with different arity bounds were combined."""
    pass


class NotCommutative(MulticohException):
    """A monoid table is not commutative, so the symmetric action would not exist."""
    pass


class InvalidSetMulticat(MulticohException):
    """A Set-multicategory fails one of its axioms."""
    pass


class BoundaryMismatch(MulticohException):
    """Cells do not compose: source and target multicategories or functors differ."""
    pass


class ShapeMismatch(MulticohException):
    """A multicategory is not of the required product shape M x E(Sigma)."""
    pass


class InvalidPseudo(MulticohException):
    """Pseudo symmetric data fails its coherence axioms."""
    pass


class InvalidInput(MulticohException):
    """An operation received data that fails its precondition check."""
    pass


class FixtureError(MulticohException):
    """Fixture document could not be loaded."""
    pass


class SchemaError(FixtureError):
    """Fixture document does not match the schema."""

    def __init__(self, message: str, problems=None):
        super().__init__(message)
        self.problems = list(problems or [])


class DanglingReference(FixtureError):
    """Fixture refers to an id that is not declared."""
    pass


class ArityMismatch(FixtureError):
    """Arity bounds of referenced fixtures disagree."""
    pass
