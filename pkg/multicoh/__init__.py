"""
Finite Cat-enriched multicategories and the rigidification of pseudo symmetric multifunctors.

Builds bounded-arity multicategories (Comm, Ass, Barratt-Eccles, endomorphism multicategories
of commutative monoids, products), checks every coherence axiom by exhaustive enumeration, and
turns pseudo symmetric multifunctors M -> N into symmetric ones M x E(Sigma) -> N.
"""

__version__ = "0.3.1"
