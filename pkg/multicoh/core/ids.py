"""
Canonical text encoding of cell and object ids.

Builders use structured ids (permutations, nested tuples); fixture files and reports use
strings. ``encode_id`` is injective on the ids produced by the builders and is the sort key
that makes every enumeration reproducible.
"""

from typing import Hashable

from multicoh.core.perm import Perm


def encode_id(x: Hashable) -> str:
    """
    Render an id as text.

    >>> encode_id(("a", Perm((2, 1))))
    '(a,[2,1])'
    """
    if isinstance(x, str):
        return x
    if isinstance(x, Perm):
        return str(x)
    if isinstance(x, tuple):
        return "(" + ",".join(encode_id(e) for e in x) + ")"
    return str(x)
