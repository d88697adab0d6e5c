"""
Symmetric group arithmetic in one-line notation.

A permutation of degree n is stored as its images ``(s(1), ..., s(n))`` (1-based).
Conventions used throughout the package:

- ``compose(s, t)(j) = s(t(j))``.
- ``act_on_list(s, xs)[j] = xs[s(j)]``, the right action ``<a>s = <a_s(1), ..., a_s(n)>``.
  Acting by ``s`` and then by ``t`` equals acting by ``compose(s, t)``.
- ``block(s, [t_1, ..., t_n])`` moves input block ``s(j)`` to result position ``j`` and
  permutes it internally by ``t_j``; ``len(t_j)`` is the length of the j-th result block.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import List, Sequence, Tuple, TypeVar

from multicoh.utils.exceptions import DegreeMismatch, NotAPermutation


T = TypeVar("T")


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {1, ..., n} in one-line notation."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise NotAPermutation(f"{list(images)} is not a permutation of 1..{len(images)}")

    @classmethod
    def parse(cls, images: Sequence[int]) -> "Perm":
        """
        Build a permutation from an image list.

        Args:
            images: One-line notation, e.g. ``[2, 3, 1]``.

        Returns:
            The permutation.

        Raises:
            NotAPermutation: If the list is not a bijection on 1..n.
        """
        if any(isinstance(x, bool) or not isinstance(x, int) for x in images):
            raise NotAPermutation(f"{list(images)} contains non-integer entries")
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __len__(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(x == j for j, x in enumerate(self.images, start=1))

    def to_list(self) -> List[int]:
        return list(self.images)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.images) + "]"

    def __repr__(self) -> str:
        return f"Perm({self})"


def identity(n: int) -> Perm:
    """
    Return the identity permutation of degree n.

    >>> identity(3)
    Perm([1,2,3])
    """
    return Perm(tuple(range(1, n + 1)))


def reversal(n: int) -> Perm:
    """
    The order-reversing permutation ``j -> n + 1 - j``.

    >>> reversal(3)
    Perm([3,2,1])
    """
    return Perm(tuple(range(n, 0, -1)))


def all_perms(n: int) -> List[Perm]:
    """All permutations of degree n in lexicographic order of their image lists."""
    return [Perm(p) for p in permutations(range(1, n + 1))]


def compose(sigma: Perm, tau: Perm) -> Perm:
    """
    Return the composite ``sigma tau``, ``j -> sigma(tau(j))``.

    Acting on a list by sigma and then by tau is acting by the composite.

    >>> compose(Perm((2, 3, 1)), Perm((2, 1, 3)))
    Perm([3,2,1])

    Raises:
        DegreeMismatch: If the degrees differ.
    """
    if sigma.degree != tau.degree:
        raise DegreeMismatch(f"cannot compose {sigma} (degree {sigma.degree}) "
                             f"with {tau} (degree {tau.degree})")
    return Perm(tuple(sigma.images[t - 1] for t in tau.images))


def inverse(sigma: Perm) -> Perm:
    """
    Return the inverse permutation.

    >>> inverse(Perm((2, 3, 1)))
    Perm([3,1,2])
    """
    res = [0] * sigma.degree
    for j, s in enumerate(sigma.images, start=1):
        res[s - 1] = j
    return Perm(tuple(res))


def act_on_list(sigma: Perm, xs: Sequence[T]) -> Tuple[T, ...]:
    """
    Right action on a list: entry j of the result is ``xs[sigma(j)]``.

    >>> act_on_list(Perm((2, 1)), ["a", "b"])
    ('b', 'a')

    Raises:
        DegreeMismatch: If ``len(xs)`` differs from the degree.
    """
    if len(xs) != sigma.degree:
        raise DegreeMismatch(f"cannot act by {sigma} on a list of length {len(xs)}")
    return tuple(xs[s - 1] for s in sigma.images)


def block(sigma: Perm, blocks: Sequence[Perm]) -> Perm:
    """
    Return the block permutation ``sigma<t_1, ..., t_n>``.

    On a concatenated list the result places input block ``sigma(j)`` at position j
    and permutes it by ``t_j``. Block lengths are read off the ``t_j``: the input block
    at position i has length ``len(t_{sigma^{-1}(i)})``.

    >>> block(Perm((2, 1)), [identity(2), identity(1)])
    Perm([2,3,1])

    Raises:
        DegreeMismatch: If ``len(blocks)`` differs from the degree of sigma.
    """
    n = sigma.degree
    if len(blocks) != n:
        raise DegreeMismatch(f"block of {sigma} needs {n} inner permutations, got {len(blocks)}")

    # input block i has the length of result block sigma^{-1}(i)
    sigma_inv = inverse(sigma)
    input_lengths = [blocks[sigma_inv(i) - 1].degree for i in range(1, n + 1)]
    offsets = [0] * n
    for i in range(1, n):
        offsets[i] = offsets[i - 1] + input_lengths[i - 1]

    images: List[int] = []
    for j in range(1, n + 1):
        start = offsets[sigma(j) - 1]
        images.extend(start + t for t in blocks[j - 1].images)
    return Perm(tuple(images))

