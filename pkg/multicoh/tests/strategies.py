"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from multicoh.core.perm import Perm


def perms(min_degree: int = 0, max_degree: int = 4):
    """Random permutations of bounded degree."""
    return st.integers(min_degree, max_degree).flatmap(perms_of_degree)


def perms_of_degree(n: int):
    return st.permutations(list(range(1, n + 1))).map(lambda p: Perm(tuple(p)))


def perm_pairs(max_degree: int = 4):
    """Two permutations of the same degree."""
    return st.integers(0, max_degree).flatmap(
        lambda n: st.tuples(perms_of_degree(n), perms_of_degree(n))
    )


def block_data(max_outer: int = 3, max_inner: int = 2):
    """An outer permutation with one inner permutation per result block."""
    return st.integers(0, max_outer).flatmap(
        lambda n: st.tuples(
            perms_of_degree(n),
            st.lists(st.integers(0, max_inner).flatmap(perms_of_degree), min_size=n, max_size=n),
        )
    )
