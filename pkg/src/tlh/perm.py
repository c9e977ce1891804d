"""Permutations in one-line notation, as plain tuples.

A permutation of degree l is a tuple of the images of 1..l.  The state
recursion only ever needs identities, cycles, composition, extension by a
new first fixed point, and deletion of the last point.
"""

from __future__ import annotations

Perm = tuple[int, ...]


class DegreeMismatch(ValueError):
    """Composed permutations must have equal degree."""


class EmptyPermutation(ValueError):
    """The operation needs at least one point."""


def identity(l: int) -> Perm:
    return tuple(range(1, l + 1))


def is_permutation(p) -> bool:
    return (
        isinstance(p, tuple)
        and all(isinstance(x, int) for x in p)
        and sorted(p) == list(range(1, len(p) + 1))
    )


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i))."""
    if len(a) != len(b):
        raise DegreeMismatch(f"degree {len(a)} vs {len(b)}")
    return tuple(a[x - 1] for x in b)


def rotation(l: int) -> Perm:
    """The l-cycle sending i to i+1 and l to 1."""
    if l < 1:
        raise EmptyPermutation("rotation needs l >= 1")
    return tuple(range(2, l + 1)) + (1,)


def inverse_rotation(l: int) -> Perm:
    """The l-cycle sending i to i-1 and 1 to l."""
    if l < 1:
        raise EmptyPermutation("rotation needs l >= 1")
    return (l,) + tuple(range(1, l))


def fixes_last(p: Perm) -> bool:
    if not p:
        raise EmptyPermutation("no last point")
    return p[-1] == len(p)


def truncate_last(p: Perm) -> Perm:
    """Delete the last point, splicing its orbit closed.

    If p fixes l the result is the restriction; otherwise the preimage of
    l is sent directly to p(l).
    """
    l = len(p)
    if not l:
        raise EmptyPermutation("cannot truncate the empty permutation")
    if p[-1] == l:
        return p[:-1]
    images = list(p[:-1])
    images[p.index(l)] = p[-1]
    return tuple(images)


def extend_front(p: Perm) -> Perm:
    """Add a new smallest point fixed by the permutation, shifting the rest."""
    return (1,) + tuple(x + 1 for x in p)


def to_text(p: Perm) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def from_text(text: str) -> Perm:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a one-line permutation: {text!r}")
    body = text[1:-1].strip()
    p = tuple(int(x) for x in body.split(",")) if body else ()
    if not is_permutation(p):
        raise ValueError(f"not a permutation: {text!r}")
    return p
