"""Layered families of arbitrary subsets of ``{1..n}`` (empty set allowed).

Here the length of a family is its number of layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..caps import check_cap
from ..errors import InvalidComplex


@dataclass(frozen=True)
class NonpureLayeredFamily:
    n: int
    layers: tuple

    def __post_init__(self):
        layers = tuple(tuple(sorted((frozenset(S) for S in layer), key=_set_key))
                       for layer in self.layers)
        object.__setattr__(self, "layers", layers)
        seen = set()
        for layer in layers:
            if not layer:
                raise InvalidComplex("layers must be nonempty")
            for S in layer:
                if not S <= set(range(1, self.n + 1)):
                    raise InvalidComplex(f"{sorted(S)} is not a subset of 1..{self.n}")
                if S in seen:
                    raise InvalidComplex(f"{sorted(S)} appears twice")
                seen.add(S)

    @property
    def length(self) -> int:
        return len(self.layers)

    def as_lists(self) -> list:
        return [[sorted(S) for S in layer] for layer in self.layers]


def _set_key(S):
    return (len(S), sorted(S))


def validate_nonpure(F: NonpureLayeredFamily) -> tuple:
    """Interval condition for every subset of ``{1..n}``.

    Returns ``(True, None)`` or ``(False, (subset, missing_layer))`` for the
    first failing subset in (size, lexicographic) order.
    """
    check_cap("nonpure_n", F.n, "n")
    ground = range(1, F.n + 1)
    for k in range(F.n + 1):
        for S in combinations(ground, k):
            s = set(S)
            hit = [i for i, layer in enumerate(F.layers) if any(s <= X for X in layer)]
            if hit and hit[-1] - hit[0] + 1 != len(hit):
                missing = min(set(range(hit[0], hit[-1] + 1)) - set(hit))
                return False, (S, missing)
    return True, None


def seed_nonpure() -> NonpureLayeredFamily:
    """The two-layer family ``[{1}], [{}]`` on one element."""
    return NonpureLayeredFamily(1, (({1},), (set(),)))


def extend_nonpure(F: NonpureLayeredFamily) -> NonpureLayeredFamily:
    """Add element ``n+1`` and two layers before the final empty-set layer.

    With ``X`` the first set of the second-to-last layer, the new layers are
    ``[X | {n+1}]`` and ``[{n+1}]``.
    """
    if F.layers[-1] != (frozenset(),):
        raise InvalidComplex("the last layer must hold only the empty set")
    if len(F.layers) < 2:
        raise InvalidComplex("need a layer before the empty-set layer")
    new = F.n + 1
    X = F.layers[-2][0]
    layers = F.layers[:-1] + ((X | {new},), (frozenset({new}),), F.layers[-1])
    return NonpureLayeredFamily(new, layers)


def example_hnp5() -> NonpureLayeredFamily:
    """An 11-layer family on 5 elements."""
    layers = [
        [{1}],
        [{1, 5}],
        [{1, 4}, {5}],
        [{1, 2}, {3, 5}, {4}],
        [{1, 3}, {2, 5}, {4, 5}],
        [{2, 4, 5}, {3}],
        [{2, 4}, {3, 4}],
        [{2, 3, 4}],
        [{2, 3}],
        [{2}],
        [set()],
    ]
    return NonpureLayeredFamily(5, tuple(layers))
