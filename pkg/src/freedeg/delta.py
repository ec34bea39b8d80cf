"""Monotone maps between finite ordinals [m] = {0, ..., m}.

These are the arrows of the simplex category.  Injective maps form the
wide subcategory used for semisimplicial sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

Kind = Literal["all", "epi", "mono"]


class CompositionError(ValueError):
    """Raised when two poset maps are not composable."""


@dataclass(frozen=True, order=True)
class PosetMap:
    """A weakly increasing map ``[source_size - 1] -> [target_size - 1]``."""

    source_size: int
    target_size: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.source_size < 1 or self.target_size < 1:
            raise ValueError("ordinals are nonempty")
        if len(self.values) != self.source_size:
            raise ValueError(
                f"expected {self.source_size} values, got {len(self.values)}"
            )
        prev = 0
        for v in self.values:
            if not 0 <= v < self.target_size:
                raise ValueError(f"value {v} outside [{self.target_size - 1}]")
            if v < prev:
                raise ValueError(f"values {self.values} are not monotone")
            prev = v

    @classmethod
    def of(cls, values: Sequence[int], target: int | None = None) -> PosetMap:
        """Build from values; ``target`` is the top element n of [n]."""
        values = tuple(values)
        n = max(values) if target is None else target
        return cls(len(values), n + 1, values)

    @property
    def source(self) -> int:
        return self.source_size - 1

    @property
    def target(self) -> int:
        return self.target_size - 1

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target_size

    @property
    def is_injective(self) -> bool:
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_identity(self) -> bool:
        return self.source_size == self.target_size and self.is_injective

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self) -> str:
        return f"[{self.source}]->[{self.target}]{self.values}"


def identity(n: int) -> PosetMap:
    return PosetMap(n + 1, n + 1, tuple(range(n + 1)))


def coface(n: int, i: int) -> PosetMap:
    """The injection ``[n-1] -> [n]`` skipping ``i``; it induces the face d_i."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"no coface d_{i} into [{n}]")
    return PosetMap(n, n + 1, tuple(j if j < i else j + 1 for j in range(n)))


def codegeneracy(n: int, i: int) -> PosetMap:
    """The surjection ``[n+1] -> [n]`` hitting ``i`` twice; it induces s_i."""
    if not 0 <= i <= n:
        raise ValueError(f"no codegeneracy s_{i} onto [{n}]")
    return PosetMap(n + 2, n + 1, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def compose(g: PosetMap, f: PosetMap) -> PosetMap:
    """Return ``g o f``."""
    if f.target_size != g.source_size:
        raise CompositionError(f"cannot compose {g} after {f}")
    return PosetMap(f.source_size, g.target_size, tuple(g.values[v] for v in f.values))


def epi_mono_factorize(f: PosetMap) -> tuple[PosetMap, PosetMap]:
    """Factor ``f = mono o epi`` through the image of ``f``."""
    image = f.image()
    rank = {v: r for r, v in enumerate(image)}
    epi = PosetMap(f.source_size, len(image), tuple(rank[v] for v in f.values))
    mono = PosetMap(len(image), f.target_size, image)
    return epi, mono


def mono_as_cofaces(f: PosetMap) -> list[int]:
    """Indices ``i`` of the cofaces whose composite is the injection ``f``.

    The list is ordered so that the face operators apply left to right:
    ``f^* x = d_{i_last}( ... d_{i_first} x)`` reads as "delete the largest
    missing vertex first".
    """
    if not f.is_injective:
        raise ValueError(f"{f} is not injective")
    hit = set(f.values)
    return [j for j in range(f.target_size - 1, -1, -1) if j not in hit]


def epi_as_codegeneracies(s: PosetMap) -> list[int]:
    """Indices of the degeneracy operators realizing the surjection ``s``.

    ``s^* x`` is obtained by applying ``s_i`` for each returned ``i`` in
    order, starting from ``x``.
    """
    if not s.is_surjective:
        raise ValueError(f"{s} is not surjective")
    ops = []
    values = list(s.values)
    # peel one repeated value at a time: s = sigma_v o s'
    while len(set(values)) < len(values):
        i = next(j for j in range(len(values) - 1) if values[j] == values[j + 1])
        ops.append(values[i])
        values = values[: i + 1] + [v + 1 for v in values[i + 1 :]]
    return ops


def enumerate_maps(m: int, n: int, kind: Kind = "all") -> list[PosetMap]:
    """All monotone maps ``[m] -> [n]`` of the given kind, lexicographically."""
    if m < 0 or n < 0:
        raise ValueError("ordinals must be nonnegative")
    if kind == "mono":
        return [PosetMap(m + 1, n + 1, c) for c in itertools.combinations(range(n + 1), m + 1)]
    maps = [
        PosetMap(m + 1, n + 1, c)
        for c in itertools.combinations_with_replacement(range(n + 1), m + 1)
    ]
    if kind == "epi":
        return [f for f in maps if f.is_surjective]
    if kind != "all":
        raise ValueError(f"unknown kind {kind!r}")
    return maps


def surjections_from(m: int) -> Iterator[PosetMap]:
    """Every surjection out of [m], ordered by target size then values."""
    for n in range(m + 1):
        yield from enumerate_maps(m, n, "epi")
