"""Indexable finite spaces for exhaustive or seeded-sampled checking.

Every space knows its size and can decode any index into an element, so
"first counter-example by generation index" is well defined whether a check
enumerates the whole space or samples it.
"""

from __future__ import annotations

import random
from typing import Any, Callable, Iterator, Sequence

DEFAULT_BUDGET = 20000


class CapExceededError(Exception):
    """An enumeration would exceed its configured cap."""


class Space:
    def size(self) -> int:
        raise NotImplementedError

    def item(self, i: int) -> Any:
        raise NotImplementedError

    def __len__(self) -> int:
        return self.size()

    def __iter__(self) -> Iterator[Any]:
        return (self.item(i) for i in range(self.size()))


class Finite(Space):
    def __init__(self, items: Sequence[Any]):
        self._items = tuple(items)

    def size(self) -> int:
        return len(self._items)

    def item(self, i: int) -> Any:
        return self._items[i]


class Product(Space):
    """Tuples drawn from factor spaces; the last factor varies fastest."""

    def __init__(self, *factors: Space):
        self._factors = factors
        self._size = 1
        for f in factors:
            self._size *= f.size()

    def size(self) -> int:
        return self._size

    def item(self, i: int) -> tuple:
        out = []
        for f in reversed(self._factors):
            i, d = divmod(i, f.size())
            out.append(f.item(d))
        return tuple(reversed(out))


class Union(Space):
    """Disjoint union; members of earlier spaces come first."""

    def __init__(self, *parts: Space):
        self._parts = parts
        self._sizes = [p.size() for p in parts]

    def size(self) -> int:
        return sum(self._sizes)

    def item(self, i: int) -> Any:
        for part, n in zip(self._parts, self._sizes):
            if i < n:
                return part.item(i)
            i -= n
        raise IndexError(i)


class Mapped(Space):
    def __init__(self, base: Space, fn: Callable[[Any], Any]):
        self._base = base
        self._fn = fn

    def size(self) -> int:
        return self._base.size()

    def item(self, i: int) -> Any:
        return self._fn(self._base.item(i))


def sequences(base: Space, min_len: int, max_len: int) -> Space:
    """All tuples over base with lengths in [min_len, max_len], shortest first."""
    return Union(*(Product(*([base] * n)) for n in range(min_len, max_len + 1)))


def iter_cases(space: Space, budget: int, seed: int) -> tuple[str, Iterator[tuple[int, Any]]]:
    """Yield (generation_index, element); exhaustive iff the space fits the budget."""
    n = space.size()
    if n <= budget:
        return "exhaustive", ((i, space.item(i)) for i in range(n))
    rng = random.Random(seed)
    indices = [rng.randrange(n) for _ in range(budget)]
    return "sampled", ((i, space.item(ix)) for i, ix in enumerate(indices))
