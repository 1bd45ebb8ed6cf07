"""Undirected edge sets over nodes ``0 .. p-1``."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

import numpy as np

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.linalg.core import SymmetricMatrix

Pair = tuple[int, int]


def _normalize(pair: Iterable[int], p: int) -> Pair:
    i, j = (int(k) for k in pair)
    if i == j:
        raise InvalidParameter(f"self-loop ({i}, {j}) is not an edge")
    if not (0 <= i < p and 0 <= j < p):
        raise InvalidParameter(f"edge ({i}, {j}) outside 0..{p - 1}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class EdgeSet:
    """Set of unordered off-diagonal pairs ``(i, j)`` with ``i < j``."""

    p: int
    pairs: frozenset[Pair] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.p < 1:
            raise InvalidParameter(f"p must be positive, got {self.p}")
        object.__setattr__(self, "pairs", frozenset(_normalize(e, self.p) for e in self.pairs))

    @classmethod
    def from_pairs(cls, p: int, pairs: Iterable[Iterable[int]]) -> EdgeSet:
        return cls(p=p, pairs=frozenset(tuple(e) for e in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted())

    def __contains__(self, pair: object) -> bool:
        if not isinstance(pair, tuple) or len(pair) != 2:
            return False
        i, j = pair
        return ((i, j) if i < j else (j, i)) in self.pairs

    def sorted(self) -> list[Pair]:
        """Pairs in lexicographic order."""
        return sorted(self.pairs)

    def neighbors(self, r: int) -> frozenset[int]:
        """Nodes adjacent to ``r``."""
        return frozenset(j if i == r else i for i, j in self.pairs if r in (i, j))

    def degrees(self) -> list[int]:
        deg = [0] * self.p
        for i, j in self.pairs:
            deg[i] += 1
            deg[j] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def with_pair(self, pair: Pair) -> EdgeSet:
        return EdgeSet(self.p, self.pairs | {_normalize(pair, self.p)})

    def without_pair(self, pair: Pair) -> EdgeSet:
        return EdgeSet(self.p, self.pairs - {_normalize(pair, self.p)})

    def to_list(self) -> list[list[int]]:
        """JSON-friendly ``[[i, j], ...]``."""
        return [[i, j] for i, j in self.sorted()]


def edge_set_of_precision(theta: SymmetricMatrix, tol: float = 1e-8) -> EdgeSet:
    """Edges ``(i, j)``, ``i < j``, where ``|Theta_ij| > tol``."""
    if tol < 0:
        raise InvalidParameter(f"tol must be non-negative, got {tol}")
    arr = np.asarray(theta, dtype=float)
    rows, cols = np.nonzero(np.triu(np.abs(arr) > tol, k=1))
    return EdgeSet(arr.shape[0], frozenset(zip(rows.tolist(), cols.tolist(), strict=True)))
