"""Disjoint-set forest over the states 0..n-1 of a raw graph."""
from typing import List


class UnionFind:
    """List-based disjoint-set forest with union-by-rank and path compression."""

    def __init__(self, size: int):
        self._parents: List[int] = list(range(size))
        self._ranks: List[int] = [0] * size

    def __len__(self) -> int:
        return len(self._parents)

    def find(self, a: int) -> int:
        root = a
        while self._parents[root] != root:
            root = self._parents[root]
        # Compress path.
        while self._parents[a] != root:
            self._parents[a], a = root, self._parents[a]
        return root

    def union(self, a: int, b: int) -> int:
        """Merges the classes of a and b; returns the surviving root."""
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a == root_b:
            return root_a
        if self._ranks[root_a] < self._ranks[root_b]:
            root_a, root_b = root_b, root_a
        self._parents[root_b] = root_a
        if self._ranks[root_a] == self._ranks[root_b]:
            self._ranks[root_a] += 1
        return root_a

    def classes(self) -> List[int]:
        return [self.find(a) for a in range(len(self._parents))]
