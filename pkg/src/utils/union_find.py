"""
Union Find
==========
Disjoint sets over hashable keys with path compression, used to turn
pairwise intersection tests into connected components.
"""

from typing import Dict, Hashable, Iterable, List, Tuple


class UnionFind:
    def __init__(self, keys: Iterable[Hashable] = ()):
        self.forest: Dict[Hashable, Hashable] = {}
        for key in keys:
            self.add(key)

    def add(self, k: Hashable) -> Hashable:
        if k not in self.forest:
            self.forest[k] = k
        return k

    def find(self, k: Hashable) -> Hashable:
        if k not in self.forest:
            self.forest[k] = k

        root = k
        while root != self.forest[root]:
            root = self.forest[root]

        # Path compression.
        node = k
        while node != self.forest[node]:
            self.forest[node], node = root, self.forest[node]

        return root

    def union(self, a: Hashable, b: Hashable) -> Hashable:
        root_a = self.find(a)
        root_b = self.find(b)
        if root_a != root_b:
            self.forest[root_b] = root_a
        return root_a

    def groups(self) -> List[Tuple[Hashable, ...]]:
        """Components in order of their first-inserted member, members in insertion order"""
        grouped: Dict[Hashable, List[Hashable]] = {}
        for key in self.forest:
            grouped.setdefault(self.find(key), []).append(key)
        return [tuple(members) for members in grouped.values()]

    def count(self) -> int:
        return len({self.find(key) for key in self.forest})
