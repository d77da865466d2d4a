"""
Fenwick (binary indexed) tree over non-negative integer weights, used to draw
a class with probability proportional to its weight. ``find`` returns the
smallest class whose cumulative weight reaches the query, following the
search procedure of the classical cumulative-frequency table.
"""


class FenwickSampler:
    """
    Weighted classes ``0 .. capacity - 1``. Capacity grows on demand, and a
    bulk ``rebuild`` replaces every weight in linear time.
    """

    def __init__(self, weights: list[int] | None = None, capacity: int = 8):
        self._weights: list[int] = []
        self._tree: list[int] = [0]
        self._capacity = 0
        self._top_bit = 0
        self.rebuild(list(weights or []), max(capacity, len(weights or [])))

    def __len__(self) -> int:
        return self._capacity

    @property
    def total(self) -> int:
        """Sum of all weights."""
        return self._total

    def weight(self, index: int) -> int:
        return self._weights[index] if index < self._capacity else 0

    def rebuild(self, weights: list[int], capacity: int | None = None) -> None:
        """Replace all weights, building the tree in O(capacity)."""
        capacity = max(capacity or 0, len(weights), 1)
        self._capacity = capacity
        self._weights = list(weights) + [0] * (capacity - len(weights))
        tree = [0] + self._weights
        for j in range(1, capacity + 1):
            parent = j + (j & -j)
            if parent <= capacity:
                tree[parent] += tree[j]
        self._tree = tree
        self._total = sum(self._weights)
        u = capacity
        while u != 0:
            self._top_bit = u
            u -= u & -u

    def increment(self, index: int, delta: int) -> None:
        """Add ``delta`` to the weight of class ``index``."""
        if index >= self._capacity:
            self.rebuild(self._weights, max(2 * self._capacity, index + 1))
        new_weight = self._weights[index] + delta
        if new_weight < 0:
            raise ValueError(f"weight of class {index} would become negative")
        self._weights[index] = new_weight
        self._total += delta
        j = index + 1
        while j <= self._capacity:
            self._tree[j] += delta
            j += j & -j

    def cumulative(self, index: int) -> int:
        """Sum of weights of classes ``0 .. index``."""
        j = min(index + 1, self._capacity)
        s = 0
        while j > 0:
            s += self._tree[j]
            j -= j & -j
        return s

    def find(self, v: int) -> int:
        """Smallest class whose cumulative weight is >= v (1 <= v <= total)."""
        if not 1 <= v <= self._total:
            raise ValueError(f"query {v} outside [1, {self._total}]")
        j = 0
        s = v
        half = self._top_bit
        while half > 0:
            while j + half > self._capacity:
                half >>= 1
            k = j + half
            if s > self._tree[k]:
                j = k
                s -= self._tree[j]
            half >>= 1
        return j

    def sample(self, rng) -> int:
        """Draw a class with probability weight / total."""
        return self.find(rng.below(self._total) + 1)
