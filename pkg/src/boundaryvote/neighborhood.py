"""Fixed-radius neighbor queries over a sensor field.

Neighborhoods are closed balls: two sensors at distance exactly r are
neighbors. Backed by a k-d tree; the bulk pair listing is cached so a whole
field's neighbor sums cost one pass over the pair array.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree


class NeighborIndex:
    """Radius-r neighbor index over sensor positions."""

    def __init__(self, field, r: float):
        if r <= 0:
            raise ValueError("r must be positive")
        self.r = float(r)
        self.positions = np.column_stack((field.x, field.y))
        self.n = self.positions.shape[0]
        self._tree: cKDTree | None = None
        self._pairs: tuple[np.ndarray, np.ndarray] | None = None
        self._counts: np.ndarray | None = None

    @classmethod
    def from_pairs(cls, field, r: float, i: np.ndarray, j: np.ndarray) -> "NeighborIndex":
        """Build an index around a precomputed unique-pair listing (i < j)."""
        index = cls(field, r)
        index._pairs = (np.ascontiguousarray(i), np.ascontiguousarray(j))
        return index

    @property
    def tree(self) -> cKDTree:
        if self._tree is None:
            self._tree = cKDTree(self.positions)
        return self._tree

    @property
    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """All unordered neighbor pairs (i, j) with i < j, distance <= r."""
        if self._pairs is None:
            if self.n == 0:
                empty = np.empty(0, dtype=np.int64)
                self._pairs = (empty, empty)
            else:
                raw = self.tree.query_pairs(self.r, output_type="ndarray")
                order = np.lexsort((raw[:, 1], raw[:, 0]))
                raw = raw[order]
                self._pairs = (np.ascontiguousarray(raw[:, 0]), np.ascontiguousarray(raw[:, 1]))
        return self._pairs

    @property
    def counts(self) -> np.ndarray:
        """Neighbor count per sensor."""
        if self._counts is None:
            i, j = self.pairs
            self._counts = np.bincount(i, minlength=self.n) + np.bincount(j, minlength=self.n)
        return self._counts

    def neighbors_within(self, s) -> np.ndarray:
        """Ids of all other sensors within the closed ball of radius r, ascending."""
        sid = int(getattr(s, "id", s))
        if not 0 <= sid < self.n:
            raise IndexError(f"unknown sensor id {sid}")
        ids = self.tree.query_ball_point(self.positions[sid], self.r)
        out = np.array(sorted(k for k in ids if k != sid), dtype=np.int64)
        return out

    def count_sums(self, values: np.ndarray) -> np.ndarray:
        """Per-sensor sums of an integer/bool per-neighbor quantity (exact)."""
        i, j = self.pairs
        v = np.asarray(values)
        sums = np.bincount(i[v[j]], minlength=self.n) + np.bincount(j[v[i]], minlength=self.n)
        return sums

    def weighted_sums(self, values: np.ndarray) -> np.ndarray:
        """Per-sensor sums of a real-valued per-neighbor quantity."""
        i, j = self.pairs
        v = np.asarray(values, dtype=float)
        return (
            np.bincount(i, weights=v[j], minlength=self.n)
            + np.bincount(j, weights=v[i], minlength=self.n)
        )


def build_index(field, r: float) -> NeighborIndex:
    """Index a sensor field for radius-r neighbor queries."""
    return NeighborIndex(field, r)


def neighbors_within(index: NeighborIndex, s) -> np.ndarray:
    return index.neighbors_within(s)
