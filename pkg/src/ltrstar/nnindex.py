"""k-d tree over configurations with nearest and radius queries.

Static median-split tree rebuilt whenever the point count doubles; inserts
between rebuilds land in a spill buffer that queries scan linearly
(vectorized). Ties are broken by smallest id. Deletion is not supported.

Leaf points are stored contiguously after a rebuild so leaf scans are views,
and the squared-distance reduction matches a plain np.sum linear scan exactly
(column form for d=2 is the same single addition), keeping results comparable
against brute force without tolerances.
"""

import numpy as np

_LEAF_SIZE = 48


class NnIndex:
    def __init__(self, dim, leaf_size=_LEAF_SIZE):
        self.dim = dim
        self._leaf_size = leaf_size
        self._pts = np.empty((64, dim), dtype=np.float64)
        self._ids = np.empty(64, dtype=np.int64)
        self._n = 0
        self._id_set = set()
        self._built = 0          # points [0:_built) live in the tree
        self._bpts = np.empty((0, dim), dtype=np.float64)   # permuted copies
        self._bids = np.empty(0, dtype=np.int64)
        self._axis = []
        self._split = []
        self._left = []
        self._right = []
        self._lo = []
        self._hi = []

    def __len__(self):
        return self._n

    @property
    def size(self):
        return self._n

    def insert(self, q, id_):
        q = np.asarray(q, dtype=np.float64)
        if q.shape != (self.dim,):
            raise ValueError(f"point dimension {q.shape} does not match index ({self.dim})")
        if id_ in self._id_set:
            raise ValueError(f"duplicate id {id_}")
        if self._n == self._pts.shape[0]:
            self._pts = np.vstack([self._pts, np.empty_like(self._pts)])
            self._ids = np.concatenate([self._ids, np.empty_like(self._ids)])
        self._pts[self._n] = q
        self._ids[self._n] = id_
        self._id_set.add(id_)
        self._n += 1
        if self._n >= 2 * max(self._built, 1):
            self._rebuild()

    def _rebuild(self):
        self._axis, self._split = [], []
        self._left, self._right = [], []
        self._lo, self._hi = [], []
        perm = np.arange(self._n, dtype=np.int64)
        self._built = self._n
        if self._n:
            self._build(perm, 0, self._n, 0)
        self._bpts = self._pts[perm]
        self._bids = self._ids[perm]

    def _build(self, perm, lo, hi, depth):
        node = len(self._axis)
        self._axis.append(-1)
        self._split.append(0.0)
        self._left.append(-1)
        self._right.append(-1)
        self._lo.append(lo)
        self._hi.append(hi)
        if hi - lo <= self._leaf_size:
            return node
        axis = depth % self.dim
        idx = perm[lo:hi]
        order = np.argsort(self._pts[idx, axis], kind="stable")
        perm[lo:hi] = idx[order]
        mid = (lo + hi) // 2
        self._axis[node] = axis
        self._split[node] = float(self._pts[perm[mid], axis])
        self._left[node] = self._build(perm, lo, mid, depth + 1)
        self._right[node] = self._build(perm, mid, hi, depth + 1)
        return node

    def _leaf_d2(self, pts, q):
        if self.dim == 2:
            d0 = pts[:, 0] - q[0]
            d1 = pts[:, 1] - q[1]
            return d0 * d0 + d1 * d1
        d = pts - q
        return np.sum(d * d, axis=1)

    # -- queries ------------------------------------------------------------

    def nearest(self, q):
        """(id, distance) of the closest stored point; ties -> smallest id."""
        if self._n == 0:
            raise ValueError("nearest query on empty index")
        q = np.asarray(q, dtype=np.float64)
        best_d2 = np.inf
        best_id = -1

        def consider(pts, ids):
            nonlocal best_d2, best_id
            d2 = self._leaf_d2(pts, q)
            m = d2.min()
            if m <= best_d2:
                cand = int(ids[d2 == m].min())
                if m < best_d2 or cand < best_id:
                    best_d2, best_id = m, cand

        if self._built:
            axis_arr, split_arr = self._axis, self._split
            left_arr, right_arr = self._left, self._right
            stack = [0]
            while stack:
                node = stack.pop()
                axis = axis_arr[node]
                if axis < 0:
                    lo, hi = self._lo[node], self._hi[node]
                    consider(self._bpts[lo:hi], self._bids[lo:hi])
                    continue
                delta = q[axis] - split_arr[node]
                near, far = (left_arr[node], right_arr[node]) if delta < 0 else (right_arr[node], left_arr[node])
                if delta * delta <= best_d2:
                    stack.append(far)
                stack.append(near)
        if self._n > self._built:
            consider(self._pts[self._built:self._n], self._ids[self._built:self._n])
        return best_id, float(np.sqrt(best_d2))

    def within_radius(self, q, r):
        """All stored points with distance <= r, sorted by (distance, id)."""
        if r <= 0.0:
            raise ValueError("radius must be positive")
        q = np.asarray(q, dtype=np.float64)
        r2 = r * r
        out_d2, out_id = [], []

        def collect(pts, ids):
            d2 = self._leaf_d2(pts, q)
            m = d2 <= r2
            if m.any():
                out_d2.append(d2[m])
                out_id.append(ids[m])

        if self._built:
            stack = [0]
            while stack:
                node = stack.pop()
                axis = self._axis[node]
                if axis < 0:
                    lo, hi = self._lo[node], self._hi[node]
                    collect(self._bpts[lo:hi], self._bids[lo:hi])
                    continue
                delta = q[axis] - self._split[node]
                near, far = (self._left[node], self._right[node]) if delta < 0 else (self._right[node], self._left[node])
                if delta * delta <= r2:
                    stack.append(far)
                stack.append(near)
        if self._n > self._built:
            collect(self._pts[self._built:self._n], self._ids[self._built:self._n])
        if not out_d2:
            return []
        d2 = np.concatenate(out_d2)
        ids = np.concatenate(out_id)
        order = np.lexsort((ids, d2))
        return list(zip(ids[order].tolist(), np.sqrt(d2[order]).tolist()))
