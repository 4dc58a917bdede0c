"""Persistent lazy experience graph with epoch-scoped edge validity.

Edges are created without collision checking (state Unknown) and get tagged
valid/invalid lazily while shortest-path queries traverse them. A tag is only
trusted while the epoch it was written in is current; begin_epoch makes every
cached tag stale, because the world may have changed between tasks. Nothing is
ever deleted: an edge invalidated in one epoch may re-validate in a later one.
"""

import heapq
import math
from enum import Enum

import numpy as np

from .cspace import Path, distance
from .nnindex import NnIndex


class EdgeState(Enum):
    UNKNOWN = "unknown"
    VALID = "valid"
    INVALID = "invalid"


_UNKNOWN, _VALID, _INVALID = 0, 1, 2
_DEAD = 3   # fails against the immutable static geometry: invalid in every epoch


class ExperienceGraph:
    def __init__(self, dim):
        self.dim = dim
        self.epoch = 0
        self.configs = []
        self._coords = []        # tuple mirror of configs for scalar math
        self.nn = NnIndex(dim)
        self.adj = []            # vertex -> list of (neighbor vid, edge idx)
        self._eu = []
        self._ev = []
        self._weight = []
        self._tag = []           # _UNKNOWN/_VALID/_INVALID
        self._tag_epoch = []
        self._edge_index = {}    # (min vid, max vid) -> edge idx

    # -- structure ----------------------------------------------------------

    @property
    def size(self):
        return len(self.configs)

    @property
    def num_edges(self):
        return len(self._eu)

    def config(self, vid):
        return self.configs[vid]

    def add_vertex(self, q):
        """Insert a vertex with no edges; returns its id."""
        q = np.asarray(q, dtype=np.float64)
        vid = len(self.configs)
        self.configs.append(q)
        self._coords.append(tuple(q.tolist()))
        self.adj.append([])
        self.nn.insert(q, vid)
        return vid

    def _add_edge(self, u, v, tag, tag_epoch, weight=None):
        if u == v:
            return None
        key = (u, v) if u < v else (v, u)
        idx = self._edge_index.get(key)
        if idx is None:
            idx = len(self._eu)
            self._eu.append(key[0])
            self._ev.append(key[1])
            if weight is None:
                weight = distance(self.configs[u], self.configs[v])
            self._weight.append(weight)
            self._tag.append(tag)
            self._tag_epoch.append(tag_epoch)
            self._edge_index[key] = idx
            self.adj[u].append((v, idx))
            self.adj[v].append((u, idx))
        else:
            if self._rank(tag, tag_epoch) > self._rank(self._tag[idx], self._tag_epoch[idx]):
                self._tag[idx] = tag
                self._tag_epoch[idx] = tag_epoch
        return idx

    def _rank(self, tag, tag_epoch):
        """Informativeness: dead beats current-epoch beats stale beats unknown."""
        if tag == _UNKNOWN:
            return (0, 0, 0)
        if tag == _DEAD:
            return (3, 0, 0)
        current = 1 if tag_epoch == self.epoch else 0
        # within the same trust level, invalid outranks valid (soundness)
        return (1 + current, tag_epoch, 1 if tag == _INVALID else 0)

    def add_vertex_lazy(self, q, eps, validated_parent=None):
        """Insert q and lazily connect it to every vertex within eps.

        No collision checks happen here; the new edges are Unknown. If
        validated_parent names an existing vertex, that edge (the tree edge
        the caller just motion-checked) is tagged valid for the current epoch,
        whether or not it lies within eps.
        """
        if eps <= 0.0:
            raise ValueError("eps must be positive")
        q = np.asarray(q, dtype=np.float64)
        neighbors = self.nn.within_radius(q, eps) if self.size else []
        vid = self.add_vertex(q)
        # fresh vertex: no duplicate edges possible, append in bulk
        eu, ev = self._eu, self._ev
        wts, tags, teps = self._weight, self._tag, self._tag_epoch
        eindex, adj = self._edge_index, self.adj
        adj_v = adj[vid]
        for nbr, d in neighbors:
            idx = len(eu)
            key = (nbr, vid)
            eu.append(nbr)
            ev.append(vid)
            wts.append(d)
            tags.append(_UNKNOWN)
            teps.append(-1)
            eindex[key] = idx
            adj_v.append((nbr, idx))
            adj[nbr].append((vid, idx))
        if validated_parent is not None:
            self._add_edge(vid, validated_parent, _VALID, self.epoch)
        return vid

    def add_validated_edge(self, u, v):
        """Record a motion-checked connection as valid for the current epoch."""
        self._add_edge(u, v, _VALID, self.epoch)

    def begin_epoch(self):
        """Start a new planning episode: every cached validity tag goes stale."""
        self.epoch += 1

    def edge_state(self, u, v):
        """Effective state of edge (u, v) under the current epoch.

        Tags written in earlier epochs are untrusted and read as Unknown;
        statically-dead edges are invalid in every epoch.
        """
        key = (u, v) if u < v else (v, u)
        idx = self._edge_index[key]
        tag = self._tag[idx]
        if tag == _DEAD:
            return EdgeState.INVALID
        if tag == _UNKNOWN or self._tag_epoch[idx] != self.epoch:
            return EdgeState.UNKNOWN
        return EdgeState.VALID if tag == _VALID else EdgeState.INVALID

    def edge_tag(self, u, v):
        """Raw stored (state, epoch) of edge (u, v), ignoring the epoch rule.

        Statically-dead edges read as (INVALID, None).
        """
        key = (u, v) if u < v else (v, u)
        idx = self._edge_index[key]
        tag = self._tag[idx]
        if tag == _UNKNOWN:
            return EdgeState.UNKNOWN, -1
        if tag == _DEAD:
            return EdgeState.INVALID, None
        state = EdgeState.VALID if tag == _VALID else EdgeState.INVALID
        return state, self._tag_epoch[idx]

    # -- search ---------------------------------------------------------------

    def _shortest_path(self, src, dst, hcache=None):
        """Min-weight path over edges not currently invalid.

        Dijkstra with a min-priority queue, goal-directed by an admissible
        Euclidean heuristic (A*; identical costs to the plain form). hcache
        holds heuristic values, reusable across searches with the same dst.
        """
        n = self.size
        coords = self._coords
        goal = coords[dst]
        dist_to = [math.inf] * n
        if hcache is None or len(hcache) < n:
            hcache = [-1.0] * n
        prev = [-1] * n
        closed = bytearray(n)
        tags, tag_epochs = self._tag, self._tag_epoch
        weights, adj, epoch = self._weight, self.adj, self.epoch

        def h(v):
            cached = hcache[v]
            if cached >= 0.0:
                return cached
            s = 0.0
            for a, b in zip(coords[v], goal):
                s += (a - b) * (a - b)
            s = math.sqrt(s)
            hcache[v] = s
            return s

        dist_to[src] = 0.0
        heap = [(h(src), src)]
        while heap:
            f, u = heapq.heappop(heap)
            if closed[u]:
                continue
            if u == dst:
                path = [u]
                while path[-1] != src:
                    path.append(prev[path[-1]])
                path.reverse()
                return path, dist_to[dst]
            closed[u] = 1
            du = dist_to[u]
            for v, eidx in adj[u]:
                if closed[v]:
                    continue
                tag = tags[eidx]
                if tag == _DEAD or (tag == _INVALID and tag_epochs[eidx] == epoch):
                    continue
                cand = du + weights[eidx]
                if cand < dist_to[v]:
                    dist_to[v] = cand
                    prev[v] = u
                    heapq.heappush(heap, (cand + h(v), v))
        return None, None

    def lazy_shortest_path(self, src, dst, checker):
        """Shortest src->dst path, validating Unknown edges only on demand.

        Repeats: search over edges not invalid this epoch, then motion-check
        the candidate path's untrusted edges in order, tagging each; a failed
        edge triggers a re-search. Tags persist in the graph for later
        queries. Returns None when no candidate path remains.
        """
        if src == dst:
            q = self.configs[src]
            return Path((q, q))
        hcache = [-1.0] * self.size
        while True:
            vids, _ = self._shortest_path(src, dst, hcache)
            if vids is None:
                return None
            ok = True
            for u, v in zip(vids[:-1], vids[1:]):
                key = (u, v) if u < v else (v, u)
                eidx = self._edge_index[key]
                tag = self._tag[eidx]
                if tag == _DEAD or (tag != _UNKNOWN and self._tag_epoch[eidx] == self.epoch):
                    continue
                valid = checker.motion_valid(self.configs[u], self.configs[v])
                if valid:
                    self._tag[eidx] = _VALID
                    self._tag_epoch[eidx] = self.epoch
                else:
                    ok = False
                    # a motion blocked by immutable static geometry can never
                    # revalidate; tag it dead so no epoch re-examines it
                    static_check = getattr(checker, "motion_valid_static", None)
                    if static_check is not None and not static_check(
                            self.configs[u], self.configs[v]):
                        self._tag[eidx] = _DEAD
                        self._tag_epoch[eidx] = -1
                    else:
                        self._tag[eidx] = _INVALID
                        self._tag_epoch[eidx] = self.epoch
            if ok:
                return Path(tuple(self.configs[v] for v in vids))

    # -- merge / export -------------------------------------------------------

    def merge(self, other, eps):
        """Absorb another graph built during the current epoch.

        Vertices are deduplicated on exact coordinate equality (endpoints and
        grasp configs recur bitwise across tasks). Genuinely new vertices are
        additionally lazily connected to the pre-existing vertices within eps.
        Edge states carry over; on duplicates the more informative state wins.
        """
        if other.dim != self.dim:
            raise ValueError("cannot merge graphs of different dimension")
        pre_n = self.size
        if pre_n == 0:
            self._adopt(other)
            return
        vmap = {}
        for ovid in range(other.size):
            q = other.configs[ovid]
            if pre_n:
                nid, nd = self.nn.nearest(q)
                if nd == 0.0 and nid < pre_n:
                    vmap[ovid] = nid
                    continue
            neighbors = [
                (nbr, d) for nbr, d in (self.nn.within_radius(q, eps) if self.size else [])
                if nbr < pre_n
            ]
            vid = self.add_vertex(q)
            vmap[ovid] = vid
            for nbr, d in neighbors:
                self._add_edge(vid, nbr, _UNKNOWN, -1, weight=d)
        for eidx in range(other.num_edges):
            u = vmap[other._eu[eidx]]
            v = vmap[other._ev[eidx]]
            self._add_edge(u, v, other._tag[eidx], other._tag_epoch[eidx],
                           weight=other._weight[eidx])

    def _adopt(self, other):
        """Bulk copy into an empty graph (first-task fast path of merge)."""
        for q in other.configs:
            self.add_vertex(q)
        self._eu = list(other._eu)
        self._ev = list(other._ev)
        self._weight = list(other._weight)
        self._tag = list(other._tag)
        self._tag_epoch = list(other._tag_epoch)
        self._edge_index = dict(other._edge_index)
        self.adj = [list(a) for a in other.adj]

    def export_edge_list(self, stream):
        """Plain-text dump: vertex lines then edge lines, ids ascending."""
        names = {_UNKNOWN: "unknown", _VALID: "valid", _INVALID: "invalid",
                 _DEAD: "dead"}
        stream.write(f"# epoch {self.epoch}\n")
        for vid, q in enumerate(self.configs):
            coords = " ".join(repr(float(x)) for x in q)
            stream.write(f"v {vid} {coords}\n")
        for i in range(self.num_edges):
            stream.write(
                f"e {self._eu[i]} {self._ev[i]} {self._weight[i]!r} "
                f"{names[self._tag[i]]} {self._tag_epoch[i]}\n"
            )
