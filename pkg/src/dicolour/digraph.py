"""Mutable digraph storage with O(1) counters and O(d) vertex deletion.

Vertices are dense integer ids that stay stable under deletion (dead ids
are never reused, so colour tables indexed by id survive the whole solve).
Arcs live in flat parallel arrays; per-vertex adjacency is a fixed segment
of a shared index array with swap-removal, so deleting an arc is O(1) and
deleting a vertex is O(d_in + d_out).

A digon is a pair of opposite arcs u->v, v->u; the two arc records point
at each other through ``twin``.  Per-vertex digon counts, the global
simple-arc count and the count of vertices with underlying degree 2 are
maintained incrementally so the structural tests the solver keeps asking
("is this bidirected complete", "is the underlying graph a cycle") are
O(1) reads.

``arc_touches`` counts every arc-record read or unlink performed through
this module (and the hot loops of the solver, which index the public
arrays directly and bump the counter themselves).  It is the
machine-independent work measure used by the benchmark suite.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class DigraphError(Exception):
    pass


class DuplicateArc(DigraphError):
    pass


class SelfLoop(DigraphError):
    pass


class IndexOutOfRange(DigraphError, IndexError):
    pass


class VertexDead(DigraphError):
    pass


class Disconnected(DigraphError):
    pass


class StructureFlags(NamedTuple):
    is_bidirected_complete: bool
    underlying_is_cycle: bool


@dataclass
class Block:
    """One biconnected component, with its private arc list and degrees.

    ``attach`` is the unique vertex shared with the union of all earlier
    blocks in the order returned by ``blocks_with_order`` (None for the
    first block).  Degree dicts are in-block degrees, frozen at the time
    the decomposition was computed.
    """

    vertices: list[int]
    arcs: list[int]
    attach: int | None
    deg_in: dict[int, int]
    deg_out: dict[int, int]


class Digraph:
    """See the module docstring.  Build once, then only delete."""

    __slots__ = (
        "n",
        "m",
        "alive",
        "n_alive",
        "m_alive",
        "tail",
        "head",
        "twin",
        "pos_out",
        "pos_in",
        "out_adj",
        "in_adj",
        "out_start",
        "in_start",
        "d_out",
        "d_in",
        "digon_count",
        "simple_arc_count",
        "deg2_vertex_count",
        "live_next",
        "live_prev",
        "live_head",
        "_scratch",
        "_scratch_aux",
        "_version",
        "arc_touches",
    )

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arc_list = [(int(u), int(v)) for u, v in arcs]
        m = len(arc_list)
        self.n = n
        self.m = m
        self.alive = bytearray([1]) * n if n else bytearray()
        self.n_alive = n
        self.m_alive = m
        self.tail = array("i", bytes(4 * m))
        self.head = array("i", bytes(4 * m))
        self.twin = array("i", [-1]) * m if m else array("i")
        self.pos_out = array("i", bytes(4 * m))
        self.pos_in = array("i", bytes(4 * m))
        self.d_out = array("i", bytes(4 * n))
        self.d_in = array("i", bytes(4 * n))
        self.digon_count = array("i", bytes(4 * n))
        self._scratch = array("i", bytes(4 * n))
        self._scratch_aux = array("i", bytes(4 * n))
        self._version = 0
        self.arc_touches = 0

        tail, head = self.tail, self.head
        d_out, d_in = self.d_out, self.d_in
        for a, (u, v) in enumerate(arc_list):
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            tail[a] = u
            head[a] = v
            d_out[u] += 1
            d_in[v] += 1

        # CSR-style adjacency: fixed segments, live prefix per vertex
        self.out_start = array("i", bytes(4 * (n + 1)))
        self.in_start = array("i", bytes(4 * (n + 1)))
        acc_o = acc_i = 0
        for v in range(n):
            self.out_start[v] = acc_o
            self.in_start[v] = acc_i
            acc_o += d_out[v]
            acc_i += d_in[v]
        self.out_start[n] = acc_o
        self.in_start[n] = acc_i
        self.out_adj = array("i", bytes(4 * m))
        self.in_adj = array("i", bytes(4 * m))
        cur_o = array("i", self.out_start[:n])
        cur_i = array("i", self.in_start[:n])
        for a in range(m):
            u, v = tail[a], head[a]
            ko = cur_o[u]
            ki = cur_i[v]
            self.out_adj[ko] = a
            self.in_adj[ki] = a
            self.pos_out[a] = ko
            self.pos_in[a] = ki
            cur_o[u] = ko + 1
            cur_i[v] = ki + 1

        # duplicate detection by per-vertex scratch marking
        for v in range(n):
            stamp = self._bump()
            base = self.out_start[v]
            for k in range(base, base + d_out[v]):
                w = head[self.out_adj[k]]
                if self._scratch[w] == stamp:
                    raise DuplicateArc(f"duplicate arc ({v}, {w})")
                self._scratch[w] = stamp

        # digon pairing: mark out-neighbours, then scan in-neighbours
        twin = self.twin
        for v in range(n):
            stamp = self._bump()
            base = self.out_start[v]
            for k in range(base, base + d_out[v]):
                a = self.out_adj[k]
                w = head[a]
                self._scratch[w] = stamp
                self._scratch_aux[w] = a
            base = self.in_start[v]
            for k in range(base, base + d_in[v]):
                b = self.in_adj[k]
                u = tail[b]
                if self._scratch[u] == stamp:
                    t = self._scratch_aux[u]
                    twin[b] = t
                    twin[t] = b

        digons_twice = 0
        for v in range(n):
            base = self.in_start[v]
            cnt = 0
            for k in range(base, base + d_in[v]):
                if twin[self.in_adj[k]] != -1:
                    cnt += 1
            self.digon_count[v] = cnt
            digons_twice += cnt
        self.simple_arc_count = m - digons_twice
        self.deg2_vertex_count = sum(
            1 for v in range(n) if d_in[v] + d_out[v] - self.digon_count[v] == 2
        )
        # doubly linked list over live vertices (O(1) unsplice on delete)
        self.live_next = array("i", range(1, n + 1))
        if n:
            self.live_next[n - 1] = -1
        self.live_prev = array("i", range(-1, n - 1))
        self.live_head = 0 if n else -1
        self.arc_touches += 4 * m  # build passes

    # ---- scratch marking ----

    def _bump(self) -> int:
        self._version += 1
        return self._version

    def new_mark(self) -> int:
        """Fresh scratch stamp; pair with mark()/is_marked()."""
        return self._bump()

    def mark(self, v: int) -> None:
        self._scratch[v] = self._version

    def is_marked(self, v: int) -> bool:
        return self._scratch[v] == self._version

    # ---- read access ----

    def check_live(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise IndexOutOfRange(f"vertex {v} out of range")
        if not self.alive[v]:
            raise VertexDead(f"vertex {v} is deleted")

    def underlying_degree(self, v: int) -> int:
        return self.d_in[v] + self.d_out[v] - self.digon_count[v]

    def out_pairs(self, v: int) -> Iterator[tuple[int, int]]:
        """(arc id, head) for each live out-arc of v."""
        base = self.out_start[v]
        adj, head = self.out_adj, self.head
        for k in range(base, base + self.d_out[v]):
            a = adj[k]
            yield a, head[a]

    def in_pairs(self, v: int) -> Iterator[tuple[int, int]]:
        """(arc id, tail) for each live in-arc of v."""
        base = self.in_start[v]
        adj, tail = self.in_adj, self.tail
        for k in range(base, base + self.d_in[v]):
            a = adj[k]
            yield a, tail[a]

    def underlying_pairs(self, v: int) -> Iterator[tuple[int, int]]:
        """(representative arc id, neighbour) once per underlying edge at v.

        Out-arcs always represent their edge; an in-arc represents it only
        when it has no twin, so each digon is reported once, via its out-arc.
        """
        for a, w in self.out_pairs(v):
            yield a, w
        twin = self.twin
        for a, w in self.in_pairs(v):
            if twin[a] == -1:
                yield a, w

    def live_vertices(self) -> Iterator[int]:
        v = self.live_head
        nxt = self.live_next
        while v >= 0:
            yield v
            v = nxt[v]

    def first_live(self) -> int:
        if self.live_head < 0:
            raise VertexDead("no live vertices")
        return self.live_head

    def first_unmarked_live(self) -> int:
        """First live vertex not carrying the current scratch stamp.

        Walks the live list, so the cost is the number of marked vertices
        skipped plus one, not the vertex count.
        """
        v = self.live_head
        scratch, stamp = self._scratch, self._version
        while v >= 0:
            if scratch[v] != stamp:
                return v
            v = self.live_next[v]
        raise VertexDead("every live vertex is marked")

    def live_arcs(self) -> Iterator[tuple[int, int, int]]:
        """(arc id, tail, head) for every live arc."""
        tail, head = self.tail, self.head
        for v in range(self.n):
            if self.alive[v]:
                base = self.out_start[v]
                for k in range(base, base + self.d_out[v]):
                    a = self.out_adj[k]
                    yield a, tail[a], head[a]

    # ---- mutation ----

    def _unlink_in(self, a: int) -> None:
        # remove arc a from its head's in-segment (swap with segment tail)
        w = self.head[a]
        last = self.in_start[w] + self.d_in[w] - 1
        k = self.pos_in[a]
        b = self.in_adj[last]
        self.in_adj[k] = b
        self.pos_in[b] = k
        self.d_in[w] -= 1

    def _unlink_out(self, a: int) -> None:
        u = self.tail[a]
        last = self.out_start[u] + self.d_out[u] - 1
        k = self.pos_out[a]
        b = self.out_adj[last]
        self.out_adj[k] = b
        self.pos_out[b] = k
        self.d_out[u] -= 1

    def delete_vertex(self, v: int) -> None:
        """Remove v and all incident arcs; O(d_in(v) + d_out(v))."""
        self.check_live(v)
        d_in, d_out, digon = self.d_in, self.d_out, self.digon_count
        head, tail, twin = self.head, self.tail, self.twin
        self.arc_touches += d_in[v] + d_out[v]
        if d_in[v] + d_out[v] - digon[v] == 2:
            self.deg2_vertex_count -= 1

        base = self.out_start[v]
        for k in range(base, base + d_out[v]):
            a = self.out_adj[k]
            w = head[a]
            before2 = d_in[w] + d_out[w] - digon[w] == 2
            self._unlink_in(a)
            t = twin[a]
            if t != -1:
                twin[a] = -1
                twin[t] = -1
                digon[v] -= 1
                digon[w] -= 1
                self.simple_arc_count += 1
            else:
                self.simple_arc_count -= 1
            self.m_alive -= 1
            after2 = d_in[w] + d_out[w] - digon[w] == 2
            if before2 != after2:
                self.deg2_vertex_count += 1 if after2 else -1

        base = self.in_start[v]
        for k in range(base, base + d_in[v]):
            a = self.in_adj[k]
            u = tail[a]
            before2 = d_in[u] + d_out[u] - digon[u] == 2
            self._unlink_out(a)
            t = twin[a]
            if t != -1:
                twin[a] = -1
                twin[t] = -1
                digon[v] -= 1
                digon[u] -= 1
                self.simple_arc_count += 1
            else:
                self.simple_arc_count -= 1
            self.m_alive -= 1
            after2 = d_in[u] + d_out[u] - digon[u] == 2
            if before2 != after2:
                self.deg2_vertex_count += 1 if after2 else -1

        d_out[v] = 0
        d_in[v] = 0
        digon[v] = 0
        self.alive[v] = 0
        self.n_alive -= 1
        nxt, prv = self.live_next[v], self.live_prev[v]
        if prv >= 0:
            self.live_next[prv] = nxt
        else:
            self.live_head = nxt
        if nxt >= 0:
            self.live_prev[nxt] = prv

    # ---- structure ----

    def structure_flags(self) -> StructureFlags:
        na = self.n_alive
        bidi_complete = self.simple_arc_count == 0 and self.m_alive == na * (na - 1)
        cycle = na >= 3 and self.deg2_vertex_count == na
        return StructureFlags(bidi_complete, cycle)

    def is_connected(self) -> bool:
        if self.n_alive == 0:
            return False
        seen = self._bump()
        scratch = self._scratch
        root = self.first_live()
        scratch[root] = seen
        queue = [root]
        qi = 0
        count = 1
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for _, w in self.underlying_pairs(u):
                self.arc_touches += 1
                if scratch[w] != seen:
                    scratch[w] = seen
                    queue.append(w)
                    count += 1
        return count == self.n_alive

    def spanning_order(
        self, root: int, excluded: Iterable[int] = ()
    ) -> list[int]:
        """Leaves-to-root order of a spanning tree over the live vertices.

        Every vertex but the last (the root) has a neighbour later in the
        order, namely its tree parent.  ``excluded`` vertices are treated
        as absent; the remaining vertices must be connected, else
        Disconnected is raised.
        """
        self.check_live(root)
        seen = self._bump()
        scratch = self._scratch
        skipped = 0
        for v in excluded:
            if scratch[v] != seen:
                scratch[v] = seen
                skipped += 1
        if scratch[root] == seen:
            raise ValueError("root is excluded")
        scratch[root] = seen
        queue = [root]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for _, w in self.underlying_pairs(u):
                self.arc_touches += 1
                if scratch[w] != seen:
                    scratch[w] = seen
                    queue.append(w)
        if len(queue) != self.n_alive - skipped:
            raise Disconnected(
                f"spanning tree reached {len(queue)} of {self.n_alive - skipped}"
            )
        queue.reverse()
        return queue

    def blocks_with_order(self) -> list[Block]:
        """Blocks of the underlying graph, attach vertices identified.

        Order: the first block has no attach vertex; every later block
        shares exactly its attach vertex with the union of earlier blocks.
        Reverse order is therefore end-block-first, which is how the block
        reduction consumes it.  Linear time, iterative (no recursion).
        """
        n = self.n
        if self.n_alive == 0:
            raise Disconnected("empty digraph")
        root = self.first_live()
        if self.m_alive == 0:
            if self.n_alive != 1:
                raise Disconnected("isolated vertices")
            return [Block([root], [], None, {root: 0}, {root: 0})]

        disc = array("i", bytes(4 * n))  # 0 = unvisited
        low = array("i", bytes(4 * n))
        parent_edge = array("i", [-1]) * n
        out_adj, in_adj = self.out_adj, self.in_adj
        out_start, in_start = self.out_start, self.in_start
        d_out, d_in = self.d_out, self.d_in
        head, tail, twin = self.head, self.tail, self.twin

        blocks_popped: list[Block] = []
        edge_stack: list[int] = []
        # frame: [vertex, next edge index, tree edge rep that discovered it]
        frames: list[list[int]] = [[root, 0, -1]]
        disc[root] = low[root] = 1
        clock = 2
        visited = 1

        while frames:
            frame = frames[-1]
            v, k = frame[0], frame[1]
            limit = d_out[v] + d_in[v]
            advanced = False
            while k < limit:
                if k < d_out[v]:
                    a = out_adj[out_start[v] + k]
                    w = head[a]
                    rep = a
                else:
                    a = in_adj[in_start[v] + (k - d_out[v])]
                    rep = a
                    if twin[a] != -1:
                        k += 1
                        continue  # digon edge is represented by its out-arc
                    w = tail[a]
                k += 1
                self.arc_touches += 1
                if rep == parent_edge[v]:
                    continue
                if disc[w] == 0:
                    frame[1] = k
                    edge_stack.append(rep)
                    parent_edge[w] = twin[rep] if twin[rep] != -1 else rep
                    disc[w] = low[w] = clock
                    clock += 1
                    visited += 1
                    frames.append([w, 0, rep])
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append(rep)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
                # disc[w] > disc[v]: edge already stacked from w's side
            if advanced:
                continue
            frame[1] = k
            frames.pop()
            if frames:
                u = frames[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    tree_rep = frame[2]
                    reps = []
                    while True:
                        e = edge_stack.pop()
                        reps.append(e)
                        if e == tree_rep:
                            break
                    blocks_popped.append(self._make_block(reps, attach=u))
        if visited != self.n_alive:
            raise Disconnected(f"block scan reached {visited} of {self.n_alive}")
        blocks_popped.reverse()
        blocks_popped[0].attach = None
        return blocks_popped

    def _make_block(self, reps: list[int], attach: int | None) -> Block:
        arcs: list[int] = []
        twin = self.twin
        for e in reps:
            arcs.append(e)
            t = twin[e]
            if t != -1:
                arcs.append(t)
        deg_in: dict[int, int] = {}
        deg_out: dict[int, int] = {}
        tail, head = self.tail, self.head
        for a in arcs:
            u, w = tail[a], head[a]
            deg_out[u] = deg_out.get(u, 0) + 1
            deg_in[w] = deg_in.get(w, 0) + 1
            deg_in.setdefault(u, 0)
            deg_out.setdefault(w, 0)
        return Block(list(deg_in), arcs, attach, deg_in, deg_out)

    # ---- copying ----

    def copy(self) -> "Digraph":
        """Structural copy sharing nothing; ids preserved."""
        g = object.__new__(Digraph)
        g.n = self.n
        g.m = self.m
        g.alive = bytearray(self.alive)
        g.n_alive = self.n_alive
        g.m_alive = self.m_alive
        g.tail = array("i", self.tail)
        g.head = array("i", self.head)
        g.twin = array("i", self.twin)
        g.pos_out = array("i", self.pos_out)
        g.pos_in = array("i", self.pos_in)
        g.out_adj = array("i", self.out_adj)
        g.in_adj = array("i", self.in_adj)
        g.out_start = array("i", self.out_start)
        g.in_start = array("i", self.in_start)
        g.d_out = array("i", self.d_out)
        g.d_in = array("i", self.d_in)
        g.digon_count = array("i", self.digon_count)
        g.simple_arc_count = self.simple_arc_count
        g.deg2_vertex_count = self.deg2_vertex_count
        g.live_next = array("i", self.live_next)
        g.live_prev = array("i", self.live_prev)
        g.live_head = self.live_head
        g._scratch = array("i", bytes(4 * self.n))
        g._scratch_aux = array("i", bytes(4 * self.n))
        g._version = 0
        g.arc_touches = 0
        return g


def build(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Construct a Digraph; errors on self-loops, duplicates, bad ids."""
    return Digraph(n, arcs)
