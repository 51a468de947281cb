"""Two-colour engine: colours valid tight biconnected pairs that are not hard.

Everything in this module works on instances with exactly two colours.
The entry points are:

* ``reduce_to_two``: turn an instance with any number of colours into a
  two-colour instance by merging all colours but a carefully chosen one.
* ``solve_two_colour_biconnected``: fully colour a two-colour instance
  whose digraph is biconnected, assuming the pair is not hard.
* ``lift_two_colouring``: expand a two-colouring of the merged instance
  back into a colouring of the original instance.

The engine peels a biconnected digraph down to a cycle using an ear
decomposition (``csp_decompose``), keeping two local properties as loop
invariants:

* every colour keeps at least one unit of in-budget at each vertex with
  in-degree > 0, and likewise on the out side ("one-each-side");
* at any vertex whose in-neighbourhood equals its out-neighbourhood,
  every colour's budget is symmetric ("symmetric-at-twins").

Whenever a step breaks an invariant, a dedicated solver finishes the
whole instance at once, so each of them runs at most once per solve.
"""

from __future__ import annotations

from typing import Iterator

from .budget import BudgetTable
from .digraph import Digraph
from .reduction import (
    Instance,
    PartialColouring,
    PreconditionViolated,
    ReductionError,
    Witness,
    colour_one,
    greedy_colour,
    reduce_by_colouring,
    solve_by_total_budget,
    solve_loose,
)

__all__ = [
    "CYCLE",
    "PATH",
    "STAR",
    "Cell",
    "NotBiconnected",
    "colour_path_ear",
    "colour_star_centre",
    "csp_decompose",
    "lift_two_colouring",
    "reduce_to_two",
    "solve_complete",
    "solve_cycle",
    "solve_if_not_DS",
    "solve_if_not_E",
    "solve_subwheel",
    "solve_two_colour_biconnected",
]


class NotBiconnected(ReductionError):
    """The digraph handed to the ear decomposition is not biconnected."""


# ---------------------------------------------------------------------------
# local invariant checks
# ---------------------------------------------------------------------------


def _one_each_side_at(inst: Instance, v: int) -> bool:
    g, b = inst.digraph, inst.budgets
    din, dout = g.d_in[v], g.d_out[v]
    for c in (1, 2):
        fin, fout = b.get(v, c)
        if din > 0 and fin < 1:
            return False
        if dout > 0 and fout < 1:
            return False
    return True


def _symmetric_at_twins_at(inst: Instance, v: int) -> bool:
    g, b = inst.digraph, inst.budgets
    if not (g.digon_count[v] == g.d_in[v] == g.d_out[v]):
        return True  # in- and out-neighbourhoods differ; no constraint
    for c in (1, 2):
        fin, fout = b.get(v, c)
        if fin != fout:
            return False
    return True


# ---------------------------------------------------------------------------
# invariant-breaking solvers
# ---------------------------------------------------------------------------


def solve_if_not_E(inst: Instance) -> PartialColouring | None:
    """Finish the instance if some colour is exhausted on one side.

    Looks for an arc uv and a colour c with either f_c out-empty at u or
    f_c in-empty at v while the other endpoint can still take c.  Such an
    arc exists exactly when the one-each-side property fails (the pair
    being valid, tight, biconnected and not hard).  Colouring the
    non-empty endpoint with c then clamps a decrement at the other one,
    which makes the reduced pair loose, and loose pairs always colour.

    Returns None when the property holds.
    """
    g, b = inst.digraph, inst.budgets
    pick = None
    scanned = 0
    for _, u, v in g.live_arcs():
        scanned += 1
        for c in (1, 2):
            fu = b.get(u, c)
            fv = b.get(v, c)
            if fu[1] == 0 and fv != (0, 0):
                pick = (v, c)
                break
            if fv[0] == 0 and fu != (0, 0):
                pick = (u, c)
                break
        if pick is not None:
            break
    g.arc_touches += scanned
    if pick is None:
        return None
    colour_one(inst, *pick)
    return solve_loose(inst)


def solve_if_not_DS(inst: Instance) -> PartialColouring | None:
    """Finish the instance if budgets are asymmetric at a twin vertex.

    A twin vertex is one whose in-neighbourhood equals its
    out-neighbourhood.  If some colour has unequal in- and out-budget at
    such a vertex x, colouring everything else greedily along a spanning
    tree and giving x a leftover colour always works: the asymmetry
    leaves at least one unit on one side of some colour at x after the
    greedy pass.

    Returns None when no such vertex exists.
    """
    g, b = inst.digraph, inst.budgets
    bad = None
    for v in g.live_vertices():
        if g.digon_count[v] == g.d_in[v] == g.d_out[v]:
            for c, fin, fout in b.chain(v):
                if fin != fout:
                    bad = v
                    break
        if bad is not None:
            break
    if bad is None:
        return None
    order = g.spanning_order(bad)
    greedy_colour(inst, order[:-1])
    c = b.first_nonzero(bad)
    if c is None:
        raise ReductionError("asymmetric twin vertex ran out of budget")
    colour_one(inst, bad, c)
    return inst.colouring


def solve_complete(inst: Instance) -> PartialColouring:
    """Colour a tight pair on a bidirected complete digraph.

    Preconditions: two colours, valid, tight, not hard, both local
    invariants hold, and the live digraph is bidirected complete.  The
    budgets are then symmetric, so each vertex carries a pair of row
    values.  Colouring k = min f_1 vertices (avoiding the minimiser v
    and some vertex u with a strictly larger row) with colour 1 empties
    colour 1 at v without any clamp, which breaks one-each-side and the
    dedicated solver finishes.
    """
    g, b = inst.digraph, inst.budgets
    live = list(g.live_vertices())
    v = min(live, key=lambda x: b.get(x, 1)[1])
    k = b.get(v, 1)[1]
    u = next((x for x in live if b.get(x, 1)[1] > k), None)
    if u is None:
        raise PreconditionViolated(
            "constant rows on a bidirected complete digraph form a hard pair"
        )
    chosen = []
    for x in live:
        if len(chosen) == k:
            break
        if x != u and x != v:
            chosen.append(x)
    if len(chosen) < k:
        raise PreconditionViolated("budget row exceeds the vertex count")
    reduce_by_colouring(inst, ((x, 1) for x in chosen))
    inst.refresh()
    if not inst.is_tight:
        return solve_loose(inst)
    res = solve_if_not_E(inst)
    if res is None:
        raise ReductionError("complete-case reduction left both sides stocked")
    return res


# ---------------------------------------------------------------------------
# cycles and near-cycles
# ---------------------------------------------------------------------------


def solve_cycle(inst: Instance) -> PartialColouring:
    """Colour a tight pair whose underlying graph is a cycle.

    Under tightness and one-each-side the cycle is either fully
    bidirected with both budgets pinned at (1,1), or an orientation with
    only sources and sinks.  A bidirected cycle of even length takes the
    two colours alternately; an odd one is a hard pair and rejected.  A
    source/sink cycle is coloured by side: sources get colour 1, sinks
    colour 2, each class an independent set.
    """
    g, b = inst.digraph, inst.budgets
    na, ma = g.n_alive, g.m_alive
    if ma == 2 * na:
        if na % 2 == 1:
            raise PreconditionViolated("odd bidirected cycle is a hard pair")
        order = _cycle_walk(g)
        reduce_by_colouring(
            inst, ((v, 1 if j % 2 == 0 else 2) for j, v in enumerate(order))
        )
        return inst.colouring
    if ma == na:
        assignments = []
        for v in g.live_vertices():
            if g.d_in[v] == 1:
                raise PreconditionViolated(
                    "cycle orientation mixes sources and path vertices"
                )
            assignments.append((v, 1 if g.d_out[v] > 0 else 2))
        reduce_by_colouring(inst, assignments)
        return inst.colouring
    raise PreconditionViolated("cycle is neither bidirected nor source/sink")


def _cycle_walk(g: Digraph) -> list[int]:
    """Live vertices in cyclic order; the underlying graph must be a cycle."""
    start = g.first_live()
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = -1
        for _, w in g.underlying_pairs(cur):
            g.arc_touches += 1
            if w != prev:
                nxt = w
                break
        if nxt == -1 or nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != g.n_alive:
        raise PreconditionViolated("underlying graph is not a single cycle")
    return order


def _rim_order(g: Digraph, hub: int) -> list[int]:
    """Cyclic order of the live vertices other than hub.

    The underlying graph minus hub must be a cycle.
    """
    start = g.first_live()
    if start == hub:
        start = g.live_next[hub]
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = -1
        for _, w in g.underlying_pairs(cur):
            g.arc_touches += 1
            if w != prev and w != hub:
                nxt = w
                break
        if nxt == -1 or nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != g.n_alive - 1:
        raise PreconditionViolated("graph minus hub is not a single cycle")
    return order


def _finish_on_cycle(inst: Instance) -> PartialColouring:
    """Cascade run after deleting the hub of a near-cycle.

    The remaining underlying graph is a cycle.  If the reduction left
    the pair loose, or broke one-each-side, the matching solver ends it;
    otherwise the cycle solver applies directly.
    """
    inst.refresh()
    if not inst.is_tight:
        return solve_loose(inst)
    res = solve_if_not_E(inst)
    if res is not None:
        return res
    return solve_cycle(inst)


def solve_subwheel(inst: Instance, v: int) -> PartialColouring:
    """Colour a tight pair where deleting v leaves an underlying cycle.

    Preconditions: two colours, valid, tight, not hard, both local
    invariants hold, and the underlying graph minus v is a cycle.  The
    hub v is coloured so that the remaining cycle pair is not hard, then
    the cycle machinery finishes; two regular wheel shapes are instead
    coloured outright by an explicit pattern.
    """
    g, b = inst.digraph, inst.budgets
    n = g.n_alive

    # Non-universal hub: one unaffected rim vertex pins the safe colour.
    if g.underlying_degree(v) < n - 1:
        if g.d_out[v] > 0:
            a = g.out_adj[g.out_start[v]]
            u = g.head[a]
            adj = (1, 1 if g.twin[a] != -1 else 0)
        else:
            a = g.in_adj[g.in_start[v]]
            u = g.tail[a]
            adj = (0, 1)
        fu = b.get(u, 1)
        residual = (fu[0] - adj[0], fu[1] - adj[1])
        c = 1 if residual != (1, 1) else 2
        colour_one(inst, v, c)
        return _finish_on_cycle(inst)

    # Bidirected wheel with a constant rim row and even order: coloured
    # by an explicit pattern (the generic hub rule cannot help here).
    if g.simple_arc_count == 0 and n % 2 == 0:
        rim = [x for x in g.live_vertices() if x != v]
        row = b.get(rim[0], 1)
        if all(b.get(x, 1) == row for x in rim[1:]):
            if n == 4:
                return solve_complete(inst)
            small = 1 if row[1] == 1 else 2
            big = 3 - small
            order = _rim_order(g, v)
            r = len(order)
            if b.get(v, small)[1] >= 2:
                # hub and one rim vertex take the scarce colour
                plan = [(order[j], big) for j in range(1, r)]
                plan.append((order[0], small))
                plan.append((v, small))
            else:
                # alternate rim vertices take the scarce colour, hub the other
                plan = [(order[j], small) for j in range(0, r - 2, 2)]
                plan.extend((order[j], big) for j in range(1, r - 2, 2))
                plan.append((order[r - 2], big))
                plan.append((order[r - 1], big))
                plan.append((v, big))
            reduce_by_colouring(inst, plan)
            return inst.colouring

    # Digon hub over a directed rim cycle: both rim budgets are pinned
    # at (1,1); swap the hub's colour onto one rim vertex.
    if (
        g.digon_count[v] == g.d_in[v] == g.d_out[v]
        and g.simple_arc_count == n - 1
        and g.m_alive == 3 * (n - 1)
        and all(
            g.d_in[x] == 2 and g.d_out[x] == 2
            for x in g.live_vertices()
            if x != v
        )
    ):
        c = 1 if b.get(v, 1)[1] >= 2 else 2
        other = 3 - c
        order = _rim_order(g, v)
        plan = [(order[j], other) for j in range(1, len(order))]
        plan.append((order[0], c))
        plan.append((v, c))
        reduce_by_colouring(inst, plan)
        return inst.colouring

    # Generic hub: pick a colour that cannot leave a hard cycle behind.
    nbr: dict[int, list[bool]] = {}
    for a, w in g.out_pairs(v):
        nbr.setdefault(w, [False, False])[0] = True
    for a, w in g.in_pairs(v):
        nbr.setdefault(w, [False, False])[1] = True
    g.arc_touches += g.d_in[v] + g.d_out[v]
    pick = None
    for u, (has_vu, has_uv) in nbr.items():
        for c in (1, 2):
            if b.get(u, c) != (int(has_vu), int(has_uv)):
                pick = c
                break
        if pick is not None:
            break
    if pick is None:
        raise ReductionError("hub neighbourhood carries no usable colour")
    other = 3 - pick
    if n % 2 == 1:
        chosen = pick
    else:
        witnessed = False
        for x, (has_vx, has_xv) in nbr.items():
            if b.get(x, pick) != (1 + int(has_vx), 1 + int(has_xv)):
                witnessed = True
                break
            if b.get(x, other) != (1, 1):
                witnessed = True
                break
        chosen = pick if witnessed else other
    colour_one(inst, v, chosen)
    return _finish_on_cycle(inst)


# ---------------------------------------------------------------------------
# ear and star steps
# ---------------------------------------------------------------------------


def colour_path_ear(inst: Instance, path: list[int]) -> None:
    """Colour and remove the interior of an ear.

    ``path`` lists the ear's vertices endpoint to endpoint; the interior
    vertices have underlying degree 2 in the current digraph.  The first
    interior vertex takes the colour that makes the endpoint's colour-1
    budget differ from that of some vertex off the ear, the rest are
    coloured greedily towards the far endpoint.  Only the interior is
    removed; the endpoints stay.
    """
    g, b = inst.digraph, inst.budgets
    if len(path) < 3:
        return
    g.new_mark()
    for x in path:
        g.mark(x)
    u = g.first_unmarked_live()
    v0 = path[0]
    c = 1 if b.get(v0, 1) == b.get(u, 1) else 2
    colour_one(inst, path[1], c)
    greedy_colour(inst, path[2:-1])


def colour_star_centre(inst: Instance, v: int) -> int | PartialColouring:
    """Choose a safe colour for the centre of a star cell and apply it.

    Preconditions: two colours, valid, tight, not hard, both local
    invariants hold, the digraph and the digraph minus v are both
    biconnected, and the underlying graph is neither a cycle nor a
    wheel-like graph centred at v.  The returned colour keeps the
    reduced pair non-hard.  In the one shape where no single colour is
    safe to pick locally (the whole digraph bidirected complete), the
    full solver is delegated to and a complete colouring is returned.
    """
    g, b = inst.digraph, inst.budgets
    n = g.n_alive

    if g.underlying_degree(v) <= n - 2:
        # Some vertex w is not adjacent to v: align the choice so the
        # reduced budgets at a neighbour and at w must differ.
        if g.d_out[v] > 0:
            a = g.out_adj[g.out_start[v]]
            u = g.head[a]
            adj = (1, 1 if g.twin[a] != -1 else 0)
        else:
            a = g.in_adj[g.in_start[v]]
            u = g.tail[a]
            adj = (0, 1)
        g.new_mark()
        g.mark(v)
        for _, w in g.out_pairs(v):
            g.mark(w)
        for _, w in g.in_pairs(v):
            g.mark(w)
        g.arc_touches += g.d_in[v] + g.d_out[v]
        w = g.first_unmarked_live()
        fw = b.get(w, 1)
        target = (fw[0] + adj[0], fw[1] + adj[1])
        c = 1 if b.get(u, 1) != target else 2
        colour_one(inst, v, c)
        return c

    # v is universal from here on.
    rim_arcs = g.m_alive - g.d_in[v] - g.d_out[v]
    rim_simple = g.simple_arc_count - (
        g.d_in[v] + g.d_out[v] - 2 * g.digon_count[v]
    )
    rim_complete = rim_arcs == (n - 1) * (n - 2) and rim_simple == 0

    if not rim_complete:
        # Any vertex whose budget differs from its adjacency to v in
        # some colour pins a safe choice.
        nbr: dict[int, list[bool]] = {}
        for _, w in g.out_pairs(v):
            nbr.setdefault(w, [False, False])[0] = True
        for _, w in g.in_pairs(v):
            nbr.setdefault(w, [False, False])[1] = True
        g.arc_touches += g.d_in[v] + g.d_out[v]
        for x, (has_vx, has_xv) in nbr.items():
            for c in (1, 2):
                if b.get(x, c) != (int(has_vx), int(has_xv)):
                    colour_one(inst, v, c)
                    return c
        raise ReductionError("universal centre saw only exhausted neighbours")

    # The digraph minus v is bidirected complete (on n-1 >= 4 vertices).
    if g.digon_count[v] == g.d_in[v] == g.d_out[v]:
        # v joined by digons everywhere: the whole digraph is bidirected
        # complete, which has its own solver.
        return solve_complete(inst)

    simple_out = -1
    for a, w in g.out_pairs(v):
        if g.twin[a] == -1:
            simple_out = a
            break
    g.arc_touches += g.d_out[v]
    if simple_out == -1:
        u = -1
        for a, w in g.in_pairs(v):
            if g.twin[a] == -1:
                u = w
                break
        g.arc_touches += g.d_in[v]
        if u == -1:
            raise ReductionError("centre has no one-directional arc")
        # arc u -> v only; colouring v clamps nothing at u's in side
        if g.d_out[v] > 0:
            w = g.head[g.out_adj[g.out_start[v]]]
            c = 1 if b.get(u, 1)[0] == b.get(w, 1)[0] else 2
        else:
            # v is a sink: every other vertex loses one out unit of the
            # chosen colour; pick the colour that cannot leave behind
            # constant symmetric rows on the complete remainder.
            c = 2 if _complete_rows_after(inst, v, 1, side_out=True) else 1
    else:
        u = g.head[simple_out]
        # arc v -> u only
        if g.d_in[v] > 0:
            w = g.tail[g.in_adj[g.in_start[v]]]
            c = 1 if b.get(u, 1)[1] == b.get(w, 1)[1] else 2
        else:
            # v is a source: mirrored sink case on the in side.
            c = 2 if _complete_rows_after(inst, v, 1, side_out=False) else 1
    colour_one(inst, v, c)
    return c


def _complete_rows_after(
    inst: Instance, v: int, c: int, side_out: bool
) -> bool:
    """Would colouring sink/source v with c leave constant symmetric rows?

    Every vertex but v loses one unit of colour c, on the out side when v
    is a sink (side_out) and on the in side when v is a source.  Constant
    symmetric rows on a bidirected complete remainder mean a hard pair,
    so the caller must avoid c exactly when this returns True.
    """
    b = inst.budgets
    other = 3 - c
    ref = None
    for x in inst.digraph.live_vertices():
        if x == v:
            continue
        fc = b.get(x, c)
        fo = b.get(x, other)
        if side_out:
            fc = (fc[0], fc[1] - 1)
        else:
            fc = (fc[0] - 1, fc[1])
        if fc[0] != fc[1] or fo[0] != fo[1]:
            return False
        if ref is None:
            ref = (fc[0], fo[0])
        elif ref != (fc[0], fo[0]):
            return False
    return True


# ---------------------------------------------------------------------------
# ear decomposition into cycle, path and star cells
# ---------------------------------------------------------------------------

CYCLE = "CYCLE"
PATH = "PATH"
STAR = "STAR"


class Cell:
    """One cell of the decomposition, linked to its chain neighbours.

    kind CYCLE: verts in cyclic order (only the first cell).
    kind PATH: verts endpoint to endpoint, length (edge count) >= 3;
    the endpoints lie on earlier cells, the interior is new.
    kind STAR: verts[0] is the centre (new), verts[1:] are its leaves,
    all on earlier cells.

    n_pos is the number of vertices introduced by strictly earlier
    cells; comparing two cells' n_pos orders them whenever at least one
    vertex was born between them.
    """

    __slots__ = ("kind", "verts", "n_pos", "prev", "next")

    def __init__(self, kind: str, verts: list[int], n_pos: int):
        self.kind = kind
        self.verts = verts
        self.n_pos = n_pos
        self.prev: Cell | None = None
        self.next: Cell | None = None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Cell({self.kind}, {self.verts}, n_pos={self.n_pos})"


def _insert_after(cell: Cell, new: Cell) -> None:
    new.prev = cell
    new.next = cell.next
    if cell.next is not None:
        cell.next.prev = new
    cell.next = new


def _unlink(cell: Cell) -> None:
    if cell.prev is not None:
        cell.prev.next = cell.next
    if cell.next is not None:
        cell.next.prev = cell.prev
    cell.prev = cell.next = None


def csp_decompose(g: Digraph) -> list[Cell]:
    """Decompose a biconnected underlying graph into cells.

    The first cell is a cycle; every later cell is a path of length at
    least 3 whose endpoints lie on earlier cells, or a star whose
    centre is new and whose leaves lie on earlier cells.  The cells'
    edge sets partition the underlying edges.  Removing the last cell's
    new vertices keeps the rest biconnected, so a solver can peel cells
    from the back.

    Raises NotBiconnected when the underlying graph is not biconnected
    or has fewer than three vertices.
    """
    n = g.n
    if g.n_alive < 3:
        raise NotBiconnected("need at least three vertices")

    # Depth-first search over the underlying edges.
    root = g.first_live()
    disc = [0] * n
    parent = [-1] * n
    bucket: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    touches = 0
    disc[root] = 1
    order.append(root)
    clock = 2
    stack: list[tuple[int, Iterator[tuple[int, int]]]] = [
        (root, g.underlying_pairs(root))
    ]
    while stack:
        v, it = stack[-1]
        advanced = False
        for _, w in it:
            touches += 1
            if w == parent[v]:
                continue
            if disc[w] == 0:
                disc[w] = clock
                clock += 1
                parent[w] = v
                order.append(w)
                stack.append((w, g.underlying_pairs(w)))
                advanced = True
                break
            if disc[w] < disc[v]:
                bucket[w].append(v)
        if not advanced:
            stack.pop()
    g.arc_touches += touches
    if len(order) != g.n_alive:
        raise NotBiconnected("underlying graph is disconnected")

    # Chains: each recorded non-tree edge starts one; it runs from the
    # edge's upper endpoint through new vertices back to an old one.
    chainmark = bytearray(n)
    chainmark[root] = 1
    chains: list[list[int]] = []
    covered_edges = 0
    for v in order:
        for w in bucket[v]:
            chainmark[v] = 1
            path = [v]
            cur = w
            while not chainmark[cur]:
                chainmark[cur] = 1
                path.append(cur)
                cur = parent[cur]
            path.append(cur)
            chains.append(path)
            covered_edges += len(path) - 1
    if not chains or chains[0][0] != chains[0][-1]:
        raise NotBiconnected("no spanning cycle through the root")
    for ch in chains[1:]:
        if ch[0] == ch[-1]:
            raise NotBiconnected("a later chain closes a cycle")
    m_underlying = g.simple_arc_count + (g.m_alive - g.simple_arc_count) // 2
    if covered_edges != m_underlying or not all(
        chainmark[x] for x in g.live_vertices()
    ):
        raise NotBiconnected("a bridge separates the graph")

    # Cells from chains, with birth bookkeeping.
    birth: list[Cell | None] = [None] * n
    head = Cell(CYCLE, chains[0][:-1], 0)
    for x in head.verts:
        birth[x] = head
    born = len(head.verts)
    tail = head
    for ch in chains[1:]:
        cell = Cell(PATH, ch, born)
        for x in ch[1:-1]:
            birth[x] = cell
        born += len(ch) - 2
        _insert_after(tail, cell)
        tail = cell

    # Step 1: eliminate single-edge cells by recombining the cell that
    # bore their later endpoint.
    cur = tail
    while cur is not None:
        nxt = cur.prev
        if cur.kind == PATH and len(cur.verts) == 2:
            u0, u1 = cur.verts
            ca, cb = birth[u0], birth[u1]
            if ca is cb:
                if ca.kind == CYCLE:
                    _split_cycle(ca, u0, u1, birth)
                    _unlink(cur)
                    if cur is tail:
                        tail = _chain_tail(ca)
                else:
                    _split_path_same(ca, u0, u1, birth)
                    _unlink(cur)
                    if cur is tail:
                        tail = _chain_tail(ca)
            else:
                if cb.n_pos < ca.n_pos:
                    u0, u1 = u1, u0
                    ca, cb = cb, ca
                if cb.kind == PATH and len(cb.verts) >= 4:
                    _split_path_other(cb, u0, u1, birth)
                    _unlink(cur)
                    if cur is tail:
                        tail = _chain_tail(cb)
        cur = nxt

    # Step 2: fold the remaining single-edge cells into stars centred
    # at their later endpoint.
    cur = tail
    while cur is not None:
        nxt = cur.prev
        if cur.kind == PATH and len(cur.verts) == 2:
            u0, u1 = cur.verts
            ca, cb = birth[u0], birth[u1]
            if cb.n_pos < ca.n_pos:
                u0, u1 = u1, u0
                ca, cb = cb, ca
            if cb.kind == PATH:
                if len(cb.verts) != 3 or cb.verts[1] != u1:
                    raise ReductionError("single edge points into a long path")
                cb.kind = STAR
                cb.verts = [u1, cb.verts[0], cb.verts[2], u0]
            elif cb.kind == STAR:
                if cb.verts[0] != u1:
                    raise ReductionError("single edge misses the star centre")
                cb.verts.append(u0)
            else:
                raise ReductionError("single edge born inside the cycle twice")
            _unlink(cur)
            if cur is tail:
                tail = _chain_tail(cb)
        cur = nxt

    # Step 3: remaining two-edge paths are stars with two leaves.
    cells: list[Cell] = []
    cur = head
    while cur is not None:
        if cur.kind == PATH and len(cur.verts) == 3:
            cur.kind = STAR
            cur.verts = [cur.verts[1], cur.verts[0], cur.verts[2]]
        cells.append(cur)
        cur = cur.next
    return cells


def _chain_tail(cell: Cell) -> Cell:
    while cell.next is not None:
        cell = cell.next
    return cell


def _split_cycle(
    h: Cell, u0: int, u1: int, birth: list[Cell | None]
) -> None:
    """Absorb the chord u0-u1 into the cycle cell h.

    h keeps the longer way round plus the chord as the new cycle; the
    forward segment between the chord's endpoints becomes a path cell
    inserted right after it.
    """
    verts = h.verts
    idx = {x: i for i, x in enumerate(verts)}
    a, b = idx[u0], idx[u1]
    if a > b:
        a, b = b, a
    if b - a < 2 or (len(verts) - (b - a)) < 2:
        raise ReductionError("chord duplicates a cycle edge")
    seg = verts[a : b + 1]
    rest = verts[b:] + verts[: a + 1]
    h.verts = rest
    for x in rest:
        birth[x] = h
    piece = Cell(PATH, seg, len(rest))
    for x in seg[1:-1]:
        birth[x] = piece
    _insert_after(h, piece)


def _split_path_same(
    h: Cell, u0: int, u1: int, birth: list[Cell | None]
) -> None:
    """Absorb an edge between two interior vertices of the path cell h."""
    verts = h.verts
    idx = {x: i for i, x in enumerate(verts)}
    a, b = idx[u0], idx[u1]
    if a > b:
        a, b = b, a
    if b - a < 2:
        raise ReductionError("edge duplicates a path edge")
    first = verts[: a + 1] + verts[b:]
    second = verts[a : b + 1]
    h.verts = first
    for x in first[1:-1]:
        birth[x] = h
    piece = Cell(PATH, second, h.n_pos + len(first) - 2)
    for x in second[1:-1]:
        birth[x] = piece
    _insert_after(h, piece)


def _split_path_other(
    h: Cell, u0: int, u1: int, birth: list[Cell | None]
) -> None:
    """Absorb an edge from u0 (born earlier) to u1, interior of path h."""
    verts = h.verts
    last = len(verts) - 1
    t = verts.index(u1)
    if u0 == verts[0] or t == last - 1:
        ordered = verts[::-1]
        t = last - t
    else:
        ordered = verts
    first = ordered[: t + 1] + [u0]
    second = ordered[t:]
    if len(first) < 3 or len(second) < 3:
        raise ReductionError("edge into a path splits off a stub")
    h.verts = first
    for x in first[1:-1]:
        birth[x] = h
    piece = Cell(PATH, second, h.n_pos + len(first) - 2)
    for x in second[1:-1]:
        birth[x] = piece
    _insert_after(h, piece)


# ---------------------------------------------------------------------------
# the two-colour driver
# ---------------------------------------------------------------------------


def solve_two_colour_biconnected(inst: Instance) -> PartialColouring:
    """Fully colour a two-colour valid pair on a biconnected digraph.

    The pair must not be hard.  Loose pairs and pairs breaking a local
    invariant are finished by their dedicated solvers; otherwise cells
    of the ear decomposition are peeled from the back, re-establishing
    the invariants locally after each cell, until a cycle or a wheel
    remains.  Each invariant solver runs at most once, which keeps the
    whole run linear in the size of the instance.
    """
    inst.refresh()
    if not inst.is_valid:
        raise PreconditionViolated(f"invalid pair: {inst.invalid_reason}")
    if not inst.is_tight:
        return solve_loose(inst)
    res = solve_if_not_E(inst)
    if res is not None:
        return res
    res = solve_if_not_DS(inst)
    if res is not None:
        return res
    g = inst.digraph
    flags = g.structure_flags()
    if flags.is_bidirected_complete:
        return solve_complete(inst)
    if flags.underlying_is_cycle:
        return solve_cycle(inst)

    cells = csp_decompose(g)
    for k in range(len(cells) - 1, 1, -1):
        cell = cells[k]
        if cell.kind == PATH:
            colour_path_ear(inst, cell.verts)
            touched = (cell.verts[0], cell.verts[-1])
        else:
            touched = tuple(cell.verts[1:])
            out = colour_star_centre(inst, cell.verts[0])
            if isinstance(out, PartialColouring):
                return out
        res = _restore_invariants(inst, touched)
        if res is not None:
            return res

    if len(cells) == 1:
        return solve_cycle(inst)
    h1 = cells[1]
    if h1.kind == STAR:
        return solve_subwheel(inst, h1.verts[0])
    colour_path_ear(inst, h1.verts)
    res = _restore_invariants(inst, (h1.verts[0], h1.verts[-1]))
    if res is not None:
        return res
    return solve_cycle(inst)


def _restore_invariants(
    inst: Instance, touched: tuple[int, ...]
) -> PartialColouring | None:
    """Recheck the loop invariants at the vertices a cell step changed.

    Budgets and degrees moved only at ``touched``, so constant-time
    checks there re-establish the global invariants.  On a violation
    the matching solver finishes the instance and its colouring is
    returned; otherwise None.
    """
    for v in touched:
        if inst.slack_at(v) != (0, 0):
            return solve_loose(inst)
    for v in touched:
        if not _one_each_side_at(inst, v):
            res = solve_if_not_E(inst)
            if res is None:
                raise ReductionError("one-each-side failed locally, not globally")
            return res
    for v in touched:
        if not _symmetric_at_twins_at(inst, v):
            res = solve_if_not_DS(inst)
            if res is None:
                raise ReductionError("twin symmetry failed locally, not globally")
            return res
    if inst.digraph.structure_flags().is_bidirected_complete:
        return solve_complete(inst)
    return None


# ---------------------------------------------------------------------------
# from many colours to two and back
# ---------------------------------------------------------------------------


def reduce_to_two(inst: Instance) -> PartialColouring | tuple[Instance, int]:
    """Merge all colours but one, yielding a two-colour instance.

    For a valid tight pair, picks a colour i so that the derived pair
    (colour 1 = f_i, colour 2 = everything else) is again valid and
    tight but never hard: first a colour with an asymmetric entry
    somewhere, then a colour whose budget differs between two vertices,
    and as a last resort the first nonzero colour (all budgets then
    being constant and symmetric).  Returns the new instance together
    with i; the new digraph is a copy, vertex ids are shared.

    A loose pair is coloured directly and the colouring returned
    instead.
    """
    inst.refresh()
    if not inst.is_valid:
        raise PreconditionViolated(f"invalid pair: {inst.invalid_reason}")
    if not inst.is_tight:
        return solve_loose(inst)
    g, b = inst.digraph, inst.budgets

    i = None
    for v in g.live_vertices():
        for c, fin, fout in b.chain(v):
            if fin != fout:
                i = c
                break
        if i is not None:
            break
    if i is None:
        ref = g.first_live()
        ref_chain = list(b.chain(ref))
        for v in g.live_vertices():
            if v == ref:
                continue
            diff = _first_chain_difference(ref_chain, list(b.chain(v)))
            if diff is not None:
                i = diff
                break
    if i is None:
        ref_chain = list(b.chain(g.first_live()))
        if not ref_chain:
            raise PreconditionViolated("tight pair with an empty budget row")
        i = ref_chain[0][0]

    entries = []
    for v in g.live_vertices():
        fin, fout = b.get(v, i)
        rest_in = b.sum_in(v) - fin
        rest_out = b.sum_out(v) - fout
        entries.append((v, 1, fin, fout))
        entries.append((v, 2, rest_in, rest_out))
    two = Instance(g.copy(), BudgetTable(g.n, 2, entries))
    two.refresh()
    return two, i


def _first_chain_difference(
    ca: list[tuple[int, int, int]], cb: list[tuple[int, int, int]]
) -> int | None:
    """Smallest colour where two budget rows differ, None if equal."""
    ia = ib = 0
    while ia < len(ca) or ib < len(cb):
        if ia == len(ca):
            return cb[ib][0]
        if ib == len(cb):
            return ca[ia][0]
        a, b = ca[ia], cb[ib]
        if a[0] != b[0]:
            return min(a[0], b[0])
        if a[1] != b[1] or a[2] != b[2]:
            return a[0]
        ia += 1
        ib += 1
    return None


def lift_two_colouring(
    inst: Instance, i: int, two_colouring: PartialColouring
) -> PartialColouring:
    """Expand a two-colouring of the merged instance into the original.

    Vertices in merged colour 1 take colour i and leave; no budgets are
    decremented, because the other classes never interact with class i.
    Colour i is then erased from the survivors and the remainder is
    coloured by its total budget, which the merged colour 2 certifies
    to be possible.
    """
    g, b = inst.digraph, inst.budgets
    taken = [v for v in g.live_vertices() if two_colouring.get(v) == 1]
    for v in taken:
        inst.colouring.assign(v, i)
        g.delete_vertex(v)
    for v in g.live_vertices():
        b.zero_colour(v, i)
    rest = solve_by_total_budget(inst)
    if isinstance(rest, Witness):
        raise ReductionError("merged colour 2 certificate did not transfer")
    return inst.colouring
