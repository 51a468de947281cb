"""Core colouring engines: reduced pairs, greedy colouring, peel orders.

The central invariant tying everything together: colouring a vertex v
with colour c and then deleting it turns the instance into the "reduced
pair", where every remaining in-neighbour of v loses one unit of
f_c_out, every out-neighbour loses one unit of f_c_in (clamped at 0),
and v is gone.  Any dicolouring of the reduced pair extends by the
recorded assignment to a dicolouring of the original, provided each
recorded vertex had a nonzero residual budget in its colour when it was
coloured; every caller in this package guarantees that.

``bidegeneracy_order`` decides strict bidegeneracy constructively: it
either produces an ordering v_1..v_k where each vertex has fewer earlier
in-neighbours than its in-allowance or fewer earlier out-neighbours than
its out-allowance, or returns the set of stuck vertices, which is a
subgraph witnessing the failure.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Sequence

from .budget import IN, OUT, BudgetTable
from .digraph import Digraph


class ReductionError(Exception):
    pass


class AlreadyColoured(ReductionError):
    pass


class GreedyStuck(ReductionError):
    """Greedy colouring hit a vertex with no usable colour."""

    def __init__(self, vertex: int):
        super().__init__(f"no nonzero colour at vertex {vertex}")
        self.vertex = vertex


class PreconditionViolated(ReductionError):
    pass


@dataclass
class Witness:
    """A vertex set inside which every vertex meets both degree bounds.

    Certifies that no ordering exists for the allowance function it was
    computed against: the induced subgraph on ``vertices`` has
    d_in >= f_in and d_out >= f_out at every member.
    """

    vertices: set[int]


class PartialColouring:
    """Write-once per-vertex colour assignment (0 means uncoloured here
    internally; the public view uses colours 1..s and None)."""

    __slots__ = ("_colour",)

    def __init__(self, n: int):
        self._colour = array("i", bytes(4 * n))

    def assign(self, v: int, c: int) -> None:
        if self._colour[v]:
            raise AlreadyColoured(f"vertex {v} already has colour {self._colour[v]}")
        self._colour[v] = c

    def get(self, v: int) -> int | None:
        c = self._colour[v]
        return c if c else None

    def __getitem__(self, v: int) -> int | None:
        return self.get(v)

    def items(self) -> list[tuple[int, int]]:
        return [(v, c) for v, c in enumerate(self._colour) if c]

    def assigned_count(self) -> int:
        return sum(1 for c in self._colour if c)

    def copy(self) -> "PartialColouring":
        p = object.__new__(PartialColouring)
        p._colour = array("i", self._colour)
        return p


class Instance:
    """A digraph plus budgets plus the colouring recorded so far.

    ``refresh()`` recomputes the cached validity flags; it is called at
    pipeline decision points only, never per elementary operation.
    """

    __slots__ = ("digraph", "budgets", "colouring", "is_valid", "is_tight",
                 "invalid_reason")

    def __init__(
        self,
        digraph: Digraph,
        budgets: BudgetTable,
        colouring: PartialColouring | None = None,
    ):
        self.digraph = digraph
        self.budgets = budgets
        self.colouring = colouring if colouring is not None else PartialColouring(
            digraph.n
        )
        self.refresh()

    def refresh(self) -> None:
        """Recompute is_valid / is_tight for the current live subgraph."""
        g, b = self.digraph, self.budgets
        self.invalid_reason = None
        tight = True
        for v in range(g.n):
            if not g.alive[v]:
                continue
            si = so = 0
            for _, fin, fout in b.chain(v):
                si += fin
                so += fout
            if si < g.d_in[v] or so < g.d_out[v]:
                self.is_valid = False
                self.is_tight = False
                self.invalid_reason = f"budget deficit at vertex {v}"
                return
            if si != g.d_in[v] or so != g.d_out[v]:
                tight = False
        if g.n_alive > 0 and not g.is_connected():
            self.is_valid = False
            self.is_tight = False
            self.invalid_reason = "disconnected"
            return
        self.is_valid = True
        self.is_tight = tight

    def slack_at(self, v: int) -> tuple[int, int]:
        """(budget sum - degree) per side at v; (0,0) iff tight there."""
        g, b = self.digraph, self.budgets
        si = so = 0
        for _, fin, fout in b.chain(v):
            si += fin
            so += fout
        return si - g.d_in[v], so - g.d_out[v]

    def copy(self) -> "Instance":
        inst = object.__new__(Instance)
        inst.digraph = self.digraph.copy()
        inst.budgets = self.budgets.copy()
        inst.colouring = self.colouring.copy()
        inst.is_valid = self.is_valid
        inst.is_tight = self.is_tight
        inst.invalid_reason = self.invalid_reason
        return inst


# ---- reduction ----


def colour_one(inst: Instance, v: int, c: int) -> None:
    """Record colour c on v, decrement surviving neighbours, delete v.

    The residual budget of c at v must be nonzero; that is what makes a
    recorded sequence of assignments a certificate, so it is checked
    here rather than trusted.
    """
    g = inst.digraph
    g.check_live(v)
    b = inst.budgets
    if b.get(v, c) == (0, 0):
        raise PreconditionViolated(f"colour {c} has empty budget at vertex {v}")
    inst.colouring.assign(v, c)
    out_adj, in_adj = g.out_adj, g.in_adj
    head, tail = g.head, g.tail
    base = g.out_start[v]
    for k in range(base, base + g.d_out[v]):
        b.decrement(head[out_adj[k]], c, IN)
    base = g.in_start[v]
    for k in range(base, base + g.d_in[v]):
        b.decrement(tail[in_adj[k]], c, OUT)
    g.arc_touches += g.d_out[v] + g.d_in[v]
    g.delete_vertex(v)


def reduce_by_colouring(
    inst: Instance, assignments: Iterable[tuple[int, int]]
) -> None:
    """Apply (vertex, colour) assignments in order, reducing as we go."""
    for v, c in assignments:
        colour_one(inst, v, c)


def greedy_colour(inst: Instance, seq: Iterable[int]) -> bool:
    """Colour seq in order, always picking the lowest usable colour.

    Succeeds whenever every vertex still has an uncoloured neighbour at
    its turn (in particular for leaves-to-root orders of a spanning
    tree).  Raises GreedyStuck at the first vertex whose whole budget row
    is zero; work up to that point stays applied.
    """
    b = inst.budgets
    first_nonzero = b.first_nonzero
    for v in seq:
        c = first_nonzero(v)
        if c is None:
            raise GreedyStuck(v)
        colour_one(inst, v, c)
    return True


# ---- bidegeneracy orderings ----


def bidegeneracy_order(
    g: Digraph, f_in: Sequence[int], f_out: Sequence[int]
) -> tuple[list[int] | None, Witness | None]:
    """Ordering certificate for strict (f_in, f_out)-bidegeneracy.

    Simulates repeated removal of vertices whose current in-degree is
    below f_in or current out-degree below f_out, on local degree
    copies; g itself is not modified.  Returns (ordering, None) on
    success, (None, witness) with the surviving set otherwise.
    """
    n = g.n
    alive = g.alive
    din = array("i", g.d_in)
    dout = array("i", g.d_out)
    removed = bytearray(n)
    queued = bytearray(n)
    stack = []
    for v in range(n):
        if alive[v] and (din[v] < f_in[v] or dout[v] < f_out[v]):
            stack.append(v)
            queued[v] = 1
    peeled: list[int] = []
    out_adj, in_adj = g.out_adj, g.in_adj
    out_start, in_start = g.out_start, g.in_start
    d_out_live, d_in_live = g.d_out, g.d_in
    head, tail = g.head, g.tail
    touches = 0
    while stack:
        v = stack.pop()
        removed[v] = 1
        peeled.append(v)
        base = out_start[v]
        for k in range(base, base + d_out_live[v]):
            w = head[out_adj[k]]
            touches += 1
            if not removed[w]:
                din[w] -= 1
                if not queued[w] and (din[w] < f_in[w] or dout[w] < f_out[w]):
                    queued[w] = 1
                    stack.append(w)
        base = in_start[v]
        for k in range(base, base + d_in_live[v]):
            u = tail[in_adj[k]]
            touches += 1
            if not removed[u]:
                dout[u] -= 1
                if not queued[u] and (din[u] < f_in[u] or dout[u] < f_out[u]):
                    queued[u] = 1
                    stack.append(u)
    g.arc_touches += touches
    if len(peeled) == g.n_alive:
        peeled.reverse()
        return peeled, None
    witness = {v for v in range(n) if alive[v] and not removed[v]}
    return None, Witness(witness)


def solve_by_total_budget(inst: Instance) -> PartialColouring | Witness:
    """Colour everything if the digraph is strictly bidegenerate for the
    per-vertex total budget (sum over colours, each side separately).

    On success the full colouring is recorded in inst and returned; if
    no peel order exists the witness set is returned instead and the
    instance is untouched.
    """
    g, b = inst.digraph, inst.budgets
    n = g.n
    ft_in = array("l", bytes(8 * n))
    ft_out = array("l", bytes(8 * n))
    for v in range(n):
        if g.alive[v]:
            si = so = 0
            for _, fin, fout in b.chain(v):
                si += fin
                so += fout
            ft_in[v] = si
            ft_out[v] = so
    order, witness = bidegeneracy_order(g, ft_in, ft_out)
    if witness is not None:
        return witness
    greedy_colour(inst, order)
    return inst.colouring


def solve_loose(inst: Instance) -> PartialColouring:
    """Full colouring of a valid instance with budget slack somewhere.

    Slack at one vertex guarantees a peel order for the total budget:
    a strict subgraph has a vertex with an edge leaving it (connected),
    hence a strictly positive gap on one side; the whole vertex set has
    the slack vertex itself.
    """
    inst.refresh()
    if not inst.is_valid:
        raise PreconditionViolated(f"invalid instance: {inst.invalid_reason}")
    if inst.is_tight:
        raise PreconditionViolated("instance is tight, not loose")
    result = solve_by_total_budget(inst)
    if isinstance(result, Witness):
        raise RuntimeError(
            "loose valid instance produced a witness; internal invariant broken"
        )
    return result
