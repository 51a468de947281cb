"""Hard-pair recognition and the block reduction.

A tight valid pair is "hard" exactly when it cannot be dicoloured.  The
biconnected hard pairs come in three shapes: monochromatic (one colour
carries the full degree budget at every vertex), bicycle (a bidirected
odd cycle with two unit colours everywhere), and complete (a bidirected
complete digraph whose budgets are constant, symmetric, and sum to
n - 1).  General hard pairs are built by gluing hard pairs at a shared
vertex whose budget splits between the parts.

``reduce_to_block`` peels end-blocks off the block-cut tree: a hard
end-block is contracted into its cut vertex (colouring everything else
in the block, which subtracts the matching amounts from the cut
vertex's budgets), and the first non-hard end-block ends the walk, with
the whole rest of the digraph coloured away safely.  The survivor is a
single biconnected pair that is hard iff the input was.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Block, Digraph
from .reduction import Instance, PreconditionViolated, greedy_colour


@dataclass(frozen=True)
class EndBlockKind:
    kind: str  # "MONO" | "BICYCLE" | "COMPLETE" | "NOT_HARD"
    colours: tuple[int, ...] = ()


NOT_HARD = EndBlockKind("NOT_HARD")


# ---- classification ----


def _first_other(vertices: list[int], x: int | None) -> int | None:
    for v in vertices:
        if v != x:
            return v
    return None


def _classify_core(
    inst: Instance,
    vertices: list[int],
    deg_in,
    deg_out,
    arcs: list[int],
    x: int | None,
) -> EndBlockKind:
    """Shared shape test; x is the relaxed vertex (cut vertex), if any.

    Every vertex except x must match a reference vertex's budget row
    exactly (per shape); x only needs componentwise at-least budgets on
    the shape's colours.
    """
    b = inst.budgets
    g = inst.digraph
    g.arc_touches += len(arcs)
    nb = len(vertices)
    u = _first_other(vertices, x)
    if u is None:
        return NOT_HARD

    # monochromatic: one colour holding exactly the in-block degrees
    row = list(b.chain(u))
    if len(row) == 1:
        i = row[0][0]
        ok = True
        for v in vertices:
            if v == x:
                continue
            rv = list(b.chain(v))
            if len(rv) != 1 or rv[0][0] != i or (rv[0][1], rv[0][2]) != (
                deg_in[v],
                deg_out[v],
            ):
                ok = False
                break
        if ok and x is not None:
            fx = b.get(x, i)
            if fx[0] < deg_in[x] or fx[1] < deg_out[x]:
                ok = False
        if ok:
            return EndBlockKind("MONO", (i,))

    twin = g.twin
    all_twinned = all(twin[a] != -1 for a in arcs)

    # bicycle: bidirected odd cycle, two unit colours
    if (
        all_twinned
        and nb >= 3
        and nb % 2 == 1
        and len(arcs) == 2 * nb
        and all(deg_in[v] == 2 and deg_out[v] == 2 for v in vertices)
        and len(row) == 2
    ):
        i, j = row[0][0], row[1][0]
        if (row[0][1], row[0][2]) == (1, 1) and (row[1][1], row[1][2]) == (1, 1):
            ok = True
            for v in vertices:
                if v == x:
                    continue
                rv = list(b.chain(v))
                if rv != [(i, 1, 1), (j, 1, 1)]:
                    ok = False
                    break
            if ok and x is not None:
                fi, fj = b.get(x, i), b.get(x, j)
                if fi[0] < 1 or fi[1] < 1 or fj[0] < 1 or fj[1] < 1:
                    ok = False
            if ok:
                return EndBlockKind("BICYCLE", (i, j))

    # complete: bidirected complete, constant symmetric rows summing n-1
    if all_twinned and len(arcs) == nb * (nb - 1) and nb >= 2:
        ok = all(fin == fout for _, fin, fout in row) and sum(
            fin for _, fin, _ in row
        ) == nb - 1
        if ok:
            for v in vertices:
                if v == x or v == u:
                    continue
                if list(b.chain(v)) != row:
                    ok = False
                    break
        if ok and x is not None:
            for c, fin, fout in row:
                fx = b.get(x, c)
                if fx[0] < fin or fx[1] < fout:
                    ok = False
                    break
        if ok:
            return EndBlockKind("COMPLETE", tuple(c for c, _, _ in row))

    return NOT_HARD


def classify_end_block(inst: Instance, block: Block, x: int) -> EndBlockKind:
    """Which hard shape, if any, this end-block has (budgets relaxed at x)."""
    if x is None:
        raise PreconditionViolated("end-block classification needs a cut vertex")
    return _classify_core(
        inst, block.vertices, block.deg_in, block.deg_out, block.arcs, x
    )


def is_hard_biconnected(inst: Instance) -> bool:
    """Hardness of a tight valid biconnected pair (whole live graph)."""
    if not inst.is_valid or not inst.is_tight:
        raise PreconditionViolated("hardness test needs a tight valid pair")
    g = inst.digraph
    if g.n_alive == 1:
        return True  # tight single vertex has an all-zero budget row
    vertices = [v for v in range(g.n) if g.alive[v]]
    arcs = [a for a, _, _ in g.live_arcs()]
    kind = _classify_core(inst, vertices, g.d_in, g.d_out, arcs, None)
    return kind.kind != "NOT_HARD"


# ---- contraction and the block walk ----


def _block_order_toward(g: Digraph, block: Block, x: int) -> list[int]:
    """V(block) minus x, ordered so each vertex has a later neighbour in
    the block (its search parent; x itself closes every branch)."""
    adj: dict[int, list[int]] = {v: [] for v in block.vertices}
    tail, head = g.tail, g.head
    for a in block.arcs:
        u, w = tail[a], head[a]
        adj[u].append(w)
        adj[w].append(u)
    g.arc_touches += len(block.arcs)
    order = [x]
    seen = {x}
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    order.reverse()
    return order[:-1]  # drop x


def contract_end_block(
    inst: Instance, block: Block, x: int, kind: EndBlockKind
) -> None:
    """Colour the end-block into its cut vertex.

    Greedy colouring along a leaves-to-x order realises the contraction
    exactly: the classified shape forces which colours get used, so x's
    budgets drop by the block's degree at x (monochromatic), by one unit
    in each of the two colours (bicycle), or by the reference row
    (complete).  Tightness is preserved.
    """
    if kind.kind == "NOT_HARD":
        raise PreconditionViolated("cannot contract a non-hard end-block")
    order = _block_order_toward(inst.digraph, block, x)
    greedy_colour(inst, order)


def reduce_to_block(inst: Instance) -> None:
    """Reduce a tight valid pair to one biconnected block, colouring the
    rest safely.  The surviving pair is valid and hard iff the input was.

    End-blocks are classified in leaf-first order; hard ones are
    contracted.  The first non-hard end-block stops the walk: everything
    outside it is coloured along a spanning order pointing at the cut
    vertex (always possible, and harmless to the block's own budgets
    except at that cut vertex).
    """
    if not inst.is_valid or not inst.is_tight:
        raise PreconditionViolated("block reduction needs a tight valid pair")
    g = inst.digraph
    blocks = g.blocks_with_order()
    for block in reversed(blocks[1:]):
        x = block.attach
        kind = classify_end_block(inst, block, x)
        if kind.kind == "NOT_HARD":
            interior = [v for v in block.vertices if v != x]
            order = g.spanning_order(x, excluded=interior)
            greedy_colour(inst, order[:-1])  # everything but x
            return
        contract_end_block(inst, block, x, kind)


def is_hard(inst: Instance) -> bool:
    """Linear-time hardness test for a tight valid pair (scratch copy)."""
    inst.refresh()
    if not inst.is_valid or not inst.is_tight:
        raise PreconditionViolated("hardness is defined for tight valid pairs")
    work = inst.copy()
    reduce_to_block(work)
    work.refresh()
    if not work.is_tight:
        return False
    return is_hard_biconnected(work)
