"""Slow reference implementations used to cross-check the real solver.

Everything in this module is deliberately naive: dict-of-set adjacency
rebuilt on every call, repeated full rescans while peeling, exhaustive
enumeration of colour assignments and of budget splits.  None of it shares
code or data structures with the fast modules, which is the point:
agreement between the two sides is evidence, not tautology.

Conventions (restated so the module stands alone): a digraph is a vertex
count ``n`` with ids ``0..n-1`` plus an iterable of ``(tail, head)`` arc
pairs; budgets are a sequence, indexed by vertex, of mappings
``{colour: (f_in, f_out)}`` with 1-based colours, missing entries meaning
``(0, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

Arc = tuple[int, int]
Budget = Mapping[int, tuple[int, int]]


class CapExceeded(Exception):
    """The instance is larger than this oracle is willing to grind through."""


# ---- peeling ----


def _peel(
    vertices: Iterable[int],
    arcs: Iterable[Arc],
    f_of,
) -> tuple[list[int] | None, set[int] | None]:
    """Peel by repeated rescans; returns (ordering, None) or (None, witness).

    A vertex may be removed while its current in-degree is below f_in or its
    current out-degree is below f_out.  The ordering is reported
    first-position-first, so the last vertex peeled comes first; every v_i in
    it has fewer earlier in-neighbours than f_in(v_i) or fewer earlier
    out-neighbours than f_out(v_i).
    """
    alive = set(vertices)
    ins: dict[int, set[int]] = {v: set() for v in alive}
    outs: dict[int, set[int]] = {v: set() for v in alive}
    for u, v in arcs:
        if u in alive and v in alive:
            outs[u].add(v)
            ins[v].add(u)
    peeled: list[int] = []
    progress = True
    while progress and alive:
        progress = False
        for v in sorted(alive):  # deterministic, wasteful on purpose
            fin, fout = f_of(v)
            if len(ins[v]) < fin or len(outs[v]) < fout:
                alive.remove(v)
                for u in ins[v]:
                    outs[u].discard(v)
                for w in outs[v]:
                    ins[w].discard(v)
                peeled.append(v)
                progress = True
                break
    if alive:
        return None, alive
    peeled.reverse()
    return peeled, None


def peel_check(
    n: int, arcs: Iterable[Arc], f: Sequence[tuple[int, int]]
) -> tuple[list[int] | None, set[int] | None]:
    """Decide strict f-bidegeneracy of the whole digraph by naive peeling.

    Returns ``(ordering, None)`` when every subdigraph has a vertex with a
    degree strictly below its budget on some side (the ordering certifies
    it), else ``(None, witness)`` where the witness is the stuck vertex set.
    """
    return _peel(range(n), arcs, lambda v: f[v])


# ---- brute-force dicolourability ----


def brute_force_dicolourable(
    n: int,
    arcs: Iterable[Arc],
    budgets: Sequence[Budget],
    cap: int = 8,
) -> list[int] | None:
    """Exhaustively search for an F-dicolouring; None when there is none.

    A vertex can only ever take a colour whose budget at that vertex is not
    (0, 0): a one-vertex colour class already fails peeling otherwise.  The
    search therefore enumerates assignments over per-vertex nonzero colours
    only, which keeps it exact while pruning the zero choices.
    """
    if n > cap:
        raise CapExceeded(f"brute force capped at n={cap}, got n={n}")
    arc_list = [(u, v) for u, v in arcs]
    choices: list[list[int]] = []
    for v in range(n):
        cols = [c for c, val in sorted(budgets[v].items()) if tuple(val) != (0, 0)]
        if not cols:
            return None
        choices.append(cols)
    for assignment in product(*choices):
        if _all_classes_peel(n, arc_list, budgets, assignment):
            return list(assignment)
    return None


def _all_classes_peel(
    n: int,
    arc_list: list[Arc],
    budgets: Sequence[Budget],
    assignment: tuple[int, ...],
) -> bool:
    for colour in set(assignment):
        members = [v for v in range(n) if assignment[v] == colour]
        _, witness = _peel(
            members,
            arc_list,
            lambda v: tuple(budgets[v].get(colour, (0, 0))),
        )
        if witness is not None:
            return False
    return True


# ---- the recursive hard-pair definition ----


@dataclass
class HardnessTree:
    """Witness for the recursive definition of a hard pair.

    Leaves are the three base shapes; JOIN glues two hard pairs at a shared
    vertex whose budget is split between the parts, every other vertex
    keeping its budget in the part it falls in.
    """

    kind: str  # "MONO" | "BICYCLE" | "COMPLETE" | "JOIN"
    colours: tuple[int, ...] = ()
    vertex: int | None = None
    split: tuple[dict[int, tuple[int, int]], dict[int, tuple[int, int]]] | None = None
    parts: tuple["HardnessTree", ...] = field(default_factory=tuple)


def definitional_hard(
    n: int,
    arcs: Iterable[Arc],
    budgets: Sequence[Budget],
    cap: int = 6,
) -> HardnessTree | None:
    """Check the recursive hard-pair definition verbatim, witness included.

    Exponential: recurses over every cut vertex, every component hanging off
    it, and every componentwise split of the cut vertex's budget.  Hard
    pairs are tight, so splits whose side sums miss the side degrees are
    skipped; that is a pruning, not an extra assumption.
    """
    if n > cap:
        raise CapExceeded(f"definitional check capped at n={cap}, got n={n}")
    arcset = frozenset((int(u), int(v)) for u, v in arcs)
    table = {v: dict(budgets[v]) for v in range(n)}
    memo: dict = {}
    return _hard(frozenset(range(n)), table, arcset, memo)


def _hard(verts: frozenset[int], table, arcset, memo) -> HardnessTree | None:
    key = (
        verts,
        tuple(
            sorted(
                (v, c, fin, fout)
                for v in verts
                for c, (fin, fout) in table[v].items()
                if (fin, fout) != (0, 0)
            )
        ),
    )
    if key in memo:
        return memo[key]
    result = _base_hard(verts, table, arcset)
    if result is None and len(verts) >= 3:
        result = _join_hard(verts, table, arcset, memo)
    memo[key] = result
    return result


def _induced(verts: frozenset[int], arcset) -> list[Arc]:
    return [(u, v) for (u, v) in arcset if u in verts and v in verts]


def _components(verts: set[int] | frozenset[int], arcset) -> list[set[int]]:
    remaining = set(verts)
    comps = []
    while remaining:
        seed = next(iter(remaining))
        comp = {seed}
        frontier = [seed]
        while frontier:
            u = frontier.pop()
            for a, b in arcset:
                w = None
                if a == u and b in remaining and b not in comp:
                    w = b
                elif b == u and a in remaining and a not in comp:
                    w = a
                if w is not None:
                    comp.add(w)
                    frontier.append(w)
        comps.append(comp)
        remaining -= comp
    return comps


def is_connected(n: int, arcs: Iterable[Arc]) -> bool:
    """Underlying-graph connectivity of the whole vertex range."""
    if n <= 0:
        return False
    arcset = frozenset((u, v) for u, v in arcs)
    return len(_components(frozenset(range(n)), arcset)) == 1


def _has_cut_vertex(verts: frozenset[int], arcset) -> bool:
    if len(verts) <= 2:
        return False
    for x in verts:
        if len(_components(verts - {x}, arcset)) > 1:
            return True
    return False


def _base_hard(verts: frozenset[int], table, arcset) -> HardnessTree | None:
    ind = _induced(verts, arcset)
    if len(_components(verts, arcset)) != 1:
        return None
    deg_in = {v: 0 for v in verts}
    deg_out = {v: 0 for v in verts}
    for u, v in ind:
        deg_out[u] += 1
        deg_in[v] += 1
    nonzero = {
        v: {c: tuple(val) for c, val in table[v].items() if tuple(val) != (0, 0)}
        for v in verts
    }
    used_colours = sorted({c for m in nonzero.values() for c in m})

    # monochromatic: one colour carries exactly the degrees, the rest nothing
    if not _has_cut_vertex(verts, arcset):
        if len(used_colours) <= 1:
            i = used_colours[0] if used_colours else 1
            if all(
                nonzero[v].get(i, (0, 0)) == (deg_in[v], deg_out[v])
                or (not nonzero[v] and deg_in[v] == deg_out[v] == 0)
                for v in verts
            ):
                return HardnessTree(kind="MONO", colours=(i,))

    # bidirected odd cycle with two colours pinned at (1, 1)
    if len(verts) >= 3 and len(verts) % 2 == 1:
        if all((v, u) in arcset for (u, v) in ind):
            underlying = {frozenset(a) for a in ind}
            if len(underlying) == len(verts) and all(
                deg_in[v] == deg_out[v] == 2 for v in verts
            ):
                if len(used_colours) == 2:
                    i, j = used_colours
                    if all(
                        nonzero[v] == {i: (1, 1), j: (1, 1)} for v in verts
                    ):
                        return HardnessTree(kind="BICYCLE", colours=(i, j))

    # bidirected complete with constant symmetric budgets summing to n-1
    p = len(verts)
    if len(ind) == p * (p - 1) and all((v, u) in arcset for (u, v) in ind):
        ref = nonzero[next(iter(verts))]
        if all(nonzero[v] == ref for v in verts):
            if all(fin == fout for fin, fout in ref.values()):
                if sum(fin for fin, _ in ref.values()) == p - 1:
                    return HardnessTree(
                        kind="COMPLETE", colours=tuple(sorted(ref))
                    )
    return None


def _join_hard(verts: frozenset[int], table, arcset, memo) -> HardnessTree | None:
    for x in verts:
        comps = _components(verts - {x}, arcset)
        if len(comps) < 2:
            continue
        for comp in comps:
            side1 = frozenset(comp) | {x}
            side2 = verts - frozenset(comp)
            d1_in = sum(1 for (u, v) in arcset if v == x and u in side1)
            d1_out = sum(1 for (u, v) in arcset if u == x and v in side1)
            for split1, split2 in _budget_splits(table[x], d1_in, d1_out):
                saved = table[x]
                table[x] = split1
                part1 = _hard(side1, table, arcset, memo)
                if part1 is not None:
                    table[x] = split2
                    part2 = _hard(side2, table, arcset, memo)
                    table[x] = saved
                    if part2 is not None:
                        return HardnessTree(
                            kind="JOIN",
                            vertex=x,
                            split=(split1, split2),
                            parts=(part1, part2),
                        )
                else:
                    table[x] = saved
    return None


def _budget_splits(budget: Budget, want_in: int, want_out: int):
    """All componentwise splits of a budget whose first-part sums hit a target.

    Hard pairs are tight, so a join part whose budget sums at the shared
    vertex differ from its side degrees can never be hard; enumerating only
    sum-matching splits is safe.
    """
    items = [(c, int(fin), int(fout)) for c, (fin, fout) in sorted(budget.items())]
    ranges = [
        [(a, b) for a in range(fin + 1) for b in range(fout + 1)]
        for _, fin, fout in items
    ]
    for picks in product(*ranges):
        if sum(a for a, _ in picks) != want_in:
            continue
        if sum(b for _, b in picks) != want_out:
            continue
        first = {}
        second = {}
        for (c, fin, fout), (a, b) in zip(items, picks):
            if (a, b) != (0, 0):
                first[c] = (a, b)
            if (fin - a, fout - b) != (0, 0):
                second[c] = (fin - a, fout - b)
        yield first, second


# ---- exhaustive instance enumeration ----


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def enumerate_instances(
    n_max: int, s: int = 2, budget_cap: int = 0
) -> Iterator[tuple[int, tuple[Arc, ...], tuple[dict[int, tuple[int, int]], ...]]]:
    """Stream every connected labelled digraph with every near-tight budget table.

    For each vertex and each side, the colour budgets sum to anything from
    the degree (tight) up to degree + budget_cap.  No isomorphism reduction:
    duplicates cost time, not coverage.
    """
    for n in range(1, n_max + 1):
        slots = [(u, v) for u in range(n) for v in range(n) if u != v]
        for bits in range(1 << len(slots)):
            arcs = tuple(p for k, p in enumerate(slots) if bits >> k & 1)
            if not is_connected(n, arcs):
                continue
            deg_in = [0] * n
            deg_out = [0] * n
            for u, v in arcs:
                deg_out[u] += 1
                deg_in[v] += 1
            per_vertex: list[list[dict[int, tuple[int, int]]]] = []
            for v in range(n):
                options = []
                for t_in in range(deg_in[v], deg_in[v] + budget_cap + 1):
                    for t_out in range(deg_out[v], deg_out[v] + budget_cap + 1):
                        for ins in _compositions(t_in, s):
                            for outs in _compositions(t_out, s):
                                options.append(
                                    {
                                        c + 1: (ins[c], outs[c])
                                        for c in range(s)
                                        if (ins[c], outs[c]) != (0, 0)
                                    }
                                )
                per_vertex.append(options)
            for combo in product(*per_vertex):
                yield n, arcs, combo
