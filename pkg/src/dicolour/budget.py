"""Sparse per-vertex colour budgets with nonzero-colour chains.

A budget table stores, for every vertex v and colour i, a pair
(f_i_in(v), f_i_out(v)) of nonnegative integers.  Per vertex, the colours
whose pair is not (0,0) are threaded on a doubly linked chain in
increasing colour order, so "some usable colour" and "every usable
colour" are answered in O(1) per colour regardless of how large the
colour range s is.  Cells never written read as (0,0) without being
allocated, which keeps construction proportional to the number of
nonzero entries rather than to n*s.

Values only decrease while a solve runs, so chains only ever lose
elements on the hot path; inserting a colour into the middle of an
existing chain (a frontend/setup operation) costs a scan of that chain.
"""

from __future__ import annotations

from array import array
from typing import Iterable, Iterator

from .digraph import IndexOutOfRange

IN = 0
OUT = 1

# chain entry layout: [f_in, f_out, prev_colour, next_colour]
_FIN = 0
_FOUT = 1
_PREV = 2
_NEXT = 3


class BudgetTable:
    """Budgets for colours 1..s on vertices 0..n-1.  See module docstring."""

    __slots__ = ("n", "s", "nonzero_entry_count", "_chain", "_head")

    def __init__(
        self, n: int, s: int, entries: Iterable[tuple[int, int, int, int]] = ()
    ):
        """entries: (vertex, colour, f_in, f_out); later duplicates win."""
        self.n = n
        self.s = s
        self.nonzero_entry_count = 0
        self._chain: list[dict[int, list[int]] | None] = [None] * n
        self._head = array("i", [-1]) * n if n else array("i")

        per_vertex: dict[int, dict[int, tuple[int, int]]] = {}
        for v, c, fin, fout in entries:
            self._check(v, c)
            if fin < 0 or fout < 0:
                raise ValueError(f"negative budget at ({v}, {c})")
            per_vertex.setdefault(v, {})[c] = (fin, fout)
        for v, by_colour in per_vertex.items():
            chain: dict[int, list[int]] = {}
            prev = -1
            for c in sorted(by_colour):
                fin, fout = by_colour[c]
                if fin == 0 and fout == 0:
                    continue
                chain[c] = [fin, fout, prev, -1]
                if prev == -1:
                    self._head[v] = c
                else:
                    chain[prev][_NEXT] = c
                prev = c
            if chain:
                self._chain[v] = chain
                self.nonzero_entry_count += len(chain)

    def _check(self, v: int, c: int) -> None:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"vertex {v} out of range")
        if not 1 <= c <= self.s:
            raise IndexOutOfRange(f"colour {c} out of range 1..{self.s}")

    # ---- reads ----

    def get(self, v: int, c: int) -> tuple[int, int]:
        self._check(v, c)
        chain = self._chain[v]
        if chain is None:
            return (0, 0)
        e = chain.get(c)
        if e is None:
            return (0, 0)
        return (e[_FIN], e[_FOUT])

    def first_nonzero(self, v: int) -> int | None:
        c = self._head[v]
        return c if c != -1 else None

    def chain(self, v: int) -> Iterator[tuple[int, int, int]]:
        """(colour, f_in, f_out) for each nonzero colour, increasing."""
        chain = self._chain[v]
        c = self._head[v]
        while c != -1:
            e = chain[c]
            yield c, e[_FIN], e[_FOUT]
            c = e[_NEXT]

    def nonzero_count(self, v: int) -> int:
        chain = self._chain[v]
        return len(chain) if chain else 0

    def sum_in(self, v: int) -> int:
        return sum(fin for _, fin, _ in self.chain(v))

    def sum_out(self, v: int) -> int:
        return sum(fout for _, _, fout in self.chain(v))

    # ---- writes ----

    def _unlink(self, v: int, c: int) -> None:
        chain = self._chain[v]
        e = chain.pop(c)
        p, nx = e[_PREV], e[_NEXT]
        if p != -1:
            chain[p][_NEXT] = nx
        else:
            self._head[v] = nx
        if nx != -1:
            chain[nx][_PREV] = p
        self.nonzero_entry_count -= 1

    def set(self, v: int, c: int, pair: tuple[int, int]) -> None:
        """Overwrite f_c(v); keeps the chain consistent.

        O(1) except when a brand-new colour lands between existing chain
        colours, which scans the chain for its slot (setup-only pattern;
        solving never adds colours).
        """
        self._check(v, c)
        fin, fout = pair
        if fin < 0 or fout < 0:
            raise ValueError(f"negative budget at ({v}, {c})")
        chain = self._chain[v]
        e = chain.get(c) if chain else None
        if fin == 0 and fout == 0:
            if e is not None:
                self._unlink(v, c)
            return
        if e is not None:
            e[_FIN] = fin
            e[_FOUT] = fout
            return
        if chain is None:
            chain = {}
            self._chain[v] = chain
        # find predecessor: scan from head (chains are short by design)
        prev = -1
        nxt = self._head[v]
        while nxt != -1 and nxt < c:
            prev = nxt
            nxt = chain[nxt][_NEXT]
        chain[c] = [fin, fout, prev, nxt]
        if prev == -1:
            self._head[v] = c
        else:
            chain[prev][_NEXT] = c
        if nxt != -1:
            chain[nxt][_PREV] = c
        self.nonzero_entry_count += 1

    def decrement(self, v: int, c: int, side: int) -> bool:
        """f_c^side(v) -= 1, clamped at 0.  Returns True iff clamped."""
        chain = self._chain[v]
        e = chain.get(c) if chain else None
        if e is None:
            return True  # entry is (0,0): both sides clamp
        if e[side] == 0:
            return True
        e[side] -= 1
        if e[_FIN] == 0 and e[_FOUT] == 0:
            self._unlink(v, c)
        return False

    def zero_colour(self, v: int, c: int) -> None:
        """Set f_c(v) to (0,0); O(1)."""
        chain = self._chain[v]
        if chain and c in chain:
            self._unlink(v, c)

    # ---- copying ----

    def copy(self) -> "BudgetTable":
        t = object.__new__(BudgetTable)
        t.n = self.n
        t.s = self.s
        t.nonzero_entry_count = self.nonzero_entry_count
        t._head = array("i", self._head)
        t._chain = [
            {c: list(e) for c, e in chain.items()} if chain else None
            for chain in self._chain
        ]
        return t
