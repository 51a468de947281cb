"""Digraph dicolouring under per-vertex colour budgets, in linear time.

Given a connected digraph and, for every vertex and colour, a pair of
in/out budgets, the solver either produces a colouring in which every
colour class induces a strictly bidegenerate subdigraph (each subdigraph
has a vertex with in-degree below its in-budget or out-degree below its
out-budget), or certifies that the pair belongs to the exceptional "hard"
family and no such colouring exists.
"""

__all__ = ["SolveOutcome", "solve", "verify_dicolouring"]


def __getattr__(name):
    if name in __all__:
        from dicolour import solver

        return getattr(solver, name)
    raise AttributeError(f"module 'dicolour' has no attribute {name!r}")
