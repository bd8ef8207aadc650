"""Exact row reduction over a field (Fractions or cyclotomic numbers)."""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

Row = Dict[int, object]


def _nonzero(x) -> bool:
    return bool(x)


def row_reduce(rows: Sequence[Row], ncols: int) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form of sparse rows (dict column -> entry).

    Returns the nonzero reduced rows and their pivot columns.
    """
    work = [{c: v for c, v in r.items() if _nonzero(v)} for r in rows]
    work = [r for r in work if r]
    pivots: List[int] = []
    reduced: List[Row] = []
    for col in range(ncols):
        piv = next((k for k, r in enumerate(work) if col in r), None)
        if piv is None:
            continue
        prow = work.pop(piv)
        inv = 1 / prow[col] if not hasattr(prow[col], "inverse") else prow[col].inverse()
        prow = {c: v * inv for c, v in prow.items()}
        new_work = []
        for r in work:
            f = r.get(col)
            if f is not None:
                for c, v in prow.items():
                    x = r.get(c)
                    y = (x - f * v) if x is not None else -(f * v)
                    if _nonzero(y):
                        r[c] = y
                    else:
                        r.pop(c, None)
            if r:
                new_work.append(r)
        work = new_work
        for r in reduced:
            f = r.get(col)
            if f is not None:
                for c, v in prow.items():
                    x = r.get(c)
                    y = (x - f * v) if x is not None else -(f * v)
                    if _nonzero(y):
                        r[c] = y
                    else:
                        r.pop(c, None)
        reduced.append(prow)
        pivots.append(col)
        if not work:
            break
    return reduced, pivots


def rank(rows: Sequence[Row], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows: Sequence[Row], ncols: int, one, zero) -> List[List[object]]:
    """Basis of {x : M x = 0}, one dense vector per free column."""
    reduced, pivots = row_reduce(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, p in zip(reduced, pivots):
            f = r.get(free)
            if f is not None:
                vec[p] = -f
        basis.append(vec)
    return basis
