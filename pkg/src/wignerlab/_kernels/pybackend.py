"""Pure-Python pivot kernels.

These three loops are where the engine spends essentially all of its
time: reduced row echelon form, fraction-free (Bareiss) integer
elimination, and the Bland-rule phase-1 simplex iteration.  The
compiled module ``_cykernels`` implements the same functions with the
same semantics; either backend must produce bit-identical results
because every operand is an exact Python number (``int`` or
``fractions.Fraction``) and the pivot order is fully deterministic.
"""

from __future__ import annotations


def rref(rows, ncols):
    """Reduce ``rows`` in place to reduced row echelon form.

    Only the first ``ncols`` columns are eligible as pivots; any extra
    trailing columns (augmented right-hand sides) are carried along by
    the row operations.  Returns the list of pivot column indices.
    """
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = -1
        for i in range(r, m):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        pv = prow[c]
        if pv != 1:
            for k in range(c, width):
                prow[k] = prow[k] / pv
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = rows[i]
                for k in range(c, width):
                    row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free Gaussian elimination.

    ``rows`` (lists of ints) are mutated.  The Bareiss update keeps all
    intermediate entries integral, so no rational arithmetic is needed.
    """
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        p = -1
        for i in range(r, m):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c]
            for k in range(c + 1, n):
                row[k] = (piv * row[k] - f * prow[k]) // prev
            row[c] = 0
        prev = piv
        r += 1
        if r == m:
            break
    return r


def simplex_phase1(tab, obj, basis):
    """Run Bland-rule phase-1 simplex pivots until optimality.

    ``tab`` is the m x (N+1) constraint tableau (rhs in the last
    column), ``obj`` the reduced-cost row of length N+1, and ``basis``
    the list of basic column indices, all mutated in place.  Entering
    variable: smallest column index with negative reduced cost; leaving
    variable: lexicographically smallest basic index among the minimum
    ratios.  Bland's rule guarantees termination.  Returns the pivot
    count.
    """
    m = len(tab)
    width = len(obj)
    rhs = width - 1
    npiv = 0
    while True:
        enter = -1
        for j in range(rhs):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return npiv
        leave = -1
        best = None
        for i in range(m):
            tij = tab[i][enter]
            if tij > 0:
                ratio = tab[i][rhs] / tij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # phase-1 objective is bounded below by 0, so this is unreachable
            # for any tableau produced by the feasibility frontend
            raise ArithmeticError("unbounded phase-1 tableau")
        prow = tab[leave]
        pv = prow[enter]
        if pv != 1:
            for k in range(width):
                prow[k] = prow[k] / pv
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    for k in range(width):
                        row[k] = row[k] - f * prow[k]
        f = obj[enter]
        if f:
            for k in range(width):
                obj[k] = obj[k] - f * prow[k]
        basis[leave] = enter
        npiv += 1
