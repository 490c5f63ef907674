# cython: language_level=3
"""Compiled pivot kernels.

Cython twin of ``pybackend``: the arithmetic stays on exact Python
numbers (``int`` / ``Fraction``), so results are bit-identical to the
pure backend; the speedup comes from removing interpreter overhead in
the pivot loops and index bookkeeping.
"""


def rref(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return []
    cdef Py_ssize_t width = len(<list>rows[0])
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, k, p
    cdef list prow, row
    cdef object pv, f
    for c in range(ncols):
        p = -1
        for i in range(r, m):
            if (<list>rows[i])[c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        pv = prow[c]
        if pv != 1:
            for k in range(c, width):
                prow[k] = prow[k] / pv
        for i in range(m):
            if i != r:
                row = <list>rows[i]
                f = row[c]
                if f:
                    for k in range(c, width):
                        row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def bareiss_rank(list rows):
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t n = len(<list>rows[0])
    cdef object prev = 1
    cdef Py_ssize_t r = 0, c, i, k, p
    cdef list prow, row
    cdef object piv, f
    for c in range(n):
        p = -1
        for i in range(r, m):
            if (<list>rows[i])[c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        piv = prow[c]
        for i in range(r + 1, m):
            row = <list>rows[i]
            f = row[c]
            for k in range(c + 1, n):
                row[k] = (piv * row[k] - f * prow[k]) // prev
            row[c] = 0
        prev = piv
        r += 1
        if r == m:
            break
    return r


def simplex_phase1(list tab, list obj, list basis):
    cdef Py_ssize_t m = len(tab)
    cdef Py_ssize_t width = len(obj)
    cdef Py_ssize_t rhs = width - 1
    cdef Py_ssize_t npiv = 0
    cdef Py_ssize_t enter, leave, i, j, k
    cdef list prow, row
    cdef object pv, f, tij, ratio, best
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
            tij = (<list>tab[i])[enter]
            if tij > 0:
                ratio = (<list>tab[i])[rhs] / tij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise ArithmeticError("unbounded phase-1 tableau")
        prow = <list>tab[leave]
        pv = prow[enter]
        if pv != 1:
            for k in range(width):
                prow[k] = prow[k] / pv
        for i in range(m):
            if i != leave:
                row = <list>tab[i]
                f = row[enter]
                if f:
                    for k in range(width):
                        row[k] = row[k] - f * prow[k]
        f = obj[enter]
        if f:
            for k in range(width):
                obj[k] = obj[k] - f * prow[k]
        basis[leave] = enter
        npiv += 1
