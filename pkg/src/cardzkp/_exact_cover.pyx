# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact-cover search; same contract and visiting order as ``_exact_cover_py``."""

from libc.stdlib cimport malloc, free


def search(int n_cells, placements, limit=None, bint collect=True):
    cdef Py_ssize_t n_pl = len(placements)
    cdef long long cap = -1 if limit is None else limit
    cdef long long count = 0
    cdef int pid, c, k, depth, pos, nxt, ok, total
    cdef int *p_start
    cdef int *p_len
    cdef int *p_cells
    cdef int *head
    cdef int *order
    cdef int *fill
    cdef int *cursor
    cdef int *cellpos
    cdef int *chosen
    cdef unsigned char *covered
    solutions = []

    if cap == 0:
        return 0, solutions
    if n_cells == 0:
        return 1, ([[]] if collect else [])

    total = 0
    lowest = []
    for pid in range(n_pl):
        cells = placements[pid]
        total += len(cells)
        if len(cells):
            m = min(cells)
            if m < 0 or max(cells) >= n_cells:
                raise ValueError(f"placement {pid} covers a cell outside 0..{n_cells - 1}")
            lowest.append(m)
        else:
            lowest.append(-1)

    p_start = <int *> malloc((n_pl + 1) * sizeof(int))
    p_len = <int *> malloc((n_pl + 1) * sizeof(int))
    p_cells = <int *> malloc((total + 1) * sizeof(int))
    head = <int *> malloc((n_cells + 1) * sizeof(int))
    order = <int *> malloc((n_pl + 1) * sizeof(int))
    fill = <int *> malloc((n_cells + 1) * sizeof(int))
    cursor = <int *> malloc((n_cells + 1) * sizeof(int))
    cellpos = <int *> malloc((n_cells + 1) * sizeof(int))
    chosen = <int *> malloc((n_cells + 1) * sizeof(int))
    covered = <unsigned char *> malloc(n_cells + 1)
    if not (p_start and p_len and p_cells and head and order and fill and cursor and cellpos and chosen and covered):
        raise MemoryError()
    try:
        k = 0
        for pid in range(n_pl):
            p_start[pid] = k
            p_len[pid] = len(placements[pid])
            for c in placements[pid]:
                p_cells[k] = c
                k += 1
        # bucket placements by lowest cell, keeping input order (counting sort)
        for c in range(n_cells + 1):
            head[c] = 0
        for pid in range(n_pl):
            if lowest[pid] >= 0:
                head[lowest[pid] + 1] += 1
        for c in range(n_cells):
            head[c + 1] += head[c]
        for c in range(n_cells):
            fill[c] = head[c]
            covered[c] = 0
        for pid in range(n_pl):
            if lowest[pid] >= 0:
                order[fill[lowest[pid]]] = pid
                fill[lowest[pid]] += 1

        depth = 0
        cellpos[0] = 0
        cursor[0] = head[0]
        while depth >= 0:
            pos = cellpos[depth]
            ok = 0
            while cursor[depth] < head[pos + 1]:
                pid = order[cursor[depth]]
                cursor[depth] += 1
                ok = 1
                for k in range(p_start[pid], p_start[pid] + p_len[pid]):
                    if covered[p_cells[k]]:
                        ok = 0
                        break
                if ok:
                    for k in range(p_start[pid], p_start[pid] + p_len[pid]):
                        covered[p_cells[k]] = 1
                    chosen[depth] = pid
                    break
            if not ok:
                depth -= 1
                if depth >= 0:
                    pid = chosen[depth]
                    for k in range(p_start[pid], p_start[pid] + p_len[pid]):
                        covered[p_cells[k]] = 0
                continue
            nxt = pos + 1
            while nxt < n_cells and covered[nxt]:
                nxt += 1
            if nxt == n_cells:
                count += 1
                if collect:
                    solutions.append([chosen[k] for k in range(depth + 1)])
                if cap >= 0 and count >= cap:
                    break
                pid = chosen[depth]
                for k in range(p_start[pid], p_start[pid] + p_len[pid]):
                    covered[p_cells[k]] = 0
            else:
                depth += 1
                cellpos[depth] = nxt
                cursor[depth] = head[nxt]
    finally:
        free(p_start)
        free(p_len)
        free(p_cells)
        free(head)
        free(order)
        free(fill)
        free(cursor)
        free(cellpos)
        free(chosen)
        free(covered)
    return count, solutions
