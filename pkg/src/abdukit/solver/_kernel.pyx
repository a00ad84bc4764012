# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled enumeration kernel; keep in lockstep with kernel_py.py."""

from libc.stdlib cimport free, malloc

NAME = "c"

ctypedef unsigned long long u64


def enumerate_answer_sets(
    forced_in,
    free_mask_in,
    conflict_first_in,
    heads,
    poss,
    nafs,
    notfree,
    has_naf_free_constraint,
):
    cdef u64 forced = forced_in
    cdef u64 free_mask = free_mask_in
    cdef u64 conflict = conflict_first_in
    cdef bint has_nf = bool(has_naf_free_constraint)
    cdef Py_ssize_t n = len(heads)
    cdef Py_ssize_t i, m
    cdef u64 *h = <u64 *> malloc((n + 1) * sizeof(u64))
    cdef u64 *p = <u64 *> malloc((n + 1) * sizeof(u64))
    cdef u64 *nf = <u64 *> malloc((n + 1) * sizeof(u64))
    cdef char *flag = <char *> malloc(n + 1)
    cdef u64 *rh = <u64 *> malloc((n + 1) * sizeof(u64))
    cdef u64 *rp = <u64 *> malloc((n + 1) * sizeof(u64))
    if h == NULL or p == NULL or nf == NULL or flag == NULL or rh == NULL or rp == NULL:
        free(h)
        free(p)
        free(nf)
        free(flag)
        free(rh)
        free(rp)
        raise MemoryError()
    for i in range(n):
        h[i] = heads[i]
        p[i] = poss[i]
        nf[i] = nafs[i]
        flag[i] = 1 if notfree[i] else 0

    answers = []
    cdef u64 s, cand, y, sub
    cdef bint ok, minimal, found
    cdef bint forced_consistent = (forced & (forced >> 1) & conflict) == 0

    if forced_consistent:
        s = free_mask
        while True:
            cand = forced | s
            if (cand & (cand >> 1) & conflict) == 0:
                ok = True
                for i in range(n):
                    if (nf[i] & cand) == 0 and (p[i] & ~cand) == 0 and (h[i] & cand) == 0:
                        ok = False
                        break
                if ok:
                    minimal = True
                    if s != 0:
                        m = 0
                        for i in range(n):
                            if (nf[i] & cand) == 0:
                                rh[m] = h[i]
                                rp[m] = p[i]
                                m += 1
                        y = (s - 1) & s
                        while True:
                            sub = forced | y
                            ok = True
                            for i in range(m):
                                if (rp[i] & ~sub) == 0 and (rh[i] & sub) == 0:
                                    ok = False
                                    break
                            if ok:
                                minimal = False
                                break
                            if y == 0:
                                break
                            y = (y - 1) & s
                    if minimal:
                        answers.append(cand)
            if s == 0:
                break
            s = (s - 1) & free_mask

    cdef bint contradictory = False
    if not has_nf:
        found = False
        if forced_consistent:
            s = free_mask
            while True:
                cand = forced | s
                if (cand & (cand >> 1) & conflict) == 0:
                    ok = True
                    for i in range(n):
                        if flag[i] and (p[i] & ~cand) == 0 and (h[i] & cand) == 0:
                            ok = False
                            break
                    if ok:
                        found = True
                        break
                if s == 0:
                    break
                s = (s - 1) & free_mask
        contradictory = not found

    free(h)
    free(p)
    free(nf)
    free(flag)
    free(rh)
    free(rp)
    return answers, bool(contradictory)
