# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rule-induction kernels; behaviour matches ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef inline Py_UCS4* _codepoints(str s, Py_ssize_t n) except NULL:
    cdef Py_UCS4* buf = <Py_UCS4*> malloc((n + 1) * sizeof(Py_UCS4))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = s[i]
    return buf


def edit_script(str source, str target, bint allow_copy):
    cdef Py_ssize_t n = len(source), m = len(target)
    cdef Py_ssize_t i, j, w = m + 1
    cdef int best, here
    cdef int* cost
    cdef Py_UCS4* s
    cdef Py_UCS4* t
    cdef list out
    if not allow_copy:
        return "-" * n + "".join(["+" + c for c in target])
    s = _codepoints(source, n)
    t = _codepoints(target, m)
    cost = <int*> malloc((n + 1) * w * sizeof(int))
    if cost == NULL:
        free(s)
        free(t)
        raise MemoryError()
    try:
        cost[n * w + m] = 0
        for j in range(m):
            cost[n * w + j] = <int>(m - j)
        for i in range(n - 1, -1, -1):
            cost[i * w + m] = <int>(n - i)
            for j in range(m - 1, -1, -1):
                best = cost[(i + 1) * w + j] + 1
                if cost[i * w + j + 1] + 1 < best:
                    best = cost[i * w + j + 1] + 1
                if s[i] == t[j] and cost[(i + 1) * w + j + 1] + 1 < best:
                    best = cost[(i + 1) * w + j + 1] + 1
                cost[i * w + j] = best
        out = []
        i = 0
        j = 0
        while i < n or j < m:
            here = cost[i * w + j]
            if i < n and j < m and s[i] == t[j] and cost[(i + 1) * w + j + 1] + 1 == here:
                out.append("→")
                i += 1
                j += 1
            elif i < n and cost[(i + 1) * w + j] + 1 == here:
                out.append("-")
                i += 1
            else:
                out.append("+" + target[j])
                j += 1
        return "".join(out)
    finally:
        free(cost)
        free(s)
        free(t)


def best_anchor(str form, str lemma, bint allow_copy):
    cdef Py_ssize_t n = len(form), m = len(lemma)
    cdef Py_ssize_t f, l, w = m + 1
    cdef Py_ssize_t bf = -1, bl = -1, bk = 0
    cdef int k, score, best_score = 0, a, b
    cdef int* ext
    cdef int* pre
    cdef int* suf
    cdef Py_UCS4* fs
    cdef Py_UCS4* ls
    fs = _codepoints(form, n)
    ls = _codepoints(lemma, m)
    ext = <int*> malloc((n + 1) * w * sizeof(int))
    pre = <int*> malloc((n + 1) * w * sizeof(int))
    suf = <int*> malloc((n + 1) * w * sizeof(int))
    if ext == NULL or pre == NULL or suf == NULL:
        free(ext)
        free(pre)
        free(suf)
        free(fs)
        free(ls)
        raise MemoryError()
    try:
        for f in range((n + 1) * w):
            ext[f] = 0
            pre[f] = 0
            suf[f] = 0
        for f in range(n - 1, -1, -1):
            for l in range(m - 1, -1, -1):
                if fs[f] == ls[l]:
                    ext[f * w + l] = ext[(f + 1) * w + l + 1] + 1
                    suf[f * w + l] = suf[(f + 1) * w + l + 1] + 1
                else:
                    a = suf[(f + 1) * w + l]
                    b = suf[f * w + l + 1]
                    suf[f * w + l] = a if a > b else b
        for f in range(1, n + 1):
            for l in range(1, m + 1):
                if fs[f - 1] == ls[l - 1]:
                    pre[f * w + l] = pre[(f - 1) * w + l - 1] + 1
                else:
                    a = pre[(f - 1) * w + l]
                    b = pre[f * w + l - 1]
                    pre[f * w + l] = a if a > b else b
        for f in range(n):
            for l in range(m):
                k = ext[f * w + l]
                if k == 0:
                    continue
                score = <int>(n + m) - 2 * k
                if allow_copy:
                    score -= pre[f * w + l] + suf[(f + k) * w + l + k]
                if bk == 0 or score < best_score or (score == best_score and k > bk):
                    best_score = score
                    bf = f
                    bl = l
                    bk = k
        if bk == 0:
            return None
        return (bf, bl, bk)
    finally:
        free(ext)
        free(pre)
        free(suf)
        free(fs)
        free(ls)
