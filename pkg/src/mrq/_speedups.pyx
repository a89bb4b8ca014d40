# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled letter kernels; see ``_purekernels`` for the reference semantics."""
from cpython cimport array
import array

cdef array.array _int_template = array.array("i", [])


def free_reduce(const int[:] seq):
    cdef Py_ssize_t n = seq.shape[0], top = 0, i
    cdef array.array out = array.clone(_int_template, n, zero=False)
    cdef int[:] o = out
    cdef int x
    for i in range(n):
        x = seq[i]
        if top > 0 and o[top - 1] == -x:
            top -= 1
        else:
            o[top] = x
            top += 1
    array.resize(out, top)
    return out


def cancel_length(const int[:] u, const int[:] v):
    cdef Py_ssize_t n = u.shape[0], m = v.shape[0], c = 0
    if n < m:
        m = n
    while c < m and u[n - 1 - c] == -v[c]:
        c += 1
    return c


def periodic_lcp(const int[:] a, Py_ssize_t oa, const int[:] b, Py_ssize_t ob, Py_ssize_t limit):
    cdef Py_ssize_t pa = a.shape[0], pb = b.shape[0], i = 0
    cdef Py_ssize_t ia = oa % pa, ib = ob % pb
    while i < limit:
        if a[ia] != b[ib]:
            break
        i += 1
        ia += 1
        if ia == pa:
            ia = 0
        ib += 1
        if ib == pb:
            ib = 0
    return i


def smallest_period(const int[:] s):
    cdef Py_ssize_t n = s.shape[0], i, k = 0
    if n == 0:
        return 0
    cdef array.array fail_arr = array.clone(array.array("q", []), n, zero=True)
    cdef long long[:] fail = fail_arr
    cdef int x
    for i in range(1, n):
        x = s[i]
        while k and s[k] != x:
            k = fail[k - 1]
        if s[k] == x:
            k += 1
        fail[i] = k
    return n - fail[n - 1]


def least_rotation(const int[:] s):
    cdef Py_ssize_t n = s.shape[0], j, k = 0, i
    if n == 0:
        return 0
    cdef array.array f_arr = array.clone(array.array("q", []), 2 * n, zero=False)
    cdef long long[:] f = f_arr
    cdef int sj
    for j in range(2 * n):
        f[j] = -1
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if i == -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def substitute_reduce(const int[:] word, list images, list inverse_images):
    cdef Py_ssize_t rank = len(images), n = word.shape[0], i, j, g, top = 0, total = 0
    cdef int x, y
    # images and inverses laid end to end; slot g spans flat[start[g]:start[g + 1]]
    cdef array.array flat = array.array("i")
    cdef array.array start = array.clone(_int_template, 2 * rank + 1, zero=True)
    cdef int[:] st = start
    for g in range(rank):
        flat.extend(images[g])
        st[g + 1] = len(flat)
    for g in range(rank):
        flat.extend(inverse_images[g])
        st[rank + g + 1] = len(flat)
    cdef const int[:] f = flat
    for i in range(n):
        x = word[i]
        g = x - 1 if x > 0 else rank - x - 1
        total += st[g + 1] - st[g]
    cdef array.array out = array.clone(_int_template, total, zero=False)
    cdef int[:] o = out
    for i in range(n):
        x = word[i]
        g = x - 1 if x > 0 else rank - x - 1
        for j in range(st[g], st[g + 1]):
            y = f[j]
            if top > 0 and o[top - 1] == -y:
                top -= 1
            else:
                o[top] = y
                top += 1
    array.resize(out, top)
    return out
