"""Pure-Python letter kernels.

Letters are nonzero ints: generator ``g`` (0-based) is ``g + 1`` and its
inverse is ``-(g + 1)``.  Every function here has a compiled twin in
``_speedups.pyx`` with an identical signature.
"""
from array import array


def free_reduce(seq):
    out = []
    push = out.append
    pop = out.pop
    for x in seq:
        if out and out[-1] == -x:
            pop()
        else:
            push(x)
    return array("i", out)


def cancel_length(u, v):
    """Number of letters cancelling at the junction ``u . v`` (both reduced)."""
    n = len(u)
    m = min(n, len(v))
    c = 0
    while c < m and u[n - 1 - c] == -v[c]:
        c += 1
    return c


def periodic_lcp(a, oa, b, ob, limit):
    """Common prefix length of ``a`` read cyclically from ``oa`` and ``b`` from ``ob``."""
    pa = len(a)
    pb = len(b)
    i = 0
    ia = oa % pa
    ib = ob % pb
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


def smallest_period(s):
    """Smallest ``p`` with ``s[i] == s[i + p]`` (failure function); 0 for empty."""
    n = len(s)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        x = s[i]
        while k and s[k] != x:
            k = fail[k - 1]
        if s[k] == x:
            k += 1
        fail[i] = k
    return n - fail[n - 1]


def least_rotation(s):
    """Start index of the lexicographically least rotation (Booth)."""
    n = len(s)
    if n == 0:
        return 0
    f = [-1] * (2 * n)
    k = 0
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


def substitute_reduce(word, images, inverse_images):
    """Freely reduced image of ``word`` under ``g -> images[g]``."""
    out = []
    push = out.append
    pop = out.pop
    for x in word:
        img = images[x - 1] if x > 0 else inverse_images[-x - 1]
        for y in img:
            if out and out[-1] == -y:
                pop()
            else:
                push(y)
    return array("i", out)
