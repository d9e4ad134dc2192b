# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the routines in ``_pykernels``."""


def sparse_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef Py_ssize_t n, k
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            if n == 2:
                e = (<long>ea[0] + <long>eb[0], <long>ea[1] + <long>eb[1])
            elif n == 3:
                e = (<long>ea[0] + <long>eb[0], <long>ea[1] + <long>eb[1],
                     <long>ea[2] + <long>eb[2])
            else:
                e = tuple([ea[k] + eb[k] for k in range(n)])
            v = out.get(e)
            if v is None:
                out[e] = ca * cb
            else:
                out[e] = v + ca * cb
    return {e: c for e, c in out.items() if c}


def sparse_axpy(dict a, dict b, s):
    cdef dict out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + s * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def dense_mul(list a, list b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if not x:
            continue
        for j in range(lb):
            out[i + j] = out[i + j] + x * b[j]
    while out and not out[len(out) - 1]:
        out.pop()
    return out


def dense_divmod(list a, list b, inv_lead):
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1, k, j
    if len(r) - 1 < db:
        return [], r
    cdef list q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c * inv_lead
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - c * b[j]
    del r[db:]
    while r and not r[len(r) - 1]:
        r.pop()
    while q and not q[len(q) - 1]:
        q.pop()
    return q, r
