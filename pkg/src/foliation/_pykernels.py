"""Pure-Python arithmetic kernels.

Coefficients are any exact field elements supporting ``+``, ``*`` and
truth testing (``Fraction`` or :class:`~foliation.algebra.AlgNum`).
Sparse polynomials are dicts from exponent tuples to nonzero coefficients;
dense univariate polynomials are lists, lowest degree first, without
trailing zeros.
"""


def sparse_mul(a, b):
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def sparse_axpy(a, b, s):
    """Return ``a + s*b``."""
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + s * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def dense_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    while out and not out[-1]:
        out.pop()
    return out


def dense_divmod(a, b, inv_lead):
    """Divide ``a`` by ``b`` given the inverse of ``b``'s leading coefficient."""
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c * inv_lead
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = r[k - db + j] - c * b[j]
    del r[db:]
    while r and not r[-1]:
        r.pop()
    while q and not q[-1]:
        q.pop()
    return q, r
