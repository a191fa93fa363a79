"""Pure-Python arithmetic kernels.

Hot-path routines for the whole package: normal-form arithmetic in the
group  x-power * base * center  and row reduction over F_p.  A compiled
twin (pgroupdim._core, built from _core.pyx) exposes the same surface
and is preferred at import time; see pgroupdim.kernels.

Elements travel through these functions as flat integer tuples

    (a, v[0], ..., v[n-1], m[0], ..., m[zd-1])

with the top exponent a reduced mod p^k and every other entry reduced
mod p.  The m-block stores the strictly upper triangular commutator
exponents row-major: pair (s, t), s < t, sits at index
s*n - s*(s+1)//2 + (t-s-1).

The kernel context is a plain tuple (p, pk, n, zd, pidx) where pidx is
a flat n*n tuple mapping s*n+t to the m-index of the pair {s, t}
(entries on the diagonal are -1).  Build it with make_ctx.
"""

from __future__ import annotations

BACKEND = "pure"


def make_ctx(p: int, k: int):
    n = p**k
    zd = n * (n - 1) // 2
    pidx = [-1] * (n * n)
    q = 0
    for s in range(n):
        for t in range(s + 1, n):
            pidx[s * n + t] = q
            pidx[t * n + s] = q
            q += 1
    return (p, n, n, zd, tuple(pidx))


def identity(ctx):
    _, _, n, zd, _ = ctx
    return (0,) * (1 + n + zd)


def _conj_x(v, m, beta, ctx):
    """Conjugate the base*center part (v, m) by the shift automorphism
    applied beta times.  Returns new (v, m) lists.

    The center picks up two effects: pairs are relabelled (with a sign
    flip when the shift reverses the pair order) and re-sorting the
    shifted base factors into increasing index order contributes the
    inversion products of the wrapped block against the rest.
    """
    p, _, n, zd, pidx = ctx
    if beta == 0:
        return list(v), list(m)
    vv = [0] * n
    for i in range(n):
        vv[(i + beta) % n] = v[i]
    mm = [0] * zd
    q = 0
    for s in range(n):
        sn = (s + beta) % n
        for t in range(s + 1, n):
            c = m[q]
            if c:
                tn = (t + beta) % n
                if sn < tn:
                    mm[pidx[sn * n + tn]] += c
                else:
                    mm[pidx[tn * n + sn]] -= c
            q += 1
    # wrap-around inversions: indices [0, beta) moved from the tail past
    # the block [beta, n)
    for cc in range(beta):
        wc = v[cc + n - beta]
        if wc:
            base = cc * n
            for aa in range(beta, n):
                wa = v[aa - beta]
                if wa:
                    mm[pidx[base + aa]] -= wa * wc
    return vv, [x % p for x in mm]


def conj_x_pow(t, beta, ctx):
    """Conjugate a full element by x^beta."""
    p, pk, n, zd, _ = ctx
    v, m = _conj_x(t[1 : 1 + n], t[1 + n :], beta % n, ctx)
    return (t[0],) + tuple(x % p for x in v) + tuple(m)


def mul(t1, t2, ctx):
    p, pk, n, zd, pidx = ctx
    a2 = t2[0]
    v, m = _conj_x(t1[1 : 1 + n], t1[1 + n :], a2 % n, ctx)
    v2 = t2[1 : 1 + n]
    m2 = t2[1 + n :]
    # collect: moving the second base block left past the first one
    # contributes -v[t]*v2[s] on pair (s, t)
    q = 0
    for s in range(n):
        ws = v2[s]
        if ws:
            for t in range(s + 1, n):
                m[q] = (m[q] + m2[q] - v[t] * ws) % p
                q += 1
        else:
            for t in range(s + 1, n):
                m[q] = (m[q] + m2[q]) % p
                q += 1
    vv = tuple((v[i] + v2[i]) % p for i in range(n))
    return ((t1[0] + a2) % pk,) + vv + tuple(m)


def inv(t, ctx):
    p, pk, n, zd, pidx = ctx
    v = t[1 : 1 + n]
    m = t[1 + n :]
    # invert the base*center part: exponents negate, collecting the
    # reversed base factors costs -v[s]*v[t] on each pair
    iv = [(-x) % p for x in v]
    im = [0] * zd
    q = 0
    for s in range(n):
        vs = v[s]
        for tt in range(s + 1, n):
            im[q] = (-m[q] - vs * v[tt]) % p
            q += 1
    a = (-t[0]) % pk
    cv, cm = _conj_x(iv, im, a % n, ctx)
    return (a,) + tuple(x % p for x in cv) + tuple(cm)


def power(t, e, ctx):
    if e < 0:
        t = inv(t, ctx)
        e = -e
    r = identity(ctx)
    while e:
        if e & 1:
            r = mul(r, t, ctx)
        e >>= 1
        if e:
            t = mul(t, t, ctx)
    return r


def rref(rows, p):
    """Reduced row echelon form over F_p.

    Returns (rows, pivots): the canonical basis (pivot entries 1, zeros
    above and below, strictly increasing pivot columns, no zero rows)
    and the pivot column indices.
    """
    work = [[x % p for x in r] for r in rows]
    if not work:
        return [], []
    width = len(work[0])
    pivots = []
    r = 0
    nrows = len(work)
    for col in range(width):
        piv = -1
        for i in range(r, nrows):
            if work[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv_ = pow(work[r][col], p - 2, p)
        if inv_ != 1:
            work[r] = [(x * inv_) % p for x in work[r]]
        row = work[r]
        for i in range(nrows):
            if i != r and work[i][col]:
                f = work[i][col]
                wi = work[i]
                work[i] = [(a - f * b) % p for a, b in zip(wi, row)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return work[:r], pivots


def reduce_vec(vec, rows, pivots, p):
    """Residue of vec after elimination against an rref basis."""
    w = [x % p for x in vec]
    for row, col in zip(rows, pivots):
        f = w[col]
        if f:
            w = [(a - f * b) % p for a, b in zip(w, row)]
    return w
