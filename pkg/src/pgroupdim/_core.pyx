# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels.

Same calling surface as pgroupdim._pycore (flat integer tuples plus a
(p, pk, n, zd, pidx) context tuple); see that module for the layout and
sign conventions.  Only the inner loops differ.
"""

from libc.stdlib cimport malloc, free

BACKEND = "compiled"


def make_ctx(int p, int k):
    cdef int n = p ** k
    cdef int zd = n * (n - 1) // 2
    pidx = [-1] * (n * n)
    cdef int s, t, q = 0
    for s in range(n):
        for t in range(s + 1, n):
            pidx[s * n + t] = q
            pidx[t * n + s] = q
            q += 1
    return (p, n, n, zd, tuple(pidx))


def identity(ctx):
    cdef int n = ctx[2]
    cdef int zd = ctx[3]
    return (0,) * (1 + n + zd)


cdef void _unpack_pidx(object pidx, int* buf, int nn):
    cdef int i
    for i in range(nn):
        buf[i] = pidx[i]


cdef void _conj_x_c(int* v, int* m, int beta, int p, int n, int zd, int* pidx,
                    int* vv, int* mm):
    """vv, mm receive the conjugate of (v, m) by the shift applied beta
    times; entries of mm are reduced mod p, vv entries copied as-is."""
    cdef int i, s, t, q, sn, tn, c, cc, aa, wc, wa
    if beta == 0:
        for i in range(n):
            vv[i] = v[i]
        for i in range(zd):
            mm[i] = m[i]
        return
    for i in range(n):
        vv[(i + beta) % n] = v[i]
    for i in range(zd):
        mm[i] = 0
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
    for cc in range(beta):
        wc = v[cc + n - beta]
        if wc:
            for aa in range(beta, n):
                wa = v[aa - beta]
                if wa:
                    mm[pidx[cc * n + aa]] -= wa * wc
    for i in range(zd):
        mm[i] = mm[i] % p
        if mm[i] < 0:
            mm[i] += p


def conj_x_pow(t, int beta, ctx):
    cdef int p = ctx[0]
    cdef int pk = ctx[1]
    cdef int n = ctx[2]
    cdef int zd = ctx[3]
    cdef int* buf = <int*> malloc((n * n + 2 * (n + zd)) * sizeof(int))
    cdef int* pidx = buf
    cdef int* src = buf + n * n
    cdef int* dst = src + n + zd
    cdef int i
    _unpack_pidx(ctx[4], pidx, n * n)
    for i in range(n + zd):
        src[i] = t[1 + i]
    _conj_x_c(src, src + n, beta % n, p, n, zd, pidx, dst, dst + n)
    out = (t[0],) + tuple([dst[i] for i in range(n + zd)])
    free(buf)
    return out


def mul(t1, t2, ctx):
    cdef int p = ctx[0]
    cdef int pk = ctx[1]
    cdef int n = ctx[2]
    cdef int zd = ctx[3]
    cdef int* buf = <int*> malloc((n * n + 3 * (n + zd)) * sizeof(int))
    cdef int* pidx = buf
    cdef int* e1 = buf + n * n
    cdef int* e2 = e1 + n + zd
    cdef int* cv = e2 + n + zd
    cdef int* cm = cv + n
    cdef int i, s, t, q, ws
    _unpack_pidx(ctx[4], pidx, n * n)
    for i in range(n + zd):
        e1[i] = t1[1 + i]
        e2[i] = t2[1 + i]
    cdef int a2 = t2[0]
    _conj_x_c(e1, e1 + n, a2 % n, p, n, zd, pidx, cv, cm)
    q = 0
    for s in range(n):
        ws = e2[s]
        for t in range(s + 1, n):
            cm[q] = (cm[q] + e2[n + q] - cv[t] * ws) % p
            if cm[q] < 0:
                cm[q] += p
            q += 1
    out_list = [0] * (1 + n + zd)
    out_list[0] = (t1[0] + a2) % pk
    for i in range(n):
        out_list[1 + i] = (cv[i] + e2[i]) % p
    for i in range(zd):
        out_list[1 + n + i] = cm[i]
    free(buf)
    return tuple(out_list)


def inv(t, ctx):
    cdef int p = ctx[0]
    cdef int pk = ctx[1]
    cdef int n = ctx[2]
    cdef int zd = ctx[3]
    cdef int* buf = <int*> malloc((n * n + 3 * (n + zd)) * sizeof(int))
    cdef int* pidx = buf
    cdef int* e = buf + n * n
    cdef int* w = e + n + zd
    cdef int i, s, tt, q, a
    _unpack_pidx(ctx[4], pidx, n * n)
    for i in range(n + zd):
        e[i] = t[1 + i]
    # negate exponents; re-sorting the reversed base factors costs
    # -v[s]*v[t] per pair
    for i in range(n):
        w[i] = (-e[i]) % p
        if w[i] < 0:
            w[i] += p
    q = 0
    for s in range(n):
        for tt in range(s + 1, n):
            w[n + q] = (-e[n + q] - e[s] * e[tt]) % p
            if w[n + q] < 0:
                w[n + q] += p
            q += 1
    a = (-t[0]) % pk
    if a < 0:
        a += pk
    cdef int* dst = w + n + zd
    _conj_x_c(w, w + n, a % n, p, n, zd, pidx, dst, dst + n)
    out = (a,) + tuple([dst[i] for i in range(n + zd)])
    free(buf)
    return out


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


def rref(rows, int p):
    """Reduced row echelon form over F_p; see _pycore.rref."""
    cdef int nrows = len(rows)
    if nrows == 0:
        return [], []
    cdef int width = len(rows[0])
    cdef int* w = <int*> malloc(nrows * width * sizeof(int))
    cdef int i, j, col, piv, r, f, inv_, e, x
    for i in range(nrows):
        row = rows[i]
        for j in range(width):
            x = row[j] % p
            if x < 0:
                x += p
            w[i * width + j] = x
    pivots = []
    r = 0
    for col in range(width):
        piv = -1
        for i in range(r, nrows):
            if w[i * width + col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(width):
                x = w[r * width + j]
                w[r * width + j] = w[piv * width + j]
                w[piv * width + j] = x
        # normalize pivot to 1 (Fermat inverse)
        inv_ = 1
        e = p - 2
        f = w[r * width + col]
        while e:
            if e & 1:
                inv_ = (inv_ * f) % p
            f = (f * f) % p
            e >>= 1
        if inv_ != 1:
            for j in range(width):
                w[r * width + j] = (w[r * width + j] * inv_) % p
        for i in range(nrows):
            if i != r and w[i * width + col]:
                f = w[i * width + col]
                for j in range(width):
                    x = (w[i * width + j] - f * w[r * width + j]) % p
                    if x < 0:
                        x += p
                    w[i * width + j] = x
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    out = [[w[i * width + j] for j in range(width)] for i in range(r)]
    free(w)
    return out, pivots


def reduce_vec(vec, rows, pivots, int p):
    """Residue of vec after elimination against an rref basis."""
    cdef int width = len(vec)
    cdef int* w = <int*> malloc(width * sizeof(int))
    cdef int i, j, f, col, x
    for j in range(width):
        x = vec[j] % p
        if x < 0:
            x += p
        w[j] = x
    cdef int nb = len(rows)
    for i in range(nb):
        col = pivots[i]
        f = w[col]
        if f:
            row = rows[i]
            for j in range(width):
                x = (w[j] - f * <int> row[j]) % p
                if x < 0:
                    x += p
                w[j] = x
    out = [w[j] for j in range(width)]
    free(w)
    return out
