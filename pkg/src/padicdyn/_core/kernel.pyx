# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled coefficient kernels.

Mirrors ``fallback.py`` exactly (same triple representation, same pessimistic
precision propagation, same accumulation order).  Valuations and digit counts
are machine integers here; units stay arbitrary-precision Python integers, so
the speedup comes from removing interpreter dispatch and tuple traffic in the
convolution loops, not from changing the arithmetic.
"""

INF_BOUND = 1 << 40

cdef long long INF_C = 1099511627776  # 1 << 40, matches INF_BOUND

_POW_CACHE = {}


cdef list _pows(long long p):
    cache = _POW_CACHE.get(p)
    if cache is None:
        cache = [1]
        _POW_CACHE[p] = cache
    return <list>cache


cdef object _ppow(list cache, long long p, long long e):
    while len(cache) <= e:
        cache.append(cache[len(cache) - 1] * p)
    return cache[e]


cdef tuple _mul(list cache, long long p, long long v1, object u1, long long k1,
                long long v2, object u2, long long k2):
    cdef long long k, b
    if u1 == 0 or u2 == 0:
        if (u1 == 0 and v1 >= INF_C) or (u2 == 0 and v2 >= INF_C):
            return (INF_BOUND, 0, 0)
        b = v1 + v2
        return (b if b < INF_C else INF_BOUND, 0, 0)
    k = k1 if k1 < k2 else k2
    return (v1 + v2, (u1 * u2) % _ppow(cache, p, k), k)


cdef tuple _add(list cache, long long p, long long v1, object u1, long long k1,
                long long v2, object u2, long long k2):
    cdef long long m, k, a, a1, a2, t, vv
    cdef object s, pk
    if u1 == 0 and u2 == 0:
        return (v1 if v1 < v2 else v2, 0, 0)
    if u1 == 0:
        v1, u1, k1, v2, u2, k2 = v2, u2, k2, v1, u1, k1
    if u2 == 0:
        m = v2
        if v1 >= m:
            return (m, 0, 0)
        if v1 + k1 <= m:
            return (v1, u1, k1)
        k = m - v1
        return (v1, u1 % _ppow(cache, p, k), k)
    if v1 > v2:
        v1, u1, k1, v2, u2, k2 = v2, u2, k2, v1, u1, k1
    if v1 < v2:
        a1 = v1 + k1
        a2 = v2 + k2
        a = a1 if a1 < a2 else a2
        k = a - v1
        pk = _ppow(cache, p, k)
        if v2 - v1 >= k:
            return (v1, u1 % pk, k)
        return (v1, (u1 + u2 * _ppow(cache, p, v2 - v1)) % pk, k)
    k = k1 if k1 < k2 else k2
    s = (u1 + u2) % _ppow(cache, p, k)
    if s == 0:
        return (v1 + k, 0, 0)
    t = 0
    while s % p == 0:
        s = s // p
        t += 1
    return (v1 + t, s, k - t)


def tr_mul(p, v1, u1, k1, v2, u2, k2):
    return _mul(_pows(p), p, v1, u1, k1, v2, u2, k2)


def tr_add(p, v1, u1, k1, v2, u2, k2):
    return _add(_pows(p), p, v1, u1, k1, v2, u2, k2)


def tr_neg(p, v, u, k):
    if u == 0:
        return (v, 0, 0)
    return (v, _ppow(_pows(p), p, k) - u, k)


def tr_div(p, v1, u1, k1, v2, u2, k2):
    cdef long long k, b
    cdef object pk
    if u2 == 0:
        raise ZeroDivisionError("division by a value indistinguishable from zero")
    if u1 == 0:
        if v1 >= INF_BOUND:
            return (INF_BOUND, 0, 0)
        b = v1 - v2
        return (b if b < INF_C else INF_BOUND, 0, 0)
    k = min(k1, k2)
    pk = _ppow(_pows(p), p, k)
    return (v1 - v2, (u1 * pow(u2, -1, pk)) % pk, k)


def series_mul(p, av, au, ak, bv, bu, bk, t_out):
    cdef long long pp = p
    cdef list cache = _pows(pp)
    cdef list lav = list(av), lau = list(au), lak = list(ak)
    cdef list lbv = list(bv), lbu = list(bu), lbk = list(bk)
    cdef Py_ssize_t n_a = len(lav), n_b = len(lbv)
    cdef Py_ssize_t n, i, lo, hi, t = t_out
    cdef long long v, k, wv, wk
    cdef object u, wu, ui
    cdef tuple w, acc
    cdef list cv = [], cu = [], ck = []
    for n in range(t + 1):
        v = INF_BOUND
        u = 0
        k = 0
        lo = 0 if n < n_b else n - n_b + 1
        hi = n if n < n_a else n_a - 1
        for i in range(lo, hi + 1):
            ui = lau[i]
            if ui == 0 and <long long>lav[i] >= INF_C:
                continue
            w = _mul(cache, pp, lav[i], ui, lak[i], lbv[n - i], lbu[n - i], lbk[n - i])
            acc = _add(cache, pp, v, u, k, w[0], w[1], w[2])
            v = acc[0]
            u = acc[1]
            k = acc[2]
        cv.append(v)
        cu.append(u)
        ck.append(k)
    return cv, cu, ck


def conv_at(p, av, au, ak, bv, bu, bk, n, imin, imax):
    cdef long long pp = p
    cdef list cache = _pows(pp)
    cdef list lav = list(av), lau = list(au), lak = list(ak)
    cdef list lbv = list(bv), lbu = list(bu), lbk = list(bk)
    cdef Py_ssize_t nn = n, lo = imin if imin > 0 else 0, hi = imax
    cdef Py_ssize_t i
    cdef long long v, k
    cdef object u, ui
    cdef tuple w, acc
    if nn - lo > len(lbv) - 1:
        lo = nn - (len(lbv) - 1)
    if hi > nn:
        hi = nn
    if hi > len(lav) - 1:
        hi = len(lav) - 1
    v = INF_BOUND
    u = 0
    k = 0
    for i in range(lo, hi + 1):
        ui = lau[i]
        if ui == 0 and <long long>lav[i] >= INF_C:
            continue
        w = _mul(cache, pp, lav[i], ui, lak[i], lbv[nn - i], lbu[nn - i], lbk[nn - i])
        acc = _add(cache, pp, v, u, k, w[0], w[1], w[2])
        v = acc[0]
        u = acc[1]
        k = acc[2]
    return (v, u, k)
