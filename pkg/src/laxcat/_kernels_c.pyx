# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract and output order as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef int* _alloc(Py_ssize_t n) except NULL:
    cdef int* p = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    if p == NULL:
        raise MemoryError()
    return p


def functor_search(int ns, const int[:] src_dom, const int[:] src_cod,
                   const int[:] src_ids, const int[:] src_comp,
                   int nt, int mt, const int[:] tgt_ids, const int[:] tgt_comp,
                   const int[:] hom_start, const int[:] hom_len,
                   const int[:] hom_items, Py_ssize_t limit):
    cdef Py_ssize_t ms = src_dom.shape[0]
    cdef Py_ssize_t i, j, k, m, g, f, h, nn, p, v, nvars, start, stop
    cdef bint ok
    out = []

    cdef int* is_id = _alloc(ms)
    cdef int* nonid = _alloc(ms)
    cdef int* pos = _alloc(ms)
    cdef int* omap = _alloc(ns)
    cdef int* mmap = _alloc(ms)
    # CSR constraint lists
    cdef int* oc_start = _alloc(ns + 1)
    cdef int* oc_items = _alloc(2 * ms)
    cdef int* mc_start = NULL
    cdef int* mc_items = NULL
    cdef int* cidx = NULL
    cdef Py_ssize_t n_mc = 0, fill

    try:
        for m in range(ms):
            is_id[m] = 0
        for i in range(ns):
            is_id[src_ids[i]] = 1
        nn = 0
        for m in range(ms):
            pos[m] = -1
            if not is_id[m]:
                pos[m] = nn
                nonid[nn] = m
                nn += 1

        # object checks: non-identity m filed under max(dom, cod)
        for i in range(ns + 1):
            oc_start[i] = 0
        for k in range(nn):
            m = nonid[k]
            j = src_dom[m] if src_dom[m] > src_cod[m] else src_cod[m]
            oc_start[j + 1] += 1
        for i in range(ns):
            oc_start[i + 1] += oc_start[i]
        fill_obj = [oc_start[i] for i in range(ns)]
        for k in range(nn):
            m = nonid[k]
            j = src_dom[m] if src_dom[m] > src_cod[m] else src_cod[m]
            fill = fill_obj[j]
            oc_items[2 * fill] = src_dom[m]
            oc_items[2 * fill + 1] = src_cod[m]
            fill_obj[j] = fill + 1

        # composition checks: triples (g, f, h) filed under max position
        triples = [[] for _ in range(nn)]
        for g in range(nn):
            for f in range(nn):
                h = src_comp[nonid[g] * ms + nonid[f]]
                if h < 0:
                    continue
                k = g if g > f else f
                if not is_id[h] and pos[h] > k:
                    k = pos[h]
                triples[k].append((nonid[g], nonid[f], h))
                n_mc += 1
        mc_start = _alloc(nn + 1)
        mc_items = _alloc(3 * n_mc)
        fill = 0
        for k in range(nn):
            mc_start[k] = fill
            for t in triples[k]:
                mc_items[3 * fill] = t[0]
                mc_items[3 * fill + 1] = t[1]
                mc_items[3 * fill + 2] = t[2]
                fill += 1
        mc_start[nn] = fill

        nvars = ns + nn
        cidx = _alloc(nvars + 1)
        if nvars == 0:
            out.append(((), ()))
            return out

        v = 0
        cidx[0] = -1
        while v >= 0:
            cidx[v] += 1
            if v < ns:
                if cidx[v] >= nt:
                    v -= 1
                    continue
                omap[v] = cidx[v]
                mmap[src_ids[v]] = tgt_ids[cidx[v]]
                ok = True
                for j in range(oc_start[v], oc_start[v + 1]):
                    if hom_len[omap[oc_items[2 * j]] * nt + omap[oc_items[2 * j + 1]]] == 0:
                        ok = False
                        break
            else:
                k = v - ns
                m = nonid[k]
                p = omap[src_dom[m]] * nt + omap[src_cod[m]]
                if cidx[v] >= hom_len[p]:
                    v -= 1
                    continue
                mmap[m] = hom_items[hom_start[p] + cidx[v]]
                ok = True
                for j in range(mc_start[k], mc_start[k + 1]):
                    g = mc_items[3 * j]
                    f = mc_items[3 * j + 1]
                    h = mc_items[3 * j + 2]
                    if tgt_comp[mmap[g] * mt + mmap[f]] != mmap[h]:
                        ok = False
                        break
            if not ok:
                continue
            if v == nvars - 1:
                if len(out) >= limit:
                    out.append(None)
                    return out
                out.append((tuple([omap[i] for i in range(ns)]),
                            tuple([mmap[i] for i in range(ms)])))
                continue
            v += 1
            cidx[v] = -1
        return out
    finally:
        free(is_id); free(nonid); free(pos); free(omap); free(mmap)
        free(oc_start); free(oc_items)
        if mc_start != NULL:
            free(mc_start)
        if mc_items != NULL:
            free(mc_items)
        if cidx != NULL:
            free(cidx)


def nat_trans_search(int ns, const int[:] src_dom, const int[:] src_cod,
                     const int[:] nonid, const int[:] f_omap, const int[:] f_mmap,
                     const int[:] g_omap, const int[:] g_mmap,
                     int nt, int mt, const int[:] tgt_comp,
                     const int[:] hom_start, const int[:] hom_len,
                     const int[:] hom_items, Py_ssize_t limit):
    cdef Py_ssize_t nn = nonid.shape[0]
    cdef Py_ssize_t i, j, k, m, d, c, p, v
    cdef bint ok
    out = []
    if ns == 0:
        out.append(())
        return out
    cdef int* ch_start = _alloc(ns + 1)
    cdef int* ch_items = _alloc(nn)
    cdef int* comp = _alloc(ns)
    cdef int* cidx = _alloc(ns)
    try:
        buckets = [[] for _ in range(ns)]
        for k in range(nn):
            m = nonid[k]
            j = src_dom[m] if src_dom[m] > src_cod[m] else src_cod[m]
            buckets[j].append(m)
        k = 0
        for i in range(ns):
            ch_start[i] = k
            for m in buckets[i]:
                ch_items[k] = m
                k += 1
        ch_start[ns] = k

        v = 0
        cidx[0] = -1
        while v >= 0:
            cidx[v] += 1
            p = f_omap[v] * nt + g_omap[v]
            if cidx[v] >= hom_len[p]:
                v -= 1
                continue
            comp[v] = hom_items[hom_start[p] + cidx[v]]
            ok = True
            for j in range(ch_start[v], ch_start[v + 1]):
                m = ch_items[j]
                d = src_dom[m]
                c = src_cod[m]
                if tgt_comp[g_mmap[m] * mt + comp[d]] != tgt_comp[comp[c] * mt + f_mmap[m]]:
                    ok = False
                    break
            if not ok:
                continue
            if v == ns - 1:
                if len(out) >= limit:
                    out.append(None)
                    return out
                out.append(tuple([comp[i] for i in range(ns)]))
                continue
            v += 1
            cidx[v] = -1
        return out
    finally:
        free(ch_start); free(ch_items); free(comp); free(cidx)


def associativity_violation(const int[:] comp, Py_ssize_t m):
    cdef Py_ssize_t h, g, f
    cdef int hg, gf
    for h in range(m):
        for g in range(m):
            hg = comp[h * m + g]
            if hg < 0:
                continue
            for f in range(m):
                gf = comp[g * m + f]
                if gf < 0:
                    continue
                if comp[h * m + gf] != comp[hg * m + f]:
                    return (h, g, f)
    return None
