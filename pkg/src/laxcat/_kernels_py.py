"""Pure-Python search kernels.

Reference implementation of the inner loops; ``_kernels_c`` mirrors it
line for line.  All arguments are integer sequences (``array('i')`` in
practice):

* composition tables are flat, ``comp[g * M + f]`` is ``g o f`` or -1;
* target hom-sets use a CSR layout: ``hom_items[hom_start[p]:hom_start[p] +
  hom_len[p]]`` lists the morphisms ``x -> y`` for ``p = x * n + y``, in
  index order.

Both backends return results in the same (canonical) order.
"""


class LimitReached(Exception):
    pass


def _constraints(ns, src_dom, src_cod, src_ids, src_comp):
    ms = len(src_dom)
    is_id = [False] * ms
    for x in range(ns):
        is_id[src_ids[x]] = True
    nonid = [m for m in range(ms) if not is_id[m]]
    pos = {m: i for i, m in enumerate(nonid)}
    obj_checks = [[] for _ in range(ns)]
    for m in nonid:
        obj_checks[max(src_dom[m], src_cod[m])].append((src_dom[m], src_cod[m]))
    mor_checks = [[] for _ in nonid]
    for g in nonid:
        for f in nonid:
            h = src_comp[g * ms + f]
            if h < 0:
                continue
            k = max(pos[g], pos[f], -1 if is_id[h] else pos[h])
            mor_checks[k].append((g, f, h))
    return nonid, obj_checks, mor_checks


def functor_search(ns, src_dom, src_cod, src_ids, src_comp,
                   nt, mt, tgt_ids, tgt_comp, hom_start, hom_len, hom_items, limit):
    """All functors source -> target as ``(omap, mmap)`` tuples, lexicographic."""
    ms = len(src_dom)
    nonid, obj_checks, mor_checks = _constraints(ns, src_dom, src_cod, src_ids, src_comp)
    nn = len(nonid)
    omap = [0] * ns
    mmap = [0] * ms
    out = []

    def assign_obj(i):
        if i == ns:
            assign_mor(0)
            return
        for y in range(nt):
            omap[i] = y
            mmap[src_ids[i]] = tgt_ids[y]
            for d, c in obj_checks[i]:
                if hom_len[omap[d] * nt + omap[c]] == 0:
                    break
            else:
                assign_obj(i + 1)

    def assign_mor(k):
        if k == nn:
            if len(out) >= limit:
                raise LimitReached
            out.append((tuple(omap), tuple(mmap)))
            return
        m = nonid[k]
        p = omap[src_dom[m]] * nt + omap[src_cod[m]]
        start = hom_start[p]
        for idx in range(start, start + hom_len[p]):
            mmap[m] = hom_items[idx]
            for g, f, h in mor_checks[k]:
                if tgt_comp[mmap[g] * mt + mmap[f]] != mmap[h]:
                    break
            else:
                assign_mor(k + 1)

    try:
        assign_obj(0)
    except LimitReached:
        out.append(None)
    return out


def nat_trans_search(ns, src_dom, src_cod, nonid, f_omap, f_mmap, g_omap, g_mmap,
                     nt, mt, tgt_comp, hom_start, hom_len, hom_items, limit):
    """All natural transformations F => G as component tuples, lexicographic."""
    checks = [[] for _ in range(ns)]
    for m in nonid:
        checks[max(src_dom[m], src_cod[m])].append(m)
    comp = [0] * ns
    out = []

    def assign(i):
        if i == ns:
            if len(out) >= limit:
                raise LimitReached
            out.append(tuple(comp))
            return
        p = f_omap[i] * nt + g_omap[i]
        start = hom_start[p]
        for idx in range(start, start + hom_len[p]):
            comp[i] = hom_items[idx]
            for m in checks[i]:
                d, c = src_dom[m], src_cod[m]
                if tgt_comp[g_mmap[m] * mt + comp[d]] != tgt_comp[comp[c] * mt + f_mmap[m]]:
                    break
            else:
                assign(i + 1)

    try:
        assign(0)
    except LimitReached:
        out.append(None)
    return out


def associativity_violation(comp, m):
    """First ``(h, g, f)`` with ``h(gf) != (hg)f``, or None."""
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
