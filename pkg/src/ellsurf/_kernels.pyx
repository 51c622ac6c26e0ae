# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled torsion search kernels; same contract as ``_kernels_py``."""
from array import array

from libc.stdlib cimport malloc, free


cdef struct Ctx:
    int nf
    long total
    long* sizes
    long* strides
    long* digits      # total * nf
    long** add_tab
    long** con_tab
    long target_self
    long target_pair
    long* orders
    char* good
    long* good_list
    long n_good
    long* inv
    int n_inv
    long* members     # capacity total
    char* in_members
    long* gens


cdef inline long c_add(Ctx* c, long a, long b) nogil:
    cdef long e = 0
    cdef int v
    cdef long s, da, db
    for v in range(c.nf):
        s = c.sizes[v]
        da = c.digits[a * c.nf + v]
        db = c.digits[b * c.nf + v]
        e += c.add_tab[v][da * s + db] * c.strides[v]
    return e


cdef inline long c_contr(Ctx* c, long a, long b) nogil:
    cdef long acc = 0
    cdef int v
    cdef long s
    for v in range(c.nf):
        s = c.sizes[v]
        acc += c.con_tab[v][c.digits[a * c.nf + v] * s + c.digits[b * c.nf + v]]
    return acc


cdef int extend(Ctx* c, long n_members, int k) nogil:
    if k == c.n_inv:
        return 1
    cdef long d = c.inv[k]
    cdef long gi, g, mult, x, j, h, cnt, i, y
    cdef int ok
    for gi in range(c.n_good):
        g = c.good_list[gi]
        if c.orders[g] != d or c.in_members[g]:
            continue
        ok = 1
        cnt = 0
        mult = 0
        # append the new coset elements, marking membership as we go
        for i in range(1, d):
            mult = c_add(c, mult, g)
            for j in range(n_members):
                h = c.members[j]
                x = c_add(c, h, mult)
                if c.in_members[x] or not c.good[x]:
                    ok = 0
                    break
                c.members[n_members + cnt] = x
                c.in_members[x] = 1
                cnt += 1
            if not ok:
                break
        if ok:
            for i in range(n_members, n_members + cnt):
                x = c.members[i]
                for j in range(1, i):
                    y = c.members[j]
                    if c_contr(c, x, y) != c.target_pair:
                        ok = 0
                        break
                if not ok:
                    break
        if ok:
            c.gens[k] = g
            if extend(c, n_members + cnt, k + 1):
                return 1
        for i in range(n_members, n_members + cnt):
            c.in_members[c.members[i]] = 0
    return 0


def _long_array(values):
    return array("l", [int(v) for v in values])


def valid_elements(sizes, contr_tables, target_self):
    """Nonzero elements whose total self contribution equals ``target_self``."""
    cdef long total = 1
    cdef long e, x, acc, dgt
    cdef int v
    cdef int nf = len(sizes)
    for s in sizes:
        total *= s
    # diagonal of every table, concatenated; offs[v] marks fiber v's block
    diag = []
    offsets = []
    for s, t in zip(sizes, contr_tables):
        offsets.append(len(diag))
        diag.extend(t[i * s + i] for i in range(s))
    sz = _long_array(sizes)
    dg = _long_array(diag) if diag else _long_array([0])
    off = _long_array(offsets) if offsets else _long_array([0])
    cdef long[::1] szv = sz
    cdef long[::1] dgv = dg
    cdef long[::1] offv = off
    out = []
    for e in range(1, total):
        x = e
        acc = 0
        for v in range(nf):
            dgt = x % szv[v]
            x //= szv[v]
            acc += dgv[offv[v] + dgt]
        if acc == target_self:
            out.append(e)
    return out


def element_orders(sizes, add_tables):
    """Order of every element of the product group, indexed by encoding."""
    cdef int nf = len(sizes)
    cdef long total = 1
    cdef long e, x, k
    cdef int v, nonzero
    for s in sizes:
        total *= s
    offsets = []
    flat = []
    for t in add_tables:
        offsets.append(len(flat))
        flat.extend(t)
    sz = _long_array(sizes) if nf else _long_array([1])
    off = _long_array(offsets) if nf else _long_array([0])
    tab = _long_array(flat) if flat else _long_array([0])
    cdef long[::1] szv = sz
    cdef long[::1] offv = off
    cdef long[::1] tabv = tab
    row = array("l", [0] * max(nf, 1))
    cur = array("l", [0] * max(nf, 1))
    cdef long[::1] rowv = row
    cdef long[::1] curv = cur
    out = array("l", [0] * total)
    cdef long[::1] outv = out
    for e in range(total):
        x = e
        for v in range(nf):
            rowv[v] = x % szv[v]
            curv[v] = rowv[v]
            x //= szv[v]
        k = 1
        while True:
            nonzero = 0
            for v in range(nf):
                if curv[v]:
                    nonzero = 1
                    break
            if not nonzero:
                break
            for v in range(nf):
                curv[v] = tabv[offv[v] + curv[v] * szv[v] + rowv[v]]
            k += 1
        outv[e] = k
    return list(out)


def find_embedding(sizes, add_tables, contr_tables, target_self, target_pair, inv_factors):
    """First injective generator assignment meeting the height constraints, or None."""
    cdef Ctx c
    cdef int nf = len(sizes)
    cdef long total = 1
    cdef long e, x
    cdef int v, i
    for s in sizes:
        total *= s
    c.nf = nf
    c.total = total
    c.target_self = target_self
    c.target_pair = target_pair
    c.n_inv = len(inv_factors)

    sizes_a = _long_array(sizes)
    strides = []
    mul = 1
    for s in sizes:
        strides.append(mul)
        mul *= s
    strides_a = _long_array(strides)
    digits = array("l", bytes(0))
    for e in range(total):
        x = e
        for v in range(nf):
            digits.append(x % sizes[v])
            x //= sizes[v]
    add_arrays = [_long_array(t) for t in add_tables]
    con_arrays = [_long_array(t) for t in contr_tables]
    orders_a = _long_array(element_orders(sizes, add_tables))
    good_py = valid_elements(sizes, contr_tables, target_self)
    good_list_a = _long_array(good_py) if good_py else _long_array([0])
    good_flags = bytearray(total)
    for g in good_py:
        good_flags[g] = 1
    inv_a = _long_array(inv_factors) if inv_factors else _long_array([1])

    cdef long[::1] sizes_v = sizes_a
    cdef long[::1] strides_v = strides_a
    cdef long[::1] digits_v = digits if total * nf > 0 else _long_array([0])
    cdef long[::1] orders_v = orders_a
    cdef long[::1] good_v = good_list_a
    cdef long[::1] inv_v = inv_a
    cdef unsigned char[::1] good_flag_v = good_flags
    cdef long[::1] tmp

    c.sizes = &sizes_v[0]
    c.strides = &strides_v[0]
    c.digits = &digits_v[0]
    c.orders = &orders_v[0]
    c.good = <char*> &good_flag_v[0]
    c.good_list = &good_v[0]
    c.n_good = len(good_py)
    c.inv = &inv_v[0]

    c.add_tab = <long**> malloc(nf * sizeof(long*))
    c.con_tab = <long**> malloc(nf * sizeof(long*))
    c.members = <long*> malloc(total * sizeof(long))
    c.in_members = <char*> malloc(total * sizeof(char))
    c.gens = <long*> malloc((c.n_inv + 1) * sizeof(long))
    try:
        for v in range(nf):
            tmp = add_arrays[v]
            c.add_tab[v] = &tmp[0]
            tmp = con_arrays[v]
            c.con_tab[v] = &tmp[0]
        for e in range(total):
            c.in_members[e] = 0
        c.members[0] = 0
        c.in_members[0] = 1
        with nogil:
            found = extend(&c, 1, 0)
        if not found:
            return None
        return tuple(c.gens[i] for i in range(c.n_inv))
    finally:
        free(c.add_tab)
        free(c.con_tab)
        free(c.members)
        free(c.in_members)
        free(c.gens)
