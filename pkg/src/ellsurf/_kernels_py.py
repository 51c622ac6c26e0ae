"""Pure-Python torsion search kernels.

Elements of ``prod_v G_v`` are encoded in mixed radix (fiber 0 is the least
significant digit). Each fiber supplies a flat ``s*s`` addition table and a
flat ``s*s`` table of contributions scaled to a common integer denominator;
the diagonal holds the self contributions.
"""
from __future__ import annotations


def _digits(sizes):
    total = 1
    for s in sizes:
        total *= s
    digits = []
    for e in range(total):
        row = []
        x = e
        for s in sizes:
            row.append(x % s)
            x //= s
        digits.append(row)
    return total, digits


def _encode(row, sizes):
    e = 0
    mul = 1
    for d, s in zip(row, sizes):
        e += d * mul
        mul *= s
    return e


def valid_elements(sizes, contr_tables, target_self):
    """Nonzero elements whose total self contribution equals ``target_self``."""
    total, digits = _digits(sizes)
    out = []
    for e in range(1, total):
        row = digits[e]
        acc = 0
        for v, d in enumerate(row):
            acc += contr_tables[v][d * sizes[v] + d]
        if acc == target_self:
            out.append(e)
    return out


def element_orders(sizes, add_tables):
    total, digits = _digits(sizes)
    orders = [0] * total
    for e in range(total):
        row = digits[e]
        cur = list(row)
        k = 1
        while any(cur):
            cur = [add_tables[v][cur[v] * sizes[v] + row[v]] for v in range(len(sizes))]
            k += 1
        orders[e] = k
    return orders


def find_embedding(sizes, add_tables, contr_tables, target_self, target_pair, inv_factors):
    """First injective assignment of generator images meeting the height constraints.

    Returns a tuple of encoded generator images (one per invariant factor)
    or ``None`` when the candidate group admits no solution.
    """
    nf = len(sizes)
    total, digits = _digits(sizes)
    orders = element_orders(sizes, add_tables)
    good_list = valid_elements(sizes, contr_tables, target_self)
    good = set(good_list)

    def add(a, b):
        ra, rb = digits[a], digits[b]
        return _encode([add_tables[v][ra[v] * sizes[v] + rb[v]] for v in range(nf)], sizes)

    def pair_ok(a, b):
        ra, rb = digits[a], digits[b]
        acc = 0
        for v in range(nf):
            acc += contr_tables[v][ra[v] * sizes[v] + rb[v]]
        return acc == target_pair

    def extend(members, gens, k):
        if k == len(inv_factors):
            return tuple(gens)
        d = inv_factors[k]
        member_set = set(members)
        for g in good_list:
            if orders[g] != d or g in member_set:
                continue
            new = []
            mult = 0
            ok = True
            for c in range(1, d):
                mult = add(mult, g)
                for h in members:
                    x = add(h, mult)
                    if x in member_set or x not in good:
                        ok = False
                        break
                    new.append(x)
                if not ok:
                    break
            if not ok or len(set(new)) != len(new):
                continue
            nonzero_old = [h for h in members if h]
            if any(not pair_ok(x, y) for i, x in enumerate(new) for y in nonzero_old + new[i + 1:]):
                continue
            res = extend(members + new, gens + [g], k + 1)
            if res is not None:
                return res
        return None

    return extend([0], [], 0)
