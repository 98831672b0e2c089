"""Pure-Python subset dynamic programs over integer matrices.

Matrices arrive as flat row-major lists of Python ints, with ``NEG`` standing
for -inf.  Rows are assigned in order 0..n-1; ``mask`` records the columns
already used.  When the next row takes column ``j`` it forms one inversion
with every used column greater than ``j``, which is how permutation parity is
tracked without enumerating permutations.  Cost is O(2^n * n).
"""

NEG = -(1 << 62)


def bidet(flat, n):
    """Return ``(plus, minus)``: best weights of even and odd permutations.

    Either component is ``None`` when no permutation of that parity has
    finite weight.
    """
    if n == 0:
        return 0, None
    size = 1 << n
    even = [NEG] * size
    odd = [NEG] * size
    even[0] = 0
    popcount = [0] * size
    for mask in range(1, size):
        popcount[mask] = popcount[mask >> 1] + (mask & 1)
    for mask in range(size):
        e = even[mask]
        o = odd[mask]
        if e == NEG and o == NEG:
            continue
        r = popcount[mask]
        if r == n:
            continue
        base = r * n
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            a = flat[base + j]
            if a == NEG:
                continue
            nxt = mask | bit
            flip = popcount[mask >> (j + 1)] & 1
            if flip:
                if e != NEG and e + a > odd[nxt]:
                    odd[nxt] = e + a
                if o != NEG and o + a > even[nxt]:
                    even[nxt] = o + a
            else:
                if e != NEG and e + a > even[nxt]:
                    even[nxt] = e + a
                if o != NEG and o + a > odd[nxt]:
                    odd[nxt] = o + a
    full = size - 1
    plus = even[full]
    minus = odd[full]
    return (None if plus == NEG else plus), (None if minus == NEG else minus)


def perm_mult(flat, n):
    """Return ``(value, mult)`` for the permanent.

    ``mult`` counts optimal permutations, saturated at 2; ``value`` is
    ``None`` (and ``mult`` 0) when every permutation hits -inf.
    """
    if n == 0:
        return 0, 1
    size = 1 << n
    best = [NEG] * size
    mult = [0] * size
    best[0] = 0
    mult[0] = 1
    popcount = [0] * size
    for mask in range(1, size):
        popcount[mask] = popcount[mask >> 1] + (mask & 1)
    for mask in range(size):
        b = best[mask]
        if b == NEG:
            continue
        r = popcount[mask]
        if r == n:
            continue
        m = mult[mask]
        base = r * n
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            a = flat[base + j]
            if a == NEG:
                continue
            nxt = mask | bit
            v = b + a
            if v > best[nxt]:
                best[nxt] = v
                mult[nxt] = m
            elif v == best[nxt]:
                mult[nxt] = min(2, mult[nxt] + m)
    full = size - 1
    if best[full] == NEG:
        return None, 0
    return best[full], mult[full]
