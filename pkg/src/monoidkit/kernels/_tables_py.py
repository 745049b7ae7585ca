"""Pure-Python table-scan kernels.

All functions take a flattened n x n Cayley table (``table[i*n + j]`` is the
index of element i + j) and work purely on small integer indices.  The
compiled module ``_tables_cy`` mirrors these signatures exactly; callers pick
one through :mod:`monoidkit.kernels`.

Scans return witnesses as plain tuples, or None when the property holds.
The divisibility scans are exact on finite tables: the family of n-fold sum
maps is iterated until the map state repeats, which visits every map that
any exponent can produce.
"""


def find_assoc_violation(table, n):
    """First (a, b, c) with (a+b)+c != a+(b+c), scanning ascending."""
    for a in range(n):
        an = a * n
        for b in range(n):
            ab = table[an + b]
            bn = b * n
            for c in range(n):
                if table[ab * n + c] != table[an + table[bn + c]]:
                    return (a, b, c)
    return None


def find_comm_violation(table, n):
    for a in range(n):
        for b in range(a + 1, n):
            if table[a * n + b] != table[b * n + a]:
                return (a, b)
    return None


def find_neutral_violation(table, n, zero):
    """First a with zero+a != a or a+zero != a."""
    zn = zero * n
    for a in range(n):
        if table[zn + a] != a or table[a * n + zero] != a:
            return a
    return None


def find_cancel_violation(table, n):
    """First (x, y, z) ascending with x+y == x+z and y != z."""
    for x in range(n):
        xn = x * n
        for y in range(n):
            xy = table[xn + y]
            for z in range(y + 1, n):
                if xy == table[xn + z]:
                    return (x, y, z)
    return None


def find_add_witness(table, n, u, v):
    """Smallest t with u+t == v+t, or -1 if none exists."""
    for t in range(n):
        if table[u * n + t] == table[v * n + t]:
            return t
    return -1


def regular_classes(table, n):
    """Class labels of the congruence  y ~ z  iff  exists x: x+y == x+z.

    Returns a list of n labels; the label of each class is its smallest
    member index.
    """
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for y in range(n):
        for z in range(y + 1, n):
            ry, rz = find(y), find(z)
            if ry == rz:
                continue
            for x in range(n):
                if table[x * n + y] == table[x * n + z]:
                    if ry < rz:
                        parent[rz] = ry
                    else:
                        parent[ry] = rz
                    break
    return [find(i) for i in range(n)]


def nsum_index(table, n, x, k, zero):
    """Index of the k-fold sum of x, by binary doubling; k >= 0."""
    if k == 0:
        return zero
    acc = -1
    base = x
    while k:
        if k & 1:
            acc = base if acc < 0 else table[acc * n + base]
        k >>= 1
        if k:
            base = table[base * n + base]
    return acc


def orbit_hits_diagonal(table, n, su, sv, du, dv):
    """Smallest s >= 1 such that the state reached from (su, sv) after s-1
    steps of (+du, +dv) lies on the diagonal, or 0 if no reachable state
    does.  Exact: the walk is deterministic on n*n states, so every
    reachable state appears before the first repeat."""
    cu, cv = su, sv
    seen = set()
    s = 1
    while (cu, cv) not in seen:
        if cu == cv:
            return s
        seen.add((cu, cv))
        cu = table[cu * n + du]
        cv = table[cv * n + dv]
        s += 1
    return 0


def exists_nsum_eq(table, n, x1, a, x2, b):
    """Smallest s >= 1 with sum_{s*a} x1 == sum_{s*b} x2, or 0 if none."""
    u = nsum_index(table, n, x1, a, 0)
    v = nsum_index(table, n, x2, b, 0)
    return orbit_hits_diagonal(table, n, u, v, u, v)


def u_classes(table, n):
    """Class labels of the power congruence  x ~ y  iff  exists k >= 1 with
    sum_k x == sum_k y.  Exact on finite tables."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x in range(n):
        for y in range(x + 1, n):
            rx, ry = find(x), find(y)
            if rx == ry:
                continue
            if exists_nsum_eq(table, n, x, 1, y, 1):
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    return [find(i) for i in range(n)]


def div_scan(table, n):
    """Exact divisibility scan over all exponents k >= 2.

    Iterates the maps  m_k(y) = sum_k y  until the map repeats.  Returns

        (div_x, div_n, inj_x1, inj_x2, inj_n)

    where (div_x, div_n) is the first non-surjectivity witness (no y has
    sum_{div_n} y == div_x) and (inj_x1, inj_x2, inj_n) the first
    non-injectivity witness; -1 entries mean the respective property holds
    for every exponent.
    """
    state = list(range(n))  # m_1 = identity, never a violation
    seen = {tuple(state)}
    div_x = div_n = -1
    inj_x1 = inj_x2 = inj_n = -1
    k = 1
    while True:
        nxt = [table[state[y] * n + y] for y in range(n)]
        k += 1
        key = tuple(nxt)
        if div_x < 0:
            image = set(nxt)
            if len(image) < n:
                for x in range(n):
                    if x not in image:
                        div_x, div_n = x, k
                        break
        if inj_x1 < 0:
            first = {}
            for y, fy in enumerate(nxt):
                if fy in first:
                    inj_x1, inj_x2, inj_n = first[fy], y, k
                    break
                first[fy] = y
        if (div_x >= 0 and inj_x1 >= 0) or key in seen:
            break
        seen.add(key)
        state = nxt
    return (div_x, div_n, inj_x1, inj_x2, inj_n)
