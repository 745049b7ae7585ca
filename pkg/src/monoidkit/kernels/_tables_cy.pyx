# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table-scan kernels; same contracts as _tables_py."""

from cpython cimport array
import array


cdef array.array _as_int_array(table):
    if isinstance(table, array.array) and table.typecode == "i":
        return table
    return array.array("i", table)


def find_assoc_violation(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int a, b, c, ab
    for a in range(n):
        for b in range(n):
            ab = t[a * n + b]
            for c in range(n):
                if t[ab * n + c] != t[a * n + t[b * n + c]]:
                    return (a, b, c)
    return None


def find_comm_violation(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int a, b
    for a in range(n):
        for b in range(a + 1, n):
            if t[a * n + b] != t[b * n + a]:
                return (a, b)
    return None


def find_neutral_violation(table, int n, int zero):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int a
    for a in range(n):
        if t[zero * n + a] != a or t[a * n + zero] != a:
            return a
    return None


def find_cancel_violation(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int x, y, z, xy
    for x in range(n):
        for y in range(n):
            xy = t[x * n + y]
            for z in range(y + 1, n):
                if xy == t[x * n + z]:
                    return (x, y, z)
    return None


def find_add_witness(table, int n, int u, int v):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int w
    for w in range(n):
        if t[u * n + w] == t[v * n + w]:
            return w
    return -1


def regular_classes(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef array.array par = array.array("i", range(n))
    cdef int[:] parent = par
    cdef int x, y, z, ry, rz, i
    for y in range(n):
        for z in range(y + 1, n):
            ry = y
            while parent[ry] != ry:
                parent[ry] = parent[parent[ry]]
                ry = parent[ry]
            rz = z
            while parent[rz] != rz:
                parent[rz] = parent[parent[rz]]
                rz = parent[rz]
            if ry == rz:
                continue
            for x in range(n):
                if t[x * n + y] == t[x * n + z]:
                    if ry < rz:
                        parent[rz] = ry
                    else:
                        parent[ry] = rz
                    break
    out = []
    for i in range(n):
        ry = i
        while parent[ry] != ry:
            ry = parent[ry]
        out.append(ry)
    return out


def nsum_index(table, int n, int x, k, int zero):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    return _nsum(t, n, x, k, zero)


cdef int _nsum(int[:] t, int n, int x, object k, int zero):
    cdef int acc = -1
    cdef int base = x
    cdef object kk = k
    if kk == 0:
        return zero
    while kk:
        if kk & 1:
            acc = base if acc < 0 else t[acc * n + base]
        kk >>= 1
        if kk:
            base = t[base * n + base]
    return acc


def orbit_hits_diagonal(table, int n, int su, int sv, int du, int dv):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    return _orbit(t, n, su, sv, du, dv)


cdef long _orbit(int[:] t, int n, int su, int sv, int du, int dv):
    cdef int cu = su, cv = sv
    seen = set()
    cdef long s = 1
    while (cu, cv) not in seen:
        if cu == cv:
            return s
        seen.add((cu, cv))
        cu = t[cu * n + du]
        cv = t[cv * n + dv]
        s += 1
    return 0


def exists_nsum_eq(table, int n, int x1, a, int x2, b):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int u = _nsum(t, n, x1, a, 0)
    cdef int v = _nsum(t, n, x2, b, 0)
    return _orbit(t, n, u, v, u, v)


def u_classes(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef array.array par = array.array("i", range(n))
    cdef int[:] parent = par
    cdef int x, y, rx, ry, i, cu, cv
    for x in range(n):
        for y in range(x + 1, n):
            rx = x
            while parent[rx] != rx:
                parent[rx] = parent[parent[rx]]
                rx = parent[rx]
            ry = y
            while parent[ry] != ry:
                parent[ry] = parent[parent[ry]]
                ry = parent[ry]
            if rx == ry:
                continue
            cu = x
            cv = y
            seen = set()
            related = False
            while (cu, cv) not in seen:
                if cu == cv:
                    related = True
                    break
                seen.add((cu, cv))
                cu = t[cu * n + x]
                cv = t[cv * n + y]
            if related:
                if rx < ry:
                    parent[ry] = rx
                else:
                    parent[rx] = ry
    out = []
    for i in range(n):
        rx = i
        while parent[rx] != rx:
            rx = parent[rx]
        out.append(rx)
    return out


def div_scan(table, int n):
    cdef array.array arr = _as_int_array(table)
    cdef int[:] t = arr
    cdef int div_x = -1, inj_x1 = -1, inj_x2 = -1
    cdef long div_n = -1, inj_n = -1, k = 1
    cdef int y, fy
    state = list(range(n))
    seen = {tuple(state)}
    while True:
        nxt = [t[state[y] * n + y] for y in range(n)]
        k += 1
        key = tuple(nxt)
        if div_x < 0:
            image = set(nxt)
            if len(image) < n:
                for y in range(n):
                    if y not in image:
                        div_x = y
                        div_n = k
                        break
        if inj_x1 < 0:
            first = {}
            for y in range(n):
                fy = nxt[y]
                if fy in first:
                    inj_x1 = first[fy]
                    inj_x2 = y
                    inj_n = k
                    break
                first[fy] = y
        if (div_x >= 0 and inj_x1 >= 0) or key in seen:
            break
        seen.add(key)
        state = nxt
    return (div_x, div_n, inj_x1, inj_x2, inj_n)
