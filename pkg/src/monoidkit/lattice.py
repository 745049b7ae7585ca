"""Exact integer linear algebra.

Smith and Hermite normal forms over arbitrary-precision integers, integer
span membership, and the rank/torsion structure of a finitely presented
abelian group.  Everything here is deterministic: pivots are chosen by
smallest nonzero absolute value with row-major tie-breaking, and no modular
or probabilistic shortcuts are taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, PresentationError


class IntMatrix:
    """Dense integer matrix, row-major, Python ints throughout."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, entries):
        self.rows = rows
        self.cols = cols
        if len(entries) and isinstance(entries[0], (list, tuple)):
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise DomainError("entry grid does not match declared shape")
            self.data = [list(map(int, r)) for r in entries]
        else:
            if len(entries) != rows * cols:
                raise DomainError("entry count does not match declared shape")
            self.data = [
                [int(entries[i * cols + j]) for j in range(cols)] for i in range(rows)
            ]

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def entries(self):
        """Row-major flat list."""
        return [e for row in self.data for e in row]

    def copy(self):
        return IntMatrix(self.rows, self.cols, [row[:] for row in self.data])

    def transpose(self):
        return IntMatrix(
            self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("shape mismatch in matrix product")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if a:
                    brow = other.data[k]
                    orow = out[i]
                    for j in range(other.cols):
                        orow[j] += a * brow[j]
        return IntMatrix(self.rows, other.cols, out)

    def det(self):
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise DomainError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Canonical form of a finitely generated abelian group:
    free rank plus the invariant-factor chain d1 | d2 | ... (each >= 2)."""

    rank: int
    torsion: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise DomainError("negative rank")
        for d in self.torsion:
            if d < 2:
                raise DomainError("torsion divisors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise DomainError(f"torsion divisors must form a chain, got {a} then {b}")

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "trivial"


def _swap_rows(m, i, j):
    m.data[i], m.data[j] = m.data[j], m.data[i]


def _swap_cols(m, i, j):
    for row in m.data:
        row[i], row[j] = row[j], row[i]


def _add_row(m, dst, src, q):
    """row[dst] += q * row[src]"""
    d, s = m.data[dst], m.data[src]
    for j in range(m.cols):
        d[j] += q * s[j]


def _add_col(m, dst, src, q):
    for row in m.data:
        row[dst] += q * row[src]


def _negate_row(m, i):
    m.data[i] = [-a for a in m.data[i]]


def smith_normal_form(a: IntMatrix):
    """Return (U, S, V) with U*A*V = S, U and V unimodular, S diagonal with
    s1 | s2 | ... and all s_i >= 0.

    Pivot choice is the smallest nonzero absolute value of the trailing
    submatrix, ties broken row-major, so results are reproducible.
    """
    s = a.copy()
    u = IntMatrix.identity(a.rows)
    v = IntMatrix.identity(a.cols)
    t = 0
    limit = min(a.rows, a.cols)
    while t < limit:
        piv = _min_abs_pivot(s, t)
        if piv is None:
            break
        while True:
            pi, pj = _min_abs_pivot(s, t)
            if pi != t:
                _swap_rows(s, t, pi)
                _swap_rows(u, t, pi)
            if pj != t:
                _swap_cols(s, t, pj)
                _swap_cols(v, t, pj)
            pivot = s.data[t][t]
            clean = True
            for i in range(t + 1, s.rows):
                if s.data[i][t]:
                    q = s.data[i][t] // pivot
                    _add_row(s, i, t, -q)
                    _add_row(u, i, t, -q)
                    if s.data[i][t]:
                        clean = False
            for j in range(t + 1, s.cols):
                if s.data[t][j]:
                    q = s.data[t][j] // pivot
                    _add_col(s, j, t, -q)
                    _add_col(v, j, t, -q)
                    if s.data[t][j]:
                        clean = False
            if not clean:
                continue
            bad = _nondivisible_entry(s, t)
            if bad is None:
                break
            _add_row(s, t, bad, 1)
            _add_row(u, t, bad, 1)
        t += 1
    for i in range(limit):
        if s.data[i][i] < 0:
            _negate_row(s, i)
            _negate_row(u, i)
    return u, s, v


def _min_abs_pivot(m, t):
    best = None
    best_abs = None
    for i in range(t, m.rows):
        row = m.data[i]
        for j in range(t, m.cols):
            e = row[j]
            if e:
                ae = abs(e)
                if best_abs is None or ae < best_abs:
                    best, best_abs = (i, j), ae
                    if ae == 1:
                        return best
    return best


def _nondivisible_entry(m, t):
    """Row index i > t holding an entry not divisible by the pivot m[t][t]."""
    pivot = m.data[t][t]
    for i in range(t + 1, m.rows):
        row = m.data[i]
        for j in range(t + 1, m.cols):
            if row[j] % pivot:
                return i
    return None


def hermite_normal_form(a: IntMatrix):
    """Row-style HNF: returns (H, U) with H = U*A, U unimodular, pivots
    positive and entries above each pivot reduced into [0, pivot)."""
    h = a.copy()
    u = IntMatrix.identity(a.rows)
    piv = 0
    for col in range(a.cols):
        if piv >= a.rows:
            break
        while True:
            best = None
            best_abs = None
            for i in range(piv, h.rows):
                e = h.data[i][col]
                if e:
                    if best_abs is None or abs(e) < best_abs:
                        best, best_abs = i, abs(e)
            if best is None:
                break
            if best != piv:
                _swap_rows(h, piv, best)
                _swap_rows(u, piv, best)
            done = True
            for i in range(piv + 1, h.rows):
                if h.data[i][col]:
                    q = h.data[i][col] // h.data[piv][col]
                    _add_row(h, i, piv, -q)
                    _add_row(u, i, piv, -q)
                    if h.data[i][col]:
                        done = False
            if done:
                break
        if best is None:
            continue
        if h.data[piv][col] < 0:
            _negate_row(h, piv)
            _negate_row(u, piv)
        for i in range(piv):
            q = h.data[i][col] // h.data[piv][col]
            if q:
                _add_row(h, i, piv, -q)
                _add_row(u, i, piv, -q)
        piv += 1
    return h, u


def subgroup_membership(basis, target):
    """Decide whether `target` lies in the integer span of `basis` vectors.

    Returns (True, coefficients) with sum(c_i * basis_i) == target, or
    (False, None).  Empty basis spans only the zero vector.
    """
    target = [int(x) for x in target]
    basis = [[int(x) for x in b] for b in basis]
    for b in basis:
        if len(b) != len(target):
            raise DomainError("basis and target dimensions differ")
    if not basis:
        ok = all(x == 0 for x in target)
        return (ok, [] if ok else None)
    b = IntMatrix.from_rows(basis)
    h, u = hermite_normal_form(b)
    residue = target[:]
    hcoeff = [0] * h.rows
    for i in range(h.rows):
        row = h.data[i]
        col = next((j for j, e in enumerate(row) if e), None)
        if col is None:
            continue
        q, r = divmod(residue[col], row[col])
        if r:
            return (False, None)
        if q:
            hcoeff[i] = q
            for j in range(h.cols):
                residue[j] -= q * row[j]
    if any(residue):
        return (False, None)
    coeffs = [0] * len(basis)
    for i, c in enumerate(hcoeff):
        if c:
            for j in range(len(basis)):
                coeffs[j] += c * u.data[i][j]
    return (True, coeffs)


def in_rational_span(basis, target):
    """True when some positive integer multiple of `target` lies in the
    integer span of `basis` (i.e. target is in the Q-span)."""
    target = [int(x) for x in target]
    if all(x == 0 for x in target):
        return True
    if not basis:
        return False
    b = IntMatrix.from_rows([list(v) for v in basis])
    _, s, _ = smith_normal_form(b)
    rank_b = sum(1 for i in range(min(s.rows, s.cols)) if s.data[i][i])
    b2 = IntMatrix.from_rows([list(v) for v in basis] + [target])
    _, s2, _ = smith_normal_form(b2)
    rank_b2 = sum(1 for i in range(min(s2.rows, s2.cols)) if s2.data[i][i])
    return rank_b == rank_b2


def grothendieck_group_fp(num_generators, relations):
    """Structure of Z^m modulo the differences u_i - v_i of the relation
    pairs: free rank plus invariant-factor torsion."""
    m = int(num_generators)
    rows = []
    for upair in relations:
        uvec, vvec = upair
        if len(uvec) != m or len(vvec) != m:
            raise PresentationError(
                f"relation vectors must have length {m}, got {len(uvec)} and {len(vvec)}"
            )
        rows.append([int(a) - int(b) for a, b in zip(uvec, vvec)])
    if not rows:
        return AbelianGroupStructure(m, ())
    a = IntMatrix.from_rows(rows)
    _, s, _ = smith_normal_form(a)
    diag = [s.data[i][i] for i in range(min(s.rows, s.cols))]
    nonzero = [d for d in diag if d]
    return AbelianGroupStructure(m - len(nonzero), tuple(d for d in nonzero if d >= 2))
