"""Computable commutative monoids.

A MonoidValue bundles an element domain, addition, zero, and a decidable
(possibly bounded) equality.  Three input backends exist -- finite Cayley
tables, affine submonoids of N^d, and finitely presented monoids -- plus a
Derived backend for everything the constructions in
:mod:`monoidkit.embeddings` produce.  All values are immutable after
construction and all operations are pure.

Decision procedures return EqResult / TriState values: finite and affine
backends always answer exactly; finitely presented and derived carriers may
answer Unknown with the exhausted bound, and a predicate that answers
True/False at some bound keeps that answer at every larger bound.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import kernels, lattice
from .elements import Element, exponent_vector, finite_index, fp_word, pair
from .errors import AxiomViolation, DomainError, NotAGroup, PresentationError

#: default budget for bounded existential searches (CLI --bound)
DEFAULT_BOUND = 64
#: default rewrite-state budget for finitely presented word equality
DEFAULT_EQ_BUDGET = 10_000
#: default number of elements drawn from an infinite carrier
DEFAULT_SAMPLE = 100


# ---------------------------------------------------------------------------
# decision values


@dataclass(frozen=True)
class EqResult:
    kind: str  # "eq" | "ne" | "unknown"
    bound: int | None = None

    @property
    def is_equal(self):
        return self.kind == "eq"

    @property
    def is_not_equal(self):
        return self.kind == "ne"

    @property
    def is_unknown(self):
        return self.kind == "unknown"

    def __bool__(self):
        raise TypeError("EqResult is tri-valued; test .is_equal explicitly")


EQUAL = EqResult("eq")
NOT_EQUAL = EqResult("ne")


def eq_unknown(bound):
    return EqResult("unknown", bound)


def eq_from_bool(b):
    return EQUAL if b else NOT_EQUAL


@dataclass(frozen=True)
class TriState:
    """Three-valued predicate result: True, False (optionally with witness),
    or Unknown with the bound that was exhausted."""

    value: bool | None
    witness: tuple | None = None
    bound: int | None = None

    @property
    def is_true(self):
        return self.value is True

    @property
    def is_false(self):
        return self.value is False

    @property
    def is_unknown(self):
        return self.value is None

    def __bool__(self):
        raise TypeError("TriState is tri-valued; test .is_true explicitly")

    def label(self):
        if self.value is None:
            return f"unknown(bound={self.bound})"
        return "true" if self.value else "false"


TRI_TRUE = TriState(True)
TRI_FALSE = TriState(False)


def tri_false(witness=None):
    return TriState(False, witness=witness)


def tri_unknown(bound):
    return TriState(None, bound=bound)


@dataclass(frozen=True)
class CategoryFlags:
    """Category membership evidence.  is_semigroup is always True; the
    tri-state fields may be Unknown on carriers that cannot be exhausted."""

    is_cancellative: TriState = TriState(None)
    is_group: TriState = TriState(None)
    is_divisible: TriState = TriState(None)
    is_uniquely_divisible: TriState = TriState(None)
    is_cone: bool = False
    is_linear: bool = False
    is_semigroup: bool = True

    def __post_init__(self):
        if self.is_group.is_true and self.is_cancellative.is_false:
            raise DomainError("group flag contradicts cancellation witness")
        if self.is_uniquely_divisible.is_true and self.is_divisible.is_false:
            raise DomainError("unique divisibility requires divisibility")
        if self.is_linear and not (self.is_cone and self.is_group.is_true):
            raise DomainError("linear flag requires cone and group")


# ---------------------------------------------------------------------------
# base class


class MonoidValue:
    """Common interface; concrete behavior lives in the backends below."""

    backend = "derived"

    def __init__(self, name, zero, generators, flags):
        self.name = name
        self.zero = zero
        self.generators = tuple(generators)
        self.flags = flags

    # -- required -----------------------------------------------------
    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def eq(self, a: Element, b: Element) -> EqResult:
        raise NotImplementedError

    # -- optional structure -------------------------------------------
    def contains(self, e: Element) -> bool:
        return True

    def elements(self):
        """Full finite carrier as a list, or None when not enumerable."""
        return None

    def cardinality(self):
        elems = self.elements()
        return None if elems is None else len(elems)

    def sample(self, budget=DEFAULT_SAMPLE):
        elems = self.elements()
        if elems is None:
            raise NotImplementedError(f"{self.name}: no sampler")
        return elems[:budget]

    def neg(self, e: Element) -> Element:
        raise NotAGroup(f"{self.name} has no negation procedure")

    def divide(self, e: Element, n: int):
        """Exact n-th part when the backend can certify one, else None."""
        return None

    _scalar = None

    def scalar(self, q, e: Element) -> Element:
        """Action of a nonnegative rational scalar (cone-flagged monoids)."""
        if self._scalar is None:
            raise DomainError(f"{self.name} has no scalar action")
        return self._scalar(q, e)

    # -- n-fold sums ----------------------------------------------------
    def nsum(self, x: Element, n: int) -> Element:
        """Sum of n copies of x by binary doubling; n >= 0."""
        if n < 0:
            raise DomainError("n-fold sum needs n >= 0")
        if n == 0:
            return self.zero
        acc = None
        base = x
        while n:
            if n & 1:
                acc = base if acc is None else self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    # -- existential hooks ---------------------------------------------
    def exists_add_witness(self, u: Element, v: Element, bound=DEFAULT_BOUND) -> TriState:
        """Does some t satisfy u + t = v + t?  True carries the witness t."""
        if self.flags.is_cancellative.is_true:
            r = self.eq(u, v)
            if r.is_equal:
                return TriState(True, witness=(self.zero,))
            if r.is_not_equal:
                return TRI_FALSE
            return tri_unknown(r.bound)
        elems = self.elements()
        exhaustive = elems is not None
        cands = elems if exhaustive else self.sample(bound)
        sawdust = 0
        for t in cands:
            r = self.eq(self.add(u, t), self.add(v, t))
            if r.is_equal:
                return TriState(True, witness=(t,))
            if r.is_unknown:
                sawdust += 1
        if exhaustive and sawdust == 0:
            return TRI_FALSE
        return tri_unknown(bound)

    def exists_nsum_eq(self, a: int, x1: Element, b: int, x2: Element, bound=DEFAULT_BOUND) -> TriState:
        """Does some s >= 1 satisfy sum_{s*a} x1 = sum_{s*b} x2?"""
        u = self.nsum(x1, a)
        v = self.nsum(x2, b)
        cu, cv = u, v
        sawdust = 0
        for s in range(1, bound + 1):
            r = self.eq(cu, cv)
            if r.is_equal:
                return TriState(True, witness=(s,))
            if r.is_unknown:
                sawdust += 1
            if s < bound:
                cu = self.add(cu, u)
                cv = self.add(cv, v)
        return tri_unknown(bound)

    # -- misc -----------------------------------------------------------
    def require_member(self, e: Element):
        if not self.contains(e):
            raise DomainError(f"{e!r} is not an element of {self.name}")

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


# ---------------------------------------------------------------------------
# finite Cayley backend


class CayleyMonoid(MonoidValue):
    """Finite commutative monoid given by an addition table.

    The table is validated exhaustively on construction (associativity,
    commutativity, neutrality of the declared zero), and the category flags
    are computed exactly by the table-scan kernels.
    """

    backend = "cayley"

    def __init__(self, labels, table, name=None, zero_index=0, generators=None):
        n = len(labels)
        if n == 0:
            raise PresentationError("a monoid needs at least a zero element")
        flat = array("i", (table[i][j] for i in range(n) for j in range(n))) \
            if isinstance(table[0], (list, tuple)) else array("i", table)
        if len(flat) != n * n:
            raise PresentationError("Cayley table is not square over the label set")
        if any(v < 0 or v >= n for v in flat):
            raise PresentationError("Cayley table entry out of range")
        self.size = n
        self.labels = [str(l) for l in labels]
        self.table = flat
        self.zero_index = zero_index
        _validate_table(flat, n, zero_index, name or "cayley monoid")
        flags = _cayley_flags(flat, n, zero_index)
        gens = generators
        if gens is None:
            gens = [finite_index(i) for i in range(n) if i != zero_index]
        super().__init__(
            name or f"cayley{n}", finite_index(zero_index), gens, flags
        )
        self._elements = [finite_index(i) for i in range(n)]
        self._inverse = None

    def add(self, a, b):
        return finite_index(self.table[a.data * self.size + b.data])

    def eq(self, a, b):
        return eq_from_bool(a.data == b.data)

    def contains(self, e):
        return e.tag == "idx" and 0 <= e.data < self.size

    def elements(self):
        return self._elements

    def label_of(self, e):
        return self.labels[e.data]

    def neg(self, e):
        if not self.flags.is_group.is_true:
            raise NotAGroup(f"{self.name} is not a group")
        if self._inverse is None:
            inv = [0] * self.size
            for i in range(self.size):
                for j in range(self.size):
                    if self.table[i * self.size + j] == self.zero_index:
                        inv[i] = j
                        break
            self._inverse = inv
        return finite_index(self._inverse[e.data])

    def divide(self, e, n):
        # meaningful as *the* n-th part only under unique divisibility
        if not self.flags.is_uniquely_divisible.is_true:
            return None
        for i in range(self.size):
            if kernels.nsum_index(self.table, self.size, i, n, self.zero_index) == e.data:
                return finite_index(i)
        return None

    def exists_add_witness(self, u, v, bound=DEFAULT_BOUND):
        t = kernels.find_add_witness(self.table, self.size, u.data, v.data)
        if t < 0:
            return TRI_FALSE
        return TriState(True, witness=(finite_index(t),))

    def exists_nsum_eq(self, a, x1, b, x2, bound=DEFAULT_BOUND):
        s = kernels.exists_nsum_eq(self.table, self.size, x1.data, a, x2.data, b)
        if s:
            return TriState(True, witness=(s,))
        return TRI_FALSE


def _validate_table(flat, n, zero_index, name):
    w = kernels.find_neutral_violation(flat, n, zero_index)
    if w is not None:
        raise AxiomViolation(f"{name}: declared zero is not neutral at element {w}", (w,))
    w = kernels.find_comm_violation(flat, n)
    if w is not None:
        raise AxiomViolation(f"{name}: addition is not commutative at {w}", w)
    w = kernels.find_assoc_violation(flat, n)
    if w is not None:
        raise AxiomViolation(f"{name}: addition is not associative at {w}", w)


def _cayley_flags(flat, n, zero_index):
    cw = kernels.find_cancel_violation(flat, n)
    if cw is None:
        cancellative = TRI_TRUE
    else:
        cancellative = tri_false(tuple(finite_index(i) for i in cw))
    if cancellative.is_true:
        # a finite cancellative monoid is a group; confirm by inverse scan
        has_inv = all(
            any(flat[i * n + j] == zero_index for j in range(n)) for i in range(n)
        )
        group = TRI_TRUE if has_inv else tri_false()
    else:
        group = tri_false(cancellative.witness)
    div_x, div_n, inj_x1, inj_x2, inj_n = kernels.div_scan(flat, n)
    divisible = TRI_TRUE if div_x < 0 else tri_false((finite_index(div_x), div_n))
    if inj_x1 >= 0:
        ud = tri_false(("unique", finite_index(inj_x1), finite_index(inj_x2), inj_n))
    elif divisible.is_false:
        ud = tri_false(("divisible",) + divisible.witness)
    else:
        ud = TRI_TRUE
    return CategoryFlags(
        is_cancellative=cancellative,
        is_group=group,
        is_divisible=divisible,
        is_uniquely_divisible=ud,
    )


# ---------------------------------------------------------------------------
# affine backend


class AffineMonoid(MonoidValue):
    """Submonoid of (N^d, +) generated by nonnegative integer vectors.

    Vector arithmetic is exact, equality is literal, and cancellation holds
    analytically.  Nontrivial affine monoids are never divisible: an n-fold
    sum multiplies the coordinate total by n.
    """

    backend = "affine"

    def __init__(self, dim, gens=None, name=None):
        self.dim = dim
        if gens is None:
            gens = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
        gvecs = [exponent_vector(g) for g in gens]
        for g in gvecs:
            if len(g.data) != dim:
                raise PresentationError("generator vector has wrong dimension")
        self._gens_nonzero = [g for g in gvecs if any(g.data)]
        trivial = not self._gens_nonzero
        if trivial:
            flags = CategoryFlags(
                is_cancellative=TRI_TRUE,
                is_group=TRI_TRUE,
                is_divisible=TRI_TRUE,
                is_uniquely_divisible=TRI_TRUE,
            )
        else:
            g = min(self._gens_nonzero, key=lambda e: e.sort_key())
            nwit = sum(g.data) + 1
            flags = CategoryFlags(
                is_cancellative=TRI_TRUE,
                is_group=tri_false((g,)),
                is_divisible=tri_false((g, nwit)),
                is_uniquely_divisible=tri_false(("divisible", g, nwit)),
            )
        self._unit_gens = sorted(
            (tuple(g.data) for g in gvecs), key=lambda v: v
        ) == sorted(
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        )
        super().__init__(
            name or (f"N^{dim}" if dim != 1 else "N"),
            exponent_vector([0] * dim),
            gvecs,
            flags,
        )

    def add(self, a, b):
        return exponent_vector(tuple(x + y for x, y in zip(a.data, b.data)))

    def eq(self, a, b):
        return eq_from_bool(a.data == b.data)

    def contains(self, e):
        if e.tag != "vec" or len(e.data) != self.dim:
            return False
        if self._unit_gens:
            return True
        return self._decompose(e.data) is not None

    def _decompose(self, target):
        """Nonnegative integer combination of the generators, or None."""
        gens = [g.data for g in self._gens_nonzero]
        memo = {}

        def go(t):
            if all(x == 0 for x in t):
                return ()
            if t in memo:
                return memo[t]
            memo[t] = None
            for k, g in enumerate(gens):
                if all(x >= y for x, y in zip(t, g)):
                    rest = go(tuple(x - y for x, y in zip(t, g)))
                    if rest is not None:
                        memo[t] = (k,) + rest
                        break
            return memo[t]

        return go(tuple(target))

    def elements(self):
        if not self._gens_nonzero:
            return [self.zero]
        return None

    def sample(self, budget=DEFAULT_SAMPLE):
        seen = {self.zero.data: self.zero}
        frontier = [self.zero]
        while frontier and len(seen) < budget:
            nxt = []
            for e in sorted(frontier, key=lambda x: x.sort_key()):
                for g in self.generators:
                    s = self.add(e, g)
                    if s.data not in seen:
                        seen[s.data] = s
                        nxt.append(s)
                        if len(seen) >= budget:
                            break
                if len(seen) >= budget:
                    break
            frontier = nxt
        return sorted(seen.values(), key=lambda x: x.sort_key())[:budget]

    def divide(self, e, n):
        if all(x % n == 0 for x in e.data):
            cand = exponent_vector(tuple(x // n for x in e.data))
            if self.contains(cand):
                return cand
        return None

    def exists_add_witness(self, u, v, bound=DEFAULT_BOUND):
        if u.data == v.data:
            return TriState(True, witness=(self.zero,))
        return TRI_FALSE

    def exists_nsum_eq(self, a, x1, b, x2, bound=DEFAULT_BOUND):
        # s*(a*x1) = s*(b*x2) in N^d iff a*x1 = b*x2
        if tuple(a * x for x in x1.data) == tuple(b * x for x in x2.data):
            return TriState(True, witness=(1,))
        return TRI_FALSE


# ---------------------------------------------------------------------------
# finitely presented backend


class FpMonoid(MonoidValue):
    """Commutative monoid presented by m generators and relations u_i ~ v_i
    between exponent words.

    Word equality is decided by breadth-first search through single-relation
    rewrites, prescreened by an exact lattice test (congruent words always
    differ by an integer combination of the u_i - v_i).  The search budget
    is a state count; exhaustion yields Unknown, an emptied component yields
    an exact NotEqual.
    """

    backend = "fp"

    def __init__(self, num_generators, relations, name=None, eq_budget=DEFAULT_EQ_BUDGET):
        m = int(num_generators)
        if m < 1:
            raise PresentationError("a presentation needs at least one generator")
        rels = []
        for u, v in relations:
            u = tuple(int(a) for a in u)
            v = tuple(int(a) for a in v)
            if len(u) != m or len(v) != m:
                raise PresentationError("relation word has wrong generator count")
            if any(a < 0 for a in u + v):
                raise PresentationError("relation words must be nonnegative")
            rels.append((u, v))
        self.num_generators = m
        self.relations = tuple(rels)
        self.eq_budget = eq_budget
        self._diffs = [
            tuple(a - b for a, b in zip(u, v)) for u, v in rels
        ]
        self._diffs = [d for d in self._diffs if any(d)]
        flags = CategoryFlags()  # everything unknown until asked
        gens = [fp_word(tuple(1 if i == j else 0 for j in range(m))) for i in range(m)]
        super().__init__(name or f"fp({m})", fp_word((0,) * m), gens, flags)

    def add(self, a, b):
        return fp_word(tuple(x + y for x, y in zip(a.data, b.data)))

    def eq(self, a, b):
        if a.data == b.data:
            return EQUAL
        delta = [x - y for x, y in zip(a.data, b.data)]
        ok, _ = lattice.subgroup_membership(self._diffs, delta)
        if not ok:
            return NOT_EQUAL
        return self._bfs_eq(a.data, b.data)

    def _bfs_eq(self, start, goal):
        seen = {start}
        frontier = [start]
        budget = self.eq_budget
        while frontier:
            nxt = []
            for w in frontier:
                for u, v in self.relations:
                    for src, dst in ((u, v), (v, u)):
                        if all(a >= s for a, s in zip(w, src)):
                            w2 = tuple(a - s + d for a, s, d in zip(w, src, dst))
                            if w2 == goal:
                                return EQUAL
                            if w2 not in seen:
                                seen.add(w2)
                                nxt.append(w2)
                                if len(seen) > budget:
                                    return eq_unknown(budget)
            frontier = nxt
        return NOT_EQUAL  # whole component explored

    def contains(self, e):
        return e.tag == "word" and len(e.data) == self.num_generators

    def sample(self, budget=DEFAULT_SAMPLE):
        out = []
        degree = 0
        while len(out) < budget:
            layer = [
                w
                for w in _compositions(degree, self.num_generators)
            ]
            for w in layer:
                out.append(fp_word(w))
                if len(out) >= budget:
                    break
            degree += 1
        return out

    def exists_add_witness(self, u, v, bound=DEFAULT_BOUND):
        # exists t: u+t ~ v+t  iff  u - v lies in the relation lattice
        delta = [x - y for x, y in zip(u.data, v.data)]
        ok, coeffs = lattice.subgroup_membership(self._diffs, delta)
        if not ok:
            return TRI_FALSE
        # a concrete witness: stack enough relation words to absorb rewrites
        t = [0] * self.num_generators
        for c, (uw, vw) in zip(coeffs or [], self.relations):
            for i in range(self.num_generators):
                t[i] += abs(c) * (uw[i] + vw[i])
        return TriState(True, witness=(fp_word(tuple(t)),))

    def exists_nsum_eq(self, a, x1, b, x2, bound=DEFAULT_BOUND):
        delta = [a * p - b * q for p, q in zip(x1.data, x2.data)]
        if not lattice.in_rational_span(self._diffs, delta):
            return TRI_FALSE
        u = self.nsum(x1, a)
        v = self.nsum(x2, b)
        cu, cv = u, v
        for s in range(1, bound + 1):
            if self.eq(cu, cv).is_equal:
                return TriState(True, witness=(s,))
            if s < bound:
                cu = self.add(cu, u)
                cv = self.add(cv, v)
        return tri_unknown(bound)


def _compositions(total, parts):
    """All length-`parts` tuples of naturals summing to `total`, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# products


class ProductMonoid(MonoidValue):
    """Componentwise direct product; elements are pairs.

    Existential searches decouple componentwise: the solution sets of
    `exists s: s-fold sums agree` are closed under positive multiples, so a
    witness for each component multiplies into a shared witness.
    """

    backend = "product"

    def __init__(self, left, right, name=None):
        self.left = left
        self.right = right
        lf, rf = left.flags, right.flags
        flags = CategoryFlags(
            is_cancellative=_tri_and(
                lf.is_cancellative, rf.is_cancellative,
                lambda w: tuple(pair(x, right.zero) for x in w),
                lambda w: tuple(pair(left.zero, y) for y in w),
            ),
            is_group=_tri_and(
                lf.is_group, rf.is_group,
                lambda w: None, lambda w: None,
            ),
            is_divisible=_tri_and(
                lf.is_divisible, rf.is_divisible,
                lambda w: (pair(w[0], right.zero), w[1]),
                lambda w: (pair(left.zero, w[0]), w[1]),
            ),
            is_uniquely_divisible=_tri_and(
                lf.is_uniquely_divisible, rf.is_uniquely_divisible,
                lambda w: None, lambda w: None,
            ),
            is_cone=lf.is_cone and rf.is_cone,
            is_linear=lf.is_linear and rf.is_linear,
        )
        gens = [pair(g, right.zero) for g in left.generators]
        gens += [pair(left.zero, g) for g in right.generators]
        super().__init__(
            name or f"({left.name} x {right.name})",
            pair(left.zero, right.zero),
            gens,
            flags,
        )
        self._elements = None
        le, re = left.elements(), right.elements()
        if le is not None and re is not None:
            self._elements = [pair(x, y) for x in le for y in re]

    def add(self, a, b):
        return pair(
            self.left.add(a.data[0], b.data[0]),
            self.right.add(a.data[1], b.data[1]),
        )

    def eq(self, a, b):
        r1 = self.left.eq(a.data[0], b.data[0])
        if r1.is_not_equal:
            return NOT_EQUAL
        r2 = self.right.eq(a.data[1], b.data[1])
        if r2.is_not_equal:
            return NOT_EQUAL
        if r1.is_equal and r2.is_equal:
            return EQUAL
        return eq_unknown(r1.bound if r1.is_unknown else r2.bound)

    def contains(self, e):
        return (
            e.tag == "pair"
            and self.left.contains(e.data[0])
            and self.right.contains(e.data[1])
        )

    def elements(self):
        return self._elements

    def sample(self, budget=DEFAULT_SAMPLE):
        if self._elements is not None:
            return self._elements[:budget]
        ls = self.left.sample(budget)
        rs = self.right.sample(budget)
        out = []
        for rank in range(len(ls) + len(rs)):
            for i in range(min(rank + 1, len(ls))):
                j = rank - i
                if j < len(rs):
                    out.append(pair(ls[i], rs[j]))
                    if len(out) >= budget:
                        return out
        return out

    def neg(self, e):
        return pair(self.left.neg(e.data[0]), self.right.neg(e.data[1]))

    def divide(self, e, n):
        a = self.left.divide(e.data[0], n)
        b = self.right.divide(e.data[1], n)
        if a is None or b is None:
            return None
        return pair(a, b)

    def exists_add_witness(self, u, v, bound=DEFAULT_BOUND):
        r1 = self.left.exists_add_witness(u.data[0], v.data[0], bound)
        if r1.is_false:
            return TRI_FALSE
        r2 = self.right.exists_add_witness(u.data[1], v.data[1], bound)
        if r2.is_false:
            return TRI_FALSE
        if r1.is_true and r2.is_true:
            return TriState(True, witness=(pair(r1.witness[0], r2.witness[0]),))
        return tri_unknown(bound)

    def exists_nsum_eq(self, a, x1, b, x2, bound=DEFAULT_BOUND):
        r1 = self.left.exists_nsum_eq(a, x1.data[0], b, x2.data[0], bound)
        if r1.is_false:
            return TRI_FALSE
        r2 = self.right.exists_nsum_eq(a, x1.data[1], b, x2.data[1], bound)
        if r2.is_false:
            return TRI_FALSE
        if r1.is_true and r2.is_true:
            return TriState(True, witness=(r1.witness[0] * r2.witness[0],))
        return tri_unknown(bound)


def _tri_and(a: TriState, b: TriState, lift_a, lift_b) -> TriState:
    if a.is_false:
        w = lift_a(a.witness) if a.witness is not None else None
        return tri_false(w)
    if b.is_false:
        w = lift_b(b.witness) if b.witness is not None else None
        return tri_false(w)
    if a.is_true and b.is_true:
        return TRI_TRUE
    return tri_unknown(a.bound if a.is_unknown else b.bound)


# ---------------------------------------------------------------------------
# derived backend


class DerivedMonoid(MonoidValue):
    """Lazily evaluated monoid assembled from procedures.

    Every construction in :mod:`monoidkit.embeddings` returns one of these
    (or a finite Cayley quotient).  Equality results are memoized; all
    captured state is immutable.
    """

    backend = "derived"

    def __init__(
        self,
        name,
        zero,
        add,
        eq,
        *,
        generators=(),
        flags=None,
        elements=None,
        sample=None,
        contains=None,
        neg=None,
        divide=None,
        exists_add_witness=None,
        exists_nsum_eq=None,
        meta=None,
    ):
        super().__init__(name, zero, generators, flags or CategoryFlags())
        self._add = add
        self._eq = eq
        self._elements_src = elements
        self._sample = sample
        self._contains = contains
        self._neg = neg
        self._divide = divide
        self._exists_add = exists_add_witness
        self._exists_nsum = exists_nsum_eq
        self.meta = meta or {}
        self._eq_cache = {}

    def add(self, a, b):
        return self._add(a, b)

    def eq(self, a, b):
        key = (a, b)
        hit = self._eq_cache.get(key)
        if hit is None:
            hit = self._eq(a, b)
            self._eq_cache[key] = hit
            self._eq_cache[(b, a)] = hit
        return hit

    def contains(self, e):
        return True if self._contains is None else self._contains(e)

    def elements(self):
        if self._elements_src is None:
            return None
        if callable(self._elements_src):
            self._elements_src = self._elements_src()
        return self._elements_src

    def sample(self, budget=DEFAULT_SAMPLE):
        elems = self.elements()
        if elems is not None:
            return elems[:budget]
        if self._sample is None:
            raise NotImplementedError(f"{self.name}: no sampler")
        return self._sample(budget)

    def neg(self, e):
        if self._neg is None:
            raise NotAGroup(f"{self.name} has no negation procedure")
        return self._neg(e)

    def divide(self, e, n):
        if self._divide is not None:
            r = self._divide(e, n)
            if r is not None:
                return r
        # finite uniquely divisible carriers always admit a scan
        elems = self.elements()
        if elems is not None and self.flags.is_uniquely_divisible.is_true:
            for y in elems:
                if self.eq(self.nsum(y, n), e).is_equal:
                    return y
        return None

    def exists_add_witness(self, u, v, bound=DEFAULT_BOUND):
        if self._exists_add is not None:
            return self._exists_add(u, v, bound)
        return super().exists_add_witness(u, v, bound)

    def exists_nsum_eq(self, a, x1, b, x2, bound=DEFAULT_BOUND):
        if self._exists_nsum is not None:
            return self._exists_nsum(a, x1, b, x2, bound)
        return super().exists_nsum_eq(a, x1, b, x2, bound)


# ---------------------------------------------------------------------------
# finite table views (lets every finite monoid use the scan kernels)


class TableView:
    """Flattened Cayley table of any finite-enumerable monoid."""

    __slots__ = ("monoid", "elems", "index", "table", "zero_index")

    def __init__(self, monoid):
        elems = monoid.elements()
        if elems is None:
            raise DomainError(f"{monoid.name} is not finite-enumerable")
        self.monoid = monoid
        self.elems = elems
        self.index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        flat = array("i", [0] * (n * n))
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                c = monoid.add(a, b)
                k = self.index.get(c)
                if k is None:
                    # addition may return a non-canonical representative
                    k = next(
                        (m for m, e in enumerate(elems) if monoid.eq(c, e).is_equal),
                        None,
                    )
                    if k is None:
                        raise DomainError(
                            f"{monoid.name}: sum of enumerated elements left the carrier"
                        )
                flat[i * n + j] = k
        self.table = flat
        self.zero_index = self.index.get(monoid.zero)
        if self.zero_index is None:
            self.zero_index = next(
                m for m, e in enumerate(elems) if monoid.eq(monoid.zero, e).is_equal
            )

    @property
    def size(self):
        return len(self.elems)


_table_cache: dict[int, TableView] = {}


def table_view(monoid) -> TableView:
    key = id(monoid)
    view = _table_cache.get(key)
    if view is None or view.monoid is not monoid:
        view = TableView(monoid)
        _table_cache[key] = view
    return view


# ---------------------------------------------------------------------------
# the spec predicates


def nsum(x_monoid: MonoidValue, x: Element, n: int) -> Element:
    """n-fold sum computed by binary doubling."""
    x_monoid.require_member(x)
    return x_monoid.nsum(x, n)


def is_cancellative(x_monoid: MonoidValue, bound=DEFAULT_BOUND) -> TriState:
    """Does x + y = x + z force y = z?  Exact on finite and affine carriers."""
    cached = x_monoid.flags.is_cancellative
    if not cached.is_unknown:
        return cached
    elems = x_monoid.elements()
    if elems is not None:
        view = table_view(x_monoid)
        w = kernels.find_cancel_violation(view.table, view.size)
        if w is None:
            return TRI_TRUE
        return tri_false(tuple(view.elems[i] for i in w))
    sample = x_monoid.sample(bound)
    unknowns = 0
    for x in sample:
        for y in sample:
            xy = x_monoid.add(x, y)
            for z in sample:
                if y is z:
                    continue
                r = x_monoid.eq(xy, x_monoid.add(x, z))
                if r.is_equal:
                    ryz = x_monoid.eq(y, z)
                    if ryz.is_not_equal:
                        return tri_false((x, y, z))
                    if ryz.is_unknown:
                        unknowns += 1
                elif r.is_unknown:
                    unknowns += 1
    return tri_unknown(bound)


def is_divisible(x_monoid: MonoidValue, bound=DEFAULT_BOUND) -> TriState:
    """Does every x have an n-th part for every n >= 2?

    Finite carriers are decided exactly by iterating the n-fold-sum maps to
    their period; infinite carriers are sampled and can only answer False
    (with witness) or Unknown, never True, so answers stay bound-monotone.
    """
    cached = x_monoid.flags.is_divisible
    if not cached.is_unknown:
        return cached
    elems = x_monoid.elements()
    if elems is not None:
        view = table_view(x_monoid)
        div_x, div_n, *_ = kernels.div_scan(view.table, view.size)
        if div_x < 0:
            return TRI_TRUE
        return tri_false((view.elems[div_x], div_n))
    sample = x_monoid.sample(bound)
    for x in sample:
        for n in range(2, bound + 1):
            found_or_unknown = False
            for y in sample:
                r = x_monoid.eq(x_monoid.nsum(y, n), x)
                if r.is_equal or r.is_unknown:
                    found_or_unknown = True
                    break
            if not found_or_unknown:
                # no sampled n-th part; not a proof that none exists
                return tri_unknown(bound)
    return tri_unknown(bound)


def is_uniquely_divisible(x_monoid: MonoidValue, bound=DEFAULT_BOUND) -> TriState:
    """Divisibility plus uniqueness of n-th parts.  The uniqueness witness
    (x1, x2, n) is reported in preference to a divisibility witness."""
    cached = x_monoid.flags.is_uniquely_divisible
    if not cached.is_unknown:
        return cached
    elems = x_monoid.elements()
    if elems is not None:
        view = table_view(x_monoid)
        div_x, div_n, inj_x1, inj_x2, inj_n = kernels.div_scan(view.table, view.size)
        if inj_x1 >= 0:
            return tri_false(("unique", view.elems[inj_x1], view.elems[inj_x2], inj_n))
        if div_x >= 0:
            return tri_false(("divisible", view.elems[div_x], div_n))
        return TRI_TRUE
    sample = x_monoid.sample(bound)
    for n in range(2, bound + 1):
        for i, x1 in enumerate(sample):
            for x2 in sample[i + 1 :]:
                r = x_monoid.eq(x_monoid.nsum(x1, n), x_monoid.nsum(x2, n))
                if r.is_equal:
                    rx = x_monoid.eq(x1, x2)
                    if rx.is_not_equal:
                        return tri_false(("unique", x1, x2, n))
    div = is_divisible(x_monoid, bound)
    if div.is_false:
        return tri_false(("divisible",) + div.witness)
    return tri_unknown(bound)


@dataclass(frozen=True)
class PropositionReport:
    """Outcome of the distinct-multiplier check on a uniquely divisible
    monoid: sums of n1 and n2 copies of a nonzero x agree only if n1 = n2."""

    monoid: str
    verdict: str  # "holds" | "counterexample" | "inapplicable"
    bound: int
    witness: tuple | None = None
    detail: str = ""

    def render(self):
        lines = [f"monoid: {self.monoid}", f"verdict: {self.verdict}", f"bound: {self.bound}"]
        if self.witness is not None:
            x, n1, n2 = self.witness
            lines.append(f"witness: x={x.serialize()} n1={n1} n2={n2}")
        if self.detail:
            lines.append(f"detail: {self.detail}")
        return "\n".join(lines)


def check_prop_2_1(x_monoid: MonoidValue, bound=DEFAULT_BOUND) -> PropositionReport:
    """Search for x != 0 and n1 < n2 <= bound with equal n1- and n2-fold
    sums.  Requires unique divisibility within the bound, else inapplicable."""
    ud = is_uniquely_divisible(x_monoid, bound)
    if not ud.is_true:
        return PropositionReport(
            x_monoid.name,
            "inapplicable",
            bound,
            detail=f"unique divisibility is {ud.label()}",
        )
    elems = x_monoid.elements()
    carrier = elems if elems is not None else x_monoid.sample(bound)
    for x in carrier:
        if x_monoid.eq(x, x_monoid.zero).is_equal:
            continue
        for n1 in range(2, bound):
            s1 = x_monoid.nsum(x, n1)
            for n2 in range(n1 + 1, bound + 1):
                if x_monoid.eq(s1, x_monoid.nsum(x, n2)).is_equal:
                    return PropositionReport(
                        x_monoid.name, "counterexample", bound, witness=(x, n1, n2)
                    )
    return PropositionReport(x_monoid.name, "holds", bound)


# ---------------------------------------------------------------------------
# constructors and catalog


def cyclic(n: int) -> CayleyMonoid:
    if n < 1:
        raise PresentationError("cyclic order must be >= 1")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [finite_index(1)] if n > 1 else []
    return CayleyMonoid([str(i) for i in range(n)], table, name=f"Z{n}", generators=gens)


def truncated(k: int) -> CayleyMonoid:
    """({0..k}, (a, b) -> min(a+b, k)) -- addition saturating at k."""
    if k < 0:
        raise PresentationError("truncation level must be >= 0")
    n = k + 1
    table = [[min(i + j, k) for j in range(n)] for i in range(n)]
    gens = [finite_index(1)] if k >= 1 else []
    return CayleyMonoid([str(i) for i in range(n)], table, name=f"T{k}", generators=gens)


def flat() -> CayleyMonoid:
    """({0, inf}, idempotent absorbing addition)."""
    return CayleyMonoid(
        ["0", "inf"], [[0, 1], [1, 1]], name="flat", generators=[finite_index(1)]
    )


def trivial() -> CayleyMonoid:
    return CayleyMonoid(["0"], [[0]], name="1", generators=[])


def affine(dim: int, gens=None, name=None) -> AffineMonoid:
    return AffineMonoid(dim, gens, name)


def fp(num_generators: int, relations, name=None) -> FpMonoid:
    return FpMonoid(num_generators, relations, name)


def product(x_monoid: MonoidValue, y_monoid: MonoidValue) -> ProductMonoid:
    return ProductMonoid(x_monoid, y_monoid)


BUILTIN_NAMES = ("affine", "cyclic", "truncated", "flat", "trivial")


def builtin(name: str, param=None) -> MonoidValue:
    if name == "affine":
        return affine(1 if param is None else param)
    if name == "cyclic":
        if param is None:
            raise PresentationError("cyclic needs a parameter")
        return cyclic(param)
    if name == "truncated":
        if param is None:
            raise PresentationError("truncated needs a parameter")
        return truncated(param)
    if name == "flat":
        return flat()
    if name == "trivial":
        return trivial()
    raise PresentationError(f"unknown builtin monoid {name!r}")


def builtin_catalog():
    """The worked-example catalog: small affine, cyclic, truncated, flat,
    and three products."""
    mons = [affine(1), affine(2)]
    mons += [cyclic(n) for n in range(2, 7)]
    mons += [truncated(k) for k in range(1, 5)]
    mons.append(flat())
    mons.append(product(affine(1), cyclic(2)))
    mons.append(product(cyclic(2), cyclic(3)))
    mons.append(product(truncated(1), truncated(1)))
    return mons
