"""The five canonical constructions.

Each construction consumes a MonoidValue and returns a (target, map) pair:

    regularize        quotient by  y1 ~ y2  iff  exists x: x+y1 = x+y2
    formal_difference pairs (y, z) meaning z - y, modulo cross-sum equality
    divisible_hull    fractions (x, n) meaning x/n, modulo cross-sum equality
    unique_quotient   quotient by  x ~ y  iff  exists n: n-fold sums agree
    modulate          scalar combinations over a uniquely divisible carrier

The pair and fraction relations are equivalence relations only on
well-behaved inputs, so both come in two modes: literal (the textbook
relation, which fails loudly with a witness when its hypotheses break) and
saturated (closed under an extra additive or multiplicative witness, total
on every input).  Saturated is the default.

Finite carriers get explicit quotients with canonical least representatives
and exactly computed flags; infinite carriers get lazy quotients whose
equality goes through the relation and may answer Unknown.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels, lattice
from .core import (
    DEFAULT_BOUND,
    EQUAL,
    NOT_EQUAL,
    AffineMonoid,
    CategoryFlags,
    DerivedMonoid,
    EqResult,
    FpMonoid,
    MonoidValue,
    ProductMonoid,
    TRI_TRUE,
    TriState,
    eq_unknown,
    is_cancellative,
    is_uniquely_divisible,
    table_view,
    tri_false,
    tri_unknown,
)
from .elements import Element, cone_combo, fraction, pair
from .errors import (
    BoundExhausted,
    DomainError,
    ModulationUndefined,
    MonoidKitError,
    NotAnEquivalence,
    NotCancellative,
)


class RelationMode(enum.Enum):
    LITERAL = "literal"
    SATURATED = "saturated"


LITERAL = RelationMode.LITERAL
SATURATED = RelationMode.SATURATED


@dataclass
class CanonicalMap:
    """The structure map attached to a construction; always an additive,
    zero-preserving homomorphism on decided pairs."""

    source: MonoidValue
    target: MonoidValue
    name: str
    apply: callable

    def __call__(self, e: Element) -> Element:
        return self.apply(e)

    def then(self, nxt: "CanonicalMap") -> "CanonicalMap":
        if nxt.source is not self.target:
            raise DomainError("maps do not compose: target/source mismatch")
        return CanonicalMap(
            self.source,
            nxt.target,
            f"{self.name},{nxt.name}",
            lambda e, f=self.apply, g=nxt.apply: g(f(e)),
        )


def identity_map(x_monoid: MonoidValue, name: str) -> CanonicalMap:
    return CanonicalMap(x_monoid, x_monoid, name, lambda e: e)


@dataclass
class Congruence:
    """A monoid congruence: the defining relation plus, on finite carriers,
    the computed partition."""

    carrier: MonoidValue
    relation: callable  # (Element, Element) -> EqResult
    finite_classes: tuple | None = None


# ---------------------------------------------------------------------------
# quotient scaffolding


def _classify(elems, relation):
    """Partition `elems` by the (exact) relation; Unknown verdicts abort.

    Returns (reps, rep_of, classes): canonical representatives in total
    order, the member->representative dict, and the partition.
    """
    n = len(elems)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            r = relation(elems[i], elems[j])
            if r.is_unknown:
                raise BoundExhausted(
                    f"relation undecided within budget on ({elems[i].serialize()}, "
                    f"{elems[j].serialize()})",
                    bound=r.bound,
                    pair=(elems[i], elems[j]),
                )
            if r.is_equal:
                parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(elems[i])
    classes = []
    for members in groups.values():
        members.sort(key=lambda e: e.sort_key())
        classes.append(members)
    classes.sort(key=lambda ms: ms[0].sort_key())
    rep_of = {}
    for members in classes:
        for m in members:
            rep_of[m] = members[0]
    reps = [ms[0] for ms in classes]
    return reps, rep_of, tuple(tuple(ms) for ms in classes)


def _labels_to_partition(elems, labels):
    groups = {}
    for e, lab in zip(elems, labels):
        groups.setdefault(lab, []).append(e)
    classes = []
    for members in groups.values():
        members.sort(key=lambda e: e.sort_key())
        classes.append(members)
    classes.sort(key=lambda ms: ms[0].sort_key())
    rep_of = {}
    for members in classes:
        for m in members:
            rep_of[m] = members[0]
    return [ms[0] for ms in classes], rep_of, tuple(tuple(ms) for ms in classes)


def _exact_finite_flags(monoid, hints=None):
    """Exact flags for a finite-enumerable monoid via the scan kernels,
    merged with structural hints (cone/linear and theorem-given values)."""
    view = table_view(monoid)
    n, flat = view.size, view.table
    cw = kernels.find_cancel_violation(flat, n)
    if cw is None:
        canc = TRI_TRUE
        has_inv = all(
            any(flat[i * n + j] == view.zero_index for j in range(n)) for i in range(n)
        )
        group = TRI_TRUE if has_inv else tri_false()
    else:
        canc = tri_false(tuple(view.elems[i] for i in cw))
        group = tri_false(canc.witness)
    div_x, div_n, inj_x1, inj_x2, inj_n = kernels.div_scan(flat, n)
    div = TRI_TRUE if div_x < 0 else tri_false((view.elems[div_x], div_n))
    if inj_x1 >= 0:
        ud = tri_false(("unique", view.elems[inj_x1], view.elems[inj_x2], inj_n))
    elif div.is_false:
        ud = tri_false(("divisible",) + div.witness)
    else:
        ud = TRI_TRUE
    hints = hints or {}
    for key, exact in (
        ("is_cancellative", canc),
        ("is_group", group),
        ("is_divisible", div),
        ("is_uniquely_divisible", ud),
    ):
        want = hints.get(key)
        if want is not None and want.value is not None and want.value != exact.value:
            raise MonoidKitError(
                f"{monoid.name}: structural flag {key}={want.value} contradicts "
                f"the exhaustive scan ({exact.value})"
            )
    return CategoryFlags(
        is_cancellative=canc,
        is_group=group,
        is_divisible=div,
        is_uniquely_divisible=ud,
        is_cone=bool(hints.get("is_cone", False)),
        is_linear=bool(hints.get("is_linear", False)) and group.is_true,
    )


def _lazy_flags(hints):
    unk = TriState(None)
    group = hints.get("is_group", unk)
    return CategoryFlags(
        is_cancellative=hints.get("is_cancellative", unk),
        is_group=group,
        is_divisible=hints.get("is_divisible", unk),
        is_uniquely_divisible=hints.get("is_uniquely_divisible", unk),
        is_cone=bool(hints.get("is_cone", False)),
        is_linear=bool(hints.get("is_linear", False)) and group.is_true,
    )


def _quotient(
    carrier,
    relation,
    name,
    *,
    labels=None,
    hints=None,
    neg=None,
    divide=None,
    scalar=None,
    sample=None,
    exists_add=None,
    exists_nsum=None,
    meta=None,
):
    """Build the quotient of `carrier` by the congruence `relation`.

    Finite carriers produce an explicit quotient: canonical representatives
    (least member of each class in the fixed total order), exact flags, and
    a `canon` that maps any element to its representative.  Infinite
    carriers produce a lazy quotient that keeps representatives as-is and
    decides equality through the relation.

    Returns (monoid, canon, congruence).
    """
    elems = carrier.elements()
    meta = dict(meta or {})
    if elems is not None:
        if labels is not None:
            reps, rep_of, classes = _labels_to_partition(elems, labels)
        else:
            reps, rep_of, classes = _classify(elems, relation)
        rep_cache = dict(rep_of)

        def canon(e):
            r = rep_cache.get(e)
            if r is None:
                for cand in reps:
                    v = relation(e, cand)
                    if v.is_equal:
                        r = cand
                        break
                    if v.is_unknown:
                        raise BoundExhausted(
                            "canonicalization undecided", bound=v.bound, pair=(e, cand)
                        )
                if r is None:
                    raise DomainError(f"{name}: element {e.serialize()} matches no class")
                rep_cache[e] = r
            return r

        congruence = Congruence(carrier, relation, classes)
        meta["congruence"] = congruence
        monoid = DerivedMonoid(
            name,
            canon(carrier.zero),
            lambda a, b: canon(carrier.add(a, b)),
            relation,
            generators=tuple(canon(g) for g in carrier.generators),
            elements=reps,
            contains=carrier.contains,
            neg=(lambda e: canon(neg(e))) if neg else None,
            divide=(lambda e, k: _canon_opt(canon, divide(e, k))) if divide else None,
            exists_add_witness=exists_add,
            exists_nsum_eq=exists_nsum,
            meta=meta,
        )
        if scalar:
            monoid._scalar = lambda q, e: canon(scalar(q, e))
        monoid.flags = _exact_finite_flags(monoid, hints)
        return monoid, canon, congruence
    congruence = Congruence(carrier, relation, None)
    meta["congruence"] = congruence
    monoid = DerivedMonoid(
        name,
        carrier.zero,
        carrier.add,
        relation,
        generators=carrier.generators,
        sample=sample or carrier.sample,
        contains=carrier.contains,
        neg=neg,
        divide=divide,
        exists_add_witness=exists_add,
        exists_nsum_eq=exists_nsum,
        meta=meta,
    )
    if scalar:
        monoid._scalar = scalar
    monoid.flags = _lazy_flags(hints or {})
    return monoid, (lambda e: e), congruence


def _canon_opt(canon, e):
    return None if e is None else canon(e)


def _view_index(view, e):
    """Index of e in a table view, canonicalizing through eq if needed."""
    k = view.index.get(e)
    if k is None:
        k = next(
            (i for i, c in enumerate(view.elems) if view.monoid.eq(e, c).is_equal),
            None,
        )
        if k is None:
            raise DomainError(f"{view.monoid.name}: {e.serialize()} not in carrier")
    return k


def _torsion_free(x_monoid):
    """Conservative certificate that n-fold sums never merge distinct
    elements: affine carriers and constructions that inherit the property."""
    if isinstance(x_monoid, AffineMonoid):
        return True
    if isinstance(x_monoid, DerivedMonoid):
        return bool(x_monoid.meta.get("torsion_free"))
    return False


# ---------------------------------------------------------------------------
# regularization


def regularize(x_monoid: MonoidValue, bound=DEFAULT_BOUND):
    """Quotient by the cancellation congruence; the result satisfies the
    cancellation law (verified exhaustively on finite carriers)."""
    if x_monoid.flags.is_cancellative.is_true:
        return x_monoid, identity_map(x_monoid, "R")
    elems = x_monoid.elements()
    relation = lambda a, b, _m=x_monoid: _tri_to_eq(_m.exists_add_witness(a, b, bound), bound)
    if elems is not None:
        view = table_view(x_monoid)
        labels = kernels.regular_classes(view.table, view.size)
        by_elem = {e: lab for e, lab in zip(view.elems, labels)}
        target, canon, _ = _quotient(
            x_monoid,
            relation,
            f"R({x_monoid.name})",
            labels=[by_elem[e] for e in elems],
            hints={"is_cancellative": TRI_TRUE, "is_cone": x_monoid.flags.is_cone},
            neg=None,
            scalar=_lift_scalar(x_monoid),
        )
        if not target.flags.is_cancellative.is_true:
            raise MonoidKitError("regularization produced a non-cancellative quotient")
        return target, CanonicalMap(x_monoid, target, "R", canon)
    hints = {
        "is_cancellative": TRI_TRUE,
        "is_divisible": x_monoid.flags.is_divisible
        if x_monoid.flags.is_divisible.is_true
        else TriState(None),
        "is_cone": x_monoid.flags.is_cone,
    }
    target, canon, _ = _quotient(
        x_monoid,
        relation,
        f"R({x_monoid.name})",
        hints=hints,
        scalar=_lift_scalar(x_monoid),
    )
    return target, CanonicalMap(x_monoid, target, "R", canon)


def _tri_to_eq(t: TriState, bound) -> EqResult:
    if t.is_true:
        return EQUAL
    if t.is_false:
        return NOT_EQUAL
    return eq_unknown(t.bound if t.bound is not None else bound)


def _lift_scalar(x_monoid):
    if not x_monoid.flags.is_cone:
        return None
    return lambda q, e: x_monoid.scalar(q, e)


# ---------------------------------------------------------------------------
# formal difference


def formal_difference(x_monoid: MonoidValue, mode: RelationMode = SATURATED, bound=DEFAULT_BOUND):
    """Group of formal differences: pairs (y, z) meaning z - y.

    Literal mode uses the verbatim cross-sum relation and requires certified
    cancellativity (the relation is transitive only then); saturated mode
    closes the relation with an additive witness and is total.
    """
    if mode is LITERAL:
        canc = is_cancellative(x_monoid, bound)
        if canc.is_false:
            raise NotCancellative(
                f"{x_monoid.name} is not cancellative", witness=canc.witness
            )
        if canc.is_unknown:
            raise NotCancellative(
                f"{x_monoid.name}: cancellativity not certified within bound {bound}"
            )

    carrier = ProductMonoid(x_monoid, x_monoid, name=f"{x_monoid.name}^2")

    if mode is LITERAL:
        def relation(p, q, _m=x_monoid):
            return _m.eq(_m.add(p.data[0], q.data[1]), _m.add(q.data[0], p.data[1]))
    else:
        def relation(p, q, _m=x_monoid):
            t = _m.exists_add_witness(
                _m.add(p.data[0], q.data[1]), _m.add(q.data[0], p.data[1]), bound
            )
            return _tri_to_eq(t, bound)

    def neg(p):
        return pair(p.data[1], p.data[0])

    divide = None
    if x_monoid.flags.is_divisible.is_true or x_monoid.elements() is not None:
        def divide(p, k, _m=x_monoid):
            a = _m.divide(p.data[0], k)
            b = _m.divide(p.data[1], k)
            if a is None or b is None:
                return None
            return pair(a, b)

    scalar = None
    if x_monoid.flags.is_cone:
        def scalar(q, p, _m=x_monoid):
            return pair(_m.scalar(q, p.data[0]), _m.scalar(q, p.data[1]))

    def exists_nsum(a, p, b, q, ebound, _m=x_monoid, _mode=mode):
        u0 = _m.add(_m.nsum(p.data[0], a), _m.nsum(q.data[1], b))
        v0 = _m.add(_m.nsum(q.data[0], b), _m.nsum(p.data[1], a))
        if _mode is LITERAL or _m.flags.is_cancellative.is_true:
            return _m.exists_nsum_eq(1, u0, 1, v0, ebound)
        if isinstance(_m, FpMonoid):
            # saturated relation per multiplier is exact lattice membership
            delta = [x - y for x, y in zip(u0.data, v0.data)]
            if lattice.in_rational_span(_m._diffs, delta):
                return TriState(True)
            return tri_false()
        elems = _m.elements()
        if elems is not None:
            view = table_view(_m)
            du, dv = _view_index(view, u0), _view_index(view, v0)
            for t in range(view.size):
                s = kernels.orbit_hits_diagonal(
                    view.table,
                    view.size,
                    view.table[du * view.size + t],
                    view.table[dv * view.size + t],
                    du,
                    dv,
                )
                if s:
                    return TriState(True, witness=(s,))
            return tri_false()
        cu, cv = u0, v0
        for s in range(1, ebound + 1):
            r = _m.exists_add_witness(cu, cv, ebound)
            if r.is_true:
                return TriState(True, witness=(s,))
            if s < ebound:
                cu = _m.add(cu, u0)
                cv = _m.add(cv, v0)
        return tri_unknown(ebound)

    hints = {
        "is_cancellative": TRI_TRUE,
        "is_group": TRI_TRUE,
        "is_cone": x_monoid.flags.is_cone,
        "is_linear": x_monoid.flags.is_cone,
    }
    meta = {"construction": "F", "mode": mode.value}
    structure = _difference_group_structure(x_monoid)
    if structure is not None:
        meta["group_structure"] = structure
        hints["is_divisible"] = TRI_TRUE if structure.is_trivial else tri_false()
        hints["is_uniquely_divisible"] = TRI_TRUE if structure.is_trivial else tri_false()
        if not structure.torsion:
            meta["torsion_free"] = True
    else:
        if x_monoid.flags.is_divisible.is_true:
            hints["is_divisible"] = TRI_TRUE
        if x_monoid.flags.is_uniquely_divisible.is_true:
            hints["is_uniquely_divisible"] = TRI_TRUE
        if _torsion_free(x_monoid):
            meta["torsion_free"] = True

    mode_tag = "" if mode is SATURATED else "!"
    target, canon, _ = _quotient(
        carrier,
        relation,
        f"F{mode_tag}({x_monoid.name})",
        hints=hints,
        neg=neg,
        divide=divide,
        scalar=scalar,
        exists_nsum=exists_nsum,
        meta=meta,
    )

    def embed(x, _z=x_monoid.zero):
        return canon(pair(_z, x))

    return target, CanonicalMap(x_monoid, target, "F", embed)


def _difference_group_structure(x_monoid):
    """Rank/torsion of the difference group for lattice-backed sources."""
    if isinstance(x_monoid, AffineMonoid):
        gens = [list(g.data) for g in x_monoid.generators]
        if not gens:
            return lattice.AbelianGroupStructure(0, ())
        mat = lattice.IntMatrix.from_rows(gens)
        _, s, _ = lattice.smith_normal_form(mat)
        rank = sum(1 for i in range(min(s.rows, s.cols)) if s.data[i][i])
        return lattice.AbelianGroupStructure(rank, ())
    if isinstance(x_monoid, FpMonoid):
        return lattice.grothendieck_group_fp(x_monoid.num_generators, x_monoid.relations)
    return None


def negate(g_monoid: MonoidValue, e: Element) -> Element:
    """Additive inverse in a group-flagged monoid."""
    return g_monoid.neg(e)


# ---------------------------------------------------------------------------
# divisible hull


def divisible_hull(x_monoid: MonoidValue, mode: RelationMode = SATURATED, bound=DEFAULT_BOUND):
    """Monoid of formal fractions (x, n) meaning x / n.

    Literal mode uses the verbatim cross-sum relation after verifying its
    transitivity on a sampled triple set (it breaks on torsion); saturated
    mode closes the relation with a multiplier witness and is total.
    """
    if mode is LITERAL:
        def lit(p, q, _m=x_monoid):
            return _m.eq(_m.nsum(p.data[0], q.data[1]), _m.nsum(q.data[0], p.data[1]))

        witness = _transitivity_gap(x_monoid, lit, bound)
        if witness is not None:
            raise NotAnEquivalence(
                "the literal fraction relation is not transitive on "
                f"{x_monoid.name}", witness=witness,
            )
        relation = lit
    else:
        def relation(p, q, _m=x_monoid):
            t = _m.exists_nsum_eq(q.data[1], p.data[0], p.data[1], q.data[0], bound)
            return _tri_to_eq(t, bound)

    def add(p, q, _m=x_monoid):
        x1, n1 = p.data
        x2, n2 = q.data
        return _reduce_frac(
            _m, _m.add(_m.nsum(x1, n2), _m.nsum(x2, n1)), n1 * n2
        )

    def neg(p, _m=x_monoid):
        return fraction(_m.neg(p.data[0]), p.data[1])

    def divide(p, k):
        return _reduce_frac(x_monoid, p.data[0], p.data[1] * k)

    def exists_nsum(a, p, b, q, ebound, _m=x_monoid):
        return _m.exists_nsum_eq(a * q.data[1], p.data[0], b * p.data[1], q.data[0], ebound)

    def hull_sample(budget, _m=x_monoid):
        xs = _m.sample(max(4, budget // 4))
        out = []
        for rank in range(len(xs) + 4):
            for n in range(1, 5):
                i = rank - (n - 1)
                if 0 <= i < len(xs):
                    out.append(fraction(xs[i], n))
                    if len(out) >= budget:
                        return out
        return out

    elems = x_monoid.elements()
    elements = None
    if elems is not None:
        def elements(_m=x_monoid, _rel=relation, _n=len(elems), _elems=elems):
            window = [fraction(x, n) for n in range(1, _n + 1) for x in _elems]
            reps, _, _ = _classify(window, _rel)
            return reps

    canc = x_monoid.flags.is_cancellative
    hints = {
        "is_divisible": TRI_TRUE,
        "is_cancellative": TRI_TRUE if canc.is_true else TriState(None),
        "is_group": TRI_TRUE if x_monoid.flags.is_group.is_true else TriState(None),
    }
    if mode is SATURATED or canc.is_true:
        hints["is_uniquely_divisible"] = TRI_TRUE

    mode_tag = "" if mode is SATURATED else "!"
    name = f"D{mode_tag}({x_monoid.name})"
    zero = fraction(x_monoid.zero, 1)
    meta = {"construction": "D", "mode": mode.value}
    if _torsion_free(x_monoid):
        meta["torsion_free"] = True

    if elements is not None:
        target = DerivedMonoid(
            name,
            zero,
            add,
            relation,
            generators=tuple(fraction(g, 1) for g in x_monoid.generators),
            elements=elements,
            neg=neg if x_monoid.flags.is_group.is_true else None,
            divide=divide,
            exists_nsum_eq=exists_nsum,
            meta=meta,
        )
        target.flags = _exact_finite_flags(target, hints)
    else:
        target = DerivedMonoid(
            name,
            zero,
            add,
            relation,
            generators=tuple(fraction(g, 1) for g in x_monoid.generators),
            sample=hull_sample,
            neg=neg if x_monoid.flags.is_group.is_true else None,
            divide=divide,
            exists_nsum_eq=exists_nsum,
            meta=meta,
        )
        if isinstance(x_monoid, AffineMonoid):
            hints["is_cancellative"] = TRI_TRUE
            hints["is_uniquely_divisible"] = TRI_TRUE
        target.flags = _lazy_flags(hints)

    def embed(x):
        return fraction(x, 1)

    return target, CanonicalMap(x_monoid, target, "D", embed)


def _reduce_frac(x_monoid, x, n):
    """Cosmetic reduction: replace (x, n) by (x/k, n/k) when the backend
    certifies a k-th part.  Equality is unaffected."""
    if n > 1:
        for k in _divisors_desc(n):
            part = x_monoid.divide(x, k)
            if part is not None:
                return fraction(part, n // k)
    return fraction(x, n)


def _divisors_desc(n):
    for k in range(n, 1, -1):
        if n % k == 0:
            yield k


def _transitivity_gap(x_monoid, relation, bound):
    """First sampled triple (p, q, r) with p~q and q~r but not p~r."""
    xs = x_monoid.sample(6)
    fracs = [fraction(x, n) for x in xs for n in range(1, 4)][:12]
    rel = {}
    for p in fracs:
        for q in fracs:
            rel[(p, q)] = relation(p, q)
    for p in fracs:
        for q in fracs:
            if not rel[(p, q)].is_equal:
                continue
            for r in fracs:
                if rel[(q, r)].is_equal and rel[(p, r)].is_not_equal:
                    return (p, q, r)
    return None


# ---------------------------------------------------------------------------
# unique-divisibility quotient


def unique_quotient(x_monoid: MonoidValue, bound=DEFAULT_BOUND):
    """Quotient by the power congruence x ~ y iff some n-fold sums agree.

    On finite carriers the exponent search is exact (the pair orbit is
    walked to its period); elsewhere the configured bound applies."""

    def relation(a, b, _m=x_monoid):
        return _tri_to_eq(_m.exists_nsum_eq(1, a, 1, b, bound), bound)

    def exists_nsum(a, x1, b, x2, ebound, _m=x_monoid):
        # exists s: class(s*a*x1) = class(s*b*x2) collapses to one search
        return _m.exists_nsum_eq(a, x1, b, x2, ebound)

    divisible = x_monoid.flags.is_divisible
    hints = {
        "is_cancellative": TRI_TRUE
        if x_monoid.flags.is_cancellative.is_true
        else TriState(None),
        "is_group": TRI_TRUE if x_monoid.flags.is_group.is_true else TriState(None),
        "is_divisible": TRI_TRUE if divisible.is_true else TriState(None),
        "is_uniquely_divisible": TRI_TRUE if divisible.is_true else TriState(None),
        "is_cone": x_monoid.flags.is_cone,
        "is_linear": x_monoid.flags.is_linear,
    }
    elems = x_monoid.elements()
    if elems is None and _torsion_free(x_monoid):
        # n-fold sums never merge distinct elements: the congruence is equality
        return x_monoid, identity_map(x_monoid, "U")
    labels = None
    if elems is not None:
        view = table_view(x_monoid)
        lab = kernels.u_classes(view.table, view.size)
        by_elem = {e: l for e, l in zip(view.elems, lab)}
        labels = [by_elem[e] for e in elems]
    target, canon, _ = _quotient(
        x_monoid,
        relation,
        f"U({x_monoid.name})",
        labels=labels,
        hints=hints,
        neg=(lambda e: x_monoid.neg(e)) if x_monoid.flags.is_group.is_true else None,
        divide=lambda e, k: x_monoid.divide(e, k),
        scalar=_lift_scalar(x_monoid),
        exists_nsum=exists_nsum,
    )
    return target, CanonicalMap(x_monoid, target, "U", canon)


# ---------------------------------------------------------------------------
# modulation


def modulate(x_monoid: MonoidValue, bound=DEFAULT_BOUND):
    """Cone of formal scalar combinations over a uniquely divisible monoid.

    Rational scalars act inside the carrier (m/n * x is the n-th part of the
    m-fold sum), so every combination evaluates to a carrier element; that
    evaluation decides equality.  Irrational scalars exist only as rational
    brackets via cut_scalar_mul."""
    ud = is_uniquely_divisible(x_monoid, bound)
    if not ud.is_true:
        raise ModulationUndefined(
            f"{x_monoid.name} is not certified uniquely divisible "
            f"(status: {ud.label()})",
            witness=ud.witness,
        )

    value_cache = {}

    def value(c, _m=x_monoid):
        """Evaluate a combination inside the carrier."""
        v = value_cache.get(c)
        if v is None:
            v = _m.zero
            for q, x in c.data:
                part = _m.divide(x, q.denominator) if q.denominator > 1 else x
                if part is None:
                    raise BoundExhausted(
                        f"{_m.name}: no certified {q.denominator}-th part of "
                        f"{x.serialize()}",
                        pair=(x, q.denominator),
                    )
                v = _m.add(v, _m.nsum(part, q.numerator))
            value_cache[c] = v
        return v

    def add(c1, c2):
        return cone_combo(c1.data + c2.data)

    def eq(c1, c2, _m=x_monoid):
        return _m.eq(value(c1), value(c2))

    def scalar(q, c):
        q = Fraction(q)
        if q < 0:
            raise DomainError("scalars are nonnegative")
        return cone_combo(tuple((q * qk, xk) for qk, xk in c.data))

    def divide(c, k):
        return scalar(Fraction(1, k), c)

    def neg(c, _m=x_monoid):
        return cone_combo(((Fraction(1), _m.neg(value(c))),))

    def exists_add(u, v, ebound, _m=x_monoid):
        return _m.exists_add_witness(value(u), value(v), ebound)

    def exists_nsum(a, c1, b, c2, ebound, _m=x_monoid):
        return _m.exists_nsum_eq(a, value(c1), b, value(c2), ebound)

    def embed(x):
        return cone_combo(((Fraction(1), x),))

    def combo_sample(budget, _m=x_monoid):
        xs = _m.sample(max(2, budget // 3))
        out = []
        waves = (
            Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3),
            Fraction(3, 2), Fraction(1, 4), Fraction(5), Fraction(2, 3),
        )
        for q in waves:
            for x in xs:
                out.append(scalar(q, embed(x)))
                if len(out) >= budget:
                    return out
        i = 0
        while len(out) < budget:
            j = i % max(1, len(xs) - 1)
            out.append(add(embed(xs[j]), scalar(Fraction(1, 3), embed(xs[j + 1]))))
            i += 1
        return out

    f = x_monoid.flags
    is_group = f.is_group
    flags = CategoryFlags(
        is_cancellative=f.is_cancellative,
        is_group=is_group,
        is_divisible=TRI_TRUE,
        is_uniquely_divisible=TRI_TRUE,
        is_cone=True,
        is_linear=is_group.is_true,
    )
    elems = x_monoid.elements()
    target = DerivedMonoid(
        f"M({x_monoid.name})",
        cone_combo(()),
        add,
        eq,
        generators=tuple(embed(g) for g in x_monoid.generators),
        elements=(lambda: [embed(x) for x in elems]) if elems is not None else None,
        sample=combo_sample if elems is None else None,
        neg=neg if is_group.is_true else None,
        divide=divide,
        exists_add_witness=exists_add,
        exists_nsum_eq=exists_nsum,
        meta={"construction": "M", "value": value},
    )
    target.flags = flags
    target._scalar = scalar
    return target, CanonicalMap(x_monoid, target, "M", embed)


def scalar_mul(c_monoid: MonoidValue, q, e: Element) -> Element:
    """q * e in a cone; the scalar may be given by any fraction
    representative."""
    if not c_monoid.flags.is_cone:
        raise DomainError(f"{c_monoid.name} is not a cone")
    q = Fraction(q)
    if q < 0:
        raise DomainError("scalars are nonnegative")
    c_monoid.require_member(e)
    return c_monoid.scalar(q, e)


def cut_scalar_mul(c_monoid: MonoidValue, lo, hi, e: Element):
    """Rational bracketing of an irrational scalar: returns (lo*e, hi*e).
    No equality across brackets is provided, only refinement."""
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo < 0 or lo > hi:
        raise DomainError("need 0 <= lo <= hi")
    return (scalar_mul(c_monoid, lo, e), scalar_mul(c_monoid, hi, e))


# ---------------------------------------------------------------------------
# theorem checks


@dataclass(frozen=True)
class Finding:
    check: str
    verdict: str  # "pass" | "fail" | "finding" | "info"
    detail: str = ""


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    monoid: str
    verdict: str  # "pass" | "fail" | "inapplicable"
    findings: tuple = field(default_factory=tuple)

    def render(self):
        lines = [f"theorem {self.theorem} on {self.monoid}: {self.verdict}"]
        for f in self.findings:
            detail = f" -- {f.detail}" if f.detail else ""
            lines.append(f"  [{f.verdict}] {f.check}{detail}")
        return "\n".join(lines)


def _sample_pairs(xs, budget):
    out = []
    for i, a in enumerate(xs):
        for b in xs[i:]:
            out.append((a, b))
            if len(out) >= budget:
                return out
    return out


def _check_homomorphism(cmap, xs, budget):
    target = cmap.target
    unknowns = 0
    for a, b in _sample_pairs(xs, budget):
        lhs = cmap(cmap.source.add(a, b))
        rhs = target.add(cmap(a), cmap(b))
        r = target.eq(lhs, rhs)
        if r.is_not_equal:
            return Finding(
                "additive homomorphism",
                "fail",
                f"map({a.serialize()} + {b.serialize()}) differs from the image sum",
            )
        if r.is_unknown:
            unknowns += 1
    z = target.eq(cmap(cmap.source.zero), target.zero)
    if z.is_not_equal:
        return Finding("additive homomorphism", "fail", "zero is not preserved")
    note = f" ({unknowns} undecided)" if unknowns else ""
    return Finding("additive homomorphism", "pass", f"checked {len(_sample_pairs(xs, budget))} pairs{note}")


def _injectivity(cmap, xs, budget):
    """None when injective on the sample, else a witness pair."""
    checked = 0
    for i, a in enumerate(xs):
        for b in xs[i + 1 :]:
            if checked >= budget:
                return None
            checked += 1
            if cmap.source.eq(a, b).is_not_equal and cmap.target.eq(cmap(a), cmap(b)).is_equal:
                return (a, b)
    return None


def check_theorem(which, x_monoid: MonoidValue, sample_budget=100, mode: RelationMode = SATURATED, bound=DEFAULT_BOUND) -> TheoremReport:
    """Run one of the construction theorems on a concrete monoid and verify
    its claims extensionally on up to sample_budget elements/pairs."""
    which = str(which)
    if which == "4.1":
        return _check_41(x_monoid, sample_budget, bound)
    if which == "4.2":
        return _check_42(x_monoid, sample_budget, bound)
    if which == "4.3":
        return _check_43(x_monoid, sample_budget, mode, bound)
    if which == "4.4":
        return _check_44(x_monoid, sample_budget, bound)
    if which == "4.5":
        return _check_45(x_monoid, sample_budget, bound)
    raise DomainError(f"unknown theorem {which!r}")


def _verdict(findings):
    return "fail" if any(f.verdict == "fail" for f in findings) else "pass"


def _check_41(x_monoid, budget, bound):
    target, cmap = regularize(x_monoid, bound)
    xs = x_monoid.elements() or x_monoid.sample(budget)
    findings = [_check_homomorphism(cmap, xs, budget)]
    # surjectivity: every target element is hit
    telems = target.elements()
    if telems is not None:
        images = [cmap(x) for x in xs]
        missed = [
            t for t in telems if not any(target.eq(t, im).is_equal for im in images)
        ]
        findings.append(
            Finding("surjective onto quotient", "pass" if not missed else "fail",
                    "" if not missed else f"no preimage for {missed[0].serialize()}")
        )
    else:
        findings.append(Finding("surjective onto quotient", "pass",
                                "lazy quotient keeps representatives"))
    canc = is_cancellative(target, bound)
    if canc.is_true:
        verdict = "pass"
    elif canc.is_false:
        verdict = "fail"
    else:
        verdict = "inconclusive"
    findings.append(Finding("quotient is cancellative", verdict, canc.label()))
    return TheoremReport("4.1", x_monoid.name, _verdict(findings), tuple(findings))


def _check_42(x_monoid, budget, bound):
    canc = is_cancellative(x_monoid, bound)
    if not canc.is_true:
        return TheoremReport(
            "4.2", x_monoid.name, "inapplicable",
            (Finding("hypothesis", "info", f"cancellative: {canc.label()}"),),
        )
    target, cmap = formal_difference(x_monoid, LITERAL, bound)
    xs = x_monoid.elements() or x_monoid.sample(budget)
    findings = [_check_homomorphism(cmap, xs, budget)]
    w = _injectivity(cmap, xs, budget)
    findings.append(
        Finding("injective", "pass" if w is None else "fail",
                "" if w is None else f"{w[0].serialize()} and {w[1].serialize()} collide")
    )
    # every target element is a difference of images
    telems = target.elements() or target.sample(min(budget, 20))
    bad = None
    for t in telems:
        rep = t if t.tag == "pair" else None
        if rep is None:
            continue
        y, z = rep.data
        diff = target.add(cmap(z), target.neg(cmap(y)))
        if not target.eq(t, diff).is_equal:
            bad = t
            break
    findings.append(
        Finding("target generated by differences", "pass" if bad is None else "fail",
                "" if bad is None else f"{bad.serialize()} is not map(z) - map(y)")
    )
    structure = target.meta.get("group_structure") if isinstance(target, DerivedMonoid) else None
    if structure is not None:
        findings.append(Finding("difference group structure", "info", str(structure)))
    if x_monoid.flags.is_cone:
        ok = True
        for x in xs[: min(len(xs), 10)]:
            for q in (Fraction(1, 2), Fraction(3, 1)):
                lhs = cmap(x_monoid.scalar(q, x))
                rhs = scalar_mul(target, q, cmap(x))
                if not target.eq(lhs, rhs).is_equal:
                    ok = False
                    break
        findings.append(Finding("scalar-compatible (linear)", "pass" if ok else "fail"))
    return TheoremReport("4.2", x_monoid.name, _verdict(findings), tuple(findings))


def _check_43(x_monoid, budget, mode, bound):
    target, cmap = divisible_hull(x_monoid, mode, bound)
    xs = x_monoid.elements() or x_monoid.sample(min(budget, 12))
    findings = [_check_homomorphism(cmap, xs, budget)]
    # surrogate for "X_D = D(X) - D(X)": some multiple of every element
    # returns to the image of D
    telems = target.elements() or target.sample(min(budget, 12))
    bad = None
    for t in telems:
        hit = False
        for k in range(1, bound + 1):
            kt = target.nsum(t, k)
            if any(target.eq(kt, cmap(x)).is_equal for x in xs):
                hit = True
                break
        if not hit:
            bad = t
            break
    findings.append(
        Finding("multiples return to the image", "pass" if bad is None else "fail",
                "" if bad is None else f"no multiple of {bad.serialize()} is an image")
    )
    w = _injectivity(cmap, xs, budget)
    findings.append(
        Finding(
            "injectivity (reported, not asserted)",
            "finding",
            "injective on sample" if w is None
            else f"not injective: {w[0].serialize()} and {w[1].serialize()} merge",
        )
    )
    return TheoremReport("4.3", x_monoid.name, _verdict(findings), tuple(findings))


def _check_44(x_monoid, budget, bound):
    target, cmap = unique_quotient(x_monoid, bound)
    xs = x_monoid.elements() or x_monoid.sample(budget)
    findings = [_check_homomorphism(cmap, xs, budget)]
    telems = target.elements()
    if telems is not None:
        images = [cmap(x) for x in xs]
        missed = [t for t in telems if not any(target.eq(t, im).is_equal for im in images)]
        findings.append(
            Finding("surjective onto quotient", "pass" if not missed else "fail")
        )
    else:
        findings.append(Finding("surjective onto quotient", "pass",
                                "lazy quotient keeps representatives"))
    return TheoremReport("4.4", x_monoid.name, _verdict(findings), tuple(findings))


def _check_45(x_monoid, budget, bound):
    ud = is_uniquely_divisible(x_monoid, bound)
    if not ud.is_true:
        return TheoremReport(
            "4.5", x_monoid.name, "inapplicable",
            (Finding("hypothesis", "info", f"uniquely divisible: {ud.label()}"),),
        )
    target, cmap = modulate(x_monoid, bound)
    xs = x_monoid.elements() or x_monoid.sample(min(budget, 20))
    findings = [_check_homomorphism(cmap, xs, budget)]
    w = _injectivity(cmap, xs, budget)
    findings.append(
        Finding("injective", "pass" if w is None else "fail",
                "" if w is None else f"{w[0].serialize()} and {w[1].serialize()} collide")
    )
    # envelope: every sampled combination is a rational combination of images
    bad = None
    for t in target.sample(min(budget, 20)):
        acc = target.zero
        for q, x in t.data:
            acc = target.add(acc, scalar_mul(target, q, cmap(x)))
        if not target.eq(t, acc).is_equal:
            bad = t
            break
    findings.append(
        Finding("additive envelope of scaled images", "pass" if bad is None else "fail",
                "" if bad is None else bad.serialize())
    )
    return TheoremReport("4.5", x_monoid.name, _verdict(findings), tuple(findings))
