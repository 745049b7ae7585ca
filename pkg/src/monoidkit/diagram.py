"""Category typing of the five constructions and extensional commutativity.

The typing table records exactly which category each construction maps where
(sixteen arrows).  Paths are composable arrow sequences; two paths with the
same endpoints are compared extensionally: a formal-expression language over
the source generators is evaluated through both composites and the two
targets must hand back identical equality verdicts on every expression pair.

The figure accompanying the commutativity theorem is reconstructed from the
typing lists alone; see the report header note in :mod:`monoidkit.cli`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .core import DEFAULT_BOUND, MonoidValue
from .elements import Element
from .errors import MonoidKitError, PathTypeError
from .embeddings import (
    LITERAL,
    SATURATED,
    CanonicalMap,
    RelationMode,
    divisible_hull,
    formal_difference,
    identity_map,
    modulate,
    regularize,
    unique_quotient,
)


class CategoryId(enum.Enum):
    S = "S"
    RS = "RS"
    G = "G"
    DS = "DS"
    DRS = "DRS"
    DG = "DG"
    US = "US"
    URS = "URS"
    UG = "UG"
    Con = "Con"
    RCon = "RCon"
    Lin = "Lin"


C = CategoryId

#: the sixteen arrows, one entry per (embedding, source) pair
TYPING_TABLE = (
    ("R", C.S, C.RS),
    ("R", C.DS, C.DRS),
    ("R", C.US, C.URS),
    ("R", C.Con, C.RCon),
    ("F", C.RS, C.G),
    ("F", C.DRS, C.DG),
    ("F", C.URS, C.UG),
    ("F", C.RCon, C.Lin),
    ("D", C.S, C.DS),
    ("D", C.RS, C.DRS),
    ("D", C.G, C.DG),
    ("U", C.DS, C.US),
    ("U", C.DRS, C.URS),
    ("U", C.DG, C.UG),
    ("M", C.US, C.Con),
    ("M", C.URS, C.RCon),
    ("M", C.UG, C.Lin),
)

#: presentation order of the embeddings; paths sort lexicographically by it
EMBEDDING_ORDER = ("R", "F", "D", "U", "M")
_RANK = {name: i for i, name in enumerate(EMBEDDING_ORDER)}

_ARROWS = {}
for _name, _src, _tgt in TYPING_TABLE:
    _ARROWS[(_name, _src)] = _tgt


def arrow_target(name: str, source: CategoryId):
    return _ARROWS.get((name, source))


def category_satisfied(x_monoid: MonoidValue, cat: CategoryId) -> bool:
    """Does the monoid's flag evidence place it in the category?"""
    f = x_monoid.flags
    if cat is C.S:
        return True
    if cat is C.RS:
        return f.is_cancellative.is_true
    if cat is C.G:
        return f.is_group.is_true
    if cat is C.DS:
        return f.is_divisible.is_true
    if cat is C.DRS:
        return f.is_divisible.is_true and f.is_cancellative.is_true
    if cat is C.DG:
        return f.is_divisible.is_true and f.is_group.is_true
    if cat is C.US:
        return f.is_uniquely_divisible.is_true
    if cat is C.URS:
        return f.is_uniquely_divisible.is_true and f.is_cancellative.is_true
    if cat is C.UG:
        return f.is_uniquely_divisible.is_true and f.is_group.is_true
    if cat is C.Con:
        return f.is_cone
    if cat is C.RCon:
        return f.is_cone and f.is_cancellative.is_true
    return f.is_linear


#: candidate starting categories, most general first
_START_ORDER = (
    C.S, C.RS, C.G, C.DS, C.DRS, C.DG, C.US, C.URS, C.UG, C.Con, C.RCon, C.Lin,
)


def path_trajectory(path, start: CategoryId):
    """Category sequence along the path from `start`, or None if it does not
    type-check."""
    cats = [start]
    cur = start
    for name in path:
        cur = arrow_target(name, cur)
        if cur is None:
            return None
        cats.append(cur)
    return cats


def resolve_start(x_monoid: MonoidValue, path) -> CategoryId:
    """Most general category that the monoid satisfies and from which the
    path type-checks."""
    for cat in _START_ORDER:
        if category_satisfied(x_monoid, cat) and path_trajectory(path, cat):
            return cat
    raise PathTypeError(
        f"path {','.join(path)} does not type-check from any category of "
        f"{x_monoid.name}"
    )


def enumerate_paths(start: CategoryId, end: CategoryId, max_len: int):
    """All arrow sequences from `start` to `end` of length <= max_len, in
    lexicographic order of the embedding presentation ranks."""
    if max_len > 6:
        raise PathTypeError("path length is capped at 6")
    out = []

    def walk(cur, acc):
        if acc and cur is end:
            out.append(list(acc))
        if len(acc) >= max_len:
            return
        for name in EMBEDDING_ORDER:
            nxt = arrow_target(name, cur)
            if nxt is not None:
                acc.append(name)
                walk(nxt, acc)
                acc.pop()

    walk(start, [])
    out.sort(key=lambda p: (len(p), [_RANK[n] for n in p]))
    return out


def apply_path(x_monoid: MonoidValue, path, mode: RelationMode = SATURATED, bound=DEFAULT_BOUND):
    """Compose the constructions named in `path` left to right."""
    resolve_start(x_monoid, path)
    cur = x_monoid
    cmap = identity_map(x_monoid, "id")
    for step, name in enumerate(path):
        try:
            if name == "R":
                cur, m = regularize(cur, bound)
            elif name == "F":
                cur, m = formal_difference(cur, mode, bound)
            elif name == "D":
                cur, m = divisible_hull(cur, mode, bound)
            elif name == "U":
                cur, m = unique_quotient(cur, bound)
            elif name == "M":
                cur, m = modulate(cur, bound)
            else:
                raise PathTypeError(f"unknown embedding {name!r}")
        except MonoidKitError as exc:
            exc.path_step = step
            raise
        cmap = cmap.then(m)
    cmap.name = ",".join(path) if path else "id"
    return cur, cmap


# ---------------------------------------------------------------------------
# the expression language


@dataclass(frozen=True)
class FormalExpr:
    """Expression tree over the source generators: Gen(i), Zero, Add, Neg,
    Div (unique n-th part), Scale (rational scalar)."""

    op: str  # "gen" | "zero" | "add" | "neg" | "div" | "scale"
    args: tuple = ()

    def serialize(self) -> str:
        if self.op == "gen":
            return f"g{self.args[0]}"
        if self.op == "zero":
            return "0"
        if self.op == "add":
            return f"({self.args[0].serialize()}+{self.args[1].serialize()})"
        if self.op == "neg":
            return f"-({self.args[0].serialize()})"
        if self.op == "div":
            return f"({self.args[0].serialize()})/{self.args[1]}"
        q = self.args[0]
        return f"({q.numerator}/{q.denominator})*({self.args[1].serialize()})"


def gen(i):
    return FormalExpr("gen", (i,))


ZERO_EXPR = FormalExpr("zero")

_DIV_PARTS = (2, 3)
_SCALE_SCALARS = (Fraction(1, 2), Fraction(2))


def category_node_ops(cat: CategoryId):
    """Which expression nodes are legal when both endpoints land in `cat`.
    Division is a function only under unique divisibility; scalars need a
    cone; negation needs a group."""
    neg = cat in (C.G, C.DG, C.UG, C.Lin)
    div = cat in (C.US, C.URS, C.UG)
    scale = cat in (C.Con, C.RCon, C.Lin)
    return neg, div, scale


def enumerate_expressions(num_gens, size_max, cat: CategoryId):
    """All expressions up to the node-count budget whose nodes are legal in
    `cat`, smallest first, deterministic."""
    allow_neg, allow_div, allow_scale = category_node_ops(cat)
    by_size = {1: [ZERO_EXPR] + [gen(i) for i in range(num_gens)]}
    for size in range(2, size_max + 1):
        acc = []
        for e in by_size[size - 1]:
            if allow_neg:
                acc.append(FormalExpr("neg", (e,)))
            if allow_div:
                acc.extend(FormalExpr("div", (e, n)) for n in _DIV_PARTS)
            if allow_scale:
                acc.extend(FormalExpr("scale", (q, e)) for q in _SCALE_SCALARS)
        for lsize in range(1, size - 1):
            rsize = size - 1 - lsize
            if rsize < lsize:
                break
            for i, l in enumerate(by_size[lsize]):
                rights = by_size[rsize][i:] if rsize == lsize else by_size[rsize]
                acc.extend(FormalExpr("add", (l, r)) for r in rights)
        by_size[size] = acc
    out = []
    for size in range(1, size_max + 1):
        out.extend(by_size[size])
    return out


def eval_expression(expr: FormalExpr, monoid: MonoidValue, gen_images):
    """Value of the expression in `monoid`; None when a division has no
    certified part."""
    if expr.op == "zero":
        return monoid.zero
    if expr.op == "gen":
        return gen_images[expr.args[0]]
    if expr.op == "add":
        a = eval_expression(expr.args[0], monoid, gen_images)
        b = eval_expression(expr.args[1], monoid, gen_images)
        if a is None or b is None:
            return None
        return monoid.add(a, b)
    if expr.op == "neg":
        a = eval_expression(expr.args[0], monoid, gen_images)
        return None if a is None else monoid.neg(a)
    if expr.op == "div":
        a = eval_expression(expr.args[0], monoid, gen_images)
        return None if a is None else monoid.divide(a, expr.args[1])
    a = eval_expression(expr.args[1], monoid, gen_images)
    return None if a is None else monoid.scalar(expr.args[0], a)


# ---------------------------------------------------------------------------
# path comparison


@dataclass(frozen=True)
class PathReport:
    monoid: str
    path_a: tuple
    path_b: tuple
    end: CategoryId
    expressions: int
    verdict: str  # "commute" | "diverge" | "inconclusive"
    witness: tuple | None = None  # pair of FormalExpr on divergence
    unknowns: int = 0
    error: str = ""

    def render(self):
        a = ",".join(self.path_a) or "id"
        b = ",".join(self.path_b) or "id"
        line = (
            f"{self.monoid}: [{a}] vs [{b}] -> {self.end.value}: {self.verdict}"
            f" ({self.expressions} expressions"
        )
        line += f", {self.unknowns} undecided)" if self.unknowns else ")"
        if self.witness:
            line += f" witness: {self.witness[0].serialize()} ~ {self.witness[1].serialize()}"
        if self.error:
            line += f" error: {self.error}"
        return line


DEFAULT_PAIR_BUDGET = 500


def _pair_cap(budget):
    k = 1
    while (k + 1) * (k + 2) // 2 <= budget:
        k += 1
    return k


def compare_paths(
    x_monoid: MonoidValue,
    path_a,
    path_b,
    expr_size=3,
    mode: RelationMode = SATURATED,
    bound=DEFAULT_BOUND,
    pair_budget=DEFAULT_PAIR_BUDGET,
) -> PathReport:
    """Extensional comparison: both composites must give identical equality
    verdicts on every expression pair in the common end category."""
    path_a = list(path_a)
    path_b = list(path_b)
    start = None
    for cat in _START_ORDER:
        if (
            category_satisfied(x_monoid, cat)
            and path_trajectory(path_a, cat)
            and path_trajectory(path_b, cat)
        ):
            start = cat
            break
    if start is None:
        raise PathTypeError(
            f"paths {path_a} and {path_b} have no common start category on "
            f"{x_monoid.name}"
        )
    end_a = path_trajectory(path_a, start)[-1]
    end_b = path_trajectory(path_b, start)[-1]
    if end_a is not end_b:
        raise PathTypeError(f"paths end in different categories {end_a} and {end_b}")
    built_a = apply_path(x_monoid, path_a, mode, bound)
    built_b = apply_path(x_monoid, path_b, mode, bound)
    return _compare_built(
        x_monoid, path_a, built_a, path_b, built_b, end_a, expr_size, pair_budget
    )


def _compare_built(x_monoid, path_a, built_a, path_b, built_b, end, expr_size, pair_budget):
    target_a, map_a = built_a
    target_b, map_b = built_b
    exprs = enumerate_expressions(len(x_monoid.generators), expr_size, end)
    exprs = exprs[: _pair_cap(pair_budget)]
    gens_a = [map_a(g) for g in x_monoid.generators]
    gens_b = [map_b(g) for g in x_monoid.generators]
    vals_a = [eval_expression(e, target_a, gens_a) for e in exprs]
    vals_b = [eval_expression(e, target_b, gens_b) for e in exprs]
    unknowns = 0
    for i in range(len(exprs)):
        for j in range(i, len(exprs)):
            va, vb = vals_a[i], vals_b[i]
            wa, wb = vals_a[j], vals_b[j]
            if va is None or wa is None or vb is None or wb is None:
                unknowns += 1
                continue
            ra = target_a.eq(va, wa)
            rb = target_b.eq(vb, wb)
            if ra.is_unknown or rb.is_unknown:
                unknowns += 1
                continue
            if ra.is_equal != rb.is_equal:
                return PathReport(
                    x_monoid.name,
                    tuple(path_a),
                    tuple(path_b),
                    end,
                    len(exprs),
                    "diverge",
                    witness=(exprs[i], exprs[j]),
                    unknowns=unknowns,
                )
    verdict = "inconclusive" if unknowns else "commute"
    return PathReport(
        x_monoid.name,
        tuple(path_a),
        tuple(path_b),
        end,
        len(exprs),
        verdict,
        unknowns=unknowns,
    )


def full_diagram_check(
    x_monoid: MonoidValue,
    max_len=4,
    expr_size=3,
    mode: RelationMode = SATURATED,
    bound=DEFAULT_BOUND,
    pair_budget=DEFAULT_PAIR_BUDGET,
):
    """Compare every pair of same-endpoint paths out of the monoid's base
    category, in deterministic order."""
    reports = []
    built = {}
    for end in CategoryId:
        paths = enumerate_paths(C.S, end, max_len)
        if len(paths) < 2:
            continue
        for idx_a in range(len(paths)):
            for idx_b in range(idx_a + 1, len(paths)):
                pa, pb = paths[idx_a], paths[idx_b]
                try:
                    for p in (pa, pb):
                        key = tuple(p)
                        if key not in built:
                            built[key] = apply_path(x_monoid, p, mode, bound)
                    reports.append(
                        _compare_built(
                            x_monoid,
                            pa,
                            built[tuple(pa)],
                            pb,
                            built[tuple(pb)],
                            end,
                            expr_size,
                            pair_budget,
                        )
                    )
                except MonoidKitError as exc:
                    step = getattr(exc, "path_step", None)
                    detail = f"step {step}: {exc}" if step is not None else str(exc)
                    reports.append(
                        PathReport(
                            x_monoid.name,
                            tuple(pa),
                            tuple(pb),
                            end,
                            0,
                            "inconclusive",
                            error=detail,
                        )
                    )
    return reports
