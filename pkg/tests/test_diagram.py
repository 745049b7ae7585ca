"""Path typing, enumeration against a brute-force oracle, and commutativity."""

import pytest

from monoidkit.core import affine, builtin_catalog, cyclic, flat, product, truncated
from monoidkit.diagram import (
    TYPING_TABLE,
    CategoryId as C,
    apply_path,
    arrow_target,
    compare_paths,
    category_node_ops,
    enumerate_expressions,
    enumerate_paths,
    eval_expression,
    full_diagram_check,
    path_trajectory,
)
from monoidkit.elements import exponent_vector as ev
from monoidkit.errors import PathTypeError


def oracle_paths(start, end, max_len):
    """Independent breadth-first walk over the raw typing tuples."""
    table = {}
    for name, src, tgt in TYPING_TABLE:
        table.setdefault(src, []).append((name, tgt))
    found = []
    frontier = [(start, [])]
    for _ in range(max_len):
        nxt = []
        for cat, path in frontier:
            for name, tgt in sorted(table.get(cat, [])):
                nxt.append((tgt, path + [name]))
        for cat, path in nxt:
            if cat is end:
                found.append(path)
        frontier = nxt
    return sorted(found, key=lambda p: (len(p), p))


def test_exactly_six_paths_from_s_to_ug():
    got = enumerate_paths(C.S, C.UG, 4)
    assert got == [
        ["R", "F", "D", "U"],
        ["R", "D", "F", "U"],
        ["R", "D", "U", "F"],
        ["D", "R", "F", "U"],
        ["D", "R", "U", "F"],
        ["D", "U", "R", "F"],
    ]


def test_enumerate_matches_brute_force_oracle():
    for start in (C.S, C.RS, C.G, C.DS):
        for end in C:
            got = enumerate_paths(start, end, 4)
            want = oracle_paths(start, end, 4)
            assert sorted(map(tuple, got)) == sorted(map(tuple, want)), (start, end)


def test_single_arrow_and_unreachable():
    assert enumerate_paths(C.S, C.RS, 1) == [["R"]]
    assert enumerate_paths(C.G, C.S, 3) == []


def test_max_len_capped():
    with pytest.raises(PathTypeError):
        enumerate_paths(C.S, C.UG, 7)


def test_paths_compose_type_correctly():
    for end in C:
        for path in enumerate_paths(C.S, end, 4):
            cats = path_trajectory(path, C.S)
            assert cats is not None
            assert cats[-1] is end
            for step, name in enumerate(path):
                assert arrow_target(name, cats[step]) is cats[step + 1]


def test_apply_path_examples():
    t3 = truncated(3)
    target, cmap = apply_path(t3, ["R", "F", "D", "U"])
    assert target.cardinality() == 1
    assert all(target.eq(cmap(e), target.zero).is_equal for e in t3.elements())

    n = affine(1)
    g, _ = apply_path(n, ["F"])
    assert str(g.meta["group_structure"]) == "Z"

    cone, cmap = apply_path(n, ["D", "U", "M"])
    assert cone.flags.is_cone
    image = cmap(ev((1,)))
    assert image.tag == "combo"
    (q, base), = image.data
    assert q == 1 and base.tag == "frac"


def test_apply_path_bad_step():
    with pytest.raises(PathTypeError):
        apply_path(truncated(2), ["F"])  # F needs a cancellative source
    with pytest.raises(PathTypeError):
        apply_path(truncated(2), ["R", "X"])


def test_compare_paths_examples():
    t3 = truncated(3)
    r = compare_paths(t3, ["R", "F", "D"], ["D", "R", "F"], 3)
    assert r.verdict == "commute"
    p = product(affine(1), cyclic(2))
    r = compare_paths(p, ["R", "F", "D"], ["D", "R", "F"], 3)
    assert r.verdict == "commute"
    n = affine(1)
    r = compare_paths(n, ["R", "F"], ["R", "F"], 3)
    assert r.verdict == "commute"


def test_compare_paths_symmetric():
    t3 = truncated(3)
    a = compare_paths(t3, ["R", "F", "D"], ["D", "R", "F"], 3)
    b = compare_paths(t3, ["D", "R", "F"], ["R", "F", "D"], 3)
    assert a.verdict == b.verdict


def test_compare_paths_rejects_mismatched_endpoints():
    with pytest.raises(PathTypeError):
        compare_paths(truncated(3), ["R"], ["D"], 3)


def test_expression_language_respects_category():
    neg, div, scale = category_node_ops(C.G)
    assert neg and not div and not scale
    neg, div, scale = category_node_ops(C.US)
    assert div and not neg and not scale
    neg, div, scale = category_node_ops(C.Lin)
    assert neg and scale and not div
    exprs = enumerate_expressions(1, 3, C.S)
    assert all(e.op in ("gen", "zero", "add") for e in exprs)
    assert enumerate_expressions(1, 3, C.S) == enumerate_expressions(1, 3, C.S)


def test_expression_evaluation_is_homomorphic():
    n = affine(1)
    target, cmap = apply_path(n, ["D", "U"])
    gens = [cmap(g) for g in n.generators]
    exprs = enumerate_expressions(1, 3, C.US)
    vals = {e: eval_expression(e, target, gens) for e in exprs}
    for e1 in exprs[:6]:
        for e2 in exprs[:6]:
            from monoidkit.diagram import FormalExpr

            combined = FormalExpr("add", (e1, e2))
            lhs = eval_expression(combined, target, gens)
            rhs = target.add(vals[e1], vals[e2])
            assert target.eq(lhs, rhs).is_equal


def test_full_diagram_never_diverges_on_catalog():
    for monoid in builtin_catalog():
        reports = full_diagram_check(monoid, 4, 3)
        assert reports, monoid.name
        for r in reports:
            assert r.verdict in ("commute", "inconclusive"), (
                monoid.name,
                r.render(),
            )
            assert r.verdict == "commute", (monoid.name, r.render())


def test_full_diagram_deterministic():
    t3 = truncated(3)
    a = [r.render() for r in full_diagram_check(t3, 4, 3)]
    b = [r.render() for r in full_diagram_check(t3, 4, 3)]
    assert a == b
