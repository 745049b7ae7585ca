"""Line-oriented monoid presentation files.

One directive per line::

    monoid <name>
    kind cayley | affine | fp | product | builtin

    # cayley: explicit addition table, element 0 is the zero
    elements e0 e1 ...
    row 0: 0 1 ...
    row 1: 1 0 ...

    # affine: submonoid of N^dim spanned by generator vectors
    dim 2
    gen 1 0
    gen 0 1

    # fp: generator count plus relation pairs of exponent words
    gens 2
    rel 2 0 -> 0 2

    # builtin: catalog constructor with optional parameter
    name truncated
    param 3

    # product: two nested blocks
    left {
      ...
    }
    right {
      ...
    }

Blank lines and `#` comments are ignored.  Parsing validates shapes; Cayley
tables are additionally checked against the monoid axioms exhaustively when
the monoid is built.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .errors import ParseError, PresentationError


@dataclass(frozen=True)
class Presentation:
    name: str
    kind: str  # "cayley" | "affine" | "fp" | "product" | "builtin"
    body: tuple  # kind-specific, hashable payload

    def serialize(self) -> str:
        return "\n".join(self._lines()) + "\n"

    def _lines(self):
        out = [f"monoid {self.name}", f"kind {self.kind}"]
        if self.kind == "cayley":
            labels, rows = self.body
            out.append("elements " + " ".join(labels))
            for i, row in enumerate(rows):
                out.append(f"row {i}: " + " ".join(str(v) for v in row))
        elif self.kind == "affine":
            dim, gens = self.body
            out.append(f"dim {dim}")
            for g in gens:
                out.append("gen " + " ".join(str(v) for v in g))
        elif self.kind == "fp":
            m, rels = self.body
            out.append(f"gens {m}")
            for u, v in rels:
                out.append(
                    "rel " + " ".join(str(a) for a in u) + " -> " + " ".join(str(a) for a in v)
                )
        elif self.kind == "builtin":
            bname, param = self.body
            out.append(f"name {bname}")
            if param is not None:
                out.append(f"param {param}")
        else:  # product
            left, right = self.body
            out.append("left {")
            out.extend("  " + line for line in left._lines())
            out.append("}")
            out.append("right {")
            out.extend("  " + line for line in right._lines())
            out.append("}")
        return out

    def to_monoid(self) -> core.MonoidValue:
        if self.kind == "cayley":
            labels, rows = self.body
            return core.CayleyMonoid(list(labels), [list(r) for r in rows], name=self.name)
        if self.kind == "affine":
            dim, gens = self.body
            return core.AffineMonoid(dim, [list(g) for g in gens] or None, name=self.name)
        if self.kind == "fp":
            m, rels = self.body
            return core.FpMonoid(m, list(rels), name=self.name)
        if self.kind == "builtin":
            bname, param = self.body
            monoid = core.builtin(bname, param)
            monoid.name = self.name
            return monoid
        left, right = self.body
        return core.ProductMonoid(left.to_monoid(), right.to_monoid(), name=self.name)


def parse_presentation(text: str) -> Presentation:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((lineno, stripped))
    pres, rest = _parse_block(lines)
    if rest:
        raise ParseError(f"unexpected directive {rest[0][1]!r}", rest[0][0])
    return pres


def _take(lines, key):
    if not lines:
        raise ParseError(f"expected `{key}`, got end of input")
    lineno, content = lines[0]
    parts = content.split(None, 1)
    if parts[0] != key:
        raise ParseError(f"expected `{key}`, got {content!r}", lineno)
    return lines[1:], (parts[1].strip() if len(parts) > 1 else ""), lineno


def _parse_naturals(text, lineno, what):
    try:
        vals = [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"{what}: expected whole numbers, got {text!r}", lineno)
    if any(v < 0 for v in vals):
        raise ParseError(f"{what}: entries must be nonnegative", lineno)
    return vals

def _parse_block(lines):
    lines, name, _ = _take(lines, "monoid")
    if not name:
        raise ParseError("monoid needs a name")
    lines, kind, kind_line = _take(lines, "kind")
    if kind == "cayley":
        lines, labels_text, lab_line = _take(lines, "elements")
        labels = labels_text.split()
        if not labels:
            raise ParseError("elements line is empty", lab_line)
        n = len(labels)
        rows = []
        for i in range(n):
            if not lines:
                raise ParseError(f"missing row {i}")
            lineno, content = lines[0]
            prefix, _, entries = content.partition(":")
            pp = prefix.split()
            if len(pp) != 2 or pp[0] != "row" or not pp[1].isdigit():
                raise ParseError(f"expected `row {i}: ...`, got {content!r}", lineno)
            if int(pp[1]) != i:
                raise ParseError(f"rows must be declared in order; expected row {i}", lineno)
            vals = _parse_naturals(entries, lineno, f"row {i}")
            if len(vals) != n:
                raise ParseError(f"row {i} has {len(vals)} entries, expected {n}", lineno)
            if any(v >= n for v in vals):
                raise ParseError(f"row {i} references an element out of range", lineno)
            rows.append(tuple(vals))
            lines = lines[1:]
        return Presentation(name, "cayley", (tuple(labels), tuple(rows))), lines
    if kind == "affine":
        lines, dim_text, dim_line = _take(lines, "dim")
        try:
            dim = int(dim_text)
        except ValueError:
            raise ParseError(f"dim must be a number, got {dim_text!r}", dim_line)
        if dim < 0:
            raise ParseError("dim must be nonnegative", dim_line)
        gens = []
        while lines and lines[0][1].startswith("gen "):
            lineno, content = lines[0]
            vals = _parse_naturals(content[4:], lineno, "gen")
            if len(vals) != dim:
                raise ParseError(f"generator has {len(vals)} entries, expected {dim}", lineno)
            gens.append(tuple(vals))
            lines = lines[1:]
        return Presentation(name, "affine", (dim, tuple(gens))), lines
    if kind == "fp":
        lines, m_text, m_line = _take(lines, "gens")
        try:
            m = int(m_text)
        except ValueError:
            raise ParseError(f"gens must be a number, got {m_text!r}", m_line)
        rels = []
        while lines and lines[0][1].startswith("rel "):
            lineno, content = lines[0]
            lhs, arrow, rhs = content[4:].partition("->")
            if not arrow:
                raise ParseError("relation needs `lhs -> rhs`", lineno)
            u = _parse_naturals(lhs, lineno, "relation lhs")
            v = _parse_naturals(rhs, lineno, "relation rhs")
            if len(u) != m or len(v) != m:
                raise ParseError(f"relation words must have {m} entries", lineno)
            rels.append((tuple(u), tuple(v)))
            lines = lines[1:]
        return Presentation(name, "fp", (m, tuple(rels))), lines
    if kind == "builtin":
        lines, bname, _ = _take(lines, "name")
        if bname not in core.BUILTIN_NAMES:
            raise ParseError(f"unknown builtin name {bname!r}")
        param = None
        if lines and lines[0][1].startswith("param"):
            lineno, content = lines[0]
            try:
                param = int(content.split(None, 1)[1])
            except (IndexError, ValueError):
                raise ParseError("param needs a whole number", lineno)
            lines = lines[1:]
        return Presentation(name, "builtin", (bname, param)), lines
    if kind == "product":
        lines, left = _parse_braced(lines, "left")
        lines, right = _parse_braced(lines, "right")
        return Presentation(name, "product", (left, right)), lines
    raise ParseError(f"unknown kind {kind!r}", kind_line)


def _parse_braced(lines, key):
    if not lines:
        raise ParseError(f"expected `{key} {{`")
    lineno, content = lines[0]
    if content.replace(" ", "") != key + "{":
        raise ParseError(f"expected `{key} {{`, got {content!r}", lineno)
    depth = 1
    block = []
    rest = lines[1:]
    while rest:
        ln, c = rest[0]
        rest = rest[1:]
        if c.endswith("{") and c.replace(" ", "").endswith("{"):
            depth += 1
        if c == "}":
            depth -= 1
            if depth == 0:
                pres, leftover = _parse_block(block)
                if leftover:
                    raise ParseError(
                        f"unexpected directive {leftover[0][1]!r} in {key} block",
                        leftover[0][0],
                    )
                return rest, pres
        block.append((ln, c))
    raise ParseError(f"unterminated {key} block", lineno)


def load_presentation(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read())
