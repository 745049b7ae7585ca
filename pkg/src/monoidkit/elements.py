"""Tagged element values.

Every monoid in the package moves elements of this single type around.
An element is a variant tag plus an immutable payload:

    idx    i                      -- position in a finite Cayley table
    vec    (a1, ..., ad)          -- vector in an affine submonoid of N^d
    word   (a1, ..., am)          -- word of a finitely presented monoid
    pair   (y, z)                 -- formal difference z - y
    frac   (x, n)                 -- formal fraction x / n, n >= 1
    cls    c                      -- class id in a finite quotient
    combo  ((q1, x1), ..., (qk, xk)) -- scalar combination, qi > 0 rational

Structural equality (`==`) compares representations only; semantic equality
is decided by the owning monoid.  `sort_key()` is the fixed total order used
for canonical class representatives and combo normalization: lexicographic
on the canonical tuple serialization (variant rank first, then payload,
numbers in natural order).
"""

from __future__ import annotations

from fractions import Fraction

_RANK = {"idx": 0, "vec": 1, "word": 2, "pair": 3, "frac": 4, "cls": 5, "combo": 6}


class Element:
    __slots__ = ("tag", "data", "_key")

    def __init__(self, tag, data):
        if tag not in _RANK:
            raise ValueError(f"unknown element tag {tag!r}")
        self.tag = tag
        self.data = data
        self._key = None

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.tag == other.tag and self.data == other.data

    def __hash__(self):
        return hash((self.tag, self.data))

    def __repr__(self):
        return f"Element({self.serialize()})"

    def serialize(self) -> str:
        """Readable canonical form, used in reports and witnesses."""
        t, d = self.tag, self.data
        if t == "idx":
            return f"i{d}"
        if t == "vec":
            return "v(" + ",".join(str(a) for a in d) + ")"
        if t == "word":
            return "w(" + ",".join(str(a) for a in d) + ")"
        if t == "pair":
            return f"p({d[0].serialize()}|{d[1].serialize()})"
        if t == "frac":
            return f"q({d[0].serialize()}/{d[1]})"
        if t == "cls":
            return f"c{d}"
        terms = ";".join(f"{q.numerator}/{q.denominator}*{x.serialize()}" for q, x in d)
        return "m[" + terms + "]"

    def sort_key(self):
        """Total-order key: nested tuples, comparable across all variants."""
        if self._key is None:
            t, d = self.tag, self.data
            r = _RANK[t]
            if t in ("idx", "cls"):
                key = (r, d)
            elif t in ("vec", "word"):
                key = (r, len(d), d)
            elif t == "pair":
                key = (r, d[0].sort_key(), d[1].sort_key())
            elif t == "frac":
                key = (r, d[0].sort_key(), d[1])
            else:  # combo
                key = (r, tuple((x.sort_key(), q.numerator, q.denominator) for q, x in d))
            self._key = key
        return self._key


def finite_index(i: int) -> Element:
    return Element("idx", int(i))


def exponent_vector(v) -> Element:
    v = tuple(int(a) for a in v)
    if any(a < 0 for a in v):
        raise ValueError("exponent vectors are componentwise nonnegative")
    return Element("vec", v)


def fp_word(v) -> Element:
    v = tuple(int(a) for a in v)
    if any(a < 0 for a in v):
        raise ValueError("words are componentwise nonnegative")
    return Element("word", v)


def pair(y: Element, z: Element) -> Element:
    return Element("pair", (y, z))


def fraction(x: Element, n: int) -> Element:
    n = int(n)
    if n < 1:
        raise ValueError("fraction denominator must be >= 1")
    return Element("frac", (x, n))


def class_id(c: int) -> Element:
    return Element("cls", int(c))


def cone_combo(terms) -> Element:
    """Normalize a scalar combination: drop zero terms, merge equal bases,
    sort by base under the fixed total order."""
    acc = {}
    for q, x in terms:
        q = Fraction(q)
        if q < 0:
            raise ValueError("combo scalars are nonnegative")
        if q == 0:
            continue
        if x in acc:
            acc[x] += q
        else:
            acc[x] = q
    items = sorted(acc.items(), key=lambda kv: kv[0].sort_key())
    return Element("combo", tuple((q, x) for x, q in items))
