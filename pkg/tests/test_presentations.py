"""Presentation grammar: parsing, validation, round-trips."""

import pytest

from monoidkit.errors import AxiomViolation, ParseError
from monoidkit.presentations import Presentation, parse_presentation

BUILTIN = """\
monoid T3
kind builtin
name truncated
param 3
"""

CAYLEY = """\
monoid C3
kind cayley
elements e a b
row 0: 0 1 2
row 1: 1 2 0
row 2: 2 0 1
"""

AFFINE = """\
monoid N2
kind affine
dim 2
gen 1 0
gen 0 1
"""

FP = """\
monoid K
kind fp
gens 2
rel 2 0 -> 0 2
"""

PRODUCT = """\
monoid P
kind product
left {
  monoid N
  kind builtin
  name affine
  param 1
}
right {
  monoid Z2
  kind builtin
  name cyclic
  param 2
}
"""


def test_parse_builtin():
    pres = parse_presentation(BUILTIN)
    assert pres.kind == "builtin" and pres.body == ("truncated", 3)
    monoid = pres.to_monoid()
    assert monoid.cardinality() == 4
    assert monoid.name == "T3"


def test_parse_cayley_group():
    monoid = parse_presentation(CAYLEY).to_monoid()
    assert monoid.flags.is_group.is_true
    assert monoid.cardinality() == 3


def test_parse_affine_and_fp():
    n2 = parse_presentation(AFFINE).to_monoid()
    assert n2.dim == 2
    k = parse_presentation(FP).to_monoid()
    assert k.num_generators == 2


def test_parse_product_nested():
    monoid = parse_presentation(PRODUCT).to_monoid()
    assert monoid.backend == "product"
    assert monoid.flags.is_cancellative.is_true


@pytest.mark.parametrize("text", [BUILTIN, CAYLEY, AFFINE, FP, PRODUCT])
def test_roundtrip(text):
    pres = parse_presentation(text)
    again = parse_presentation(pres.serialize())
    assert again == pres
    assert again.serialize() == pres.serialize()


def test_comments_and_blanks_ignored():
    pres = parse_presentation("# header\n\nmonoid X\nkind builtin\nname flat\n")
    assert pres.body == ("flat", None)


def test_error_bad_row_length():
    bad = CAYLEY.replace("row 1: 1 2 0", "row 1: 1 2")
    with pytest.raises(ParseError) as exc:
        parse_presentation(bad)
    assert exc.value.line == 5


def test_error_row_out_of_range():
    bad = CAYLEY.replace("row 1: 1 2 0", "row 1: 1 2 9")
    with pytest.raises(ParseError):
        parse_presentation(bad)


def test_error_axiom_violation_carries_witness():
    text = """\
monoid B
kind cayley
elements e a b
row 0: 0 1 2
row 1: 1 2 0
row 2: 2 1 0
"""
    pres = parse_presentation(text)
    with pytest.raises(AxiomViolation) as exc:
        pres.to_monoid()
    assert exc.value.witness is not None


def test_error_unknown_builtin():
    with pytest.raises(ParseError):
        parse_presentation("monoid X\nkind builtin\nname nosuch\n")


def test_error_unknown_kind_and_missing_directives():
    with pytest.raises(ParseError):
        parse_presentation("monoid X\nkind frobnicate\n")
    with pytest.raises(ParseError):
        parse_presentation("kind builtin\nname flat\n")


def test_error_unterminated_product():
    bad = PRODUCT.replace("right {", "right {").rsplit("}", 1)[0]
    with pytest.raises(ParseError):
        parse_presentation(bad)


def test_error_fp_word_length():
    with pytest.raises(ParseError):
        parse_presentation("monoid K\nkind fp\ngens 2\nrel 1 -> 0 0\n")


def test_error_trailing_garbage():
    with pytest.raises(ParseError):
        parse_presentation(BUILTIN + "this is not a directive\n")
