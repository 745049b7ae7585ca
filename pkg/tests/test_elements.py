"""Element representations: order, serialization, combo normalization."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monoidkit.elements import (
    cone_combo,
    exponent_vector,
    finite_index,
    fp_word,
    fraction,
    pair,
)


def test_structural_equality_and_hash():
    assert finite_index(3) == finite_index(3)
    assert finite_index(3) != finite_index(4)
    assert hash(pair(finite_index(1), finite_index(2))) == hash(
        pair(finite_index(1), finite_index(2))
    )
    assert exponent_vector((1, 2)) != fp_word((1, 2))


def test_sort_key_orders_indices_numerically():
    elems = [finite_index(i) for i in (10, 2, 1, 0)]
    ordered = sorted(elems, key=lambda e: e.sort_key())
    assert ordered == [finite_index(i) for i in (0, 1, 2, 10)]


def test_sort_key_total_across_variants():
    elems = [
        finite_index(1),
        exponent_vector((2, 1)),
        fp_word((0,)),
        pair(finite_index(0), finite_index(1)),
        fraction(finite_index(1), 3),
        cone_combo([(Fraction(1, 2), finite_index(1))]),
    ]
    keys = [e.sort_key() for e in elems]
    assert sorted(keys) == sorted(keys, reverse=False)
    assert len(set(keys)) == len(keys)


def test_serialization_forms():
    assert finite_index(4).serialize() == "i4"
    assert exponent_vector((1, 0)).serialize() == "v(1,0)"
    assert fraction(exponent_vector((3,)), 2).serialize() == "q(v(3)/2)"
    combo = cone_combo([(Fraction(1, 2), finite_index(1))])
    assert combo.serialize() == "m[1/2*i1]"


def test_fraction_denominator_positive():
    with pytest.raises(ValueError):
        fraction(finite_index(0), 0)


def test_combo_normalization_merges_and_sorts():
    x, y = finite_index(1), finite_index(2)
    c = cone_combo([(Fraction(1, 3), y), (Fraction(1, 2), x), (Fraction(1, 6), y)])
    assert c.data == ((Fraction(1, 2), x), (Fraction(1, 2), y))
    assert cone_combo([(0, x)]).data == ()
    with pytest.raises(ValueError):
        cone_combo([(Fraction(-1, 2), x)])


@given(st.lists(st.tuples(st.fractions(min_value=0, max_value=4), st.integers(0, 5))))
def test_combo_normalization_is_idempotent(terms):
    c = cone_combo([(q, finite_index(i)) for q, i in terms])
    again = cone_combo(c.data)
    assert c == again
    scalars = [q for q, _ in c.data]
    assert all(q > 0 for q in scalars)
    bases = [x.sort_key() for _, x in c.data]
    assert bases == sorted(bases)
    assert len(set(bases)) == len(bases)
