import random

import pytest
from hypothesis import given, strategies as st

from wqo.base_orders import (
    OMEGA,
    BaseElem,
    Cmp,
    Finite,
    OmegaPlus,
    compare_base,
    embed_base,
    embed_inclusion,
    embed_into_tail,
    format_elem,
    format_spec,
    normalize_spec,
    one_plus,
    parse_elem,
    parse_spec,
    zero_elem,
)
from wqo.errors import InvalidElement, NotMonotone, NotOmegaPlusForm, ParseError
from wqo.randgen import random_elem

from oracles import elem_compare_reference

OP2 = OmegaPlus(Finite(2))


def w(n):
    return BaseElem.left(n)


def y(e):
    return BaseElem.right(e)


def test_compare_left_before_right():
    assert compare_base(OP2, w(5), y(w(0))) is Cmp.LT


def test_compare_reflexive_on_right():
    assert compare_base(OP2, y(w(1)), y(w(1))) is Cmp.EQ


def test_compare_omega_is_natural_order():
    assert compare_base(OMEGA, w(3), w(7)) is Cmp.LT


def test_compare_rejects_foreign_elements():
    with pytest.raises(InvalidElement):
        compare_base(Finite(2), w(5), w(0))
    with pytest.raises(InvalidElement):
        compare_base(OMEGA, y(w(0)), w(1))


def test_zero_elem():
    assert zero_elem(OmegaPlus(Finite(3))) == w(0)
    assert zero_elem(OMEGA) == w(0)
    with pytest.raises(NotOmegaPlusForm):
        zero_elem(Finite(4))


def test_one_plus():
    assert one_plus(OP2, w(4)) == w(5)
    assert one_plus(OP2, y(w(1))) == y(w(1))
    assert one_plus(OMEGA, w(0)) == w(1)
    with pytest.raises(NotOmegaPlusForm):
        one_plus(Finite(4), w(0))


def test_omega_and_empty_sum_are_compare_compatible():
    norm = normalize_spec(OMEGA)
    assert norm == OmegaPlus(Finite(0))
    for a, b in [(w(0), w(1)), (w(4), w(4)), (w(9), w(2))]:
        assert compare_base(OMEGA, a, b) is compare_base(norm, a, b)


def test_embed_finite_into_omega_inclusion():
    e = embed_base(Finite(2), OMEGA, {w(0): w(0), w(1): w(1)})
    assert e(w(0)) == w(0)
    assert e(w(1)) == w(1)


def test_embed_finite_into_sum_tail():
    e = embed_base(Finite(2), OP2, {w(0): y(w(0)), w(1): y(w(1))})
    assert compare_base(OP2, e(w(0)), e(w(1))) is Cmp.LT


def test_embed_rejects_order_reversal():
    with pytest.raises(NotMonotone) as exc:
        embed_base(Finite(2), OMEGA, {w(0): w(5), w(1): w(3)})
    assert exc.value.pair == (w(0), w(1))


def test_embed_rejects_collapsing_pairs():
    with pytest.raises(NotMonotone):
        embed_base(Finite(2), OMEGA, {w(0): w(3), w(1): w(3)})


def test_embed_table_outside_support():
    e = embed_base(Finite(2), OMEGA, {w(0): w(0), w(1): w(1)})
    with pytest.raises(InvalidElement):
        e(w(1 + 1))


def test_embed_rule_inclusion_and_into_tail():
    inc = embed_inclusion(OMEGA, OP2, samples=300)
    assert inc(w(7)) == w(7)
    assert inc.sample_checked == 300
    tail = embed_into_tail(OMEGA, samples=300)
    assert tail(w(7)) == y(w(7))


def test_embed_rule_catches_non_monotone_rule():
    def bad(x):
        return w(10 - x.payload)

    with pytest.raises(NotMonotone):
        embed_base(OMEGA, OMEGA, bad, samples=200)


# --- order laws on random elements ------------------------------------------

SPECS = [OMEGA, Finite(5), OmegaPlus(Finite(3)), OmegaPlus(OmegaPlus(Finite(2)))]


@pytest.mark.parametrize("spec", SPECS, ids=format_spec)
def test_compare_matches_reference(spec):
    rng = random.Random(11)
    for _ in range(2000):
        a = random_elem(spec, rng)
        b = random_elem(spec, rng)
        assert int(compare_base(spec, a, b)) == elem_compare_reference(a, b)


@pytest.mark.parametrize("spec", SPECS, ids=format_spec)
def test_totality_and_antisymmetry(spec):
    rng = random.Random(12)
    for _ in range(2000):
        a = random_elem(spec, rng)
        b = random_elem(spec, rng)
        assert compare_base(spec, a, b) is Cmp(-int(compare_base(spec, b, a)))
        assert (compare_base(spec, a, b) is Cmp.EQ) == (a == b)


@pytest.mark.parametrize("spec", [OMEGA, OmegaPlus(Finite(3))], ids=format_spec)
def test_zero_below_every_one_plus_image(spec):
    rng = random.Random(13)
    zero = zero_elem(spec)
    for _ in range(2000):
        x = random_elem(spec, rng)
        assert compare_base(spec, zero, one_plus(spec, x)) is Cmp.LT


# --- grammar ------------------------------------------------------------------

spec_strategy = st.recursive(
    st.one_of(st.just(OMEGA), st.builds(Finite, st.integers(0, 9))),
    lambda inner: st.builds(OmegaPlus, inner),
    max_leaves=4,
)


@given(spec_strategy)
def test_spec_grammar_round_trip(spec):
    assert parse_spec(format_spec(spec)) == spec


@given(st.integers(0, 50), st.integers(0, 3))
def test_elem_grammar_round_trip(n, depth):
    e = BaseElem.left(n)
    for _ in range(depth):
        e = BaseElem.right(e)
    assert parse_elem(format_elem(e)) == e


def test_bare_natural_is_element_sugar():
    assert parse_elem("3") == w(3)
    assert parse_elem("w.3") == w(3)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_spec("omega+(fin:3")
    with pytest.raises(ParseError):
        parse_elem("y.")
    with pytest.raises(ParseError):
        parse_elem("w.3extra")
