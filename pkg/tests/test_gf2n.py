import pytest
from hypothesis import given, settings, strategies as st

from apnkit.gf2n import (
    DEFAULT_MODULI,
    FieldContext,
    FieldError,
    find_default_modulus,
    is_irreducible,
    parse_modulus,
)

F8 = FieldContext(3, 0b1011)


def test_mul_examples():
    assert F8.mul(2, 2) == 4
    assert F8.mul(3, 3) == 5  # (x+1)^2 = x^2 + 1
    for a in range(8):
        assert F8.mul(a, 1) == a


def test_pow_examples():
    assert F8.pow(2, 7) == 1
    assert F8.pow(0, 0) == 1
    for n in (2, 3, 5, 8):
        ctx = FieldContext.default(n)
        for a in range(1, ctx.order, max(1, ctx.order // 17)):
            assert ctx.pow(a, ctx.order - 1) == 1


def test_trace_examples():
    assert F8.trace(0) == 0
    assert F8.trace(1) == 1
    assert FieldContext(2, 0b111).trace(1) == 0


def test_inverse():
    assert F8.inverse(0) == 0
    for a in range(1, 8):
        assert F8.mul(a, F8.inverse(a)) == 1


def test_default_table_matches_search():
    for n in range(1, 21):
        assert find_default_modulus(n) == DEFAULT_MODULI[n]
        assert is_irreducible(DEFAULT_MODULI[n])


def test_irreducibility_rejects():
    assert not is_irreducible(0b101)  # x^2 + 1 = (x+1)^2
    assert not is_irreducible(0b10101)  # (x^2+x+1)^2
    with pytest.raises(FieldError):
        FieldContext(4, 0b10101)
    with pytest.raises(FieldError):
        FieldContext(3, 0b10011)  # wrong degree


def test_modulus_parsing():
    assert parse_modulus("poly=0b1011") == 11
    assert parse_modulus("poly=0xB") == 11
    assert FieldContext.build(3, "0xB") == F8
    assert FieldContext.build(6, "poly=0b1011011").modulus == 0b1011011  # irreducible, not the default


@pytest.mark.parametrize("n", range(1, 9))
def test_frobenius_and_trace_linearity_exhaustive(n):
    ctx = FieldContext.default(n)
    for a in range(ctx.order):
        sq = ctx.pow(a, 2)
        assert ctx.mul(a, a) == sq
        assert ctx.trace(sq) == ctx.trace(a)
    tr = [ctx.trace(z) for z in range(ctx.order)]
    assert all(t in (0, 1) for t in tr)
    for a in range(ctx.order):
        for b in range(0, ctx.order, max(1, ctx.order // 32)):
            assert tr[a ^ b] == tr[a] ^ tr[b]


@pytest.mark.parametrize("n", range(1, 11))
def test_trace_balanced(n):
    ctx = FieldContext.default(n)
    assert int(ctx.trace_array(ctx.elements()).sum()) == 1 << (n - 1)


def test_array_ops_match_scalar():
    for n in (3, 6, 8):
        ctx = FieldContext.default(n)
        xs = ctx.elements()
        for b in (0, 1, 3, ctx.order - 1):
            assert list(ctx.mul_array(xs, b)) == [ctx.mul(int(x), b) for x in xs]
        for e in (0, 3, 7, ctx.order - 2):
            assert list(ctx.pow_array(xs, e)) == [ctx.pow(int(x), e) for x in xs]
        assert list(ctx.trace_array(xs)) == [ctx.trace(int(x)) for x in xs]


elems8 = st.integers(0, 255)


@settings(max_examples=300)
@given(elems8, elems8, elems8)
def test_field_axioms_gf256(a, b, c):
    ctx = FieldContext.default(8)
    assert ctx.mul(a, b) == ctx.mul(b, a)
    assert ctx.mul(a, b ^ c) == ctx.mul(a, b) ^ ctx.mul(a, c)
    assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))


@settings(max_examples=100)
@given(st.integers(9, 20), st.data())
def test_group_order_sampled(n, data):
    ctx = FieldContext.default(n)
    g = data.draw(st.integers(1, ctx.order - 1))
    assert ctx.pow(g, ctx.order - 1) == 1
