import numpy as np
import pytest

from ovalcodes.errors import FieldError
from ovalcodes.gf2m import (
    ExtFieldCtx,
    Fe,
    clmul,
    field_new,
    inv,
    irreducible_polynomials,
    is_irreducible,
    is_primitive,
    mulmod,
    power,
    trace,
)


def test_canonical_moduli():
    assert field_new(3).modulus == 0b1011
    assert field_new(4).modulus == 0b10011
    assert field_new(3).alpha == 2


def test_field_new_rejects_out_of_range_m():
    for m in (0, 1, 17):
        with pytest.raises(FieldError):
            field_new(m)


def test_overrides_are_validated():
    with pytest.raises(FieldError):
        field_new(3, modulus=0b1111)  # (x+1)(x^2+x+1)
    with pytest.raises(FieldError):
        field_new(3, modulus=0b10011)  # wrong degree
    with pytest.raises(FieldError):
        field_new(4, alpha=0b110)  # x^2 + x = x^5 has order 3 modulo x^4 + x + 1


def test_scalar_arithmetic_gf8(gf8):
    assert gf8.mul(3, 5) == 4
    assert gf8.inv(2) == 5
    assert gf8.trace(1) == 1
    assert gf8.pow(0, 0) == 1
    assert gf8.pow(0, 3) == 0
    assert gf8.sqrt(gf8.mul(6, 6)) == 6
    with pytest.raises(FieldError):
        gf8.inv(0)


def test_trace_of_one_depends_on_parity(gf16):
    assert gf16.trace(1) == 0


def test_field_axioms_exhaustive(gf16):
    q = gf16.q
    for a in range(1, q):
        assert gf16.mul(a, gf16.inv(a)) == 1
        assert gf16.pow(a, q - 1) == 1
        assert gf16.trace(a) in (0, 1)
    traces = [gf16.trace(a) for a in range(q)]
    assert sum(traces) == q // 2


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_ring_laws_on_all_triples(m):
    ctx = field_new(m)
    xs = ctx.elements()
    a, b, c = xs[:, None, None], xs[None, :, None], xs[None, None, :]
    mul = ctx.mul_vec
    assert np.array_equal(mul(mul(a, b), c), mul(a, mul(b, c)))
    assert np.array_equal(mul(a, b), mul(b, a))
    assert np.array_equal(mul(a, b ^ c), mul(a, b) ^ mul(a, c))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_log_tables_agree_with_carry_less_product(m):
    ctx = field_new(m)
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert ctx.mul(a, b) == mulmod(a, b, ctx.modulus)


def test_clmul_and_mulmod():
    assert clmul(0b11, 0b11) == 0b101  # (x+1)^2 = x^2 + 1
    assert clmul(0b101, 0b111) == 0b11011
    assert clmul(0, 0b111) == 0
    assert mulmod(0b100, 0b10, 0b1011) == 0b011  # x^3 = x + 1


@pytest.mark.parametrize("m", range(2, 9))
def test_every_nonzero_element_is_invertible(m):
    ctx = field_new(m)
    for a in range(1, ctx.q):
        assert ctx.mul(a, ctx.inv(a)) == 1


@pytest.mark.parametrize("m", range(2, 9))
def test_elements_sum_to_zero(m):
    assert np.bitwise_xor.reduce(field_new(m).elements()) == 0


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_trace_is_additive_and_frobenius_invariant(m):
    ctx = field_new(m)
    for a in range(ctx.q):
        assert ctx.trace(ctx.mul(a, a)) == ctx.trace(a)
        for b in range(ctx.q):
            assert ctx.trace(a ^ b) == ctx.trace(a) ^ ctx.trace(b)


def test_galois_arrays_share_the_encoding(gf16):
    alt = field_new(4, modulus=0b11001)
    for ctx in (gf16, alt):
        xs = ctx.elements()
        products = ctx.array(xs[:, None]) * ctx.array(xs[None, :])
        assert np.array_equal(products.view(np.ndarray), ctx.mul_vec(xs[:, None], xs[None, :]))


def test_vector_ops_match_scalar_ops(gf32):
    xs = gf32.elements()
    ys = xs[::-1]
    expected = [gf32.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert gf32.mul_vec(xs, ys).tolist() == expected
    assert gf32.inv_vec(xs)[0] == 0
    assert gf32.inv_vec(xs)[1:].tolist() == [gf32.inv(int(a)) for a in xs[1:]]
    assert gf32.pow_vec(xs, 6).tolist() == [gf32.pow(int(a), 6) for a in xs]


def test_alpha_powers_cover_the_multiplicative_group(gf8):
    powers = gf8.alpha_powers()
    assert sorted(powers.tolist()) == list(range(1, 8))
    assert powers[0] == 1


def test_irreducible_polynomials_of_degree_3():
    assert list(irreducible_polynomials(3)) == [0b1011, 0b1101]
    assert is_irreducible(0b1101)
    assert is_primitive(3, 0b1101)


def test_fe_operators(gf8, gf16):
    a, b = Fe(gf8, 3), Fe(gf8, 5)
    assert int(a * b) == 4
    assert a + a == Fe(gf8, 0)
    assert int(inv(Fe(gf8, 2))) == 5
    assert int(power(b, 7)) == 1
    assert int(trace(Fe(gf8, 1))) == 1
    assert (a / b) * b == a
    with pytest.raises(FieldError):
        a + Fe(gf16, 3)
    with pytest.raises(FieldError):
        Fe(gf8, 8)


def test_extension_field(gf16):
    ext = ExtFieldCtx(gf16)
    q = gf16.q
    # t^2 + t + c has no root in GF(q)
    assert all(gf16.mul(x, x) ^ x != ext.c for x in range(q))
    circle = list(ext.unit_circle())
    assert len(circle) == q + 1
    assert (1, 0) in circle
    for beta in circle[:5]:
        assert ext.pow(beta, q + 1) == (1, 0)
        assert ext.conj(beta) == ext.pow(beta, q)
        assert ext.add(beta, ext.conj(beta)) == (ext.trace_map(beta), 0)
    x = (3, 7)
    assert ext.mul(x, ext.inv(x)) == (1, 0)
    assert ext.decode(ext.encode(x)) == x


def test_extension_embeds_the_base_field(gf16):
    ext = ExtFieldCtx(gf16)
    for a in range(gf16.q):
        for b in range(gf16.q):
            assert ext.add(ext.embed(a), ext.embed(b)) == ext.embed(a ^ b)
            assert ext.mul(ext.embed(a), ext.embed(b)) == ext.embed(gf16.mul(a, b))


def test_extension_vector_power_matches_scalar(gf16):
    ext = ExtFieldCtx(gf16)
    xs = gf16.elements()
    ys = np.full_like(xs, 5)
    v0, v1 = ext.pow_vec((xs, ys), 5)
    for i in (0, 1, 7, 15):
        assert (int(v0[i]), int(v1[i])) == ext.pow((i, 5), 5)
