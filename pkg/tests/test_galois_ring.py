import pytest

import oracles
from kloosterkit.galois_ring import (
    IntResidue,
    RingCtx,
    RingError,
    all_lifted_quadratic_traces,
    all_lifted_traces,
    gr_mul,
    lifted_quadratic_trace,
    lifted_trace,
    parse_ring_spec,
    ring_new,
    teichmuller,
)
from kloosterkit.gf2n import FieldCtx


@pytest.fixture(scope="module")
def gr16_2():
    return ring_new(FieldCtx(2), 4)


def test_ring_new_n2(gr16_2):
    assert gr16_2.lifted_poly == (1, 1, 1)
    assert gr16_2.tau == (0, 1)
    assert gr16_2.reduce2(gr16_2.tau) == 2


def test_tau_order_n3():
    ring = RingCtx(FieldCtx(3), 4)
    assert ring.pow(ring.tau, 7) == ring.one
    assert ring.frobenius_power(ring.tau) == ring.tau
    assert ring.reduce2(ring.tau) == 2


def test_precision_bounds():
    with pytest.raises(RingError):
        RingCtx(FieldCtx(3), 0)
    with pytest.raises(RingError):
        RingCtx(FieldCtx(3), 33)


def test_gr_mul_examples(gr16_2):
    assert gr_mul(gr16_2, (0, 1), (0, 1)) == (15, 15)
    assert gr_mul(gr16_2, gr16_2.one, (3, 7)) == (3, 7)


@pytest.mark.parametrize("n, k", [(2, 4), (3, 5), (5, 8), (8, 32)])
def test_gr_mul_matches_oracle_and_reduces(n, k):
    ring = RingCtx(FieldCtx(n), k)
    import random

    rng = random.Random(n * 100 + k)
    for _ in range(50):
        u = tuple(rng.randrange(ring.modulus) for _ in range(n))
        v = tuple(rng.randrange(ring.modulus) for _ in range(n))
        w = gr_mul(ring, u, v)
        assert w == oracles.ring_mul(u, v, ring.base.poly, k)
        assert ring.reduce2(w) == ring.base.mul(ring.reduce2(u), ring.reduce2(v))


def test_teichmuller_examples(gr16_2):
    assert teichmuller(gr16_2, 0) == gr16_2.zero
    assert teichmuller(gr16_2, 1) == gr16_2.one
    assert teichmuller(gr16_2, 2) == (0, 1)


@pytest.mark.parametrize("n, k", [(n, k) for n in range(2, 9) for k in (1, 3, 6)])
def test_teichmuller_properties(n, k):
    ring = RingCtx(FieldCtx(n), k)
    q = ring.base.q
    step = max(1, q // 40)
    for a in range(0, q, step):
        w = teichmuller(ring, a)
        assert ring.reduce2(w) == a
        assert ring.frobenius_power(w) == w
        if a:
            assert ring.pow(w, q - 1) == ring.one
        assert teichmuller(ring, ring.base.sqr(a)) == ring.mul(w, w)
        b = (a * 7 + 3) % q
        assert teichmuller(ring, ring.base.mul(a, b)) == ring.mul(w, teichmuller(ring, b))


def test_omega_table_matches_fixpoint():
    ring = RingCtx(FieldCtx(6), 5)
    exp, _ = ring.base.exp_log
    for e in range(0, 63, 5):
        assert tuple(int(c) for c in ring.omega_table[e]) == teichmuller(ring, int(exp[e]))


def test_lifted_trace_examples(gr16_2):
    assert lifted_trace(gr16_2, 0) == IntResidue(0, 16)
    assert lifted_trace(gr16_2, 1).value == 2
    assert lifted_trace(gr16_2, 2).value == 15
    ring = RingCtx(FieldCtx(5), 6)
    assert lifted_trace(ring, 1).value == 5
    assert lifted_quadratic_trace(ring, 1).value == 10
    assert lifted_quadratic_trace(ring, 0).value == 0


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("k", [4, 6])
def test_lifted_identity_and_reduction(n, k):
    ring = RingCtx(FieldCtx(n), k)
    T = all_lifted_traces(ring)
    Q = all_lifted_quadratic_traces(ring)
    ctx = ring.base
    from kloosterkit.gf2n import quadratic_trace

    for a in range(ctx.q):
        t, qq = int(T[a]), int(Q[a])
        assert (t * t - 2 * qq - t) % ring.modulus == 0
        assert t % 2 == ctx.trace(a)
        assert qq % 2 == quadratic_trace(ctx, a)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_batch_lifted_traces_match_scalar(n):
    ring = RingCtx(FieldCtx(n), 7)
    T = all_lifted_traces(ring)
    Q = all_lifted_quadratic_traces(ring)
    for a in range(ring.base.q):
        assert lifted_trace(ring, a).value == T[a]
        assert lifted_quadratic_trace(ring, a).value == Q[a]


def test_scalar_value_guard(gr16_2):
    with pytest.raises(RingError):
        gr16_2.scalar_value((1, 1))


def test_ring_codec():
    ring = parse_ring_spec("n=3,poly=0xb,k=5")
    assert ring.k == 5 and ring.base.poly == 0xB
    assert ring.spec == "n=3,poly=0xb,k=5"
    assert ring.format((1, 0, 31)) == "1,0,31"
    assert ring.parse("1,0,31") == (1, 0, 31)


def test_int_residue():
    r = IntResidue(11, 16)
    assert r.reduce(4) == IntResidue(3, 4)
    with pytest.raises(ValueError):
        IntResidue(16, 16)
    with pytest.raises(ValueError):
        r.reduce(3)
