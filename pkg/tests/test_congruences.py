import pytest

from kloosterkit.congruences import (
    MOD64_TABLE,
    CongruenceClass,
    _literal_table_mod3,
    _mod3_rule,
    crt,
    lisonek_div16,
    mod16_class,
    mod64_from_lifted_pair,
    predict_mod3_odd,
    predict_mod8,
    predict_mod16,
    predict_mod48_odd,
    predict_mod64,
    predict_mod192_odd,
    predict_ternary_mod9,
)
from kloosterkit.galois_ring import RingCtx
from kloosterkit.gf2n import FieldCtx, FieldError, quadratic_trace
from kloosterkit.kloosterman import TernaryFieldCtx, ksum_all, ksum_naive


def test_congruence_class_invariants():
    with pytest.raises(ValueError):
        CongruenceClass(8, 8)
    assert CongruenceClass(12, 16).reduce(8) == CongruenceClass(4, 8)
    assert CongruenceClass(4, 8).matches(-4)


def test_mod8_table():
    assert predict_mod8(0) == CongruenceClass(0, 8)
    assert predict_mod8(1) == CongruenceClass(4, 8)


def test_mod8_fails_below_validity():
    ctx = FieldCtx(2)
    assert ctx.trace(1) == 0
    assert ksum_naive(ctx, 1) == 4
    assert not predict_mod8(0).matches(4)


@pytest.mark.parametrize("tr, q, expected", [(0, 0, 0), (1, 1, 4), (0, 1, 8), (1, 0, 12)])
def test_mod16_table(tr, q, expected):
    assert predict_mod16(tr, q) == CongruenceClass(expected, 16)
    assert predict_mod16(tr, q).reduce(8) == predict_mod8(tr)


def test_lisonek_basic(fields):
    ctx = fields(6)
    assert lisonek_div16(ctx, 0)
    assert all(not lisonek_div16(ctx, a) for a in range(ctx.q) if ctx.trace(a))


def test_lisonek_exhaustive_n6(fields):
    ctx = fields(6)
    for a in range(ctx.q):
        assert lisonek_div16(ctx, a) == (ksum_naive(ctx, a) % 16 == 0)


@pytest.mark.parametrize("n", range(4, 13))
def test_lisonek_equals_mod16_zero(fields, n):
    ctx = fields(n)
    for a in range(ctx.q):
        assert lisonek_div16(ctx, a) == (predict_mod16(ctx.trace(a), quadratic_trace(ctx, a)).residue == 0)


def test_lisonek_root_choice_irrelevant(fields):
    ctx = fields(7)
    for a in range(1, ctx.q):
        if ctx.trace(a):
            continue
        roots = [y for y in range(ctx.q) if ctx.sqr(y) ^ ctx.mul(a, y) ^ ctx.pow(a, 3) == 0]
        assert len(roots) == 2
        assert {ctx.trace(y) for y in roots} == {int(not lisonek_div16(ctx, a))}


def test_mod3_rule_table():
    assert _mod3_rule(0, 0, 5) == 1
    assert _mod3_rule(1, 0, 5) == 0
    assert _mod3_rule(1, 0, 7) == 0
    assert _mod3_rule(1, 0, 9) == 2
    assert _mod3_rule(1, 1, 9) == 0
    assert _mod3_rule(1, 1, 11) == 0
    assert _mod3_rule(1, 1, 13) == 2
    # the literal reading never yields class 0 when Tr(beta^3) = 1 and n is odd
    assert all(_literal_table_mod3(1, 1, n) == 2 for n in range(5, 40, 2))


def test_mod3_domain(fields):
    with pytest.raises(ValueError):
        predict_mod3_odd(fields(5), 0)
    with pytest.raises(FieldError):
        predict_mod3_odd(fields(6), 1)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_mod3_matches_exact(fields, n):
    ctx = fields(n)
    spec = ksum_all(ctx)
    for a in range(1, ctx.q):
        assert predict_mod3_odd(ctx, a, n).matches(spec[a])


def test_mod48_rows_from_tables():
    def combine(tr, q, m3):
        return crt(predict_mod16(tr, q), CongruenceClass(m3, 3)).residue

    # case Tr(a^(1/3)) = 0: K == 1 (mod 3)
    assert combine(1, 1, 1) == 4
    assert combine(0, 0, 1) == 16
    assert combine(1, 0, 1) == 28
    assert combine(0, 1, 1) == 40
    # case Tr(a^(1/3)) = 1: class 0 rows then class 2 rows
    assert [combine(0, 0, 0), combine(1, 0, 0), combine(0, 1, 0), combine(1, 1, 0)] == [0, 12, 24, 36]
    assert [combine(0, 1, 2), combine(1, 1, 2), combine(0, 0, 2), combine(1, 0, 2)] == [8, 20, 32, 44]


@pytest.mark.parametrize("n", [5, 7, 9])
def test_mod48_exhaustive_and_consistent(fields, n):
    ctx = fields(n)
    spec = ksum_all(ctx)
    for a in range(1, ctx.q):
        pred = predict_mod48_odd(ctx, a)
        assert pred.matches(spec[a])
        assert pred.reduce(16) == predict_mod16(ctx.trace(a), quadratic_trace(ctx, a))
        assert pred.reduce(3) == predict_mod3_odd(ctx, a)


def test_mod64_table_matches_formula():
    for t, k in MOD64_TABLE.items():
        qhat = (t * t - t) // 2
        assert mod64_from_lifted_pair(t, qhat) == k
    assert sorted(MOD64_TABLE.values()) == list(range(0, 64, 4))


def test_mod64_requires_precision(fields):
    with pytest.raises(ValueError):
        predict_mod64(RingCtx(fields(6), 3), 1)


@pytest.mark.parametrize("n", [6, 7, 8])
def test_mod64_exhaustive(fields, n):
    ctx = fields(n)
    ring = RingCtx(ctx, 4)
    spec = ksum_all(ctx)
    for a in range(ctx.q):
        pred = predict_mod64(ring, a)
        assert pred.matches(spec[a])
        assert pred.reduce(16) == predict_mod16(ctx.trace(a), quadratic_trace(ctx, a))


def test_mod192_crt():
    assert crt(CongruenceClass(0, 64), CongruenceClass(0, 3)) == CongruenceClass(0, 192)
    assert crt(CongruenceClass(4, 64), CongruenceClass(1, 3)) == CongruenceClass(4, 192)


def test_mod192_exhaustive_n7(fields):
    ctx = fields(7)
    ring = RingCtx(ctx, 4)
    spec = ksum_all(ctx)
    for a in range(1, ctx.q):
        pred = predict_mod192_odd(ctx, ring, a)
        assert pred.matches(spec[a])
        assert pred.reduce(64) == predict_mod64(ring, a)
        assert pred.reduce(3) == predict_mod3_odd(ctx, a)


def test_ternary_mod9():
    assert predict_ternary_mod9(0) == CongruenceClass(0, 9)
    assert predict_ternary_mod9(1) == CongruenceClass(3, 9)
    assert predict_ternary_mod9(2) == CongruenceClass(6, 9)


def test_ternary_mod9_below_validity():
    ctx = TernaryFieldCtx(1)
    from kloosterkit.kloosterman import ternary_ksum

    assert ctx.trace(1) == 1
    assert ternary_ksum(ctx, 1) == 0
    assert not predict_ternary_mod9(1).matches(0)
