"""Residues of Kloosterman sums predicted from cheap field and ring data.

Each ``predict_*`` returns a CongruenceClass.  The core tables are exposed as
small pure functions (``mod16_class``, ``mod64_from_lifted_trace`` ...) so
batch verifiers can feed them precomputed traces.

Validity ranges (n >= 3 for mod 8, n >= 4 for mod 16, odd n >= 5 for
mod 48, n >= 6 for mod 64, odd n >= 7 for mod 192, n >= 2 for ternary
mod 9) are not enforced here; outside them a prediction is still returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .galois_ring import RingCtx, lifted_quadratic_trace, lifted_trace
from .gf2n import FieldCtx, FieldError, cube_root, half_trace_solve, quadratic_trace_fast, solve_beta

BINARY_MODULI = (8, 16, 48, 64, 192)

# lifted trace mod 16 -> K mod 64
MOD64_TABLE = {
    0: 0, 11: 4, 10: 8, 13: 12, 4: 16, 15: 20, 14: 24, 1: 28,
    8: 32, 3: 36, 2: 40, 5: 44, 12: 48, 7: 52, 6: 56, 9: 60,
}


@dataclass(frozen=True)
class CongruenceClass:
    residue: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    def matches(self, value: int) -> bool:
        return value % self.modulus == self.residue

    def reduce(self, modulus: int) -> "CongruenceClass":
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return CongruenceClass(self.residue % modulus, modulus)

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def crt(a: CongruenceClass, b: CongruenceClass) -> CongruenceClass:
    m = a.modulus * b.modulus
    r = (a.residue * b.modulus * pow(b.modulus, -1, a.modulus)
         + b.residue * a.modulus * pow(a.modulus, -1, b.modulus)) % m
    return CongruenceClass(r, m)


# -- mod 8 / mod 16 -------------------------------------------------------------


def predict_mod8(tr: int) -> CongruenceClass:
    return CongruenceClass(4 * tr, 8)


def mod16_class(tr: int, q: int) -> int:
    # K == -4 T^(a) (mod 16), with T^ mod 4 fixed by Tr and Q
    lifted_mod4 = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[tr, q]
    return -4 * lifted_mod4 % 16


def predict_mod16(tr: int, q: int) -> CongruenceClass:
    return CongruenceClass(mod16_class(tr, q), 16)


def lisonek_div16(ctx: FieldCtx, a: int) -> bool:
    """16 | K(a) iff Tr(a) = 0 and Tr(y) = 0 for a root y of y^2 + a y + a^3."""
    if a == 0:
        return True
    if ctx.trace(a):
        return False
    # y = a s with s^2 + s = a
    s = half_trace_solve(ctx, a)
    return ctx.trace(ctx.mul(a, s)) == 0


# -- mod 3 / mod 48 (n odd) -----------------------------------------------------


def _mod3_rule(cube_root_trace: int, beta_cube_trace: int, n: int) -> int:
    if cube_root_trace == 0:
        return 1
    if (beta_cube_trace == 0 and n % 8 in (5, 7)) or (beta_cube_trace == 1 and n % 8 in (1, 3)):
        return 0
    return 2


def _literal_table_mod3(cube_root_trace: int, beta_cube_trace: int, n: int) -> int:
    """Mod-3 class implied by reading the mod-48 table's "n + Tr(beta^3)" rows."""
    if cube_root_trace == 0:
        return 1
    return 0 if (n + beta_cube_trace) % 8 in (5, 7) else 2


def mod3_data(ctx: FieldCtx, a: int) -> tuple[int, int]:
    """(Tr(a^(1/3)), Tr(beta^3)); the second is 0 when unused."""
    if a == 0:
        raise ValueError("mod-3 rule is stated for a != 0")
    c = cube_root(ctx, a)
    if ctx.trace(c) == 0:
        return 0, 0
    beta = solve_beta(ctx, c)
    if beta is None:
        raise AssertionError(f"beta equation unsolvable for a=0x{a:x}")
    return 1, ctx.trace(ctx.pow(beta, 3))


def predict_mod3_odd(ctx: FieldCtx, a: int, n: int | None = None) -> CongruenceClass:
    n = ctx.n if n is None else n
    if n % 2 == 0:
        raise FieldError("mod-3 rule implemented for odd n only")
    return CongruenceClass(_mod3_rule(*mod3_data(ctx, a), n), 3)


def predict_mod48_odd(ctx: FieldCtx, a: int) -> CongruenceClass:
    m16 = predict_mod16(ctx.trace(a), quadratic_trace_fast(ctx, a))
    return crt(m16, predict_mod3_odd(ctx, a))


def predict_mod48_literal(ctx: FieldCtx, a: int) -> CongruenceClass:
    """Mod-48 class read off the table rows with the "n + Tr(beta^3)" conditions."""
    m16 = predict_mod16(ctx.trace(a), quadratic_trace_fast(ctx, a))
    return crt(m16, CongruenceClass(_literal_table_mod3(*mod3_data(ctx, a), ctx.n), 3))


# -- mod 64 / mod 192 -----------------------------------------------------------


def mod64_from_lifted_trace(t16: int) -> int:
    return MOD64_TABLE[t16 % 16]


def mod64_from_lifted_pair(t: int, qhat: int) -> int:
    return (-36 * t - 16 * qhat) % 64


def predict_mod64(ring: RingCtx, a: int) -> CongruenceClass:
    if ring.k < 4:
        raise ValueError(f"mod-64 prediction needs ring precision k >= 4, have {ring.k}")
    t = lifted_trace(ring, a).value % 16
    table = mod64_from_lifted_trace(t)
    # 2 Q^ = T^2 - T^ determines Q^ mod 8, which is all 16 Q^ mod 64 needs
    qhat = ((t * t - t) // 2) % 8
    assert table == mod64_from_lifted_pair(t, qhat)
    assert table == mod64_from_lifted_pair(t, lifted_quadratic_trace(ring, a).value)
    return CongruenceClass(table, 64)


def predict_mod192_odd(ctx: FieldCtx, ring: RingCtx, a: int) -> CongruenceClass:
    return crt(predict_mod64(ring, a), predict_mod3_odd(ctx, a))


# -- ternary ----------------------------------------------------------------------


def predict_ternary_mod9(tr: int) -> CongruenceClass:
    return CongruenceClass(3 * tr, 9)
