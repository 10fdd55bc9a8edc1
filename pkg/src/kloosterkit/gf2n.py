"""Binary field GF(2^n) arithmetic in a polynomial basis.

Elements are plain ints: bit i is the coefficient of t^i, where t is the
class of x modulo the defining polynomial.  Addition is XOR.  A FieldCtx
carries the modulus plus a few precomputed tables (trace mask, dual
basis); the functions below take it as first argument.

The ``vec_*`` helpers operate on numpy uint64 arrays of elements and are
used for exhaustive/batch work.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional

import numpy as np

MAX_DEGREE = 32


class FieldError(ValueError):
    """Invalid field construction or unsupported operation for a degree."""


# ---------------------------------------------------------------------------
# polynomials over GF(2), encoded as ints


def _pdeg(p: int) -> int:
    return p.bit_length() - 1


def _pmod(a: int, m: int) -> int:
    dm = _pdeg(m)
    while a and _pdeg(a) >= dm:
        a ^= m << (_pdeg(a) - dm)
    return a


def _pmulmod(a: int, b: int, m: int) -> int:
    dm = _pdeg(m)
    top = 1 << dm
    r = 0
    a = _pmod(a, m)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= m
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def check_irreducible(poly: int, n: int) -> None:
    """Raise FieldError unless ``poly`` is a monic irreducible of degree n."""
    if poly >> n != 1:
        raise FieldError(f"poly 0x{poly:x} is not monic of degree {n}")
    # x^(2^i) mod poly for i = 1..n
    xi = 2
    for i in range(1, n // 2 + 1):
        xi = _pmulmod(xi, xi, poly)
        g = _pgcd(poly, xi ^ 2)
        if g != 1:
            raise FieldError(
                f"poly 0x{poly:x} is reducible: gcd(x^(2^{i}) - x, poly) = 0x{g:x}"
            )
    for _ in range(n // 2, n):
        xi = _pmulmod(xi, xi, poly)
    if xi != _pmod(2, poly):
        raise FieldError(f"poly 0x{poly:x} is reducible: x^(2^{n}) != x mod poly")


def smallest_irreducible(n: int) -> int:
    for p in range(1 << n, 1 << (n + 1)):
        if not p & 1:
            continue
        try:
            check_irreducible(p, n)
        except FieldError:
            continue
        return p
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# GF(2) linear algebra on bitmask vectors


def gf2_solve(columns: list[int], rhs: int, n: int) -> tuple[Optional[int], list[int]]:
    """Solve sum_j y_j * columns[j] = rhs over GF(2).

    Returns ``(y, kernel)`` where y is one solution (bit j = y_j) or None if
    rhs is not in the column span, and ``kernel`` is a basis of the null space.
    """
    # row-reduce the augmented system; each pivot row stores (value, combo)
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v, combo = col, 1 << j
        for bit in sorted(pivots, reverse=True):
            if v >> bit & 1:
                pv, pc = pivots[bit]
                v ^= pv
                combo ^= pc
        if v:
            pivots[_pdeg(v)] = (v, combo)
        else:
            kernel.append(combo)
    v, combo = rhs, 0
    for bit in sorted(pivots, reverse=True):
        if v >> bit & 1:
            pv, pc = pivots[bit]
            v ^= pv
            combo ^= pc
    return (None if v else combo), kernel


def _gf2_inverse(rows: list[int], n: int) -> list[int]:
    """Inverse of an n x n GF(2) matrix given as row bitmasks."""
    aug = [(rows[i], 1 << i) for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][0] >> c & 1), None)
        if piv is None:
            raise AssertionError("singular trace matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        for r in range(n):
            if r != c and aug[r][0] >> c & 1:
                aug[r] = (aug[r][0] ^ aug[c][0], aug[r][1] ^ aug[c][1])
    return [aug[i][1] for i in range(n)]


def _factor(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------


class FieldCtx:
    """The field GF(2^n) = GF(2)[x]/(poly)."""

    def __init__(self, n: int, poly: Optional[int] = None):
        if not 2 <= n <= MAX_DEGREE:
            raise FieldError(f"degree n={n} outside [2, {MAX_DEGREE}]")
        if poly is None:
            poly = smallest_irreducible(n)
        check_irreducible(poly, n)
        self.n = n
        self.poly = poly
        self.q = 1 << n
        self.mask = self.q - 1
        self._top = 1 << n
        # Tr(a) = parity(a & trace_mask) since Tr is linear
        self.trace_mask = sum(self._trace_direct(1 << i) << i for i in range(n))
        self.dual = self._dual_basis()

    def __repr__(self) -> str:
        return f"FieldCtx({self.spec})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.n, self.poly) == (other.n, other.poly)

    def __hash__(self) -> int:
        return hash((self.n, self.poly))

    @property
    def spec(self) -> str:
        return f"n={self.n},poly=0x{self.poly:x}"

    # -- scalar arithmetic ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        r = 0
        top, poly = self._top, self.poly
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= poly
        return r

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            a = self.mul(a, a)
        return r

    def inv(self, a: int) -> int:
        """a^(q-2); maps 0 to 0."""
        return self.pow(a, self.q - 2)

    def _trace_direct(self, a: int) -> int:
        s, c = 0, a
        for _ in range(self.n):
            s ^= c
            c = self.mul(c, c)
        assert s in (0, 1), "trace left the prime field"
        return s

    def trace(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    def _dual_basis(self) -> list[int]:
        n = self.n
        # T[i][j] = Tr(t^i * t^j); symmetric, so its inverse gives the dual basis
        rows = [
            sum(self.trace(self.mul(1 << i, 1 << j)) << j for j in range(n))
            for i in range(n)
        ]
        inv = _gf2_inverse(rows, n)
        # d_j = sum_i inv[i][j] t^i
        return [sum(((inv[i] >> j) & 1) << i for i in range(n)) for j in range(n)]

    @cached_property
    def primitive_element(self) -> int:
        order = self.q - 1
        primes = _factor(order)
        for g in range(2, self.q):
            if all(self.pow(g, order // p) != 1 for p in primes):
                return g
        return 1  # q = 2 never reached since n >= 2

    @cached_property
    def exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        """(exp, log) tables for the primitive element.

        exp[e] = g^e for 0 <= e < q-1; log[a] = e for a != 0, log[0] = -1.
        """
        g = self.primitive_element
        order = self.q - 1
        exp = np.empty(order, dtype=np.uint64)
        exp[0] = 1
        m = 1
        while m < order:
            step = min(m, order - m)
            exp[m:m + step] = vec_mul_scalar(self, exp[:step], self.pow(g, m))
            m += step
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp.astype(np.int64)] = np.arange(order, dtype=np.int64)
        return exp, log

    # -- element codec --------------------------------------------------------

    def parse(self, text: str) -> int:
        a = int(text, 16)
        if a >> self.n:
            raise FieldError(f"element {text} has bits above degree {self.n - 1}")
        return a

    def format(self, a: int) -> str:
        return format(a, "x")

    def elements(self) -> range:
        return range(self.q)


def field_new(n: int, poly: Optional[int] = None) -> FieldCtx:
    return FieldCtx(n, poly)


def parse_field_spec(spec: str) -> FieldCtx:
    """Parse "n=<int>[,poly=0x<hex>]"."""
    parts = dict(p.split("=", 1) for p in spec.split(",") if p)
    poly = int(parts["poly"], 16) if "poly" in parts else None
    return FieldCtx(int(parts["n"]), poly)


def gf_mul(ctx: FieldCtx, a: int, b: int) -> int:
    return ctx.mul(a, b)


def gf_pow(ctx: FieldCtx, a: int, e: int) -> int:
    """Square-and-multiply; 0^0 = 1 and 0^e = 0 for e > 0."""
    if e < 0:
        raise ValueError("negative exponent")
    return ctx.pow(a, e)


def trace(ctx: FieldCtx, a: int) -> int:
    return ctx.trace(a)


def quadratic_trace(ctx: FieldCtx, a: int) -> int:
    """Q(a) = sum over i < j of a^(2^i + 2^j), by the direct double sum."""
    conj = [a]
    for _ in range(ctx.n - 1):
        conj.append(ctx.sqr(conj[-1]))
    s = 0
    for i in range(ctx.n):
        for j in range(i + 1, ctx.n):
            s ^= ctx.mul(conj[i], conj[j])
    assert s in (0, 1)
    return s


def quadratic_trace_fast(ctx: FieldCtx, a: int) -> int:
    """Q(a) grouped by Frobenius orbits of index pairs.

    Pairs at distance d < n/2 contribute Tr(a^(1+2^d)); for even n the
    distance n/2 pairs give the half-length sum of b = a^(1+2^(n/2)).
    """
    n = ctx.n
    s = 0
    a2 = a
    for d in range(1, (n - 1) // 2 + 1):
        a2 = ctx.sqr(a2)
        s ^= ctx.trace(ctx.mul(a, a2))
    if n % 2 == 0:
        b = ctx.mul(a, ctx.pow(a, 1 << (n // 2)))
        h = 0
        for _ in range(n // 2):
            h ^= b
            b = ctx.sqr(b)
        assert h in (0, 1)
        s ^= h
    return s


def half_trace_solve(ctx: FieldCtx, c: int) -> Optional[int]:
    """Solve y^2 + y = c; returns the smaller root or None when Tr(c) = 1."""
    if ctx.trace(c):
        return None
    n = ctx.n
    if n % 2:
        y, u = 0, c
        for _ in range((n - 1) // 2 + 1):
            y ^= u
            u = ctx.sqr(ctx.sqr(u))
    else:
        cols = [ctx.sqr(1 << j) ^ (1 << j) for j in range(n)]
        y, _ = gf2_solve(cols, c, n)
        assert y is not None
    assert ctx.sqr(y) ^ y == c
    return min(y, y ^ 1)


def cube_root(ctx: FieldCtx, a: int) -> int:
    if ctx.n % 2 == 0:
        raise FieldError("cube root is only a bijection for odd n")
    return ctx.pow(a, pow(3, -1, ctx.q - 1))


def _beta_columns(ctx: FieldCtx) -> list[int]:
    return [ctx.sqr(ctx.sqr(1 << j)) ^ (1 << j) for j in range(ctx.n)]


def solve_beta(ctx: FieldCtx, c: int) -> Optional[int]:
    """The trace-zero solution of beta^4 + beta = c + 1, or None."""
    if ctx.n % 2 == 0:
        raise FieldError("beta equation is only supported for odd n")
    beta, kernel = gf2_solve(_beta_columns(ctx), c ^ 1, ctx.n)
    if beta is None:
        return None
    assert kernel == [1] or kernel == [], kernel
    if ctx.trace(beta):
        beta ^= 1
    return beta


def dual_basis(ctx: FieldCtx) -> list[int]:
    return list(ctx.dual)


# ---------------------------------------------------------------------------
# vectorised helpers (numpy uint64 arrays of elements)


def vec_mul_scalar(ctx: FieldCtx, xs: np.ndarray, b: int) -> np.ndarray:
    a = xs.astype(np.uint64, copy=True)
    r = np.zeros_like(a)
    top, poly = np.uint64(ctx._top), np.uint64(ctx.poly)
    one = np.uint64(1)
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        if b:
            a <<= one
            a ^= np.where(a & top, poly, np.uint64(0))
    return r


def vec_mul(ctx: FieldCtx, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    a = xs.astype(np.uint64, copy=True)
    b = ys.astype(np.uint64, copy=True)
    r = np.zeros_like(a)
    top, poly = np.uint64(ctx._top), np.uint64(ctx.poly)
    one, zero = np.uint64(1), np.uint64(0)
    for _ in range(ctx.n):
        r ^= np.where(b & one, a, zero)
        b >>= one
        a <<= one
        a ^= np.where(a & top, poly, zero)
    return r


def vec_pow(ctx: FieldCtx, xs: np.ndarray, e: int) -> np.ndarray:
    r = np.ones_like(xs, dtype=np.uint64)
    a = xs.astype(np.uint64)
    while e:
        if e & 1:
            r = vec_mul(ctx, r, a)
        e >>= 1
        if e:
            a = vec_mul(ctx, a, a)
    return r


def vec_trace(ctx: FieldCtx, xs: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(xs.astype(np.uint64) & np.uint64(ctx.trace_mask)) & 1).astype(np.int8)


def span_table(vectors: list[int]) -> np.ndarray:
    """out[y] = XOR of vectors[j] over the set bits j of y."""
    out = np.zeros(1 << len(vectors), dtype=np.uint64)
    for j, v in enumerate(vectors):
        m = 1 << j
        out[m:2 * m] = out[:m] ^ np.uint64(v)
    return out


def all_inverses(ctx: FieldCtx) -> np.ndarray:
    """inv[a] = a^(q-2) for every element, via the exp/log tables."""
    exp, _ = ctx.exp_log
    order = ctx.q - 1
    inv = np.zeros(ctx.q, dtype=np.uint64)
    inv[exp.astype(np.int64)] = exp[(-np.arange(order)) % order]
    return inv


def all_traces(ctx: FieldCtx) -> np.ndarray:
    return vec_trace(ctx, np.arange(ctx.q, dtype=np.uint64))


def all_quadratic_traces(ctx: FieldCtx) -> np.ndarray:
    """Q(a) for every a, using Q(x + y) = Q(x) + Q(y) + Tr(x)Tr(y) + Tr(xy)."""
    n = ctx.n
    out = np.zeros(ctx.q, dtype=np.int8)
    tr = all_traces(ctx)
    for b in range(n):
        m = 1 << b
        tb = 1 << b
        # bits of mask_b: Tr(t^i * t^b)
        mask_b = sum(ctx.trace(ctx.mul(1 << i, tb)) << i for i in range(n))
        low = np.arange(m, dtype=np.uint64)
        cross = (np.bitwise_count(low & np.uint64(mask_b)) & 1).astype(np.int8)
        out[m:2 * m] = out[:m] ^ quadratic_trace(ctx, tb) ^ (tr[:m] & ctx.trace(tb)) ^ cross
    return out
