"""Galois ring GR(2^k, n) = (Z/2^k)[x]/(f) and Teichmueller lifts.

f is the {0,1}-coefficient lift of the binary field's defining polynomial.
Ring elements are tuples of n ints in [0, 2^k), constant term first.

Scalar operations (``gr_mul``, ``teichmuller``, ``lifted_trace`` ...) follow
the definitions literally.  ``RingCtx.omega_table`` enumerates all
Teichmueller values as powers of the lift of a primitive element, which the
batch routines and the Gauss-sum module build on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gf2n import FieldCtx, parse_field_spec

RingElement = tuple


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class IntResidue:
    value: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} not reduced mod {self.modulus}")

    def reduce(self, modulus: int) -> "IntResidue":
        if self.modulus % modulus:
            raise ValueError(f"cannot reduce mod {self.modulus} to mod {modulus}")
        return IntResidue(self.value % modulus, modulus)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


class RingCtx:
    def __init__(self, base: FieldCtx, k: int):
        if not 1 <= k <= 32:
            raise RingError(f"precision k={k} outside [1, 32]")
        self.base = base
        self.n = base.n
        self.k = k
        self.modulus = 1 << k
        self._m = self.modulus - 1
        # monic lift; only the low n coefficients are stored
        self.lifted_poly = tuple((base.poly >> i) & 1 for i in range(self.n + 1))
        self.tau = self.teichmuller_lift(self.lift(2))

    def __repr__(self) -> str:
        return f"RingCtx({self.spec})"

    @property
    def spec(self) -> str:
        return f"{self.base.spec},k={self.k}"

    # -- basic arithmetic -----------------------------------------------------

    @property
    def zero(self) -> RingElement:
        return (0,) * self.n

    @property
    def one(self) -> RingElement:
        return (1,) + (0,) * (self.n - 1)

    def scalar(self, c: int) -> RingElement:
        return (c & self._m,) + (0,) * (self.n - 1)

    def lift(self, a: int) -> RingElement:
        """Coefficient-wise {0,1} lift of a field element."""
        return tuple((a >> i) & 1 for i in range(self.n))

    def reduce2(self, u: RingElement) -> int:
        return sum((c & 1) << i for i, c in enumerate(u))

    def add(self, u: RingElement, v: RingElement) -> RingElement:
        m = self._m
        return tuple((a + b) & m for a, b in zip(u, v))

    def mul(self, u: RingElement, v: RingElement) -> RingElement:
        n, m = self.n, self._m
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    prod[i + j] += a * b
        f = self.lifted_poly
        # x^n = -(f_0 + ... + f_{n-1} x^{n-1})
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(n):
                    if f[i]:
                        prod[d - n + i] -= c
        return tuple(c & m for c in prod[:n])

    def pow(self, u: RingElement, e: int) -> RingElement:
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, u)
            e >>= 1
            if e:
                u = self.mul(u, u)
        return r

    def frobenius_power(self, u: RingElement) -> RingElement:
        """u^(2^n)."""
        for _ in range(self.n):
            u = self.mul(u, u)
        return u

    def teichmuller_lift(self, u: RingElement) -> RingElement:
        """Iterate u <- u^(2^n) to the fixpoint; each round gains at least one bit."""
        for _ in range(self.k + 1):
            nxt = self.frobenius_power(u)
            if nxt == u:
                return u
            u = nxt
        raise RingError("Teichmueller iteration did not reach a fixpoint")

    def scalar_value(self, u: RingElement) -> int:
        if any(u[1:]):
            raise RingError(f"expected a Frobenius-fixed scalar, got {u}")
        return u[0]

    def format(self, u: RingElement) -> str:
        return ",".join(str(c) for c in u)

    def parse(self, text: str) -> RingElement:
        coeffs = [int(c) & self._m for c in text.split(",")]
        if len(coeffs) != self.n:
            raise RingError(f"expected {self.n} coefficients")
        return tuple(coeffs)

    # -- batch tables ---------------------------------------------------------

    def mul_matrix(self, c: RingElement) -> np.ndarray:
        """M with (u @ M) = u * c, as uint64 (arithmetic wraps mod 2^64)."""
        rows = [self.mul(tuple(int(i == j) for j in range(self.n)), c) for i in range(self.n)]
        return np.array(rows, dtype=np.uint64)

    @cached_property
    def omega_table(self) -> np.ndarray:
        """W[e] = omega(g)^e for 0 <= e < q-1, g the field's primitive element.

        Shape (q-1, n), dtype uint64, coefficients reduced mod 2^k.
        """
        order = self.base.q - 1
        wg = self.teichmuller_lift(self.lift(self.base.primitive_element))
        W = np.zeros((order, self.n), dtype=np.uint64)
        W[0, 0] = 1
        m = 1
        mask = np.uint64(self._m)
        while m < order:
            step = min(m, order - m)
            W[m:m + step] = (W[:step] @ self.mul_matrix(self.pow(wg, m))) & mask
            m += step
        return W


def ring_new(base: FieldCtx, k: int) -> RingCtx:
    return RingCtx(base, k)


def parse_ring_spec(spec: str) -> RingCtx:
    parts = spec.split(",")
    k = next(int(p[2:]) for p in parts if p.startswith("k="))
    field = parse_field_spec(",".join(p for p in parts if not p.startswith("k=")))
    return RingCtx(field, k)


def gr_mul(ctx: RingCtx, a: RingElement, b: RingElement) -> RingElement:
    return ctx.mul(a, b)


def teichmuller(ctx: RingCtx, a: int) -> RingElement:
    """omega(a): the unique (q-1)-th root of unity (or 0) reducing to a."""
    if a == 0:
        return ctx.zero
    return ctx.teichmuller_lift(ctx.lift(a))


def _conjugate_sum(ctx: RingCtx, w: RingElement, exps) -> int:
    conj = [w]
    for _ in range(ctx.n - 1):
        conj.append(ctx.mul(conj[-1], conj[-1]))
    total = ctx.zero
    for term in exps(conj):
        total = ctx.add(total, term)
    return ctx.scalar_value(total)


def lifted_trace(ctx: RingCtx, a: int) -> IntResidue:
    """Sum of omega(a)^(2^i) over i < n."""
    value = _conjugate_sum(ctx, teichmuller(ctx, a), lambda conj: conj)
    return IntResidue(value, ctx.modulus)


def lifted_quadratic_trace(ctx: RingCtx, a: int) -> IntResidue:
    """Sum of omega(a)^(2^i + 2^j) over i < j < n."""
    n = ctx.n

    def pairs(conj):
        for i in range(n):
            for j in range(i + 1, n):
                yield ctx.mul(conj[i], conj[j])

    value = _conjugate_sum(ctx, teichmuller(ctx, a), pairs)
    return IntResidue(value, ctx.modulus)


def _orbit_sums(ctx: RingCtx, multipliers: list[int]) -> np.ndarray:
    """For every field element a, sum_m omega(a)^m as a scalar array mod 2^k."""
    base = ctx.base
    order = base.q - 1
    W = ctx.omega_table
    exp, _ = base.exp_log
    e = np.arange(order, dtype=np.int64)
    acc = np.zeros((order, ctx.n), dtype=np.uint64)
    for mult in multipliers:
        acc += W[(e * (mult % order)) % order]
    acc &= np.uint64(ctx._m)
    if acc[:, 1:].any():
        raise RingError("orbit sum is not a scalar")
    out = np.zeros(base.q, dtype=np.int64)
    out[exp.astype(np.int64)] = acc[:, 0].astype(np.int64)
    return out


def all_lifted_traces(ctx: RingCtx) -> np.ndarray:
    """T^(a) mod 2^k for every a, indexed by element encoding."""
    return _orbit_sums(ctx, [1 << i for i in range(ctx.n)])


def all_lifted_quadratic_traces(ctx: RingCtx) -> np.ndarray:
    n = ctx.n
    return _orbit_sums(ctx, [(1 << i) + (1 << j) for i in range(n) for j in range(i + 1, n)])
