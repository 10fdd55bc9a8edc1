"""Gauss sums over GF(2^n) in the Galois ring, and their 2-adic structure.

g(j) = -sum_{x != 0} omega(x)^(-j) (-1)^Tr(x) is computed exactly in
GR(2^k, n); at p = 2 the additive character takes values +-1 and the
uniformiser is -2, so everything stays in the unramified ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .galois_ring import IntResidue, RingCtx, RingError
from .gf2n import vec_trace
from .kloosterman import ksum_naive


class PrecisionError(ValueError):
    pass


def wt2(j: int) -> int:
    return bin(j).count("1")


def nu2(value: int, k: int) -> int:
    """2-adic valuation of a residue mod 2^k (k when the residue is 0)."""
    value %= 1 << k
    if value == 0:
        return k
    return (value & -value).bit_length() - 1


def _check_j(ring: RingCtx, j: int) -> None:
    if not 1 <= j <= ring.base.q - 2:
        raise ValueError(f"j={j} outside [1, {ring.base.q - 2}]")


@lru_cache(maxsize=16)
def _trace_signs(ring: RingCtx) -> np.ndarray:
    """(-1)^Tr(g^e) as uint64 residues mod 2^k, for e = 0..q-2."""
    exp, _ = ring.base.exp_log
    tr = vec_trace(ring.base, exp).astype(np.uint64)
    minus_one = np.uint64(ring.modulus - 1)
    return np.where(tr == 1, minus_one, np.uint64(1))


def _gauss_vector(ring: RingCtx, j: int) -> np.ndarray:
    order = ring.base.q - 1
    W = ring.omega_table
    e = np.arange(order, dtype=np.int64)
    # omega(g^e)^(-j) = W[-j e mod (q-1)]
    terms = W[(-j * e) % order] * _trace_signs(ring)[:, None]
    total = terms.sum(axis=0, dtype=np.uint64)
    return (np.uint64(0) - total) & np.uint64(ring.modulus - 1)


def gauss_sum(ring: RingCtx, j: int) -> IntResidue:
    _check_j(ring, j)
    vec = _gauss_vector(ring, j)
    if vec[1:].any():
        raise RingError(f"g({j}) is not Frobenius-fixed: {vec.tolist()}")
    return IntResidue(int(vec[0]), ring.modulus)


@dataclass
class GaussTable:
    ring: RingCtx
    g: dict[int, IntResidue]

    @classmethod
    def build(cls, ring: RingCtx) -> "GaussTable":
        return cls(ring, {j: gauss_sum(ring, j) for j in range(1, ring.base.q - 1)})

    def __getitem__(self, j: int) -> IntResidue:
        return self.g[j]


def stickelberger_check(ring: RingCtx, j: int) -> bool:
    """g(j) == (-2)^wt mod 2^(wt+1), and nu_2(g(j)) == wt."""
    w = wt2(j)
    if w + 1 > ring.k:
        raise PrecisionError(f"need k >= {w + 1} for j={j}, have k={ring.k}")
    g = gauss_sum(ring, j).value
    mod = 1 << (w + 1)
    congruent = (g - (-2) ** w) % mod == 0
    return congruent and nu2(g, ring.k) == w


def gamma2(x: int, m: int) -> IntResidue:
    """2-adic Gamma at the representative of x in [0, 2^m), reduced mod 2^m.

    Gamma_2(x) = (-1)^x * product of odd t < x.  The result depends only on
    x mod 2^m for m >= 3; at m = 2 it is determined only up to sign.
    """
    if m < 1:
        raise ValueError("precision must be >= 1")
    mod = 1 << m
    x %= mod
    prod = 1
    for t in range(1, x, 2):
        prod = prod * t % mod
    if x & 1:
        prod = -prod % mod
    return IntResidue(prod, mod)


def gross_koblitz_unit(n: int, j: int, m: int) -> IntResidue:
    """Product of Gamma_2(<2^i j / (q-1)>) over i < n, mod 2^m."""
    q = 1 << n
    mod = 1 << m
    inv = pow(q - 1, -1, mod)
    prod = 1
    for i in range(n):
        frac = ((j << i) % (q - 1)) * inv % mod
        prod = prod * gamma2(frac, m).value % mod
    return IntResidue(prod, mod)


def gross_koblitz_rhs(n: int, j: int, m: int) -> IntResidue:
    """(-2)^wt(j) * unit product, exact mod 2^(m + wt(j))."""
    q = 1 << n
    if not 1 <= j <= q - 2:
        raise ValueError(f"j={j} outside [1, {q - 2}]")
    if m < 3:
        raise PrecisionError("Gamma_2 residues need m >= 3")
    w = wt2(j)
    mod = 1 << (m + w)
    return IntResidue((-2) ** w * gross_koblitz_unit(n, j, m).value % mod, mod)


def gk_check(ring: RingCtx, j: int, m: int | None = None) -> bool:
    """Compare g(j) with the Gross-Koblitz product at precision min(k, m + wt).

    ``m`` is the Gamma_2 precision, defaulting to the ring precision.
    """
    _check_j(ring, j)
    w = wt2(j)
    if ring.k < w + 3:
        raise PrecisionError(f"need k >= {w + 3} for j={j}, have k={ring.k}")
    if m is None:
        m = ring.k
    common = 1 << min(ring.k, m + w)
    lhs = gauss_sum(ring, j).value
    rhs = gross_koblitz_rhs(ring.n, j, m).value
    return (lhs - rhs) % common == 0


@lru_cache(maxsize=8)
def _fourier_sums(ring: RingCtx) -> np.ndarray:
    """-sum_j g(j)^2 omega(a)^j for every a, indexed by element encoding."""
    base = ring.base
    order = base.q - 1
    W = ring.omega_table
    mask = np.uint64(ring.modulus - 1)
    e = np.arange(order, dtype=np.int64)
    acc = np.zeros((order, ring.n), dtype=np.uint64)
    table = GaussTable.build(ring)
    for j in range(1, order):
        g2 = np.uint64(table[j].value ** 2 % ring.modulus)
        acc += W[(j * e) % order] * g2
    acc = (np.uint64(0) - acc) & mask
    if acc[:, 1:].any():
        raise RingError("Fourier sum is not a scalar")
    exp, _ = base.exp_log
    out = np.zeros(base.q, dtype=np.int64)
    out[exp.astype(np.int64)] = acc[:, 0].astype(np.int64)
    return out


def fourier_sum(ring: RingCtx, a: int) -> IntResidue:
    if ring.k != ring.n:
        raise PrecisionError(f"Fourier congruence needs k = n = {ring.n}, have k={ring.k}")
    return IntResidue(int(_fourier_sums(ring)[a]), ring.modulus)


def fourier_congruence_check(ring: RingCtx, a: int) -> bool:
    """K(a) == -sum_j g(j)^2 omega(a)^j  (mod 2^n)."""
    return fourier_sum(ring, a).value == ksum_naive(ring.base, a) % ring.modulus
