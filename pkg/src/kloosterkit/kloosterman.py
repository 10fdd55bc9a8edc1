"""Exact binary and ternary Kloosterman sums.

K(a) = sum over x in GF(p^n) of zeta^Tr(x^(q-2) + a x), with 0^(q-2) = 0.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .gf2n import (
    FieldCtx,
    all_inverses,
    all_quadratic_traces,
    all_traces,
    span_table,
    vec_mul_scalar,
    vec_pow,
    vec_trace,
)

MAX_SPECTRUM_DEGREE = 24


class ResourceError(RuntimeError):
    pass


@dataclass
class KSpectrum:
    n: int
    values: np.ndarray  # int64, indexed by element encoding

    def __getitem__(self, a: int) -> int:
        return int(self.values[a])

    def __len__(self) -> int:
        return len(self.values)

    def check_invariants(self) -> None:
        v = self.values
        q = 1 << self.n
        assert v[0] == 0
        assert not (v % 4).any()
        # the x = 0 term shifts the Weil interval: |K - 1| <= 2^(n/2+1)
        assert ((v - 1) ** 2 <= 1 << (self.n + 2)).all()
        assert int(v.sum()) == q
        assert int((v * v).sum()) == q * q

    def value_set(self) -> list[int]:
        return sorted(set(int(x) for x in self.values))


# ---------------------------------------------------------------------------
# binary


@lru_cache(maxsize=8)
def _inverse_signs(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    xs = np.arange(ctx.q, dtype=np.uint64)
    inv = vec_pow(ctx, xs, ctx.q - 2)
    return xs, vec_trace(ctx, inv)


def ksum_naive(ctx: FieldCtx, a: int) -> int:
    """Direct O(q) evaluation, vectorised over x."""
    xs, tr_inv = _inverse_signs(ctx)
    bits = tr_inv ^ vec_trace(ctx, vec_mul_scalar(ctx, xs, a))
    ones = int(bits.sum())
    return ctx.q - 2 * ones


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform; out[u] = sum_y f[y] (-1)^(u.y)."""
    a = np.array(values, dtype=np.int64)
    size = len(a)
    h = 1
    while h < size:
        view = a.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] += hi
        view[:, 1, :] = lo - hi
        h *= 2
    return a


def ksum_all(ctx: FieldCtx) -> KSpectrum:
    """All Kloosterman values by one Walsh-Hadamard transform.

    Writing x in the dual basis, x = sum y_j d_j, gives Tr(a x) = a . y, so
    K(a) is the Walsh coefficient at a of y -> (-1)^Tr(1/x(y)).
    """
    if ctx.n > MAX_SPECTRUM_DEGREE:
        raise ResourceError(f"spectrum for n={ctx.n} exceeds n <= {MAX_SPECTRUM_DEGREE}")
    signs = 1 - 2 * vec_trace(ctx, all_inverses(ctx)).astype(np.int64)
    x_of_y = span_table(ctx.dual).astype(np.int64)
    return KSpectrum(ctx.n, fwht(signs[x_of_y]))


def spectrum_rows(ctx: FieldCtx, spec: KSpectrum):
    tr = all_traces(ctx)
    qt = all_quadratic_traces(ctx)
    for a in range(ctx.q):
        yield {"a_hex": format(a, "x"), "K": int(spec.values[a]), "tr": int(tr[a]), "Q": int(qt[a])}


def write_spectrum_csv(ctx: FieldCtx, spec: KSpectrum, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["a_hex", "K", "tr", "Q"])
    hexes = [format(a, "x") for a in range(ctx.q)]
    w.writerows(zip(hexes, spec.values.tolist(), all_traces(ctx).tolist(), all_quadratic_traces(ctx).tolist()))


def spectrum_json(ctx: FieldCtx, spec: KSpectrum) -> str:
    return json.dumps({"field": ctx.spec, "rows": list(spectrum_rows(ctx, spec))}, indent=1)


# ---------------------------------------------------------------------------
# ternary
#
# Elements of GF(3^n) are ints in base 3: digit i is the coefficient of t^i.


def _p3_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _p3_mod(a: list[int], m: list[int]) -> list[int]:
    a = _p3_trim(list(a))
    dm = len(m) - 1
    inv_lead = m[-1]  # 1 or 2, self-inverse mod 3
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % 3
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % 3
        _p3_trim(a)
    return a


def _p3_mulmod(a: list[int], b: list[int], m: list[int]) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % 3
    return _p3_mod(prod, m)


def _p3_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _p3_trim(list(a)), _p3_trim(list(b))
    while b:
        a, b = b, _p3_mod(a, b)
    return a


def _p3_sub(a: list[int], b: list[int]) -> list[int]:
    size = max(len(a), len(b))
    a = a + [0] * (size - len(a))
    b = b + [0] * (size - len(b))
    return _p3_trim([(x - y) % 3 for x, y in zip(a, b)])


def ternary_irreducible(poly: Sequence[int]) -> Optional[str]:
    """None if poly (low-to-high coefficients) is monic irreducible, else a reason."""
    poly = list(poly)
    n = len(poly) - 1
    if n < 1 or poly[-1] != 1 or any(c not in (0, 1, 2) for c in poly):
        return "not a monic polynomial over GF(3)"
    if n == 1:
        return None
    x = [0, 1]
    xi = x
    for i in range(1, n // 2 + 1):
        # xi <- xi^3
        xi = _p3_mulmod(_p3_mulmod(xi, xi, poly), xi, poly)
        g = _p3_gcd(poly, _p3_sub(xi, x))
        if len(g) > 1:
            return f"gcd(x^(3^{i}) - x, poly) has degree {len(g) - 1}"
    return None


def _int_to_digits(v: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, d = divmod(v, 3)
        out.append(d)
    return out


def _digits_to_int(d: Sequence[int]) -> int:
    v = 0
    for c in reversed(d):
        v = 3 * v + c
    return v


class TernaryFieldCtx:
    def __init__(self, n: int, poly: Optional[Sequence[int]] = None):
        if not 1 <= n <= 12:
            raise ValueError(f"ternary degree n={n} outside [1, 12]")
        if poly is None:
            poly = self._default_poly(n)
        poly = [int(c) for c in poly]
        if len(poly) != n + 1:
            raise ValueError(f"poly must have {n + 1} coefficients")
        reason = ternary_irreducible(poly)
        if reason:
            raise ValueError(f"ternary poly {poly} rejected: {reason}")
        self.n = n
        self.poly = tuple(poly)
        self.q = 3 ** n
        self.trace_vector = [self._trace_direct(3 ** i) for i in range(n)]

    @staticmethod
    def _default_poly(n: int) -> list[int]:
        for low in range(3 ** n):
            poly = _int_to_digits(low, n) + [1]
            if ternary_irreducible(poly) is None:
                return poly
        raise AssertionError("no irreducible polynomial")  # pragma: no cover

    @property
    def spec(self) -> str:
        return f"p=3,n={self.n},poly={''.join(map(str, reversed(self.poly)))}"

    def mul(self, a: int, b: int) -> int:
        prod = _p3_mulmod(_int_to_digits(a, self.n), _int_to_digits(b, self.n), list(self.poly))
        return _digits_to_int(prod)

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def _trace_direct(self, a: int) -> int:
        s = [0] * self.n
        c = a
        for _ in range(self.n):
            s = [(x + y) % 3 for x, y in zip(s, _int_to_digits(c, self.n))]
            c = self.pow(c, 3)
        assert not any(s[1:]), "trace left the prime field"
        return s[0]

    def trace(self, a: int) -> int:
        return sum(d * t for d, t in zip(_int_to_digits(a, self.n), self.trace_vector)) % 3

    def digits(self) -> np.ndarray:
        """(q, n) array of coefficient digits for every element."""
        idx = np.arange(self.q)
        return np.stack([(idx // 3 ** i) % 3 for i in range(self.n)], axis=1)

    def trace_form(self) -> np.ndarray:
        """M[i][j] = Tr(t^i t^j) mod 3, so Tr(a x) = digits(a) M digits(x)."""
        n = self.n
        return np.array(
            [[self.trace(self.mul(3 ** i, 3 ** j)) for j in range(n)] for i in range(n)],
            dtype=np.int64,
        )

    @property
    def inverse_table(self) -> np.ndarray:
        try:
            return self._inverse_table
        except AttributeError:
            pass
        inv = np.zeros(self.q, dtype=np.int64)
        if self.q > 1:
            # enumerate the cyclic group from a generator
            order = self.q - 1
            primes = [p for p in range(2, order + 1) if order % p == 0 and all(p % r for r in range(2, p))]
            g = next(g for g in range(1, self.q) if all(self.pow(g, order // p) != 1 for p in primes))
            powers = [1]
            for _ in range(order - 1):
                powers.append(self.mul(powers[-1], g))
            for e, x in enumerate(powers):
                inv[x] = powers[(-e) % order]
        self._inverse_table = inv
        return inv


def ternary_field_new(n: int, poly: Optional[Sequence[int]] = None) -> TernaryFieldCtx:
    return TernaryFieldCtx(n, poly)


def _ternary_counts(ctx: TernaryFieldCtx, a_digits: np.ndarray) -> np.ndarray:
    """Counts N_0, N_1, N_2 per row of ``a_digits``; shape (len, 3)."""
    D = ctx.digits()
    tr_inv = (D[ctx.inverse_table] @ np.array(ctx.trace_vector)) % 3
    tr_ax = (a_digits @ ctx.trace_form() @ D.T) % 3
    total = (tr_ax + tr_inv[None, :]) % 3
    return np.stack([(total == c).sum(axis=1) for c in range(3)], axis=1)


def _ternary_values(counts: np.ndarray) -> np.ndarray:
    if (counts[:, 1] != counts[:, 2]).any():
        raise AssertionError("ternary Kloosterman sum is not rational: N1 != N2")
    return counts[:, 0] - counts[:, 1]


def ternary_ksum(ctx: TernaryFieldCtx, a: int) -> int:
    a_digits = np.array([_int_to_digits(a, ctx.n)], dtype=np.int64)
    return int(_ternary_values(_ternary_counts(ctx, a_digits))[0])


def ternary_ksum_all(ctx: TernaryFieldCtx) -> np.ndarray:
    return _ternary_values(_ternary_counts(ctx, ctx.digits()))
