"""Exhaustive theorem verification and congruence-sieved zero search."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .congruences import (
    _literal_table_mod3,
    _mod3_rule,
    crt,
    CongruenceClass,
    lisonek_div16,
    mod16_class,
    mod3_data,
    mod64_from_lifted_pair,
    mod64_from_lifted_trace,
)
from .galois_ring import RingCtx, all_lifted_quadratic_traces, all_lifted_traces
from .gauss import gauss_sum, gk_check, fourier_sum, stickelberger_check, wt2
from .gf2n import FieldCtx, all_quadratic_traces, all_traces
from .kloosterman import (
    MAX_SPECTRUM_DEGREE,
    KSpectrum,
    ResourceError,
    TernaryFieldCtx,
    ksum_all,
    ksum_naive,
    ternary_ksum_all,
)

MAX_LISTED_MISMATCHES = 50

# (lowest valid n, odd n only, default range)
THEOREMS: dict[str, tuple[int, bool, tuple[int, int]]] = {
    "mod8": (3, False, (3, 14)),
    "mod16": (4, False, (4, 14)),
    "lisonek": (4, False, (4, 14)),
    "mod48": (5, True, (5, 13)),
    "mod64": (6, False, (6, 14)),
    "mod192": (7, True, (7, 13)),
    "ternary9": (2, False, (2, 7)),
    "stickelberger": (2, False, (4, 8)),
    "grosskoblitz": (3, False, (3, 8)),
    "fourier5": (2, False, (4, 8)),
    "range-divisibility": (2, False, (4, 14)),
}


@dataclass
class DegreeResult:
    n: int
    field_poly: str
    elements_checked: int = 0
    informational: bool = False
    mismatch_count: int = 0
    mismatches: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def mismatch(self, a_hex: str, expected, actual) -> None:
        self.mismatch_count += 1
        if len(self.mismatches) < MAX_LISTED_MISMATCHES:
            self.mismatches.append({"a_hex": a_hex, "expected": expected, "actual": actual})


@dataclass
class VerifyReport:
    theorem: str
    n_min: int
    n_max: int
    degrees: list = field(default_factory=list)
    adjudications: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(d.mismatch_count == 0 for d in self.degrees if not d.informational)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary_lines(self) -> list[str]:
        lines = []
        for d in self.degrees:
            tag = "info" if d.informational else ("ok" if d.mismatch_count == 0 else "FAIL")
            lines.append(
                f"{self.theorem} n={d.n}: {tag} checked={d.elements_checked} mismatches={d.mismatch_count}"
            )
        for key, value in self.adjudications.items():
            lines.append(f"{self.theorem} adjudication {key}: {value}")
        lines.append(f"{self.theorem}: {'PASS' if self.passed else 'FAIL'}")
        return lines


# ---------------------------------------------------------------------------
# per-theorem degree checks


def _compare_all(res: DegreeResult, predicted: np.ndarray, actual: np.ndarray, skip_zero=False) -> None:
    start = 1 if skip_zero else 0
    res.elements_checked = len(actual) - start
    for a in np.nonzero(predicted[start:] != actual[start:])[0] + start:
        res.mismatch(format(int(a), "x"), int(predicted[a]), int(actual[a]))


def _check_mod8(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    _compare_all(res, 4 * all_traces(ctx).astype(np.int64), K % 8)


def _check_mod16(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    table = np.array([[mod16_class(t, q) for q in (0, 1)] for t in (0, 1)])
    pred = table[all_traces(ctx), all_quadratic_traces(ctx)]
    _compare_all(res, pred, K % 16)


def _check_lisonek(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    tr, qt = all_traces(ctx), all_quadratic_traces(ctx)
    for a in range(ctx.q):
        pred = lisonek_div16(ctx, a)
        if pred != (K[a] % 16 == 0):
            res.mismatch(format(a, "x"), f"div16={pred}", int(K[a]) % 16)
        elif pred != (mod16_class(int(tr[a]), int(qt[a])) == 0):
            res.mismatch(format(a, "x"), f"div16={pred}", "mod16 table disagrees")
    res.elements_checked = ctx.q


def _mod3_arrays(ctx: FieldCtx) -> tuple[np.ndarray, np.ndarray]:
    cube_tr = np.zeros(ctx.q, dtype=np.int64)
    beta_tr = np.zeros(ctx.q, dtype=np.int64)
    for a in range(1, ctx.q):
        cube_tr[a], beta_tr[a] = mod3_data(ctx, a)
    return cube_tr, beta_tr


def _check_mod48(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    tr, qt = all_traces(ctx), all_quadratic_traces(ctx)
    cube_tr, beta_tr = _mod3_arrays(ctx)
    literal_bad = 0
    for a in range(1, ctx.q):
        m16 = CongruenceClass(mod16_class(int(tr[a]), int(qt[a])), 16)
        pred = crt(m16, CongruenceClass(_mod3_rule(int(cube_tr[a]), int(beta_tr[a]), ctx.n), 3))
        lit = crt(m16, CongruenceClass(_literal_table_mod3(int(cube_tr[a]), int(beta_tr[a]), ctx.n), 3))
        if not pred.matches(int(K[a])):
            res.mismatch(format(a, "x"), pred.residue, int(K[a]) % 48)
        if not lit.matches(int(K[a])):
            literal_bad += 1
    res.elements_checked = ctx.q - 1
    report.adjudications[f"n={ctx.n} literal 'n+Tr(beta^3)' table mismatches"] = literal_bad
    res.notes.append(f"literal table reading mismatches: {literal_bad}")


def _mod64_pred(ctx: FieldCtx, res: DegreeResult) -> np.ndarray:
    ring = RingCtx(ctx, 4)
    that = all_lifted_traces(ring)
    qhat = all_lifted_quadratic_traces(ring)
    table = np.array([mod64_from_lifted_trace(int(t)) for t in that])
    pair = np.array([mod64_from_lifted_pair(int(t), int(q)) for t, q in zip(that, qhat)])
    for a in np.nonzero(table != pair)[0]:
        res.mismatch(format(int(a), "x"), int(table[a]), f"-36T-16Q path gives {int(pair[a])}")
    return table


def _check_mod64(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    table = _mod64_pred(ctx, res)
    _compare_all(res, table, K % 64)


def _check_mod192(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    K = ksum_all(ctx).values
    m64 = _mod64_pred(ctx, res)
    cube_tr, beta_tr = _mod3_arrays(ctx)
    pred = np.zeros(ctx.q, dtype=np.int64)
    for a in range(1, ctx.q):
        m3 = _mod3_rule(int(cube_tr[a]), int(beta_tr[a]), ctx.n)
        pred[a] = crt(CongruenceClass(int(m64[a]), 64), CongruenceClass(m3, 3)).residue
    _compare_all(res, pred, K % 192, skip_zero=True)


def _check_ternary9(n: int, res: DegreeResult, report: VerifyReport) -> None:
    ctx = TernaryFieldCtx(n)
    res.field_poly = ctx.spec
    K = ternary_ksum_all(ctx)
    bound = 2 * math.sqrt(3 ** n)
    lit_bad = shifted_bad = 0
    for a in range(ctx.q):
        k = int(K[a])
        pred = 3 * ctx.trace(a)
        if k % 9 != pred:
            res.mismatch(np.base_repr(a, 3), pred, k % 9)
        if k % 3:
            res.mismatch(np.base_repr(a, 3), "0 (mod 3)", k % 3)
        # |v| < 2 sqrt(3^n)  <=>  v^2 < 4 * 3^n
        lit_bad += not k * k < 4 * 3 ** n
        shifted_bad += not (k - 1) ** 2 < 4 * 3 ** n
    res.elements_checked = ctx.q
    report.adjudications[f"n={n} ternary range"] = {
        "min": int(K.min()), "max": int(K.max()), "bound": bound,
        "violations |K| < 2*3^(n/2)": lit_bad, "violations |K-1| < 2*3^(n/2)": shifted_bad,
    }


def _check_stickelberger(ctx: FieldCtx, res: DegreeResult, report: VerifyReport, k: int = 8) -> None:
    ring = RingCtx(ctx, k)
    for j in range(1, ctx.q - 1):
        if wt2(j) + 1 > k:
            continue
        res.elements_checked += 1
        if not stickelberger_check(ring, j):
            res.mismatch(str(j), f"(-2)^{wt2(j)}", gauss_sum(ring, j).value)


def _check_grosskoblitz(ctx: FieldCtx, res: DegreeResult, report: VerifyReport, m: int = 6) -> None:
    ring = RingCtx(ctx, max(m, ctx.n + 2))
    for j in range(1, ctx.q - 1):
        res.elements_checked += 1
        if not gk_check(ring, j, m):
            res.mismatch(str(j), "Gross-Koblitz product", gauss_sum(ring, j).value)
    g1 = gauss_sum(ring, 1).value % 16
    report.adjudications[f"n={ctx.n} g(1) mod 16"] = g1


def _check_fourier5(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    ring = RingCtx(ctx, ctx.n)
    K = ksum_all(ctx).values
    pred = np.array([fourier_sum(ring, a).value for a in range(ctx.q)])
    _compare_all(res, pred, K % ctx.q)


def _check_range(ctx: FieldCtx, res: DegreeResult, report: VerifyReport) -> None:
    spec = ksum_all(ctx)
    K = spec.values
    n = ctx.n
    q = ctx.q
    for a in np.nonzero(K % 4)[0]:
        res.mismatch(format(int(a), "x"), "0 (mod 4)", int(K[a]) % 4)
    for a in np.nonzero((K - 1) ** 2 > 1 << (n + 2))[0]:
        res.mismatch(format(int(a), "x"), "|K-1| <= 2^(n/2+1)", int(K[a]))
    if int(K.sum()) != q:
        res.mismatch("*", f"sum K = {q}", int(K.sum()))
    if int((K * K).sum()) != q * q:
        res.mismatch("*", f"sum K^2 = {q * q}", int((K * K).sum()))
    res.elements_checked = q
    literal = int((K * K > 1 << (n + 2)).sum())
    entry = {"min": int(K.min()), "max": int(K.max()), "bound 2^(n/2+1)": 2 ** (n / 2 + 1),
             "violations |K| <= 2^(n/2+1)": literal}
    if n % 2 == 0:
        attained = set(int(v) for v in K)
        b = 1 << (n // 2 + 1)
        stated = set(range(-b, b + 1, 4))
        shifted = {v for v in range(-b, b + 1, 4) if 1 - b <= v <= 1 + b}
        entry["attained == stated range"] = attained == stated
        entry["attained == shifted range"] = attained == shifted
        entry["missing from stated range"] = sorted(stated - attained)
    report.adjudications[f"n={n} value range"] = entry


_CHECKS: dict[str, Callable] = {
    "mod8": _check_mod8,
    "mod16": _check_mod16,
    "lisonek": _check_lisonek,
    "mod48": _check_mod48,
    "mod64": _check_mod64,
    "mod192": _check_mod192,
    "stickelberger": _check_stickelberger,
    "grosskoblitz": _check_grosskoblitz,
    "fourier5": _check_fourier5,
    "range-divisibility": _check_range,
}


def run_verify(theorem: str, n_min: Optional[int] = None, n_max: Optional[int] = None) -> VerifyReport:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem id {theorem!r}; choose from {sorted(THEOREMS)}")
    lowest, odd_only, default = THEOREMS[theorem]
    n_min = default[0] if n_min is None else n_min
    n_max = default[1] if n_max is None else n_max
    report = VerifyReport(theorem, n_min, n_max)
    for n in range(n_min, n_max + 1):
        if odd_only and n % 2 == 0:
            report.adjudications[f"n={n}"] = "skipped: stated for odd n only"
            continue
        if theorem == "ternary9":
            res = DegreeResult(n, "")
            _check_ternary9(n, res, report)
        else:
            ctx = FieldCtx(n)
            res = DegreeResult(n, f"0x{ctx.poly:x}")
            _CHECKS[theorem](ctx, res, report)
        if n < lowest:
            res.informational = True
            res.notes.append(f"below validity bound n >= {lowest}")
        report.degrees.append(res)
    return report


# ---------------------------------------------------------------------------


def run_zeros(n: int, poly: Optional[int] = None) -> list[int]:
    """All a with K(a) = 0, sieving candidates by the mod-16 and mod-64 classes."""
    if n > MAX_SPECTRUM_DEGREE:
        raise ResourceError(f"zero search limited to n <= {MAX_SPECTRUM_DEGREE}, got {n}")
    ctx = FieldCtx(n, poly)
    # each sieve stage is only sound inside its validity range
    keep = np.ones(ctx.q, dtype=bool)
    if n >= 3:
        keep &= all_traces(ctx) == 0
    if n >= 4:
        keep &= all_quadratic_traces(ctx) == 0
    if 6 <= n <= 16:
        keep &= all_lifted_traces(RingCtx(ctx, 4)) % 16 == 0
    candidates = np.nonzero(keep)[0]
    if len(candidates) * ctx.q <= 1 << 26:
        return [int(a) for a in candidates if ksum_naive(ctx, int(a)) == 0]
    K = ksum_all(ctx).values
    return [int(a) for a in candidates if K[a] == 0]


def classification_rows(ctx: FieldCtx, spectrum: Optional[KSpectrum] = None):
    """Rows of the classification CSV for every element."""
    K = (spectrum or ksum_all(ctx)).values
    tr, qt = all_traces(ctx), all_quadratic_traces(ctx)
    n = ctx.n
    m64 = None
    if n >= 6:
        that = all_lifted_traces(RingCtx(ctx, 4))
        m64 = [mod64_from_lifted_trace(int(t)) for t in that]
    for a in range(ctx.q):
        k = int(K[a])
        preds = {
            8: 4 * int(tr[a]),
            16: mod16_class(int(tr[a]), int(qt[a])),
            48: None,
            64: m64[a] if m64 else None,
            192: None,
        }
        if n % 2 and n >= 5 and a:
            m3 = _mod3_rule(*mod3_data(ctx, a), n)
            preds[48] = crt(CongruenceClass(preds[16], 16), CongruenceClass(m3, 3)).residue
            if m64:
                preds[192] = crt(CongruenceClass(m64[a], 64), CongruenceClass(m3, 3)).residue
        flags = "".join("-" if p is None else ("Y" if k % m == p else "N") for m, p in preds.items())
        yield {
            "a_hex": format(a, "x"),
            "K_exact": k,
            **{f"pred_mod{m}": ("" if p is None else p) for m, p in preds.items()},
            "match_flags": flags,
        }


CLASSIFICATION_FIELDS = [
    "a_hex", "K_exact", "pred_mod8", "pred_mod16", "pred_mod48", "pred_mod64", "pred_mod192", "match_flags",
]
