"""Executable checks of the structural results behind the symmetry set.

Every check returns a :class:`VerificationReport`; nothing here raises on a
failed check, so a suite can run to completion and report all failures.
"""

from __future__ import annotations

import cmath
import random
import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .hopping import (
    SignSeq,
    band_mul,
    band_poly_apply,
    build_periodic_truncation,
    build_truncation,
    hopping_poly,
    symbol_matrix,
)
from .polyring import IntPoly, compose, roots_shifted

TAIL = (-1, 1)


@dataclass
class VerificationReport:
    name: str
    params: dict
    passed: bool
    worst_residual: float = 0.0
    failure: str | None = None
    checked: int = 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = " ".join(f"{k}={_fmt_param(v)}" for k, v in self.params.items())
        out = f"{status} {self.name} {params} {self.worst_residual:.3e}"
        if self.failure:
            out += f" [{self.failure}]"
        return out

    def __bool__(self) -> bool:
        return self.passed


def _fmt_param(v) -> str:
    if isinstance(v, (tuple, list)):
        return "(" + ",".join(_fmt_param(x) for x in v) + ")"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


# ---------------------------------------------------------------------------
# the sequence c
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionC:
    """Period data of the sequence ``c`` built from ``b`` and ``k``.

    ``b_period`` may be ``b`` doubled: when ``b`` has odd length the anchor
    only recurs after two passes.
    """

    b_period: SignSeq
    k: SignSeq
    c_period: SignSeq

    @property
    def m(self) -> int:
        return len(self.k)

    def c(self, i: int) -> int:
        """``c_i`` for any integer ``i`` (``c_period`` holds ``c_1..c_L``)."""
        return self.c_period[(i - 1) % len(self.c_period)]

    def b(self, r: int) -> int:
        return self.b_period[(r - 1) % len(self.b_period)]


def even_period(b: Sequence[int]) -> SignSeq:
    """``b`` itself if even, otherwise ``b`` repeated twice (same operator)."""
    b = SignSeq(b)
    return b if b.is_even() else b.doubled()


def build_c(b: Sequence[int], k: Sequence[int]) -> ConstructionC:
    """Periodic sequence ``c`` with ``c_0 = 1``, ``c_1 = -1``, the middle of
    every m-block copied from ``k``, ``c_{rm+1} = -c_{rm}`` and every block
    product ``c_{(r-1)m+1} ... c_{rm}`` equal to ``b_r``.
    """
    b, k = SignSeq(b), SignSeq(k)
    m = len(k)
    if m < 2 or tuple(k[-2:]) != TAIL:
        raise ValueError(f"k must end in (-1, 1), got {tuple(k)}")
    if not b.is_even():
        raise ValueError(f"b must have an even period, got {tuple(b)}")
    middle = 1
    for x in k[: m - 2]:
        middle *= x

    def blocks(bp: SignSeq) -> tuple[list[int], int]:
        # c_1..c_{nm} for one pass over bp, plus the value c_{nm}
        seq = []
        anchor = 1  # c_0
        for r in range(1, len(bp) + 1):
            nxt = -bp[r - 1] * anchor * middle  # c_{rm}
            # block r covers c_{(r-1)m+1} .. c_{rm}
            seq.append(-anchor)
            seq.extend(k[: m - 2])
            seq.append(nxt)
            anchor = nxt
        return seq, anchor

    seq, last = blocks(b)
    if last != 1:
        b = b.doubled()
        seq, last = blocks(b)
    assert last == 1
    return ConstructionC(b, k, SignSeq(seq))


# ---------------------------------------------------------------------------
# symbol-level checks
# ---------------------------------------------------------------------------


def _matrix_poly(p: IntPoly, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    out = np.zeros_like(a)
    eye = np.eye(n, dtype=a.dtype)
    for c in reversed(p.coeffs):
        out = out @ a + c * eye
    return out


def verify_prop1(k: Sequence[int], phis: Sequence[float], tol: float = 1e-9) -> VerificationReport:
    """``p_k(a^k(φ))`` equals ``2cos(φ) I`` (even k) or ``-2i sin(φ) I`` (odd k)."""
    k = SignSeq(k)
    p = hopping_poly(k)
    m = len(k)
    worst, failure = 0.0, None
    for phi in phis:
        target = 2 * math.cos(phi) if k.is_even() else -2j * math.sin(phi)
        diff = np.abs(_matrix_poly(p, symbol_matrix(k, phi)) - target * np.eye(m))
        r = float(diff.max())
        if r > worst:
            worst = r
        if r > tol and failure is None:
            i, j = np.unravel_index(int(diff.argmax()), diff.shape)
            failure = f"phi={phi:.6g} entry=({i},{j})"
    return VerificationReport("prop1", {"k": tuple(k), "phis": len(phis)}, failure is None, worst, failure, len(phis))


def chebyshev_phis(n: int) -> list[float]:
    """``n`` Chebyshev-spaced angles in ``[0, 2π)``."""
    return [math.pi * (1 - math.cos(math.pi * (j + 0.5) / n)) for j in range(n)]


# ---------------------------------------------------------------------------
# truncation checks
# ---------------------------------------------------------------------------


def verify_laurent_form(k: Sequence[int], N: int) -> VerificationReport:
    """Interior rows of ``p_k(A^k_per)`` carry ``1`` at offset ``+m``, ``∏k`` at
    offset ``-m`` and zero everywhere else."""
    k = SignSeq(k)
    m = len(k)
    params = {"k": tuple(k), "N": N}
    if N < m * (m + 1):
        return VerificationReport("laurent", params, False, failure=f"N must be >= {m * (m + 1)}")
    P = band_poly_apply(hopping_poly(k), build_periodic_truncation(k, N))
    expected = {m: 1, -m: k.product}
    checked = 0
    for i in P.interior:
        for o in range(-P.w, P.w + 1):
            j = i + o
            if not P.reliable(i, j):
                continue
            want = expected.get(o, 0)
            got = P[i, j]
            checked += 1
            if got != want:
                return VerificationReport(
                    "laurent", params, False, abs(got - want), f"entry ({i},{j}) = {got}, expected {want}", checked
                )
    return VerificationReport("laurent", params, True, 0.0, None, checked)


def thm1_default_N(b: Sequence[int], k: Sequence[int]) -> int:
    """Window half-width leaving at least two full periods of ``c`` (and at
    least five m-blocks) inside the reliable interior."""
    n, m = len(even_period(b)), len(k)
    blocks = max(5, 2 * 2 * n)
    return m * (blocks // 2 + 2) + m


def verify_thm1_structure(b: Sequence[int], k: Sequence[int], N: int | None = None) -> VerificationReport:
    """Row and column ``rm`` of ``p_k(A^c)`` reproduce ``A^b`` on ``mℤ``.

    Row ``rm``: ``b_r`` at column ``(r-1)m``, ``1`` at ``(r+1)m``, zeros
    elsewhere. Column ``rm``: ``1`` at row ``(r-1)m``, ``b_{r+1}`` at row
    ``(r+1)m``, zeros elsewhere.
    """
    b = even_period(b)
    cc = build_c(b, k)
    m = cc.m
    N = thm1_default_N(b, k) if N is None else N
    params = {"b": tuple(cc.b_period), "k": tuple(cc.k), "N": N}
    P = band_poly_apply(hopping_poly(cc.k), build_truncation(cc.c, N))
    lim = N - P.margin
    rs = [r for r in range(-(lim // m), lim // m + 1) if abs((r - 1) * m) <= lim and abs((r + 1) * m) <= lim]
    if len(rs) < 5:
        return VerificationReport("thm1", params, False, failure=f"only {len(rs)} interior blocks; increase N")
    checked = 0
    for r in rs:
        i = r * m
        row_want = {(r - 1) * m: cc.b(r), (r + 1) * m: 1}
        col_want = {(r - 1) * m: 1, (r + 1) * m: cc.b(r + 1)}
        for o in range(-P.w, P.w + 1):
            for (ii, jj), want in (
                ((i, i + o), row_want.get(i + o, 0)),
                ((i + o, i), col_want.get(i + o, 0)),
            ):
                if not P.reliable(ii, jj):
                    continue
                got = P[ii, jj]
                checked += 1
                if got != want:
                    return VerificationReport(
                        "thm1", params, False, abs(got - want),
                        f"r={r} entry ({ii},{jj}) = {got}, expected {want}", checked,
                    )
    return VerificationReport("thm1", params, True, 0.0, None, checked)


def verify_claim2(c: ConstructionC, N: int | None = None) -> VerificationReport:
    """Powers ``(A^c)^s`` for ``s <= m``: unit ``s``-th superdiagonal, support on
    offsets ``-s, -s+2, ..., s``; and ``((A^c)^m)_{i,i-m} = c_i c_{i-1} ... c_{i-m+1}``."""
    m = c.m
    N = thm1_default_N(c.b_period, c.k) if N is None else N
    params = {"b": tuple(c.b_period), "k": tuple(c.k), "N": N}
    A = build_truncation(c.c, N)
    power = A
    checked = 0
    for s in range(1, m + 1):
        if s > 1:
            power = band_mul(power, A)
        margin = s
        for i in range(-(N - margin), N - margin + 1):
            for o in range(-power.w, power.w + 1):
                j = i + o
                if max(abs(i), abs(j)) > N - margin:
                    continue
                if o == s:
                    want = 1
                elif s == m and o == -m:
                    want = math.prod(c.c(i - t) for t in range(m))
                elif abs(o) > s or (o + s) % 2:
                    want = 0
                else:
                    continue
                got = power[i, j]
                checked += 1
                if got != want:
                    return VerificationReport(
                        "claim2", params, False, abs(got - want),
                        f"s={s} i={i} offset={o}: {got} != {want}", checked,
                    )
    return VerificationReport("claim2", params, True, 0.0, None, checked)


# ---------------------------------------------------------------------------
# composition identity and symbol inclusion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Thm2Data:
    q: IntPoly
    p: IntPoly
    r: IntPoly
    construction: ConstructionC


def thm2_polys(b: Sequence[int], k: Sequence[int]) -> Thm2Data:
    cc = build_c(even_period(b), k)
    return Thm2Data(hopping_poly(cc.b_period), hopping_poly(cc.k), hopping_poly(cc.c_period), cc)


def verify_thm2_identity(b: Sequence[int], k: Sequence[int]) -> VerificationReport:
    """``q ∘ p == r`` exactly, with ``q = p_b``, ``p = p_k``, ``r = p_c``."""
    d = thm2_polys(b, k)
    params = {"b": tuple(d.construction.b_period), "k": tuple(d.construction.k)}
    lhs = compose(d.q, d.p)
    if lhs == d.r:
        return VerificationReport("thm2", params, True, 0.0, None, len(lhs.coeffs))
    worst = max(abs(lhs[i] - d.r[i]) for i in range(max(len(lhs.coeffs), len(d.r.coeffs))))
    return VerificationReport(
        "thm2", params, False, float(worst), f"q∘p={list(lhs.coeffs)} r={list(d.r.coeffs)}"
    )


def verify_cor2_inclusion(
    b: Sequence[int], k: Sequence[int], phis: Sequence[float], tol: float = 1e-7, root_tol: float = 1e-8
) -> VerificationReport:
    """Every eigenvalue ``μ`` of ``a^b(φ)`` is ``p(λ)`` for some eigenvalue ``λ``
    of ``a^c(φ)``, up to ``tol``."""
    d = thm2_polys(b, k)
    cc = d.construction
    params = {"b": tuple(cc.b_period), "k": tuple(cc.k), "phis": len(phis)}
    if not cc.c_period.is_even():
        return VerificationReport("cor2", params, False, failure="c period is not even")
    worst, checked = 0.0, 0
    for phi in phis:
        w_b = cmath.exp(1j * phi) * cc.b_period.product + cmath.exp(-1j * phi)
        w_c = cmath.exp(1j * phi) * cc.c_period.product + cmath.exp(-1j * phi)
        mus = np.array(roots_shifted(d.q, w_b, root_tol))
        lams = np.array(roots_shifted(d.r, w_c, root_tol))
        images = d.p(lams)
        for mu in mus:
            gap = float(np.min(np.abs(images - mu)))
            checked += 1
            worst = max(worst, gap)
            if gap > tol:
                return VerificationReport("cor2", params, False, worst, f"phi={phi:.6g} mu={mu:.6g}", checked)
    return VerificationReport("cor2", params, True, worst, None, checked)


# ---------------------------------------------------------------------------
# default sweeps
# ---------------------------------------------------------------------------

SUITE_NAMES = ("prop1", "laurent", "thm1", "claim2", "thm2", "cor2")


def all_periods(max_m: int, min_m: int = 1):
    for m in range(min_m, max_m + 1):
        yield from (SignSeq(k) for k in product((1, -1), repeat=m))


def even_periods(max_n: int):
    return [b for b in all_periods(max_n) if b.is_even()]


def symmetry_periods(max_degree: int, min_degree: int = 2) -> list[SignSeq]:
    from .symmetries import enumerate_S

    S = enumerate_S(max(max_degree, 2))
    return [e.k for e in S.all_entries() if min_degree <= e.degree <= max_degree]


def random_pairs(count: int, max_b: int, max_degree: int, seed: int = 0) -> list[tuple[SignSeq, SignSeq]]:
    """Deterministic pseudo-random ``(b, k)`` pairs: ``b`` even of length
    ``<= max_b``, ``k`` a symmetry period of degree ``<= max_degree``."""
    rng = random.Random(seed)
    bs = even_periods(max_b)
    ks = symmetry_periods(max_degree)
    return [(rng.choice(bs), rng.choice(ks)) for _ in range(count)]


def run_suite(
    name: str,
    k: Sequence[int] | None = None,
    b: Sequence[int] | None = None,
    N: int | None = None,
    phis: int = 16,
    tol: float | None = None,
) -> list[VerificationReport]:
    """Run one named check over its default sweep, or over a single ``k``/``b``."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES + ('all',))}")
    angles = chebyshev_phis(phis)
    if name == "prop1":
        ks = [SignSeq(k)] if k else list(all_periods(6))
        return [verify_prop1(kk, angles, tol or 1e-9) for kk in ks]
    if name == "laurent":
        ks = [SignSeq(k)] if k else list(all_periods(6))
        return [verify_laurent_form(kk, N or max(60, len(kk) * (len(kk) + 1))) for kk in ks]
    if k and b:
        pairs = [(SignSeq(b), SignSeq(k))]
    elif name == "thm2":
        pairs = [(bb, kk) for bb in even_periods(4) for kk in symmetry_periods(5)]
    elif name == "cor2":
        pairs = random_pairs(10, 4, 6, seed=2)
    else:
        pairs = random_pairs(25, 4, 6, seed=1)
    if name == "thm1":
        return [verify_thm1_structure(bb, kk, N) for bb, kk in pairs]
    if name == "claim2":
        return [verify_claim2(build_c(even_period(bb), kk), N) for bb, kk in pairs]
    if name == "thm2":
        return [verify_thm2_identity(bb, kk) for bb, kk in pairs]
    return [verify_cor2_inclusion(bb, kk, chebyshev_phis(8) if phis == 16 else angles, tol or 1e-7) for bb, kk in pairs]
