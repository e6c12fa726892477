"""Periodic hopping operators: sign sequences, the polynomials p_k, symbols,
periodic and finite spectra, and exact banded truncations.

Index conventions
-----------------
A doubly infinite hopping operator ``A^c`` has ``1`` on the superdiagonal and
``c_i`` at position ``(i, i-1)``. For a period ``k = (k_1, ..., k_m)`` the
bi-infinite sequence is ``c_{rm+j} = k_j`` (``j = 1..m``), so row ``i`` of a
truncation carries ``k[(i - 1) % m]`` (0-based). Truncations cover the
indices ``-N..N`` with index 0 in the centre.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Sequence

import numpy as np

from .polyring import IntPoly, roots_many, roots_shifted, roots_shifted_many

__all__ = [
    "SignSeq",
    "parse_signs",
    "tridiag_charpoly",
    "hopping_poly",
    "transfer_trace",
    "symbol_matrix",
    "cofactor_det",
    "symbol_charpoly_check",
    "symbol_eigenvalues",
    "spectral_target",
    "periodic_spectrum_points",
    "PointCloud",
    "finite_matrix",
    "finite_spectrum",
    "BandTruncation",
    "build_truncation",
    "build_periodic_truncation",
    "band_poly_apply",
]

LAMBDA = IntPoly.x()


# ---------------------------------------------------------------------------
# sign sequences
# ---------------------------------------------------------------------------


class SignSeq(tuple):
    """A non-empty tuple of ``+1``/``-1`` entries."""

    def __new__(cls, entries: Iterable[int] = ()):
        vals = tuple(int(e) for e in entries)
        for e in vals:
            if e not in (1, -1):
                raise ValueError(f"sign entries must be +1 or -1, got {e}")
        return super().__new__(cls, vals)

    @property
    def m(self) -> int:
        return len(self)

    @property
    def product(self) -> int:
        return reduce(lambda a, b: a * b, self, 1)

    @property
    def parity(self) -> str:
        return "even" if self.product == 1 else "odd"

    def is_even(self) -> bool:
        return self.product == 1

    def shift(self, s: int = 1) -> "SignSeq":
        s %= max(len(self), 1)
        return SignSeq(self[s:] + self[:s])

    def doubled(self) -> "SignSeq":
        return SignSeq(tuple(self) * 2)

    def __add__(self, other):
        return SignSeq(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return f"SignSeq({tuple(self)})"

    def __str__(self) -> str:
        return ",".join(str(e) for e in self)


def parse_signs(text: str) -> SignSeq:
    """Parse a comma-separated sign list such as ``"1,-1,1"``."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("1", "+1"):
            out.append(1)
        elif tok == "-1":
            out.append(-1)
        else:
            raise ValueError(f"invalid sign token {tok!r} (expected 1 or -1)")
    return SignSeq(out)


def parity(k: SignSeq) -> str:
    return SignSeq(k).parity


# ---------------------------------------------------------------------------
# the polynomials p_k
# ---------------------------------------------------------------------------


def tridiag_charpoly(signs: Sequence[int], size: int | None = None) -> IntPoly:
    """Determinant of the tridiagonal matrix with ``-λ`` on the diagonal, ``1``
    above and ``signs`` below it.

    ``size`` defaults to ``len(signs) + 1``, except that an empty sign list
    means the empty (0x0) determinant ``1``. Pass ``size=1`` for ``-λ``.
    """
    signs = tuple(signs)
    if size is None:
        size = len(signs) + 1 if signs else 0
    if size > 0 and len(signs) != size - 1:
        raise ValueError(f"{size}x{size} matrix needs {size - 1} signs, got {len(signs)}")
    return IntPoly(_tridiag_coeffs(signs, size))


def _tridiag_coeffs(signs: Sequence[int], size: int) -> list[int]:
    # D_0 = 1, D_1 = -λ, D_j = -λ D_{j-1} - s_{j-1} D_{j-2}
    prev, cur = [1], [1]
    if size == 0:
        return cur
    cur = [0, -1]
    for s in signs:
        nxt = [0] + [-c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= s * c
        prev, cur = cur, nxt
    return cur


def hopping_poly(k: Sequence[int]) -> IntPoly:
    """The monic degree-``m`` polynomial ``p_k`` of a period ``k``.

    ``det(a^k(φ) - λI) = (-1)^m (p_k(λ) - e^{iφ}∏k - e^{-iφ})``.
    """
    k = SignSeq(k)
    m = len(k)
    if m == 0:
        raise ValueError("period must be non-empty")
    if m == 1:
        return LAMBDA
    first = _tridiag_coeffs(k[: m - 1], m)
    second = [1] if m == 2 else _tridiag_coeffs(k[1 : m - 2], m - 2)
    sign = 1 if m % 2 == 0 else -1
    km = k[m - 1]
    coeffs = [sign * c for c in first]
    for i, c in enumerate(second):
        coeffs[i] -= sign * km * c
    return IntPoly(coeffs)


def transfer_trace(k: Sequence[int]) -> IntPoly:
    """Trace of the transfer-matrix product ``T_m ... T_1`` with
    ``T_j = [[λ, -k_j], [1, 0]]``.

    Solutions of ``k_j x_{j-1} + x_{j+1} = λ x_j`` propagate by ``T_j``, so this
    trace equals ``p_k``; it is computed without any determinant and serves as
    an independent cross-check.
    """
    one, zero = IntPoly.const(1), IntPoly()
    m = [[one, zero], [zero, one]]
    for s in SignSeq(k):
        t = [[LAMBDA, IntPoly.const(-s)], [one, zero]]
        m = [
            [t[0][0] * m[0][0] + t[0][1] * m[1][0], t[0][0] * m[0][1] + t[0][1] * m[1][1]],
            [t[1][0] * m[0][0] + t[1][1] * m[1][0], t[1][0] * m[0][1] + t[1][1] * m[1][1]],
        ]
    return m[0][0] + m[1][1]


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------


def symbol_matrix(k: Sequence[int], phi: float) -> np.ndarray:
    """The ``m x m`` symbol ``a^k(φ)``.

    For ``m <= 2`` the phase corners land on the ordinary off-diagonals and
    the entries add up.
    """
    k = SignSeq(k)
    m = len(k)
    e_pos, e_neg = cmath.exp(1j * phi), cmath.exp(-1j * phi)
    a = np.zeros((m, m), dtype=complex)
    for j in range(m - 1):
        a[j, j + 1] += 1
        a[j + 1, j] += k[j]
    a[0, m - 1] += k[m - 1] * e_pos
    a[m - 1, 0] += e_neg
    return a


def cofactor_det(a: np.ndarray) -> complex:
    """Laplace expansion along the first row, memoised on column subsets."""
    n = a.shape[0]
    if n == 0:
        return 1.0
    memo: dict[tuple[int, int], complex] = {}

    def minor(row: int, cols: int) -> complex:
        # determinant of rows row..n-1 restricted to the column bitmask ``cols``
        if row == n:
            return 1.0
        key = (row, cols)
        if key in memo:
            return memo[key]
        total, sign = 0j, 1
        for c in range(n):
            if cols >> c & 1:
                entry = a[row, c]
                if entry != 0:
                    total += sign * entry * minor(row + 1, cols & ~(1 << c))
                sign = -sign
        memo[key] = total
        return total

    return complex(minor(0, (1 << n) - 1))


def symbol_charpoly_check(k: Sequence[int], phi: float, lam: complex) -> float:
    """``|det(a^k(φ) - λI) - (-1)^m (p_k(λ) - e^{iφ}∏k - e^{-iφ})|``."""
    k = SignSeq(k)
    m = len(k)
    lhs = cofactor_det(symbol_matrix(k, phi) - lam * np.eye(m))
    p = hopping_poly(k)
    rhs = (-1) ** m * (p(complex(lam)) - cmath.exp(1j * phi) * k.product - cmath.exp(-1j * phi))
    return abs(lhs - rhs)


def symbol_eigenvalues(k: Sequence[int], phi: float, tol: float = 1e-10) -> list[complex]:
    """Eigenvalues of ``a^k(φ)`` as roots of ``p_k(λ) = e^{iφ}∏k + e^{-iφ}``."""
    k = SignSeq(k)
    w = cmath.exp(1j * phi) * k.product + cmath.exp(-1j * phi)
    return roots_shifted(hopping_poly(k), w, tol)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


def spectral_target(k: Sequence[int]) -> str:
    """``"real-segment"`` for even periods, ``"imaginary-segment"`` for odd ones."""
    return "real-segment" if SignSeq(k).is_even() else "imaginary-segment"


@dataclass(frozen=True)
class PointCloud:
    """Complex samples tagged with the index of the shift value they solve."""

    points: np.ndarray
    t_index: np.ndarray

    def __len__(self) -> int:
        return len(self.points)

    def to_csv(self) -> str:
        lines = ["re,im,t_index"]
        for z, t in zip(self.points, self.t_index):
            lines.append(f"{float(z.real)!r},{float(z.imag)!r},{int(t)}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_csv())

    @classmethod
    def read_csv(cls, path) -> "PointCloud":
        pts, ts = [], []
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "re,im,t_index":
                raise ValueError(f"unexpected point cloud header {header!r}")
            for line in fh:
                if line.strip():
                    re_, im_, t = line.strip().split(",")
                    pts.append(complex(float(re_), float(im_)))
                    ts.append(int(t))
        return cls(np.array(pts, dtype=complex), np.array(ts, dtype=int))


def periodic_spectrum_points(
    k: Sequence[int], samples: int = 401, tol: float = 1e-10, threads: int = 1
) -> PointCloud:
    """Sample ``spec(A^k_per)`` as preimages of an equispaced grid on ``[-2,2]``
    (even ``k``) or ``i[-2,2]`` (odd ``k``) under ``p_k``.

    Points come out ordered by sample index, then root index, whatever the
    thread count.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    k = SignSeq(k)
    p = hopping_poly(k)
    ts = np.linspace(-2.0, 2.0, samples)
    ws = ts.astype(complex) if k.is_even() else 1j * ts
    chunks = np.array_split(np.arange(samples), max(1, min(threads, samples)))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda idx: roots_shifted_many(p, ws[idx], tol), chunks))
    else:
        parts = [roots_shifted_many(p, ws[idx], tol) for idx in chunks]
    roots = np.concatenate(parts, axis=0)
    t_index = np.repeat(np.arange(samples), k.m)
    return PointCloud(roots.reshape(-1), t_index)


def finite_matrix(k: Sequence[int]) -> np.ndarray:
    """The ``(n+1) x (n+1)`` matrix ``A^k_fin`` for ``k`` of length ``n``."""
    k = SignSeq(k)
    n = len(k)
    a = np.zeros((n + 1, n + 1), dtype=int)
    for j in range(n):
        a[j, j + 1] = 1
        a[j + 1, j] = k[j]
    return a


def finite_charpoly(k: Sequence[int]) -> IntPoly:
    """``det(A^k_fin - λI)``."""
    return tridiag_charpoly(SignSeq(k))


def finite_spectrum(k: Sequence[int], tol: float = 1e-10) -> list[complex]:
    k = SignSeq(k)
    if len(k) < 1:
        raise ValueError("need n >= 1")
    return roots_shifted(finite_charpoly(k), 0, tol)


def finite_spectra(ks: Iterable[Sequence[int]], tol: float = 1e-10) -> list[list[complex]]:
    """:func:`finite_spectrum` for many sequences, batched by length."""
    polys = []
    for k in ks:
        k = SignSeq(k)
        if len(k) < 1:
            raise ValueError("need n >= 1")
        polys.append(finite_charpoly(k))
    return [[complex(z) for z in row] for row in roots_many(polys, tol)]


# ---------------------------------------------------------------------------
# exact banded truncations
# ---------------------------------------------------------------------------


class BandTruncation:
    """Exact integer banded matrix on indices ``-N..N``.

    ``data[i + N, o + w]`` holds the entry ``(i, i + o)`` for ``|o| <= w``.
    ``margin`` counts how many index steps from the window edge are
    contaminated by the truncation; entries ``(i, j)`` with
    ``max(|i|, |j|) > N - margin`` are unreliable.
    """

    __slots__ = ("N", "w", "data", "margin")

    def __init__(self, N: int, w: int, data: np.ndarray, margin: int = 0):
        self.N = N
        self.w = w
        self.data = data
        self.margin = margin

    @classmethod
    def zeros(cls, N: int, w: int, margin: int = 0) -> "BandTruncation":
        data = np.zeros((2 * N + 1, 2 * w + 1), dtype=object)
        data[...] = 0
        return cls(N, w, data, margin)

    @classmethod
    def identity(cls, N: int) -> "BandTruncation":
        out = cls.zeros(N, 0)
        out.data[:, 0] = 1
        return out

    @property
    def size(self) -> int:
        return 2 * self.N + 1

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        o = j - i
        if abs(i) > self.N or abs(j) > self.N:
            raise IndexError(f"({i}, {j}) outside truncation of half-width {self.N}")
        if abs(o) > self.w:
            return 0
        return self.data[i + self.N, o + self.w]

    def diagonal(self, offset: int) -> np.ndarray:
        """Entries ``(i, i + offset)`` for all rows ``i`` (zero where off-window)."""
        if abs(offset) > self.w:
            return np.zeros(self.size, dtype=object)
        return self.data[:, offset + self.w]

    def reliable(self, i: int, j: int) -> bool:
        return max(abs(i), abs(j)) <= self.N - self.margin

    @property
    def interior(self) -> range:
        return range(-(self.N - self.margin), self.N - self.margin + 1)

    def to_dense(self) -> np.ndarray:
        n = self.size
        out = np.zeros((n, n), dtype=object)
        out[...] = 0
        for o in range(-self.w, self.w + 1):
            for r in range(n):
                c = r + o
                if 0 <= c < n:
                    out[r, c] = self.data[r, o + self.w]
        return out

    def __matmul__(self, other: "BandTruncation") -> "BandTruncation":
        return band_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BandTruncation):
            return NotImplemented
        return self.N == other.N and np.array_equal(self.to_dense(), other.to_dense())


def _shift_rows(col: np.ndarray, s: int) -> np.ndarray:
    """``out[r] = col[r + s]`` with zeros outside."""
    out = np.zeros_like(col)
    out[...] = 0
    n = len(col)
    if s >= 0:
        out[: n - s] = col[s:] if s < n else out[:0]
    else:
        out[-s:] = col[: n + s]
    return out


def band_mul(x: BandTruncation, y: BandTruncation) -> BandTruncation:
    """Exact product of two finite banded matrices on the same window."""
    if x.N != y.N:
        raise ValueError("truncations must share the same window")
    N = x.N
    w = min(x.w + y.w, 2 * N)
    out = BandTruncation.zeros(N, w, margin=x.margin + y.margin + min(x.w, y.w))
    n = 2 * N + 1
    rows = np.arange(n)
    for a in range(-x.w, x.w + 1):
        xa = x.data[:, a + x.w]
        for b in range(-y.w, y.w + 1):
            o = a + b
            if abs(o) > w:
                continue
            # (XY)_{r, r+o} += X_{r, r+a} * Y_{r+a, r+a+b}
            yb = _shift_rows(y.data[:, b + y.w], a)
            valid = (rows + o >= 0) & (rows + o < n) & (rows + a >= 0) & (rows + a < n)
            prod = xa * yb
            prod[~valid] = 0
            out.data[:, o + w] += prod
    return out


def _band_add_scalar(x: BandTruncation, c: int) -> BandTruncation:
    data = x.data.copy()
    data[:, x.w] += c
    return BandTruncation(x.N, x.w, data, x.margin)


def build_truncation(c: Callable[[int], int], N: int) -> BandTruncation:
    """Truncation of ``A^c`` on ``-N..N`` for an index function ``c``.

    Row ``i`` gets ``c(i)`` at ``(i, i-1)`` and ``1`` at ``(i, i+1)``.
    """
    out = BandTruncation.zeros(N, 1)
    for i in range(-N, N + 1):
        if i - 1 >= -N:
            out.data[i + N, 0] = int(c(i))
        if i + 1 <= N:
            out.data[i + N, 2] = 1
    return out


def build_periodic_truncation(k: Sequence[int], N: int) -> BandTruncation:
    """Truncation of ``A^k_per`` with ``c_{rm+j} = k_j``."""
    k = SignSeq(k)
    m = len(k)
    if N < m:
        raise ValueError(f"need N >= m ({N} < {m})")
    return build_truncation(lambda i: k[(i - 1) % m], N)


def band_poly_apply(p: IntPoly, A: BandTruncation) -> BandTruncation:
    """Exact ``p(A)`` by Horner's scheme over banded matrices.

    Entries within ``deg(p) * bandwidth(A)`` of the window edge are marked
    unreliable via the result's ``margin``.
    """
    d = p.degree
    if d < 0:
        return BandTruncation.zeros(A.N, 0)
    if d * A.w > 2 * A.N:
        raise ValueError("polynomial degree too large for this truncation")
    result = BandTruncation.identity(A.N)
    result.data[:, 0] = p.leading
    for c in reversed(p.coeffs[:-1]):
        result = _band_add_scalar(band_mul(result, A), c)
    result.margin = d * A.w
    return result
