"""Exact integer polynomials in one variable, plus complex evaluation and roots.

Coefficients are stored in ascending order (index ``i`` holds the coefficient
of ``λ**i``) as plain Python ints, so nothing overflows.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IntPoly",
    "RootFindingError",
    "add",
    "mul",
    "compose",
    "evaluate",
    "parity",
    "roots_shifted",
    "roots_shifted_many",
]


class RootFindingError(RuntimeError):
    """Raised when the root iteration cannot certify its residuals."""

    def __init__(self, message: str, w: complex | None = None):
        super().__init__(message)
        self.w = w


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # construction helpers

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, d: int, c: int = 1) -> "IntPoly":
        return cls([0] * d + [c])

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse the ascending coefficient-list form ``"c0,c1,...,cd"``."""
        tokens = [t.strip() for t in text.strip().split(",")]
        coeffs = []
        for tok in tokens:
            try:
                coeffs.append(int(tok))
            except ValueError:
                raise ValueError(f"bad coefficient token {tok!r} in {text!r}") from None
        return cls(coeffs)

    # basic properties

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.pretty()

    # arithmetic

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = IntPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, z):
        return evaluate(self, z)

    def compose(self, inner: "IntPoly") -> "IntPoly":
        return compose(self, inner)

    # text forms

    def to_csv(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def pretty(self, var: str = "λ") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _coerce(v) -> IntPoly:
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly.const(v)
    raise TypeError(f"cannot combine IntPoly with {type(v).__name__}")


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    return IntPoly(a[i] + b[i] for i in range(n))


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.is_zero() or b.is_zero():
        return IntPoly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j, cb in enumerate(b.coeffs):
            out[i + j] += ca * cb
    return IntPoly(out)


def compose(outer: IntPoly, inner: IntPoly) -> IntPoly:
    """Return ``outer(inner(λ))`` exactly, by Horner's scheme over IntPoly."""
    result = IntPoly()
    for c in reversed(outer.coeffs):
        result = mul(result, inner) + c
    return result


def evaluate(p: IntPoly, z):
    """Horner evaluation at a scalar or numpy array.

    Python ints stay exact; complex and float inputs use double precision.
    """
    if isinstance(z, np.ndarray):
        acc = np.zeros_like(z, dtype=np.result_type(z, float))
        for c in reversed(p.coeffs):
            acc = acc * z + float(c)
        return acc
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def parity(p: IntPoly) -> str:
    """``"even"``, ``"odd"`` or ``"neither"``; the zero polynomial is even."""
    if all(c == 0 for c in p.coeffs[1::2]):
        return "even"
    if all(c == 0 for c in p.coeffs[0::2]):
        return "odd"
    return "neither"


# ---------------------------------------------------------------------------
# roots of p(λ) - w
# ---------------------------------------------------------------------------

MAX_SWEEPS = 500
# Angular offset of the starting circle; avoids starting on symmetry axes of
# even/odd polynomials, where iterates can stall.
_START_PHASE = 0.4


def _residual_scale(p: IntPoly, w: np.ndarray) -> np.ndarray:
    cmax = max(abs(c) for c in p.coeffs)
    return np.maximum(np.maximum(1.0, np.abs(w)), float(cmax))


def roots_shifted_many(p: IntPoly, ws: Sequence[complex], tol: float = 1e-10) -> np.ndarray:
    """Roots of ``p(λ) - w`` for every ``w`` in ``ws``, as a ``(len(ws), deg p)`` array.

    Aberth-Ehrlich simultaneous iteration, vectorised over the batch. Starting
    points are equally spaced on the circle given by the Fujiwara root bound
    (the shift ``w`` counted as part of the constant term), so the result is fully
    deterministic. Every returned root satisfies
    ``|p(root) - w| <= tol * max(1, |w|, max|coeff of p|)``; otherwise
    :class:`RootFindingError` names the first offending ``w``.
    """
    d = p.degree
    if d < 1:
        raise ValueError("roots_shifted needs a polynomial of degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    ws = np.atleast_1d(np.asarray(ws, dtype=complex))
    if not np.all(np.isfinite(ws)):
        raise ValueError("shift values must be finite")
    rows = np.tile(np.array([float(c) for c in p.coeffs], dtype=complex), (len(ws), 1))
    rows[:, 0] -= ws
    z = _aberth(rows, tol)
    resid = np.abs(_eval_rows(p, z) - ws[:, None])
    bound = tol * _residual_scale(p, ws)
    _certify(resid, bound, lambda i: f"w={ws[i]!r}", lambda i: complex(ws[i]))
    return z


def roots_many(polys: Sequence[IntPoly], tol: float = 1e-10) -> list[np.ndarray]:
    """Roots of several polynomials at once; same method and certification as
    :func:`roots_shifted` with ``w = 0``. Polynomials of equal degree share
    one vectorised iteration."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    out: list[np.ndarray | None] = [None] * len(polys)
    by_degree: dict[int, list[int]] = {}
    for i, p in enumerate(polys):
        if p.degree < 1:
            raise ValueError("roots_shifted needs a polynomial of degree >= 1")
        by_degree.setdefault(p.degree, []).append(i)
    for idx in by_degree.values():
        rows = np.array([[float(c) for c in polys[i].coeffs] for i in idx], dtype=complex)
        z = _aberth(rows, tol)
        resid = np.abs(_poly_rows(rows, z))
        bound = tol * np.array([_residual_scale(polys[i], np.zeros(1))[0] for i in idx])
        _certify(resid, bound, lambda j: f"polynomial {polys[idx[j]].pretty()}", lambda j: 0j)
        for j, i in enumerate(idx):
            out[i] = z[j]
    return out


def _certify(resid, bound, describe, w_of):
    ok = np.all(resid <= bound[:, None], axis=1)
    if not ok.all():
        i = int(np.flatnonzero(~ok)[0])
        raise RootFindingError(
            f"root certification failed for {describe(i)}: residual {resid[i].max():.3e} "
            f"> bound {bound[i]:.3e} after {MAX_SWEEPS} sweeps",
            w=w_of(i),
        )


def _aberth(rows: np.ndarray, tol: float) -> np.ndarray:
    """Aberth-Ehrlich iteration on each row of ascending coefficients."""
    d = rows.shape[1] - 1
    monic = rows / rows[:, -1:]
    body = monic[:, 1:]
    c0 = monic[:, 0]
    abs_body = np.abs(body)
    if d == 1:
        return -c0[:, None].copy()
    radius = _fujiwara_radius(abs_body, np.abs(c0))
    angles = 2 * np.pi * np.arange(d) / d + _START_PHASE
    z = radius[:, None] * np.exp(1j * angles)[None, :]
    idx = np.arange(d)
    active = np.ones(len(rows), dtype=bool)
    for _ in range(MAX_SWEEPS):
        if not active.any():
            break
        za = z[active]
        val, der = _horner_rows(body[active], c0[active], za)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = val / der
            diff = za[:, :, None] - za[:, None, :]
            diff[:, idx, idx] = 1.0
            inv = 1.0 / diff
            inv[:, idx, idx] = 0.0
            step = ratio / (1.0 - ratio * inv.sum(axis=2))
        # a root already hit exactly gives val == 0
        step = np.where(val == 0, 0.0, step)
        bad = ~np.isfinite(step)
        if bad.any():
            step = np.where(bad, 1e-3 * (1 + np.abs(za)), step)
        z[active] = za - step
        # roots whose residuals sit at the rounding floor cannot improve
        floor = np.abs(val) <= _rounding_floor(abs_body[active], np.abs(c0[active]), za)
        done = np.all(floor | (np.abs(step) < tol / 10), axis=1)
        act_idx = np.flatnonzero(active)
        active[act_idx[done]] = False
    return z


def _fujiwara_radius(abs_body, abs_c0):
    # every root of the monic polynomial lies within this radius
    d = abs_body.shape[1]
    r = (abs_c0 / 2) ** (1.0 / d)
    for j in range(1, d):
        r = np.maximum(r, abs_body[:, j - 1] ** (1.0 / (d - j)))
    return np.maximum(2.0 * r, 1e-3)


def _horner_rows(body, c0, z):
    val = np.ones_like(z)
    der = np.zeros_like(z)
    for j in range(body.shape[1] - 2, -1, -1):
        der = der * z + val
        val = val * z + body[:, j : j + 1]
    der = der * z + val
    val = val * z + c0[:, None]
    return val, der


def _rounding_floor(abs_body, abs_c0, z):
    # a-priori bound on the rounding error of Horner evaluation at z
    az = np.abs(z)
    acc = np.ones_like(az)
    for j in range(abs_body.shape[1] - 2, -1, -1):
        acc = acc * az + abs_body[:, j : j + 1]
    acc = acc * az + abs_c0[:, None]
    return 4 * abs_body.shape[1] * np.finfo(float).eps * acc


def _poly_rows(rows, z):
    acc = np.zeros_like(z)
    for j in range(rows.shape[1] - 1, -1, -1):
        acc = acc * z + rows[:, j : j + 1]
    return acc


def _eval_rows(p: IntPoly, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z)
    for c in reversed(p.coeffs):
        acc = acc * z + float(c)
    return acc


def roots_shifted(p: IntPoly, w: complex = 0, tol: float = 1e-10) -> list[complex]:
    """The ``deg p`` roots (with multiplicity) of ``p(λ) - w``."""
    return [complex(r) for r in roots_shifted_many(p, [w], tol)[0]]
