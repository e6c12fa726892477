"""The symmetry set S, its composition closure T and the degree-count table.

A period ``k = (k_1, ..., k_{m-2}, -1, 1)`` contributes ``p_k`` to S when
swapping its last two entries leaves the polynomial unchanged. Within a
degree, entries are listed in the product order of ``(1, -1)`` over the
prefix, i.e. ``+1`` sorts before ``-1``; this is the order of the published
short list.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from itertools import product

from .hopping import SignSeq, hopping_poly, transfer_trace
from .polyring import IntPoly, compose, parity

TAIL = (-1, 1)
SWAPPED_TAIL = (1, -1)


@dataclass(frozen=True)
class SymmetryEntry:
    k: SignSeq
    k_hat: SignSeq
    p: IntPoly

    @property
    def degree(self) -> int:
        return len(self.k)


@dataclass
class SymmetrySet:
    max_degree: int
    entries: dict[int, list[SymmetryEntry]] = field(default_factory=dict)

    def degree_entries(self, m: int) -> list[SymmetryEntry]:
        return self.entries.get(m, [])

    def distinct(self, m: int) -> list[SymmetryEntry]:
        """One representative entry (the first one) per distinct polynomial."""
        seen: dict[IntPoly, SymmetryEntry] = {}
        for e in self.degree_entries(m):
            seen.setdefault(e.p, e)
        return list(seen.values())

    def polynomials(self, m: int | None = None) -> list[IntPoly]:
        degrees = [m] if m is not None else sorted(self.entries)
        return [e.p for d in degrees for e in self.distinct(d)]

    def all_entries(self) -> list[SymmetryEntry]:
        return [e for m in sorted(self.entries) for e in self.entries[m]]

    def rows(self) -> list[tuple[str, SymmetryEntry]]:
        """Numbered representative rows (``"5.2"``, ...), as in the short list."""
        out = []
        for m in sorted(self.entries):
            for i, e in enumerate(self.distinct(m), 1):
                out.append((f"{m}.{i}", e))
        return out

    def format_table(self) -> str:
        rows = [(no, "(" + ",".join(str(x) for x in e.k) + ")", e.p.pretty()) for no, e in self.rows()]
        head = ("No.", "k", "p_k(λ)")
        widths = [max(len(r[i]) for r in rows + [head]) for i in range(3)]
        sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
        lines = [sep, "| " + " | ".join(h.ljust(w) for h, w in zip(head, widths)) + " |", sep]
        for r in rows:
            lines.append("| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |")
        lines.append(sep)
        return "\n".join(lines)

    def to_csv(self, representatives_only: bool = False) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["degree", "k", "coeffs"])
        for m in sorted(self.entries):
            for e in (self.distinct(m) if representatives_only else self.entries[m]):
                writer.writerow([m, ",".join(str(x) for x in e.k), e.p.to_csv()])
        return buf.getvalue()


def _prefixes(n: int):
    return product((1, -1), repeat=n)


def enumerate_degree(m: int) -> list[SymmetryEntry]:
    out = []
    for prefix in _prefixes(m - 2):
        k = SignSeq(prefix + TAIL)
        k_hat = SignSeq(prefix + SWAPPED_TAIL)
        p = hopping_poly(k)
        if p == hopping_poly(k_hat):
            out.append(SymmetryEntry(k, k_hat, p))
    return out


def enumerate_S(max_degree: int) -> SymmetrySet:
    if max_degree < 2:
        raise ValueError("max_degree must be >= 2")
    return SymmetrySet(max_degree, {m: enumerate_degree(m) for m in range(2, max_degree + 1)})


def trivial_families_present(S: SymmetrySet, m: int) -> bool:
    """Whether ``(1,...,1,-1,1)`` and ``(-1,...,-1,-1,1)`` both lie in degree ``m``."""
    if m < 2 or m > S.max_degree:
        raise ValueError(f"S is enumerated through degree {S.max_degree}, asked for {m}")
    ks = {tuple(e.k) for e in S.degree_entries(m)}
    return (1,) * (m - 2) + TAIL in ks and (-1,) * (m - 2) + TAIL in ks


@dataclass(frozen=True)
class CountRow:
    m: int
    count: int
    conjectured: int


def conjectured_count(m: int) -> int:
    return 2 ** (math.ceil(m / 2) - 1)


def count_report(S: SymmetrySet) -> list[CountRow]:
    return [CountRow(m, len(S.distinct(m)), conjectured_count(m)) for m in sorted(S.entries)]


def format_count_report(rows: list[CountRow]) -> str:
    lines = [f"{'m':>3} {'count':>6} {'2^(ceil(m/2)-1)':>16}"]
    lines += [f"{r.m:>3} {r.count:>6} {r.conjectured:>16}" for r in rows]
    return "\n".join(lines)


@dataclass(frozen=True)
class ClosureEntry:
    chain: tuple[SymmetryEntry, ...]
    q: IntPoly

    @property
    def degree(self) -> int:
        return self.q.degree


def closure_T(S: SymmetrySet, max_total_degree: int, max_chain: int) -> list[ClosureEntry]:
    """All compositions ``p_1∘...∘p_n`` of representatives of S with
    ``n <= max_chain`` and total degree ``<= max_total_degree``.

    Duplicates (equal coefficient lists) keep the first chain found; output is
    sorted by degree, then by coefficient list.
    """
    base = [e for m in sorted(S.entries) for e in S.distinct(m) if e.degree <= max_total_degree]
    found: dict[IntPoly, ClosureEntry] = {}
    frontier: list[ClosureEntry] = []
    for e in base:
        ce = ClosureEntry((e,), e.p)
        if e.p not in found:
            found[e.p] = ce
            frontier.append(ce)
    for _ in range(max_chain - 1):
        nxt = []
        for ce in frontier:
            for e in base:
                if ce.degree * e.degree > max_total_degree:
                    continue
                q = compose(ce.q, e.p)
                if q not in found:
                    new = ClosureEntry(ce.chain + (e,), q)
                    found[q] = new
                    nxt.append(new)
        frontier = nxt
        if not frontier:
            break
    return sorted(found.values(), key=lambda ce: (ce.degree, ce.q.coeffs))


def recheck(S: SymmetrySet) -> list[SymmetryEntry]:
    """Entries failing an independent recomputation (expected to be empty)."""
    bad = []
    for e in S.all_entries():
        m = len(e.k)
        ok = (
            tuple(e.k[: m - 2]) == tuple(e.k_hat[: m - 2])
            and tuple(e.k[m - 2 :]) == TAIL
            and tuple(e.k_hat[m - 2 :]) == SWAPPED_TAIL
            and transfer_trace(e.k) == e.p == transfer_trace(e.k_hat)
            and parity(e.p) == ("even" if m % 2 == 0 else "odd")
            and e.p.is_monic()
        )
        if not ok:
            bad.append(e)
    return bad
