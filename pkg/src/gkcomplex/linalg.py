"""Exact sparse linear algebra over the rationals.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined as ``a*row - b*pivot``, then divided by their content.
Fractions only reappear when a reduced echelon form is extracted.
"""

from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import gmpy2

from .errors import NoValidPrime

log = logging.getLogger(__name__)


def worker_count() -> int:
    """Parallelism bound from ``GK_THREADS`` (default: 1)."""
    try:
        return max(1, int(os.environ.get("GK_THREADS", "1")))
    except ValueError:
        return 1


def fstr(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable sparse matrix with :class:`Fraction` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | Iterable = ()):
        self.rows = rows
        self.cols = cols
        data: list[dict[int, Fraction]] = [dict() for _ in range(rows)]
        if isinstance(entries, Mapping):
            items = entries.items()
        else:
            items = (((r, c), v) for r, c, v in entries)
        for (r, c), v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                data[r][c] = v
            else:
                data[r].pop(c, None)
        self._data = tuple(data)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls(nr, nc, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    @classmethod
    def from_rows(cls, rows: Sequence[Mapping[int, object]], cols: int) -> "RationalMatrix":
        return cls(len(rows), cols, {(i, j): v for i, row in enumerate(rows) for j, v in row.items()})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._data[i])

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): v for i, row in enumerate(self._data) for j, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, row in enumerate(self._data):
            for j, v in row.items():
                out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def permuted(self, row_perm: Sequence[int] | None = None, col_perm: Sequence[int] | None = None) -> "RationalMatrix":
        """Entry ``(i, j)`` moves to ``(row_perm[i], col_perm[j])``."""
        rp = row_perm or range(self.rows)
        cp = col_perm or range(self.cols)
        return RationalMatrix(self.rows, self.cols, {(rp[i], cp[j]): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def to_triplets(self) -> str:
        """Debug dump: a ``# rows cols`` header then ``row col p/q`` lines."""
        lines = [f"# {self.rows} {self.cols}"]
        for i, row in enumerate(self._data):
            for j in sorted(row):
                lines.append(f"{i} {j} {fstr(row[j])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text: str, rows: int | None = None, cols: int | None = None) -> "RationalMatrix":
        entries = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and rows is None and cols is None:
                    rows, cols = int(parts[0]), int(parts[1])
                continue
            r, c, v = line.split()
            entries[int(r), int(c)] = Fraction(v)
        if rows is None or cols is None:
            rows = 1 + max((r for r, _ in entries), default=-1)
            cols = 1 + max((c for _, c in entries), default=-1)
        return cls(rows, cols, entries)


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = lcm(*(v.denominator for v in row.values())) if row else 1
    ints = {j: int(v * den) for j, v in row.items()}
    return _primitive(ints)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _combine(row: dict[int, int], pivot: dict[int, int], col: int) -> dict[int, int]:
    """Fraction-free elimination of ``col`` from ``row`` using ``pivot``."""
    a, b = pivot[col], row[col]
    g = gcd(a, b)
    a, b = a // g, b // g
    out = {j: a * v for j, v in row.items()}
    for j, v in pivot.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out)


def rank_exact(m: RationalMatrix) -> int:
    """Rank over Q; pivots are chosen to keep fill small (shortest row, sparsest column)."""
    rows = {i: _integer_row(m.row(i)) for i in range(m.rows) if m.row(i)}
    col_rows: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            col_rows.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        pi = min(rows, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(pi)
        pc = min(prow, key=lambda j: (len(col_rows[j]), j))
        for j in prow:
            col_rows[j].discard(pi)
        rank += 1
        for i in list(col_rows[pc]):
            old = rows[i]
            new = _combine(old, prow, pc)
            for j in old:
                if j not in new:
                    col_rows[j].discard(i)
            for j in new:
                col_rows.setdefault(j, set()).add(i)
            if new:
                rows[i] = new
            else:
                del rows[i]
    return rank


def row_reduce(m: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row-echelon form over Q and its pivot columns.

    The result has one row per pivot, ordered by pivot column; pivots are
    1 and every other entry of a pivot column is 0.
    """
    rows = [_integer_row(m.row(i)) for i in range(m.rows)]
    rows = [r for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(i)
    pivot_of: dict[int, int] = {}
    used: set[int] = set()
    for c in sorted(col_rows):
        cands = [i for i in col_rows[c] if i not in used]
        if not cands:
            continue
        pi = min(cands, key=lambda i: (len(rows[i]), i))
        used.add(pi)
        pivot_of[c] = pi
        prow = rows[pi]
        for i in list(col_rows[c]):
            if i == pi:
                continue
            old = rows[i]
            new = _combine(old, prow, c)
            for j in old:
                if j not in new:
                    col_rows[j].discard(i)
            for j in new:
                col_rows.setdefault(j, set()).add(i)
            rows[i] = new
    pivots = tuple(sorted(pivot_of))
    out = []
    for c in pivots:
        row = rows[pivot_of[c]]
        p = row[c]
        out.append({j: Fraction(v, p) for j, v in row.items()})
    return RationalMatrix.from_rows(out, m.cols), pivots


def _rank_mod(m: RationalMatrix, p: int) -> int:
    rows = []
    for i in range(m.rows):
        row = {}
        for j, v in m.row(i).items():
            x = v.numerator * pow(v.denominator, -1, p) % p
            if x:
                row[j] = x
        if row:
            rows.append(row)
    rank = 0
    while rows:
        rows.sort(key=len)
        prow = rows.pop(0)
        pc = min(prow)
        inv = pow(prow[pc], -1, p)
        rest = []
        for row in rows:
            if pc in row:
                f = row[pc] * inv % p
                for j, v in prow.items():
                    w = (row.get(j, 0) - f * v) % p
                    if w:
                        row[j] = w
                    else:
                        row.pop(j, None)
            if row:
                rest.append(row)
        rows = rest
        rank += 1
    return rank


def _denominators(m: RationalMatrix) -> set[int]:
    return {v.denominator for v in m.entries.values() if v.denominator != 1}


def random_primes(count: int, bits: int = 62, rng: random.Random | None = None) -> list[int]:
    rng = rng or random.Random()
    out: set[int] = set()
    while len(out) < count:
        out.add(int(gmpy2.next_prime(rng.getrandbits(bits) | (1 << (bits - 1)))))
    return sorted(out)


def rank_modular(
    m: RationalMatrix,
    prime_count: int = 3,
    *,
    verify: bool = False,
    primes: Sequence[int] | None = None,
    rng: random.Random | None = None,
) -> int:
    """Largest rank of ``m`` reduced modulo several primes.

    This is a lower bound for the rational rank and equals it unless every
    prime is unlucky.  Primes dividing a denominator are skipped.  With
    ``verify`` the exact rank is computed as well and returned.
    """
    if prime_count < 1:
        raise ValueError("prime_count must be at least 1")
    dens = _denominators(m)
    candidates = list(primes) if primes is not None else random_primes(4 * prime_count, rng=rng)
    valid = [p for p in candidates if all(d % p for d in dens)][:prime_count]
    if not valid:
        raise NoValidPrime(f"all {len(candidates)} candidate primes divide a denominator")
    workers = min(worker_count(), len(valid))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            ranks = list(pool.map(lambda p: _rank_mod(m, p), valid))
    else:
        ranks = [_rank_mod(m, p) for p in valid]
    best = max(ranks)
    if verify:
        exact = rank_exact(m)
        if exact != best:
            log.warning("modular rank %d differs from exact rank %d", best, exact)
        return exact
    return best
