"""Independent reference computations used by the tests.

Nothing here calls into the canonical-labelling, elimination or
L-polynomial code it checks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

import numpy as np


def double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def loop_free_matchings(m: int) -> int:
    """Perfect matchings of 3m labelled half-edges (3 per vertex) without loops."""
    if (3 * m) % 2:
        return 0
    total = 0
    for j in range(m + 1):
        rest = 3 * m - 2 * j
        total += (-1) ** j * comb(m, j) * 3**j * (double_factorial(rest - 1) if rest else 1)
    return total


def all_matchings(m: int) -> int:
    return double_factorial(3 * m - 1) if (3 * m) % 2 == 0 else 0


def connected_counts(total, nmax: int) -> list[int]:
    """Connected counts from all-structure counts on labelled vertex sets."""
    conn = [0] * (nmax + 1)
    for m in range(1, nmax + 1):
        c = total(m)
        for k in range(1, m):
            c -= comb(m - 1, k - 1) * conn[k] * total(m - k)
        conn[m] = c
    return conn


def brute_matchings(n_vertices: int):
    """Every perfect matching of ``3 * n_vertices`` half-edges."""
    def rec(free):
        if not free:
            yield []
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            for rest in rec(free[1:i] + free[i + 1 :]):
                yield [(a, b)] + rest
    yield from rec(list(range(3 * n_vertices)))


def is_connected_matching(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a // 3)] = find(b // 3)
    return len({find(v) for v in range(n)}) == 1


def brute_automorphisms(rotations, pairing):
    """(count, signs) over all vertex bijections and slot permutations."""
    n = len(rotations)
    pos = {h: (v, s) for v, rot in enumerate(rotations) for s, h in enumerate(rot)}
    edge_set = {frozenset((pos[a], pos[b])) for a, b in pairing}
    perms3 = list(itertools.permutations(range(3)))
    count = 0
    signs = []
    for vp in itertools.permutations(range(n)):
        for sps in itertools.product(perms3, repeat=n):
            def img(vs):
                v, s = vs
                return (vp[v], sps[v][s])
            if all(frozenset(img(x) for x in e) in edge_set for e in edge_set):
                count += 1
                sign = 1
                for p in sps:
                    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
                    sign *= -1 if inv % 2 else 1
                signs.append(sign)
    return count, signs


def dense_rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def akiyama_tanigawa(n: int) -> list[Fraction]:
    """B_0..B_n with B_1 = +1/2."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def l_polynomial_sympy(k: int) -> dict[tuple[int, ...], Fraction]:
    """Weight-k part of prod Q(x_i) rewritten in elementary symmetric functions."""
    import sympy
    from sympy.polys.polyfuncs import symmetrize

    t = sympy.Symbol("t")
    q = sympy.series(sympy.sqrt(t) / sympy.tanh(sympy.sqrt(t)), t, 0, k + 1).removeO()
    xs = sympy.symbols(f"x1:{k + 1}")
    prod = sympy.Integer(1)
    for x in xs:
        prod = sympy.expand(prod * q.subs(t, x))
    poly = sympy.Poly(prod, *xs)
    top = sum(c * sympy.prod(x**e for x, e in zip(xs, mon)) for mon, c in poly.terms() if sum(mon) == k)
    sym, rem, defs = symmetrize(sympy.expand(top), *xs, formal=True)
    assert rem == 0
    ss = [s for s, _ in defs]
    out = {}
    for mon, c in sympy.Poly(sym, *ss).terms():
        out[tuple(mon)] = Fraction(int(c.p), int(c.q))
    return out


def multiset_dims(dims, n: int) -> list[int]:
    """Count multisets of generators by total degree, by direct enumeration."""
    gens = [j for j, d in enumerate(dims, start=1) for _ in range(d) if j <= n]
    counts = [0] * (n + 1)

    def rec(start, total):
        counts[total] += 1
        for i in range(start, len(gens)):
            if total + gens[i] <= n:
                rec(i, total + gens[i])

    rec(0, 0)
    return counts


def so3_weight(rotations, pairing) -> int:
    """so(3) weight system: contract one Levi-Civita tensor per vertex along the edges."""
    eps = np.zeros((3, 3, 3), dtype=np.int64)
    for p in itertools.permutations(range(3)):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        eps[p] = -1 if inv % 2 else 1
    letters = {}
    for idx, (a, b) in enumerate(pairing):
        letters[a] = letters[b] = chr(ord("a") + idx) if idx < 26 else chr(ord("A") + idx - 26)
    subscripts = ",".join("".join(letters[h] for h in rot) for rot in rotations)
    return int(np.einsum(subscripts + "->", *([eps] * len(rotations)), optimize="greedy"))


def factorial_bound(nv: int) -> int:
    return factorial(nv) * 6**nv


def su3_structure_constants() -> np.ndarray:
    f = np.zeros((8, 8, 8))
    half, r3 = 0.5, np.sqrt(3) / 2
    table = {(1, 2, 3): 1.0, (1, 4, 7): half, (2, 4, 6): half, (2, 5, 7): half, (3, 4, 5): half,
             (1, 5, 6): -half, (3, 6, 7): -half, (4, 5, 8): r3, (6, 7, 8): r3}
    for (a, b, c), v in table.items():
        for p in itertools.permutations(range(3)):
            inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
            idx = tuple((a - 1, b - 1, c - 1)[i] for i in p)
            f[idx] = -v if inv % 2 else v
    return f


def su3_weight(rotations, pairing) -> float:
    f = su3_structure_constants()
    letters = {}
    for idx, (a, b) in enumerate(pairing):
        letters[a] = letters[b] = chr(ord("a") + idx) if idx < 26 else chr(ord("A") + idx - 26)
    subscripts = ",".join("".join(letters[h] for h in rot) for rot in rotations)
    return float(np.einsum(subscripts + "->", *([f] * len(rotations)), optimize="greedy"))
