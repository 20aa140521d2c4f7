"""Vertex-oriented trivalent multigraphs (Jacobi diagrams).

A diagram is stored as a rotation system: every vertex carries an ordered
triple of half-edge ids, and a fixed-point-free involution on half-edges
gives the edges.  Reordering a triple by an odd permutation negates the
diagram (AS), so the orientation is the triple modulo even permutations.

Canonical forms are computed on the underlying multigraph with colour
refinement plus exhaustive individualisation; the half-edge data of the
canonical form is then fixed by sorting each vertex's slots by neighbour
label.  Every diagram is ``sign * canonical_form`` in the AS quotient.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import BadPairing, Disconnected, NonTrivalent

Rotation = tuple[int, int, int]

_EVEN = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def perm3_sign(p: Sequence[int]) -> int:
    """Sign of a permutation of (0, 1, 2) given in one-line form."""
    return 1 if tuple(p) in _EVEN else -1


@dataclass(frozen=True)
class Diagram:
    """Connected trivalent multigraph with an ordered triple at each vertex.

    ``pairing`` holds the edges as sorted pairs of half-edge ids.  Use
    :func:`build_diagram` to construct validated instances.
    """

    rotations: tuple[Rotation, ...]
    pairing: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @property
    def degree(self) -> int:
        return len(self.rotations)

    @property
    def half_edges(self) -> tuple[int, ...]:
        return tuple(h for rot in self.rotations for h in rot)

    @cached_property
    def slot_partner(self) -> tuple[int, ...]:
        """Partner map on positions ``3*v + s`` (slot ``s`` of vertex ``v``)."""
        pos = {h: i for i, h in enumerate(self.half_edges)}
        out = [0] * len(pos)
        for a, b in self.pairing:
            out[pos[a]] = pos[b]
            out[pos[b]] = pos[a]
        return tuple(out)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, int, int], ...]:
        """Vertex reached through each slot; a loop lists its vertex twice."""
        sp = self.slot_partner
        return tuple(
            (sp[3 * v] // 3, sp[3 * v + 1] // 3, sp[3 * v + 2] // 3)
            for v in range(self.vertex_count)
        )

    @cached_property
    def loop_count(self) -> int:
        sp = self.slot_partner
        return sum(1 for p, q in enumerate(sp) if p < q and p // 3 == q // 3)

    @property
    def has_loops(self) -> bool:
        return self.loop_count > 0

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (vertex, vertex) pairs, one entry per edge."""
        sp = self.slot_partner
        return [(p // 3, q // 3) for p, q in enumerate(sp) if p < q]

    def multiplicities(self) -> tuple[list[dict[int, int]], list[int]]:
        adj: list[dict[int, int]] = [dict() for _ in range(self.vertex_count)]
        loops = [0] * self.vertex_count
        for v, w in self.edges():
            if v == w:
                loops[v] += 1
            else:
                adj[v][w] = adj[v].get(w, 0) + 1
                adj[w][v] = adj[w].get(v, 0) + 1
        return adj, loops

    def with_rotation(self, vertex: int, rotation: Sequence[int]) -> "Diagram":
        """Copy with the rotation at ``vertex`` replaced by a reordering."""
        if sorted(rotation) != sorted(self.rotations[vertex]):
            raise NonTrivalent(f"vertex {vertex}: {tuple(rotation)} is not a reordering")
        rots = list(self.rotations)
        rots[vertex] = tuple(rotation)
        return Diagram(tuple(rots), self.pairing)


def _normalize_pairing(pairing) -> list[tuple[int, int]]:
    if isinstance(pairing, Mapping):
        items = list(pairing.items())
        for a, b in items:
            if pairing.get(b) != a:
                raise BadPairing(f"pairing is not an involution at {a}")
        pairs = {tuple(sorted((a, b))) for a, b in items}
    else:
        pairs = []
        for pr in pairing:
            if len(pr) != 2:
                raise BadPairing(f"edge {pr!r} does not have two ends")
            pairs.append(tuple(sorted(pr)))
    return sorted(pairs)


def build_diagram(vertex_count: int, rotations: Iterable[Sequence[int]], pairing) -> Diagram:
    """Validate the inputs and return a :class:`Diagram`.

    ``pairing`` is either a mapping ``h -> partner`` (given in both
    directions) or an iterable of two-element edges.
    """
    rots = [tuple(r) for r in rotations]
    if vertex_count < 1 or len(rots) != vertex_count:
        raise NonTrivalent(f"expected {vertex_count} vertex rotations, got {len(rots)}")
    seen: dict[int, int] = {}
    for v, rot in enumerate(rots):
        if len(rot) != 3:
            raise NonTrivalent(f"vertex {v} has {len(rot)} half-edges, expected 3")
        for h in rot:
            if h in seen:
                raise NonTrivalent(f"half-edge {h} appears at vertices {seen[h]} and {v}")
            seen[h] = v
    pairs = _normalize_pairing(pairing)
    covered: dict[int, int] = {}
    for a, b in pairs:
        if a == b:
            raise BadPairing(f"half-edge {a} is paired with itself")
        for h in (a, b):
            if h in covered:
                raise BadPairing(f"half-edge {h} is paired twice")
            if h not in seen:
                raise BadPairing(f"half-edge {h} is not incident to any vertex")
            covered[h] = 1
    missing = set(seen) - set(covered)
    if missing:
        raise BadPairing(f"half-edges {sorted(missing)} are unpaired")
    d = Diagram(tuple(rots), tuple(pairs))  # type: ignore[arg-type]
    if not _connected(d):
        raise Disconnected("the underlying multigraph is not connected")
    return d


def _connected(d: Diagram) -> bool:
    nbrs = d.neighbors
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for w in nbrs[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == d.vertex_count


def from_neighbor_table(nb: Sequence[Sequence[int]]) -> Diagram:
    """Diagram with slots sorted by neighbour; parallel slots pair in order.

    ``nb[i]`` is the sorted triple of neighbour labels of vertex ``i``.
    The result uses half-edge ids ``3*i + s`` and standard rotations.
    """
    n = len(nb)
    partner = [-1] * (3 * n)
    for i in range(n):
        row = nb[i]
        for s in range(3):
            if partner[3 * i + s] >= 0:
                continue
            j = row[s]
            if j == i:
                t = next(t for t in range(s + 1, 3) if row[t] == i)
                partner[3 * i + s] = 3 * i + t
                partner[3 * i + t] = 3 * i + s
            else:
                r = sum(1 for t in range(s) if row[t] == j)
                ts = [t for t in range(3) if nb[j][t] == i]
                q = 3 * j + ts[r]
                partner[3 * i + s] = q
                partner[q] = 3 * i + s
    rots = tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(n))
    pairs = tuple((p, q) for p, q in enumerate(partner) if p < q)
    return Diagram(rots, pairs)


def relabel(d: Diagram, vertex_perm: Sequence[int], rotation_perms=None) -> Diagram:
    """Isomorphic copy: old vertex ``v`` becomes ``vertex_perm[v]``.

    ``rotation_perms[v]`` reorders the triple of ``v``: the new rotation
    lists old slots ``perm[0], perm[1], perm[2]``.  The copy equals
    ``prod(sign(perm))`` times ``d`` in the AS quotient.  Half-edge ids of
    the result are ``3*new_vertex + new_slot``.
    """
    n = d.vertex_count
    if rotation_perms is None:
        rotation_perms = [(0, 1, 2)] * n
    new_pos = [0] * (3 * n)
    for v in range(n):
        perm = rotation_perms[v]
        for new_s, old_s in enumerate(perm):
            new_pos[3 * v + old_s] = 3 * vertex_perm[v] + new_s
    sp = d.slot_partner
    pairs = tuple(sorted(tuple(sorted((new_pos[p], new_pos[q]))) for p, q in enumerate(sp) if p < q))
    rots = tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(n))
    return Diagram(rots, pairs)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# canonical labelling


@dataclass(frozen=True)
class CanonicalClass:
    """Isomorphism class of an oriented diagram.

    ``as_zero`` is set when some automorphism reverses the orientation, so
    the class is zero modulo AS.
    """

    canonical_form: Diagram
    as_zero: bool

    @property
    def degree(self) -> int:
        return self.canonical_form.vertex_count

    @property
    def has_loops(self) -> bool:
        return self.canonical_form.has_loops


def _refine(cells: list[list[int]], adj: list[dict[int, int]]) -> list[list[int]]:
    while True:
        cell_of = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci
        new: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            sig = {v: tuple(sorted((cell_of[w], m) for w, m in adj[v].items())) for v in cell}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                new.append(cell)
            else:
                new.extend([v for v in cell if sig[v] == k] for k in keys)
        if len(new) == len(cells):
            return new
        cells = new


def _search(d: Diagram) -> tuple[tuple[tuple[int, int, int], ...], list[list[int]]]:
    """Minimal neighbour table over all leaves, plus every labelling attaining it."""
    adj, loops = d.multiplicities()
    n = d.vertex_count
    nbrs = d.neighbors
    key = {v: (loops[v], tuple(sorted(adj[v].values()))) for v in range(n)}
    cells = [[v for v in range(n) if key[v] == k] for k in sorted(set(key.values()))]

    best: list = [None, []]

    def leaf(cells):
        lab = [0] * n
        for i, cell in enumerate(cells):
            lab[cell[0]] = i
        inv = [c[0] for c in cells]
        enc = tuple(tuple(sorted(lab[w] for w in nbrs[v])) for v in inv)
        if best[0] is None or enc < best[0]:
            best[0] = enc
            best[1] = [lab]
        elif enc == best[0]:
            best[1].append(lab)

    def rec(cells):
        cells = _refine(cells, adj)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            leaf(cells)
            return
        target = cells[idx]
        for v in target:
            rest = [w for w in target if w != v]
            rec(cells[:idx] + [[v], rest] + cells[idx + 1 :])

    rec(cells)
    return best[0], best[1]


def _labelling_sign(d: Diagram, nb, lab: Sequence[int]) -> int:
    """Orientation sign of the isomorphism ``d -> from_neighbor_table(nb)`` over ``lab``."""
    sp = d.slot_partner
    n = d.vertex_count
    used = [False] * (3 * n)
    image = [0] * (3 * n)
    for p, q in enumerate(sp):
        if q < p:
            continue
        i, j = lab[p // 3], lab[q // 3]
        if i == j:
            s, t = (3 * i + k for k in range(3) if nb[i][k] == i)
        else:
            s = next(3 * i + k for k in range(3) if nb[i][k] == j and not used[3 * i + k])
            t = next(3 * j + k for k in range(3) if nb[j][k] == i and not used[3 * j + k])
        used[s] = used[t] = True
        image[p], image[q] = s, t
    sign = 1
    for v in range(n):
        base = 3 * lab[v]
        sign *= perm3_sign((image[3 * v] - base, image[3 * v + 1] - base, image[3 * v + 2] - base))
    return sign


@lru_cache(maxsize=200_000)
def _canonical(d: Diagram) -> tuple[CanonicalClass, int, int]:
    nb, labs = _search(d)
    signs = {_labelling_sign(d, nb, lab) for lab in labs}
    as_zero = d.has_loops or len(signs) > 1
    sign = 1 if as_zero else signs.pop()
    return CanonicalClass(from_neighbor_table(nb), as_zero), sign, len(labs)


def canonicalize(d: Diagram) -> tuple[CanonicalClass, int]:
    """Return ``(class, sign)`` with ``d == sign * class.canonical_form`` modulo AS.

    For an ``as_zero`` class the sign carries no information and is +1.
    """
    cls, sign, _ = _canonical(d)
    return cls, sign


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class AutInfo:
    aut_order: int
    edge_fixing_order: int
    vertex_action_order: int


def vertex_automorphisms(d: Diagram) -> list[tuple[int, ...]]:
    """All multiplicity-preserving vertex bijections, by backtracking."""
    adj, loops = d.multiplicities()
    n = d.vertex_count
    profile = [(loops[v], tuple(sorted(adj[v].values()))) for v in range(n)]
    order = []
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    phi = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def rec(k):
        if k == n:
            found.append(tuple(phi))
            return
        v = order[k]
        for w in range(n):
            if used[w] or profile[w] != profile[v]:
                continue
            if any(adj[v].get(u, 0) != adj[w].get(phi[u], 0) for u in order[:k]):
                continue
            phi[v] = w
            used[w] = True
            rec(k + 1)
            used[w] = False
            phi[v] = -1

    rec(0)
    return found


def automorphisms(d: Diagram) -> AutInfo:
    """Orders of the half-edge automorphism group and its two factors.

    An automorphism is a vertex bijection with a compatible bijection of
    half-edges preserving the pairing.  The vertex-fixing ones permute
    parallel edges and flip loops.
    """
    adj, loops = d.multiplicities()
    fixing = 2 ** sum(loops)
    for v in range(d.vertex_count):
        for w, m in adj[v].items():
            if v < w:
                fixing *= factorial(m)
    acting = len(vertex_automorphisms(d))
    return AutInfo(fixing * acting, fixing, acting)


def has_tadpole(d: Diagram) -> bool:
    return d.has_loops


# ---------------------------------------------------------------------------
# named diagrams


def theta() -> Diagram:
    return build_diagram(2, [(0, 1, 2), (3, 4, 5)], [(0, 3), (1, 4), (2, 5)])


def dumbbell() -> Diagram:
    return build_diagram(2, [(0, 1, 2), (3, 4, 5)], [(0, 1), (2, 5), (3, 4)])


def k4() -> Diagram:
    """Complete graph on four vertices."""
    nb = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
    return from_neighbor_table(nb)


def doubled_square() -> Diagram:
    """Four-cycle with two opposite edges doubled."""
    nb = [(1, 1, 2), (0, 0, 3), (0, 3, 3), (1, 2, 2)]
    return from_neighbor_table(nb)


_NAMES = {"Theta": theta, "K4": k4, "DoubledSquare": doubled_square, "Dumbbell": dumbbell}


@lru_cache(maxsize=None)
def _named_classes() -> dict[CanonicalClass, str]:
    return {canonicalize(f())[0]: name for name, f in _NAMES.items()}


def class_name(cls: CanonicalClass) -> str | None:
    """Conventional name of a small class (``Theta``, ``K4``...), else None."""
    return _named_classes().get(cls)


def multigraph_signature(d: Diagram) -> Counter:
    """Multiset of vertex profiles; a cheap isomorphism invariant."""
    adj, loops = d.multiplicities()
    return Counter((loops[v], tuple(sorted(adj[v].values()))) for v in range(d.vertex_count))
