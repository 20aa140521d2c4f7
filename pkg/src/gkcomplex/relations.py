"""Diagram classes of a fixed degree, IHX relations and the quotient space.

The quotient by AS is built into :class:`DiagramVector` (terms are stored
on canonical classes with their sign, and classes with an
orientation-reversing automorphism are dropped).  IHX relations become the
rows of a rational matrix whose columns are the surviving classes; the
non-pivot columns of its reduced echelon form give a basis of the
quotient.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .diagram import CanonicalClass, Diagram, canonicalize, relabel
from .errors import DegreeMismatch, DegreeOdd, DegreeTooLarge, NegativeDim
from .linalg import RationalMatrix, fstr, row_reduce, worker_count

log = logging.getLogger(__name__)

DEFAULT_CAP = 14


def check_degree(degree: int, cap: int = DEFAULT_CAP) -> None:
    if degree < 2 or degree % 2:
        raise DegreeOdd(f"degree must be a positive even integer, got {degree}")
    if degree > cap:
        raise DegreeTooLarge(f"degree {degree} exceeds the cap {cap}")


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class _State:
    nv: int
    loops: bool
    used: list[int]
    partner: list[int]
    touched: int


def _extend(st: _State) -> Iterator[_State | None]:
    """Children of a partial matching; ``None`` marks a complete one.

    The lowest free slot of the lowest open vertex is matched.  Free slots
    of one vertex are interchangeable and so are untouched vertices, so
    only the first free slot of each vertex and the first untouched vertex
    are tried.  A touched prefix with no free slot left is a closed
    component and is cut.
    """
    v = next((i for i in range(st.nv) if st.used[i] < 3), None)
    if v is None:
        yield None
        return
    if v >= st.touched:
        return
    p = 3 * v + st.used[v]
    targets = []
    for w in range(v, st.touched):
        free = 3 - st.used[w] - (1 if w == v else 0)
        if free > 0 and (w != v or st.loops):
            targets.append(w)
    if st.touched < st.nv:
        targets.append(st.touched)
    for w in targets:
        used = list(st.used)
        used[v] += 1
        q = 3 * w + used[w]
        used[w] += 1
        partner = list(st.partner)
        partner[p], partner[q] = q, p
        yield _State(st.nv, st.loops, used, partner, max(st.touched, w + 1))


def _walk(st: _State) -> Iterator[Diagram]:
    stack = [st]
    while stack:
        cur = stack.pop()
        for child in _extend(cur):
            if child is None:
                pairs = tuple((p, q) for p, q in enumerate(cur.partner) if p < q)
                rots = tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(cur.nv))
                yield Diagram(rots, pairs)
            else:
                stack.append(child)


def labelled_candidates(degree: int, allow_tadpoles: bool = False) -> Iterator[Diagram]:
    """Connected matchings in breadth-first vertex order (several per class)."""
    n = degree
    root = _State(n, allow_tadpoles, [0] * n, [-1] * (3 * n), 1)
    yield from _walk(root)


def _classes_below(st: _State) -> set[CanonicalClass]:
    return {canonicalize(d)[0] for d in _walk(st)}


def _work_units(root: _State, target: int) -> list[_State]:
    frontier = [root]
    while len(frontier) < target:
        nxt = []
        for st in frontier:
            for child in _extend(st):
                if child is None:
                    return frontier
                nxt.append(child)
        if not nxt:
            break
        frontier = nxt
    return frontier


def class_sort_key(cls: CanonicalClass):
    return (cls.has_loops, cls.canonical_form.pairing)


@lru_cache(maxsize=32)
def _enumerate(degree: int, allow_tadpoles: bool) -> tuple[CanonicalClass, ...]:
    root = _State(degree, allow_tadpoles, [0] * degree, [-1] * (3 * degree), 1)
    workers = worker_count()
    found: set[CanonicalClass] = set()
    if workers > 1 and degree >= 10:
        units = _work_units(root, 8 * workers)
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_classes_below, units):
                found |= part
    else:
        found = _classes_below(root)
    return tuple(sorted(found, key=class_sort_key))


def enumerate_diagrams(degree: int, allow_tadpoles: bool = False, cap: int = DEFAULT_CAP) -> tuple[CanonicalClass, ...]:
    """Every isomorphism class of connected trivalent diagrams, once.

    AS-vanishing classes are included and flagged by ``as_zero``.  Loop
    classes are only produced with ``allow_tadpoles``.
    """
    check_degree(degree, cap)
    if degree >= 12:
        log.warning("enumerating degree %d; this is slow", degree)
    return _enumerate(degree, allow_tadpoles)


# ---------------------------------------------------------------------------
# formal combinations


Term = Union[Diagram, CanonicalClass]


class DiagramVector:
    """Finite rational combination of canonical classes, modulo AS."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[object, Term]] = ()):
        acc: dict[CanonicalClass, Fraction] = {}
        for coeff, t in terms:
            if isinstance(t, CanonicalClass):
                cls, sign = t, 1
            else:
                cls, sign = canonicalize(t)
            if cls.as_zero:
                continue
            acc[cls] = acc.get(cls, Fraction(0)) + sign * Fraction(coeff)
        self._terms = {c: v for c, v in acc.items() if v}

    @classmethod
    def of(cls, t: Term, coeff=1) -> "DiagramVector":
        return cls([(coeff, t)])

    @property
    def terms(self) -> dict[CanonicalClass, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: class_sort_key(kv[0]))

    def degree(self) -> int | None:
        degs = {c.degree for c in self._terms}
        if len(degs) > 1:
            raise DegreeMismatch(f"mixed degrees {sorted(degs)}")
        return degs.pop() if degs else None

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "DiagramVector") -> "DiagramVector":
        return DiagramVector([(v, c) for c, v in self._terms.items()] + [(v, c) for c, v in other._terms.items()])

    def __neg__(self):
        return DiagramVector([(-v, c) for c, v in self._terms.items()])

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return DiagramVector([(k * v, c) for c, v in self._terms.items()])

    def __eq__(self, other):
        if not isinstance(other, DiagramVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = " + ".join(f"{fstr(v)}*<{c.degree}:{c.canonical_form.pairing}>" for c, v in self.items())
        return f"DiagramVector({body or '0'})"


# ---------------------------------------------------------------------------
# IHX


def ihx_terms(d: Diagram, p: int, q: int) -> tuple[Diagram, Diagram, Diagram]:
    """The I, H and X diagrams of the edge joining positions ``p`` and ``q``.

    Positions are ``3*vertex + slot``.  Writing the endpoint rotations as
    ``u = (a, b, e)`` and ``v = (e', c, d)`` (cyclic shifts, so the
    orientation is unchanged):

        H:  u = (c, b, e),  v = (e', a, d)
        X:  u = (c, a, e),  v = (e', b, d)

    and ``I - H + X`` is the Jacobi identity
    ``f_abe f_ecd + f_bce f_ead + f_cae f_ebd = 0`` read as diagrams.
    """
    d = relabel(d, range(d.vertex_count)) if d.half_edges != tuple(range(3 * d.vertex_count)) else d
    u, v = p // 3, q // 3
    if u == v:
        raise ValueError("IHX needs an edge with two distinct endpoints")
    ru = d.rotations[u]
    i = ru.index(p)
    a, b = ru[(i + 1) % 3], ru[(i + 2) % 3]
    rv = d.rotations[v]
    j = rv.index(q)
    c, dd = rv[(j + 1) % 3], rv[(j + 2) % 3]

    def with_uv(rot_u, rot_v):
        rots = list(d.rotations)
        rots[u], rots[v] = rot_u, rot_v
        return Diagram(tuple(rots), d.pairing)

    i_d = with_uv((a, b, p), (q, c, dd))
    h_d = with_uv((c, b, p), (q, a, dd))
    x_d = with_uv((c, a, p), (q, b, dd))
    return i_d, h_d, x_d


def ihx_vector(d: Diagram, p: int, q: int) -> DiagramVector:
    i_d, h_d, x_d = ihx_terms(d, p, q)
    return DiagramVector([(1, i_d), (-1, h_d), (1, x_d)])


def _normal_key(vec: DiagramVector):
    items = vec.items()
    lead = items[0][1]
    return tuple((c, v / lead) for c, v in items)


def ihx_relations(degree: int, allow_tadpoles: bool = False, cap: int = DEFAULT_CAP) -> list[DiagramVector]:
    """IHX relations on every non-loop edge of every class of ``degree``.

    Edges in one automorphism orbit give the same relation up to sign;
    such repeats, and relations that vanish modulo AS, are dropped.
    """
    seen = set()
    out = []
    for cls in enumerate_diagrams(degree, allow_tadpoles, cap):
        d = cls.canonical_form
        for p, q in d.pairing:
            if p // 3 == q // 3:
                continue
            vec = ihx_vector(d, p, q)
            if not vec:
                continue
            key = _normal_key(vec)
            if key in seen:
                continue
            seen.add(key)
            out.append(vec)
    return out


# ---------------------------------------------------------------------------
# the quotient space


@dataclass(frozen=True)
class ASpaceBasis:
    degree: int
    generators: tuple[CanonicalClass, ...]
    relations: tuple[DiagramVector, ...]
    relation_matrix: RationalMatrix
    reduced: RationalMatrix
    pivots: tuple[int, ...]
    basis_columns: tuple[int, ...]
    index: dict = field(repr=False, compare=False, hash=False)

    @property
    def dimension(self) -> int:
        return len(self.generators) - len(self.pivots)

    @property
    def basis(self) -> tuple[CanonicalClass, ...]:
        return tuple(self.generators[j] for j in self.basis_columns)

    def reduce(self, v) -> tuple[Fraction, ...]:
        return reduce(v, self)


def relation_matrix(relations: Sequence[DiagramVector], generators: Sequence[CanonicalClass]) -> RationalMatrix:
    index = {c: j for j, c in enumerate(generators)}
    rows = [{index[c]: v for c, v in rel.terms.items()} for rel in relations]
    return RationalMatrix.from_rows(rows, len(generators))


def a_space_basis(
    degree: int,
    allow_tadpoles: bool = False,
    cap: int = DEFAULT_CAP,
    generator_order: Sequence[int] | None = None,
) -> ASpaceBasis:
    """Basis of the degree-``degree`` quotient with reduction data.

    Generators are the classes that survive AS.  ``generator_order`` is an
    optional permutation of them (it changes which classes become the
    basis, never the dimension).
    """
    classes = enumerate_diagrams(degree, allow_tadpoles, cap)
    gens = [c for c in classes if not c.as_zero]
    if generator_order is not None:
        gens = [gens[i] for i in generator_order]
    rels = ihx_relations(degree, allow_tadpoles, cap)
    m = relation_matrix(rels, gens)
    reduced, pivots = row_reduce(m)
    pivot_set = set(pivots)
    basis_cols = tuple(j for j in range(len(gens)) if j not in pivot_set)
    return ASpaceBasis(
        degree=degree,
        generators=tuple(gens),
        relations=tuple(rels),
        relation_matrix=m,
        reduced=reduced,
        pivots=pivots,
        basis_columns=basis_cols,
        index={c: j for j, c in enumerate(gens)},
    )


def _as_vector(v) -> DiagramVector:
    if isinstance(v, DiagramVector):
        return v
    if isinstance(v, (Diagram, CanonicalClass)):
        return DiagramVector.of(v)
    raise TypeError(f"cannot reduce {type(v).__name__}")


def reduce(v, b: ASpaceBasis) -> tuple[Fraction, ...]:
    """Coordinates of the image of ``v`` in the quotient, in the basis of ``b``."""
    vec = _as_vector(v)
    for cls in vec.terms:
        if cls.degree != b.degree:
            raise DegreeMismatch(f"term of degree {cls.degree} reduced in degree {b.degree}")
    x: dict[int, Fraction] = {}
    for cls, coeff in vec.terms.items():
        j = b.index.get(cls)
        if j is None:
            raise ValueError("term is not a generator of this basis")
        x[j] = x.get(j, Fraction(0)) + coeff
    for r, c in enumerate(b.pivots):
        f = x.get(c)
        if not f:
            continue
        for j, w in b.reduced.row(r).items():
            x[j] = x.get(j, Fraction(0)) - f * w
    return tuple(x.get(j, Fraction(0)) for j in b.basis_columns)


def dimension(degree: int, cap: int = DEFAULT_CAP) -> int:
    return a_space_basis(degree, cap=cap).dimension


# ---------------------------------------------------------------------------
# polynomial algebra


def poly_ring_dims(connected_dims: Sequence[int], max_degree: int) -> tuple[int, ...]:
    """Graded dimensions of the free commutative algebra on the given generators.

    ``connected_dims[j-1]`` generators sit in degree ``2j``; missing
    entries count as zero.  Entry ``i`` of the result is the dimension in
    degree ``2i``, for ``0 <= 2i <= max_degree``; it is the coefficient of
    ``x^i`` in ``prod_j (1 - x^j)^(-dims[j])``.
    """
    if any(d < 0 for d in connected_dims):
        raise NegativeDim("generator counts must be non-negative")
    n = max_degree // 2
    coeffs = [1] + [0] * n
    for j, dj in enumerate(connected_dims, start=1):
        if j > n:
            break
        for _ in range(dj):
            for m in range(j, n + 1):
                coeffs[m] += coeffs[m - j]
    return tuple(coeffs)
