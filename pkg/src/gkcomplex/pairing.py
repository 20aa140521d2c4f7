"""Cohomological pairing of a clasper surgery graph with test diagrams.

A surgery graph is a diagram whose vertices are handlebodies with three
handles each (the three rotation slots) and whose edges say which handles
are linked.  Evaluating the characteristic class on the resulting bundle
reduces to a tensor contraction: every test vertex placed on handlebody
``i`` contributes the antisymmetric trilinear form ``d_i * sign`` on that
handlebody's three dual classes, every test edge contributes the linking
tensor between the handlebodies at its ends, and everything is summed
over assignments of dual classes to half-edges.

Only weights 2 and 4 come from an actual construction; other positive
integers are accepted and treated linearly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .diagram import Diagram, automorphisms, perm3_sign
from .errors import DegreeMismatch, TadpoleTest
from .relations import ASpaceBasis, DiagramVector, check_degree, enumerate_diagrams, reduce

_PERMS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (1, 0, 2), (2, 1, 0))


@dataclass(frozen=True)
class SurgeryGraph:
    """Handlebody data ``E^shape(d_1 v_1, ..., d_2n v_2n)``."""

    shape: Diagram
    weights: tuple[int, ...]
    link_sign: int = 1

    def __post_init__(self):
        if len(self.weights) != self.shape.vertex_count:
            raise ValueError(f"{len(self.weights)} weights for {self.shape.vertex_count} handlebodies")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if self.link_sign not in (1, -1):
            raise ValueError("link_sign must be +1 or -1")

    @classmethod
    def uniform(cls, shape: Diagram, weight: int = 2) -> "SurgeryGraph":
        return cls(shape, (weight,) * shape.vertex_count)

    @property
    def degree(self) -> int:
        return self.shape.vertex_count

    def vertex_form(self, i: int) -> "VertexForm":
        return VertexForm(self.weights[i])


@dataclass(frozen=True)
class VertexForm:
    """Trilinear form on the dual classes of one handlebody.

    Arguments are slot indices 0, 1, 2 of the handlebody's rotation.  The
    value on ``(0, 1, 2)`` is 1 against half the fundamental class, hence
    ``weight`` against the whole class; the form is alternating.
    """

    weight: int

    def __call__(self, x: int, y: int, z: int) -> int:
        if len({x, y, z}) < 3:
            return 0
        return self.weight * perm3_sign((x, y, z))


def _check(s: SurgeryGraph, test: Diagram) -> None:
    if test.vertex_count != s.degree:
        raise DegreeMismatch(f"test diagram has degree {test.vertex_count}, surgery graph {s.degree}")
    if test.has_loops:
        raise TadpoleTest("test diagrams must not contain loops")


def _bfs_order(d: Diagram) -> list[int]:
    order, seen, queue = [], {0}, deque([0])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in d.neighbors[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def _contraction(s: SurgeryGraph, test: Diagram, placement: list[int] | None) -> Fraction:
    """Sum over placements (all, or the given one) and dual-class assignments."""
    n = s.degree
    shape_sp = s.shape.slot_partner
    test_sp = test.slot_partner
    forms = [s.vertex_form(i) for i in range(n)]
    link = s.link_sign
    order = _bfs_order(test)
    place = [-1] * n
    slot = [-1] * (3 * n)  # test position -> shape position
    taken = [False] * n
    total = 0

    def rec(k: int, acc: int):
        nonlocal total
        if k == n:
            total += acc
            return
        v = order[k]
        cands = [placement[v]] if placement is not None else [h for h in range(n) if not taken[h]]
        for h in cands:
            if taken[h]:
                continue
            place[v] = h
            taken[h] = True
            for perm in _PERMS:
                # test slot t of v carries the dual class of shape slot perm[t] of h
                ok = True
                factor = 1
                for t in range(3):
                    q = test_sp[3 * v + t]
                    if place[q // 3] < 0 or q // 3 == v:
                        continue
                    if shape_sp[3 * h + perm[t]] != slot[q]:
                        ok = False
                        break
                    factor *= link
                if not ok:
                    continue
                value = forms[h](*perm)
                for t in range(3):
                    slot[3 * v + t] = 3 * h + perm[t]
                rec(k + 1, acc * value * factor)
                for t in range(3):
                    slot[3 * v + t] = -1
            taken[h] = False
            place[v] = -1

    rec(0, 1)
    return Fraction(total)


def contract(s: SurgeryGraph, test: Diagram) -> Fraction:
    """Pairing with test vertex ``i`` placed on handlebody ``i``."""
    _check(s, test)
    return _contraction(s, test, list(range(s.degree)))


def contract_full(s: SurgeryGraph, test: Diagram) -> Fraction:
    """Pairing summed over all placements of test vertices on handlebodies."""
    _check(s, test)
    return _contraction(s, test, None)


def zeta_vector(s: SurgeryGraph) -> DiagramVector:
    """``sum over loop-free classes G of contract_full(s, G) / |Aut G| * [G]``."""
    check_degree(s.degree, cap=max(s.degree, 2))
    terms = []
    for cls in enumerate_diagrams(s.degree, allow_tadpoles=False, cap=max(s.degree, 2)):
        g = cls.canonical_form
        value = contract_full(s, g)
        if value:
            terms.append((value / automorphisms(g).aut_order, cls))
    return DiagramVector(terms)


def zeta_evaluate(s: SurgeryGraph, b: ASpaceBasis) -> tuple[Fraction, ...]:
    """Coordinates of the characteristic-class value on ``s`` in the basis ``b``."""
    if b.degree != s.degree:
        raise DegreeMismatch(f"basis of degree {b.degree} for a surgery graph of degree {s.degree}")
    return reduce(zeta_vector(s), b)
