"""Reader and writer for the ``.jgd`` one-diagram text format.

::

    degree 2
    vertex 0 : 0 1 2
    vertex 1 : 3 4 5
    edge 0 3
    edge 1 4
    edge 2 5
    weights 2 2        # optional; turns the file into a surgery graph

``#`` starts a comment.  Half-edge ids are the integers ``0 .. 3*degree-1``.
"""

from __future__ import annotations

from .diagram import Diagram, build_diagram, relabel
from .errors import DiagramError, JgdSemanticError, JgdSyntaxError
from .pairing import SurgeryGraph


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def _int(tok: tuple[str, int], lineno: int, what: str) -> int:
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise JgdSyntaxError(f"expected an integer {what}, found {text!r}", lineno, col) from None


def parse_jgd(text: str) -> Diagram | SurgeryGraph:
    """Parse a document; returns a :class:`SurgeryGraph` when it has ``weights``."""
    degree = None
    degree_line = 1
    rotations: dict[int, tuple[int, int, int]] = {}
    owner: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    paired: dict[int, int] = {}
    weights = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        last = lineno
        word, col = toks[0]
        if degree is None and word != "degree":
            raise JgdSyntaxError(f"expected 'degree' before {word!r}", lineno, col)
        if word == "degree":
            if degree is not None:
                raise JgdSyntaxError("repeated 'degree' directive", lineno, col)
            if len(toks) != 2:
                raise JgdSyntaxError("'degree' takes exactly one integer", lineno, col)
            degree = _int(toks[1], lineno, "degree")
            degree_line = lineno
            if degree < 2 or degree % 2:
                raise JgdSemanticError(f"degree must be a positive even integer, got {degree}", lineno, toks[1][1])
        elif word == "vertex":
            if edges:
                raise JgdSyntaxError("'vertex' after 'edge' lines", lineno, col)
            if len(toks) < 3 or toks[2][0] != ":":
                raise JgdSyntaxError("expected 'vertex <i> : <h1> <h2> <h3>'", lineno, col)
            v = _int(toks[1], lineno, "vertex index")
            hs = [_int(t, lineno, "half-edge id") for t in toks[3:]]
            if not 0 <= v < degree:
                raise JgdSemanticError(f"vertex index {v} outside 0..{degree - 1}", lineno, toks[1][1])
            if v in rotations:
                raise JgdSemanticError(f"vertex {v} listed twice", lineno, toks[1][1])
            if len(hs) != 3:
                bad = toks[6][1] if len(toks) > 6 else col
                raise JgdSemanticError(f"vertex {v} has {len(hs)} half-edges, expected 3", lineno, bad)
            for h, tok in zip(hs, toks[3:]):
                if not 0 <= h < 3 * degree:
                    raise JgdSemanticError(f"half-edge id {h} outside 0..{3 * degree - 1}", lineno, tok[1])
                if h in owner:
                    raise JgdSemanticError(f"half-edge {h} already belongs to vertex {owner[h]}", lineno, tok[1])
                owner[h] = v
            rotations[v] = tuple(hs)  # type: ignore[assignment]
        elif word == "edge":
            if len(toks) != 3:
                raise JgdSyntaxError("expected 'edge <ha> <hb>'", lineno, col)
            a = _int(toks[1], lineno, "half-edge id")
            b = _int(toks[2], lineno, "half-edge id")
            for h, tok in ((a, toks[1]), (b, toks[2])):
                if h not in owner:
                    raise JgdSemanticError(f"half-edge {h} is not incident to any vertex", lineno, tok[1])
                if h in paired:
                    raise JgdSemanticError(f"half-edge {h} already paired on line {paired[h]}", lineno, tok[1])
            if a == b:
                raise JgdSemanticError(f"half-edge {a} paired with itself", lineno, toks[2][1])
            paired[a] = paired[b] = lineno
            edges.append((a, b))
        elif word == "weights":
            if weights is not None:
                raise JgdSyntaxError("repeated 'weights' directive", lineno, col)
            weights = tuple(_int(t, lineno, "weight") for t in toks[1:])
            for w, tok in zip(weights, toks[1:]):
                if w < 1:
                    raise JgdSemanticError("weights must be positive", lineno, tok[1])
        else:
            raise JgdSyntaxError(f"unknown directive {word!r}", lineno, col)
    if degree is None:
        raise JgdSyntaxError("empty document: missing 'degree'", 1, 1)
    if len(rotations) != degree:
        raise JgdSemanticError(f"{len(rotations)} vertex lines for degree {degree}", last or degree_line)
    unpaired = sorted(set(owner) - set(paired))
    if unpaired:
        raise JgdSemanticError(f"unpaired half-edges {unpaired}", last)
    try:
        d = build_diagram(degree, [rotations[v] for v in range(degree)], edges)
    except DiagramError as exc:
        raise JgdSemanticError(str(exc), degree_line) from None
    if weights is None:
        return d
    if len(weights) != degree:
        raise JgdSemanticError(f"{len(weights)} weights for degree {degree}", last)
    return SurgeryGraph(d, weights)


def read_jgd(path) -> Diagram | SurgeryGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_jgd(fh.read())


def serialize(d: Diagram | SurgeryGraph, weights=None) -> str:
    """``.jgd`` text; half-edge ids are renumbered into ``0 .. 3*degree-1`` if needed."""
    if isinstance(d, SurgeryGraph):
        weights = d.weights if weights is None else weights
        d = d.shape
    if set(d.half_edges) != set(range(3 * d.vertex_count)):
        d = relabel(d, range(d.vertex_count))
    lines = [f"degree {d.vertex_count}"]
    for v, rot in enumerate(d.rotations):
        lines.append(f"vertex {v} : {rot[0]} {rot[1]} {rot[2]}")
    for a, b in d.pairing:
        lines.append(f"edge {a} {b}")
    if weights is not None:
        lines.append("weights " + " ".join(str(w) for w in weights))
    return "\n".join(lines) + "\n"
