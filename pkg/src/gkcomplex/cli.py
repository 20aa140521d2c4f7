"""Command-line front end: ``gk <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 input-format error, 3 degree cap
exceeded.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field

from . import documents
from .constants import constants_report, l_polynomial
from .diagram import Diagram
from .errors import (
    DegreeMismatch,
    DegreeTooLarge,
    DiagramError,
    GKError,
    JgdError,
    TadpoleTest,
)
from .jgd import read_jgd
from .linalg import rank_exact, rank_modular
from .pairing import SurgeryGraph, contract, contract_full, zeta_vector
from .relations import DEFAULT_CAP, a_space_basis, check_degree, enumerate_diagrams, poly_ring_dims, reduce

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

log = logging.getLogger("gkcomplex")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest degree accepted (default %(default)s)")

    p = _Parser(prog="gk", description="Computations with trivalent diagrams modulo IHX and AS.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enum", parents=[common], help="list diagram classes of a degree")
    s.add_argument("-n", dest="degree", type=int, required=True)
    s.add_argument("--tadpoles", action="store_true", help="include diagrams with loops")

    s = sub.add_parser("dim", parents=[common], help="dimension of the quotient space")
    s.add_argument("-n", dest="degree", type=int, required=True)
    s.add_argument("--no-verify", dest="verify", action="store_false", help="skip the exact rank cross-check")

    s = sub.add_parser("basis", parents=[common], help="basis and reduction data")
    s.add_argument("-n", dest="degree", type=int, required=True)

    s = sub.add_parser("reduce", parents=[common], help="coordinates of a diagram in the basis")
    s.add_argument("paths", nargs=1, metavar="FILE.jgd")

    s = sub.add_parser("pair", parents=[common], help="pairing of a surgery graph with a test diagram")
    s.add_argument("paths", nargs=2, metavar=("SURGERY.jgd", "TEST.jgd"))
    s.add_argument("--weights", type=_int_list)

    s = sub.add_parser("zeta", parents=[common], help="characteristic-class value on a surgery graph")
    s.add_argument("paths", nargs=1, metavar="SURGERY.jgd")
    s.add_argument("--weights", type=_int_list)

    s = sub.add_parser("const", parents=[common], help="framing constants for fiber dimension 2k-1")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("lpoly", parents=[common], help="Hirzebruch L-polynomial L_k")
    s.add_argument("--k", type=int, required=True)

    s = sub.add_parser("polydim", parents=[common], help="graded dimensions of the polynomial algebra")
    s.add_argument("--dims", type=_int_list, required=True)
    s.add_argument("--max", dest="max_degree", type=int, required=True)
    return p


@dataclass(frozen=True)
class CommandRequest:
    command: str
    output_format: str = "text"
    cap: int = DEFAULT_CAP
    degree: int | None = None
    k: int | None = None
    paths: tuple[str, ...] = ()
    tadpoles: bool = False
    weights: tuple[int, ...] | None = None
    verify: bool = True
    dims: tuple[int, ...] = field(default=())
    max_degree: int | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "CommandRequest":
        req = cls(
            command=ns.command,
            output_format=ns.format,
            cap=ns.cap,
            degree=getattr(ns, "degree", None),
            k=getattr(ns, "k", None),
            paths=tuple(getattr(ns, "paths", ()) or ()),
            tadpoles=getattr(ns, "tadpoles", False),
            weights=getattr(ns, "weights", None),
            verify=getattr(ns, "verify", True),
            dims=getattr(ns, "dims", ()) or (),
            max_degree=getattr(ns, "max_degree", None),
        )
        req.validate()
        return req

    def validate(self) -> None:
        if self.cap < 2:
            raise UsageError("--cap must be at least 2")
        if self.k is not None and self.command == "const" and self.k < 3:
            raise UsageError("--k must be at least 3")
        if self.k is not None and self.command == "lpoly" and not 1 <= self.k <= 10:
            raise UsageError("--k must lie in 1..10")
        if self.max_degree is not None and (self.max_degree < 0 or self.max_degree % 2):
            raise UsageError("--max must be a non-negative even integer")
        if self.weights is not None and any(w < 1 for w in self.weights):
            raise UsageError("weights must be positive")


def _emit(req: CommandRequest, text: str, doc) -> str:
    return documents.dump(doc) if req.output_format == "structured" else text + "\n"


def _surgery(path: str, weights) -> SurgeryGraph:
    obj = read_jgd(path)
    if isinstance(obj, SurgeryGraph):
        shape, file_weights = obj.shape, obj.weights
    else:
        shape, file_weights = obj, None
    w = weights or file_weights or (2,) * shape.vertex_count
    if len(w) != shape.vertex_count:
        raise DegreeMismatch(f"{len(w)} weights for a surgery graph of degree {shape.vertex_count}")
    return SurgeryGraph(shape, tuple(w))


def _diagram(path: str) -> Diagram:
    obj = read_jgd(path)
    return obj.shape if isinstance(obj, SurgeryGraph) else obj


def _run_enum(req):
    classes = enumerate_diagrams(req.degree, req.tadpoles, req.cap)
    doc = documents.classes_document(req.degree, classes)
    lines = [f"degree {req.degree}: {len(classes)} classes"]
    for entry in doc["classes"]:
        flags = [f"aut={entry['aut_order']}"]
        if entry["as_zero"]:
            flags.append("as_zero")
        if entry["tadpole"]:
            flags.append("tadpole")
        lines.append(f"  {entry['name']}: " + " ".join(flags))
    return _emit(req, "\n".join(lines), doc)


def _run_dim(req):
    b = a_space_basis(req.degree, cap=req.cap)
    rank = len(b.pivots)
    modular = rank_modular(b.relation_matrix, 3) if b.relation_matrix.rows else 0
    if req.verify:
        exact = rank_exact(b.relation_matrix)
        if exact != rank or modular != rank:
            raise ArithmeticError(f"rank mismatch: echelon {rank}, exact {exact}, modular {modular}")
    doc = {
        "degree": req.degree,
        "dimension": b.dimension,
        "generators": len(b.generators),
        "relations": len(b.relations),
        "rank": rank,
        "verified": req.verify,
    }
    return _emit(req, str(b.dimension), doc)


def _run_basis(req):
    b = a_space_basis(req.degree, cap=req.cap)
    doc = documents.basis_document(b)
    names = documents.basis_names(b)
    lines = [f"degree {b.degree}: dimension {b.dimension}", "basis: " + ", ".join(f"[{n}]" for n in names)]
    for j, cls in enumerate(b.generators):
        name = documents.generator_name(cls, j)
        lines.append(f"  [{name}] = {documents.combination(reduce(cls, b), names)}")
    return _emit(req, "\n".join(lines), doc)


def _run_reduce(req):
    d = _diagram(req.paths[0])
    check_degree(d.vertex_count, req.cap)
    b = a_space_basis(d.vertex_count, cap=req.cap)
    coords = reduce(d, b)
    names = documents.basis_names(b)
    doc = {
        "degree": b.degree,
        "basis": names,
        "coordinates": [documents.fstr(c) for c in coords],
    }
    return _emit(req, documents.combination(coords, names), doc)


def _run_pair(req):
    s = _surgery(req.paths[0], req.weights)
    test = _diagram(req.paths[1])
    one = contract(s, test)
    full = contract_full(s, test)
    doc = {"weights": list(s.weights), "contract": documents.fstr(one), "contract_full": documents.fstr(full)}
    return _emit(req, f"contract = {documents.fstr(one)}\ncontract_full = {documents.fstr(full)}", doc)


def _run_zeta(req):
    s = _surgery(req.paths[0], req.weights)
    check_degree(s.degree, req.cap)
    b = a_space_basis(s.degree, cap=req.cap)
    coords = reduce(zeta_vector(s), b)
    names = documents.basis_names(b)
    doc = {
        "degree": s.degree,
        "weights": list(s.weights),
        "basis": names,
        "coordinates": [documents.fstr(c) for c in coords],
    }
    return _emit(req, documents.combination(coords, names), doc)


def _run_const(req):
    r = constants_report(req.k)
    d = r.as_dict()
    return _emit(req, "\n".join(f"{key} = {val}" for key, val in d.items()), d)


def _run_lpoly(req):
    lp = l_polynomial(req.k)
    doc = {
        "k": req.k,
        "polynomial": str(lp),
        "terms": [
            {"monomial": list(mono), "coefficient": documents.fstr(c)} for mono, c in lp.coefficients
        ],
    }
    return _emit(req, f"L{req.k} = {lp}", doc)


def _run_polydim(req):
    dims = poly_ring_dims(req.dims, req.max_degree)
    doc = {"degrees": list(range(0, req.max_degree + 1, 2)), "dimensions": list(dims)}
    return _emit(req, " ".join(str(x) for x in dims), doc)


_DISPATCH = {
    "enum": _run_enum,
    "dim": _run_dim,
    "basis": _run_basis,
    "reduce": _run_reduce,
    "pair": _run_pair,
    "zeta": _run_zeta,
    "const": _run_const,
    "lpoly": _run_lpoly,
    "polydim": _run_polydim,
}


def run(argv, stdout=None, stderr=None) -> int:
    """Execute one command; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        req = CommandRequest.from_namespace(build_parser().parse_args(argv))
        out = _DISPATCH[req.command](req)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"gk: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except DegreeTooLarge as exc:
        print(f"gk: {exc}", file=stderr)
        return EXIT_CAP
    except (JgdError, DiagramError, DegreeMismatch, TadpoleTest, OSError) as exc:
        print(f"gk: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except (GKError, ValueError) as exc:
        print(f"gk: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(out)
    return EXIT_OK


def main(argv=None) -> None:
    logging.basicConfig(level=logging.WARNING, format="gk: %(levelname)s: %(message)s", stream=sys.stderr)
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
