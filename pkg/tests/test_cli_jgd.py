import io

import pytest
import yaml

from gkcomplex.cli import run
from gkcomplex.diagram import canonicalize, doubled_square, dumbbell, k4, theta
from gkcomplex.errors import JgdSemanticError, JgdSyntaxError
from gkcomplex.jgd import parse_jgd, serialize
from gkcomplex.pairing import SurgeryGraph

THETA = """\
# the theta graph
degree 2
vertex 0 : 0 1 2
vertex 1 : 3 4 5
edge 0 3
edge 1 4
edge 2 5
"""


def gk(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, d in (("theta", theta()), ("k4", k4()), ("square", doubled_square()), ("dumbbell", dumbbell())):
        p = tmp_path / f"{name}.jgd"
        p.write_text(serialize(d))
        paths[name] = str(p)
    p = tmp_path / "theta_w.jgd"
    p.write_text(serialize(theta(), weights=(4, 4)))
    paths["theta_w"] = str(p)
    p = tmp_path / "bad.jgd"
    p.write_text("degree 2\nvertex 0 : 0 1 2 6\n")
    paths["bad"] = str(p)
    return paths


def test_parse_theta():
    assert parse_jgd(THETA) == theta()


def test_parse_weights():
    s = parse_jgd(THETA + "weights 2 2\n")
    assert isinstance(s, SurgeryGraph)
    assert s.weights == (2, 2) and s.shape == theta()


def test_four_half_edges_on_a_vertex():
    with pytest.raises(JgdSemanticError) as exc:
        parse_jgd("degree 2\nvertex 0 : 0 1 2 3\nvertex 1 : 4 5 6\n")
    assert exc.value.line == 2


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("vertex 0 : 0 1 2\n", JgdSyntaxError, 1),
        ("degree 2\nvertx 0 : 0 1 2\n", JgdSyntaxError, 2),
        ("degree 2\nvertex 0 0 1 2\n", JgdSyntaxError, 2),
        ("degree 2\nvertex 0 : 0 1 x\n", JgdSyntaxError, 2),
        ("degree 3\n", JgdSemanticError, 1),
        ("degree 2\nvertex 0 : 0 1 2\nvertex 1 : 3 4 5\nedge 0 3\nedge 0 4\n", JgdSemanticError, 5),
        ("degree 2\nvertex 0 : 0 1 2\nvertex 1 : 3 4 5\nedge 0 9\n", JgdSemanticError, 4),
        ("degree 2\nvertex 0 : 0 1 2\nvertex 1 : 3 4 5\nedge 0 3\nedge 1 4\n", JgdSemanticError, 5),
        (THETA + "weights 2\n", JgdSemanticError, 8),
        ("", JgdSyntaxError, 1),
    ],
)
def test_parse_errors_have_locations(text, error, line):
    with pytest.raises(error) as exc:
        parse_jgd(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_disconnected_is_semantic():
    text = "degree 4\n" + "".join(f"vertex {v} : {3*v} {3*v+1} {3*v+2}\n" for v in range(4))
    text += "edge 0 3\nedge 1 4\nedge 2 5\nedge 6 9\nedge 7 10\nedge 8 11\n"
    with pytest.raises(JgdSemanticError):
        parse_jgd(text)


def test_round_trip():
    from gkcomplex.relations import enumerate_diagrams

    fixtures = [theta(), k4(), doubled_square(), dumbbell()]
    fixtures += [c.canonical_form for n in (6, 8) for c in enumerate_diagrams(n, allow_tadpoles=True)]
    for d in fixtures:
        back = parse_jgd(serialize(d))
        assert canonicalize(back) == canonicalize(d)
    s = SurgeryGraph(k4(), (1, 2, 3, 4))
    assert parse_jgd(serialize(s)) == s


def test_dim_command():
    assert gk("dim", "-n", "8") == (0, "2\n", "")
    code, out, _ = gk("dim", "-n", "6", "--format", "structured")
    doc = yaml.safe_load(out)
    assert code == 0 and doc["dimension"] == 1 and doc["verified"] is True


def test_const_command():
    code, out, _ = gk("const", "--k", "3")
    assert code == 0
    assert "correction = 15/112" in out.splitlines()
    doc = yaml.safe_load(gk("const", "--k", "4", "--format", "structured")[1])
    assert doc["correction"] == "315/992" and doc["zeta_dep"] == "5"


def test_zeta_command(files):
    assert gk("zeta", files["theta"], "--weights", "2,2")[:2] == (0, "4 * [Theta]\n")
    assert gk("zeta", files["theta_w"])[:2] == (0, "16 * [Theta]\n")
    assert gk("zeta", files["dumbbell"])[:2] == (0, "0\n")
    code, out, _ = gk("zeta", files["k4"], "--weights", "2,2,2,2", "--format", "structured")
    doc = yaml.safe_load(out)
    assert code == 0 and doc["degree"] == 4 and len(doc["coordinates"]) == 1


def test_pair_command(files):
    code, out, _ = gk("pair", files["theta"], files["theta"])
    assert code == 0
    assert out == "contract = 24\ncontract_full = 48\n"
    assert gk("pair", files["square"], files["k4"])[1] == "contract = 0\ncontract_full = 0\n"


def test_reduce_command(files):
    assert gk("reduce", files["theta"])[:2] == (0, "1 * [Theta]\n")
    assert gk("reduce", files["dumbbell"])[:2] == (0, "0\n")


def test_enum_command():
    code, out, _ = gk("enum", "-n", "4")
    assert code == 0 and out.startswith("degree 4: 2 classes")
    doc = yaml.safe_load(gk("enum", "-n", "2", "--tadpoles", "--format", "structured")[1])
    assert doc["count"] == 2
    names = {c["name"]: c for c in doc["classes"]}
    assert names["Theta"]["aut_order"] == 12
    assert names["Dumbbell"]["as_zero"] and names["Dumbbell"]["tadpole"]
    assert parse_jgd(names["Theta"]["jgd"]) == theta()


def test_basis_command():
    code, out, _ = gk("basis", "-n", "4")
    assert code == 0 and "dimension 1" in out
    doc = yaml.safe_load(gk("basis", "-n", "8", "--format", "structured")[1])
    assert doc["dimension"] == 2 and len(doc["basis"]) == 2
    assert len(doc["reduction"]) == len(doc["generators"])


def test_lpoly_command():
    assert gk("lpoly", "--k", "2")[:2] == (0, "L2 = (7*p2 - p1^2)/45\n")
    doc = yaml.safe_load(gk("lpoly", "--k", "3", "--format", "structured")[1])
    assert doc["polynomial"] == "(62*p3 - 13*p1*p2 + 2*p1^3)/945"


def test_polydim_command():
    assert gk("polydim", "--dims", "1", "--max", "6")[:2] == (0, "1 1 1 1\n")


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 1),
        (["frobnicate"], 1),
        (["dim"], 1),
        (["dim", "-n", "x"], 1),
        (["dim", "-n", "7"], 1),
        (["const", "--k", "2"], 1),
        (["lpoly", "--k", "11"], 1),
        (["polydim", "--dims", "1,-1", "--max", "4"], 1),
        (["polydim", "--dims", "1", "--max", "5"], 1),
        (["dim", "-n", "16"], 3),
        (["enum", "-n", "8", "--cap", "6"], 3),
        (["reduce", "/nonexistent/file.jgd"], 2),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = gk(*argv)
    assert got == code
    assert out == ""
    assert err.startswith("gk: ")


def test_input_error_codes(files):
    code, out, err = gk("reduce", files["bad"])
    assert code == 2 and out == "" and "line 2" in err
    assert gk("pair", files["theta"], files["k4"])[0] == 2
    assert gk("pair", files["theta"], files["dumbbell"])[0] == 2
    assert gk("zeta", files["theta"], "--weights", "2,2,2")[0] == 2


def test_help_exits_cleanly():
    assert gk("--help")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [("enum", "-n", "6", "--format", "structured"), ("basis", "-n", "6", "--format", "structured"),
     ("const", "--k", "7"), ("dim", "-n", "8", "--format", "structured")],
)
def test_deterministic_output(argv):
    assert gk(*argv) == gk(*argv)


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "gkcomplex", "dim", "-n", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1\n"
