import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowkit.bb import QuadraticSpace
from chowkit.cli import main, load_model_file
from chowkit.cli.parser import ModelSemanticError, ModelSyntaxError, format_model, format_poly, parse_model_file
from chowkit.cli.report import SCHEMA_VERSION, VerificationReport, emit
from chowkit.cli.suites import SuiteError, SuiteSpec, run_suite
from chowkit.gca import Presentation, build_algebra, integrate
from chowkit.models import CurveConfig, K3Config

P2 = """
# the projective plane
algebra P2 {
  dim = 2;
  gens { h: 1 }
  rels { h^3 = 0; }
  integral { h^2 = 1; }
}
"""


def test_bundled_k3_file():
    cfg = load_model_file("k3_rho1.model")
    assert isinstance(cfg, K3Config) and cfg.picard == ((2,),)
    assert cfg.b2 == 22


def test_parse_algebra():
    p = parse_model_file(P2)
    assert isinstance(p, Presentation)
    A = build_algebra(p)
    assert A.dims == (1, 1, 1) and integrate(A.generator("h") ** 2) == 1


def test_parse_quadform_and_curve():
    V = parse_model_file("quadform { gram = [[0,1],[1,0]] }")
    assert isinstance(V, QuadraticSpace) and V.q([1, 1]) == 2 and V.q([1, 0]) == 0
    assert parse_model_file("curve { genus = 2; degree = 5 }") == CurveConfig(2, 5)
    cfg = parse_model_file("k3 { gram = [[2]]; transcendental = [[0, 1], [1, 0]] }")
    assert cfg.t == 2


def test_rationals_and_parentheses():
    p = parse_model_file("algebra X { dim = 2; gens { a: 1, b: 1 } "
                         "rels { (a + b)^2 = 1/2*a*b; a^2 = -3/4*b^2 } integral { b^2 = 2/3 } }")
    A = build_algebra(p)
    assert integrate(A.generator("b") ** 2) == Fraction(2, 3)


def test_inhomogeneous_relation_is_semantic_error():
    text = "algebra X {\n  dim = 2;\n  gens { a: 1, o: 2 }\n  rels { a*a = 2*o + 1 }\n}\n"
    with pytest.raises(ModelSemanticError) as exc:
        parse_model_file(text)
    assert (exc.value.line, exc.value.column) == (4, 10)
    assert "inhomogeneous" in str(exc.value)


@pytest.mark.parametrize("text,line,column", [
    ("algebra X { dim = 2 gens { a: 1 } }", 1, 21),
    ("k3 {\n  gram = [[2]\n}", 3, 1),
    ("curve { genus = 2; degree = x }", 1, 29),
    ("sphere { }", 1, 1),
    ("quadform { gram = [[1, 2/]] }", 1, 26),
])
def test_syntax_errors_have_positions(text, line, column):
    with pytest.raises(ModelSyntaxError) as exc:
        parse_model_file(text)
    assert (exc.value.line, exc.value.column) == (line, column), str(exc.value)


@pytest.mark.parametrize("text", [
    "quadform { gram = [[0, 1], [2, 0]] }",
    "k3 { gram = [[1]] }",
    "curve { genus = 0; degree = 1 }",
    "algebra X { dim = 2; gens { a: 1, a: 1 } }",
    "algebra X { dim = 2; gens { a: 1 } integral { a = 1 } }",
])
def test_semantic_errors(text):
    with pytest.raises(ModelSemanticError):
        parse_model_file(text)


def test_format_poly():
    assert format_poly({(2, 0): 1, (0, 2): Fraction(-1, 2), (1, 1): 3}, ["a", "b"]) == "a^2 + 3*a*b - 1/2*b^2"
    assert format_poly({}, ["a"]) == "0"


@st.composite
def presentations(draw):
    n = draw(st.integers(1, 3))
    names = [f"x{i}" for i in range(n)]
    degrees = [draw(st.integers(1, 2)) for _ in range(n)]
    top = draw(st.integers(1, 4))
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    rels = []
    for _ in range(draw(st.integers(0, 2))):
        d = draw(st.integers(1, top))
        monos = [m for m in _monomials(degrees, d)]
        if not monos:
            continue
        rel = {m: draw(coeff) for m in draw(st.lists(st.sampled_from(monos), min_size=1, max_size=3, unique=True))}
        rel = {m: c for m, c in rel.items() if c}
        if rel:
            rels.append(rel)
    return Presentation.make("R", list(zip(names, degrees)), top, rels)


def _monomials(degrees, d, i=0):
    if i == len(degrees):
        if d == 0:
            yield ()
        return
    for e in range(d // degrees[i] + 1):
        for rest in _monomials(degrees, d - e * degrees[i], i + 1):
            yield (e,) + rest


@settings(max_examples=60, deadline=None)
@given(presentations())
def test_format_parse_round_trip(p):
    text = format_model(p)
    q = parse_model_file(text)
    assert format_model(q) == text
    assert q.generators == p.generators and q.top_degree == p.top_degree


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=2, max_size=2))
def test_k3_round_trip(rows):
    gram = [[2 * rows[0][0], rows[0][1]], [rows[0][1], 2 * rows[1][1]]]
    cfg = K3Config(gram)
    assert parse_model_file(format_model(cfg)) == cfg


# ---------------------------------------------------------------------------

def test_suite_validation():
    with pytest.raises(SuiteError):
        SuiteSpec("lemma-9-9")
    with pytest.raises(SuiteError):
        SuiteSpec("prop-2-2", r=0)


def test_report_round_trip_and_determinism():
    a = run_suite(SuiteSpec("prop-1-4"))
    b = run_suite(SuiteSpec("prop-1-4"))
    assert emit(a) == emit(b)
    data = json.loads(emit(a))
    assert data["schema_version"] == SCHEMA_VERSION
    assert emit(VerificationReport.from_dict(data)) == emit(a)
    ids = [c["id"] for c in data["checks"]]
    assert len(ids) == len(set(ids))
    assert {c["status"] for c in data["checks"]} <= {"pass", "fail", "skipped", "inconclusive"}


def test_cli_splitting_suite_on_rank_two(capsys):
    assert main(["verify", "cor-2-3", "--k3", "k3_rho2.model"]) == 0
    data = json.loads(capsys.readouterr().out)
    verdicts = [c for c in data["checks"] if c["id"].endswith("/k3/criteria-agree")]
    assert verdicts and all(c["data"]["i"] and c["data"]["ii"] and c["data"]["iii"] for c in verdicts)


def test_cli_curve_counterexample(capsys):
    assert main(["verify", "example-1-7a", "--genus", "2", "--degree", "5"]) == 0
    data = json.loads(capsys.readouterr().out)
    kernel = next(c for c in data["checks"] if c["id"].endswith("kernel-dim"))
    assert kernel["status"] == "pass" and kernel["data"]["kernel_dim"] == 1
    assert "5 K_B - 2 l_B" in next(c for c in data["checks"] if c["id"].endswith("witness"))["description"]


def test_cli_markdown_and_out(tmp_path):
    out = tmp_path / "r.md"
    assert main(["verify", "example-1-3b", "--report", "markdown", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# chowkit verification: example-1-3b") and "| check | status |" in text


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.model"
    bad.write_text("algebra X {\n  dim = 2;\n  gens { a: 1, o: 2 }\n  rels { a*a = 2*o + 1 }\n}\n")
    assert main(["verify", "prop-1-4", "--k3", str(bad)]) == 2
    assert "line 4" in capsys.readouterr().err
    assert main(["verify", "prop-1-4", "--k3", str(tmp_path / "missing.model")]) == 2
    assert main(["verify", "nonsense"]) == 2
    assert main(["verify", "example-1-7a", "--genus", "2"]) == 2
    assert main(["verify", "example-1-7a", "--genus", "1", "--degree", "3"]) == 2
    assert main(["verify", "prop-1-4", "--k3", "curve_g2_d5.model"]) == 2
    assert main(["verify", "prop-2-6", "--r", "9"]) == 2


def test_cli_failure_exit_code(monkeypatch, capsys):
    from chowkit.cli import suites
    from chowkit.models.checks import CheckReport

    def failing(spec):
        rep = CheckReport("dummy")
        rep.add("always", "a check that fails", False)
        return [("x", rep)]
    monkeypatch.setitem(suites.RUNNERS, "prop-1-4", failing)
    assert main(["verify", "prop-1-4"]) == 1


def test_seed_env_override(monkeypatch, capsys):
    monkeypatch.setenv("CHOWKIT_SEED", "7")
    assert main(["verify", "prop-2-2", "--r", "1", "--seed", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["parameters"]["seed"] == 7
    monkeypatch.setenv("CHOWKIT_SEED", "x")
    assert main(["verify", "prop-2-2"]) == 2


def test_format_and_models_commands(capsys):
    assert main(["models"]) == 0
    assert "k3_rho1.model" in capsys.readouterr().out
    assert main(["format", "k3_rho2.model"]) == 0
    assert capsys.readouterr().out == "k3 {\n  gram = [[0, 1], [1, 0]];\n}\n"
