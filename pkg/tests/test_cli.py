import json

import app


def _run_json(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = app.run([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8"))


def test_signed_certificate_exits_zero(tmp_path):
    code, data = _run_json(tmp_path, "gelfand", "--n", "3", "--k", "0", "--m", "5", "--signed")
    assert code == 0
    assert data["multiplicity_free"] is True
    assert data["self_paired"] is True
    assert data["states"] == 20
    assert "witness" not in data


def test_unsigned_certificate_exits_one_with_witness(tmp_path):
    code, data = _run_json(tmp_path, "gelfand", "--n", "3", "--k", "0", "--m", "5")
    assert code == 1
    assert data["multiplicity_free"] is False
    assert len(data["witness"]) == 3


def test_type_b_certificate(tmp_path):
    code, data = _run_json(tmp_path, "gelfand", "--n", "3", "--k", "1", "--m", "5", "--group", "B", "--signed")
    assert code == 0
    assert data["params"]["group"] == "B"
    code, data = _run_json(tmp_path, "gelfand", "--model", "omega_signed", "--n", "3", "--k", "1", "--m", "5", "--group", "B")
    assert code == 0 and data["params"]["g1_orbit"] == data["states"]
    assert app.run(["gelfand", "--n", "3", "--k", "1", "--m", "5", "--group", "B"]) == 2
    assert app.run(["gelfand", "--n", "3", "--k", "1", "--m", "5", "--group", "B", "--signed", "--node-cap", "5"]) == 2


def test_partial_arc_signed_certificate(tmp_path):
    code, data = _run_json(tmp_path, "gelfand", "--model", "arc", "--n", "3", "--k", "2", "--signed")
    assert code == 0
    assert data["multiplicity_free"] is True
    assert data["states"] == 30


def test_counts(tmp_path):
    code, data = _run_json(tmp_path, "counts", "--model", "arc", "--n", "4")
    assert code == 0
    assert data["count"] == 96
    assert data["match"] is True
    code, data = _run_json(tmp_path, "counts", "--model", "omega", "--n", "3", "--k", "1", "--m", "4")
    assert code == 0 and data["count"] == 48


def test_usage_errors():
    assert app.run(["gelfand", "--n", "3", "--k", "3", "--m", "5"]) == 2
    assert app.run(["gelfand", "--n", "3", "--k", "0"]) == 2
    assert app.run(["orbit", "--n", "3", "--k", "0", "--m", "5", "--bogus"]) == 2
    assert app.run(["counts", "--model", "omega", "--n", "3", "--k", "0", "--m", "5", "--node-cap", "3"]) == 2
    assert app.run(["gelfand", "--model", "arc", "--n", "2", "--group", "B"]) == 2
    assert app.run([]) == 2


def test_orbit(tmp_path):
    code, data = _run_json(tmp_path, "orbit", "--n", "2", "--k", "0", "--m", "4")
    assert code == 0
    assert data["transitive"] is True
    assert data["reached"] == 16
    assert data["witnesses"]["(1,1;0)"] == ""


def test_act(capsys):
    code = app.run(["act", "--n", "2", "--m", "5", "--state", "(1,1;0)", "--word", "0 2", "--format", "text"])
    assert code == 0
    assert "image: (-1,-1;1)" in capsys.readouterr().out
    code = app.run(["act", "--model", "arc", "--n", "2", "--state", "[1,2,3,4]", "--word", "0"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["image"] == "[2,1,3,4]"
    assert app.run(["act", "--n", "2", "--m", "5", "--state", "(1,2;0)", "--word", "0"]) == 2


def test_equivariance(tmp_path):
    for model in ("arc", "ctft", "lf", "gc"):
        code, data = _run_json(tmp_path, "equivariance", "--model", model, "--n", "2")
        assert code == 0, model
        assert data["ok"] is True


def test_coset_reps(tmp_path):
    code, data = _run_json(tmp_path, "coset-reps", "--n", "3", "--k", "1", "--group", "B", "--d-bound", "4")
    assert code == 0
    assert data["verdict"] is True
    assert data["gaps"] == [] and data["collisions"] == []


def test_markdown_and_html_reports(tmp_path, output_dirs):
    md = tmp_path / "cert.md"
    assert app.run(["gelfand", "--n", "2", "--k", "0", "--m", "4", "--signed", "--format", "markdown", "--out", str(md)]) == 0
    text = md.read_text(encoding="utf-8")
    assert text.startswith("# Gelfand certificate")
    assert "| multiplicity-free | yes |" in text
    assert "# Suborbits of (-1,-1;0)" in text
    html = tmp_path / "cert.html"
    assert app.run(["gelfand", "--n", "2", "--k", "0", "--m", "4", "--format", "html", "--out", str(html), "--save"]) == 1
    assert "<table>" in html.read_text(encoding="utf-8")
    assert (output_dirs / "gelfand-omega-C-n2.html").exists()


def test_schreier_dot(tmp_path):
    out = tmp_path / "arc.dot"
    assert app.run(["schreier", "--model", "arc", "--n", "2", "--format", "dot", "--out", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("digraph schreier {")
    assert text.count(" -> ") == 16 * 3
    assert 'label="s0"' in text
    assert "// diameter:" in text


def test_schreier_json_is_deterministic(tmp_path, output_dirs):
    argv = ["schreier", "--model", "ctft", "--n", "3", "--format", "json"]
    assert app.run(argv) == 0
    path = output_dirs / "graphs" / "schreier-ctft-n3.json"
    first = path.read_text(encoding="utf-8")
    assert app.run(argv) == 0
    assert path.read_text(encoding="utf-8") == first
    data = json.loads(first)
    assert data["metadata"]["nodes"] == 7 * 8
    assert len(data["edges"]) == 7 * 8 * 4
    assert app.run(["schreier", "--model", "arc", "--n", "2", "--format", "markdown"]) == 2


def test_counts_checks_cap_before_enumerating(monkeypatch):
    def fail(*args):
        raise AssertionError("enumerated past the cap")

    monkeypatch.setattr(app.gelfand, "model_states", fail)
    assert app.run(["counts", "--model", "ctft", "--n", "6", "--node-cap", "100"]) == 2
