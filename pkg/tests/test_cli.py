import os

from lambkit.cli import main
from lambkit.syntax import parse_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_true(capsys, figs_dir):
    code, out, _ = run(capsys, "check", "-m", os.path.join(figs_dir, "M.cgm"), "-f", "<<1,2>> X !p", "-s", "s")
    assert (code, out) == (0, "TRUE\n")


def test_check_false(capsys, figs_dir):
    code, out, _ = run(capsys, "check", "-m", os.path.join(figs_dir, "N.cgm"),
                       "-f", "[#alpha -a,a-> #alpha] <<1>> X #alpha", "-s", "s")
    assert (code, out) == (1, "FALSE\n")


def test_check_defaults_to_init_and_nominal_refs(capsys, figs_dir):
    path = os.path.join(figs_dir, "M.cgm")
    assert run(capsys, "check", "-m", path, "-f", "#alpha")[0] == 0
    assert run(capsys, "check", "-m", path, "-f", "#alpha", "-s", "#beta")[0] == 1


def test_errors_exit_2(capsys, figs_dir, tmp_path):
    path = os.path.join(figs_dir, "M.cgm")
    code, _, err = run(capsys, "check", "-m", path, "-f", "(p &")
    assert code == 2 and "error" in err
    assert run(capsys, "check", "-m", path, "-f", "p", "-s", "#nope")[0] == 2
    bad = tmp_path / "bad.cgm"
    bad.write_text("agents 1\nactions a\nstate s names x\n")
    code, _, err = run(capsys, "check", "-m", str(bad), "-f", "p", "-s", "s")
    assert code == 2 and "missing transition" in err
    assert run(capsys, "check", "-m", str(tmp_path / "absent.cgm"), "-f", "p")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_apply_round_trips(capsys, figs_dir):
    code, out, _ = run(capsys, "apply", "-m", os.path.join(figs_dir, "M.cgm"), "-u", "new #gamma ; p@gamma := true")
    assert code == 0
    model, init = parse_model(out)
    g = model.denotes("gamma")
    assert g is not None and "p" in model.props_at(g)
    assert model.label(init) == "s"


def test_apply_rejects_union(capsys, figs_dir):
    code, _, err = run(capsys, "apply", "-m", os.path.join(figs_dir, "M.cgm"), "-u", "new #g u new #h")
    assert code == 2 and "union" in err


def test_label(capsys, figs_dir):
    code, out, _ = run(capsys, "label", "-m", os.path.join(figs_dir, "M.cgm"), "-f", "<<1,2>> F p")
    assert (code, out) == (0, "{s, t}\n")


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "-f", "[p@alpha := true] p")
    assert code == 0 and "[" not in out and "@alpha true" in out
    assert run(capsys, "translate", "-f", "[new #g] p")[0] == 2


def test_synth(capsys, figs_dir):
    path = os.path.join(figs_dir, "M.cgm")
    code, out, _ = run(capsys, "synth", "-m", path, "-f", "@beta p", "-n", "3")
    assert (code, out) == (0, "p@beta := true\n")
    code, out, _ = run(capsys, "synth", "-m", path, "-f", "@beta p", "-n", "2")
    assert (code, out) == (1, "NONE\n")
    code, out, _ = run(capsys, "synth", "-m", path, "-f", "p", "-n", "0")
    assert (code, out) == (0, "(empty)\n")


def test_compile_norm(capsys, figs_dir):
    code, out, _ = run(capsys, "compile-norm", "-m", os.path.join(figs_dir, "M.cgm"),
                       "-N", os.path.join(figs_dir, "sanction.norm"), "--pool", "gamma,delta")
    assert code == 0
    assert out.startswith("new #gamma ; fine@gamma := true ; p@gamma := true ; new #delta")


def test_qbf(capsys, figs_dir, tmp_path):
    path = os.path.join(figs_dir, "example.qbf")
    for enc in ("arrow", "subst"):
        code, out, _ = run(capsys, "qbf", "-q", path, "--encoding", enc, "--out", str(tmp_path / enc))
        assert (code, out) == (0, "TRUE\n")
        model, init = parse_model((tmp_path / enc / "model.cgm").read_text())
        assert init is not None
        formula = (tmp_path / enc / "formula.txt").read_text().strip()
        code, out, _ = run(capsys, "check", "-m", str(tmp_path / enc / "model.cgm"), "-f", formula)
        assert (code, out) == (0, "TRUE\n")


def test_dot(capsys, figs_dir):
    code, out, _ = run(capsys, "dot", "-m", os.path.join(figs_dir, "M.cgm"))
    assert code == 0 and out.startswith("digraph")
