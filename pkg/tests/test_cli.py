import io
import json
import sys

import pytest

from twinroot import cli


@pytest.fixture
def a2_path(tmp_path):
    p = tmp_path / "a2.json"
    p.write_text('{"n": 2, "a": [[2, -1], [-1, 2]]}')
    return str(p)


@pytest.fixture
def affine_a1_path(tmp_path):
    p = tmp_path / "aff.json"
    p.write_text('{"n": 2, "a": [[2, -2], [-2, 2]]}')
    return str(p)


@pytest.fixture
def affine_a2_path(tmp_path):
    p = tmp_path / "aff2.json"
    p.write_text('{"n": 3, "a": [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]}')
    return str(p)


def run(argv, capsys):
    code = cli.dispatch(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_weyl_length(a2_path, capsys):
    code, out, err = run(["weyl", "length", "--gcm", a2_path, "--word", "0,1,0"], capsys)
    assert code == 0
    assert out.strip() == "3"
    assert err.startswith("# twinroot weyl length")


def test_roots_interval(a2_path, capsys):
    code, out, _ = run(["roots", "interval", "--gcm", a2_path, "--alpha", "0", "--beta", "1"], capsys)
    assert code == 0
    assert json.loads(out) == [[0, 1], [1, 0], [1, 1]]


def test_trd_twintree_dot_panel_degrees(capsys):
    code, out, _ = run(
        ["trd", "twintree", "--group", "su3", "--q", "2", "--radius", "2", "--format", "dot"],
        capsys,
    )
    assert code == 0
    assert out.startswith("digraph")
    # base chamber degree = (1+q - 1) + (1+q^3 - 1) = 2 + 8
    base_edges = [ln for ln in out.splitlines() if ln.strip().startswith("n0 ->")]
    degrees = {}
    for ln in base_edges:
        t = ln.split("label=")[1].split(",")[0].strip("];")
        degrees[t] = degrees.get(t, 0) + 1
    assert degrees == {"0": 2, "1": 8}


def test_byte_stable_output(a2_path, capsys):
    _, out1, _ = run(["weyl", "ball", "--gcm", a2_path, "--radius", "3"], capsys)
    _, out2, _ = run(["weyl", "ball", "--gcm", a2_path, "--radius", "3"], capsys)
    assert out1 == out2
    _, tree1, _ = run(["trd", "twintree", "--group", "sl2", "--q", "2", "--radius", "2"], capsys)
    _, tree2, _ = run(["trd", "twintree", "--group", "sl2", "--q", "2", "--radius", "2"], capsys)
    assert tree1 == tree2


def test_exit_codes(a2_path, affine_a1_path, capsys, tmp_path):
    # invalid input: 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 1, "a": [[3]]}')
    code, _, err = run(["weyl", "coxeter", "--gcm", str(bad)], capsys)
    assert code == 1 and "error" in err
    # missing file: 1
    code, _, _ = run(["weyl", "coxeter", "--gcm", str(tmp_path / "nope.json")], capsys)
    assert code == 1
    # undecided: 2 (tiny search radius starves the certificate search)
    code, _, err = run(
        [
            "roots", "prenilpotent", "--gcm", affine_a1_path,
            "--alpha", "3,2", "--beta=-2,-1", "--search-radius", "0",
        ],
        capsys,
    )
    assert code == 2


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.build_parser().parse_args(["weyl", "length", "--bogus", "x"])
    assert exc.value.code == 1


def test_help_texts_name_flags(capsys):
    for verb, sub in [
        ("gcm", "validate"),
        ("weyl", "length"),
        ("roots", "interval"),
        ("cone", "fold"),
        ("group", "bruhat"),
        ("trd", "twintree"),
    ]:
        with pytest.raises(SystemExit) as exc:
            cli.build_parser().parse_args([verb, sub, "--help"])
        assert exc.value.code == 0
        text = capsys.readouterr().out
        for flag in ("--gcm", "--word", "--alpha", "--beta", "--group", "--q",
                     "--radius", "--format", "--level-window", "--search-radius",
                     "--jobs", "--seed"):
            assert flag in text


def test_gcm_commands(a2_path, capsys):
    code, out, _ = run(["gcm", "validate", "--gcm", a2_path], capsys)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(["gcm", "sc", "--gcm", a2_path], capsys)
    assert json.loads(out)["c"] == [[2, -1], [-1, 2]]
    code, out, _ = run(["gcm", "dual", "--gcm", a2_path], capsys)
    assert code == 0


def test_weyl_misc(a2_path, affine_a1_path, capsys):
    code, out, _ = run(["weyl", "coxeter", "--gcm", a2_path, "--format", "tsv"], capsys)
    assert out.splitlines() == ["1\t3", "3\t1"]
    code, out, _ = run(["weyl", "order", "--gcm", affine_a1_path], capsys)
    assert json.loads(out) is None
    code, out, _ = run(["weyl", "reduced", "--gcm", a2_path, "--word", "0,1,0,1"], capsys)
    assert json.loads(out) is False


def test_roots_misc(a2_path, capsys):
    code, out, _ = run(["roots", "ball", "--gcm", a2_path, "--radius", "3"], capsys)
    assert len(json.loads(out)) == 6
    code, out, _ = run(["roots", "nibbling", "--gcm", a2_path], capsys)
    assert json.loads(out) == [[1, 0], [1, 1], [0, 1]]
    code, out, _ = run(["roots", "positive", "--gcm", a2_path, "--alpha", "1,1"], capsys)
    assert json.loads(out) is True


def test_cone_commands(affine_a2_path, capsys):
    code, out, _ = run(["cone", "fold", "--gcm", affine_a2_path, "--word", "0,2,1"], capsys)
    data = json.loads(out)
    assert data["orbits"] == [[0], [1, 2]]
    assert data["m"] == [[1, None], [None, 1]]
    code, out, _ = run(["cone", "fixed", "--gcm", affine_a2_path, "--word", "0,2,1"], capsys)
    assert len(json.loads(out)) == 2


def test_group_commands(capsys, monkeypatch):
    code, out, _ = run(["group", "su3", "--q", "3"], capsys)
    data = json.loads(out)
    assert data["metabelian_order"] == 27 and data["metabelian_center"] == 3
    from twinroot.chevalley import loop_group

    G = loop_group(2, 2)
    g = G._canonical_s(1) * G._canonical_s(0)
    monkeypatch.setattr("sys.stdin", io.StringIO(g.to_json()))
    code, out, _ = run(["group", "bruhat", "--group", "sl2", "--q", "2"], capsys)
    assert json.loads(out)["word"] == [1, 0]
    monkeypatch.setattr("sys.stdin", io.StringIO(g.to_json()))
    code, out, _ = run(["group", "birkhoff", "--group", "sl2", "--q", "2"], capsys)
    assert code == 0


def test_trd_check_cli(capsys):
    code, out, _ = run(["trd", "check", "--group", "sl2", "--q", "3", "--level-window", "1"], capsys)
    assert code == 0
    assert json.loads(out)["passed"] is True
    code, out, _ = run(["trd", "check", "--group", "su3", "--q", "2", "--level-window", "1"], capsys)
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run(["trd", "rsd", "--group", "su3", "--q", "2"], capsys)
    assert code == 0 and json.loads(out)["passed"] is True
