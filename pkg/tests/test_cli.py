import json

import pytest

from girth.cli import main
from girth.graph import Kind, random_graph, read_graph, serialize_graph
from girth.oracles import oracle_girth

K3 = "p undirected 3 3\ne 1 2 1\ne 2 3 1\ne 3 1 1\n"
FOREST = "p undirected 4 3\ne 1 2 1\ne 2 3 1\ne 2 4 1\n"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_triangle(tmp_path, capsys):
    assert main(["girth", _write(tmp_path, "k3.gr", K3)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "girth 3"
    assert sorted(map(int, out[1].split()[1:])) == [1, 2, 3]


def test_forest_exit_2(tmp_path, capsys):
    assert main(["girth", _write(tmp_path, "f.gr", FOREST)]) == 2
    assert "no cycle" in capsys.readouterr().out


def test_bad_file_exit_1(tmp_path, capsys):
    assert main(["girth", _write(tmp_path, "bad.gr", "p undirected 2 1\ne 1 5 1\n")]) == 1
    assert main(["girth", str(tmp_path / "missing.gr")]) == 1
    assert main(["girth", "--bogus-flag"]) == 1
    assert main(["parse", _write(tmp_path, "neg.gr", "p undirected 2 1\ne 1 2 -1\n")]) == 1


def test_mode_mismatch_exit_1(tmp_path, capsys):
    path = _write(tmp_path, "k3.gr", K3)
    assert main(["girth", path, "--mode", "directed"]) == 1
    assert main(["girth", path, "--mode", "mixed"]) == 0


def test_negative_cycle_exit_3(tmp_path, capsys):
    out = tmp_path / "neg.gr"
    assert main(["generate", "--kind", "directed", "--n", "12", "--p", "0.3", "--seed", "4",
                 "--plant-negative", "4", "--out", str(out)]) == 0
    assert main(["girth", str(out)]) == 3


def test_json_is_reproducible(tmp_path, capsys):
    g = random_graph(16, 0.3, 1, 9, Kind.MIXED, seed=2)
    path = _write(tmp_path, "m.gr", serialize_graph(g))
    outs = []
    for _ in range(2):
        assert main(["girth", path, "--json", "--seed", "5"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert set(rep) == {"weight", "nodes", "mode", "t", "seed", "elapsed_ms"}
        rep.pop("elapsed_ms")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["weight"] == oracle_girth(g).weight


def test_oracle_command(tmp_path, capsys):
    assert main(["oracle", _write(tmp_path, "k3.gr", K3), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["weight"] == 3


def test_reduce_undirected_instance_count(tmp_path, capsys):
    g = random_graph(12, 0.4, 1, 5, Kind.UNDIRECTED, seed=1)
    path = _write(tmp_path, "u.gr", serialize_graph(g))
    out = tmp_path / "inst"
    assert main(["reduce", path, "--trials", "7", "--out", str(out)]) == 0
    man = json.loads((out / "manifest.json").read_text())
    assert len(man["instances"]) == 7
    assert man["mode"] == "undirected" and man["t"] is not None


def test_reduce_directed_single_instance(tmp_path, capsys):
    g = random_graph(12, 0.3, 1, 9, Kind.DIRECTED, seed=3)
    path = _write(tmp_path, "d.gr", serialize_graph(g))
    out = tmp_path / "inst"
    assert main(["reduce", path, "--out", str(out)]) == 0
    man = json.loads((out / "manifest.json").read_text())
    assert len(man["instances"]) == 1
    from girth.instance import load_instance
    inst = load_instance(out / man["instances"][0]["triangle"])
    assert inst.weights_within(-man["M"], man["M"])


@pytest.mark.parametrize("kind", [Kind.UNDIRECTED, Kind.DIRECTED, Kind.MIXED])
@pytest.mark.parametrize("target", ["triangle", "kcycle"])
def test_round_trip(tmp_path, capsys, kind, target):
    n = 5 if target == "kcycle" else 12
    g = random_graph(n, 0.6, 1, 6, kind, seed=7)
    path = _write(tmp_path, "g.gr", serialize_graph(g))
    out = tmp_path / "inst"
    args = ["reduce", path, "--out", str(out), "--target", target, "--seed", "1"]
    if target == "kcycle":
        args += ["--k", "4"]
    assert main(args) == 0
    capsys.readouterr()
    main(["girth", "--from-instances", str(out), "--json"])
    via = json.loads(capsys.readouterr().out)["weight"]
    main(["girth", path, "--json", "--seed", "1"])
    direct = json.loads(capsys.readouterr().out)["weight"]
    assert via == direct == oracle_girth(g).weight


def test_reduce_rejects_bad_k(tmp_path, capsys):
    path = _write(tmp_path, "k3.gr", K3)
    assert main(["reduce", path, "--target", "kcycle", "--k", "3", "--out", str(tmp_path / "o")]) == 1


def test_generate_and_parse(tmp_path, capsys):
    out = tmp_path / "g.gr"
    assert main(["generate", "--kind", "mixed", "--n", "10", "--seed", "3", "--out", str(out)]) == 0
    g = read_graph(out)
    assert g.n == 10 and g.kind is Kind.MIXED
    assert main(["parse", str(out)]) == 0
    assert capsys.readouterr().out.startswith("mixed n=10")
    assert main(["generate", "--kind", "mixed", "--n", "10", "--seed", "3"]) == 0
    assert capsys.readouterr().out == out.read_text()


def test_verify_command(capsys):
    assert main(["verify", "--suite", "kernel", "--seeds", "2"]) == 0
    assert "suite kernel: ok" in capsys.readouterr().out
