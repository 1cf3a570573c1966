import json

from graphonham.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_preset(capsys):
    code, out, _ = run(capsys, "analyze", "constant-0.3")
    assert code == 0
    assert json.loads(out)["regime"] == "aas_hamiltonian"


def test_analyze_malformed_densities(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {"kind": "step", "masses": ["1/2", "1/2"], "densities": [["0", "1"], ["0.9", "0"]]}
        )
    )
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2
    payload = json.loads(err)
    assert payload["error"]["position"] == "densities[0][1]"


def test_sample_then_test_and_certify(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    code, out, _ = run(
        capsys, "sample", "balanced-bipartite", "-n", "24", "--seed", "8", "-o", str(gpath)
    )
    assert code == 0 and gpath.exists() and (tmp_path / "g.txt.meta.json").exists()

    code, out, _ = run(capsys, "test", str(gpath))
    assert code == 0
    verdict = json.loads(out)
    assert verdict["status"] in ("hamiltonian", "not_hamiltonian", "unknown")

    code, out, _ = run(capsys, "certify", str(gpath))
    assert code == 0
    cert = json.loads(out)
    assert cert["fvcn"] == cert["fmn"]


def test_experiment_command(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "graphon": "constant-0.3",
                "n_values": [20],
                "trials": 5,
                "seed": 11,
                "properties": ["connected", "hamiltonian"],
            }
        )
    )
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "experiment", str(cfg), "-o", str(out_dir))
    assert code == 0
    report = json.loads(out)
    assert report["predicted_regime"] == "aas_hamiltonian"
    assert (out_dir / "trials.csv").read_text().startswith("schema=1\n")
    assert (out_dir / "report.json").exists()

    code, out, _ = run(capsys, "experiment", str(cfg), "--format", "csv")
    assert code == 0 and out.startswith("schema=1\n")


def test_experiment_fluctuation_mode(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "graphon": "balanced-bipartite",
                "n_values": [31],
                "trials": 30,
                "seed": 2,
                "t": 0,
                "properties": [],
                "certificate": {
                    "kind": "peninsula",
                    "a": "1/2",
                    "A_fractions": ["1/2", "0"],
                    "B_fractions": ["0", "0"],
                },
            }
        )
    )
    code, out, _ = run(capsys, "experiment", str(cfg), "--fluctuation")
    assert code == 0
    rep = json.loads(out)
    assert rep["trials"] == 30 and 0.0 <= rep["frequency"] <= 1.0


def test_pathsys_command(tmp_path, capsys):
    edges = [(i, j) for i in range(8) for j in range(i + 1, 8)] + [(0, 8), (1, 8)]
    lines = [f"9 {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    (tmp_path / "g.txt").write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "pathsys", str(tmp_path / "g.txt"), "--alpha", "1/3")
    assert code == 0
    payload = json.loads(out)
    assert payload["checks"]["low_degree_covered"]
    assert any(8 in p for p in payload["paths"])


def test_petersen_certified_not_hamiltonian(tmp_path, capsys):
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
             (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
             (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]
    lines = [f"10 {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    (tmp_path / "petersen.txt").write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "test", str(tmp_path / "petersen.txt"), "--restarts", "5")
    assert code == 0
    assert json.loads(out)["status"] == "not_hamiltonian"


def test_missing_file(capsys):
    code, _, err = run(capsys, "test", "/nonexistent/graph.txt")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "FileNotFound"
