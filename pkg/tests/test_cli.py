import io

import pytest

from lstat_edgeworth.cli import EXIT_CAPACITY, EXIT_CONFIG, EXIT_DOMAIN, EXIT_OK, read_config, run


def run_capture(argv):
    buf = io.StringIO()
    code = run(argv, stdout=buf)
    return code, buf.getvalue()


def test_table1_shape(tmp_path):
    code = run(["table1", "--logistic", "60", "--n", "4,8,12", "--replicates", "2e4",
                "--sigma-replicates", "1e4", "--sigma-mode", "mc", "--out", str(tmp_path)])
    assert code == EXIT_OK
    csv_lines = (tmp_path / "table1.csv").read_text().splitlines()
    assert csv_lines[0] == "row,n,0.01,0.05,0.1,0.25,0.5,0.75,0.9,0.95,0.99"
    assert [ln.split(",")[0] for ln in csv_lines[1:]] == ["F_sim", "G"] * 3 + ["Phi"]
    text = (tmp_path / "table1.txt").read_text().splitlines()
    assert len(text) == 8
    assert text[-1].split()[1:] == ["-2.326", "-1.645", "-1.282", "-0.674", "0.000",
                                    "0.674", "1.282", "1.645", "2.326"]


def test_phi_row_independent_of_inputs(tmp_path):
    rows = []
    for extra in (["--weights", "constant", "--seed", "3"], ["--weights", "gini", "--logistic", "30"]):
        code, out = run_capture(["table1", "--n", "5", "--replicates", "1000", "--sigma-mode", "linear",
                                 "--format", "csv"] + extra)
        assert code == EXIT_OK
        rows.append(out.strip().splitlines()[-1])
    assert rows[0] == rows[1]


def test_edgeworth_symmetric_constant(tmp_path):
    pop = tmp_path / "pop.txt"
    pop.write_text("\n".join(str(v) for v in range(-4, 5)) + "\n")
    code = run(["edgeworth", "--population", str(pop), "--weights", "constant", "--n", "3",
                "--sigma-mode", "exact", "--out", str(tmp_path / "o")])
    assert code == EXIT_OK
    rep = dict(ln.split(" = ") for ln in (tmp_path / "o" / "edgeworth_n3.txt").read_text().splitlines())
    assert abs(float(rep["alpha"])) < 1e-15 and float(rep["kappa"]) == 0.0
    for line in (tmp_path / "o" / "cdf_grid_n3.csv").read_text().splitlines()[1:]:
        _, phi, g = line.split(",")
        assert abs(float(phi) - float(g)) < 1e-15


def test_kernels_outputs(tmp_path):
    pop = tmp_path / "pop.txt"
    pop.write_text("0\n1\n2\n3\n4\n")
    w = tmp_path / "w.txt"
    w.write_text("0\n2\n")
    code = run(["kernels", "--population", str(pop), "--weights-file", str(w), "--out", str(tmp_path)])
    assert code == EXIT_OK
    g1 = (tmp_path / "g1_n2.csv").read_text().splitlines()
    assert g1[0] == "k,value" and len(g1) == 6
    assert abs(float(g1[5].split(",")[1]) - 4 / 3) < 1e-14
    g2 = (tmp_path / "g2_n2.csv").read_text().splitlines()
    assert g2[0] == "k,l,value" and len(g2) == 11
    assert abs(float(g2[1].split(",")[2]) + 2 / 3) < 1e-14


def test_kernels_n_too_large(tmp_path, capsys):
    code = run(["kernels", "--logistic", "10", "--n", "10", "--out", str(tmp_path)])
    assert code == EXIT_DOMAIN
    assert "kernel undefined at this (N,n)" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["table1", "--q", "0,0.5"],
        ["table1", "--n", "0"],
        ["edgeworth", "--logistic", "10", "--n", "10"],
        ["edgeworth", "--population", "/nonexistent/file"],
        ["edgeworth", "--weights", "trimmed:0.9"],
        ["edgeworth", "--workers", "0"],
        ["edgeworth", "--grid", "1:0:1", "--n", "3", "--logistic", "10", "--sigma-mode", "linear"],
        ["nosuchcommand"],
    ],
)
def test_config_errors(argv, capsys):
    assert run(argv, stdout=io.StringIO()) == EXIT_CONFIG


def test_population_parse_error(tmp_path, capsys):
    pop = tmp_path / "pop.txt"
    pop.write_text("1\n2\nthree\n")
    assert run(["edgeworth", "--population", str(pop)]) == EXIT_CONFIG
    assert "line 3" in capsys.readouterr().err


def test_capacity_error():
    code, _ = run_capture(["edgeworth", "--logistic", "40", "--n", "20", "--sigma-mode", "exact"])
    assert code == EXIT_CAPACITY


def test_degenerate_is_domain_error(tmp_path):
    pop = tmp_path / "pop.txt"
    pop.write_text("1\n1\n1\n1\n1\n")
    code, _ = run_capture(["edgeworth", "--population", str(pop), "--n", "2", "--sigma-mode", "exact"])
    assert code == EXIT_DOMAIN


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# run\nlogistic = 30\nn = 4\nweights = gini\nsigma-mode = linear\nformat = csv\n"
                   "replicates = 2000\nseed = 5\n")
    code, from_file = run_capture(["simulate", "--config", str(cfg)])
    assert code == EXIT_OK
    code, from_flags = run_capture(["simulate", "--logistic", "30", "--n", "4", "--weights", "gini",
                                    "--sigma-mode", "linear", "--format", "csv", "--replicates", "2000",
                                    "--seed", "5"])
    assert from_file == from_flags
    code, overridden = run_capture(["simulate", "--config", str(cfg), "--seed", "6"])
    assert code == EXIT_OK and overridden != from_file
    assert overridden.splitlines()[0] == "n,q,quantile"


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("logistic 30\n")
    assert run(["simulate", "--config", str(cfg)]) == EXIT_CONFIG
    with pytest.raises(Exception):
        read_config(str(cfg))


def test_diagnose(tmp_path):
    code, out = run_capture(["diagnose", "--logistic", "50", "--n", "5,20", "--weights", "trimmed:0.25,0.75",
                             "--grid-step", "0.01"])
    assert code == EXIT_OK
    assert out.count("nonlattice_sup") == 2 and "cramer_sup" in out
    assert "warning = weights jump" in out


def test_simulate_dump(tmp_path):
    code = run(["simulate", "--logistic", "20", "--n", "3", "--replicates", "500", "--sigma-mode", "exact",
                "--dump", "--out", str(tmp_path)])
    assert code == EXIT_OK
    assert (tmp_path / "realizations_n3.f64").stat().st_size == 500 * 8
    assert "generator = " in (tmp_path / "realizations_n3.f64.meta").read_text()


@pytest.mark.parametrize("command", ["table1", "simulate", "edgeworth"])
def test_workers_byte_identical(tmp_path, command):
    outs = []
    for w in (1, 3):
        d = tmp_path / f"w{w}"
        argv = [command, "--logistic", "40", "--n", "5,9", "--replicates", "20000",
                "--sigma-replicates", "20000", "--sigma-mode", "mc", "--format", "csv",
                "--workers", str(w), "--out", str(d)]
        assert run(argv) == EXIT_OK
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]
