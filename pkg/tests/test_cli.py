"""Command-line harness: config building, experiment reports, exit codes.

Exit code convention under test: 0 success, 1 input error, 2 numeric or
verification failure.
"""

import json

import numpy as np
import pytest

from specwave import (
    build_graph,
    eigendecompose,
    exact_filter,
    normalized_laplacian,
    reference_filter,
)
from specwave.cli import (
    ExperimentConfig,
    cmd_fit,
    cmd_sweep,
    main,
    run_experiment,
    synthetic_signal,
)
from specwave.io import dumps_json, read_edge_list, read_signal


def tiny_config(**over):
    raw = {
        "graph": {"grid": [3, 3]},
        "signals": {"synthetic": {"seed": 0, "count": 2}},
        "filters": ["low-pass", "high-pass"],
        "specs": [{"mode": "plain", "basis": "chebyshev", "order": 3}],
        "fit": {"lr": 0.1, "iters": 60, "patience": 30},
    }
    raw.update(over)
    return ExperimentConfig.from_dict(raw)


# -------------------------------------------------------------- synthetic PRNG


def test_synthetic_signal_is_pure_function_of_seed():
    a = synthetic_signal(7, 20)
    b = synthetic_signal(7, 20)
    c = synthetic_signal(8, 20)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.min() >= 0.0 and a.max() < 1.0
    # pinned generator: PCG64 under the hood
    assert np.array_equal(a, np.random.Generator(np.random.PCG64(7)).random(20))


# ------------------------------------------------------------- config handling


def test_config_defaults():
    cfg = ExperimentConfig.from_dict({})
    assert cfg.graph_source == {"grid": [16, 16]}
    assert cfg.filters == (
        "low-pass", "high-pass", "band-pass", "band-rejection",
        "comb", "low-band-pass", "runge",
    )
    assert cfg.fit["lr"] == 0.05 and cfg.fit["iters"] == 2000
    assert cfg.specs[0]["order"] == 10
    assert cfg.laplacian == "normalized"
    assert cfg.aggregate is False


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown config keys"):
        ExperimentConfig.from_dict({"graf": {}})
    with pytest.raises(ValueError, match="unknown spec keys"):
        ExperimentConfig.from_dict({"specs": [{"basis": "chebyshev", "degree": 3}]})
    with pytest.raises(ValueError, match="unknown fit keys"):
        ExperimentConfig.from_dict({"fit": {"learning_rate": 0.1}})
    with pytest.raises(ValueError, match="unknown filter"):
        ExperimentConfig.from_dict({"filters": ["sinc"]})
    with pytest.raises(ValueError, match="laplacian"):
        ExperimentConfig.from_dict({"laplacian": "rw"})


def test_config_to_dict_round_trip():
    cfg = tiny_config(aggregate=True)
    assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg


# ------------------------------------------------------------- run_experiment


def test_run_experiment_report_shape():
    report = run_experiment(tiny_config())
    assert report["schema_version"] == 1
    assert report["nodes"] == 9
    assert len(report["cells"]) == 2 * 2  # 2 filters x 2 signals x 1 spec
    assert report["failed_cells"] == 0
    assert report["_failed"] is False
    for cell in report["cells"]:
        assert cell["error"] is None
        assert cell["r2"] <= 1.0
        assert cell["final_loss"] >= 0.0
        assert cell["spec"] == "plain/chebyshev[3]"
        assert np.asarray(cell["theta"]).shape == (1, 4)
    signals = {c["signal"] for c in report["cells"]}
    assert signals == {"synthetic:0", "synthetic:1"}


def test_run_experiment_aggregate_mean_invariant():
    report = run_experiment(tiny_config())
    for agg in report["aggregates"]:
        group = [
            c for c in report["cells"]
            if c["filter"] == agg["filter"] and c["spec_index"] == agg["spec_index"]
        ]
        assert agg["cell_count"] == len(group)
        assert abs(agg["mean_squared_error"] - np.mean([c["final_loss"] for c in group])) < 1e-12
        assert abs(agg["mean_r2"] - np.mean([c["r2"] for c in group])) < 1e-12


def test_run_experiment_aggregate_mode_pools_signals():
    report = run_experiment(tiny_config(aggregate=True))
    assert len(report["cells"]) == 2  # one joint fit per (filter, spec)
    assert all(c["signal"] == "aggregate(2 signals)" for c in report["cells"])


def test_run_experiment_is_deterministic():
    a = run_experiment(tiny_config())
    b = run_experiment(tiny_config())
    a.pop("_failed"), b.pop("_failed")
    assert dumps_json(a) == dumps_json(b)


def test_run_experiment_hyperbolic_spec_label():
    cfg = tiny_config(specs=[{
        "mode": "hyperbolic", "basis": "monomial", "order": 1,
        "tau": 0.25, "steps": 3,
    }], filters=["low-pass"], signals={"synthetic": {"seed": 0, "count": 1}})
    report = run_experiment(cfg)
    assert report["cells"][0]["spec"] == "hyperbolic/monomial[1]@tau=0.25,m=3"


# ------------------------------------------------------------------ subcommands


def test_gen_grid_writes_edge_list(tmp_path):
    out = tmp_path / "g.txt"
    assert main(["gen-grid", "2", "2", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "4 4"
    g = read_edge_list(out)
    assert g.n == 4 and g.num_edges == 4


def test_gen_grid_single_node(tmp_path):
    out = tmp_path / "one.txt"
    assert main(["gen-grid", "1", "1", "--out", str(out)]) == 0
    assert out.read_text() == "1 0\n"


def test_gen_grid_10x10_edge_count(tmp_path):
    out = tmp_path / "big.txt"
    assert main(["gen-grid", "10", "10", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "100 180"  # 2 * 10 * 9


def test_make_target_matches_oracle(tmp_path):
    graph_path = tmp_path / "g.txt"
    out = tmp_path / "y.csv"
    main(["gen-grid", "3", "3", "--out", str(graph_path)])
    code = main([
        "make-target", "--graph", str(graph_path), "--synthetic", "5",
        "--filter", "band-pass", "--out", str(out),
    ])
    assert code == 0
    g = read_edge_list(graph_path)
    ed = eigendecompose(normalized_laplacian(g))
    expect = exact_filter(ed, reference_filter("band-pass"), synthetic_signal(5, 9))
    assert np.allclose(read_signal(out), expect, atol=1e-15)


def test_make_target_requires_exactly_one_signal_source(tmp_path, capsys):
    graph_path = tmp_path / "g.txt"
    main(["gen-grid", "2", "2", "--out", str(graph_path)])
    code = main(["make-target", "--graph", str(graph_path),
                 "--filter", "comb", "--out", str(tmp_path / "y.csv")])
    assert code == 1
    assert "exactly one" in capsys.readouterr().err


def test_fit_command_end_to_end(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main([
        "fit", "--grid", "3", "3", "--synthetic", "0", "--filter", "low-pass",
        "--order", "3", "--iters", "50", "--lr", "0.1", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
    assert "_failed" not in report  # internal key never serialized
    assert len(report["cells"]) == 1
    table = capsys.readouterr().out
    assert "low-pass" in table and "plain/chebyshev[3]" in table


def test_fit_report_files_are_byte_identical(tmp_path):
    args = [
        "fit", "--grid", "3", "3", "--synthetic", "1", "--filter", "runge",
        "--order", "2", "--iters", "40", "--out",
    ]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + [str(a)]) == 0
    assert main(args + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_fit_config_file_with_flag_override(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({
        "graph": {"grid": [3, 3]},
        "signals": {"synthetic": {"seed": 0, "count": 1}},
        "filters": ["low-pass"],
        "specs": [{"order": 3}],
        "fit": {"iters": 40},
    }))
    out = tmp_path / "r.json"
    code = main(["fit", "--config", str(cfg_path), "--order", "5", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["config"]["specs"][0]["order"] == 5  # flag beats file
    assert report["config"]["fit"]["iters"] == 40      # file value survives


def test_verify_command_passes_and_reports(tmp_path, capsys):
    graph_path = tmp_path / "g.txt"
    main(["gen-grid", "2", "3", "--out", str(graph_path)])
    code = main(["verify", "--graph", str(graph_path), "--speed", "0.5",
                 "--time", "0.5"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert [c["check_name"] for c in payload["checks"]] == [
        "eigenvalue_multiset",
        "eigenvector_block_structure",
        "fundamental_matrix_ode",
        "matrix_exponential_identity",
    ]


def test_verify_failure_exit_code(tmp_path, capsys):
    graph_path = tmp_path / "g.txt"
    main(["gen-grid", "2", "2", "--out", str(graph_path)])
    # unreachable tolerance: finite-difference noise alone exceeds it
    code = main(["verify", "--graph", str(graph_path), "--tol", "1e-18"])
    assert code == 2
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_sweep_command(tmp_path):
    out = tmp_path / "sweep.json"
    code = main([
        "sweep", "--grid", "3", "3", "--synthetic", "0", "--filter", "low-pass",
        "--order", "2,4", "--lr", "0.05,0.2", "--iters", "40", "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["grid"] == {"lr": [0.05, 0.2], "order": [2, 4], "tau": [0.5]}
    assert len(payload["best"]) == 1  # one (signal, filter) key
    best = payload["best"][0]
    assert best["order"] in (2, 4) and best["lr"] in (0.05, 0.2)


# -------------------------------------------------------------------- exit codes


def test_exit_code_on_missing_file(capsys):
    assert main(["fit", "--graph", "/nonexistent/g.txt", "--iters", "5"]) == 1
    assert "error:" in capsys.readouterr().err


def test_exit_code_on_bad_flags(capsys):
    # argparse rejects the unknown subcommand; stderr comes from argparse itself
    assert main(["frobnicate"]) == 1
    capsys.readouterr()


def test_exit_code_on_conflicting_graph_flags(tmp_path, capsys):
    graph_path = tmp_path / "g.txt"
    main(["gen-grid", "2", "2", "--out", str(graph_path)])
    code = main(["verify", "--graph", str(graph_path), "--grid", "2", "2"])
    assert code == 1
    assert "not both" in capsys.readouterr().err


def test_cmd_fit_reports_failed_cells(tmp_path):
    # an absurd learning rate diverges; the cell is recorded, exit code is 2
    cfg = tiny_config(
        filters=["low-pass"],
        signals={"synthetic": {"seed": 0, "count": 1}},
        specs=[{"mode": "hyperbolic", "basis": "monomial", "order": 2,
                "tau": 2.0, "steps": 12}],
        fit={"lr": 1e13, "iters": 50, "init_scale": 100.0},
    )
    out = tmp_path / "r.json"
    assert cmd_fit(cfg, out) == 2
    report = json.loads(out.read_text())
    assert report["failed_cells"] == 1
    cell = report["cells"][0]
    assert cell["error"] is not None and cell["r2"] is None
    assert report["aggregates"] == []  # nothing succeeded to aggregate
