#!/usr/bin/env python3
"""Smoke test for the rseri python module and the CLI.

Runs under plain python3 (no pytest): any failed assertion or unexpected
exit code aborts with a nonzero status. The ctest harness provides
PYTHONPATH (for the built module) and RSERI_CLI (path to the rseri binary).
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile


def run_cli(args, expect, env=None):
    proc = subprocess.run(args, capture_output=True, text=True, env=env)
    if proc.returncode != expect:
        print(f"command {args} exited {proc.returncode}, expected {expect}", file=sys.stderr)
        print(proc.stdout, file=sys.stderr)
        print(proc.stderr, file=sys.stderr)
        raise SystemExit(1)
    return proc


def check_module(tmp):
    import rseri

    # Projection pair: Cardiff round-trips and lands in the right 100 km square.
    lon, lat = -3.17909, 51.48158
    easting, northing = rseri.to_bng(lon, lat)
    assert 250000 < easting < 350000, easting
    assert 150000 < northing < 220000, northing
    back_lon, back_lat = rseri.to_wgs84(easting, northing)
    assert abs(back_lon - lon) < 1e-6 and abs(back_lat - lat) < 1e-6

    # Percentile with linear interpolation.
    assert abs(rseri.percentile(list(range(1, 11)), 0.9) - 9.1) < 1e-9

    # Composite score: equal weights are the mean; custom weights reweight.
    scored = rseri.rseri_score(True, False, True, False, True)
    assert abs(scored["value"] - 0.6) < 1e-15 and scored["level"] == "Moderate"
    custom = rseri.rseri_score(
        True, False, True, False, True, weights=[0.5, 0.1, 0.1, 0.2, 0.1]
    )
    assert abs(custom["value"] - 0.7) < 1e-12 and custom["level"] == "High"

    # kNN excludes the query point and reports exact planar distances.
    points = [("a", (0, 0)), ("b", (100, 0)), ("c", (250, 0)), ("d", (600, 0))]
    graph = rseri.knn(points, 2)
    assert graph["a"] == [("b", 100.0), ("c", 250.0)]
    assert graph["d"] == [("c", 350.0), ("b", 500.0)]

    # Full pipeline through the module: fixture -> validate -> score -> report.
    fixture = rseri.make_fixture(os.path.join(tmp, "data"), seed=7, n=40)
    config = fixture["config"]
    validation = rseri.validate(config)
    assert validation["ok"], validation["issues"]

    out_dir = os.path.join(tmp, "out")
    score = rseri.score(config, out_dir=out_dir, threads=2)
    assert score["ingested"] == 40
    assert score["scored"] + score["excluded"] == score["active"]
    assert abs(sum(score["weights"].values()) - 1.0) < 1e-12
    assert "chargers_scored.csv" in score["outputs"]
    assert "manifest.json" in score["outputs"]

    report = rseri.report(config, out_dir=out_dir)
    assert report["scored"] == score["scored"]
    assert "risk_summary.csv" in report["outputs"]
    assert "report.json" in report["outputs"]
    for name in list(score["outputs"]) + list(report["outputs"]):
        assert os.path.exists(os.path.join(out_dir, name)), name

    # Sanity: the report's population matches the scored count.
    with open(os.path.join(out_dir, "report.json")) as f:
        report_json = json.load(f)
    assert report_json["population"] == score["scored"]
    print("module checks passed")


def check_cli(tmp):
    cli = os.environ.get("RSERI_CLI")
    if not cli:
        print("RSERI_CLI not set; skipping CLI checks")
        return

    data_dir = os.path.join(tmp, "cli-data")
    run_cli([cli, "fixture", "--out", data_dir, "--seed", "11", "--n", "30"], expect=0)
    config = os.path.join(data_dir, "config.json")
    run_cli([cli, "validate", "--config", config], expect=0)

    # RSERI_OUT_DIR steers the output when --out is absent.
    env_dir = os.path.join(tmp, "cli-out-env")
    env = dict(os.environ, RSERI_OUT_DIR=env_dir)
    run_cli([cli, "score", "--config", config], expect=0, env=env)
    assert os.path.exists(os.path.join(env_dir, "manifest.json"))
    run_cli([cli, "report", "--config", config], expect=0, env=env)
    assert os.path.exists(os.path.join(env_dir, "report.json"))

    # An explicit --out beats the environment override.
    flag_dir = os.path.join(tmp, "cli-out-flag")
    run_cli(
        [cli, "score", "--config", config, "--out", flag_dir, "--threads", "2"],
        expect=0,
        env=env,
    )
    assert os.path.exists(os.path.join(flag_dir, "manifest.json"))

    # Exit codes: unreadable config file -> 2, failed validation -> 1.
    run_cli([cli, "score", "--config", os.path.join(tmp, "absent.json")], expect=2)
    with open(config) as f:
        broken = json.load(f)
    broken["inputs"]["chargers"] = "does_not_exist.csv"
    broken_path = os.path.join(data_dir, "broken_config.json")
    with open(broken_path, "w") as f:
        json.dump(broken, f)
    run_cli([cli, "validate", "--config", broken_path], expect=1)
    print("cli checks passed")


def main():
    tmp = tempfile.mkdtemp(prefix="rseri-smoke-")
    try:
        check_module(tmp)
        check_cli(tmp)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    print("smoke test passed")


if __name__ == "__main__":
    main()
