import filecmp

import pytest

from crowder import storage
from crowder.cli import main
from crowder.config import PipelineConfig, load_config, stage_seed
from crowder.fixtures import DEMO_MATCHES, write_demo_csv, write_demo_truth_csv
from crowder.pipeline import run_pipeline


@pytest.fixture()
def demo_files(tmp_path):
    dataset = write_demo_csv(tmp_path / "demo.csv")
    truth = write_demo_truth_csv(tmp_path / "truth.csv")
    return dataset, truth


def _config(tmp_path, dataset, truth, **overrides) -> PipelineConfig:
    cfg = PipelineConfig(
        dataset=dataset,
        truth=truth,
        threshold=0.3,
        cluster_size=4,
        generator="two-tiered",
        replicas=3,
        seed=7,
        worker_pool="perfect:3",
        aggregation="majority",
        out_dir=tmp_path / "out",
    )
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "pipeline.cfg"
    path.write_text(
        "# demo settings\n"
        "threshold = 0.3\n"
        "cluster-size = 4\n"
        "generator = two-tiered\n"
        "worker_pool = perfect:3\n"
    )
    cfg = load_config(path)
    assert cfg.threshold == 0.3
    assert cfg.cluster_size == 4
    assert cfg.worker_pool == "perfect:3"


def test_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("wibble = 3\n")
    with pytest.raises(ValueError, match="wibble"):
        load_config(path)


def test_config_validation():
    cfg = PipelineConfig(threshold=2.0)
    with pytest.raises(ValueError):
        cfg.validate()
    cfg = PipelineConfig(cluster_size=1)
    with pytest.raises(ValueError):
        cfg.validate()
    cfg = PipelineConfig(cluster_size=1, generator="pair")
    cfg.validate()  # pair tasks allow k = 1


def test_stage_seeds_differ():
    assert stage_seed(7, "generate") != stage_seed(7, "simulate")
    assert stage_seed(7, "generate") == stage_seed(7, "generate")
    assert stage_seed(7, "generate") != stage_seed(8, "generate")


def test_pipeline_demo_end_to_end(tmp_path, demo_files):
    dataset, truth = demo_files
    cfg = _config(tmp_path, dataset, truth)
    artifacts = run_pipeline(cfg)
    pairs = storage.read_pairs(artifacts["pairs"])
    assert len(pairs) == 10
    hits = storage.read_hits(artifacts["hits"])
    assert len(hits) == 3
    verdicts = storage.read_verdicts(artifacts["verdicts"])
    matched = {v.pair for v in verdicts if v.decision}
    assert matched == set(DEMO_MATCHES)
    assert artifacts["pr_curve"] is not None


def test_pipeline_empty_dataset(tmp_path):
    dataset = tmp_path / "empty.csv"
    dataset.write_text("id,name\n")
    cfg = _config(tmp_path, dataset, None)
    artifacts = run_pipeline(cfg)
    assert storage.read_pairs(artifacts["pairs"]) == []
    assert storage.read_hits(artifacts["hits"]) == []
    assert storage.read_verdicts(artifacts["verdicts"]) == []
    assert artifacts["pr_curve"] is None


def test_pipeline_byte_identical_reruns(tmp_path, demo_files):
    dataset, truth = demo_files
    cfg_a = _config(tmp_path, dataset, truth, out_dir=tmp_path / "out_a")
    cfg_b = _config(tmp_path, dataset, truth, out_dir=tmp_path / "out_b")
    run_pipeline(cfg_a)
    run_pipeline(cfg_b)
    for name in ("pairs.jsonl", "hits.jsonl", "assignments.jsonl", "verdicts.csv", "pr_curve.csv"):
        assert filecmp.cmp(tmp_path / "out_a" / name, tmp_path / "out_b" / name, shallow=False), name


def test_cli_run_and_stage_reruns(tmp_path, demo_files, capsys):
    dataset, truth = demo_files
    out = tmp_path / "out"
    args = [
        "--dataset", str(dataset), "--truth", str(truth),
        "--threshold", "0.3", "--cluster-size", "4",
        "--generator", "two-tiered", "--seed", "7",
        "--worker-pool", "perfect:3", "--aggregation", "majority",
        "--out-dir", str(out),
    ]
    assert main(["run", *args]) == 0
    assert (out / "verdicts.csv").exists()
    # stage subcommand reuses upstream artifacts
    assert main(["aggregate", *args]) == 0


def test_cli_pair_generator_five_hits(tmp_path, demo_files):
    dataset, _ = demo_files
    out = tmp_path / "out"
    base = ["--dataset", str(dataset), "--threshold", "0.3", "--out-dir", str(out)]
    assert main(["prune", *base]) == 0
    assert main(["generate", *base, "--generator", "pair", "--cluster-size", "2"]) == 0
    hits = storage.read_hits(out / "hits.jsonl")
    assert len(hits) == 5


def test_cli_missing_upstream_artifact(tmp_path, demo_files, capsys):
    dataset, truth = demo_files
    out = tmp_path / "missing"
    code = main(
        ["evaluate", "--dataset", str(dataset), "--truth", str(truth), "--out-dir", str(out)]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "verdicts.csv" in err
    assert "[evaluate]" in err


def test_cli_bench_writes_rows(tmp_path, demo_files):
    dataset, truth = demo_files
    out = tmp_path / "out"
    code = main(
        [
            "bench",
            "--dataset", str(dataset),
            "--truth", str(truth),
            "--threshold", "0.3",
            "--cluster-size", "4",
            "--out-dir", str(out),
            "--generators", "all",
        ]
    )
    assert code == 0
    text = (out / "bench.csv").read_text().strip().splitlines()
    assert len(text) == 1 + 6  # header + one row per generator


def test_cli_prune_report(tmp_path, demo_files):
    dataset, truth = demo_files
    out = tmp_path / "out"
    code = main(
        [
            "prune",
            "--dataset", str(dataset), "--truth", str(truth),
            "--threshold", "0.3", "--out-dir", str(out),
            "--report-thresholds", "0,0.1,0.2,0.3,0.4,0.5",
        ]
    )
    assert code == 0
    lines = (out / "prune_report.csv").read_text().strip().splitlines()
    assert lines[0] == "threshold,pairs,matches,recall"
    assert lines[1].startswith("0.5,")
    assert lines[-1].startswith("0,36,4,1")
