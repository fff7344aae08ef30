import json
import math

import pytest

from aaca import bench
from aaca.config import CONFIG_ENV, ConfigError, RunConfig, build_config
from aaca.image import save_pgm
from aaca.metrics import psnr_from_mse

from .conftest import checkerboard, gradient


@pytest.fixture
def refs(tmp_path):
    paths = []
    for name, img in (("grad", gradient(32, 32)), ("board", checkerboard(32, 32))):
        p = tmp_path / f"{name}.pgm"
        save_pgm(img, p)
        paths.append(str(p))
    return paths


class TestConfig:
    def test_defaults(self):
        cfg = build_config()
        assert cfg.aco_params().beta == 2.0
        assert cfg.methods == ["nearest", "bilinear", "bicubic", "obaca", "aaca"]

    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"seed": 3, "q0": 0.4, "methods": ["aaca"]}))
        cfg = build_config(path, {"seed": 9, "q0": None})
        assert (cfg.seed, cfg.q0, cfg.methods) == (9, 0.4, ["aaca"])

    def test_env_fallback(self, tmp_path, monkeypatch):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"iterations": 2}))
        monkeypatch.setenv(CONFIG_ENV, str(path))
        assert build_config().iterations == 2

    @pytest.mark.parametrize("values", [
        {"unknown": 1}, {"rho": 1.5}, {"methods": ["lanczos"]}, {"scale": 1},
        {"alpha": 3.0, "beta": 2.0}, {"iterations": "4"},
    ])
    def test_rejects(self, values):
        with pytest.raises(ConfigError):
            build_config(None, values)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{nope")
        with pytest.raises(ConfigError):
            build_config(path)


class TestBench:
    def test_rows_per_image_and_method(self, refs):
        cfg = RunConfig(inputs=refs, steps_per_ant=10, iterations=1)
        rows = bench.run_bench(cfg)
        assert [(r.image, r.method) for r in rows] == [
            (img, m) for img in ("grad", "board") for m in cfg.methods]
        for r in rows:
            assert r.psnr_db == pytest.approx(psnr_from_mse(r.mse), abs=1e-3)

    def test_compare_self(self, refs):
        cfg = RunConfig(inputs=refs[:1], methods=["bilinear"], compare=[refs[0]])
        rows = bench.run_bench(cfg)
        ext = [r for r in rows if r.method.startswith("external:")]
        assert len(ext) == 1 and ext[0].mse == 0 and math.isinf(ext[0].psnr_db)

    def test_targeted_compare(self, refs):
        cfg = RunConfig(inputs=refs, methods=["nearest"], compare=[f"board={refs[1]}"])
        rows = bench.run_bench(cfg)
        assert [r.image for r in rows if r.method.startswith("external:")] == ["board"]

    def test_reports(self, refs, tmp_path):
        cfg = RunConfig(inputs=refs[:1], methods=["bilinear", "aaca"], compare=[refs[0]])
        rows = bench.run_bench(cfg)
        paths = bench.write_reports(rows, tmp_path / "out" / "rep.csv", cfg)
        assert [p.name for p in paths] == ["rep.csv", "rep.json", "rep.config.json"]
        header = paths[0].read_text().splitlines()[0]
        assert header == "image,method,mse,psnr_db,wall_time_ms,seed"
        back = bench.read_csv_report(paths[0])
        assert [(r.image, r.method, r.mse, r.psnr_db) for r in back] == \
            [(r.image, r.method, r.mse, r.psnr_db) for r in rows]
        data = json.loads(paths[1].read_text())
        assert list(data[0]) == list(bench.COLUMNS)
        assert data[-1]["psnr_db"] == "inf"
        assert json.loads(paths[2].read_text())["seed"] == cfg.seed
