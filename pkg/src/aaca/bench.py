"""Downscale -> upscale -> score benchmark, with CSV/JSON reports."""

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .aco import construct_pheromone
from .image import downscale, load_pgm
from .interpolate import PHEROMONE_METHODS, upscale
from .metrics import score

COLUMNS = ("image", "method", "mse", "psnr_db", "wall_time_ms", "seed")


@dataclass(frozen=True)
class BenchRow:
    image: str
    method: str
    mse: float
    psnr_db: float
    wall_time_ms: float
    seed: int


def run_image(name, reference, cfg):
    """Score every method in ``cfg.methods`` on one reference image.

    Timing of ``obaca``/``aaca`` includes building the pheromone field.  The
    field is built once per image and shared by both methods, so the first
    pheromone method listed carries the construction time.
    """
    low = downscale(reference, cfg.scale, cfg.downscale)
    field = None
    rows = []
    for method in cfg.methods:
        start = time.perf_counter()
        if method in PHEROMONE_METHODS and field is None:
            field = construct_pheromone(low, cfg.aco_params())
        out = upscale(low, cfg.scale, method, field, obaca_normalize=cfg.obaca_normalize,
                      eps=cfg.eps, mode=cfg.coord_mode, n_jobs=cfg.n_jobs)
        elapsed = (time.perf_counter() - start) * 1000.0
        q = score(reference, out)
        rows.append(BenchRow(name, method, q.mse, q.psnr, elapsed, cfg.seed))
    return rows


def compare_rows(name, reference, paths, seed):
    """Rows scoring externally produced reconstructions against ``reference``."""
    rows = []
    for path in paths:
        q = score(reference, load_pgm(path))
        rows.append(BenchRow(name, f"external:{Path(path).stem}", q.mse, q.psnr, 0.0, seed))
    return rows


def parse_compare(spec):
    """``"[IMAGE=]PATH"`` -> ``(image or None, path)``."""
    if "=" in spec:
        image, path = spec.split("=", 1)
        return image, path
    return None, spec


def run_bench(cfg):
    rows = []
    compares = [parse_compare(c) for c in cfg.compare]
    for path in cfg.inputs:
        name = Path(path).stem
        reference = load_pgm(path)
        rows.extend(run_image(name, reference, cfg))
        mine = [p for target, p in compares if target in (None, name)]
        rows.extend(compare_rows(name, reference, mine, cfg.seed))
    return rows


def _fmt(value):
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return repr(value)
    return str(value)


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(getattr(row, c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows):
    # inf has no JSON literal; written as the string "inf"
    data = [{k: ("inf" if isinstance(v, float) and math.isinf(v) else v)
             for k, v in asdict(row).items()} for row in rows]
    return json.dumps(data, indent=2) + "\n"


def read_csv_report(path):
    with open(path, newline="") as fh:
        out = []
        for rec in csv.DictReader(fh):
            out.append(BenchRow(rec["image"], rec["method"], float(rec["mse"]),
                                float(rec["psnr_db"]), float(rec["wall_time_ms"]),
                                int(rec["seed"])))
        return out


def write_reports(rows, base, cfg=None):
    """Write ``<base>.csv``, ``<base>.json`` and, with ``cfg``, ``<base>.config.json``."""
    base = Path(base)
    if base.suffix in (".csv", ".json"):
        base = base.with_suffix("")
    base.parent.mkdir(parents=True, exist_ok=True)
    paths = [base.with_name(base.name + ".csv"), base.with_name(base.name + ".json")]
    paths[0].write_text(rows_to_csv(rows))
    paths[1].write_text(rows_to_json(rows))
    if cfg is not None:
        cfg_path = base.with_name(base.name + ".config.json")
        cfg_path.write_text(json.dumps(cfg.as_dict(), indent=2, sort_keys=True) + "\n")
        paths.append(cfg_path)
    return paths
