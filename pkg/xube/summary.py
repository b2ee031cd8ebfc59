#--------------------------------------------------------------------------------------------------#
# summary.py                                                                                       #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Reads the stats CSVs of a training run: latest per-k table and plot-data CSVs                    #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.23: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from astropy.table import Table

from xube.errors import CodecError, ConfigError
from xube.training import STATS_BY_K_COLUMNS, STATS_COLUMNS

BY_K_METRICS = ("solve_rate", "path_cost_mean", "search_itrs_mean", "target_mean")

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
@dataclass
class TrainSummary:
    latest_check: int | None
    latest_by_k: Table
    written: list[Path] = field(default_factory=list)


def _read(path: Path, columns) -> Table:
    if not path.exists():
        raise ConfigError(f"{path} not found; is this a training output directory?")
    try:
        table = Table.read(path, format="ascii.csv")
    except Exception as e:
        raise CodecError(f"{path}: unreadable CSV ({e})") from e
    missing = [c for c in columns if c not in table.colnames]
    if missing:
        raise CodecError(f"{path}: missing column(s) {', '.join(missing)}")
    return table


def _write(table: Table, path: Path, written: list[Path]) -> None:
    table.write(path, format="ascii.csv", overwrite=True)
    written.append(path)


def _wide_by_k(by_k: Table, metric: str) -> Table:
    checks = sorted(set(int(c) for c in by_k["check"]))
    ks = sorted(set(int(k) for k in by_k["k"]))
    values = np.full((len(checks), len(ks)), np.nan)
    row_of = {c: i for i, c in enumerate(checks)}
    col_of = {k: i for i, k in enumerate(ks)}
    for row in by_k:
        values[row_of[int(row["check"])], col_of[int(row["k"])]] = float(row[metric])
    return Table([checks] + [values[:, j] for j in range(len(ks))], names=["check"] + [f"k{k}" for k in ks])


def train_summary(stats_dir: str | Path, out_dir: str | Path | None = None) -> TrainSummary:
    """
    Summarise a training run

    Parameters
    ----------
    stats_dir: `str` or `Path`
        directory holding stats.csv and stats_by_k.csv (and optionally stats_test.csv, preds.csv)
    out_dir: `str`, `Path` or None
        destination of the plotdata_*.csv files. Default is ``stats_dir``

    Returns
    -------
    summary: `TrainSummary`
        latest check, its per-k table and the files written
    """
    stats_dir = Path(stats_dir)
    out_dir = Path(out_dir) if out_dir is not None else stats_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = _read(stats_dir / "stats.csv", STATS_COLUMNS)
    by_k = _read(stats_dir / "stats_by_k.csv", STATS_BY_K_COLUMNS)
    written: list[Path] = []

    _write(stats, out_dir / "plotdata_overall.csv", written)
    if len(by_k):
        for metric in BY_K_METRICS:
            _write(_wide_by_k(by_k, metric), out_dir / f"plotdata_by_k_{metric}.csv", written)

    test_path = stats_dir / "stats_test.csv"
    if test_path.exists():
        _write(_read(test_path, ("check", "solve_rate")), out_dir / "plotdata_test.csv", written)

    preds_path = stats_dir / "preds.csv"
    if preds_path.exists():
        preds = _read(preds_path, ("check", "target", "prediction"))
        if len(preds):
            last = preds[preds["check"] == preds["check"].max()]
            _write(last["target", "prediction"], out_dir / "plotdata_preds.csv", written)

    latest = int(stats["check"].max()) if len(stats) else None
    latest_by_k = by_k[by_k["check"] == latest] if latest is not None and len(by_k) else by_k[:0]
    return TrainSummary(latest, latest_by_k, written)
