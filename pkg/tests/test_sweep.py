import math
from dataclasses import replace

import numpy as np
import pytest

from lidmas.injection import DESIGNATED, RusConfig
from lidmas.noise import NoiseParams
from lidmas.outer_code import OuterCodeParams
from lidmas.sweep import (CSV_COLUMNS, GridSpec, read_csv, run_sweep,
                          write_csv)

NOISELESS = NoiseParams(s_db=1e6, p_base=0.0, alpha_ls=0.0,
                        p_dep_data=0.0, p_dep_ancilla=0.0, p_dep_out=0.0)
SMALL_GRID = GridSpec(s_db=(8.0, 12.0), p_base=(0.01, 0.03), d=(1, 3),
                      n_trials=400, master_seed=7)


def small_sweep(**overrides):
    grid = replace(SMALL_GRID, **overrides)
    return run_sweep(grid, NoiseParams(), OuterCodeParams(), RusConfig())


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(s_db=())
    with pytest.raises(ValueError):
        GridSpec(s_db=(10.0, 8.0))
    with pytest.raises(ValueError):
        GridSpec(n_trials=0)


def test_noiseless_single_point():
    grid = GridSpec(s_db=(1e6,), p_base=(1e-12,), d=(3,), n_trials=100,
                    master_seed=1)
    cfg = RusConfig(branch_policy=DESIGNATED, p_branch_fail=0.0)
    # p_base must be > 0 in the axis but effectively zero here
    table = run_sweep(grid, replace(NOISELESS, p_base=1e-12),
                      OuterCodeParams(w_z=1.0, w_p=1.0), cfg)
    row = table.rows()[0]
    assert row.p_succ == 1.0
    assert row.avg_rounds == 1.0
    assert row.f_inj == pytest.approx(1.0, abs=1e-10)
    assert row.f_log == pytest.approx(1.0, abs=1e-10)
    assert row.p_phys == pytest.approx(0.0, abs=1e-12)


def test_determinism_bytes(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(small_sweep(), p1)
    write_csv(small_sweep(), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_worker_count_does_not_change_output(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(small_sweep(workers=1), p1)
    write_csv(small_sweep(workers=4), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_csv_schema_and_sort(tmp_path):
    path = tmp_path / "sweep.csv"
    write_csv(small_sweep(), path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 8
    keys = []
    for line in lines[1:]:
        parts = line.split(",")
        keys.append((int(parts[2]), float(parts[1]), float(parts[0])))
    assert keys == sorted(keys)


def test_csv_round_trip_bit_exact(tmp_path):
    table = small_sweep()
    path = tmp_path / "sweep.csv"
    write_csv(table, path)
    back = read_csv(path)
    assert set(back.cells) == set(table.cells)
    for key, row in table.cells.items():
        other = back.cells[key]
        for name in ("p_succ", "avg_rounds", "f_inj", "f_log", "p_phys",
                     "p_l", "p_succ_se", "avg_rounds_se", "f_inj_se"):
            a, b = getattr(row, name), getattr(other, name)
            assert a == b or (math.isnan(a) and math.isnan(b))
        assert row.point_seed == other.point_seed


def test_read_csv_missing_and_malformed(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_csv(tmp_path / "absent.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_csv(bad)


def test_single_row_csv(tmp_path):
    grid = GridSpec(s_db=(8.0,), p_base=(0.02,), d=(1,), n_trials=50,
                    master_seed=3)
    table = run_sweep(grid, NoiseParams(), OuterCodeParams(), RusConfig())
    path = tmp_path / "one.csv"
    write_csv(table, path)
    assert len(path.read_text().strip().split("\n")) == 2


def test_crn_shares_raw_statistics_across_distance():
    table = small_sweep()
    for s in table.s_db:
        for p in table.p_base:
            r1, r3 = table.get(s, p, 1), table.get(s, p, 3)
            assert r1.p_succ == r3.p_succ
            assert r1.avg_rounds == r3.avg_rounds
            assert r1.f_inj == r3.f_inj
            assert r1.f_log != r3.f_log  # post-processing differs


def test_without_crn_streams_differ():
    table = small_sweep(common_random_numbers=False, n_trials=300)
    r1 = table.get(8.0, 0.01, 1)
    r3 = table.get(8.0, 0.01, 3)
    # same physics, different substreams: sampled metrics may differ and
    # the recorded stream seeds must differ
    assert r1.point_seed != r3.point_seed


def test_f_log_monotone_in_s_with_crn():
    table = small_sweep()
    for p in table.p_base:
        for d in table.d:
            f = [table.get(s, p, d).f_log for s in table.s_db]
            assert all(b >= a for a, b in zip(f, f[1:]))


def test_write_csv_unwritable_destination():
    with pytest.raises(OSError, match="no/such/dir"):
        write_csv(small_sweep(n_trials=1), "/no/such/dir/out.csv")
