import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entlab.errors import ConfigError, NumericalError
from entlab.evolution import HamiltonianVariant
from entlab.states import Family
from entlab.sweep import (
    CSV_FIELDS,
    SweepConfig,
    SweepRecord,
    emit_plot_data,
    find_negative_region,
    grid_points,
    parse_csv,
    parse_range,
    parse_values,
    realignment_crossings,
    records_to_csv,
    run_sweep,
    worker_count,
    write_metadata,
)


def small_config(**kw):
    base = dict(family=1, alpha_range=(3.0, 4.0, 3), c0_values=(0.3, 0.7), dt_range=(0.0, 2.0, 4))
    base.update(kw)
    return SweepConfig(**base)


def rec(alpha, dt, red=0.1, r=0.0, c0=0.7, family=2, n=0.0):
    return SweepRecord(c0=c0, alpha=alpha, dt=dt, family=family, negativity=n,
                       realignment=r, red_min_a=red, red_min_b=red + 1, label="x")


@pytest.mark.parametrize("text, expected", [
    ("0:5:11", (0.0, 5.0, 11)),
    ("2.5", (2.5, 2.5, 1)),
    (" 1:1:1 ", (1.0, 1.0, 1)),
])
def test_parse_range(text, expected):
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["", "1:2", "a:b:c", "0:1:2.5", "1:2:3:4"])
def test_parse_range_rejects(text):
    with pytest.raises(ConfigError):
        parse_range(text)


def test_parse_values():
    assert parse_values("0.1, 0.5,0.9") == (0.1, 0.5, 0.9)
    assert parse_values("0:1:3") == (0.0, 0.5, 1.0)
    assert parse_values(0.7) == (0.7,)
    with pytest.raises(ConfigError):
        parse_values("0.1,x")


def test_grid_points_single_step():
    assert list(grid_points((2.0, 9.0, 1))) == [2.0]


@pytest.mark.parametrize("kw", [
    dict(alpha_range=(3.0, 4.0, 0)),
    dict(alpha_range=(4.0, 3.0, 3)),
    dict(dt_range=(0.0, float("inf"), 3)),
    dict(c0_values=(1.2,)),
    dict(c0_values=()),
    dict(family=3),
    dict(variant="Pauli"),
    dict(alpha_range=(1.0, 4.0, 4)),
    dict(family=2, alpha_range=(0.5, 1.5, 3)),
])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        small_config(**kw)


def test_config_normalises_inputs():
    cfg = small_config(alpha_range="3:4:3", c0_values="0.7,0.3,0.7", variant="Spin1")
    assert cfg.family is Family.STATE1
    assert cfg.variant is HamiltonianVariant.SPIN1
    assert cfg.c0_values == (0.3, 0.7)
    assert cfg.alpha_range == (3.0, 4.0, 3)


def test_sweep_size_and_order():
    records = run_sweep(small_config(), workers=1)
    assert len(records) == 2 * 3 * 4
    keys = [(r.c0, r.alpha, r.dt) for r in records]
    assert keys == sorted(keys)
    assert {r.family for r in records} == {1}


def test_single_step_ranges():
    records = run_sweep(small_config(alpha_range=(3.5, 3.5, 1), dt_range=(1.0, 1.0, 1)), workers=1)
    assert [(r.c0, r.alpha, r.dt) for r in records] == [(0.3, 3.5, 1.0), (0.7, 3.5, 1.0)]


def test_sweep_matches_dt0_state_criteria():
    records = run_sweep(small_config(alpha_range=(4.5, 4.5, 1), dt_range=(0.0, 0.0, 1)), workers=1)
    assert all(r.label == "FreeEntangled" for r in records)


def test_out_of_domain_label():
    cfg = small_config(alpha_range=(1.5, 2.0, 2), allow_out_of_domain=True, c0_values=(0.5,),
                       dt_range=(0.0, 0.0, 1))
    labels = [r.label for r in run_sweep(cfg, workers=1)]
    assert labels[0].endswith("/out-of-domain")
    assert not labels[1].endswith("/out-of-domain")


def test_undefined_state_is_numerical_failure():
    cfg = small_config(family=2, alpha_range=(1.5, 1.5, 1), allow_out_of_domain=True)
    with pytest.raises(NumericalError, match="alpha=1.5"):
        run_sweep(cfg, workers=1)


def test_parallel_output_is_identical():
    cfg = small_config()
    serial = records_to_csv(run_sweep(cfg, workers=1))
    parallel = records_to_csv(run_sweep(cfg, workers=3))
    assert serial == parallel


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("ENTLAB_WORKERS", "4")
    assert worker_count() == 4
    assert worker_count(2) == 2
    monkeypatch.setenv("ENTLAB_WORKERS", "zero")
    with pytest.raises(ConfigError):
        worker_count()


def test_grid_refinement_reproduces_coarse_points():
    coarse = run_sweep(small_config(dt_range=(0.0, 2.0, 3)), workers=1)
    fine = {(r.c0, r.alpha, r.dt): r for r in run_sweep(small_config(dt_range=(0.0, 2.0, 5)), workers=1)}
    for r in coarse:
        f = fine[(r.c0, r.alpha, r.dt)]
        assert abs(f.negativity - r.negativity) < 1e-12
        assert abs(f.realignment - r.realignment) < 1e-12
        assert f.label == r.label


def test_csv_header_and_line_endings():
    text = records_to_csv(run_sweep(small_config(c0_values=(0.5,)), workers=1))
    assert text.split("\n", 1)[0] == ",".join(CSV_FIELDS)
    assert "\r" not in text
    assert text.endswith("\n")


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite, finite, finite, finite, finite, finite), max_size=5))
@settings(max_examples=50)
def test_csv_round_trip_exact(rows):
    records = [SweepRecord(c0=a, alpha=b, dt=c, family=1, negativity=d, realignment=e,
                           red_min_a=f, red_min_b=g, label="Undetected")
               for a, b, c, d, e, f, g in rows]
    back = parse_csv(records_to_csv(records))
    assert [tuple(vars(r).values()) for r in back] == [tuple(vars(r).values()) for r in records]


def test_csv_rejects_wrong_header():
    with pytest.raises(ConfigError):
        parse_csv("a,b\n1,2\n")


def test_metadata_sidecar(tmp_path):
    cfg = small_config(variant="Spin1")
    path = tmp_path / "out.csv.meta.json"
    write_metadata(cfg, path)
    meta = json.loads(path.read_text())
    assert meta["variant"] == "Spin1"
    assert meta["family"] == 1


def test_region_empty():
    rep = find_negative_region([rec(0.5, 0.0), rec(0.6, 0.1)])
    assert rep.empty
    assert rep.as_dict()["dt_lo"] is None


def test_region_bounding_box():
    records = [rec(a, dt, red=-0.01 if (0.3 <= a <= 0.5 and 1.0 <= dt <= 2.0) else 0.01)
               for a in np.round(np.arange(0.1, 1.0, 0.1), 10) for dt in (0.0, 1.0, 1.5, 2.0, 3.0)]
    rep = find_negative_region(records)
    assert (rep.dt_lo, rep.dt_hi) == (1.0, 2.0)
    assert (rep.alpha_lo, rep.alpha_hi) == (0.3, 0.5)
    assert len(rep.witness_points) == 9


def test_region_witnesses_capped_and_sorted():
    records = [rec(0.01 * k, 0.0, red=-k * 1e-3) for k in range(1, 30)]
    rep = find_negative_region(records)
    assert len(rep.witness_points) == 10
    assert rep.witness_points[0].red_min < rep.witness_points[-1].red_min


def test_region_rejects_mixed_groups():
    with pytest.raises(ConfigError):
        find_negative_region([rec(0.5, 0.0, c0=0.1), rec(0.5, 0.0, c0=0.2)])


def test_realignment_crossings():
    records = [rec(a, 0.0, r=0.2 - a) for a in (0.05, 0.1, 0.15, 0.25)]
    assert realignment_crossings(records) == [{"c0": 0.7, "dt": 0.0, "alpha": 0.25}]
    assert realignment_crossings([rec(0.1, 0.0, r=0.1)]) == []


def test_plot_data_deterministic(tmp_path):
    records = run_sweep(small_config(), workers=1)
    first = emit_plot_data(records, tmp_path / "a")
    second = emit_plot_data(list(reversed(records)), tmp_path / "b")
    assert [p.name for p in first] == [p.name for p in second]
    for p, q in zip(first, second):
        assert p.read_bytes() == q.read_bytes()


def test_plot_single_record(tmp_path):
    paths = emit_plot_data([rec(0.5, 1.0, n=0.25)], tmp_path)
    dat = [p for p in paths if "_negativity_" in p.name]
    assert len(dat) == 1
    assert dat[0].read_text() == "0.5 0.25\n"
    gp = next(p for p in paths if p.suffix == ".gp")
    assert dat[0].name in gp.read_text()


def test_plot_surface_blocks(tmp_path):
    records = [rec(a, dt) for a in (0.2, 0.4) for dt in (0.0, 1.0, 2.0)]
    paths = emit_plot_data(records, tmp_path, axis="surface", stem="s")
    dat = next(p for p in paths if p.suffix == ".dat")
    blocks = dat.read_text().strip("\n").split("\n\n")
    assert len(blocks) == 3
    assert all(len(b.splitlines()) == 2 for b in blocks)
    assert "splot" in (tmp_path / "s.gp").read_text()


def test_plot_rejects_bad_axis(tmp_path):
    with pytest.raises(ValueError):
        emit_plot_data([rec(0.5, 0.0)], tmp_path, axis="c0")
    with pytest.raises(ValueError):
        emit_plot_data([], tmp_path)
