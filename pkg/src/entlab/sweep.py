"""Grid sweeps over (alpha, c0, Dt), CSV I/O, region extraction and plot data."""

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .criteria import classify, negativity_array, realignment_array, reduction_array, REDUCTION_TOL
from .errors import ConfigError, EntlabError, NumericalError
from .evolution import DEFAULT_VARIANT, HamiltonianVariant, evolve_reduce_array
from .states import Family, aux_qubit, horodecki_state1_matrix, horodecki_state2_matrix, in_domain

log = logging.getLogger(__name__)

CSV_FIELDS = ("family", "alpha", "c0", "dt", "negativity", "realignment", "red_min_a", "red_min_b", "label")
OUT_OF_DOMAIN = "out-of-domain"
WORKERS_ENV = "ENTLAB_WORKERS"
MAX_WITNESSES = 10


def parse_range(text):
    """Parse ``min:max:steps`` into ``(min, max, steps)``; a bare number is one point."""
    parts = str(text).strip().split(":")
    try:
        if len(parts) == 1:
            x = float(parts[0])
            return (x, x, 1)
        if len(parts) != 3:
            raise ValueError
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad range {text!r}; expected min:max:steps") from None
    return (lo, hi, steps)


def parse_values(text):
    """Comma-separated list of numbers, or a ``min:max:steps`` range."""
    if isinstance(text, (int, float)):
        return (float(text),)
    if isinstance(text, (list, tuple)):
        return tuple(float(x) for x in text)
    if ":" in str(text):
        return tuple(grid_points(parse_range(text)))
    try:
        return tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"bad value list {text!r}") from None


def grid_points(rng):
    lo, hi, steps = rng
    if steps == 1:
        return np.array([lo])
    return np.linspace(lo, hi, steps)


@dataclass(frozen=True)
class SweepConfig:
    family: Family
    alpha_range: tuple
    c0_values: tuple
    dt_range: tuple
    variant: HamiltonianVariant = DEFAULT_VARIANT
    output_path: str = ""
    allow_out_of_domain: bool = False

    def __post_init__(self):
        try:
            object.__setattr__(self, "family", Family.parse(self.family))
            object.__setattr__(self, "variant", HamiltonianVariant.parse(self.variant))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        for name in ("alpha_range", "dt_range"):
            rng = getattr(self, name)
            if isinstance(rng, str):
                rng = parse_range(rng)
            lo, hi, steps = rng
            rng = (float(lo), float(hi), int(steps))
            if rng[2] < 1:
                raise ConfigError(f"{name}: steps must be >= 1")
            if not rng[0] <= rng[1]:
                raise ConfigError(f"{name}: min must not exceed max")
            if not all(np.isfinite(rng[:2])):
                raise ConfigError(f"{name}: bounds must be finite")
            object.__setattr__(self, name, rng)
        c0s = parse_values(self.c0_values)
        if not c0s:
            raise ConfigError("at least one c0 value is required")
        if any(not 0.0 <= c <= 1.0 for c in c0s):
            raise ConfigError(f"c0 values must lie in [0, 1], got {c0s}")
        object.__setattr__(self, "c0_values", tuple(sorted(set(c0s))))
        if not self.allow_out_of_domain:
            bad = [a for a in self.alphas() if not in_domain(self.family, a)]
            if bad:
                raise ConfigError(
                    f"alpha range {self.alpha_range} leaves the domain of "
                    f"{self.family.name.lower()}; pass allow_out_of_domain to override"
                )

    def alphas(self):
        return grid_points(self.alpha_range)

    def dts(self):
        return grid_points(self.dt_range)

    def metadata(self):
        return {
            "family": self.family.value,
            "alpha_range": list(self.alpha_range),
            "c0_values": list(self.c0_values),
            "dt_range": list(self.dt_range),
            "variant": self.variant.value,
            "allow_out_of_domain": self.allow_out_of_domain,
        }


@dataclass(frozen=True, order=True)
class SweepRecord:
    c0: float
    alpha: float
    dt: float
    family: int = field(compare=False)
    negativity: float = field(compare=False)
    realignment: float = field(compare=False)
    red_min_a: float = field(compare=False)
    red_min_b: float = field(compare=False)
    label: str = field(compare=False)

    @property
    def red_min(self):
        return min(self.red_min_a, self.red_min_b)


def _state_matrix(family, alpha):
    if family is Family.STATE1:
        return horodecki_state1_matrix(alpha)
    with np.errstate(invalid="ignore"):
        return horodecki_state2_matrix(alpha)


def evaluate_line(family, alpha, c0, dts, variant):
    """Criteria along one Dt line at fixed (alpha, c0); returns a list of records."""
    family = Family.parse(family)
    qubit, _ = aux_qubit(c0)
    rho = _state_matrix(family, alpha)
    if not np.all(np.isfinite(rho)):
        raise NumericalError(f"state {family.name.lower()} is undefined at alpha = {alpha!r}")
    mats = evolve_reduce_array(rho, qubit, dts, variant)
    n = negativity_array(mats)
    r = realignment_array(mats)
    ra, rb = reduction_array(mats)
    suffix = "" if in_domain(family, alpha) else "/" + OUT_OF_DOMAIN
    return [
        SweepRecord(
            c0=float(c0), alpha=float(alpha), dt=float(dt), family=family.value,
            negativity=float(n[k]), realignment=float(r[k]),
            red_min_a=float(ra[k]), red_min_b=float(rb[k]),
            label=str(classify(n[k], r[k])) + suffix,
        )
        for k, dt in enumerate(dts)
    ]


def _line_task(args):
    family, alpha, c0, dts, variant = args
    try:
        return evaluate_line(family, alpha, c0, dts, variant)
    except EntlabError as exc:
        raise NumericalError(
            f"evaluation failed at family={family}, alpha={alpha!r}, c0={c0!r}: {exc}"
        ) from exc


def worker_count(workers=None):
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {env!r}") from None
        if value < 1:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got {env!r}")
        return value
    return os.cpu_count() or 1


def run_sweep(config, workers=None):
    """Evaluate every grid point of ``config``.

    Work is split into one task per (c0, alpha) line regardless of the
    worker count, so the output does not depend on parallelism.
    """
    dts = config.dts()
    tasks = [
        (config.family.value, float(a), float(c0), dts, config.variant)
        for c0 in config.c0_values
        for a in config.alphas()
    ]
    nworkers = min(worker_count(workers), len(tasks))
    log.info("sweep: %d lines x %d Dt points on %d worker(s)", len(tasks), len(dts), nworkers)
    if nworkers == 1:
        lines = map(_line_task, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=nworkers)
        with pool:
            lines = list(pool.map(_line_task, tasks))
    records = [rec for line in lines for rec in line]
    for rec in records:
        if not all(np.isfinite([rec.negativity, rec.realignment, rec.red_min_a, rec.red_min_b])):
            raise NumericalError(f"non-finite criteria at alpha={rec.alpha!r}, c0={rec.c0!r}, dt={rec.dt!r}")
    records.sort()
    return records


# -- CSV ---------------------------------------------------------------------

def _fmt(x):
    return format(x, ".17g")


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in records:
        writer.writerow([
            r.family, _fmt(r.alpha), _fmt(r.c0), _fmt(r.dt), _fmt(r.negativity),
            _fmt(r.realignment), _fmt(r.red_min_a), _fmt(r.red_min_b), r.label,
        ])
    return buf.getvalue()


def write_csv(records, path):
    Path(path).write_bytes(records_to_csv(records).encode("utf-8"))


def parse_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ConfigError(f"unexpected CSV header {reader.fieldnames}; expected {','.join(CSV_FIELDS)}")
    out = []
    for row in reader:
        try:
            out.append(SweepRecord(
                c0=float(row["c0"]), alpha=float(row["alpha"]), dt=float(row["dt"]),
                family=int(row["family"]), negativity=float(row["negativity"]),
                realignment=float(row["realignment"]), red_min_a=float(row["red_min_a"]),
                red_min_b=float(row["red_min_b"]), label=row["label"],
            ))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed CSV row {row}: {exc}") from None
    return out


def read_csv(path):
    return parse_csv(Path(path).read_text(encoding="utf-8"))


def write_metadata(config, path):
    """Sidecar JSON next to a CSV recording the configuration and Hamiltonian variant."""
    Path(path).write_text(json.dumps(config.metadata(), indent=2, sort_keys=True) + "\n")


# -- analysis ------------------------------------------------------------------

@dataclass(frozen=True)
class RegionReport:
    """Bounding box of grid points where the reduction criterion is violated."""

    dt_lo: float = None
    dt_hi: float = None
    alpha_lo: float = None
    alpha_hi: float = None
    witness_points: tuple = ()

    @property
    def empty(self):
        return not self.witness_points

    def as_dict(self):
        d = {k: getattr(self, k) for k in ("dt_lo", "dt_hi", "alpha_lo", "alpha_hi")}
        d["empty"] = self.empty
        d["witness_points"] = [asdict(w) for w in self.witness_points]
        return d


def find_negative_region(records, tol=REDUCTION_TOL):
    groups = {(r.family, r.c0) for r in records}
    if len(groups) > 1:
        raise ConfigError(f"records mix several (family, c0) sweeps: {sorted(groups)}")
    hits = [r for r in records if r.red_min < -tol]
    if not hits:
        return RegionReport()
    witnesses = sorted(hits, key=lambda r: (r.red_min, r.c0, r.alpha, r.dt))[:MAX_WITNESSES]
    return RegionReport(
        dt_lo=min(r.dt for r in hits),
        dt_hi=max(r.dt for r in hits),
        alpha_lo=min(r.alpha for r in hits),
        alpha_hi=max(r.alpha for r in hits),
        witness_points=tuple(witnesses),
    )


def group_records(records):
    """Split records by (family, c0), preserving order."""
    out = {}
    for r in records:
        out.setdefault((r.family, r.c0), []).append(r)
    return out


def realignment_crossings(records, tol=0.0):
    """Alpha values where R turns from positive to negative along each (c0, Dt) line.

    Each crossing is reported as the first grid alpha with R < -tol after a
    point with R > tol.
    """
    lines = {}
    for r in sorted(records, key=lambda r: (r.c0, r.dt, r.alpha)):
        lines.setdefault((r.c0, r.dt), []).append(r)
    out = []
    for (c0, dt), line in lines.items():
        for prev, cur in zip(line, line[1:]):
            if prev.realignment > tol and cur.realignment < -tol:
                out.append({"c0": c0, "dt": dt, "alpha": cur.alpha})
    return out


# -- plot data -----------------------------------------------------------------

_CURVES = (("negativity", "N"), ("realignment", "R"))


def _curve_name(stem, quantity, fixed):
    tag = "_".join(f"{k}{_fmt(v)}" for k, v in fixed)
    return f"{stem}_{quantity}_{tag}.dat"


def emit_plot_data(records, directory, axis="alpha", stem="sweep"):
    """Write whitespace-separated data files and a gnuplot script.

    ``axis`` is ``"alpha"`` or ``"dt"`` for N/R curves against that
    parameter (one file per curve), or ``"surface"`` for the
    (Dt, alpha, min reduction eigenvalue) grid, one file per c0, in gnuplot's
    blank-line-separated scan format.  Returns the written paths.
    """
    if not records:
        raise ValueError("no records to plot")
    if axis not in ("alpha", "dt", "surface"):
        raise ValueError(f"axis must be 'alpha', 'dt' or 'surface', got {axis!r}")
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = {}

    if axis == "surface":
        by_c0 = {}
        for r in records:
            by_c0.setdefault(r.c0, []).append(r)
        for c0, recs in sorted(by_c0.items()):
            recs = sorted(recs, key=lambda r: (r.dt, r.alpha))
            lines, last_dt = [], None
            for r in recs:
                if last_dt is not None and r.dt != last_dt:
                    lines.append("")
                lines.append(f"{_fmt(r.dt)} {_fmt(r.alpha)} {_fmt(r.red_min)}")
                last_dt = r.dt
            files[_curve_name(stem, "redmin", [("c0", c0)])] = "\n".join(lines) + "\n"
    else:
        other = "dt" if axis == "alpha" else "alpha"
        lines_by_key = {}
        for r in sorted(records, key=lambda r: (r.c0, getattr(r, other), getattr(r, axis))):
            lines_by_key.setdefault((r.c0, getattr(r, other)), []).append(r)
        for (c0, fixed), recs in lines_by_key.items():
            for quantity, _ in _CURVES:
                rows = [f"{_fmt(getattr(r, axis))} {_fmt(getattr(r, quantity))}" for r in recs]
                files[_curve_name(stem, quantity, [("c0", c0), (other, fixed)])] = "\n".join(rows) + "\n"

    script = _gnuplot_script(sorted(files), axis, stem)
    files[f"{stem}.gp"] = script
    paths = []
    for name, text in sorted(files.items()):
        p = directory / name
        p.write_bytes(text.encode("utf-8"))
        paths.append(p)
    return paths


def _gnuplot_script(datafiles, axis, stem):
    lines = [f"# gnuplot script for {stem}", "set terminal pngcairo size 900,600", f"set output '{stem}.png'"]
    if axis == "surface":
        lines += [
            "set xlabel 'Dt'", "set ylabel 'alpha'",
            "set view map", "set contour base", "set cntrparam levels discrete 0",
            "set pm3d at b",
            "splot " + ", \\\n      ".join(f"'{f}' using 1:2:3 with pm3d title '{f}'" for f in datafiles),
        ]
    else:
        lines += [f"set xlabel '{axis}'", "set ylabel 'N (green), R (red)'", "set grid"]
        plots = []
        for f in datafiles:
            color = "dark-green" if "_negativity_" in f else "red"
            plots.append(f"'{f}' using 1:2 with lines lc rgb '{color}' title '{f}'")
        lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
