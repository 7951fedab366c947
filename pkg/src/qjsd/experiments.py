"""Experiment drivers: distance histograms, entanglement curves, property and triangle studies.

Every driver is deterministic given its seed.  CSV files carry a header row
and end with a ``# seed=<s> version=<v>`` metadata line.
"""
from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .annealing import AnnealingSchedule, minimize_distance_batch, singlet_calibration
from .divergences import js_distance_array
from .entanglement import concurrence
from .errors import QJSDError, UnknownFamily
from .families import FAMILIES, family_state, linear_entropy, random_density_array
from .fileio import write_density_matrix
from .properties import PROPERTY_TAGS, PropertyReport, TriangleReport, triangle_check, verify_property

MEASURE_CEILING = 1.01


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def csv_text(header, rows, seed: int, **metadata) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    extra = "".join(f" {k}={_fmt(v)}" for k, v in metadata.items())
    buf.write(f"# seed={seed} version={__version__}{extra}\n")
    return buf.getvalue()


def write_csv(path, header, rows, seed: int, **metadata) -> Path:
    path = Path(path)
    path.write_text(csv_text(header, rows, seed, **metadata))
    return path


# -- distance to the maximally mixed state ----------------------------------


@dataclass
class DistanceSample:
    dim: int
    d_js: float


@dataclass
class Fig1Result:
    distances: dict[int, np.ndarray]
    histograms: dict[int, tuple[np.ndarray, np.ndarray]]
    summary: list[tuple[int, float, float]]

    @property
    def means_increasing(self) -> bool:
        means = [row[1] for row in self.summary]
        return all(a < b for a, b in zip(means, means[1:]))

    def samples(self) -> list[DistanceSample]:
        return [DistanceSample(n, float(d)) for n, ds in self.distances.items() for d in ds]


def distances_to_maximally_mixed(n: int, samples: int, rng: np.random.Generator, chunk: int = 20_000) -> np.ndarray:
    out = []
    mm = np.eye(n, dtype=complex) / n
    for start in range(0, samples, chunk):
        rhos = random_density_array(n, min(chunk, samples - start), rng)
        out.append(js_distance_array(rhos, np.broadcast_to(mm, rhos.shape)))
    return np.concatenate(out)


def run_fig1(dims=(2, 3, 4, 6, 8), samples: int = 10_000, bins: int = 50, seed: int = 0) -> Fig1Result:
    """Histogram of sqrt(QJSD) between Hilbert-Schmidt random states and I/N."""
    if samples < 100:
        raise QJSDError("need at least 100 samples per dimension")
    dims = sorted(int(n) for n in dims)
    if not dims or dims[0] < 2:
        raise QJSDError("dimensions must be at least 2")
    edges = np.linspace(0.0, 1.0, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    distances, histograms, summary = {}, {}, []
    for n in dims:
        d = distances_to_maximally_mixed(n, samples, np.random.default_rng([seed, n]))
        density, _ = np.histogram(d, bins=edges, density=True)
        distances[n] = d
        histograms[n] = (centers, density)
        summary.append((n, float(d.mean()), float(d.std())))
    return Fig1Result(distances, histograms, summary)


# -- entanglement curves ----------------------------------------------------


@dataclass
class FamilyCurvePoint:
    family: str
    param: float
    s_linear: float
    concurrence: float
    e_js: float
    e_bures: float
    seed: int

    def in_range(self) -> bool:
        return all(0.0 <= v <= MEASURE_CEILING for v in (self.concurrence, self.e_js, self.e_bures))


CURVE_HEADER = ("family", "param", "s_linear", "concurrence", "e_js", "e_bures", "seed")


def run_fig2(family: str, points: int = 21, schedule: AnnealingSchedule | None = None, seed: int = 0) -> list[FamilyCurvePoint]:
    """Concurrence, normalized E_JS and normalized E_B on a uniform parameter grid."""
    return run_fig2_many([family], points, schedule, seed)


def run_fig2_many(families, points: int = 21, schedule: AnnealingSchedule | None = None, seed: int = 0) -> list[FamilyCurvePoint]:
    """Like :func:`run_fig2` for several families, annealed in one batch."""
    if points < 2:
        raise QJSDError("need at least 2 grid points")
    families = [f.lower() for f in families]
    for fam in families:
        if fam not in FAMILIES:
            raise UnknownFamily(f"unknown family {fam!r}; choose from {FAMILIES}")
    schedule = replace(AnnealingSchedule() if schedule is None else schedule, seed=seed)
    grid = np.linspace(0.0, 1.0, points)
    labels = [(fam, float(x)) for fam in families for x in grid]
    states = [family_state(fam, x) for fam, x in labels]
    js = minimize_distance_batch(states, "js", schedule)
    bures = minimize_distance_batch(states, "bures", schedule)
    rows = [
        FamilyCurvePoint(fam, x, linear_entropy(rho), concurrence(rho), rj.normalized_value, rb.normalized_value, seed)
        for (fam, x), rho, rj, rb in zip(labels, states, js, bures)
    ]
    return rows


def calibration_metadata(schedule: AnnealingSchedule) -> dict[str, float]:
    return {f"calibration_{m}": singlet_calibration(m, schedule) for m in ("js", "bures")}


def curve_rows(points: list[FamilyCurvePoint]):
    return [tuple(asdict(p).values()) for p in points]


def curve_plot_script(csv_name: str, family: str) -> str:
    return (
        "set datafile separator ','\n"
        f"set title '{family}'\n"
        "set xlabel 'linear entropy'\n"
        "set key top right\n"
        f"plot '{csv_name}' every ::1 using 3:4 with linespoints title 'concurrence', \\\n"
        f"     '' every ::1 using 3:5 with linespoints title 'E_JS', \\\n"
        f"     '' every ::1 using 3:6 with linespoints title 'E_B'\n"
    )


def histogram_plot_script(files: dict[int, str]) -> str:
    plots = ", \\\n     ".join(f"'{name}' every ::1 using 1:2 with lines title 'N={n}'" for n, name in files.items())
    return "set datafile separator ','\nset xlabel 'd_JS to I/N'\nset ylabel 'density'\n" f"plot {plots}\n"


# -- property studies -------------------------------------------------------

REPORT_HEADER = ("property", "trials", "max_violation", "witness_file_or_empty")


def run_triangle(n: int, trials: int, seed: int = 0, rank: int | None = None) -> TriangleReport:
    return triangle_check(n, trials, np.random.default_rng([seed, n, n if rank is None else rank]), rank)


def run_properties(trials: int, seed: int = 0) -> list[PropertyReport]:
    """One report per property tag, each with its own derived generator."""
    return [verify_property(tag, trials=trials, rng=np.random.default_rng([seed, k])) for k, tag in enumerate(PROPERTY_TAGS)]


def dump_witness(out_dir, name: str, states) -> str:
    """Write witness states in the density-matrix format; returns the file stem."""
    out_dir = Path(out_dir)
    for k, state in enumerate(states):
        write_density_matrix(out_dir / f"witness_{name}_{k}.txt", state)
    return f"witness_{name}"


def report_rows(reports, out_dir=None):
    rows = []
    for rep in reports:
        name = rep.name if isinstance(rep, TriangleReport) else rep.property
        witness = ""
        if rep.witness is not None and out_dir is not None:
            witness = dump_witness(out_dir, name, rep.witness)
        rows.append((name, rep.trials, rep.max_violation, witness))
    return rows
