"""Seeded Monte Carlo campaigns over graphon models.

A campaign is a deterministic function of its configuration: every trial is
keyed by (seed, trial_index), runs independently (parallelizable, mergeable
in any order), and any per-trial exception is captured as an `error` outcome
instead of aborting the run.  Records persist as versioned CSV; the report
aggregates per-n frequencies with Wilson intervals and carries the regime
predicted by the structural analyzer for cross-checking.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cutnorm import sample_distance
from .errors import FormatError, NoCertificate
from .fracmatch import fvcn_value, is_connected
from .graphon import (
    Graphon,
    PeninsulaCertificate,
    StepGraphon,
    analyze,
    load_graphon,
)
from .hamilton import classify
from .presets import PRESETS, preset_payload
from .sampler import (
    SampledGraph,
    _sample_type_arrays,
    degree_concentration_report,
    sample_graph,
)

CSV_SCHEMA = 1

PROPERTIES = (
    "connected",
    "min_degree_ge_2",
    "hamiltonian",
    "fvcn_ge_half",
    "peninsula_counts",
    "degree_concentration",
    "cut_distance",
)

_CSV_COLUMNS = (
    "n",
    "trial_index",
    "seed",
    "error",
    "connected",
    "min_degree",
    "min_degree_ge_2",
    "ham_status",
    "ham_obstruction",
    "fvcn",
    "fvcn_ge_half",
    "n_a",
    "n_b",
    "n_c",
    "degree_concentration",
    "cut_lower",
    "cut_upper",
    "runtime_sample",
    "runtime_properties",
)


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson 95% score interval for a binomial frequency."""
    if trials == 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    margin = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, center - margin), min(1.0, center + margin))


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ExperimentConfig:
    graphon: Graphon
    n_values: tuple[int, ...]
    trials: int
    seed: int
    properties: tuple[str, ...]
    t: int = 0
    budget: int = 0
    posa_restarts: int = 20
    certificate: Optional[PeninsulaCertificate] = None

    def __post_init__(self):
        if self.trials < 1:
            raise FormatError("trials must be at least 1", "trials")
        for idx, n in enumerate(self.n_values):
            if n < 3:
                raise FormatError("n must be at least 3", f"n_values[{idx}]")
        if self.t < 0:
            raise FormatError("t must be nonnegative", "t")
        for idx, p in enumerate(self.properties):
            if p not in PROPERTIES:
                raise FormatError(
                    f"unknown property {p!r}; known: {', '.join(PROPERTIES)}",
                    f"properties[{idx}]",
                )
        if "peninsula_counts" in self.properties and self.certificate is None:
            raise FormatError(
                "property 'peninsula_counts' needs an attached certificate",
                "properties",
            )

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        if not isinstance(d, dict):
            raise FormatError("config must be an object", "$")
        if "graphon" not in d:
            raise FormatError("missing 'graphon'", "graphon")
        gspec = d["graphon"]
        if isinstance(gspec, str):
            if gspec in PRESETS:
                graphon = load_graphon(preset_payload(gspec))
            else:
                raise FormatError(f"unknown preset {gspec!r}", "graphon")
        else:
            graphon = load_graphon(gspec)
        for key in ("n_values", "trials", "seed", "properties"):
            if key not in d:
                raise FormatError(f"missing '{key}'", key)
        cert = None
        if d.get("certificate") is not None:
            cert = PeninsulaCertificate.from_dict(d["certificate"])
            if isinstance(graphon, StepGraphon):
                cert.validate(graphon)
        return ExperimentConfig(
            graphon=graphon,
            n_values=tuple(int(x) for x in d["n_values"]),
            trials=int(d["trials"]),
            seed=int(d["seed"]),
            properties=tuple(d["properties"]),
            t=int(d.get("t", 0)),
            budget=int(d.get("budget", 0)),
            posa_restarts=int(d.get("posa_restarts", 20)),
            certificate=cert,
        )

    @staticmethod
    def from_json(text: str) -> "ExperimentConfig":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
        return ExperimentConfig.from_dict(payload)

    def to_dict(self) -> dict:
        return {
            "graphon": self.graphon.to_dict(),
            "n_values": list(self.n_values),
            "trials": self.trials,
            "seed": self.seed,
            "properties": list(self.properties),
            "t": self.t,
            "budget": self.budget,
            "posa_restarts": self.posa_restarts,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


# ---------------------------------------------------------------------------
# trials


@dataclass
class TrialRecord:
    n: int
    trial_index: int
    seed: int
    outcomes: dict = field(default_factory=dict)
    runtime: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_csv_row(self) -> list[str]:
        o = self.outcomes
        row = {
            "n": self.n,
            "trial_index": self.trial_index,
            "seed": self.seed,
            "error": self.error or "",
            "connected": _fmt(o.get("connected")),
            "min_degree": _fmt(o.get("min_degree")),
            "min_degree_ge_2": _fmt(o.get("min_degree_ge_2")),
            "ham_status": o.get("ham_status", ""),
            "ham_obstruction": o.get("ham_obstruction") or "",
            "fvcn": str(o["fvcn"]) if "fvcn" in o else "",
            "fvcn_ge_half": _fmt(o.get("fvcn_ge_half")),
            "n_a": _fmt(o.get("n_a")),
            "n_b": _fmt(o.get("n_b")),
            "n_c": _fmt(o.get("n_c")),
            "degree_concentration": _fmt(o.get("degree_concentration")),
            "cut_lower": _fmt(o.get("cut_lower")),
            "cut_upper": _fmt(o.get("cut_upper")),
            "runtime_sample": f"{self.runtime.get('sample', 0.0):.6f}",
            "runtime_properties": f"{self.runtime.get('properties', 0.0):.6f}",
        }
        return [str(row[c]) for c in _CSV_COLUMNS]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def classify_types(cert: PeninsulaCertificate, g: StepGraphon, block, offset) -> tuple[int, int, int]:
    """Count vertices landing in the certificate's A / B / C regions.

    Within block b the sub-interval [0, A_b/m_b) belongs to A and
    [A_b/m_b, (A_b+B_b)/m_b) to B; offsets are compared against those
    deterministic thresholds.
    """
    n_a = n_b = n_c = 0
    fa = [float(cert.A_fractions[i] / g.block_masses[i]) for i in range(g.k)]
    fb = [float((cert.A_fractions[i] + cert.B_fractions[i]) / g.block_masses[i]) for i in range(g.k)]
    for b, off in zip(block, offset):
        if off < fa[b]:
            n_a += 1
        elif off < fb[b]:
            n_b += 1
        else:
            n_c += 1
    return n_a, n_b, n_c


def run_trial(config: ExperimentConfig, n: int, trial_index: int) -> TrialRecord:
    """One pure trial: sample, then evaluate each requested property."""
    rec = TrialRecord(n=n, trial_index=trial_index, seed=config.seed)
    try:
        t0 = time.perf_counter()
        graph = sample_graph(config.graphon, n, config.seed, trial_index)
        rec.runtime["sample"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        _evaluate_properties(config, graph, rec)
        rec.runtime["properties"] = time.perf_counter() - t0
    except Exception as exc:  # captured, never aborts the campaign
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def _evaluate_properties(config: ExperimentConfig, graph: SampledGraph, rec: TrialRecord) -> None:
    o = rec.outcomes
    props = config.properties
    fg = None

    def finite():
        nonlocal fg
        if fg is None:
            fg = graph.to_finite_graph()
        return fg

    if "connected" in props:
        o["connected"] = is_connected(finite())
    if "min_degree_ge_2" in props:
        mindeg = int(graph.degrees().min()) if graph.n else 0
        o["min_degree"] = mindeg
        o["min_degree_ge_2"] = mindeg >= 2
    if "hamiltonian" in props:
        verdict = classify(
            finite(),
            budget=config.budget,
            seed=(config.seed ^ rec.trial_index),
            posa_restarts=config.posa_restarts,
        )
        o["ham_status"] = verdict.status
        o["ham_obstruction"] = verdict.obstruction
    if "fvcn_ge_half" in props:
        value = fvcn_value(finite())
        o["fvcn"] = value
        o["fvcn_ge_half"] = value >= Fraction(graph.n - config.t, 2)
    if "peninsula_counts" in props:
        n_a, n_b, n_c = classify_types(
            config.certificate, config.graphon, graph.type_block, graph.type_offset
        )
        o["n_a"], o["n_b"], o["n_c"] = n_a, n_b, n_c
    if "degree_concentration" in props:
        o["degree_concentration"] = degree_concentration_report(graph)
    if "cut_distance" in props:
        est = sample_distance(graph, config.graphon)
        o["cut_lower"] = float(est.lower)
        o["cut_upper"] = float(est.upper)


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class ExperimentReport:
    config: dict
    predicted_regime: str
    per_n: dict  # n -> {property -> summary}

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "predicted_regime": self.predicted_regime,
            "per_n": {str(n): summary for n, summary in self.per_n.items()},
        }


def aggregate(config: ExperimentConfig, records: list[TrialRecord]) -> ExperimentReport:
    """Deterministic fold of trial records into per-n frequencies.

    Order-independent: records are grouped by n and counted; `hamiltonian`
    reports found / certified-absent / unknown separately plus the implied
    frequency band [found, 1 - certified-absent].
    """
    per_n: dict[int, dict] = {}
    for n in config.n_values:
        group = [r for r in records if r.n == n]
        trials = len(group)
        errors = sum(1 for r in group if r.error is not None)
        ok = [r for r in group if r.error is None]
        summary: dict = {"trials": trials, "errors": errors}
        for prop in config.properties:
            if prop == "hamiltonian":
                found = sum(1 for r in ok if r.outcomes.get("ham_status") == "hamiltonian")
                not_ham = sum(
                    1 for r in ok if r.outcomes.get("ham_status") == "not_hamiltonian"
                )
                unknown = sum(1 for r in ok if r.outcomes.get("ham_status") == "unknown")
                summary["hamiltonian"] = {
                    "found": found,
                    "not_certified": not_ham,
                    "unknown": unknown,
                    "frequency_band": [
                        found / trials if trials else 0.0,
                        1 - not_ham / trials if trials else 1.0,
                    ],
                    "found_wilson": wilson_interval(found, trials),
                }
            elif prop == "peninsula_counts":
                hits = sum(
                    1
                    for r in ok
                    if r.outcomes.get("n_a", 0) > r.outcomes.get("n_c", 0) + config.t
                )
                summary["peninsula_counts"] = _freq_summary(hits, trials)
            elif prop == "degree_concentration":
                vals = [r.outcomes["degree_concentration"] for r in ok]
                summary["degree_concentration"] = {
                    "max": max(vals) if vals else None,
                    "mean": sum(vals) / len(vals) if vals else None,
                }
            elif prop == "cut_distance":
                ups = [r.outcomes["cut_upper"] for r in ok]
                summary["cut_distance"] = {
                    "upper_max": max(ups) if ups else None,
                    "upper_mean": sum(ups) / len(ups) if ups else None,
                }
            else:
                hits = sum(1 for r in ok if r.outcomes.get(prop) is True)
                summary[prop] = _freq_summary(hits, trials)
        per_n[n] = summary
    regime = analyze(config.graphon).regime
    return ExperimentReport(config.to_dict(), regime, per_n)


def _freq_summary(hits: int, trials: int) -> dict:
    return {
        "count": hits,
        "frequency": hits / trials if trials else 0.0,
        "wilson": wilson_interval(hits, trials),
    }


# ---------------------------------------------------------------------------
# campaign driver


def run_experiment(
    config: ExperimentConfig,
    out_dir: Optional[str] = None,
    jobs: int = 1,
) -> tuple[ExperimentReport, list[TrialRecord]]:
    """Run every (n, trial) pair, aggregate, optionally persist CSV + report.

    Trials are pure and independently keyed, so the parallel path just maps
    them over a process pool and sorts the results back into canonical order.
    """
    tasks = [(n, t) for n in config.n_values for t in range(config.trials)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_trial_star, [(config, n, t) for n, t in tasks], chunksize=8))
    else:
        records = [run_trial(config, n, t) for n, t in tasks]
    records.sort(key=lambda r: (r.n, r.trial_index))
    report = aggregate(config, records)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "trials.csv"), "w", encoding="utf-8", newline="") as fh:
            fh.write(records_to_csv(records))
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=1, sort_keys=True)
    return report, records


def _trial_star(args) -> TrialRecord:
    config, n, t = args
    return run_trial(config, n, t)


def default_jobs() -> int:
    env = os.environ.get("GRAPHONHAM_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


# ---------------------------------------------------------------------------
# CSV persistence


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    buf.write(f"schema={CSV_SCHEMA}\n")
    writer = csv.writer(buf)
    writer.writerow(_CSV_COLUMNS)
    for r in records:
        writer.writerow(r.to_csv_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("schema="):
        raise FormatError("missing schema header", "line 1")
    if lines[0] != f"schema={CSV_SCHEMA}":
        raise FormatError(f"unsupported schema {lines[0]!r}", "line 1")
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    header = next(reader)
    if tuple(header) != _CSV_COLUMNS:
        raise FormatError("unexpected column set", "line 2")
    records = []
    for row in reader:
        d = dict(zip(_CSV_COLUMNS, row))
        rec = TrialRecord(
            n=int(d["n"]),
            trial_index=int(d["trial_index"]),
            seed=int(d["seed"]),
            error=d["error"] or None,
        )
        o = rec.outcomes
        if d["connected"]:
            o["connected"] = d["connected"] == "1"
        if d["min_degree"]:
            o["min_degree"] = int(d["min_degree"])
        if d["min_degree_ge_2"]:
            o["min_degree_ge_2"] = d["min_degree_ge_2"] == "1"
        if d["ham_status"]:
            o["ham_status"] = d["ham_status"]
            o["ham_obstruction"] = d["ham_obstruction"] or None
        if d["fvcn"]:
            o["fvcn"] = Fraction(d["fvcn"])
        if d["fvcn_ge_half"]:
            o["fvcn_ge_half"] = d["fvcn_ge_half"] == "1"
        for key, col in (("n_a", "n_a"), ("n_b", "n_b"), ("n_c", "n_c")):
            if d[col]:
                o[key] = int(d[col])
        if d["degree_concentration"]:
            o["degree_concentration"] = float(d["degree_concentration"])
        if d["cut_lower"]:
            o["cut_lower"] = float(d["cut_lower"])
        if d["cut_upper"]:
            o["cut_upper"] = float(d["cut_upper"])
        rec.runtime = {
            "sample": float(d["runtime_sample"]),
            "properties": float(d["runtime_properties"]),
        }
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# type-count fluctuation experiment


@dataclass(frozen=True)
class FluctuationReport:
    n: int
    trials: int
    t: int
    event_count: int  # trials with N_A > N_C + t
    frequency: float
    wilson: tuple[float, float]
    counts: list[tuple[int, int, int]]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "t": self.t,
            "event_count": self.event_count,
            "frequency": self.frequency,
            "wilson": list(self.wilson),
        }


def multinomial_fluctuation_report(config: ExperimentConfig) -> FluctuationReport:
    """Empirical frequency of N_A > N_C + t over the type stage alone.

    Only stage one runs (no edges are needed to classify types), so large
    trial counts stay cheap.  Requires an attached certificate.
    """
    if config.certificate is None:
        raise NoCertificate("attach a peninsula certificate to the config")
    if not isinstance(config.graphon, StepGraphon):
        raise NoCertificate("type classification needs a step graphon")
    if len(config.n_values) != 1:
        raise FormatError("fluctuation experiment expects a single n", "n_values")
    n = config.n_values[0]
    cert = config.certificate
    cert.validate(config.graphon)
    counts = []
    hits = 0
    for trial in range(config.trials):
        block, offset = _sample_type_arrays(config.graphon, n, config.seed, trial)
        n_a, n_b, n_c = classify_types(cert, config.graphon, block, offset)
        counts.append((n_a, n_b, n_c))
        if n_a > n_c + config.t:
            hits += 1
    return FluctuationReport(
        n=n,
        trials=config.trials,
        t=config.t,
        event_count=hits,
        frequency=hits / config.trials,
        wilson=wilson_interval(hits, config.trials),
        counts=counts,
    )
