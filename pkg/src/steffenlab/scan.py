"""Scan orchestration: per-graph invariant records, bound/density/ring checks,
the structural-lemma property suites, and JSONL report persistence.

Reports are deterministic: records are keyed and written in canonical-key
order regardless of worker count, and a re-run from a checkpoint reproduces
the remaining tail byte for byte.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .coloring import (
    chromatic_index,
    degree_identity_check,
    is_critical,
    near_perfect_matching_decomposition,
)
from .errors import ConfigError, SolverTimeout
from .generators import (
    EnumSpec,
    enumerate_with_keys,
    random_multigraph,
    read_checkpoint,
    write_checkpoint,
)
from .invariants import (
    INFINITE_GIRTH,
    check_short_cycle_properties,
    density,
    girth,
    steffen_bound,
)
from .multigraph import Multigraph, basic_invariants, parse_any, serialize
from .structure import (
    cycle_partition,
    fan_bound_check,
    find_ring_subgraph_with_chi,
    max_fan,
    verify_cycle_partition,
)

WORKERS_ENV_VAR = "STEFFENLAB_WORKERS"


@dataclass(frozen=True)
class ScanConfig:
    enum_spec: EnumSpec = field(default_factory=EnumSpec)
    solver_timeout_seconds: float = 60.0
    workers: int = 1
    output_path: str = "scan.jsonl"
    checkpoint_path: str | None = None  # defaults to output_path + ".checkpoint"
    steffen_check: bool = True
    gs_check: bool = True
    ring_check: bool = True
    random_graphs: int = 1000
    random_n_max: int = 12
    random_mu_max: int = 3
    extra_graphs: tuple[str, ...] = ()

    def __post_init__(self):
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.solver_timeout_seconds < 1:
            raise ConfigError("solver timeout must be >= 1 second")

    def effective_checkpoint(self) -> str:
        return self.checkpoint_path or self.output_path + ".checkpoint"

    def to_json_obj(self) -> dict:
        return {
            "enumSpec": self.enum_spec.to_json_obj(),
            "solverTimeoutSeconds": self.solver_timeout_seconds,
            "workers": self.workers,
            "outputPath": self.output_path,
            "checkpointPath": self.checkpoint_path,
            "steffenCheck": self.steffen_check,
            "gsCheck": self.gs_check,
            "ringCheck": self.ring_check,
            "randomGraphs": self.random_graphs,
            "randomNMax": self.random_n_max,
            "randomMuMax": self.random_mu_max,
            "extraGraphs": list(self.extra_graphs),
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "ScanConfig":
        try:
            spec = EnumSpec.from_json_obj(obj["enumSpec"])
            cfg = ScanConfig(
                enum_spec=spec,
                solver_timeout_seconds=float(obj.get("solverTimeoutSeconds", 60.0)),
                workers=int(obj.get("workers", 1)),
                output_path=str(obj.get("outputPath", "scan.jsonl")),
                checkpoint_path=obj.get("checkpointPath"),
                steffen_check=bool(obj.get("steffenCheck", True)),
                gs_check=bool(obj.get("gsCheck", True)),
                ring_check=bool(obj.get("ringCheck", True)),
                random_graphs=int(obj.get("randomGraphs", 1000)),
                random_n_max=int(obj.get("randomNMax", 12)),
                random_mu_max=int(obj.get("randomMuMax", 3)),
                extra_graphs=tuple(obj.get("extraGraphs", ())),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad scan config: {exc}") from exc
        env = os.environ.get(WORKERS_ENV_VAR)
        if env:
            try:
                cfg = replace(cfg, workers=int(env))
            except (ValueError, ConfigError) as exc:
                raise ConfigError(f"bad {WORKERS_ENV_VAR}={env!r}") from exc
        return cfg


RECORD_FIELDS = (
    "graphKey",
    "n",
    "m",
    "Delta",
    "delta",
    "mu",
    "girth",
    "gamma",
    "chi",
    "steffenBound",
    "achievesBound",
    "isCritical",
    "chiGEDeltaPlus2",
    "ringFound",
    "ringWitness",
    "status",
)


def compute_record(key: str, G: Multigraph, config: ScanConfig) -> dict:
    """One ScanRecord as a JSON-ready dict with a fixed field order."""
    inv = basic_invariants(G)
    g = girth(G)
    record: dict = {
        "graphKey": key,
        "n": inv.n,
        "m": inv.m,
        "Delta": inv.Delta,
        "delta": inv.delta,
        "mu": inv.mu,
        "girth": None if g == INFINITE_GIRTH else int(g),
        "gamma": None,
        "chi": None,
        "steffenBound": steffen_bound(G),
        "achievesBound": None,
        "isCritical": None,
        "chiGEDeltaPlus2": None,
        "ringFound": None,
        "ringWitness": None,
        "status": "ok",
    }
    timeout = config.solver_timeout_seconds
    try:
        record["gamma"] = density(G).gamma
        chi = chromatic_index(G, timeout_seconds=timeout)[0]
        record["chi"] = chi
        record["achievesBound"] = chi == record["steffenBound"]
        record["chiGEDeltaPlus2"] = chi >= inv.Delta + 2
        record["isCritical"] = (
            is_critical(G, chi=chi, timeout_seconds=timeout) if G.edges else False
        )
        gate = _ring_gate(config.enum_spec.girth_min, g, inv.mu, inv.Delta, chi)
        if config.ring_check and gate:
            ring = find_ring_subgraph_with_chi(G, chi, timeout_seconds=timeout)
            record["ringFound"] = ring is not None
            record["ringWitness"] = None if ring is None else ring.to_json_obj()
    except SolverTimeout:
        record["status"] = "timeout"
    return record


def _ring_gate(girth_floor: int, g, mu: int, delta_max: int, chi: int) -> bool:
    """Ring-containment hypothesis: configured floor g0 >= 5, girth >= 5 finite,
    mu >= floor(g0/2)+1, and chi' = Delta + ceil(mu / floor(g0/2))."""
    if girth_floor < 5 or g == INFINITE_GIRTH or g < 5:
        return False
    half = girth_floor // 2
    return mu >= half + 1 and chi == delta_max + -(-mu // half)


def _record_line(record: dict) -> str:
    return json.dumps({k: record[k] for k in RECORD_FIELDS}, separators=(",", ":"))


@dataclass
class ScanSummary:
    total: int = 0
    ok: int = 0
    timeouts: int = 0
    bound_achievers: int = 0
    chi_ge_delta_plus_2: int = 0
    critical: int = 0
    ring_gate_fired: int = 0
    ring_found: int = 0
    steffen_violations: list = field(default_factory=list)
    gs_violations: list = field(default_factory=list)
    ring_violations: list = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return (
            len(self.steffen_violations)
            + len(self.gs_violations)
            + len(self.ring_violations)
        )

    def to_json_obj(self) -> dict:
        return {
            "total": self.total,
            "ok": self.ok,
            "timeouts": self.timeouts,
            "boundAchievers": self.bound_achievers,
            "chiGEDeltaPlus2": self.chi_ge_delta_plus_2,
            "critical": self.critical,
            "ringGateFired": self.ring_gate_fired,
            "ringFound": self.ring_found,
            "steffenViolations": self.steffen_violations,
            "gsViolations": self.gs_violations,
            "ringViolations": self.ring_violations,
            "violationCount": self.violation_count,
        }


def _fold_record(summary: ScanSummary, record: dict, config: ScanConfig) -> None:
    summary.total += 1
    if record["status"] != "ok":
        summary.timeouts += 1
        return
    summary.ok += 1
    key = record["graphKey"]
    if record["achievesBound"]:
        summary.bound_achievers += 1
    if record["chiGEDeltaPlus2"]:
        summary.chi_ge_delta_plus_2 += 1
    if record["isCritical"]:
        summary.critical += 1
    if config.steffen_check and record["chi"] > record["steffenBound"]:
        summary.steffen_violations.append(key)
    if config.gs_check and record["chiGEDeltaPlus2"] and record["chi"] != record["gamma"]:
        summary.gs_violations.append(key)
    if record["ringFound"] is not None:
        summary.ring_gate_fired += 1
        if record["ringFound"]:
            summary.ring_found += 1
        else:
            summary.ring_violations.append(key)


_WORKER_CONFIG: ScanConfig | None = None


def _worker_init(config_json: str) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = ScanConfig.from_json_obj(json.loads(config_json))


def _worker_record(item: tuple[str, Multigraph]) -> dict:
    key, G = item
    return compute_record(key, G, _WORKER_CONFIG)


def run_scan(config: ScanConfig) -> ScanSummary:
    """Enumerate, check, and persist one JSONL record per graph, key-sorted.

    Resumes from the checkpoint when one exists; records already on disk are
    folded into the summary without recomputation.  Interrupts flush whole
    lines only.
    """
    items = sorted(enumerate_with_keys(config.enum_spec), key=lambda kv: kv[0])
    done_keys: set[str] = set()
    ckpt_path = config.effective_checkpoint()
    if os.path.exists(ckpt_path):
        spec_echo, done_keys = read_checkpoint(ckpt_path)
        if spec_echo is not None and spec_echo != config.enum_spec.to_json_obj():
            raise ConfigError("checkpoint was written by a different enumeration spec")

    # keep only records that are both on disk and checkpointed; recompute the rest
    summary = ScanSummary()
    existing_lines: list[str] = []
    existing_keys: set[str] = set()
    if done_keys and os.path.exists(config.output_path):
        with open(config.output_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                if record["graphKey"] in done_keys:
                    existing_lines.append(line)
                    existing_keys.add(record["graphKey"])
                    _fold_record(summary, record, config)
    done_keys = existing_keys

    todo = [(k, G) for k, G in items if k not in done_keys]
    out = open(config.output_path, "w", encoding="utf-8")
    for line in existing_lines:
        out.write(line + "\n")
    out.flush()
    written_keys = sorted(done_keys)

    # processing runs in key order, so appended keys keep the file sorted
    ckpt = open(ckpt_path, "w", encoding="utf-8")
    ckpt.write("# " + json.dumps(config.enum_spec.to_json_obj(), sort_keys=True) + "\n")
    for key in written_keys:
        ckpt.write(key + "\n")
    ckpt.flush()

    def emit(record: dict) -> None:
        out.write(_record_line(record) + "\n")
        out.flush()
        written_keys.append(record["graphKey"])
        ckpt.write(record["graphKey"] + "\n")
        ckpt.flush()
        _fold_record(summary, record, config)

    try:
        if config.workers > 1 and len(todo) > 1:
            config_json = json.dumps(config.to_json_obj())
            with ProcessPoolExecutor(
                max_workers=config.workers,
                initializer=_worker_init,
                initargs=(config_json,),
            ) as pool:
                for record in pool.map(_worker_record, todo, chunksize=16):
                    emit(record)
        else:
            for key, G in todo:
                emit(compute_record(key, G, config))
    finally:
        out.flush()
        out.close()
        ckpt.flush()
        ckpt.close()
    write_checkpoint(ckpt_path, config.enum_spec, written_keys)
    return summary


@dataclass
class LemmaSuiteReport:
    """Deterministic JSON report for the structural-lemma property suites."""

    payload: dict

    @property
    def violation_count(self) -> int:
        return self.payload["violationCount"]

    def to_text(self) -> str:
        return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"


def run_lemma_suite(config: ScanConfig, seed: int) -> LemmaSuiteReport:
    """Two property suites with a byte-stable report.

    Critical suite (enumerated corpus + any extraGraphs): for every critical
    graph with chi' >= Delta + 2, n must be odd, G-e must decompose into
    chi'-1 near-perfect matchings for every pair, all degree-identity
    residuals must vanish, and the min-degree bound must hold when its
    hypotheses fire.

    Random suite (seeded sampler): cycle partitions re-verify, shortest-cycle
    neighborhood clauses hold, and every fan satisfies the interior-size
    bound; fan count <= 3 is asserted when the ring-theorem hypotheses are
    machine-checked to hold.
    """
    timeout = config.solver_timeout_seconds
    digest = hashlib.sha256()
    violations: list[dict] = []

    critical_stats = {
        "graphs": 0,
        "criticalHighChi": 0,
        "decompositionsChecked": 0,
        "residualVectorsChecked": 0,
        "minDegreeBoundsChecked": 0,
    }
    corpus = [(k, G) for k, G in enumerate_with_keys(config.enum_spec)]
    for text in config.extra_graphs:
        G = parse_any(text)
        corpus.append((f"extra.{hashlib.sha256(serialize(G).encode()).hexdigest()[:16]}", G))
    corpus.sort(key=lambda kv: kv[0])
    for key, G in corpus:
        critical_stats["graphs"] += 1
        if not G.edges:
            continue
        try:
            chi = chromatic_index(G, timeout_seconds=timeout)[0]
            delta_max = max(G.degrees)
            if chi < delta_max + 2:
                continue
            if not is_critical(G, chi=chi, timeout_seconds=timeout):
                continue
            critical_stats["criticalHighChi"] += 1
            digest.update(f"crit|{key}|{chi}\n".encode())
            if G.n % 2 == 0:
                violations.append({"suite": "critical", "graphKey": key, "check": "n-odd"})
                continue
            for u, v, _ in G.edges:
                dec = near_perfect_matching_decomposition(
                    G, (u, v), assume_critical=True, chi=chi, timeout_seconds=timeout
                )
                critical_stats["decompositionsChecked"] += 1
                if len(dec.classes) != chi - 1:
                    violations.append(
                        {"suite": "critical", "graphKey": key, "check": "class-count"}
                    )
            report = degree_identity_check(G, chi=chi, check_critical=False)
            critical_stats["residualVectorsChecked"] += 1
            if any(r != 0 for r in report.residuals):
                violations.append(
                    {"suite": "critical", "graphKey": key, "check": "degree-identity",
                     "residuals": list(report.residuals)}
                )
            if report.min_degree_bound != "not-applicable":
                critical_stats["minDegreeBoundsChecked"] += 1
                if report.min_degree_bound == "violated":
                    violations.append(
                        {"suite": "critical", "graphKey": key, "check": "min-degree-bound"}
                    )
        except SolverTimeout:
            violations.append({"suite": "critical", "graphKey": key, "check": "timeout"})

    random_stats = {
        "graphs": 0,
        "partitionsVerified": 0,
        "cyclesChecked": 0,
        "clauseViolations": 0,
        "fansChecked": 0,
        "fanBoundViolations": 0,
        "fanCapViolations": 0,
    }
    rng = random.Random(seed)
    for index in range(config.random_graphs):
        G = random_multigraph(rng, n_max=config.random_n_max, mu_max=config.random_mu_max)
        random_stats["graphs"] += 1
        partition = cycle_partition(G)
        problems = verify_cycle_partition(G, partition)
        if problems:
            violations.append(
                {"suite": "random", "index": index, "check": "partition", "problems": problems}
            )
            continue
        random_stats["partitionsVerified"] += 1
        stages = partition.stage_vertex_sets(G.n)
        for cyc, stage in zip(partition.cycles, stages):
            random_stats["cyclesChecked"] += 1
            clause_violations = check_short_cycle_properties(G, cyc, stage)
            if clause_violations:
                random_stats["clauseViolations"] += len(clause_violations)
                violations.append(
                    {
                        "suite": "random",
                        "index": index,
                        "check": "short-cycle-clause",
                        "violations": [v.to_json_obj() for v in clause_violations],
                    }
                )
        fan_summary = []
        for v0 in sorted(partition.v0):
            for h in range(len(partition.cycles)):
                fan = max_fan(G, partition, v0, h)
                if fan is None:
                    continue
                random_stats["fansChecked"] += 1
                if not fan_bound_check(fan, partition.cycles[h]):
                    random_stats["fanBoundViolations"] += 1
                    violations.append(
                        {
                            "suite": "random",
                            "index": index,
                            "check": "fan-bound",
                            "apex": v0,
                            "cycle": h,
                            "t": fan.t,
                        }
                    )
                fan_summary.append((v0, h, fan.t, len(fan.interior_vertices())))
        _check_fan_cap(G, partition, fan_summary, index, violations, random_stats, timeout)
        digest.update(
            f"rand|{index}|{G.n}|{G.edge_count}|{len(partition.cycles)}"
            f"|{sorted(partition.v0)}|{fan_summary}\n".encode()
        )

    payload = {
        "seed": seed,
        "enumSpec": config.enum_spec.to_json_obj(),
        "randomGraphs": config.random_graphs,
        "randomNMax": config.random_n_max,
        "randomMuMax": config.random_mu_max,
        "criticalSuite": critical_stats,
        "randomSuite": random_stats,
        "violations": violations,
        "violationCount": len(violations),
        "digest": digest.hexdigest(),
    }
    return LemmaSuiteReport(payload)


def _check_fan_cap(G, partition, fan_summary, index, violations, stats, timeout) -> None:
    """Assert t <= 3 for fans, but only when the ring-theorem hypotheses hold."""
    if not fan_summary or max(t for _, _, t, _ in fan_summary) <= 3:
        return
    g = girth(G)
    if g == INFINITE_GIRTH or g < 5:
        return
    mu = G.max_mult
    half = int(g) // 2
    if mu < half + 1:
        return
    try:
        chi = chromatic_index(G, timeout_seconds=timeout)[0]
        delta_max = max(G.degrees)
        if chi != delta_max + -(-mu // half) or chi < delta_max + 2:
            return
        if not is_critical(G, chi=chi, timeout_seconds=timeout):
            return
    except SolverTimeout:
        return
    stats["fanCapViolations"] += 1
    violations.append({"suite": "random", "index": index, "check": "fan-count-cap"})
