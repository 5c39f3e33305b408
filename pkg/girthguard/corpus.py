"""Corpus runner: solve, bound and partition-check many graphs; sharpness search."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, List, Literal, Optional

import pandas as pd
from pydantic import BaseModel

from girthguard.bounds import evaluate_all
from girthguard.config import (
    SHARP_MAX_N,
    get_bb_max_n,
    get_brute_max_n,
    get_sharp_random_batch,
    get_sharp_seed,
)
from girthguard.generators import (
    CAGE_NAMES,
    GeneratorSpec,
    build_from_spec,
    gen_cage,
    gen_cycle,
    gen_random_girth,
    gen_subdivide,
)
from girthguard.graph import Graph, girth as graph_girth, read_graph, structure_summary
from girthguard.partition import (
    SmallerSetCertificate,
    build_partition,
    edge_chain_violations,
    validate_partition,
)
from girthguard.schemas import (
    BOUND_NAMES,
    BoundTally,
    CorpusRecord,
    CorpusReport,
    SharpInstance,
)
from girthguard.solver import (
    DominationCertificate,
    gamma_brute,
    gamma_exact,
)
from girthguard.utils import PreconditionError, VerificationError, format_error_message

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "graph",
    "n",
    "m",
    "girth",
    "min_degree",
    "gamma",
    "bound",
    "applicable",
    "value",
    "ceil_value",
    "slack",
    "valid",
    "tight",
]


class CorpusOptions(BaseModel):
    solve: Literal["auto", "brute", "bb", "skip"] = "auto"
    check_partition: bool = True
    include_timing: bool = True
    jobs: int = 1


class CorpusInput(BaseModel):
    """A graph file or a generator spec; ``label`` names it in reports."""

    label: str
    path: Optional[str] = None
    spec: Optional[GeneratorSpec] = None

    @classmethod
    def from_file(cls, path: Path | str) -> CorpusInput:
        return cls(label=str(path), path=str(path))

    @classmethod
    def from_spec(cls, spec: GeneratorSpec) -> CorpusInput:
        return cls(label=spec.label(), spec=spec)

    def load(self) -> Graph:
        if self.spec is not None:
            return build_from_spec(self.spec)
        return read_graph(self.path)


def _solve(g: Graph, method: str) -> Optional[DominationCertificate]:
    if method == "skip":
        return None
    if method == "auto":
        if g.n <= get_brute_max_n():
            method = "brute"
        elif g.n <= get_bb_max_n():
            method = "bb"
        else:
            logger.info("Skipping exact solve for n=%d (above threshold)", g.n)
            return None
    if method == "brute":
        return gamma_brute(g)
    return gamma_exact(g)


def _refutation_check(
    g: Graph, certificate: DominationCertificate
) -> tuple[str, list[str]]:
    """Seed the partition with the minimum set plus its lowest-id non-member."""
    extra = next((v for v in g.vertices() if v not in certificate.members), None)
    if extra is None:
        return "skipped", []
    enlarged = sorted(certificate.members + (extra,))
    outcome = build_partition(g, enlarged)
    if isinstance(outcome, SmallerSetCertificate):
        return "refuted", []
    problems = [str(v) for v in validate_partition(g, outcome)]
    return "partition", [f"enlarged-set partition: {p}" for p in problems]


def process_graph(
    label: str, g: Graph, options: CorpusOptions, parse_seconds: float = 0.0
) -> CorpusRecord:
    """Run the full pipeline on one graph: solve, bounds, partition checks."""
    timings = {"parse": parse_seconds}
    errors: list[str] = []
    summary = structure_summary(g)
    girth = graph_girth(g)

    started = time.perf_counter()
    certificate = None
    try:
        certificate = _solve(g, options.solve)
    except (PreconditionError, VerificationError) as exc:
        errors.append(f"solve: {format_error_message(exc)}")
    timings["solve"] = time.perf_counter() - started

    gamma = certificate.size if certificate is not None else None

    started = time.perf_counter()
    bounds = evaluate_all(g, gamma)
    timings["bounds"] = time.perf_counter() - started

    verdict = "skipped"
    violations: list[str] = []
    smaller = None
    refutation = "skipped"
    if options.check_partition and certificate is not None:
        started = time.perf_counter()
        try:
            outcome = build_partition(g, certificate.members)
            if isinstance(outcome, SmallerSetCertificate):
                verdict = "refuted"
                smaller = list(outcome.certificate.members)
            else:
                violations = [str(v) for v in validate_partition(g, outcome, girth)]
                violations += edge_chain_violations(g, outcome, certificate.size, girth)
                verdict = "violations" if violations else "ok"
            refutation, problems = _refutation_check(g, certificate)
            errors.extend(problems)
        except (PreconditionError, VerificationError) as exc:
            errors.append(f"partition: {format_error_message(exc)}")
        timings["partition"] = time.perf_counter() - started

    return CorpusRecord(
        graph=label,
        n=g.n,
        m=g.m,
        girth=girth.to_json(),
        min_degree=summary.min_degree,
        gamma=gamma,
        gamma_method=certificate.method if certificate is not None else None,
        certificate=list(certificate.members) if certificate is not None else None,
        bounds=bounds,
        partition_verdict=verdict,
        violations=violations,
        smaller_certificate=smaller,
        refutation=refutation,
        errors=errors,
        timings=timings if options.include_timing else None,
    )


def _process_item(args: tuple[str, Graph, CorpusOptions, float]) -> CorpusRecord:
    return process_graph(*args)


class CorpusRunner:
    """Run the verification pipeline over a list of graph files and specs."""

    def __init__(self, options: CorpusOptions | None = None):
        self.options = options or CorpusOptions()

    def run_corpus(self, inputs: Iterable[CorpusInput]) -> CorpusReport:
        """Process every input and aggregate the results.

        Inputs are loaded up front, so format errors surface before any solving.
        Records come back in input order whatever the worker count.
        """
        items = []
        for item in inputs:
            started = time.perf_counter()
            graph = item.load()
            items.append(
                (item.label, graph, self.options, time.perf_counter() - started)
            )

        total = len(items)
        logger.info(
            "Verifying %d graph(s) | solve=%s | partition=%s | jobs=%d",
            total,
            self.options.solve,
            self.options.check_partition,
            self.options.jobs,
        )

        if self.options.jobs > 1 and total > 1:
            with ProcessPoolExecutor(max_workers=self.options.jobs) as pool:
                records = list(pool.map(_process_item, items))
        else:
            records = [_process_item(item) for item in items]

        for position, record in enumerate(records, 1):
            prefix = f"[{position}/{total}]"
            if record.failed:
                logger.error(
                    "%s %s ✗ %s", prefix, record.graph, _describe_failure(record)
                )
            else:
                logger.info(
                    "%s %s ✓ gamma=%s partition=%s",
                    prefix,
                    record.graph,
                    record.gamma,
                    record.partition_verdict,
                )

        report = self._aggregate(records)
        self._log_summary(report)
        return report

    def _aggregate(self, records: List[CorpusRecord]) -> CorpusReport:
        tallies = {name: BoundTally() for name in BOUND_NAMES}
        tight: list[list[str]] = []
        failures: list[str] = []
        for record in records:
            if record.bounds is not None:
                for name in BOUND_NAMES:
                    entry = record.bounds.bounds[name]
                    if not entry.applicable:
                        continue
                    tally = tallies[name]
                    tally.applicable += 1
                    tally.valid += int(bool(entry.valid))
                    tally.tight += int(bool(entry.tight))
                tight.extend([record.graph, name] for name in record.bounds.tight_bounds())
            if record.failed:
                failures.append(f"{record.graph}: {_describe_failure(record)}")

        generated_at = None
        if self.options.include_timing:
            generated_at = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return CorpusReport(
            generated_at=generated_at,
            records=records,
            aggregates=tallies,
            tight=tight,
            failures=failures,
        )

    def _log_summary(self, report: CorpusReport) -> None:
        separator = "=" * 40
        logger.info(separator)
        logger.info(
            "Summary | graphs=%d failures=%d tight=%d",
            len(report.records),
            len(report.failures),
            len(report.tight),
        )
        for name, tally in report.aggregates.items():
            if tally.applicable:
                logger.info(
                    "  %-11s applicable=%d valid=%d tight=%d",
                    name,
                    tally.applicable,
                    tally.valid,
                    tally.tight,
                )
        if report.failures:
            first = "; ".join(report.failures[:5])
            logger.warning("Failures (%d): %s", len(report.failures), first)
            if len(report.failures) > 5:
                logger.warning("... %d additional failure(s)", len(report.failures) - 5)
        logger.info(separator)


def _describe_failure(record: CorpusRecord) -> str:
    parts = list(record.errors)
    if record.partition_verdict == "refuted":
        parts.append(f"certificate refuted by {record.smaller_certificate}")
    parts.extend(record.violations)
    if record.bounds is not None:
        parts.extend(f"bound {name} invalid" for name in record.bounds.invalid_bounds())
    return format_error_message("; ".join(parts))


def run_corpus(
    inputs: Iterable[CorpusInput], options: CorpusOptions | None = None
) -> CorpusReport:
    return CorpusRunner(options).run_corpus(inputs)


def report_to_json(report: CorpusReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def comparable_report(report: CorpusReport) -> dict:
    """Report contents with the timestamp and wall times removed."""
    data = json.loads(report.model_dump_json())
    data.pop("generated_at", None)
    for record in data["records"]:
        record.pop("timings", None)
    return data


def report_to_frame(report: CorpusReport) -> pd.DataFrame:
    """One row per graph x bound."""
    rows = []
    for record in report.records:
        if record.bounds is None:
            continue
        for name in BOUND_NAMES:
            entry = record.bounds.bounds[name]
            rows.append(
                {
                    "graph": record.graph,
                    "n": record.n,
                    "m": record.m,
                    "girth": record.girth,
                    "min_degree": record.min_degree,
                    "gamma": record.gamma,
                    "bound": name,
                    "applicable": entry.applicable,
                    "value": entry.value,
                    "ceil_value": entry.ceil_value,
                    "slack": entry.slack,
                    "valid": entry.valid,
                    "tight": entry.tight,
                }
            )
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_report(
    report: CorpusReport, json_path: Path | None = None, csv_path: Path | None = None
) -> None:
    if json_path is not None:
        json_path.parent.mkdir(parents=True, exist_ok=True)
        json_path.write_text(report_to_json(report), encoding="utf-8")
        logger.info("Saved report to %s", json_path)
    if csv_path is not None:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        report_to_frame(report).to_csv(csv_path, index=False)
        logger.info("Saved CSV projection to %s", csv_path)


def _sharp_candidates(
    girth_target: int, n_max: int, seed: int, batch: int
) -> list[tuple[str, Graph]]:
    candidates: list[tuple[str, Graph]] = []
    for k in range(girth_target, n_max + 1):
        candidates.append((f"cycle:n={k}", gen_cycle(k)))
    for name in CAGE_NAMES:
        cage = gen_cage(name)
        if cage.n <= n_max:
            candidates.append((f"cage:name={name}", cage))
        k = 1
        while cage.n + k * cage.m <= n_max:
            candidates.append(
                (f"subdivide:k={k},cage={name}", gen_subdivide(cage, k))
            )
            k += 1

    span = n_max - girth_target + 1
    for i in range(batch):
        n_target = girth_target + i % span
        graph = gen_random_girth(n_target, girth_target, seed + i)
        if graph.n <= n_max:
            label = f"random-girth:n={n_target},girth={girth_target},seed={seed + i}"
            candidates.append((label, graph))

    unique: list[tuple[str, Graph]] = []
    seen: set[Graph] = set()
    for label, graph in candidates:
        if graph not in seen:
            seen.add(graph)
            unique.append((label, graph))
    return unique


def search_sharp(
    girth_target: int,
    n_max: int,
    m_max: int | None = None,
    seed: int | None = None,
    batch: int | None = None,
) -> list[SharpInstance]:
    """Find graphs of girth >= ``girth_target`` where an applicable bound is tight.

    Sweeps cycles, embedded cages and their subdivisions, and a seeded batch of
    random girth-constrained graphs (seed ``seed + i`` for the ``i``-th graph, target
    size cycling through ``girth_target..n_max``), keeping ``n <= n_max`` and
    ``m <= m_max``.

    Raises:
        PreconditionError: ``girth_target < 7``, ``n_max`` above the exact-solving
            limit or below ``girth_target``.
    """
    if girth_target < 7:
        raise PreconditionError(f"girth target must be >= 7, got {girth_target}")
    if n_max > SHARP_MAX_N:
        raise PreconditionError(f"n_max must be <= {SHARP_MAX_N}, got {n_max}")
    if n_max < girth_target:
        raise PreconditionError(
            f"n_max ({n_max}) must be at least the girth target ({girth_target})"
        )
    seed = get_sharp_seed() if seed is None else seed
    batch = get_sharp_random_batch() if batch is None else batch

    found: list[SharpInstance] = []
    for label, graph in _sharp_candidates(girth_target, n_max, seed, batch):
        if m_max is not None and graph.m > m_max:
            continue
        measured = graph_girth(graph)
        if not measured.is_finite or measured.value < girth_target:
            continue
        # Exact value without the girth-based root bound, so tightness is independent.
        gamma = gamma_exact(graph, use_girth_bounds=False).size
        report = evaluate_all(graph, gamma)
        for name in report.tight_bounds():
            found.append(
                SharpInstance(
                    graph=label,
                    n=graph.n,
                    m=graph.m,
                    girth=measured.value,
                    gamma=gamma,
                    bound=name,
                    value=report.bounds[name].value,
                )
            )
            logger.info("Tight: %s %s gamma=%d", label, name, gamma)
    return found
