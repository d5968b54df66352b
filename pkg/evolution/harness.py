"""
Experiment harness: seeded multi-run execution in ST and MT modes, metrics, and CSV/JSON output.

ST ("single task") solves every task independently with plain LTGA; MT runs MF-LTGA over all tasks at once with one
shared evaluation budget. Run r of either mode uses seed `base_seed XOR r`, so ST and MT runs are paired.

Evaluations to success are counted per task: an MT task is charged for the evaluations of its own objective, not
for those spent on the other tasks. Convergence is compared against serial ST, where the tasks are solved one after
another, so both modes work through the same set of tasks.
"""
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import List, Optional

import pandas as pd

from evolution.engine import run_mfltga
from evolution.exceptions import ConfigurationError, UndefinedMetricError

logger = logging.getLogger(__name__)

ST = 'st'
MT = 'mt'
MODES = (ST, MT)
SEED_POLICY = 'seed(run) = base_seed XOR run'
SUMMARY_COLUMNS = ['instance', 'mode', 'task', 'runs', 'num_opt', 'mean_num_evals', 'bf', 'avg']
COMPARISON_COLUMNS = ['instance', 'task', 'runs', 'st_num_opt', 'mt_num_opt', 'st_mean_num_evals',
                      'mt_mean_num_evals', 'pi_num_evals', 'st_bf', 'mt_bf', 'evals_wins', 'norm_wins']
INSTANCE_COMPARISON_COLUMNS = ['instance', 'tasks', 'runs', 'st_mean_num_evals', 'mt_mean_num_evals', 'pi_num_evals',
                               'evals_wins']


@dataclass
class ExperimentConfig:
    tasks: List[str]
    mode: str = MT
    pop_size: int = 100
    max_evals: int = 10 ** 6
    runs: int = 10
    seed: int = 42
    max_p: int = 10
    mutation_rate: float = 0.05
    # Accepted for completeness; mating is skill-factor driven and never consults it
    rmp: float = 0.5
    trace_every: int = 1
    out_path: Optional[str] = None
    workers: int = 1

    def validate(self):
        if not self.tasks:
            raise ConfigurationError("At least one task is required")
        if self.mode not in MODES:
            raise ConfigurationError(f"Mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.pop_size < 2 or self.pop_size % 2:
            raise ConfigurationError(f"Population size must be even and at least 2, got {self.pop_size}")
        if self.runs < 1:
            raise ConfigurationError(f"At least one run is required, got {self.runs}")
        if self.max_evals < 0:
            raise ConfigurationError(f"The evaluation budget cannot be negative, got {self.max_evals}")
        if self.max_p < 0:
            raise ConfigurationError(f"max_p cannot be negative, got {self.max_p}")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigurationError(f"Mutation rate must lie in [0, 1], got {self.mutation_rate}")
        if self.trace_every < 1:
            raise ConfigurationError(f"trace_every must be at least 1, got {self.trace_every}")
        if self.workers < 1:
            raise ConfigurationError(f"At least one worker is required, got {self.workers}")
        return self

    def seed_for(self, run_index):
        return self.seed ^ run_index

    def as_dict(self):
        return {**asdict(self), 'seed_policy': SEED_POLICY}


def performance_improvement(c_a, c_b):
    """PI(A, B) = (C_B - C_A) / C_B * 100: how much better (lower) A's metric is than B's, in percent."""
    if c_b == 0:
        raise UndefinedMetricError("Performance improvement is undefined for a zero baseline")
    return (c_b - c_a) / c_b * 100.0


def _run_one(job):
    config, mode, run_index = job
    return run_mfltga(config, seed=config.seed_for(run_index), run_index=run_index, mode=mode)


def _run_all(config, mode):
    jobs = [(config, mode, run_index) for run_index in range(config.runs)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            return list(executor.map(_run_one, jobs))
    return [_run_one(job) for job in jobs]


def run_st(config):
    """Solve every task on its own with LTGA; returns one list of run records per task."""
    config.validate()
    per_task = []
    for position, descriptor in enumerate(config.tasks, start=1):
        logger.info("ST: task %d (%s), %d runs", position, descriptor, config.runs)
        single = replace(config, tasks=[descriptor], mode=ST)
        per_task.append([replace(record, task_ids=(position,)) for record in _run_all(single, ST)])
    return per_task


def run_mt(config, run_index=0):
    config.validate()
    return _run_one((config, MT, run_index))


def run_experiment(config):
    """Every run of the configured mode as a flat list of records."""
    config.validate()
    if config.mode == ST:
        return [record for runs in run_st(config) for record in runs]
    logger.info("MT: %s, %d runs", ', '.join(config.tasks), config.runs)
    return _run_all(config, MT)


@dataclass
class SummaryRow:
    instance: str
    mode: str
    task: int
    runs: int
    num_opt: int
    mean_num_evals: Optional[float]
    bf: float
    avg: float


@dataclass
class SummaryTable:
    rows: List[SummaryRow] = field(default_factory=list)

    def row(self, instance, mode, task):
        for row in self.rows:
            if (row.instance, row.mode, row.task) == (instance, mode, task):
                return row
        raise KeyError((instance, mode, task))

    def to_frame(self):
        return pd.DataFrame([asdict(row) for row in self.rows], columns=SUMMARY_COLUMNS)

    @classmethod
    def from_frame(cls, frame):
        rows = []
        for item in frame.to_dict('records'):
            mean = item['mean_num_evals']
            rows.append(SummaryRow(
                instance=str(item['instance']),
                mode=str(item['mode']),
                task=int(item['task']),
                runs=int(item['runs']),
                num_opt=int(item['num_opt']),
                mean_num_evals=None if pd.isna(mean) else float(mean),
                bf=float(item['bf']),
                avg=float(item['avg']),
            ))
        return cls(rows)


@dataclass
class NormalizedTrace:
    """A run's trace with per-task normalized objectives and their average over tasks, per trace point."""
    mode: str
    run_index: int
    task_ids: tuple
    points: list
    normalized: List[tuple]
    averaged: List[float]

    def to_frame(self):
        data = {
            'generation': [point.generation for point in self.points],
            'evals': [point.evaluations for point in self.points],
        }
        for position, task_id in enumerate(self.task_ids):
            data[f'best_task{task_id}'] = [point.best_costs[position] for point in self.points]
        for position, task_id in enumerate(self.task_ids):
            data[f'f{task_id}_norm'] = [values[position] for values in self.normalized]
        data['f_norm_avg'] = self.averaged
        return pd.DataFrame(data)

    def at_generation(self, generation):
        """Averaged normalized objective at the last trace point not after `generation`."""
        value = self.averaged[0]
        for point, averaged in zip(self.points, self.averaged):
            if point.generation > generation:
                break
            value = averaged
        return value

    @property
    def file_name(self):
        if self.mode == ST:
            return f'trace_st_t{self.task_ids[0]}_r{self.run_index}.csv'
        return f'trace_mt_r{self.run_index}.csv'


@dataclass
class Summary:
    table: SummaryTable
    traces: List[NormalizedTrace]


def _entries(records):
    for record in records:
        for position, task_id in enumerate(record.task_ids):
            yield record, position, task_id


def _normalize(best, init, reference):
    if init <= reference:
        return 0.0
    return min(1.0, max(0.0, (best - reference) / (init - reference)))


def summarize(records):
    """
    Aggregate run records per (instance, mode, task) and normalize every trace.

    The normalized objective of task j at a trace point is (best - BF*) / (init - BF*) clamped to [0, 1], where BF*
    is the best cost on the task over all records given and init the run's generation-0 best.
    """
    records = list(records)
    if not records:
        raise ValueError("Cannot summarize an empty record set")
    groups = {}
    reference = {}
    for record, position, task_id in _entries(records):
        instance = record.instances[position]
        groups.setdefault((instance, record.mode, task_id), []).append((record, position))
        key = (instance, task_id)
        reference[key] = min(reference.get(key, math.inf), record.best_found[position])

    rows = []
    for (instance, mode, task_id), entries in groups.items():
        best = [record.best_found[position] for record, position in entries]
        successes = [record.evals_to_success[position] for record, position in entries
                     if record.evals_to_success[position] is not None]
        rows.append(SummaryRow(
            instance=instance,
            mode=mode,
            task=task_id,
            runs=len(entries),
            num_opt=sum(record.optimum_found[position] for record, position in entries),
            mean_num_evals=sum(successes) / len(successes) if successes else None,
            bf=min(best),
            avg=sum(best) / len(best),
        ))

    traces = []
    for record in records:
        init = record.trace[0].best_costs
        refs = [reference[(instance, task_id)] for instance, task_id in zip(record.instances, record.task_ids)]
        normalized = [tuple(_normalize(best, start, ref) for best, start, ref in zip(point.best_costs, init, refs))
                      for point in record.trace]
        traces.append(NormalizedTrace(
            mode=record.mode,
            run_index=record.run_index,
            task_ids=record.task_ids,
            points=record.trace,
            normalized=normalized,
            averaged=[sum(values) / len(values) for values in normalized],
        ))
    return Summary(SummaryTable(rows), traces)


@dataclass
class ComparisonRow:
    instance: str
    task: int
    runs: int
    st_num_opt: int
    mt_num_opt: int
    st_mean_num_evals: Optional[float]
    mt_mean_num_evals: Optional[float]
    # PI(MT, ST) on mean evaluations to success, when both are known
    pi_num_evals: Optional[float]
    st_bf: float
    mt_bf: float
    # Paired runs in which MT reached the optimum with fewer evaluations than ST (or ST never did)
    evals_wins: int
    # Paired runs in which MT's averaged normalized objective at the final common generation was <= serial ST's
    norm_wins: int


@dataclass
class InstanceComparisonRow:
    """ST against MT on one instance, with MT's evaluations averaged over every task that carries the instance."""
    instance: str
    tasks: int
    runs: int
    st_mean_num_evals: Optional[float]
    mt_mean_num_evals: Optional[float]
    pi_num_evals: Optional[float]
    # Paired runs in which MT's mean evaluations to success over the instance's tasks were below ST's
    evals_wins: int


@dataclass
class Comparison:
    rows: List[ComparisonRow]
    st_records: List[List]
    mt_records: List
    summary: Summary
    instance_rows: List[InstanceComparisonRow] = field(default_factory=list)

    def to_frame(self):
        return pd.DataFrame([asdict(row) for row in self.rows], columns=COMPARISON_COLUMNS)

    def instances_frame(self):
        return pd.DataFrame([asdict(row) for row in self.instance_rows], columns=INSTANCE_COMPARISON_COLUMNS)


def _evals_key(evals):
    return math.inf if evals is None else evals


def _mean(values):
    return sum(values) / len(values) if values else None


def serial_value(st_traces, generation):
    """
    Averaged normalized objective of ST tasks solved one after another, at `generation` of the serial schedule.

    The run of each task starts where the previous one ended; a task that has not started yet counts with its
    generation-0 value.
    """
    offset = 0
    values = []
    for trace in st_traces:
        values.append(trace.at_generation(generation - offset))
        offset += trace.points[-1].generation
    return sum(values) / len(values)


def normalized_wins(summary, runs, task_count):
    """
    Count the paired runs where MT's averaged normalized objective is at most serial ST's at their last common
    generation.
    """
    by_run = {}
    for trace in summary.traces:
        by_run.setdefault(trace.run_index, {})[(trace.mode, trace.task_ids)] = trace
    wins = 0
    for run_index in range(runs):
        traces = by_run.get(run_index, {})
        mt = next((trace for (mode, _), trace in traces.items() if mode == MT), None)
        st = [traces.get((ST, (task_id,))) for task_id in range(1, task_count + 1)]
        if mt is None or any(trace is None for trace in st):
            continue
        serial_end = sum(trace.points[-1].generation for trace in st)
        common = min(mt.points[-1].generation, serial_end)
        if mt.at_generation(common) <= serial_value(st, common):
            wins += 1
    return wins


def compare_instances(st_records, mt_records, runs):
    """One row per distinct instance, pairing each MT run with the ST runs of the same seed."""
    positions = {}
    for position, task_runs in enumerate(st_records):
        positions.setdefault(task_runs[0].instances[0], []).append(position)
    mt_by_run = {record.run_index: record for record in mt_records}
    rows = []
    for instance, where in positions.items():
        st_evals = [record.evals_to_success[0] for position in where for record in st_records[position]]
        mt_evals = [record.evals_to_success[position] for position in where for record in mt_records]
        wins = 0
        for run_index in range(runs):
            paired = mt_by_run.get(run_index)
            st_runs = [next((r for r in st_records[position] if r.run_index == run_index), None) for position in where]
            if paired is None or any(record is None for record in st_runs):
                continue
            mt_value = _mean([_evals_key(paired.evals_to_success[position]) for position in where])
            st_value = _mean([_evals_key(record.evals_to_success[0]) for record in st_runs])
            if mt_value < st_value:
                wins += 1
        st_mean = _mean([evals for evals in st_evals if evals is not None])
        mt_mean = _mean([evals for evals in mt_evals if evals is not None])
        rows.append(InstanceComparisonRow(
            instance=instance,
            tasks=len(where),
            runs=runs,
            st_mean_num_evals=st_mean,
            mt_mean_num_evals=mt_mean,
            pi_num_evals=performance_improvement(mt_mean, st_mean) if st_mean and mt_mean is not None else None,
            evals_wins=wins,
        ))
    return rows


def compare_records(st_records, mt_records, runs):
    summary = summarize([record for task_runs in st_records for record in task_runs] + list(mt_records))
    norm_wins = normalized_wins(summary, runs, len(st_records))
    rows = []
    for position, task_runs in enumerate(st_records):
        task_id = position + 1
        instance = task_runs[0].instances[0]
        st_row = summary.table.row(instance, ST, task_id)
        mt_row = summary.table.row(instance, MT, task_id)
        mt_by_run = {record.run_index: record for record in mt_records}
        wins = 0
        for record in task_runs:
            paired = mt_by_run.get(record.run_index)
            if paired is None:
                continue
            mt_evals = paired.evals_to_success[position]
            if mt_evals is not None and mt_evals < _evals_key(record.evals_to_success[0]):
                wins += 1
        pi = None
        if st_row.mean_num_evals and mt_row.mean_num_evals is not None:
            pi = performance_improvement(mt_row.mean_num_evals, st_row.mean_num_evals)
        rows.append(ComparisonRow(
            instance=instance,
            task=task_id,
            runs=runs,
            st_num_opt=st_row.num_opt,
            mt_num_opt=mt_row.num_opt,
            st_mean_num_evals=st_row.mean_num_evals,
            mt_mean_num_evals=mt_row.mean_num_evals,
            pi_num_evals=pi,
            st_bf=st_row.bf,
            mt_bf=mt_row.bf,
            evals_wins=wins,
            norm_wins=norm_wins,
        ))
    return Comparison(rows, st_records, list(mt_records), summary, compare_instances(st_records, mt_records, runs))


def compare(config):
    """Run ST and MT with paired seeds and compare them per task."""
    config.validate()
    st_records = run_st(replace(config, mode=ST))
    mt_records = _run_all(replace(config, mode=MT), MT)
    return compare_records(st_records, mt_records, config.runs)


def write_summary_csv(table, path):
    table.to_frame().to_csv(path, index=False)


def read_summary_csv(path):
    return SummaryTable.from_frame(pd.read_csv(path, float_precision='round_trip'))


def write_comparison_csv(comparison, path):
    comparison.to_frame().to_csv(path, index=False)


def write_results(out_path, config, summary, comparison=None):
    """
    Write summary.csv, one trace CSV per run and config.json under `out_path`, plus comparison.csv and
    instance_comparison.csv for a comparison.
    """
    out = Path(out_path)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / 'summary.csv']
    write_summary_csv(summary.table, written[0])
    for trace in summary.traces:
        path = out / trace.file_name
        trace.to_frame().to_csv(path, index=False)
        written.append(path)
    if comparison is not None:
        path = out / 'comparison.csv'
        write_comparison_csv(comparison, path)
        instance_path = out / 'instance_comparison.csv'
        comparison.instances_frame().to_csv(instance_path, index=False)
        written += [path, instance_path]
    path = out / 'config.json'
    path.write_text(json.dumps(config.as_dict(), indent=2) + '\n')
    written.append(path)
    logger.info("Wrote %d files to %s", len(written), out)
    return written
