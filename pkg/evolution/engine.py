"""
The MF-LTGA generation loop. With a single task it is plain LTGA.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from evolution import problems
from evolution.linkage import build_all_trees
from evolution.population import Evaluator, Population, initialize_population, select_fittest
from evolution.variation import assortative_mating

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TracePoint:
    generation: int
    evaluations: int
    best_costs: Tuple[float, ...]


@dataclass
class RunRecord:
    mode: str
    instances: Tuple[str, ...]
    # Task ids in the experiment; an ST run of the second task carries (2,)
    task_ids: Tuple[int, ...]
    run_index: int
    seed: int
    best_found: Tuple[float, ...]
    # Evaluations of each task's own objective up to its first optimal one
    evals_to_success: Tuple[Optional[int], ...]
    optimum_found: Tuple[bool, ...]
    evaluations: int
    generations: int
    trace: List[TracePoint] = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)


def _trace_point(generation, evaluator):
    return TracePoint(generation, evaluator.count, tuple(evaluator.best_costs))


def run_mfltga(config, *, tasks=None, seed=None, run_index=0, mode='mt'):
    """
    Run one MF-LTGA optimization over `tasks` (built from `config.tasks` when omitted) and return its record.

    The loop stops at the first generation boundary where the evaluation budget is spent, or as soon as every task
    has a known optimum and all of them have been reached. A trace point is taken at generation 0, every
    `config.trace_every` generations, and at the final generation.
    """
    config.validate()
    tasks = tasks if tasks is not None else problems.build_tasks(config.tasks)
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    started = time.perf_counter()
    logger.info("Run %d (%s, seed %d) on %s", run_index, mode, seed, ', '.join(task.name for task in tasks))

    evaluator = Evaluator(tasks)
    pop = initialize_population(tasks, config.pop_size, rng, evaluator)
    trace = [_trace_point(0, evaluator)]
    generation = 0
    while evaluator.count < config.max_evals and not evaluator.all_solved:
        trees = build_all_trees(pop, tasks)
        outcome = assortative_mating(pop, trees, rng, max_p=config.max_p, mutation_rate=config.mutation_rate)
        pop = select_fittest(pop, Population(outcome.intermediate, evaluator), config.pop_size, rng)
        generation += 1
        if generation % config.trace_every == 0:
            trace.append(_trace_point(generation, evaluator))
        logger.debug("Generation %d: %d evaluations, best %s", generation, evaluator.count, evaluator.best_costs)
    if trace[-1].generation != generation:
        trace.append(_trace_point(generation, evaluator))

    record = RunRecord(
        mode=mode,
        instances=tuple(task.name for task in tasks),
        task_ids=tuple(task.task_id for task in tasks),
        run_index=run_index,
        seed=seed,
        best_found=tuple(evaluator.best_costs),
        evals_to_success=tuple(evaluator.success_evals),
        optimum_found=tuple(evals is not None for evals in evaluator.success_evals),
        evaluations=evaluator.count,
        generations=generation,
        trace=trace,
        wall_time=time.perf_counter() - started,
    )
    logger.info("Run %d finished after %d generations and %d evaluations: best %s", run_index, generation,
                evaluator.count, record.best_found)
    return record
