"""
Unified-search-space population with multifactorial bookkeeping.

Every individual carries a genotype over the unified search space (length D = largest task dimension, genes in
[0, A) where A = largest task alphabet) together with its factorial costs and ranks, scalar fitness and skill factor.
All objective calls go through an `Evaluator`, which is the single place where evaluations are counted.
"""
import logging
import math
from dataclasses import dataclass, field
from itertools import chain
from typing import Callable, List, Optional

import numpy as np

from evolution.exceptions import ConfigurationError, InvalidStateError

logger = logging.getLogger(__name__)

# Costs within this distance of a task's known optimum count as hitting it.
OPTIMUM_TOLERANCE = 1e-9


@dataclass
class TaskDefinition:
    task_id: int
    dimension: int
    alphabet_size: int
    # Minimization objective over the decoded genes of the task
    objective: Callable[[np.ndarray], float]
    known_optimum: Optional[float] = None
    name: str = ''

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError(f"Task {self.task_id} must have at least one gene")
        if self.alphabet_size < 2:
            raise ConfigurationError(f"Task {self.task_id} needs an alphabet of at least two values")

    def decode(self, genotype):
        """Return the task-space genes: the first `dimension` unified genes, reduced into the task's alphabet."""
        return np.asarray(genotype[:self.dimension]) % self.alphabet_size


@dataclass(eq=False)
class Individual:
    genotype: np.ndarray
    factorial_costs: List[Optional[float]]
    factorial_ranks: List[Optional[int]] = field(default_factory=list)
    scalar_fitness: float = 0.0
    skill_factor: Optional[int] = None
    # Punishment record of the crossover operator; survives as long as the individual does
    punishment: int = 0

    def cost_on(self, task_id):
        return self.factorial_costs[task_id - 1]

    @property
    def skill_cost(self):
        """Factorial cost on the skill-factor task (infinite if unknown)."""
        if self.skill_factor is None:
            return math.inf
        cost = self.cost_on(self.skill_factor)
        return math.inf if cost is None else cost

    def clone(self):
        """A new individual with the same genotype, known costs, skill factor and punishment."""
        return Individual(genotype=self.genotype,
                          factorial_costs=list(self.factorial_costs),
                          skill_factor=self.skill_factor,
                          punishment=self.punishment)

    def derive(self, genotype):
        """A new individual with the given genotype; costs are unknown, skill factor and punishment are inherited."""
        return Individual(genotype=genotype,
                          factorial_costs=[None] * len(self.factorial_costs),
                          skill_factor=self.skill_factor,
                          punishment=self.punishment)

    def __repr__(self):
        genes = ''.join(str(g) for g in self.genotype[:40])
        return f'Individual({genes}, costs={self.factorial_costs}, skill={self.skill_factor})'


class Evaluator:
    """
    The multitask environment: unified search space, evaluation counter and per-task progress.

    `count` is the shared budget counter over all tasks, while `task_counts[j]` only counts the evaluations of task
    j + 1. `success_evals[j]` is the value of `task_counts[j]` at the first evaluation that hit the task's known
    optimum, so a task is charged for its own evaluations only. With a single task both counters are the same.
    """
    def __init__(self, tasks):
        if not tasks:
            raise ConfigurationError("At least one task is required")
        for position, task in enumerate(tasks, start=1):
            if task.task_id != position:
                raise ConfigurationError(f"Task ids must be 1..{len(tasks)} in order, got {task.task_id} at "
                                         f"position {position}")
        self.tasks = list(tasks)
        self.dimension = max(task.dimension for task in self.tasks)
        self.alphabet_size = max(task.alphabet_size for task in self.tasks)
        self.count = 0
        self.task_counts = [0] * len(self.tasks)
        self.best_costs = [math.inf] * len(self.tasks)
        self.best_genotypes = [None] * len(self.tasks)
        self.success_evals = [None] * len(self.tasks)

    def task(self, task_id):
        return self.tasks[task_id - 1]

    def random_genotype(self, rng):
        return rng.integers(0, self.alphabet_size, size=self.dimension)

    def random_individual(self, rng):
        return Individual(genotype=self.random_genotype(rng), factorial_costs=[None] * len(self.tasks))

    def evaluate(self, individual, task):
        cost = float(task.objective(task.decode(individual.genotype)))
        self.count += 1
        index = task.task_id - 1
        self.task_counts[index] += 1
        individual.factorial_costs[index] = cost
        if cost < self.best_costs[index]:
            self.best_costs[index] = cost
            self.best_genotypes[index] = individual.genotype.copy()
        if (task.known_optimum is not None and self.success_evals[index] is None
                and cost <= task.known_optimum + OPTIMUM_TOLERANCE):
            self.success_evals[index] = self.task_counts[index]
            logger.info("Task %d (%s) reached its optimum %g after %d of its own evaluations (%d in total)",
                        task.task_id, task.name, cost, self.task_counts[index], self.count)
        return cost

    def solved(self, task_id):
        return self.success_evals[task_id - 1] is not None

    @property
    def all_solved(self):
        """True once every task has a known optimum and all of them have been hit."""
        return all(task.known_optimum is not None and self.solved(task.task_id) for task in self.tasks)


@dataclass
class Population:
    members: List[Individual]
    evaluator: Evaluator

    @property
    def size(self):
        return len(self.members)

    @property
    def eval_counter(self):
        return self.evaluator.count

    @property
    def tasks(self):
        return self.evaluator.tasks

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def best(self, task_id):
        """The member with the lowest known cost on the given task, or None if no member has one."""
        evaluated = [ind for ind in self.members if ind.cost_on(task_id) is not None]
        return min(evaluated, key=lambda ind: ind.cost_on(task_id), default=None)


def initialize_population(tasks, n, rng, evaluator=None):
    if not tasks:
        raise ConfigurationError("At least one task is required")
    if n < 2 or n % 2:
        raise ConfigurationError(f"Population size must be even and at least 2, got {n}")
    evaluator = evaluator or Evaluator(tasks)
    members = [evaluator.random_individual(rng) for _ in range(n)]
    for individual in members:
        for task in evaluator.tasks:
            evaluator.evaluate(individual, task)
    population = Population(members, evaluator)
    assign_ranks_and_skill(population, evaluator.tasks, rng)
    return population


def _rank(members, tasks, rng=None):
    for individual in members:
        if all(cost is None for cost in individual.factorial_costs):
            raise InvalidStateError(f"{individual!r} has not been evaluated on any task")
    for individual in members:
        individual.factorial_ranks = [None] * len(tasks)
    for index, task in enumerate(tasks):
        evaluated = [ind for ind in members if ind.factorial_costs[index] is not None]
        # sorted() is stable, so equal costs keep insertion order
        evaluated = sorted(evaluated, key=lambda ind: ind.factorial_costs[index])
        for rank, individual in enumerate(evaluated, start=1):
            individual.factorial_ranks[index] = rank
    for individual in members:
        best_rank = min(rank for rank in individual.factorial_ranks if rank is not None)
        tied = [task.task_id for rank, task in zip(individual.factorial_ranks, tasks) if rank == best_rank]
        individual.scalar_fitness = 1.0 / best_rank
        # The generator is only drawn from on an actual tie
        if rng is not None and len(tied) > 1:
            individual.skill_factor = tied[int(rng.integers(len(tied)))]
        else:
            individual.skill_factor = tied[0]


def assign_ranks_and_skill(pop, tasks=None, rng=None):
    """
    Rank every member on every task it has a cost for and derive scalar fitness and skill factor.

    Members without a cost on a task get no rank there, which places them after all ranked members. A member whose
    best rank is shared by several tasks is given the lowest of their ids, or one of them drawn uniformly from `rng`
    when a generator is passed.
    """
    _rank(pop.members, tasks if tasks is not None else pop.tasks, rng)
    return pop


def select_fittest(current, intermediate, n, rng=None):
    """
    Return the n fittest individuals of current ∪ intermediate as the next population.

    The pool is de-duplicated by identity, ranked afresh, and truncated by scalar fitness (ties: lower cost on the
    skill-factor task, then pool order). The survivors are ranked again among themselves. Skill-factor ties are
    resolved as in `assign_ranks_and_skill`.
    """
    seen = set()
    pool = []
    for individual in chain(current.members, intermediate.members):
        if id(individual) not in seen:
            seen.add(id(individual))
            pool.append(individual)
    if len(pool) < n:
        raise InvalidStateError(f"Cannot select {n} survivors from a pool of {len(pool)}")
    tasks = current.tasks
    _rank(pool, tasks, rng)
    order = sorted(range(len(pool)), key=lambda i: (-pool[i].scalar_fitness, pool[i].skill_cost, i))
    survivors = Population([pool[i] for i in order[:n]], current.evaluator)
    _rank(survivors.members, tasks, rng)
    return survivors
