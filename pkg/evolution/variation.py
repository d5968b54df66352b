"""
Variation operators: assortative mating, linkage-tree crossover with punishment-driven restarts, and mutation.
"""
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from evolution.exceptions import InvalidStateError
from evolution.population import Individual

logger = logging.getLogger(__name__)


@dataclass
class MatingOutcome:
    offspring_pop: List[Individual] = field(default_factory=list)
    # Parents whose skill factor differs from the task their pair was crossed on
    backup_pop: List[Individual] = field(default_factory=list)

    @property
    def intermediate(self):
        return self.offspring_pop + self.backup_pop


@dataclass
class PunishmentState:
    max_p: int
    n_p: int = 0

    def punish(self):
        """Record a traversal without improvement; return True when the pair must be restarted."""
        self.n_p += 1
        if self.n_p > self.max_p:
            self.n_p = 0
            return True
        return False

    def reset(self):
        self.n_p = 0


def _with_genes(individual, mask, genes):
    genotype = individual.genotype.copy()
    genotype[mask] = genes
    return individual.derive(genotype)


def tree_crossover(p_i, p_j, tree, task, state, rng, *, evaluator):
    """
    Traverse `tree`'s masks over the pair (p_i, p_j) and return the resulting pair.

    For each mask the two parents swap the masked genes; the swapped pair replaces the current one only if its best
    cost on `task` is strictly below the current pair's best. Masks over which the two are identical are skipped
    without evaluation. A traversal that changes nothing returns the parent objects and punishes the pair; once the
    punishment exceeds its maximum the pair is replaced by two fresh random individuals.
    """
    for parent in (p_i, p_j):
        if parent.cost_on(task.task_id) is None:
            evaluator.evaluate(parent, task)
    a, b = p_i, p_j
    best = min(a.cost_on(task.task_id), b.cost_on(task.task_id))
    changed = False
    for mask in tree.masks():
        genes_a = a.genotype[mask]
        genes_b = b.genotype[mask]
        if np.array_equal(genes_a, genes_b):
            continue
        child_a = _with_genes(a, mask, genes_b)
        child_b = _with_genes(b, mask, genes_a)
        candidate = min(evaluator.evaluate(child_a, task), evaluator.evaluate(child_b, task))
        if candidate < best:
            a, b, best = child_a, child_b, candidate
            changed = True
    if changed:
        state.reset()
    elif state.punish():
        logger.debug("Pair on task %d exceeded %d fruitless traversals, restarting it", task.task_id, state.max_p)
        a = evaluator.random_individual(rng)
        b = evaluator.random_individual(rng)
        evaluator.evaluate(a, task)
        evaluator.evaluate(b, task)
    return a, b


def mutate(individual, rate, rng, *, alphabet_size=2):
    """
    Reset every gene independently with probability `rate` to a uniformly drawn value.

    Returns `individual` itself when no gene changes value, otherwise a new individual without costs.
    """
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"Mutation rate must lie in [0, 1], got {rate}")
    hits = rng.random(individual.genotype.size) < rate
    if not hits.any():
        return individual
    genotype = individual.genotype.copy()
    genotype[hits] = rng.integers(0, alphabet_size, size=int(hits.sum()))
    if np.array_equal(genotype, individual.genotype):
        return individual
    return individual.derive(genotype)


def assortative_mating(pop, trees, rng, *, max_p=10, mutation_rate=0.0):
    """
    Pair the population at random and produce one offspring per pair.

    Each pair is crossed on one task: the shared skill factor, or a fair coin between the two when they differ, in
    which case the parent not skilled on that task goes to the backup population. The better child (ties: the first)
    of each pair becomes offspring and inherits the crossover task as skill factor.

    Parents keep their skill factor and punishment. A child that is still one of its parents after crossover and
    mutation enters the offspring population as a copy. The only thing a parent can gain is its cost on the crossover
    task, when it had to be evaluated there.
    """
    if len(pop) % 2:
        raise InvalidStateError(f"Cannot pair a population of odd size {len(pop)}")
    evaluator = pop.evaluator
    by_task = {tree.task_id: tree for tree in trees}
    outcome = MatingOutcome()
    order = rng.permutation(len(pop))
    for first, second in zip(order[0::2], order[1::2]):
        p_i, p_j = pop.members[first], pop.members[second]
        tau = p_i.skill_factor
        if p_i.skill_factor != p_j.skill_factor:
            tau = p_i.skill_factor if rng.random() < 0.5 else p_j.skill_factor
            outcome.backup_pop.append(p_j if tau == p_i.skill_factor else p_i)
        tree = by_task.get(tau)
        if tree is None:
            raise InvalidStateError(f"No linkage tree for task {tau}")
        task = evaluator.task(tau)
        state = PunishmentState(max_p=max_p, n_p=max(p_i.punishment, p_j.punishment))
        o_i, o_j = tree_crossover(p_i, p_j, tree, task, state, rng, evaluator=evaluator)
        if mutation_rate > 0.0:
            o_i = mutate(o_i, mutation_rate, rng, alphabet_size=evaluator.alphabet_size)
            o_j = mutate(o_j, mutation_rate, rng, alphabet_size=evaluator.alphabet_size)
            for child in (o_i, o_j):
                if child.cost_on(tau) is None:
                    evaluator.evaluate(child, task)
        o_i, o_j = (child.clone() if child is p_i or child is p_j else child for child in (o_i, o_j))
        for child in (o_i, o_j):
            child.skill_factor = tau
            child.punishment = state.n_p
        outcome.offspring_pop.append(o_i if o_i.cost_on(tau) <= o_j.cost_on(tau) else o_j)
    return outcome
