import numpy as np
import pytest
from django.contrib.auth.models import User
from rest_framework.test import APIClient

from evolution import cluspt, dtf, problems
from evolution.engine import run_mfltga
from evolution.harness import ExperimentConfig
from evolution.models import Experiment
from evolution.population import TaskDefinition


class CountingObjective:
    """Wraps an objective and counts how often it is called."""
    def __init__(self, objective):
        self.objective = objective
        self.calls = 0

    def __call__(self, genes):
        self.calls += 1
        return self.objective(genes)


def trap_task(task_id=1, k=3, m=5):
    spec = dtf.TrapSpec(k, m)
    return TaskDefinition(task_id, spec.length, 2, dtf.TrapObjective(spec), known_optimum=0.0, name=spec.label)


def onemax_task(task_id=1, length=8, alphabet_size=2):
    # Cost is the number of non-zero genes; optimum 0 at the all-zero string
    return TaskDefinition(task_id, length, alphabet_size, lambda genes: float(np.count_nonzero(genes)),
                          known_optimum=0.0, name=f'onemax{length}')


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def trap_tasks():
    return [trap_task(1), trap_task(2)]


@pytest.fixture
def path4():
    return cluspt.load_instance(problems.INSTANCES_DIR / 'path4.clu')


@pytest.fixture
def six3():
    return cluspt.load_instance(problems.INSTANCES_DIR / 'six3.clu')


@pytest.fixture
def seven3():
    return cluspt.load_instance(problems.INSTANCES_DIR / 'seven3.clu')


@pytest.fixture
def euclid6():
    return cluspt.load_instance(problems.INSTANCES_DIR / 'euclid6.clu')


@pytest.fixture
def fixture_graphs(path4, six3, seven3, euclid6):
    return [path4, six3, seven3, euclid6]


@pytest.fixture
def small_config():
    return ExperimentConfig(tasks=['dtf:k=3,m=2', 'dtf:k=3,m=2'], pop_size=16, max_evals=3000, runs=2, seed=7,
                            mutation_rate=0.0)


@pytest.fixture
def api_client():
    return APIClient()


@pytest.fixture
def superuser(db):
    return User.objects.create(username='admin', is_superuser=True)


@pytest.fixture
def user(db):
    return User.objects.create(username='someone')


@pytest.fixture
def experiment(db, small_config):
    records = [run_mfltga(small_config, seed=small_config.seed_for(r), run_index=r) for r in range(small_config.runs)]
    return Experiment.objects.create_from_records(small_config, records)
