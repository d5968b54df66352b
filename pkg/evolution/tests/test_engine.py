from dataclasses import replace

from evolution import problems
from evolution.engine import run_mfltga
from evolution.tests.conftest import CountingObjective


def test_same_seed_gives_same_run(small_config):
    first = run_mfltga(small_config)
    second = run_mfltga(small_config)
    assert first == second
    assert first.seed == small_config.seed


def test_zero_budget_only_initializes(small_config):
    record = run_mfltga(replace(small_config, max_evals=0))
    assert record.generations == 0
    assert record.evaluations == small_config.pop_size * 2
    assert [point.generation for point in record.trace] == [0]


def test_budget_is_checked_at_generation_boundaries(small_config):
    config = replace(small_config, tasks=['dtf:k=5,m=4', 'dtf:k=5,m=4'], max_evals=500)
    record = run_mfltga(config)
    assert record.evaluations >= 500 or all(record.optimum_found)
    if len(record.trace) > 1:
        assert record.trace[-2].evaluations < 500


def test_every_objective_call_is_counted(small_config):
    tasks = problems.build_tasks(small_config.tasks)
    counters = []
    for task in tasks:
        task.objective = CountingObjective(task.objective)
        counters.append(task.objective)
    record = run_mfltga(small_config, tasks=tasks)
    assert record.evaluations == sum(counter.calls for counter in counters)


def test_record_describes_the_run(small_config):
    record = run_mfltga(small_config, run_index=3)
    assert record.mode == 'mt'
    assert record.run_index == 3
    assert record.instances == ('dtf:k=3,m=2', 'dtf:k=3,m=2')
    assert record.task_ids == (1, 2)
    assert record.trace[-1].generation == record.generations
    assert record.trace[-1].evaluations == record.evaluations
    for found, best, evals in zip(record.optimum_found, record.best_found, record.evals_to_success):
        assert found == (evals is not None)
        if found:
            assert best == 0.0
            assert evals <= record.evaluations


def test_best_costs_never_get_worse(small_config):
    record = run_mfltga(small_config)
    for before, after in zip(record.trace, record.trace[1:]):
        assert all(b >= a for b, a in zip(before.best_costs, after.best_costs))
        assert after.evaluations >= before.evaluations


def test_trace_interval(small_config):
    record = run_mfltga(replace(small_config, trace_every=3, tasks=['dtf:k=5,m=4'], max_evals=2000))
    generations = [point.generation for point in record.trace]
    assert generations[0] == 0
    assert all(generation % 3 == 0 for generation in generations[:-1])
    assert generations[-1] == record.generations


def test_single_task_multitask_run_is_plain_ltga(small_config):
    config = replace(small_config, tasks=['dtf:k=3,m=2'])
    single = run_mfltga(config, mode='st')
    multi = run_mfltga(config, mode='mt')
    assert replace(single, mode='mt') == multi


def test_cluspt_tasks_run(small_config):
    config = replace(small_config, tasks=['cluspt:six3', 'cluspt:seven3'], max_evals=2000)
    record = run_mfltga(config)
    assert record.best_found[0] >= 21.0
    assert record.best_found[1] >= 22.0


def test_tasks_are_charged_only_for_their_own_evaluations(small_config):
    tasks = problems.build_tasks(small_config.tasks)
    counters = []
    for task in tasks:
        task.objective = CountingObjective(task.objective)
        counters.append(task.objective)
    record = run_mfltga(replace(small_config, max_evals=10 ** 5), tasks=tasks)
    for evals, counter in zip(record.evals_to_success, counters):
        assert evals is not None
        assert evals <= counter.calls
    assert sum(record.evals_to_success) <= record.evaluations
