from dataclasses import asdict

from django.db import models, transaction

from evolution.harness import SEED_POLICY


class ExperimentManager(models.Manager):
    def create_from_records(self, config, records):
        """
        Store a finished experiment with one RunResult per (run, task) of `records`.

        All records must come from `config`; ST records carry the task id they were run for.
        """
        if not records:
            raise ValueError("An experiment needs at least one run record")
        with transaction.atomic(using=self._db):
            experiment = self.create(instance=' + '.join(config.tasks),
                                     mode=records[0].mode,
                                     config=asdict(config),
                                     seed_policy=SEED_POLICY)
            run_result = experiment.runs.model
            results = [
                run_result(experiment=experiment,
                           run_index=record.run_index,
                           seed=record.seed,
                           task=task_id,
                           instance=record.instances[position],
                           best_found=record.best_found[position],
                           evals_to_success=record.evals_to_success[position],
                           optimum_found=record.optimum_found[position],
                           evaluations=record.evaluations,
                           generations=record.generations,
                           wall_time=record.wall_time)
                for record in records
                for position, task_id in enumerate(record.task_ids)
            ]
            run_result.objects.bulk_create(results)
        return experiment
