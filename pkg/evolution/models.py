import uuid

from django.db import models

from evolution import managers


class Experiment(models.Model):
    class Meta:
        ordering = ['-created']

    class Mode(models.TextChoices):
        SINGLE_TASK = 'st', 'Single-task (LTGA per task)'
        MULTITASK = 'mt', 'Multitask (MF-LTGA)'

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    # Problem descriptors of all tasks, joined with " + "
    instance = models.CharField(max_length=250)
    mode = models.CharField(max_length=2, choices=Mode.choices)
    # The fully resolved ExperimentConfig
    config = models.JSONField(default=dict)
    seed_policy = models.CharField(max_length=100, blank=True)
    created = models.DateTimeField(auto_now_add=True)

    objects = managers.ExperimentManager()

    def __str__(self):
        return f'{self.instance} ({self.mode})'


class RunResult(models.Model):
    class Meta:
        ordering = ['experiment', 'run_index', 'task']
        constraints = [
            models.UniqueConstraint(fields=['experiment', 'run_index', 'task'],
                                    name='unique_result_per_experiment_run_and_task'),
        ]

    experiment = models.ForeignKey(Experiment, on_delete=models.CASCADE, related_name='runs')
    run_index = models.PositiveIntegerField()
    seed = models.BigIntegerField()
    task = models.PositiveSmallIntegerField()
    instance = models.CharField(max_length=250)
    best_found = models.FloatField()
    # Evaluation count at the first hit of the known optimum; null if never reached or unknown
    evals_to_success = models.PositiveIntegerField(null=True, blank=True)
    optimum_found = models.BooleanField(default=False)
    evaluations = models.PositiveIntegerField()
    generations = models.PositiveIntegerField()
    wall_time = models.FloatField(help_text="Seconds")

    def __str__(self):
        return f'{self.instance} task {self.task}, run {self.run_index}'
