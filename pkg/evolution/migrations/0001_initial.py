import uuid

from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='Experiment',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('instance', models.CharField(max_length=250)),
                ('mode', models.CharField(choices=[('st', 'Single-task (LTGA per task)'), ('mt', 'Multitask (MF-LTGA)')], max_length=2)),
                ('config', models.JSONField(default=dict)),
                ('seed_policy', models.CharField(blank=True, max_length=100)),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created'],
            },
        ),
        migrations.CreateModel(
            name='RunResult',
            fields=[
                ('id', models.AutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('run_index', models.PositiveIntegerField()),
                ('seed', models.BigIntegerField()),
                ('task', models.PositiveSmallIntegerField()),
                ('instance', models.CharField(max_length=250)),
                ('best_found', models.FloatField()),
                ('evals_to_success', models.PositiveIntegerField(blank=True, null=True)),
                ('optimum_found', models.BooleanField(default=False)),
                ('evaluations', models.PositiveIntegerField()),
                ('generations', models.PositiveIntegerField()),
                ('wall_time', models.FloatField(help_text='Seconds')),
                ('experiment', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='runs', to='evolution.experiment')),
            ],
            options={
                'ordering': ['experiment', 'run_index', 'task'],
            },
        ),
        migrations.AddConstraint(
            model_name='runresult',
            constraint=models.UniqueConstraint(fields=('experiment', 'run_index', 'task'), name='unique_result_per_experiment_run_and_task'),
        ),
    ]
