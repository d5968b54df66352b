from django.conf import settings
from rest_flex_fields.serializers import FlexFieldsSerializerMixin
from rest_framework import serializers

from evolution import harness, models, problems
from evolution.exceptions import EvolutionError


def _default(name):
    return settings.MFLTGA[name]


class ExperimentConfigSerializer(serializers.Serializer):
    """
    Validates experiment options coming from the command line or JSON; `save()` returns an ExperimentConfig.

    A single problem with `task_count` N stands for N identical tasks.
    """
    problems = serializers.ListField(child=serializers.CharField(), min_length=1)
    task_count = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    mode = serializers.ChoiceField(choices=harness.MODES, default=harness.MT)
    pop_size = serializers.IntegerField(min_value=2, default=lambda: _default('POP_SIZE'))
    max_evals = serializers.IntegerField(min_value=0, default=lambda: _default('MAX_EVALS'))
    runs = serializers.IntegerField(min_value=1, default=lambda: _default('RUNS'))
    seed = serializers.IntegerField(min_value=0, default=lambda: _default('SEED'))
    max_p = serializers.IntegerField(min_value=0, default=lambda: _default('MAX_P'))
    mutation_rate = serializers.FloatField(min_value=0.0, max_value=1.0, default=lambda: _default('MUTATION_RATE'))
    rmp = serializers.FloatField(min_value=0.0, max_value=1.0, default=lambda: _default('RMP'))
    trace_every = serializers.IntegerField(min_value=1, default=lambda: _default('TRACE_EVERY'))
    out_path = serializers.CharField(default=lambda: _default('RESULTS_DIR'))
    workers = serializers.IntegerField(min_value=1, default=lambda: _default('WORKERS'))

    def validate_pop_size(self, value):
        if value % 2:
            raise serializers.ValidationError("Population size must be even.")
        return value

    def validate_problems(self, value):
        for descriptor in value:
            try:
                problems.parse_descriptor(descriptor)
            except EvolutionError as e:
                raise serializers.ValidationError(str(e))
        return value

    def validate(self, data):
        count = data.get('task_count')
        if count is not None:
            if len(data['problems']) == 1:
                data['problems'] = data['problems'] * count
            elif count != len(data['problems']):
                raise serializers.ValidationError(
                    {'task_count': f"Got {len(data['problems'])} problems but {count} tasks."})
        return data

    def create(self, validated_data):
        data = dict(validated_data)
        data.pop('task_count', None)
        return harness.ExperimentConfig(tasks=data.pop('problems'), **data)


class RunResultSerializer(FlexFieldsSerializerMixin, serializers.ModelSerializer):
    class Meta:
        model = models.RunResult
        fields = ['url', 'id', 'experiment', 'run_index', 'seed', 'task', 'instance', 'best_found',
                  'evals_to_success', 'optimum_found', 'evaluations', 'generations', 'wall_time']


class ExperimentSerializer(FlexFieldsSerializerMixin, serializers.ModelSerializer):
    class Meta:
        model = models.Experiment
        fields = ['url', 'id', 'instance', 'mode', 'config', 'seed_policy', 'created', 'runs']
        expandable_fields = {
            'runs': (RunResultSerializer, {'many': True, 'omit': ['experiment']})
        }

    runs = serializers.PrimaryKeyRelatedField(many=True, read_only=True)
