"""
Command-line options shared by the `run` and `compare` commands.
"""
from django.core.management.base import CommandError

from evolution.serializers import ExperimentConfigSerializer

# (flag, serializer field, argparse type)
EXPERIMENT_OPTIONS = [
    ('--tasks', 'task_count', int),
    ('--pop', 'pop_size', int),
    ('--max-evals', 'max_evals', int),
    ('--runs', 'runs', int),
    ('--seed', 'seed', int),
    ('--max-p', 'max_p', int),
    ('--mutation', 'mutation_rate', float),
    ('--rmp', 'rmp', float),
    ('--trace-every', 'trace_every', int),
    ('--out', 'out_path', str),
    ('--workers', 'workers', int),
]


def add_experiment_arguments(parser):
    parser.add_argument('--problem', action='append', dest='problems', required=True,
                        help="Problem descriptor, 'dtf:k=3,m=5' or 'cluspt:<path>'. Repeat for heterogeneous tasks.")
    for flag, dest, type_ in EXPERIMENT_OPTIONS:
        parser.add_argument(flag, dest=dest, type=type_)
    parser.add_argument('--no-save', action='store_true', help="Do not store the results in the database")


def config_from_options(options, **overrides):
    """Validate the given command options and return the resulting ExperimentConfig."""
    data = {dest: options[dest] for _, dest, _ in EXPERIMENT_OPTIONS if options.get(dest) is not None}
    data['problems'] = options['problems']
    data.update(overrides)
    serializer = ExperimentConfigSerializer(data=data)
    if not serializer.is_valid():
        messages = [f"{field}: {' '.join(str(e) for e in errors)}" for field, errors in serializer.errors.items()]
        raise CommandError('Invalid experiment options. ' + '; '.join(messages))
    return serializer.save()
