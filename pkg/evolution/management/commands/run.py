from django.core.management.base import BaseCommand, CommandError

from evolution import harness
from evolution.exceptions import EvolutionError
from evolution.management.options import add_experiment_arguments, config_from_options
from evolution.models import Experiment


class Command(BaseCommand):
    help = ("Run LTGA (--mode st) or MF-LTGA (--mode mt) on the given problems and write summary.csv, config.json "
            "and one trace per run to the output directory. MT traces are named trace_mt_r<run>.csv, ST traces "
            "trace_st_t<task>_r<run>.csv.")

    def add_arguments(self, parser):
        add_experiment_arguments(parser)
        parser.add_argument('--mode', choices=harness.MODES)

    def handle(self, *args, **options):
        overrides = {'mode': options['mode']} if options['mode'] else {}
        config = config_from_options(options, **overrides)
        try:
            records = harness.run_experiment(config)
            summary = harness.summarize(records)
            harness.write_results(config.out_path, config, summary)
        except EvolutionError as e:
            raise CommandError(str(e)) from e
        for row in summary.table.rows:
            mean = '-' if row.mean_num_evals is None else f'{row.mean_num_evals:.1f}'
            self.stdout.write(f'{row.instance} [{row.mode}] task {row.task}: {row.num_opt}/{row.runs} optimal, '
                              f'mean evals {mean}, BF {row.bf:g}, Avg {row.avg:g}')
        if not options['no_save']:
            experiment = Experiment.objects.create_from_records(config, records)
            self.stdout.write(f'Stored experiment {experiment.id}')
        self.stdout.write(self.style.SUCCESS(f'Results written to {config.out_path}'))
