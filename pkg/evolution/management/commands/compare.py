from dataclasses import replace

from django.core.management.base import BaseCommand, CommandError

from evolution import harness
from evolution.exceptions import EvolutionError
from evolution.management.options import add_experiment_arguments, config_from_options
from evolution.models import Experiment


class Command(BaseCommand):
    help = ("Run LTGA and MF-LTGA with paired seeds on the same tasks and write comparison.csv and "
            "instance_comparison.csv next to the summary.")

    def add_arguments(self, parser):
        add_experiment_arguments(parser)

    def handle(self, *args, **options):
        config = config_from_options(options)
        try:
            comparison = harness.compare(config)
            harness.write_results(config.out_path, config, comparison.summary, comparison)
        except EvolutionError as e:
            raise CommandError(str(e)) from e
        for row in comparison.rows:
            pi = '-' if row.pi_num_evals is None else f'{row.pi_num_evals:.1f}%'
            self.stdout.write(f'{row.instance} task {row.task}: optimal ST {row.st_num_opt}/{row.runs}, '
                              f'MT {row.mt_num_opt}/{row.runs}; PI {pi}; MT fewer evals in {row.evals_wins}, '
                              f'lower normalized objective in {row.norm_wins} runs')
        for row in comparison.instance_rows:
            pi = '-' if row.pi_num_evals is None else f'{row.pi_num_evals:.1f}%'
            self.stdout.write(f'{row.instance} over {row.tasks} task(s): PI {pi}; '
                              f'MT fewer evals in {row.evals_wins} runs')
        if not options['no_save']:
            st_records = [record for runs in comparison.st_records for record in runs]
            Experiment.objects.create_from_records(replace(config, mode=harness.ST), st_records)
            Experiment.objects.create_from_records(replace(config, mode=harness.MT), comparison.mt_records)
        self.stdout.write(self.style.SUCCESS(f'Results written to {config.out_path}'))
