from django.core.management.base import BaseCommand, CommandError

from evolution import cluspt, oracle, problems
from evolution.exceptions import EvolutionError


class Command(BaseCommand):
    help = "Solve a small DTF or CluSPT instance by exhaustive enumeration and print the optimum."

    def add_arguments(self, parser):
        parser.add_argument('problem', help="'dtf:k=3,m=5' or 'cluspt:<path>'")

    def handle(self, *args, **options):
        try:
            descriptor = problems.parse_descriptor(options['problem'])
            if descriptor.kind == 'dtf':
                result = oracle.exhaustive_dtf(descriptor.trap)
                witness = ''.join(str(bit) for bit in result.witness)
            else:
                result = oracle.exhaustive_cluspt(cluspt.load_instance(descriptor.path))
                witness = ' '.join('-' if p is None else str(p + 1) for p in result.witness)
        except EvolutionError as e:
            raise CommandError(str(e)) from e
        self.stdout.write(f'optimum_cost: {result.optimum_cost:g}')
        self.stdout.write(f'optimum_count: {result.optimum_count}')
        self.stdout.write(f'enumerated: {result.enumerated}')
        self.stdout.write(f'witness: {witness}')
