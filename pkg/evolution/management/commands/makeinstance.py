from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from evolution import cluspt


class Command(BaseCommand):
    help = "Write a random clustered Euclidean CluSPT instance."

    def add_arguments(self, parser):
        parser.add_argument('path', help="Output file")
        parser.add_argument('--vertices', type=int, default=50)
        parser.add_argument('--clusters', type=int, default=5)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--name')

    def handle(self, *args, **options):
        try:
            graph = cluspt.generate_instance(options['vertices'], options['clusters'], options['seed'],
                                             name=options['name'])
        except ValueError as e:
            raise CommandError(str(e)) from e
        path = Path(options['path'])
        path.write_text(cluspt.format_instance(graph))
        self.stdout.write(self.style.SUCCESS(f'Wrote {graph.name} ({graph.n} vertices, {graph.cluster_count} '
                                             f'clusters) to {path}'))
