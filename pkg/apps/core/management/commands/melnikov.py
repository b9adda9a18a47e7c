from apps.core.management.base import MelnikovCommand, load_configuration
from apps.melnikov.services import sample_melnikov

HEADER = ('s0', 'M')


class Command(MelnikovCommand):
    help = 'Amostra a função de Melnikov em s0 ∈ [0, 2π) (CSV).'

    def add_command_arguments(self, parser):
        parser.add_argument('--order', required=True, help='4, 6, sum or poly:N')
        parser.add_argument('--theta0', type=float, required=True)
        parser.add_argument('--eps', type=float, required=True)
        parser.add_argument('--config', default=None, help='configuration JSON file (not needed for poly:N)')
        parser.add_argument('--points', type=int, default=256)
        self.add_backend_argument(parser)

    def run(self, **options):
        config = load_configuration(options['config']) if options['config'] else None
        rows = sample_melnikov(
            options['order'],
            options['theta0'],
            options['eps'],
            config,
            options['points'],
            self.quad_tol(options),
            options['backend'],
        )
        self.write_csv(HEADER, rows)
