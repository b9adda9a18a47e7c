from apps.core.management.base import MelnikovCommand, load_configuration
from apps.core.pool_manager import get_pool
from apps.dynamics.models import TWO_PI
from apps.dynamics.services import MIN_SPLITTING_T, SHOOTING_T, splitting_shooting, splitting_sweep
from apps.melnikov.utils import melnikov_sum
from apps.utils.exceptions import InvalidInputError

SWEEP_HEADER = ('s0', 'splitting', 'error_estimate', 'melnikov_prediction')
SHOOTING_HEADER = ('s0', 'hd_difference', 'melnikov_prediction')


class Command(MelnikovCommand):
    help = (
        'Separação das variedades ao longo da homoclínica numa grade de s0, '
        'ao lado da previsão ε⁴M4 + ε⁶M6 (CSV).'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--config', required=True, help='configuration JSON file')
        parser.add_argument('--theta0', type=float, default=1.0)
        parser.add_argument('--eps', type=float, default=0.5)
        parser.add_argument('--points', type=int, default=8)
        parser.add_argument('--T', type=float, default=None, help=f'half span; default {MIN_SPLITTING_T}')
        parser.add_argument('--shooting', action='store_true', help='experimental: integrate both branches')

    def run(self, **options):
        config = load_configuration(options['config'])
        theta0, epsilon, points = options['theta0'], options['eps'], options['points']
        if not options['shooting']:
            T = MIN_SPLITTING_T if options['T'] is None else options['T']
            rows = splitting_sweep(theta0, epsilon, config, points, T, options['tol'], options['progress'])
            self.write_csv(SWEEP_HEADER, rows)
            return

        if points < 1:
            raise InvalidInputError(f'points must be >= 1, got {points!r}')
        T = SHOOTING_T if options['T'] is None else options['T']
        quad_tol = self.quad_tol(options)

        def row(s0):
            difference = splitting_shooting(s0, theta0, epsilon, config, T, options['tol'])
            return s0, difference, melnikov_sum(s0, theta0, epsilon, config, quad_tol)

        grid = [TWO_PI * i / points for i in range(points)]
        self.write_csv(SHOOTING_HEADER, get_pool().map(row, grid, progress=options['progress'], desc='shooting'))
