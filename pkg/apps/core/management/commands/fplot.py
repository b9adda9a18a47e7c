from apps.core.management.base import MelnikovCommand
from apps.quadrature.services import sample_f_curve, uniform_grid

HEADER = ('theta_tilde', 'value', 'error_estimate')


class Command(MelnikovCommand):
    help = 'Amostra F4, F61, F62 ou poly:N numa grade uniforme de Θ̃ (CSV).'

    def add_command_arguments(self, parser):
        parser.add_argument('name', help='F4, F61, F62 or poly:N')
        parser.add_argument('--range', nargs=2, type=float, default=(-4.0, 4.0), metavar=('LO', 'HI'))
        parser.add_argument('--points', type=int, default=201)
        self.add_backend_argument(parser)

    def run(self, **options):
        lo, hi = options['range']
        results = sample_f_curve(
            options['name'],
            lo,
            hi,
            options['points'],
            self.quad_tol(options),
            options['backend'],
            options['progress'],
        )
        grid = uniform_grid(lo, hi, options['points'])
        self.write_csv(HEADER, [(theta, r.value, r.error_estimate) for theta, r in zip(grid, results)])
