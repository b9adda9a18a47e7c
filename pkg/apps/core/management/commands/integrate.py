import numpy as np

from apps.core.management.base import MelnikovCommand, load_configuration
from apps.dynamics.models import FlowParams
from apps.dynamics.services import integrate, trajectory_header, trajectory_rows
from apps.dynamics.utils import duffing_field, homoclinic, mcgehee_t_field, mcgehee_tau_field
from apps.utils.choices import FlowTime
from apps.utils.exceptions import InvalidInputError


class Command(MelnikovCommand):
    help = (
        'Integra o fluxo de Duffing ou o sistema em coordenadas de McGehee '
        '(tempo t ou τ) e imprime a trajetória em CSV.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--flow', choices=FlowTime.values, default=FlowTime.DUFFING)
        parser.add_argument('--theta0', type=float, default=1.0)
        parser.add_argument('--eps', type=float, default=0.5)
        parser.add_argument('--config', default=None, help='configuration JSON file (t and tau flows)')
        parser.add_argument('--truncation', type=int, choices=(3, 7, 9), default=9)
        parser.add_argument('--span', nargs=2, type=float, default=(-10.0, 10.0), metavar=('START', 'END'))
        parser.add_argument('--points', type=int, default=201)
        parser.add_argument('--x0', type=float, default=None, help='defaults to the homoclinic at START')
        parser.add_argument('--y0', type=float, default=None, help='defaults to the homoclinic at START')
        parser.add_argument('--s0', type=float, default=0.0)

    def run(self, **options):
        flow = FlowTime(options['flow'])
        theta0 = options['theta0']
        start, end = options['span']
        if options['points'] < 2:
            raise InvalidInputError(f'points must be >= 2, got {options["points"]!r}')
        x0, y0 = options['x0'], options['y0']
        if x0 is None or y0 is None:
            hx, hy = homoclinic(start, theta0)
            x0 = hx if x0 is None else x0
            y0 = hy if y0 is None else y0

        if flow == FlowTime.DUFFING:
            field, state0 = duffing_field(theta0), [x0, y0]
        else:
            if not options['config']:
                raise InvalidInputError(f'the {flow} flow needs --config')
            params = FlowParams(options['eps'], load_configuration(options['config']), options['truncation'])
            field = mcgehee_t_field(params) if flow == FlowTime.T else mcgehee_tau_field(params)
            state0 = [x0, y0, options['s0'], theta0]

        t_eval = np.linspace(start, end, options['points'])
        trajectory = integrate(field, state0, (start, end), options['tol'], time_variable=flow, t_eval=t_eval)
        self.write_csv(trajectory_header(trajectory), trajectory_rows(trajectory, theta0))
