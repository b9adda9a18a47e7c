from apps.asymptotics.services import (
    IK_HEADER,
    LEADING_HEADER,
    RECURRENCE_HEADER,
    ik_table,
    leading_table,
    recurrence_table,
)
from apps.core.management.base import MelnikovCommand, load_configuration
from apps.utils.exceptions import InvalidInputError


class Command(MelnikovCommand):
    help = (
        'Tabelas assintóticas em CSV: ik (I_k contra a estimativa), recurrence '
        '(J_{k+2} contra δ/(2(k+1)) I_k) e leading (M4, M6 contra as formas dominantes).'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('table', choices=('ik', 'recurrence', 'leading'))
        parser.add_argument('--k', type=int, default=3, help='ik: order of I_k')
        parser.add_argument('--ks', type=int, nargs='+', default=[1, 2, 3, 4, 5, 6], help='recurrence: orders')
        parser.add_argument('--deltas', type=float, nargs='+', default=[30.0, 100.0, 300.0])
        parser.add_argument('--config', default=None, help='leading: configuration JSON file')
        parser.add_argument('--theta0', type=float, default=1.0)
        parser.add_argument('--eps', type=float, default=0.25)
        parser.add_argument('--points', type=int, default=16)

    def run(self, **options):
        tol = self.quad_tol(options)
        table = options['table']
        if table == 'ik':
            self.write_csv(IK_HEADER, ik_table(options['k'], options['deltas'], tol, options['progress']))
        elif table == 'recurrence':
            self.write_csv(RECURRENCE_HEADER, recurrence_table(options['ks'], options['deltas'], tol))
        else:
            if not options['config']:
                raise InvalidInputError('the leading table needs --config')
            config = load_configuration(options['config'])
            rows = leading_table(options['theta0'], options['eps'], config, options['points'], tol)
            self.write_csv(LEADING_HEADER, rows)
