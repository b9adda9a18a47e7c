from apps.core.management.base import MelnikovCommand, load_configuration
from apps.harmonics.services import coefficient_report


class Command(MelnikovCommand):
    help = 'Imprime c, d, d^(l) e as tabelas harmônicas de uma configuração em JSON.'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='configuration JSON file')
        parser.add_argument('--lmax', type=int, default=4)
        parser.add_argument('--jmax', type=int, default=8)

    def run(self, **options):
        config = load_configuration(options['config'])
        self.write_json(coefficient_report(config, options['lmax'], options['jmax']))
