from apps.core.management.base import MelnikovCommand, load_configuration
from apps.melnikov.services import classify, verdict_report


class Command(MelnikovCommand):
    help = 'Decide a transversalidade para uma configuração e imprime o veredito em JSON.'

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='configuration JSON file')
        parser.add_argument('--lmax', type=int, default=4)
        parser.add_argument('--jmax', type=int, default=None)

    def run(self, **options):
        config = load_configuration(options['config'])
        # --tol é o corte de "coeficiente nulo"
        verdict = classify(config, options['lmax'], options['jmax'], options['tol'])
        self.write_json(verdict_report(verdict))
