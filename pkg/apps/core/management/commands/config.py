from apps.configurations.serializers import CentralityReportSerializer
from apps.configurations.services import BUILDERS, build_named, configuration_to_payload
from apps.configurations.utils import cc_residual, lambda_of
from apps.core.management.base import MelnikovCommand, load_configuration


class Command(MelnikovCommand):
    help = (
        'Valida um arquivo de configuração (validate <config.json>) ou constrói '
        'uma configuração nomeada (build <builder> [params]) e imprime o JSON.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=('validate', 'build'))
        parser.add_argument('target', help=f'config.json, or a builder: {", ".join(BUILDERS)}')
        parser.add_argument('params', nargs='*', help='builder parameters')
        parser.add_argument('--normalize', action='store_true', help='polygon: rescale to unit angular velocity')

    def run(self, **options):
        if options['action'] == 'build':
            config = build_named(options['target'], options['params'], options['normalize'])
            self.write_json(configuration_to_payload(config))
            return

        config = load_configuration(options['target'])
        report = cc_residual(config)
        # NotCentralError sai com código 2
        lam = lambda_of(config)
        self.write_json(
            {
                'configuration': configuration_to_payload(config),
                'centrality': CentralityReportSerializer(report).data,
                'lambda': lam,
            }
        )
