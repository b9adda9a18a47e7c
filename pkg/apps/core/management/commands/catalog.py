from apps.catalog.services import CASES, catalog_report, run_case, run_catalog
from apps.core.management.base import MelnikovCommand


class Command(MelnikovCommand):
    help = (
        'Recalcula os casos de aplicação e compara com os valores de referência; '
        'sai com código 3 se algum valor ficar fora da tolerância.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('case', help=f'{", ".join(CASES)} or all')

    def run(self, **options):
        name = options['case']
        reports = run_catalog() if name == 'all' else [run_case(name)]
        self.write_json(catalog_report(reports))
