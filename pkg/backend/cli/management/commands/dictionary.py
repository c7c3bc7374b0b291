from cli.base import EXTENSION_OPTIONS, PointscatCommand, add_extension_arguments
from cli.runner import RunRequest

COUPLING_OPTIONS = ['c0', 'c1', 'c1_tilde', 'c2p']


class Command(PointscatCommand):
    help = 'Translate point-interaction parameters to NDR contact couplings, or back when couplings are given'
    command = 'dictionary'

    def add_command_arguments(self, parser):
        add_extension_arguments(parser)
        parser.add_argument('--c0', type=float)
        parser.add_argument('--c1', type=float)
        parser.add_argument('--c1-tilde', type=float)
        parser.add_argument('--c2p', type=float)

    def build_request(self, options):
        return RunRequest(command=self.command, params=self.pick(options, EXTENSION_OPTIONS + COUPLING_OPTIONS))
