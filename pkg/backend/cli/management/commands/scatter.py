from cli.base import EXTENSION_OPTIONS, PointscatCommand, add_extension_arguments
from cli.runner import RunRequest


class Command(PointscatCommand):
    help = 'Reflection/transmission amplitudes, eigenphases and mixing angles over a momentum sweep'
    command = 'scatter'

    def add_command_arguments(self, parser):
        add_extension_arguments(parser)
        parser.add_argument('--k', type=float, help='Single momentum')
        parser.add_argument('--k-min', type=float)
        parser.add_argument('--k-max', type=float)
        parser.add_argument('--k-steps', type=int)
        parser.add_argument('--spacing', choices=['linear', 'log'])

    def build_request(self, options):
        return RunRequest(
            command=self.command,
            params=self.pick(options, EXTENSION_OPTIONS),
            sweep=self.pick(options, ['k', 'k_min', 'k_max', 'k_steps', 'spacing']),
        )
