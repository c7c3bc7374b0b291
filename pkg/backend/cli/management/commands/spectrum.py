from cli.base import EXTENSION_OPTIONS, PointscatCommand, add_extension_arguments
from cli.runner import RunRequest


class Command(PointscatCommand):
    help = 'Two-body levels in a harmonic trap (3D scattering length or 1D point interaction), in units of omega'
    command = 'spectrum'

    def add_command_arguments(self, parser):
        parser.add_argument('--dim', type=int, choices=[1, 3])
        parser.add_argument('--a', type=float, help='3D scattering length')
        parser.add_argument('--unitary', action='store_const', const=True, help='3D unitary limit, 1/a = 0')
        parser.add_argument('--robin', type=float, help='Half-line Robin parameter, -1/a')
        add_extension_arguments(parser)
        parser.add_argument('--m', type=float, help='Reduced mass (default 1)')
        parser.add_argument('--omega', type=float, help='Trap frequency (default 1)')
        parser.add_argument('--levels', type=int, help='Number of levels (default 5)')

    def build_request(self, options):
        return RunRequest(
            command=self.command,
            params=self.pick(options, ['dim', 'a', 'unitary', 'robin', 'm', 'omega'] + EXTENSION_OPTIONS),
            sweep=self.pick(options, ['levels']),
        )
