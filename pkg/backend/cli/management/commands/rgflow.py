from cli.base import PointscatCommand, float_list
from cli.runner import RunRequest


class Command(PointscatCommand):
    help = 'Running of the parity-odd couplings and mixing angle with the PDS scale mu'
    command = 'rgflow'

    def add_command_arguments(self, parser):
        parser.add_argument('--kappa0', type=float, help='Pole position')
        parser.add_argument('--phi-rel', type=float, help='Relative phase')
        parser.add_argument('--a-theta', type=float, help='Mixing length')
        parser.add_argument('--anomaly', action='store_const', const=True,
                            help='Hold the bare c0 at zero instead of renormalizing it')
        parser.add_argument('--mu', type=float_list, help='Scales, e.g. "0.5,1,10"')
        parser.add_argument('--k', type=float, help='Momentum for k cot(theta) (default 1)')

    def build_request(self, options):
        return RunRequest(
            command=self.command,
            params=self.pick(options, ['kappa0', 'phi_rel', 'a_theta', 'anomaly']),
            sweep=self.pick(options, ['mu', 'k']),
        )
