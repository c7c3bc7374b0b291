from cli.base import PointscatCommand
from cli.checks import CHECKS
from cli.runner import RunRequest


class Command(PointscatCommand):
    help = 'Run the cross-module invariant suite; exits 4 when any check fails'
    command = 'check'

    def add_command_arguments(self, parser):
        parser.add_argument('--seed', type=int, help='Seed for the random parameter draws (default 0)')
        parser.add_argument('--only', nargs='+', choices=[name for name, _ in CHECKS])

    def build_request(self, options):
        return RunRequest(command=self.command, params=self.pick(options, ['seed', 'only']))
