"""
Common base for the batch commands: --params/--format/--out handling and
exit codes carried on CommandError.
"""

from django.core.management.base import BaseCommand, CommandError

from cli.runner import RunRequest, run
from extension.params import FIELDS

EXTENSION_OPTIONS = list(FIELDS)


def float_list(value: str) -> list:
    return [float(item) for item in value.replace(',', ' ').split()]


class PointscatCommand(BaseCommand):
    """
    Subclasses set `command`, add their flags in `add_command_arguments` and
    split the parsed options in `build_request`. Flags left unset fall back
    to the --params file.
    """
    command = None

    def add_arguments(self, parser):
        parser.add_argument('--params', dest='params_file', metavar='FILE.json',
                            help='JSON object with parameters; flags override its values')
        parser.add_argument('--format', choices=['csv', 'json'], default='csv')
        parser.add_argument('--out', metavar='PATH', help='Write rows here instead of stdout')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_request(self, options: dict) -> RunRequest:
        raise NotImplementedError

    @staticmethod
    def pick(options: dict, names) -> dict:
        """Options that were given on the command line."""
        return {name: options[name] for name in names if options.get(name) is not None}

    def handle(self, *args, **options):
        request = self.build_request(options)
        request.params_file = options.get('params_file')
        request.output = self.pick(options, ['format', 'out'])
        code = run(request, self.stdout, self.stderr)
        if code:
            raise CommandError(f"{self.command} failed with exit code {code}", returncode=code)


def add_extension_arguments(parser):
    for name in EXTENSION_OPTIONS:
        parser.add_argument(f'--{name}', type=float)
