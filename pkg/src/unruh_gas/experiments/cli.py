import json
import sys

import wandb

from ..utils.constants import WANDB_ENTITY, WANDB_PROJECT
from ..utils.errors import SimulationIntegrityError, UnruhGasError
from ..utils.logging import log
from .argument_handling import make_and_parse_args
from .commands import cmd_estimate, cmd_integrate, cmd_simulate, cmd_sweep
from .register import create_formatter


COMMANDS = {
    'estimate': cmd_estimate,
    'integrate': cmd_integrate,
    'simulate': cmd_simulate,
    'sweep': cmd_sweep,
}

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_INTEGRITY_ERROR = 3


def emit_error(kind, message, state=None):
    error = {'error': kind, 'message': message}
    if state:
        error['state'] = state
    print(json.dumps(error, default=str), file=sys.stderr)

def run_command(args):
    if args.command != 'simulate':
        return COMMANDS[args.command](args)

    wandb.init(project=WANDB_PROJECT, entity=WANDB_ENTITY, mode=args.wandb_mode,
               config=vars(args))
    try:
        return cmd_simulate(args)
    finally:
        wandb.finish()

def main(argv=None):
    try:
        args = make_and_parse_args(argv)
    except SystemExit as e:
        return e.code

    try:
        report = run_command(args)
    except SimulationIntegrityError as e:
        emit_error(e.kind, str(e), e.state)
        return EXIT_INTEGRITY_ERROR
    except UnruhGasError as e:
        emit_error(e.kind, str(e))
        return EXIT_INPUT_ERROR
    except OSError as e:
        emit_error('io_error', str(e))
        return EXIT_INPUT_ERROR

    output = create_formatter(args.format)(report)
    if getattr(args, 'output', None):
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(output)
        log('Wrote {} output to {}'.format(args.format, args.output))
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
