import argparse
import json
import re
import sys

import numpy as np

from ..channels.randomization import ROUNDING_MODES
from ..numerics.quadrature import CLOSED_FORM_FACTORIAL
from ..utils.constants import STP_PRESSURE, STP_TEMPERATURE
from ..utils.errors import DomainError
from .register import INTEGRAL_METHODS, REPORT_FORMATS, SIM_MODES


WANDB_MODES = ('disabled', 'offline', 'online')
SWEEP_PARAMETERS = ('temperature_k', 'pressure_pa', 'radius_m')

# start:stop:count with an optional (log) suffix
RANGE_PATTERN = re.compile(r'^\s*([^:]+):([^:]+):([^:(]+)(\(log\))?\s*$')


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors as one JSON line on stderr."""

    def error(self, message):
        print(json.dumps({'error': 'usage_error', 'message': message}), file=sys.stderr)
        sys.exit(2)

    def add_argument(self, *names, **kwargs):
        # wandb sweeps pass parameters as --dest_name=value
        aliases = tuple('--' + n[2:].replace('-', '_') for n in names
                        if n.startswith('--') and '-' in n[2:])
        return super().add_argument(*names, *aliases, **kwargs)


def _add_species_args(parser):
    parser.add_argument('--species', type=str, default='N2')
    parser.add_argument('--species-file', type=str, default=None,
                        help='key=value species records overriding the built-ins')

def _add_channel_args(parser):
    parser.add_argument('--gain', type=float, default=None,
                        help='calibrated per-collision gain, reported next to 2 lambda / r')
    parser.add_argument('--integral-method', type=str, default=CLOSED_FORM_FACTORIAL,
                        choices=INTEGRAL_METHODS)
    parser.add_argument('--rounding', type=str, default='ceil', choices=ROUNDING_MODES)

def make_arg_parser():
    parser = ArgumentParser(prog='unruh-gas',
        description='Vacuum-radiation momentum diffusion in a colliding gas')
    subparsers = parser.add_subparsers(dest='command', required=True)

    # Estimate both channels for one gas state
    estimate = subparsers.add_parser('estimate')
    _add_species_args(estimate)
    estimate.add_argument('--temperature-k', type=float, default=STP_TEMPERATURE)
    estimate.add_argument('--pressure-pa', type=float, default=STP_PRESSURE)
    estimate.add_argument('--radius-m', type=float, default=None)
    _add_channel_args(estimate)
    estimate.add_argument('--calibrate-rmv-hbar', type=float, default=None)
    estimate.add_argument('--calibrate-alpha', type=float, default=None)
    estimate.add_argument('--k-inject', type=float, default=None,
                          help='wavenumber (1/m) to report a wavelength and cross-section for')
    estimate.add_argument('--format', type=str, default='human_table', choices=REPORT_FORMATS)

    # Bose power integral, every method side by side
    integrate = subparsers.add_parser('integrate')
    integrate.add_argument('--alpha', type=float, required=True)
    integrate.add_argument('--p', type=int, default=8)
    integrate.add_argument('--methods', type=str, nargs='+', default=list(INTEGRAL_METHODS),
                           choices=INTEGRAL_METHODS)
    integrate.add_argument('--format', type=str, default='human_table', choices=REPORT_FORMATS)

    # Hard-sphere simulation
    simulate = subparsers.add_parser('simulate')
    simulate.add_argument('--particles', type=int, default=500)
    simulate.add_argument('--packing', type=float, default=0.01)
    simulate.add_argument('--seed', type=int, default=0)
    simulate.add_argument('--seeds', type=int, nargs='+', default=None,
                          help='run an ensemble, one simulation per seed')
    simulate.add_argument('--workers', type=int, default=None)
    simulate.add_argument('--mode', type=str, default='twin', choices=SIM_MODES)
    simulate.add_argument('--perturbation', type=float, default=1e-9)
    simulate.add_argument('--max-collisions', type=int, default=20,
                          help='collisions per particle before the run stops')
    simulate.add_argument('--record-every', type=int, default=1)
    _add_species_args(simulate)
    simulate.add_argument('--temperature-k', type=float, default=STP_TEMPERATURE)
    simulate.add_argument('--output', type=str, default=None)
    simulate.add_argument('--progress', default=False, action='store_true')
    simulate.add_argument('--wandb-mode', type=str, default='disabled', choices=WANDB_MODES)
    simulate.add_argument('--log-every', type=int, default=100)
    simulate.add_argument('--format', type=str, default='json', choices=REPORT_FORMATS)

    # Estimates over a grid in one of T, P or r
    sweep = subparsers.add_parser('sweep')
    _add_species_args(sweep)
    sweep.add_argument('--temperature-k', type=str, default=str(STP_TEMPERATURE),
                       metavar='VALUE|START:STOP:COUNT[(log)]')
    sweep.add_argument('--pressure-pa', type=str, default=str(STP_PRESSURE),
                       metavar='VALUE|START:STOP:COUNT[(log)]')
    sweep.add_argument('--radius-m', type=str, default=None,
                       metavar='VALUE|START:STOP:COUNT[(log)]')
    _add_channel_args(sweep)
    sweep.add_argument('--format', type=str, default='csv', choices=REPORT_FORMATS)

    return parser

def is_range(text):
    return text is not None and ':' in text

def parse_range(text):
    """
    Parses `start:stop:count` (linear) or `start:stop:count(log)`.

    Returns:
        grid: float array of `count` points, endpoints included
    """
    match = RANGE_PATTERN.match(text)
    if match is None:
        raise DomainError('malformed range {!r}, expected START:STOP:COUNT[(log)]'.format(text))
    try:
        start, stop = float(match.group(1)), float(match.group(2))
        count = int(match.group(3))
    except ValueError:
        raise DomainError('malformed range {!r}, non-numeric field'.format(text))
    if count < 1:
        raise DomainError('range {!r} is empty'.format(text))

    if match.group(4):
        if not (start > 0 and stop > 0):
            raise DomainError('log range {!r} needs positive endpoints'.format(text))
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)

def parse_value(text, name):
    try:
        return float(text)
    except ValueError:
        raise DomainError('{} must be a number or a range, got {!r}'.format(name, text))

def make_and_parse_args(argv=None):
    parser = make_arg_parser()
    args = parser.parse_args(argv)
    return args
