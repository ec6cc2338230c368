from functools import partial

from ..channels import MdwChannel, UnruhChannel
from ..numerics import quadrature
from ..simulation.runner import MODE_RUNNERS
from ..utils.errors import DomainError
from .reporting import format_csv, format_json, format_table


CHANNELS = {
    'unruh': lambda args: UnruhChannel(args.get('integral_method') or quadrature.CLOSED_FORM_FACTORIAL),
    'mdw': lambda _: MdwChannel(),
}

INTEGRAL_METHODS = {
    method: partial(quadrature.bose_power_integral, method=method)
    for method in quadrature.INTEGRAL_METHODS
}

SIM_MODES = dict(MODE_RUNNERS)

REPORT_FORMATS = {
    'human_table': format_table,
    'csv': format_csv,
    'json': format_json,
}


def _lookup(registry, name, what):
    key = name.lower()
    if key not in registry:
        raise DomainError('{} must be one of {}, got {!r}'.format(
            what, ', '.join(registry), name))
    return registry[key]

def create_channel(name, args=None):
    return _lookup(CHANNELS, name, 'channel')(args or {})

def evaluate_integral(name, alpha, p):
    return _lookup(INTEGRAL_METHODS, name, 'integral method')(alpha, p)

def create_sim_runner(name):
    return _lookup(SIM_MODES, name, 'simulation mode')

def create_formatter(name):
    return _lookup(REPORT_FORMATS, name, 'report format')
