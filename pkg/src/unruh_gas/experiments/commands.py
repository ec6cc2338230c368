from dataclasses import asdict
import itertools
import math

import wandb

from ..channels import (build_report, compare_channels, conducting_sphere_cross_section,
                        estimate_unruh_calibrated, peak_wavelength, scattering_rate)
from ..gases import builtin_species, derive_state, make_catalogue, with_radius
from ..numerics.quadrature import relative_difference
from ..simulation.runner import SimConfig, make_rng, result_document, run_ensemble
from ..utils.constants import STP_PRESSURE
from ..utils.errors import DomainError
from ..utils.logging import log
from .argument_handling import SWEEP_PARAMETERS, is_range, parse_range, parse_value
from .register import create_channel, create_sim_runner, evaluate_integral
from .reporting import Report, flatten, single_report


def resolve_species(args, radius=None):
    catalogue = make_catalogue(args.species_file)
    species = builtin_species(args.species, catalogue)
    if radius is not None:
        species = with_radius(species, radius)
    return species

def gas_fields(state):
    return {
        'species': state.species.name,
        'mass': state.species.mass,
        'radius': state.species.radius,
        'temperature': state.temperature,
        'pressure': state.pressure,
        'number_density': state.number_density,
        'v_rms': state.v_rms,
        'v_mean': state.v_mean,
        'mean_free_path': state.mean_free_path,
        'collision_rate': state.collision_rate,
    }

def randomization_fields(report):
    fields = asdict(report)
    fields.pop('channel')
    return fields

def estimate_document(state, gain=None, integral_method=None, rounding='ceil'):
    """Both channels, each with kinetic (and optionally calibrated) gain."""
    unruh = create_channel('unruh', {'integral_method': integral_method}).estimate(state)
    mdw = create_channel('mdw').estimate(state)
    unruh_report = build_report(state, 'unruh', unruh.delta_theta0, rounding=rounding)
    mdw_report = build_report(state, 'mdw', mdw.delta_theta0, rounding=rounding)

    document = {
        'gas': gas_fields(state),
        'unruh': {**asdict(unruh), **randomization_fields(unruh_report)},
        'mdw': {**asdict(mdw), **randomization_fields(mdw_report)},
        'comparison': compare_channels(unruh_report, mdw_report),
    }
    if gain is not None:
        document['unruh_calibrated_gain'] = randomization_fields(
            build_report(state, 'unruh', unruh.delta_theta0, gain=gain, rounding=rounding))
        document['mdw_calibrated_gain'] = randomization_fields(
            build_report(state, 'mdw', mdw.delta_theta0, gain=gain, rounding=rounding))
    return document, unruh

def cmd_estimate(args):
    species = resolve_species(args, args.radius_m)
    state = derive_state(species, args.temperature_k, args.pressure_pa)
    document, unruh = estimate_document(state, args.gain, args.integral_method, args.rounding)

    if args.calibrate_rmv_hbar is not None or args.calibrate_alpha is not None:
        rmv = args.calibrate_rmv_hbar if args.calibrate_rmv_hbar is not None else unruh.rmv_over_hbar
        calibrated = estimate_unruh_calibrated(rmv, args.calibrate_alpha, state.temperature,
                                               state.v_rms, species.radius, args.integral_method)
        report = build_report(state, 'unruh', calibrated.delta_theta0, gain=args.gain,
                              rounding=args.rounding)
        document['unruh_calibrated'] = {**asdict(calibrated), **randomization_fields(report)}

    if args.k_inject is not None:
        k = args.k_inject
        document['injected_mode'] = {
            'wavenumber': k,
            'wavelength': peak_wavelength(k),
            'cross_section': conducting_sphere_cross_section(k, species.radius),
            'scattering_rate': scattering_rate(k, species.radius, unruh.acceleration),
        }
    return single_report(document)

def cmd_integrate(args):
    results = {method: evaluate_integral(method, args.alpha, args.p) for method in args.methods}
    differences = {}
    for a, b in itertools.combinations(results, 2):
        differences['{}_vs_{}'.format(a, b)] = relative_difference(
            results[a].value, results[b].value)

    document = {
        'alpha': args.alpha,
        'p': args.p,
        'results': {m: {'value': r.value, 'estimated_abs_error': r.estimated_abs_error}
                    for m, r in results.items()},
        'relative_differences': differences,
    }
    return single_report(document)

def make_sim_config(args):
    species = resolve_species(args)
    state = derive_state(species, args.temperature_k, STP_PRESSURE)
    config = SimConfig.from_packing(
        n_particles = args.particles,
        packing = args.packing,
        radius = species.radius,
        speed_scale = state.v_rms,
        seed = args.seed,
        mode = args.mode,
        perturbation = args.perturbation,
        max_collisions_per_particle = args.max_collisions,
        mass = species.mass,
        record_every = args.record_every)
    return config.validate()

def cmd_simulate(args):
    config = make_sim_config(args)
    track = args.wandb_mode != 'disabled'

    if args.seeds:
        log('Running {} seeds...'.format(len(args.seeds)))
        results = run_ensemble(config, args.seeds, args.workers)
        document = {'results': {str(seed): result_document(r) for seed, r in results.items()}}
        rows = [{'seed': seed, **flatten(result_document(r), exclude=('divergence_series',))}
                for seed, r in sorted(results.items())]
        return Report(document, rows)

    log('Starting {} simulation with {} particles...'.format(config.mode, config.n_particles))
    runner = create_sim_runner(config.mode)
    result = runner(config, make_rng(config.seed), progress=args.progress, track=track,
                    log_every=args.log_every)
    log('Simulation complete after {} collisions'.format(result.collisions_elapsed))

    if track:
        summary = {
            'sim_fitted_log_growth': result.fitted_log_growth_per_collision,
            'sim_log_gain': math.log(result.gain) if result.gain else None,
            'sim_decorrelation_collisions': result.decorrelation_collisions}
        wandb.log({k: v for k, v in summary.items() if v is not None})
    return single_report(result_document(result), exclude=('divergence_series',))

def _sweep_grid(args):
    ranged = [name for name in SWEEP_PARAMETERS if is_range(getattr(args, name))]
    if len(ranged) != 1:
        raise DomainError('sweep needs exactly one range among --temperature-k, --pressure-pa '
                          'and --radius-m, got {}'.format(len(ranged)))
    name = ranged[0]
    fixed = {n: parse_value(getattr(args, n), n) for n in SWEEP_PARAMETERS
             if n != name and getattr(args, n) is not None}
    return name, parse_range(getattr(args, name)), fixed

def cmd_sweep(args):
    name, grid, fixed = _sweep_grid(args)
    base = resolve_species(args)

    rows = []
    for value in grid:
        point = dict(fixed, **{name: float(value)})
        species = with_radius(base, point['radius_m']) if 'radius_m' in point else base
        state = derive_state(species, point['temperature_k'], point['pressure_pa'])
        document, _ = estimate_document(state, args.gain, args.integral_method, args.rounding)
        rows.append({**point, **flatten(document)})

    return Report({'parameter': name, 'rows': rows}, rows)
