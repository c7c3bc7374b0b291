"""
Request execution shared by the management commands.

A RunRequest carries raw values (a parameter file merged under flag values);
`run` validates them with the cli serializers, evaluates the sweep, writes
the rows and returns the process exit code.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from rest_framework import serializers

from cli.checks import run_checks
from cli.serializers import (
    CouplingsSerializer,
    ExtensionParamsSerializer,
    MomentumSweepSerializer,
    MuSweepSerializer,
    OutputSerializer,
    RenormConditionsSerializer,
    TrapSerializer,
)
from cli.tasks import (
    ANOMALY_COLUMNS,
    RGFLOW_COLUMNS,
    SCATTER_COLUMNS,
    anomaly_point,
    rgflow_point,
    run_sweep,
    scatter_point,
)
from cli.writers import serialize, write_output
from core.exceptions import CheckFailure, IoFailure, PointInteractionError, ValidationFailure
from eft.couplings import couplings_to_dict
from eft.dictionary import couplings_to_sae, sae_to_couplings
from extension.params import FIELDS, params_to_dict
from trap.spectrum import Extension1D, Robin, ScatteringLength3D, TrapProblem, solve

logger = logging.getLogger(__name__)

COMMANDS = ('scatter', 'spectrum', 'dictionary', 'rgflow', 'check')

SPECTRUM_COLUMNS = ['index', 'E_over_omega', 'bracket_lo', 'bracket_hi', 'residual']

COUPLING_FIELDS = ('c0', 'c1', 'c1_tilde', 'c2p')

DICTIONARY_COLUMNS = list(FIELDS) + list(COUPLING_FIELDS) + ['direction', 'round_trip_residual']

CHECK_COLUMNS = ['name', 'passed', 'detail']


@dataclass
class RunRequest:
    command: str
    params: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    params_file: Optional[str] = None


def load_params_file(path: str) -> dict:
    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except OSError as e:
        raise IoFailure(f"Could not read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ValidationFailure(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ValidationFailure(f"{path} must hold a JSON object")
    return data


def _validated(serializer_class, data):
    serializer = serializer_class(data=data)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


def _momenta(sweep: dict) -> list:
    grid = _validated(MomentumSweepSerializer, sweep)
    if grid['spacing'] == 'log':
        values = np.geomspace(grid['k_min'], grid['k_max'], grid['k_steps'])
    else:
        values = np.linspace(grid['k_min'], grid['k_max'], grid['k_steps'])
    return [float(k) for k in values]


# ===========================================
# Commands
# ===========================================

def _scatter(request: RunRequest):
    params = _validated(ExtensionParamsSerializer, request.params)
    wire = params_to_dict(params)
    rows = run_sweep(scatter_point, [(wire, k) for k in _momenta(request.sweep)])
    return rows, SCATTER_COLUMNS


def _spectrum(request: RunRequest):
    trap = _validated(TrapSerializer, {**request.params, **request.sweep})
    if trap['dim'] == 1:
        interaction = Extension1D(_validated(ExtensionParamsSerializer, request.params))
    elif trap.get('robin') is not None:
        interaction = Robin(trap['robin'])
    elif trap['unitary']:
        interaction = ScatteringLength3D(math.inf)
    else:
        interaction = ScatteringLength3D(trap['a'])
    result = solve(TrapProblem(trap['m'], trap['omega'], interaction), trap['levels'])
    return list(result.rows()), SPECTRUM_COLUMNS


def _round_trip(first: dict, second: dict, names) -> float:
    return max(abs(first[name] - second[name]) for name in names)


def _dictionary(request: RunRequest):
    if any(name in request.params for name in COUPLING_FIELDS):
        couplings = _validated(CouplingsSerializer, request.params)
        params = couplings_to_sae(couplings)
        residual = _round_trip(couplings_to_dict(couplings), couplings_to_dict(sae_to_couplings(params)),
                               COUPLING_FIELDS)
        direction = 'inverse'
    else:
        params = _validated(ExtensionParamsSerializer, request.params)
        couplings = sae_to_couplings(params)
        residual = _round_trip(params_to_dict(params), params_to_dict(couplings_to_sae(couplings)), FIELDS)
        direction = 'forward'
    logger.debug(f"Dictionary {direction}: round-trip residual {residual:.3e}")
    row = {**params_to_dict(params), **couplings_to_dict(couplings),
           'direction': direction, 'round_trip_residual': residual}
    return [row], DICTIONARY_COLUMNS


def _rgflow(request: RunRequest):
    sweep = _validated(MuSweepSerializer, request.sweep)
    conds = _validated(RenormConditionsSerializer, request.params)
    k = sweep['k']
    if request.params.get('anomaly'):
        rows = run_sweep(anomaly_point, [(conds.kappa0, mu, k) for mu in sweep['mu']])
        return rows, ANOMALY_COLUMNS
    wire = {'kappa0': conds.kappa0, 'phi_rel': conds.phi_rel, 'a_theta': conds.a_theta}
    rows = run_sweep(rgflow_point, [(wire, mu, k) for mu in sweep['mu']])
    return rows, RGFLOW_COLUMNS


HANDLERS = {
    'scatter': _scatter,
    'spectrum': _spectrum,
    'dictionary': _dictionary,
    'rgflow': _rgflow,
}


def _check(request: RunRequest, stderr):
    seed = int(request.params.get('seed') or 0)
    report = run_checks(seed=seed, only=request.params.get('only') or None)
    stderr.write(f"{report.passed} passed, {report.failed} failed (seed {seed})")
    rows = [{'name': r.name, 'passed': r.passed, 'detail': r.detail} for r in report.results]
    return rows, CHECK_COLUMNS, report.failed


def _error_detail(detail) -> str:
    if isinstance(detail, dict):
        return '; '.join(f"{key}: {_error_detail(value)}" for key, value in detail.items())
    if isinstance(detail, list):
        return '; '.join(_error_detail(item) for item in detail)
    return str(detail)


def run(request: RunRequest, stdout, stderr) -> int:
    """Execute one request; rows go to --out or stdout, diagnostics to stderr."""
    failures = 0
    try:
        if request.command not in COMMANDS:
            raise ValidationFailure(f"Unknown command {request.command!r}")
        if request.params_file:
            values = load_params_file(request.params_file)
            request.params = {**values, **request.params}
            request.sweep = {**values, **request.sweep}
        output = _validated(OutputSerializer, request.output)
        if request.command == 'check':
            rows, columns, failures = _check(request, stderr)
        else:
            rows, columns = HANDLERS[request.command](request)
        write_output(serialize(rows, output['format'], columns), output.get('out'), stdout)
        if failures:
            raise CheckFailure(f"{failures} invariant check(s) failed")
    except serializers.ValidationError as e:
        message = _error_detail(e.detail)
        logger.error(f"{request.command}: invalid request: {message}")
        stderr.write(f"ValidationFailure: {message}")
        return ValidationFailure.exit_code
    except PointInteractionError as e:
        logger.error(f"{request.command}: {type(e).__name__}: {e}")
        stderr.write(f"{type(e).__name__}: {e}")
        return e.exit_code
    return 0
