"""
Celery tasks for sweep points.

Each task takes and returns JSON-safe values so it can run on a worker. In
eager mode (the default) sweeps run on a local thread pool instead.
"""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor

from celery import group, shared_task
from django.conf import settings

from cli.writers import encode_complex
from eft.amplitudes import anomaly_flow, renormalize_odd, t_matrix_odd
from eft.couplings import RenormConditions, Scheme
from extension.params import params_from_dict
from scattering.amplitudes import reflection_transmission
from scattering.bound_states import smatrix_poles
from scattering.observables import eigen_observables, observables_from_t

logger = logging.getLogger(__name__)

SCATTER_COLUMNS = ['k', 'R_plus', 'R_minus', 'T_plus', 'T_minus',
                   'delta_plus', 'delta_minus', 'theta', 'phi_rel', 'phase_undefined', 'poles']

RGFLOW_COLUMNS = ['mu', 'c1_mod', 'c0', 'k_cot_theta']

ANOMALY_COLUMNS = ['mu', 'c1_mod', 'c0', 'k_cot_theta', 'inverse_mixing_length', 'pole', 'T00', 'T01']


def _k_cot_theta(t, k):
    mixing = observables_from_t(t)
    if mixing.phase_undefined or mixing.theta == 0:
        return None
    return k / math.tan(mixing.theta)


@shared_task
def scatter_point(params: dict, k: float) -> dict:
    extension = params_from_dict(params)
    amps = reflection_transmission(extension, k)
    obs = eigen_observables(extension, k)
    return {
        'k': k,
        'R_plus': encode_complex(amps.r_plus),
        'R_minus': encode_complex(amps.r_minus),
        'T_plus': encode_complex(amps.t_plus),
        'T_minus': encode_complex(amps.t_minus),
        'delta_plus': obs.delta_plus,
        'delta_minus': obs.delta_minus,
        'theta': obs.theta,
        'phi_rel': obs.phi_rel,
        'phase_undefined': obs.phase_undefined,
        'poles': [pole.kappa for pole in smatrix_poles(extension)],
    }


@shared_task
def rgflow_point(conditions: dict, mu: float, k: float) -> dict:
    """Renormalized odd sector in PDS(mu): c0 runs, |c1| and the mixing angle do not."""
    conds = RenormConditions(**conditions)
    scheme = Scheme.pds(mu)
    couplings = renormalize_odd(conds, scheme)
    t = t_matrix_odd(couplings.c0, couplings.c1, couplings.c1_tilde, scheme, k)
    return {
        'mu': mu,
        'c1_mod': math.sqrt(couplings.c1_mod_squared),
        'c0': couplings.c0,
        'k_cot_theta': _k_cot_theta(t, k),
    }


@shared_task
def anomaly_point(kappa0: float, mu: float, k: float) -> dict:
    """Bare c0 = 0: the mixing angle runs with mu."""
    flow = anomaly_flow(kappa0, mu, k)
    t = flow.t_matrix
    return {
        'mu': mu,
        'c1_mod': flow.c1_mod,
        'c0': 0.0,
        'k_cot_theta': flow.k_cot_theta,
        'inverse_mixing_length': flow.inverse_mixing_length,
        'pole': flow.pole,
        'T00': encode_complex(t[0, 0]),
        'T01': encode_complex(t[0, 1]),
    }


def worker_count() -> int:
    threads = getattr(settings, 'POINTSCAT_THREADS', 0)
    return threads if threads > 0 else (os.cpu_count() or 1)


def run_sweep(task, calls) -> list:
    """
    Evaluate `task` once per argument tuple and return results in call order.
    Eager mode uses a thread pool capped by POINTSCAT_THREADS; otherwise the
    points go to the Celery worker as one group.
    """
    calls = [tuple(args) for args in calls]
    if not calls:
        return []
    if getattr(settings, 'CELERY_TASK_ALWAYS_EAGER', True):
        with ThreadPoolExecutor(max_workers=min(worker_count(), len(calls))) as pool:
            return list(pool.map(lambda args: task(*args), calls))
    logger.info(f"Dispatching {len(calls)} {task.name} points to the worker")
    timeout = getattr(settings, 'CELERY_TASK_TIME_LIMIT', None)
    return group(task.s(*args) for args in calls).apply_async().get(timeout=timeout)
