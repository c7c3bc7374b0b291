"""
Translation between joining-condition parameters and NDR contact couplings.

With D = alpha + gamma + 2 cos(phi):

    c0 = -2 beta / D    c2p = 2 delta / D    c1 = (alpha - gamma) / D    c1_tilde = 2 sin(phi) / D
"""

import logging
import math

from core.exceptions import DictionarySingular, NoInverse
from eft.couplings import ContactCouplings, Scheme
from extension.params import ExtensionParams, validate_extension

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-12


def dictionary_denominator(params: ExtensionParams) -> float:
    return params.alpha + params.gamma + 2 * math.cos(params.phi)


def sae_to_couplings(params: ExtensionParams) -> ContactCouplings:
    denominator = dictionary_denominator(params)
    if abs(denominator) < SINGULAR_TOL:
        raise DictionarySingular(
            f"alpha + gamma + 2 cos(phi) = {denominator:.3g} for {params.as_tuple()}"
        )
    return ContactCouplings(
        c0=-2 * params.beta / denominator,
        c1=(params.alpha - params.gamma) / denominator,
        c1_tilde=2 * math.sin(params.phi) / denominator,
        c2p=2 * params.delta / denominator,
        scheme=Scheme.ndr(),
    )


def couplings_to_sae(couplings: ContactCouplings) -> ExtensionParams:
    """
    Inverse of sae_to_couplings. Substituting the dictionary into the
    determinant constraint and cos^2 + sin^2 = 1 fixes

        D = 4 / sqrt((1 - A)^2 + 4 c1_tilde^2),   A = |c1|^2 - c0 c2p

    which has no finite solution on the boundary A = 1, c1_tilde = 0.
    """
    if couplings.scheme.kind != Scheme.NDR:
        logger.warning(f"Couplings given in {couplings.scheme.kind}; the dictionary is read in NDR")
    c0, c2 = couplings.c0, couplings.c2p
    excess = couplings.c1_mod_squared - c0 * c2
    p = 1 - excess
    discriminant = p * p + 4 * couplings.c1_tilde ** 2
    if discriminant <= SINGULAR_TOL ** 2:
        raise NoInverse(
            f"|c1|^2 - c0*c2p = {excess:.12g} with c1_tilde = 0 is only reached at infinite parameters"
        )
    denominator = 4 / math.sqrt(discriminant)
    total = (1 + excess) * denominator / 2
    difference = couplings.c1 * denominator
    phi = math.atan2(couplings.c1_tilde * denominator / 2, denominator * p / 4)
    logger.debug(f"Inverse dictionary denominator D={denominator:.12g}, phi={phi:.12g}")
    return validate_extension(
        (total + difference) / 2,
        -c0 * denominator / 2,
        (total - difference) / 2,
        c2 * denominator / 2,
        phi,
    )
