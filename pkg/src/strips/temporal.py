############################################################################
### NucWave - STRIP TEMPORAL RESPONSE
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from math import factorial
from typing import Union

# Third party imports
import numpy as np
from scipy.special import binom

# Local modules imports
from propagation.time_domain import bessel_time_response



# Degrees below this use the explicit binomial sum.
EXPLICIT_SUM_DEGREE = 5






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def laguerre_sum(n: int, alpha: float, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
    '''L_n^(alpha)(z) = sum_m (-1)^m binomial(n + alpha, n - m) z^m / m!.'''
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    for m in range(n + 1):
        out += (-1) ** m * binom(n + alpha, n - m) * z ** m / factorial(m)
    return out[()] if out.ndim == 0 else out



def generalized_laguerre(n: int, alpha: float, z: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:

    '''
    Generalized Laguerre polynomial L_n^(alpha)(z) for complex z, from the
    three-term recurrence
    (k+1) L_(k+1) = (2k + 1 + alpha - z) L_k - (k + alpha) L_(k-1).
    '''

    n = int(n)
    if n < 0:
        raise ValueError(f'Laguerre degree must be >= 0, got {n}.')
    if n < EXPLICIT_SUM_DEGREE:
        return laguerre_sum(n, alpha, z)
    z = np.asarray(z, dtype=complex)
    previous = np.ones(z.shape, dtype=complex)
    current = 1.0 + alpha - z
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + alpha - z) * current - (k + alpha) * previous) / (k + 1)
    return current[()] if current.ndim == 0 else current



def laguerre_response(n: int,
                      nu0: complex,
                      gamma: float,
                      t: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:

    '''
    Scattered response of n constructively stacked strips, the inverse
    transform of (1 + chi(omega))^n - 1:
    R_n(t) = i nu0 exp(-gamma t/2 + i nu0 t) L_(n-1)^(1)(-i nu0 t) for t >= 0.
    '''

    if int(n) < 1:
        raise ValueError(f'Strip count must be >= 1, got {n}.')
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    positive = t >= 0
    tp = t[positive]
    nu0 = complex(nu0)
    out[positive] = (1j * nu0 * np.exp(-0.5 * gamma * tp + 1j * nu0 * tp)
                     * generalized_laguerre(int(n) - 1, 1, -1j * nu0 * tp))
    return out[()] if out.ndim == 0 else out



def bessel_limit_check(n_strips: int,
                       total_tau_eff: complex,
                       t: np.ndarray,
                       gamma: float) -> tuple[np.ndarray, np.ndarray]:

    '''
    Strip chain response next to the bulk forward scattering response for the
    same total effective depth tau_eff = n tau tr(Lambda).

    Returns:
    (laguerre series, bessel series) over t.
    '''

    total_tau_eff = complex(total_tau_eff)
    nu0 = 0.25j * gamma * total_tau_eff / int(n_strips)
    strips = laguerre_response(n_strips, nu0, gamma, t)
    bulk = bessel_time_response(total_tau_eff, 1.0, 1.0, gamma, t)
    return np.asarray(strips), np.asarray(bulk)
