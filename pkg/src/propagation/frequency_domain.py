############################################################################
### NucWave - FREQUENCY DOMAIN PROPAGATION
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
from typing import Union

# Third party imports
import numpy as np
import scipy.linalg

# Local modules imports
from propagation.effective_system import EffectiveSystem, FieldSolution



logger = logging.getLogger(__name__)






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def propagate_frequency(system: EffectiveSystem,
                        x: float,
                        omega: Union[float, np.ndarray]) -> np.ndarray:

    '''
    Mode amplitudes beta(x, omega) = exp((iQ - i zeta/2 F Lambda) x) beta0.

    Parameters:
    x: Propagation distance in m, x >= 0.
    omega: Detuning(s) from resonance in 1/s.

    Returns:
    Array of shape omega.shape + (n_modes,).
    '''

    x = float(x)
    if x < 0:
        raise ValueError(f'Propagation distance must be non-negative, got {x}.')
    generator = system.generator(omega)
    propagator = scipy.linalg.expm(generator * x)
    return propagator @ system.beta0



def total_field(system: EffectiveSystem,
                x: float,
                omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    out = propagate_frequency(system, x, omega).sum(axis=-1)
    return out[()] if np.ndim(out) == 0 else out



def solve_frequency(system: EffectiveSystem,
                    x: np.ndarray,
                    omega: np.ndarray) -> FieldSolution:

    '''
    Mode amplitudes over an (x, omega) grid. Each x uses one batched matrix
    exponential over all frequencies.
    '''

    x = np.atleast_1d(np.asarray(x, dtype=float))
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    generator = system.generator(omega)
    beta = np.empty((len(x), len(omega), system.n_modes), dtype=complex)
    for i, xi in enumerate(x):
        if xi < 0:
            raise ValueError(f'Propagation distance must be non-negative, got {xi}.')
        beta[i] = scipy.linalg.expm(generator * xi) @ system.beta0
    logger.debug('Solved %d x %d frequency grid for %r', len(x), len(omega), system)
    return FieldSolution(x=x, omega=omega, beta=beta)
