############################################################################
### NucWave - STRIP PLACEMENT
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from typing import Optional, Union

# Third party imports
import numpy as np
import pandas as pd

# Local modules imports
from helper_functions import write_csv
from modes.mode_set import TwoModeParams
from strips.strip_array import StripError






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def _beat(two_mode: TwoModeParams) -> tuple[float, float]:
    delta_q = float(two_mode['delta_q'])
    if delta_q == 0:
        raise StripError('Strip placement needs a non-zero wavenumber difference delta_q.')
    return delta_q, float(two_mode['delta_phi'])



def constructive_positions(n: int, two_mode: TwoModeParams, first: int = 0) -> np.ndarray:

    '''
    Strip positions in phase with the accumulated scattered field,
    x_k = (pi k - delta_phi) / delta_q for k = first, ..., first + n - 1.
    '''

    delta_q, delta_phi = _beat(two_mode)
    k = np.arange(first, first + int(n))
    return (np.pi * k - delta_phi) / delta_q



def destructive_positions(n: int, two_mode: TwoModeParams, first: int = 0) -> np.ndarray:

    '''
    Strip positions at the nodes of the neighbours' scattered fields,
    x_k = (pi k/2 - delta_phi) / delta_q: half the constructive spacing.
    '''

    delta_q, delta_phi = _beat(two_mode)
    k = np.arange(first, first + int(n))
    return (0.5 * np.pi * k - delta_phi) / delta_q



def parity_exponents(N: int) -> tuple[int, int]:
    '''Strips in the (even, odd) sub-ensembles of an N strip destructive chain.'''
    N = int(N)
    if N < 1:
        raise StripError(f'Strip count must be >= 1, got {N}.')
    return N // 2, (N + 1) // 2



def parity_transmissions(N: int,
                         chi: Union[complex, np.ndarray],
                         delta_q: float,
                         x: float,
                         beta1: complex,
                         beta2: complex,
                         q_bar: complex = 0.0) -> tuple:

    '''
    Even and odd sub-ensemble transmissions of an ideal destructive chain
    (equal couplings, no attenuation mismatch, strips at (n-1) pi/(2 delta_q)),
    and their combination
    T = exp(i q_bar x) (T_odd + T_even i (beta1 - beta2)/(beta1 + beta2)).

    Parameters:
    q_bar: Mean wavenumber relative to the carrier, including i kappa_bar.
    '''

    n_even, n_odd = parity_exponents(N)
    beta1 = complex(beta1)
    beta2 = complex(beta2)
    if beta1 + beta2 == 0:
        raise StripError('The input field vanishes at the first strip (beta1 + beta2 = 0).')
    chi = np.asarray(chi, dtype=complex)
    T_even = np.sin(delta_q * x) * (1.0 + chi) ** n_even
    T_odd = np.cos(delta_q * x) * (1.0 + chi) ** n_odd
    weight = 1j * (beta1 - beta2) / (beta1 + beta2)
    T_total = np.exp(1j * complex(q_bar) * x) * (T_odd + T_even * weight)
    unwrap = (lambda a: a[()] if a.ndim == 0 else a)
    return unwrap(T_even), unwrap(T_odd), unwrap(T_total)



def layout_frame(positions: np.ndarray) -> pd.DataFrame:
    positions = np.asarray(positions, dtype=float)
    return pd.DataFrame({'index': np.arange(len(positions)), 'x': positions})



def write_layout(positions: np.ndarray, filename: str, path: Optional[str] = None) -> str:
    return write_csv(layout_frame(positions), filename, path)



def read_layout(filename: str) -> np.ndarray:

    '''
    Reads an (index, x) layout. Rows are ordered by index; positions in m.
    '''

    df = pd.read_csv(filename)
    missing = {'index', 'x'} - set(df.columns)
    if missing:
        raise StripError(f'Layout file {filename!r} lacks columns {sorted(missing)}.')
    df = df.sort_values('index')
    if not np.array_equal(df['index'].to_numpy(), np.arange(len(df))):
        raise StripError(f'Layout file {filename!r}: indices must be 0..n-1 without gaps.')
    return df['x'].to_numpy(dtype=float)
