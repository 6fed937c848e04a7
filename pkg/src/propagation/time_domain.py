############################################################################
### NucWave - TIME DOMAIN RESPONSE
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
import warnings
from math import factorial
from typing import Callable, Optional, Sequence, Union

# Third party imports
import numpy as np
import scipy.fft
import scipy.special

# Local modules imports
from propagation.effective_system import EffectiveSystem, input_field
from propagation.frequency_domain import total_field
from propagation.dyson import (
    DysonSpecification,
    dyson_coefficients,
    dyson_time_field,
)



logger = logging.getLogger(__name__)



# Below this |z| the series for J1(z)/z is used.
BESSEL_SERIES_RADIUS = 2.0

# Refuse grids coarser than this (units of gamma).
MAX_SPACING = 0.1

# Warn below this span (units of gamma).
MIN_SPAN = 200.0



class FrequencyGridError(ValueError):
    pass



class FFTSpecification(dict):

    def __init__(self,
                 span=400.0,
                 spacing=0.02,
                 subtract_orders=4,
                 include_prompt=False,
                 coefficients='block',
                 **kwargs):
        super().__init__(
            span=span,
            spacing=spacing,
            subtract_orders=subtract_orders,
            include_prompt=include_prompt,
            coefficients=coefficients,
        )
        self.update(kwargs)






# --------------------------------------------------------------------------
# Analytic single mode response
# --------------------------------------------------------------------------

def bessel_j1_over_z(z: Union[complex, np.ndarray]) -> np.ndarray:

    '''
    J1(z)/z for complex z. Entire and even in z; small arguments use the
    power series sum_k (-z^2/4)^k / (2 k! (k+1)!).
    '''

    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    small = np.abs(z) < BESSEL_SERIES_RADIUS
    if np.any(small):
        w = -0.25 * z[small] ** 2
        term = np.full(w.shape, 0.5, dtype=complex)
        acc = term.copy()
        for k in range(1, 30):
            term = term * w / (k * (k + 1))
            acc += term
        out[small] = acc
    large = ~small
    if np.any(large):
        out[large] = scipy.special.jv(1, z[large]) / z[large]
    return out



def bessel_time_response(xi1: complex,
                         zeta: float,
                         x: float,
                         gamma: float,
                         t: Union[float, np.ndarray],
                         q: complex = 0.0) -> Union[complex, np.ndarray]:

    '''
    Scattered single mode envelope after an impulsive excitation,

        -Theta(t) exp(-gamma t/2) (gamma tau/2) J1(sqrt(tau gamma t))/sqrt(tau gamma t),

    with tau = xi1 zeta x, normalized to the input field. The optional mode
    wavenumber q adds the free propagation phase exp(i q x).
    '''

    t = np.asarray(t, dtype=float)
    tau = complex(xi1) * float(zeta) * float(x)
    out = np.zeros(t.shape, dtype=complex)
    positive = t >= 0
    if tau != 0 and np.any(positive):
        tp = t[positive]
        z = np.sqrt(tau * gamma * tp + 0j)
        out[positive] = (-0.5 * gamma * tau * np.exp(-0.5 * gamma * tp)
                         * bessel_j1_over_z(z) * np.exp(1j * complex(q) * x))
    return out[()] if out.ndim == 0 else out






# --------------------------------------------------------------------------
# FFT inversion
# --------------------------------------------------------------------------

def frequency_grid(gamma: float, spec: Optional[FFTSpecification] = None) -> np.ndarray:

    '''
    Symmetric detuning grid omega_k = omega_min + k d_omega with span and
    spacing given in units of gamma.
    '''

    spec = FFTSpecification() if spec is None else spec
    span = float(spec['span'])
    spacing = float(spec['spacing'])
    if not spacing > 0 or not span > 0:
        raise FrequencyGridError('Frequency span and spacing must be positive.')
    if spacing > MAX_SPACING:
        raise FrequencyGridError(
            f'Frequency spacing {spacing:g} gamma is too coarse: the time window '
            f'2 pi/spacing = {2 * np.pi / spacing:.3g}/gamma cannot hold the decay. '
            f'Use a spacing <= {MAX_SPACING:g} gamma.'
        )
    if span < MIN_SPAN:
        warnings.warn(f'Frequency span {span:g} gamma is below {MIN_SPAN:g} gamma; '
                      'early times will be poorly resolved.', RuntimeWarning)
    n = int(round(span / spacing))
    n += n % 2
    return gamma * spacing * (np.arange(n) - n // 2)



def lorentzian_power_time(k: int, gamma: float, t: np.ndarray) -> np.ndarray:
    '''Time-domain image of F(omega)^k, (gamma/2)^k (-i)^k t^(k-1)/(k-1)! exp(-gamma t/2), t >= 0.'''
    t = np.asarray(t, dtype=float)
    out = (0.5 * gamma) ** k * (-1j) ** k * t ** (k - 1) / factorial(k - 1) * np.exp(-0.5 * gamma * t)
    return np.where(t >= 0, out, 0.0)



def invert_lorentzian_spectrum(spectrum: Callable[[np.ndarray], np.ndarray],
                               tail: Sequence[complex],
                               gamma: float,
                               spec: Optional[FFTSpecification] = None) -> tuple[np.ndarray, np.ndarray]:

    '''
    Time signal s(t) = 1/(2 pi) int S(omega) exp(-i omega t) d omega of a
    spectrum with a Lorentzian tail.

    Parameters:
    spectrum: Callable returning S on an array of detunings (1/s).
    tail: Coefficients b_1..b_K of S ~ sum_k b_k F(omega)^k. They are
        subtracted before the FFT and added back analytically.
    gamma: Line width of F in 1/s.

    Returns:
    (t, s) with t_m = 2 pi m/(N d_omega) over one window.
    '''

    spec = FFTSpecification() if spec is None else spec
    omega = frequency_grid(gamma, spec)
    d_omega = omega[1] - omega[0]
    n = len(omega)
    F = (0.5 * gamma) / (omega + 0.5j * gamma)

    values = np.asarray(spectrum(omega), dtype=complex)
    remainder = values.copy()
    for k, b in enumerate(tail, start=1):
        remainder -= b * F ** k

    t = 2.0 * np.pi * np.arange(n) / (n * d_omega)
    s = d_omega / (2.0 * np.pi) * np.exp(-1j * omega[0] * t) * scipy.fft.fft(remainder)
    for k, b in enumerate(tail, start=1):
        s += b * lorentzian_power_time(k, gamma, t)
    logger.debug('Inverted %d-point spectrum, %d tail orders removed', n, len(tail))
    return t, s



def scattered_tail(system: EffectiveSystem,
                   x: float,
                   orders: int,
                   method: str = 'block') -> np.ndarray:
    '''b_k = (-i zeta/2)^k c_k(x)/B_in(0) for k = 1..orders.'''
    if orders < 1:
        return np.zeros(0, dtype=complex)
    c = dyson_coefficients(system, x, orders, method=method)
    k = np.arange(1, orders + 1)
    return (-0.5j * system.zeta) ** k * c[1:] / system.input_total



def fft_time_response(system: EffectiveSystem,
                      x: float,
                      spec: Optional[FFTSpecification] = None) -> tuple[np.ndarray, np.ndarray]:

    '''
    Scattered field B(x, t) after an impulsive excitation, normalized to the
    total input field at x = 0, from the FFT of the frequency-domain solution
    with the free (prompt) part removed.

    With spec['include_prompt'] the free field is put back as a delta in the
    t = 0 bin.
    '''

    spec = FFTSpecification() if spec is None else spec
    x = float(x)
    if x < 0:
        raise ValueError(f'Propagation distance must be non-negative, got {x}.')
    prompt = complex(input_field(system, x))

    def spectrum(omega: np.ndarray) -> np.ndarray:
        return total_field(system, x, omega) / system.input_total - prompt

    if system.zeta == 0 or x == 0:
        tail = np.zeros(0, dtype=complex)
    else:
        tail = scattered_tail(system, x, int(spec['subtract_orders']), spec['coefficients'])
    t, s = invert_lorentzian_spectrum(spectrum, tail, system.gamma, spec)
    if spec['include_prompt']:
        s[0] += prompt / (t[1] - t[0])
    return t, s



def field_map(system: EffectiveSystem,
              x_grid: Sequence[float],
              spec: Optional[FFTSpecification] = None,
              method: str = 'fft',
              t_grid: Optional[np.ndarray] = None,
              dyson_spec: Optional[DysonSpecification] = None) -> tuple[np.ndarray, np.ndarray]:

    '''
    Scattered field over (x, t).

    Parameters:
    method: 'fft' inverts the matrix exponential solution numerically,
        'dyson' sums the time-domain residue series.
    t_grid: Times in s. Defaults to the FFT window (method 'fft') and is
        required for method 'dyson'.

    Returns:
    (t, field) with field of shape (len(x_grid), len(t)).
    '''

    x_grid = np.atleast_1d(np.asarray(x_grid, dtype=float))
    if method == 'fft':
        rows = []
        t = None
        for x in x_grid:
            t, s = fft_time_response(system, x, spec)
            if t_grid is not None:
                s = np.interp(t_grid, t, s.real) + 1j * np.interp(t_grid, t, s.imag)
            rows.append(s)
        t = t if t_grid is None else np.asarray(t_grid, dtype=float)
    elif method == 'dyson':
        if t_grid is None:
            raise ValueError("method 'dyson' needs an explicit t_grid.")
        t = np.asarray(t_grid, dtype=float)
        rows = [dyson_time_field(system, x, t, spec=dyson_spec).value for x in x_grid]
    else:
        raise ValueError(f'Time response method {method!r} not recognized.')
    logger.info('Field map over %d positions and %d times (%s)', len(x_grid), len(t), method)
    return t, np.array(rows)
