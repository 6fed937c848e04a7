############################################################################
### NucWave - STRIP MULTIPLE SCATTERING
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
from math import comb
from typing import Optional, Union

# Third party imports
import numpy as np

# Local modules imports
from nuclear.response import ResponseModel
from propagation.effective_system import geometric_factor_U, input_field
from propagation.time_domain import FFTSpecification, invert_lorentzian_spectrum
from strips.strip_array import StripArray, StripError



logger = logging.getLogger(__name__)






# --------------------------------------------------------------------------
# Transfer matrices
# --------------------------------------------------------------------------

def free_propagator(array: StripArray, dx: float) -> np.ndarray:
    '''Diagonal S(dx) = diag(exp(i q dx)).'''
    return np.diag(np.exp(1j * array.system.q * float(dx)))



def scatter_matrix(array: StripArray, omega: Union[float, np.ndarray]) -> np.ndarray:
    '''1 + chi(omega) Lambda / tr(Lambda), shape omega.shape + (N, N).'''
    system = array.system
    chi = np.asarray(array.response.chi(omega))
    Lam = np.outer(system.xi, np.ones(system.n_modes)) / system.trace
    return np.eye(system.n_modes) + chi[..., None, None] * Lam



def transfer_total(array: StripArray, omega: Union[float, np.ndarray]) -> np.ndarray:

    '''
    Ordered product M S(x_N - x_(N-1)) M ... S(x_2 - x_1) M of strip scatter
    factors M = 1 + chi Lambda/tr(Lambda) and free propagators.
    '''

    M = scatter_matrix(array, omega)
    W = M.copy()
    x = array.positions
    for i in range(array.n_strips - 1):
        W = M @ free_propagator(array, x[i + 1] - x[i]) @ W
    return W



def _strips_before(array: StripArray, x: float) -> Optional[StripArray]:
    idx = np.nonzero(array.positions <= x)[0]
    if len(idx) == 0:
        return None
    if len(idx) == array.n_strips:
        return array
    return array.subset(idx)



def transmission_spectrum(array: StripArray,
                          x: float,
                          omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:

    '''
    T(x, omega) = 1^T S(x - x_N) W_tot S(x_1) beta0 / B_in(0), using the
    strips located at or before x.
    '''

    system = array.system
    x = float(x)
    omega_arr = np.asarray(omega, dtype=float)
    before = _strips_before(array, x)
    if before is None:
        out = np.full(omega_arr.shape, complex(input_field(system, x)))
    else:
        W = transfer_total(before, omega_arr)
        start = free_propagator(before, before.positions[0]) @ system.beta0
        end = np.exp(1j * system.q * (x - before.positions[-1]))
        out = (end @ W @ start) / system.input_total
    return out[()] if np.ndim(out) == 0 else out






# --------------------------------------------------------------------------
# Scattering series
# --------------------------------------------------------------------------

def scattering_orders(array: StripArray, x: float, m_max: Optional[int] = None) -> np.ndarray:

    '''
    Geometric factors V_1..V_m_max at x, each a sum over ordered sites
    i_1 < ... < i_m at or before x of
    U(x - x_i_m) ... U(x_i_2 - x_i_1) B_in(x_i_1)/B_in(0).
    Computed by prefix accumulation over the sites.
    '''

    system = array.system
    x = float(x)
    sites = array.positions[array.positions <= x]
    n = len(sites)
    m_max = array.n_strips if m_max is None else int(m_max)
    if m_max < 0 or m_max > array.n_strips:
        raise StripError(f'm_max must lie in [0, {array.n_strips}], got {m_max}.')
    V = np.zeros(m_max, dtype=complex)
    if n == 0 or m_max == 0:
        return V
    # G_ij = U(x_i - x_j) for j < i
    G = np.tril(geometric_factor_U(system, sites[:, None] - sites[None, :]), k=-1)
    out_weight = geometric_factor_U(system, x - sites)
    A = np.asarray(input_field(system, sites), dtype=complex)
    for m in range(1, min(m_max, n) + 1):
        if m > 1:
            A = G @ A
        V[m - 1] = out_weight @ A
    return V



def scattering_series_T(array: StripArray,
                        x: float,
                        omega: Union[float, np.ndarray],
                        m_max: Optional[int] = None) -> Union[complex, np.ndarray]:
    '''T(x, omega) = B_in(x)/B_in(0) + sum_{m=1}^{m_max} chi(omega)^m V_m(x).'''
    V = scattering_orders(array, x, m_max)
    chi = np.asarray(array.response.chi(omega))
    out = complex(input_field(array.system, float(x))) + np.zeros(chi.shape, dtype=complex)
    for m, v in enumerate(V, start=1):
        out = out + chi ** m * v
    return out[()] if np.ndim(out) == 0 else out



def on_resonance_profile(array: StripArray, x_grid: np.ndarray) -> np.ndarray:
    '''Scattered on-resonance intensity |T(x, 0) - B_in(x)/B_in(0)|^2 along x.'''
    x_grid = np.atleast_1d(np.asarray(x_grid, dtype=float))
    scattered = np.array([
        transmission_spectrum(array, x, 0.0) - input_field(array.system, x) for x in x_grid
    ])
    return np.abs(scattered) ** 2



def forward_scattering_spectrum(tau_eff: complex,
                                response: ResponseModel,
                                omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    '''Bulk single mode transmission exp(-i tau_eff F(omega)/2) at the same effective depth.'''
    out = np.exp(-0.5j * complex(tau_eff) * np.asarray(response(omega)))
    return out[()] if np.ndim(out) == 0 else out



def scattered_tail(array: StripArray, x: float, orders: int) -> np.ndarray:

    '''
    Coefficients b_k of F^k in T(x, omega) - B_in(x)/B_in(0), k = 1..orders.
    With chi = -a F/(1 + a F), a = 2 nu0/gamma, the power chi^m contributes
    (-a)^k binomial(k-1, m-1) to F^k.
    '''

    V = scattering_orders(array, x)
    a = 2.0 * array.response.nu0 / array.system.gamma
    b = np.zeros(orders, dtype=complex)
    for k in range(1, orders + 1):
        b[k - 1] = (-a) ** k * sum(comb(k - 1, m - 1) * V[m - 1] for m in range(1, min(k, len(V)) + 1))
    return b



def strip_time_response(array: StripArray,
                        x: float,
                        spec: Optional[FFTSpecification] = None) -> tuple[np.ndarray, np.ndarray]:

    '''
    Scattered time spectrum of the strip chain observed at x, from the FFT of
    T(x, omega) - B_in(x)/B_in(0).
    '''

    spec = FFTSpecification() if spec is None else spec
    prompt = complex(input_field(array.system, float(x)))

    def spectrum(omega: np.ndarray) -> np.ndarray:
        return transmission_spectrum(array, x, omega) - prompt

    tail = scattered_tail(array, x, int(spec['subtract_orders']))
    t, s = invert_lorentzian_spectrum(spectrum, tail, array.system.gamma, spec)
    if spec['include_prompt']:
        s[0] += prompt / (t[1] - t[0])
    logger.debug('Strip time response of %r at x=%.4g m', array, x)
    return t, s
