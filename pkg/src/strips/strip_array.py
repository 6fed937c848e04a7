############################################################################
### NucWave - CLASS StripArray
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from typing import Callable, Optional, Sequence, Union

# Third party imports
import numpy as np

# Local modules imports
from modes.mode_set import TwoModeParams
from propagation.effective_system import EffectiveSystem




class StripError(ValueError):
    pass



class StripResponse:

    """
    Collective response of one micro-strip,
    chi(omega) = -nu0 / (omega + i gamma/2 + nu0), nu0 = i gamma tau tr(Lambda)/4.

    Attributes:
    ----------
    tau : float
        Bulk optical depth of the strip, width * zeta.
    trace : complex
        tr Lambda = sum xi.
    gamma : float
        Single nucleus decay rate, 1/s.
    """

    def __init__(self, tau: float, trace: complex, gamma: float) -> None:
        self.tau = float(tau)
        self.trace = complex(trace)
        self.gamma = float(gamma)

    @property
    def nu0(self) -> complex:
        return 0.25j * self.gamma * self.tau * self.trace

    @property
    def collective_shift(self) -> float:
        return -self.nu0.real

    @property
    def collective_broadening(self) -> float:
        return self.nu0.imag

    @property
    def pole(self) -> complex:
        return -0.5j * self.gamma - self.nu0

    @property
    def width(self) -> float:
        '''Full width of the strip resonance, gamma + 2 Im nu0.'''
        return self.gamma + 2.0 * self.collective_broadening

    def chi(self, omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        out = -self.nu0 / (np.asarray(omega, dtype=float) + 0.5j * self.gamma + self.nu0)
        return out[()] if np.ndim(out) == 0 else out

    def __call__(self, omega):
        return self.chi(omega)

    def __repr__(self) -> str:
        return f'StripResponse(nu0/gamma={self.nu0 / self.gamma:.5g})'



class StripArray:

    """
    Micro-strips of equal width at increasing positions inside the waveguide.

    Attributes:
    ----------
    positions : np.ndarray
        Strip positions x_i in m, strictly increasing.
    width : float
        Strip extent L_x along the propagation direction, m.
    system : EffectiveSystem
        Mode data shared by all strips.
    tau : float
        Bulk optical depth per strip, width * zeta unless given.
    """

    def __init__(self,
                 positions: Sequence[float],
                 width: float,
                 system: EffectiveSystem,
                 tau: Optional[float] = None) -> None:
        self.system = system
        self.width = width
        self.positions = positions
        self.tau = width * system.zeta if tau is None else tau

    @property
    def system(self) -> EffectiveSystem:
        return self._system

    @system.setter
    def system(self, value: EffectiveSystem) -> None:
        if not isinstance(value, EffectiveSystem):
            raise TypeError("Expected an EffectiveSystem instance for 'system'")
        self._system = value

    @property
    def width(self) -> float:
        return self._width

    @width.setter
    def width(self, value: float) -> None:
        value = float(value)
        if not value > 0:
            raise StripError(f'Strip width must be positive, got {value}.')
        self._width = value

    @property
    def positions(self) -> np.ndarray:
        return self._positions

    @positions.setter
    def positions(self, value: Sequence[float]) -> None:
        x = np.atleast_1d(np.array(value, dtype=float))
        if x.ndim != 1 or len(x) == 0:
            raise StripError('A strip array needs at least one position.')
        gaps = np.diff(x)
        if np.any(gaps <= self._width):
            i = int(np.argmax(gaps <= self._width))
            raise StripError(
                f'Strips {i} and {i + 1} overlap or touch: gap {gaps[i]:.4g} m '
                f'<= width {self._width:.4g} m. Positions must increase by more than the width.'
            )
        x.setflags(write=False)
        self._positions = x

    @property
    def tau(self) -> float:
        return self._tau

    @tau.setter
    def tau(self, value: float) -> None:
        value = float(value)
        if not value > 0:
            raise StripError(f'Strip optical depth must be positive, got {value}.')
        self._tau = value

    @property
    def n_strips(self) -> int:
        return len(self._positions)

    @property
    def response(self) -> StripResponse:
        return StripResponse(self._tau, self._system.trace, self._system.gamma)

    @property
    def total_depth(self) -> complex:
        '''Effective depth of the chain, n_strips * tau * tr(Lambda).'''
        return self.n_strips * self._tau * self._system.trace

    def subset(self, indices: Sequence[int]) -> 'StripArray':
        return StripArray(self._positions[list(indices)], self._width, self._system, self._tau)

    def __len__(self) -> int:
        return self.n_strips

    def __repr__(self) -> str:
        return (f'StripArray({self.n_strips} strips, width={self._width:.3g} m, '
                f'tau={self._tau:.4g})')






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def strip_susceptibility(tau: float,
                         trace: complex,
                         response: Callable,
                         omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:

    '''
    chi = -i (tau/2) F tr(Lambda) / (1 + i (tau/2) F tr(Lambda)): the scalar
    left after inverting 1 + i (tau/2) F Lambda with the Sherman-Morrison
    formula.

    Parameters:
    response: Scalar response F(omega), e.g. a ResponseModel.
    '''

    a = 0.5j * float(tau) * np.asarray(response(omega)) * complex(trace)
    out = -a / (1.0 + a)
    return out[()] if np.ndim(out) == 0 else out



def sherman_morrison_inverse(a: complex, xi: Sequence[complex]) -> np.ndarray:

    '''
    (1 + a Lambda)^-1 = 1 - a Lambda / (1 + a tr Lambda) for Lambda = xi 1^T.
    '''

    xi = np.atleast_1d(np.asarray(xi, dtype=complex))
    denominator = 1.0 + complex(a) * xi.sum()
    if abs(denominator) < 1e-14 * max(1.0, abs(complex(a) * xi.sum())):
        raise StripError('1 + a tr(Lambda) vanishes; the strip matrix is singular.')
    Lam = np.outer(xi, np.ones(len(xi)))
    return np.eye(len(xi)) - complex(a) * Lam / denominator



def strip_envelope_variation(width: float, two_mode: TwoModeParams) -> float:
    '''Envelope change across one strip, 1 - cos(width * delta_q / pi).'''
    return float(1.0 - np.cos(float(width) * abs(two_mode['delta_q']) / np.pi))
