############################################################################
### NucWave - CLASS EffectiveSystem
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from typing import Optional, Sequence, Union

# Third party imports
import numpy as np

# Local modules imports
from nuclear.species import NuclearSpecies, attenuation_zeta
from nuclear.response import ResponseModel
from modes.mode_set import ModeSet




# Tolerated negative Im q (1/m) from root polishing noise.
PASSIVITY_SLACK = 1e-9



class EffectiveSystem:

    """
    Data of the one-dimensional multimode equation of motion
    d beta/dx = i Q beta - i (zeta/2) F(omega) Lambda beta,
    with Lambda = xi (x) 1^T, in the carrier-removed (retarded time) frame.

    Attributes:
    ----------
    q : np.ndarray
        Mode wavenumbers relative to the carrier, 1/m.
    xi : np.ndarray
        Coupling strengths.
    zeta : float
        On-resonance attenuation coefficient of the resonant layer, 1/m.
    response : ResponseModel
        Unsplit nuclear response (scalar channel).
    beta0 : np.ndarray
        Mode amplitudes at x = 0.
    """

    def __init__(self,
                 q: Sequence[complex],
                 xi: Sequence[complex],
                 zeta: float,
                 response: ResponseModel,
                 beta0: Optional[Sequence[complex]] = None) -> None:
        q = np.atleast_1d(np.array(q, dtype=complex))
        xi = np.atleast_1d(np.array(xi, dtype=complex))
        beta0 = np.ones_like(q) if beta0 is None else np.atleast_1d(np.array(beta0, dtype=complex))
        if q.ndim != 1 or len(q) == 0:
            raise ValueError("'q' must be a non-empty vector.")
        if xi.shape != q.shape or beta0.shape != q.shape:
            raise ValueError("'q', 'xi' and 'beta0' must have the same length.")
        if np.any(q.imag < -PASSIVITY_SLACK):
            raise ValueError('Mode wavenumbers must have Im(q) >= 0 (attenuating modes).')
        if not isinstance(response, ResponseModel):
            raise TypeError("Expected a ResponseModel instance for 'response'")
        if not response.isotropic:
            raise ValueError('Propagation supports the unsplit (scalar) response only.')
        zeta = float(zeta)
        if not zeta >= 0:
            raise ValueError(f'zeta must be non-negative, got {zeta}.')
        for a in (q, xi, beta0):
            a.setflags(write=False)
        self._q = q
        self._xi = xi
        self._beta0 = beta0
        self._zeta = zeta
        self._response = response

    @classmethod
    def from_mode_set(cls,
                      mode_set: ModeSet,
                      species: Union[NuclearSpecies, float],
                      response: Optional[ResponseModel] = None,
                      modes: Optional[Sequence[int]] = None) -> 'EffectiveSystem':

        '''
        Builds the system from solved modes.

        Parameters:
        species: A NuclearSpecies (zeta and response derived from it) or zeta in 1/m.
        response: Required when a bare zeta is given.
        modes: 0-based indices of the modes to keep. Defaults to all.
        '''

        if isinstance(species, NuclearSpecies):
            zeta = attenuation_zeta(species)
            response = ResponseModel(species) if response is None else response
        else:
            zeta = float(species)
            if response is None:
                raise ValueError('A ResponseModel is needed when zeta is given directly.')
        idx = list(range(len(mode_set))) if modes is None else list(modes)
        return cls(
            q=mode_set.p[idx],
            xi=mode_set.xi[idx],
            zeta=zeta,
            response=response,
            beta0=mode_set.overlaps[idx],
        )

    @property
    def q(self) -> np.ndarray:
        return self._q

    @property
    def xi(self) -> np.ndarray:
        return self._xi

    @property
    def beta0(self) -> np.ndarray:
        return self._beta0

    @property
    def zeta(self) -> float:
        return self._zeta

    @property
    def response(self) -> ResponseModel:
        return self._response

    @property
    def gamma(self) -> float:
        return self._response.gamma

    @property
    def n_modes(self) -> int:
        return len(self._q)

    @property
    def trace(self) -> complex:
        '''tr Lambda = sum xi.'''
        return complex(np.sum(self._xi))

    @property
    def input_total(self) -> complex:
        '''B_in(0) = sum beta0.'''
        return complex(np.sum(self._beta0))

    def F(self, omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        return self._response(omega)

    def generator(self, omega: Union[float, np.ndarray]) -> np.ndarray:
        '''iQ - i (zeta/2) F(omega) Lambda, shape omega.shape + (N, N).'''
        F = np.asarray(self.F(omega))
        Lam = np.outer(self._xi, np.ones(self.n_modes))
        return (np.diag(1j * self._q)
                - 0.5j * self._zeta * F[..., None, None] * Lam)

    def replace(self, **kwargs) -> 'EffectiveSystem':
        values = dict(q=self._q, xi=self._xi, zeta=self._zeta,
                      response=self._response, beta0=self._beta0)
        values.update(kwargs)
        return EffectiveSystem(**values)

    def __repr__(self) -> str:
        return f'EffectiveSystem({self.n_modes} modes, zeta={self._zeta:.4g} 1/m)'



class FieldSolution:

    """
    Mode amplitudes on an (x, omega) grid.

    Attributes:
    ----------
    x : np.ndarray
    omega : np.ndarray
    beta : np.ndarray
        Shape (len(x), len(omega), n_modes).
    """

    def __init__(self, x: np.ndarray, omega: np.ndarray, beta: np.ndarray) -> None:
        self.x = np.asarray(x, dtype=float)
        self.omega = np.asarray(omega, dtype=float)
        beta = np.asarray(beta, dtype=complex)
        if beta.shape[:2] != (len(self.x), len(self.omega)):
            raise ValueError('beta must have shape (len(x), len(omega), n_modes).')
        self.beta = beta

    @property
    def B(self) -> np.ndarray:
        '''Total field sum_lambda beta_lambda.'''
        return self.beta.sum(axis=-1)






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def input_field(system: EffectiveSystem,
                x: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    '''Free field B_in(x) / B_in(0).'''
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * np.multiply.outer(x, system.q)) @ system.beta0 / system.input_total
    return out[()] if out.ndim == 0 else out



def geometric_factor_U(system: EffectiveSystem,
                       dx: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    '''U(dx) = sum xi e^{i q dx} / sum xi, the normalized scattered envelope.'''
    dx = np.asarray(dx, dtype=float)
    out = np.exp(1j * np.multiply.outer(dx, system.q)) @ system.xi / system.trace
    return out[()] if out.ndim == 0 else out



def mean_mode_system(system: EffectiveSystem) -> EffectiveSystem:
    '''Single mode at the mean wavenumber carrying the summed coupling and input.'''
    return system.replace(
        q=[np.mean(system.q)],
        xi=[system.trace],
        beta0=[system.input_total],
    )
