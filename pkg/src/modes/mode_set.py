############################################################################
### NucWave - CLASS ModeSet, ModeSolver and two-mode parameters
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
from typing import Optional, Sequence, Union

# Third party imports
import numpy as np
import pandas as pd

# Local modules imports
from helper_functions import complex_columns
from modes.layer_stack import LayerStack
from modes.dispersion import RootSearchSpecification, find_guided_modes
from modes.guided_mode import (
    GuidedMode,
    mode_profile,
    normalize_mode,
    coupling_strength,
    input_overlap,
)



logger = logging.getLogger(__name__)




class ModeSet:

    """
    Normalized guided modes of a stack together with their coupling
    strengths at the resonant layer and their input overlaps.

    Attributes:
    ----------
    stack : LayerStack
    modes : tuple[GuidedMode, ...]
        Sorted by descending Re q.
    xi : np.ndarray
        Coupling strengths k0 L u(z0)^2 / q.
    overlaps : np.ndarray
        Mode amplitudes excited by a uniform input, in nm^(1/2).
    z0, L : float
        Resonant layer centre and thickness in m.
    """

    def __init__(self,
                 stack: LayerStack,
                 modes: Sequence[GuidedMode],
                 z0: Optional[float] = None,
                 L: Optional[float] = None,
                 amplitude: complex = 1.0,
                 overlap_region: str = 'core') -> None:
        self._stack = stack
        self.modes = modes
        self._z0 = stack.z0 if z0 is None else float(z0)
        self._L = stack.L if L is None else float(L)
        self._overlap_region = overlap_region
        self._xi = np.array(
            [coupling_strength(m, self._z0, self._L, stack.k0) for m in self._modes],
            dtype=complex,
        )
        self._overlaps = np.array(
            [input_overlap(m, amplitude=amplitude, region=overlap_region) for m in self._modes],
            dtype=complex,
        )

    @property
    def modes(self) -> tuple[GuidedMode, ...]:
        return self._modes

    @modes.setter
    def modes(self, value: Sequence[GuidedMode]) -> None:
        value = tuple(value)
        if not all(isinstance(m, GuidedMode) for m in value):
            raise TypeError("Expected a sequence of GuidedMode instances for 'modes'")
        if not all(m.normalized for m in value):
            raise ValueError('ModeSet holds normalized modes only.')
        if any(m.stack is not self._stack for m in value):
            raise ValueError('All modes must belong to the stack of the ModeSet.')
        self._modes = value

    @property
    def stack(self) -> LayerStack:
        return self._stack

    @property
    def k0(self) -> float:
        return self._stack.k0

    @property
    def z0(self) -> float:
        return self._z0

    @property
    def L(self) -> float:
        return self._L

    @property
    def q(self) -> np.ndarray:
        return np.array([m.q for m in self._modes], dtype=complex)

    @property
    def p(self) -> np.ndarray:
        '''Wavenumbers relative to the carrier, q - k0.'''
        return np.array([m.p for m in self._modes], dtype=complex)

    @property
    def xi(self) -> np.ndarray:
        return self._xi.copy()

    @property
    def overlaps(self) -> np.ndarray:
        return self._overlaps.copy()

    @property
    def overlap_region(self) -> str:
        return self._overlap_region

    def __len__(self) -> int:
        return len(self._modes)

    def __getitem__(self, i: int) -> GuidedMode:
        return self._modes[i]

    def __repr__(self) -> str:
        return f'ModeSet({len(self)} modes, {self._stack!r})'

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame({'index': np.arange(1, len(self) + 1)})
        q = self.q
        df['re_q'] = q.real
        df['im_q'] = q.imag
        df['re_xi'] = self._xi.real
        df['im_xi'] = self._xi.imag
        for key, value in complex_columns('q_minus_k0', self.p).items():
            df[key] = value
        for key, value in complex_columns('overlap', self._overlaps).items():
            df[key] = value
        return df

    def profiles_frame(self, z: np.ndarray) -> pd.DataFrame:
        return mode_profiles_frame(self._modes, z)

    def strongest(self, n: int = 2) -> list[int]:
        '''Indices of the n most strongly coupled modes, in mode order.'''
        order = np.argsort(-np.abs(self._xi), kind='stable')[:n]
        return sorted(int(i) for i in order)

    def two_mode(self,
                 i: Optional[int] = None,
                 j: Optional[int] = None) -> 'TwoModeParams':

        '''
        Two-mode summary of modes i and j (0-based). Defaults to the two most
        strongly coupled modes. Wavenumbers are taken relative to k0.
        '''

        if len(self) < 2:
            raise ValueError('Two-mode parameters need at least two modes.')
        if i is None or j is None:
            i, j = self.strongest(2)
        p = self.p
        return two_mode_parameters(p[i], p[j], self._xi[i], self._xi[j])



class ModeSolver:

    def __init__(self,
                 spec: Optional[RootSearchSpecification] = None,
                 **kwargs):
        self.spec = RootSearchSpecification() if spec is None else spec
        self.spec.update(kwargs)
        self._mode_set: Optional[ModeSet] = None

    @property
    def spec(self):
        return self._spec

    @spec.setter
    def spec(self, value):
        if isinstance(value, RootSearchSpecification):
            self._spec = value
        else:
            raise ValueError(
                'Input value must be of type RootSearchSpecification.'
            )
        return None

    @property
    def mode_set(self) -> Optional[ModeSet]:
        return self._mode_set

    def solve(self,
              stack: LayerStack,
              inplace: bool = True,
              overlap_region: str = 'core') -> Optional[ModeSet]:

        method = self.spec['method']

        if method == 'argument_principle':
            roots = find_guided_modes(stack, spec=self.spec, relative=True)
        else:
            raise ValueError(
                'Root search method not recognized.'
            )

        modes = [
            normalize_mode(mode_profile(stack, p, relative=True))
            for p in roots
        ]
        mode_set = ModeSet(stack, modes, overlap_region=overlap_region)
        logger.info('Mode set: %s', ', '.join(f'{m.p:.6g}' for m in modes))

        if inplace:
            self._mode_set = mode_set
            return None
        else:
            return mode_set



class TwoModeParams(dict):

    '''
    Mean/difference description of a mode pair:
    q_1,2 = q_bar +- delta_q + i (kappa_bar +- delta_kappa) and
    xi_1,2 = |xi_1,2| exp(i (phi_bar +- delta_phi)).

    Wavenumbers are stored relative to 'carrier'.
    '''

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.__dict__ = self

    @property
    def beat_length(self) -> float:
        '''pi / delta_q, the interference beat wavelength.'''
        return np.pi / abs(self['delta_q']) if self['delta_q'] != 0 else np.inf

    def reconstruct(self) -> tuple[complex, complex, complex, complex]:
        '''Returns (q1, q2, xi1, xi2).'''
        c = self['carrier']
        q1 = c + self['q_bar'] + self['delta_q'] + 1j * (self['kappa_bar'] + self['delta_kappa'])
        q2 = c + self['q_bar'] - self['delta_q'] + 1j * (self['kappa_bar'] - self['delta_kappa'])
        m1, m2 = self['xi_mags']
        xi1 = m1 * np.exp(1j * (self['phi_bar'] + self['delta_phi']))
        xi2 = m2 * np.exp(1j * (self['phi_bar'] - self['delta_phi']))
        return complex(q1), complex(q2), complex(xi1), complex(xi2)






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def mode_profiles_frame(modes: Sequence[GuidedMode], z: np.ndarray) -> pd.DataFrame:
    z = np.asarray(z, dtype=float)
    columns = {'z': z}
    for i, mode in enumerate(modes, start=1):
        columns.update(complex_columns(f'u{i}', mode(z)))
    return pd.DataFrame(columns)



def _ratio(num: float, den: float) -> float:
    return float(abs(num / den)) if den != 0 else np.inf



def two_mode_parameters(q1: complex,
                        q2: complex,
                        xi1: complex,
                        xi2: complex,
                        carrier: float = 0.0) -> TwoModeParams:

    '''
    Mean and difference parameters of two modes.

    Parameters:
    q1, q2: Mode wavenumbers (1/m) in any frame.
    xi1, xi2: Coupling strengths.
    carrier: Subtracted from Re q before forming q_bar.

    Returns:
    TwoModeParams with Q_beat = |delta_q/delta_kappa| and
    Q_atten = |delta_q/kappa_bar| (inf when the denominator vanishes).
    '''

    q1, q2 = complex(q1) - carrier, complex(q2) - carrier
    if q1 == q2:
        raise ValueError('Two-mode parameters need distinct wavenumbers.')
    phi1, phi2 = np.angle(xi1), np.angle(xi2)

    delta_q = 0.5 * (q1.real - q2.real)
    delta_kappa = 0.5 * (q1.imag - q2.imag)
    kappa_bar = 0.5 * (q1.imag + q2.imag)
    Q_beat = _ratio(delta_q, delta_kappa)
    Q_atten = _ratio(delta_q, kappa_bar)
    Q_bar = _ratio(delta_q, np.sqrt(abs(delta_kappa * kappa_bar)))

    return TwoModeParams(
        carrier=float(carrier),
        q_bar=0.5 * (q1.real + q2.real),
        delta_q=delta_q,
        kappa_bar=kappa_bar,
        delta_kappa=delta_kappa,
        phi_bar=0.5 * (phi1 + phi2),
        delta_phi=0.5 * (phi1 - phi2),
        xi_mags=(float(abs(xi1)), float(abs(xi2))),
        Q_beat=Q_beat,
        Q_atten=Q_atten,
        Q_bar=Q_bar,
    )



def envelope_beat(two_mode: TwoModeParams,
                  x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:

    '''
    |U(x)|^2 of a mode pair, U(x) = sum xi e^{iqx} / sum xi: an exponential
    decay at kappa_bar times a beat cos(2 (delta_q x + delta_phi)) riding on
    a cosh-like background set by the attenuation mismatch.
    '''

    x = np.asarray(x, dtype=float)
    m1, m2 = two_mode['xi_mags']
    dk, dq, dphi = two_mode['delta_kappa'], two_mode['delta_q'], two_mode['delta_phi']
    numerator = (m1 ** 2 * np.exp(-2.0 * dk * x) + m2 ** 2 * np.exp(2.0 * dk * x)
                 + 2.0 * m1 * m2 * np.cos(2.0 * (dq * x + dphi)))
    denominator = m1 ** 2 + m2 ** 2 + 2.0 * m1 * m2 * np.cos(2.0 * dphi)
    out = np.exp(-2.0 * two_mode['kappa_bar'] * x) * numerator / denominator
    return out[()] if out.ndim == 0 else out



def phase_mismatch_penalty(delta_phi: float) -> float:
    '''Relative loss of beat contrast from a coupling phase mismatch.'''
    return float(1.0 - np.cos(delta_phi))
