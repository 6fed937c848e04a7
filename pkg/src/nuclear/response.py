############################################################################
### NucWave - CLASS ResponseModel
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
import pandas as pd

# Local modules imports
from nuclear.angular import (
    HyperfineLevel,
    Spin,
    projections,
    pure_level,
    d_vector,
    rate_fraction,
)
from nuclear.species import NuclearSpecies, NuclearError




# Transitions with a smaller branching fraction are dropped from line lists.
LINE_THRESHOLD = 1e-14



class HyperfineConfig:

    """
    Hyperfine eigenstates of the excited and ground manifolds.

    Attributes:
    ----------
    excited_levels : tuple[HyperfineLevel, ...]
        2 I_e + 1 levels with shifts Delta_mu (1/s).
    ground_levels : tuple[HyperfineLevel, ...]
        2 I_g + 1 levels with shifts Delta_j (1/s).
    """

    def __init__(self,
                 excited_levels: Sequence[Union[HyperfineLevel, tuple]],
                 ground_levels: Sequence[Union[HyperfineLevel, tuple]]) -> None:
        self._excited = _levels(excited_levels, 'excited')
        self._ground = _levels(ground_levels, 'ground')

    @property
    def excited_levels(self) -> tuple[HyperfineLevel, ...]:
        return self._excited

    @property
    def ground_levels(self) -> tuple[HyperfineLevel, ...]:
        return self._ground

    @property
    def I_e(self):
        return self._excited[0].spin

    @property
    def I_g(self):
        return self._ground[0].spin



class ResponseModel:

    '''
    Linear response of the resonant nuclei: an unsplit Lorentzian unless a
    HyperfineConfig is given.
    '''

    def __init__(self,
                 species: NuclearSpecies,
                 hyperfine: Optional[HyperfineConfig] = None) -> None:
        if not isinstance(species, NuclearSpecies):
            raise TypeError("Expected a NuclearSpecies instance for 'species'")
        if hyperfine is not None:
            if not isinstance(hyperfine, HyperfineConfig):
                raise TypeError("Expected a HyperfineConfig instance for 'hyperfine'")
            if hyperfine.I_e != species.I_e or hyperfine.I_g != species.I_g:
                raise NuclearError(
                    f'Hyperfine configuration spins ({hyperfine.I_e}, {hyperfine.I_g}) '
                    f'do not match the species ({species.I_e}, {species.I_g}).'
                )
        self._species = species
        self._hyperfine = hyperfine
        self._lines = None

    @property
    def species(self) -> NuclearSpecies:
        return self._species

    @property
    def hyperfine(self) -> Optional[HyperfineConfig]:
        return self._hyperfine

    @property
    def gamma(self) -> float:
        return self._species.gamma

    @property
    def isotropic(self) -> bool:
        return self._hyperfine is None

    def lines(self) -> list[tuple[float, np.ndarray]]:

        '''
        (Delta_mu - Delta_j, d* (x) d) for every (mu, j) pair. Without a
        hyperfine configuration the pure |m> states with zero shifts are used.
        '''

        if self._lines is None:
            config = self._hyperfine or unsplit_config(self._species.I_e, self._species.I_g)
            lines = []
            for mu in config.excited_levels:
                for j in config.ground_levels:
                    d = d_vector(mu, j)
                    lines.append((mu.shift - j.shift, np.outer(np.conj(d), d)))
            self._lines = lines
        return self._lines

    def __call__(self, omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        return scalar_response(self, omega)

    def __repr__(self) -> str:
        kind = 'unsplit' if self.isotropic else 'hyperfine-split'
        return f'ResponseModel({self._species.name or "?"}, {kind})'






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def _levels(levels, label: str) -> tuple[HyperfineLevel, ...]:
    levels = tuple(
        level if isinstance(level, HyperfineLevel) else HyperfineLevel(*level)
        for level in levels
    )
    if len(levels) == 0:
        raise NuclearError(f'No {label} levels given.')
    size = len(levels[0].amplitudes)
    if len(levels) != size or any(len(level.amplitudes) != size for level in levels):
        raise NuclearError(
            f'{label} manifold: expected {size} levels with {size} amplitudes each.'
        )
    for level in levels:
        if abs(np.linalg.norm(level.amplitudes) - 1.0) > 1e-12:
            raise NuclearError(f'{label} level {level!r} is not normalized.')
    return levels



def unsplit_config(I_e: Spin, I_g: Spin) -> HyperfineConfig:
    return HyperfineConfig(
        excited_levels=[pure_level(I_e, m) for m in projections(I_e)],
        ground_levels=[pure_level(I_g, m) for m in projections(I_g)],
    )



def zeeman_hyperfine(I_e: Spin,
                     I_g: Spin,
                     excited_splitting: float,
                     ground_splitting: float,
                     isomer_shift: float = 0.0) -> HyperfineConfig:

    '''
    Pure magnetic hyperfine splitting along the quantization axis:
    Delta_mu = isomer_shift + excited_splitting * m_e and
    Delta_j = ground_splitting * m_g, all in 1/s.
    '''

    return HyperfineConfig(
        excited_levels=[
            pure_level(I_e, m, shift=isomer_shift + excited_splitting * float(m))
            for m in projections(I_e)
        ],
        ground_levels=[
            pure_level(I_g, m, shift=ground_splitting * float(m))
            for m in projections(I_g)
        ],
    )



def lorentzian(omega: Union[float, np.ndarray], gamma: float, center: float = 0.0) -> Union[complex, np.ndarray]:
    return (0.5 * gamma) / (np.asarray(omega) - center + 0.5j * gamma)



def response_tensor(model: ResponseModel,
                    omega: Union[float, np.ndarray]) -> np.ndarray:

    '''
    F(omega) = 3/(2 I_e + 1) sum_{mu, j} L(omega - Delta_mu + Delta_j) d* (x) d,
    with L the unit-peak Lorentzian (gamma/2)/(omega + i gamma/2).

    Returns an array of shape omega.shape + (3, 3).
    '''

    omega = np.asarray(omega, dtype=float)
    gamma = model.gamma
    F = np.zeros(omega.shape + (3, 3), dtype=complex)
    for center, dyad in model.lines():
        F += np.asarray(lorentzian(omega, gamma, center))[..., None, None] * dyad
    return F * (3.0 / (2 * model.species.I_e + 1))



def scalar_response(model: ResponseModel,
                    omega: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    if not model.isotropic:
        raise NuclearError('The scalar response is only defined for an unsplit line.')
    out = lorentzian(omega, model.gamma)
    return out[()] if np.ndim(out) == 0 else out



def transition_lines(model: ResponseModel) -> pd.DataFrame:

    '''
    Allowed transitions with their frequency Delta_mu - Delta_j (1/s) and
    branching fraction.
    '''

    config = model.hyperfine or unsplit_config(model.species.I_e, model.species.I_g)
    rows = []
    for i, mu in enumerate(config.excited_levels):
        for k, j in enumerate(config.ground_levels):
            fraction = rate_fraction(mu, j)
            if fraction < LINE_THRESHOLD:
                continue
            rows.append({
                'excited': i,
                'ground': k,
                'frequency': mu.shift - j.shift,
                'rate_fraction': fraction,
            })
    return pd.DataFrame(rows, columns=['excited', 'ground', 'frequency', 'rate_fraction'])
