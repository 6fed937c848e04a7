############################################################################
### NucWave - CLASS NuclearSpecies
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from fractions import Fraction
from typing import Optional

# Third party imports
import numpy as np
from scipy import constants

# Local modules imports
from modes.layer_stack import wavenumber_from_energy
from nuclear.angular import Spin, doubled





HBAR_EV_S = constants.hbar / constants.e

# Lattice constant of alpha-iron (bcc, two atoms per cubic cell).
BCC_IRON_LATTICE_CONSTANT = 2.8665e-10



class NuclearError(ValueError):
    pass



class NuclearSpecies:

    """
    Constants of a Mossbauer transition.

    Attributes:
    ----------
    E0 : float
        Transition energy in keV.
    gamma : float
        Total decay rate in 1/s.
    alpha : float
        Internal conversion coefficient.
    f_LM : float
        Lamb-Mossbauer factor.
    I_g, I_e : Fraction
        Ground and excited state spins.
    rho_N : float
        Number density of resonant nuclei in 1/m^3.
    """

    def __init__(self,
                 E0: float,
                 gamma: float,
                 alpha: float,
                 f_LM: float,
                 I_g: Spin,
                 I_e: Spin,
                 rho_N: float = 0.0,
                 name: str = '') -> None:
        self.E0 = E0
        self.gamma = gamma
        self.alpha = alpha
        self.f_LM = f_LM
        self.I_g = I_g
        self.I_e = I_e
        self.rho_N = rho_N
        self.name = name

    @property
    def E0(self) -> float:
        return self._E0

    @E0.setter
    def E0(self, value: float) -> None:
        value = float(value)
        if not value > 0:
            raise NuclearError(f'Transition energy must be positive, got {value}.')
        self._E0 = value

    @property
    def gamma(self) -> float:
        return self._gamma

    @gamma.setter
    def gamma(self, value: float) -> None:
        value = float(value)
        if not value > 0:
            raise NuclearError(f'gamma must be positive, got {value}.')
        self._gamma = value

    @property
    def alpha(self) -> float:
        return self._alpha

    @alpha.setter
    def alpha(self, value: float) -> None:
        value = float(value)
        if not value >= 0:
            raise NuclearError(f'alpha must be non-negative, got {value}.')
        self._alpha = value

    @property
    def f_LM(self) -> float:
        return self._f_LM

    @f_LM.setter
    def f_LM(self, value: float) -> None:
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise NuclearError(f'f_LM must lie in [0, 1], got {value}.')
        self._f_LM = value

    @property
    def I_g(self) -> Fraction:
        return self._I_g

    @I_g.setter
    def I_g(self, value: Spin) -> None:
        self._I_g = _spin(value, 'I_g')

    @property
    def I_e(self) -> Fraction:
        return self._I_e

    @I_e.setter
    def I_e(self, value: Spin) -> None:
        self._I_e = _spin(value, 'I_e')

    @property
    def rho_N(self) -> float:
        return self._rho_N

    @rho_N.setter
    def rho_N(self, value: float) -> None:
        value = float(value)
        if not value >= 0:
            raise NuclearError(f'rho_N must be non-negative, got {value}.')
        self._rho_N = value

    @property
    def k0(self) -> float:
        return wavenumber_from_energy(1e3 * self._E0)

    @property
    def linewidth(self) -> float:
        '''hbar * gamma in eV.'''
        return self._gamma * HBAR_EV_S

    def replace(self, **kwargs) -> 'NuclearSpecies':
        values = dict(E0=self.E0, gamma=self.gamma, alpha=self.alpha, f_LM=self.f_LM,
                      I_g=self.I_g, I_e=self.I_e, rho_N=self.rho_N, name=self.name)
        values.update(kwargs)
        return NuclearSpecies(**values)

    def __repr__(self) -> str:
        return (f'NuclearSpecies({self.name!r}, E0={self.E0:g} keV, '
                f'hbar*gamma={self.linewidth:.3g} eV, I_g={self.I_g}, I_e={self.I_e})')






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def _spin(value: Spin, label: str) -> Fraction:
    try:
        twice = doubled(value)
    except ValueError as error:
        raise NuclearError(f'{label}: {error}') from None
    if twice < 0:
        raise NuclearError(f'{label} must be non-negative.')
    return Fraction(twice, 2)



def gamma_from_linewidth(linewidth: float) -> float:
    '''Decay rate (1/s) from a natural linewidth hbar*gamma in eV.'''
    return float(linewidth) / HBAR_EV_S



def bcc_iron_density(enrichment: float = 1.0,
                     lattice_constant: float = BCC_IRON_LATTICE_CONSTANT) -> float:
    '''Number density (1/m^3) of 57Fe in alpha-iron at a given isotopic fraction.'''
    if not 0.0 <= enrichment <= 1.0:
        raise NuclearError(f'Enrichment must lie in [0, 1], got {enrichment}.')
    return 2.0 * enrichment / lattice_constant ** 3



def sigma_res(species: NuclearSpecies) -> float:
    '''Resonant scattering cross-section in m^2.'''
    k0 = species.k0
    spin_factor = (2 * species.I_e + 1) / (2 * species.I_g + 1)
    return float(2.0 * np.pi / k0 ** 2 * species.f_LM / (1.0 + species.alpha) * spin_factor)



def attenuation_zeta(species: NuclearSpecies, rho_N: Optional[float] = None) -> float:
    '''On-resonance attenuation coefficient rho_N * sigma_res in 1/m.'''
    rho_N = species.rho_N if rho_N is None else float(rho_N)
    return rho_N * sigma_res(species)



FE57 = NuclearSpecies(
    E0=14.4,
    gamma=gamma_from_linewidth(4.7e-9),
    alpha=8.56,
    f_LM=0.8,
    I_g=Fraction(1, 2),
    I_e=Fraction(3, 2),
    rho_N=bcc_iron_density(1.0),
    name='57Fe',
)
