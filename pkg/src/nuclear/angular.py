############################################################################
### NucWave - ANGULAR MOMENTUM COUPLING
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from fractions import Fraction
from math import factorial
from typing import Sequence, Union

# Third party imports
import numpy as np




# Spins and projections enter as int, float or Fraction and are handled as
# doubled integers (2j, 2m) throughout.
Spin = Union[int, float, Fraction]

SQRT_HALF = np.sqrt(0.5)



class HyperfineLevel:

    '''
    An eigenstate of a hyperfine-split nuclear level.

    Parameters:
    shift: Frequency shift (1/s) relative to the unsplit level.
    amplitudes: <I, m | level> for m = -I, ..., I (ascending m).
    '''

    def __init__(self, shift: float, amplitudes: Sequence[complex]) -> None:
        self._shift = float(shift)
        self._amplitudes = np.array(amplitudes, dtype=complex)
        self._amplitudes.setflags(write=False)
        if self._amplitudes.ndim != 1:
            raise ValueError('Level amplitudes must be a vector.')

    @property
    def shift(self) -> float:
        return self._shift

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    @property
    def spin(self) -> Fraction:
        return Fraction(len(self._amplitudes) - 1, 2)

    def __repr__(self) -> str:
        return f'HyperfineLevel(shift={self._shift:.4g} 1/s, I={self.spin})'






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def doubled(value: Spin) -> int:
    '''2 * value as an exact integer; raises for non half-integers.'''
    try:
        twice = 2 * Fraction(value)
    except (TypeError, ValueError, OverflowError):
        raise ValueError(f'{value!r} is not an integer or half-integer.') from None
    if twice.denominator != 1:
        raise ValueError(f'{value!r} is not an integer or half-integer.')
    return int(twice)



def pure_level(spin: Spin, m: Spin, shift: float = 0.0) -> HyperfineLevel:
    '''The |spin, m> state as a HyperfineLevel.'''
    J, M = doubled(spin), doubled(m)
    if abs(M) > J or (J - M) % 2:
        raise ValueError(f'm = {m} is not a projection of spin {spin}.')
    amplitudes = np.zeros(J + 1, dtype=complex)
    amplitudes[(M + J) // 2] = 1.0
    return HyperfineLevel(shift, amplitudes)



def projections(spin: Spin) -> list[Fraction]:
    J = doubled(spin)
    return [Fraction(M, 2) for M in range(-J, J + 1, 2)]



def _wigner_3j_squared(J1: int, J2: int, J3: int, M1: int, M2: int, M3: int) -> tuple[int, Fraction]:

    '''
    Racah sum on doubled arguments. Returns (sign, value^2) with value^2 an
    exact Fraction.
    '''

    t1 = (J2 - M1 - J3) // 2
    t2 = (J1 + M2 - J3) // 2
    t3 = (J1 + J2 - J3) // 2
    t4 = (J1 - M1) // 2
    t5 = (J2 + M2) // 2

    total = Fraction(0)
    for t in range(max(0, t1, t2), min(t3, t4, t5) + 1):
        term = Fraction(
            1,
            factorial(t) * factorial(t - t1) * factorial(t - t2)
            * factorial(t3 - t) * factorial(t4 - t) * factorial(t5 - t),
        )
        total += -term if t % 2 else term
    if total == 0:
        return 0, Fraction(0)

    prefactor = Fraction(
        factorial((J1 + J2 - J3) // 2) * factorial((J1 - J2 + J3) // 2)
        * factorial((-J1 + J2 + J3) // 2),
        factorial((J1 + J2 + J3) // 2 + 1),
    ) * (
        factorial((J1 + M1) // 2) * factorial((J1 - M1) // 2)
        * factorial((J2 + M2) // 2) * factorial((J2 - M2) // 2)
        * factorial((J3 + M3) // 2) * factorial((J3 - M3) // 2)
    )
    phase = (J1 - J2 - M3) // 2
    sign = (-1 if phase % 2 else 1) * (1 if total > 0 else -1)
    return sign, total * total * prefactor



def wigner_3j(j1: Spin, j2: Spin, j3: Spin, m1: Spin, m2: Spin, m3: Spin) -> float:

    '''
    Wigner 3j symbol from the Racah formula in exact rational arithmetic.

    Returns 0 when m1 + m2 + m3 != 0 or the triangle rule fails.
    Raises ValueError for arguments that are not half-integers, for
    |m| > j, and when j and m differ by a half-integer.
    '''

    J1, J2, J3 = doubled(j1), doubled(j2), doubled(j3)
    M1, M2, M3 = doubled(m1), doubled(m2), doubled(m3)
    for J, M in ((J1, M1), (J2, M2), (J3, M3)):
        if J < 0:
            raise ValueError('Angular momenta must be non-negative.')
        if abs(M) > J:
            raise ValueError(f'|m| = {abs(M) / 2} exceeds j = {J / 2}.')
        if (J - M) % 2:
            raise ValueError('j and m must both be integers or both half-integers.')

    if M1 + M2 + M3 != 0:
        return 0.0
    if J3 > J1 + J2 or J3 < abs(J1 - J2) or (J1 + J2 + J3) % 2:
        return 0.0

    sign, squared = _wigner_3j_squared(J1, J2, J3, M1, M2, M3)
    return sign * float(np.sqrt(float(squared)))



def clebsch_C(k: int,
              q: int,
              mu: HyperfineLevel,
              j: HyperfineLevel) -> complex:

    '''
    Generalized coupling coefficient of the multipole (k, q) between an
    excited level mu and a ground level j:

        sqrt(2 I_e + 1) sum_{m_e, m_g} (-1)^(I_e - m_e) <mu|I_e m_e> <I_g m_g|j>
            * ( I_e  k  I_g ; -m_e  q  m_g )
    '''

    if abs(q) > k:
        return 0j
    Je = len(mu.amplitudes) - 1
    Jg = len(j.amplitudes) - 1
    Q = 2 * q
    total = 0j
    for ie, Me in enumerate(range(-Je, Je + 1, 2)):
        a_e = np.conj(mu.amplitudes[ie])
        if a_e == 0:
            continue
        # selection rule fixes m_g = m_e - q
        Mg = Me - Q
        if abs(Mg) > Jg:
            continue
        a_g = j.amplitudes[(Mg + Jg) // 2]
        if a_g == 0:
            continue
        symbol = wigner_3j(Fraction(Je, 2), k, Fraction(Jg, 2),
                           Fraction(-Me, 2), q, Fraction(Mg, 2))
        phase = -1.0 if ((Je - Me) // 2) % 2 else 1.0
        total += phase * a_e * a_g * symbol
    return complex(np.sqrt(Je + 1.0) * total)



def rate_fraction(mu: HyperfineLevel, j: HyperfineLevel, k: int = 1) -> float:
    '''Branching fraction sum_q |C(kq, mu -> j)|^2 of an M1 (k = 1) decay.'''
    return float(sum(abs(clebsch_C(k, q, mu, j)) ** 2 for q in range(-k, k + 1)))



def spherical_basis() -> np.ndarray:
    '''Rows are e_{-1}, e_0, e_{+1} in Cartesian components.'''
    return np.array([
        [SQRT_HALF, -1j * SQRT_HALF, 0.0],
        [0.0, 0.0, 1.0],
        [SQRT_HALF, 1j * SQRT_HALF, 0.0],
    ], dtype=complex)



def d_vector(mu: HyperfineLevel, j: HyperfineLevel) -> np.ndarray:
    '''Cartesian transition vector sum_q e_q C(1q, mu -> j).'''
    C = np.array([clebsch_C(1, q, mu, j) for q in (-1, 0, 1)])
    return C @ spherical_basis()
