############################################################################
### NucWave - CLASS GuidedMode
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

# Local modules imports
from modes.layer_stack import LayerStack
from modes.dispersion import (
    cladding_decay,
    cos_sinc,
    transverse_wavenumber_squared,
    relative_residual,
)




# Input overlaps are quoted with z in nanometres.
OVERLAP_LENGTH_UNIT = 1e-9



class ProfileError(ValueError):
    pass


class NormalizationError(ValueError):
    pass



class GuidedMode:

    """
    Piecewise transverse profile u(z) of a slab mode.

    In region r (top cladding, each finite layer, bottom cladding) the
    profile is u = A_r exp(i k_r s) + B_r exp(-i k_r s) with s = z - z_r,
    where z_r is the start of the region (0 for the top cladding).
    The claddings carry only the A term: k_top = -i*gamma_top and
    k_bottom = +i*gamma_bottom.

    Attributes:
    ----------
    stack : LayerStack
    p : complex
        Wavenumber relative to the carrier, q - k0.
    coefficients : np.ndarray
        (n_layers + 2, 2) array of (A_r, B_r).
    kz : np.ndarray
        Transverse wavenumbers per region.
    normalized : bool
    sheet : int
        +1 for guided modes, -1 for leaky modes.
    """

    def __init__(self,
                 stack: LayerStack,
                 p: complex,
                 coefficients: np.ndarray,
                 kz: np.ndarray,
                 normalized: bool = False,
                 sheet: int = 1) -> None:
        self._stack = stack
        self._p = complex(p)
        self._coefficients = np.array(coefficients, dtype=complex)
        self._coefficients.setflags(write=False)
        self._kz = np.array(kz, dtype=complex)
        self._kz.setflags(write=False)
        self._normalized = bool(normalized)
        self._sheet = int(sheet)

    @property
    def stack(self) -> LayerStack:
        return self._stack

    @property
    def p(self) -> complex:
        return self._p

    @property
    def q(self) -> complex:
        return self._stack.k0 + self._p

    @property
    def coefficients(self) -> np.ndarray:
        return self._coefficients

    @property
    def kz(self) -> np.ndarray:
        return self._kz

    @property
    def normalized(self) -> bool:
        return self._normalized

    @property
    def sheet(self) -> int:
        return self._sheet

    @property
    def region_starts(self) -> np.ndarray:
        z = self._stack.interfaces
        return np.concatenate([[0.0], z[:-1], [z[-1]]])

    @property
    def region_widths(self) -> np.ndarray:
        '''Widths per region, inf for the claddings.'''
        return np.concatenate([[np.inf], self._stack.thicknesses, [np.inf]])

    def scaled(self, factor: complex, normalized: Optional[bool] = None) -> 'GuidedMode':
        return GuidedMode(
            stack=self._stack,
            p=self._p,
            coefficients=self._coefficients * factor,
            kz=self._kz,
            normalized=self._normalized if normalized is None else normalized,
            sheet=self._sheet,
        )

    def region_of(self, z: Union[float, np.ndarray]) -> np.ndarray:
        return np.searchsorted(self._stack.interfaces, np.asarray(z, dtype=float), side='right')

    def evaluate(self,
                 z: Union[float, np.ndarray],
                 region: Optional[Union[int, np.ndarray]] = None,
                 derivative: bool = False) -> Union[complex, np.ndarray]:

        '''
        u(z) or u'(z). A region index may be forced to evaluate a region's
        parameterization outside its own interval (used at interfaces).
        '''

        z = np.asarray(z, dtype=float)
        r = self.region_of(z) if region is None else np.broadcast_to(np.asarray(region), z.shape)
        s = z - self.region_starts[r]
        k = self._kz[r]
        a = self._coefficients[r, 0]
        b = self._coefficients[r, 1]
        ep = np.exp(1j * k * s)
        em = np.exp(-1j * k * s)
        out = 1j * k * (a * ep - b * em) if derivative else a * ep + b * em
        return out[()] if out.ndim == 0 else out

    def __call__(self, z: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        return self.evaluate(z)

    def derivative(self, z: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        return self.evaluate(z, derivative=True)

    def interface_mismatch(self) -> float:

        '''
        Largest relative disagreement of u and u' between the two region
        parameterizations meeting at any interface.
        '''

        worst = 0.0
        for i, z in enumerate(self._stack.interfaces):
            left, right = i, i + 1
            for derivative in (False, True):
                ul = self.evaluate(z, region=left, derivative=derivative)
                ur = self.evaluate(z, region=right, derivative=derivative)
                scale = max(abs(ul), abs(ur))
                if scale > 0:
                    worst = max(worst, abs(ul - ur) / scale)
        return worst

    def __repr__(self) -> str:
        kind = 'guided' if self._sheet == 1 else 'leaky'
        return f'GuidedMode({kind}, q-k0={self._p:.6g} 1/m, normalized={self._normalized})'






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def mode_profile(stack: LayerStack,
                 q: complex,
                 relative: bool = False,
                 sheet: int = 1,
                 rotated_cut: Optional[bool] = None,
                 tol: float = 1e-6) -> GuidedMode:

    '''
    Unnormalized profile of the mode with wavenumber q, with u = 1 at the
    top interface.

    Parameters:
    q: Mode wavenumber, or q - k0 when relative is True.
    sheet: +1 for guided, -1 for leaky roots.
    tol: Largest accepted scaled determinant; a larger value means q is not
        a root and the profile is undefined.
    '''

    k0 = stack.k0
    p = complex(q) if relative else complex(q) - k0
    rotated_cut = (sheet == -1) if rotated_cut is None else rotated_cut

    residual = relative_residual(stack, p, sheet=sheet, rotated_cut=rotated_cut)
    if not residual < tol:
        raise ProfileError(
            f'q - k0 = {p:.10g} is not a mode of {stack!r} (scaled residual {residual:.3g}).'
        )

    gamma_top = complex(cladding_decay(stack.top.offset, k0, p, sheet, rotated_cut))
    gamma_bottom = complex(cladding_decay(stack.bottom.offset, k0, p, sheet, rotated_cut))

    coefficients = [(1.0 + 0j, 0j)]
    kz = [-1j * gamma_top]
    u, du = 1.0 + 0j, gamma_top
    for layer in stack.layers:
        kappa2 = complex(transverse_wavenumber_squared(layer.offset, k0, p))
        kappa = np.sqrt(kappa2)
        if abs(kappa * layer.thickness) < 1e-12:
            kappa = 1e-12 / layer.thickness
        a = 0.5 * (u + du / (1j * kappa))
        b = 0.5 * (u - du / (1j * kappa))
        coefficients.append((a, b))
        kz.append(kappa)
        c, s = cos_sinc(kappa2, layer.thickness)
        u, du = complex(c * u + s * du), complex(-kappa2 * s * u + c * du)
    coefficients.append((u, 0j))
    kz.append(1j * gamma_bottom)

    return GuidedMode(stack=stack, p=p, coefficients=np.array(coefficients),
                      kz=np.array(kz), normalized=False, sheet=sheet)



def _exp_integral(w: complex, d: float) -> complex:

    '''
    Integral of exp(i w s) over [0, d]; d = inf for a decaying tail.
    '''

    if np.isinf(d):
        return 1j / w
    x = 1j * w * d
    if abs(x) < 1e-2:
        return d * (1.0 + x / 2.0 + x * x / 6.0 + x ** 3 / 24.0 + x ** 4 / 120.0 + x ** 5 / 720.0)
    return d * (np.exp(x) - 1.0) / x



def mode_overlap(mode_a: GuidedMode, mode_b: GuidedMode) -> complex:

    '''
    Bi-orthogonal overlap, the integral of u_a u_b over all z (no complex
    conjugation), from the analytic exponential antiderivatives.
    '''

    if mode_a.stack is not mode_b.stack:
        raise ValueError('Modes belong to different stacks.')
    total = 0j
    widths = mode_a.region_widths
    last = len(widths) - 1
    for r, d in enumerate(widths):
        ka, kb = mode_a.kz[r], mode_b.kz[r]
        aa, ba = mode_a.coefficients[r]
        ab, bb = mode_b.coefficients[r]
        if r == 0:
            # (-inf, 0]: reflect s -> -s so the tail runs over [0, inf)
            total += aa * ab * _exp_integral(-(ka + kb), np.inf)
        elif r == last:
            total += aa * ab * _exp_integral(ka + kb, np.inf)
        else:
            total += aa * ab * _exp_integral(ka + kb, d)
            total += aa * bb * _exp_integral(ka - kb, d)
            total += ba * ab * _exp_integral(kb - ka, d)
            total += ba * bb * _exp_integral(-(ka + kb), d)
    return total



def mode_integral(mode: GuidedMode, region: str = 'all') -> complex:

    '''
    Integral of u over all z ('all') or over the finite layers only ('core').
    '''

    if region not in ('all', 'core'):
        raise ValueError(f'Integration region {region!r} not recognized.')
    total = 0j
    widths = mode.region_widths
    last = len(widths) - 1
    for r, d in enumerate(widths):
        k = mode.kz[r]
        a, b = mode.coefficients[r]
        if r == 0 or r == last:
            if region == 'core':
                continue
            total += a * (_exp_integral(-k, np.inf) if r == 0 else _exp_integral(k, np.inf))
        else:
            total += a * _exp_integral(k, d) + b * _exp_integral(-k, d)
    return total



def normalize_mode(mode: GuidedMode, z_ref: Optional[float] = None) -> GuidedMode:

    '''
    Rescales a mode so that the integral of u^2 equals 1, with the sign
    fixed by Re u(z_ref) >= 0 (z_ref defaults to the resonant layer centre).
    When u(z_ref) vanishes the sign of Re u'(z_ref) is used instead.
    '''

    norm = mode_overlap(mode, mode)
    if not np.isfinite(norm) or abs(norm) == 0.0:
        raise NormalizationError(f'Integral of u^2 is {norm} for {mode!r}.')
    scaled = mode.scaled(1.0 / np.sqrt(norm), normalized=True)

    z_ref = mode.stack.z0 if z_ref is None else z_ref
    u_ref = scaled(z_ref)
    peak = np.max(np.abs(scaled.coefficients))
    if abs(u_ref.real) > 1e-9 * peak:
        flip = u_ref.real < 0
    else:
        flip = scaled.derivative(z_ref).real < 0
    return scaled.scaled(-1.0) if flip else scaled



def coupling_strength(mode: GuidedMode,
                      z0: float,
                      L: float,
                      k0: float) -> complex:
    '''xi = k0 L u(z0)^2 / q.'''
    if not mode.normalized:
        raise NormalizationError('Coupling strengths need a normalized mode.')
    return complex(k0 * L * mode(z0) ** 2 / mode.q)



def input_overlap(mode: GuidedMode,
                  amplitude: complex = 1.0,
                  region: str = 'core',
                  length_unit: float = OVERLAP_LENGTH_UNIT) -> complex:

    '''
    Mode amplitude excited by a uniform input field at x = 0, the integral
    of u over z times the input amplitude.

    Parameters:
    region: 'all' integrates over every z including the cladding tails,
        'core' only over the finite layers.
    length_unit: Transverse length unit the overlap is expressed in.
    '''

    if not mode.normalized:
        raise NormalizationError('Input overlaps need a normalized mode.')
    return complex(amplitude * mode_integral(mode, region) / np.sqrt(length_unit))



def greens_envelope(mode: GuidedMode,
                    z: Union[float, np.ndarray],
                    z_prime: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
    return 1j * mode(z) * mode(z_prime) / (2.0 * mode.q)
