############################################################################
### NucWave - DISPERSION DETERMINANT AND COMPLEX ROOT SEARCH
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Union

# Third party imports
import numpy as np
import scipy.optimize

# Local modules imports
from modes.layer_stack import LayerStack



logger = logging.getLogger(__name__)



# Wavenumbers are handled relative to the carrier: p = q - k0.
# All internal routines take p; the public functions convert when asked to.



class ModeSolverError(RuntimeError):
    pass


class ModeCountError(ModeSolverError):
    pass


class _BoundaryZero(Exception):
    pass



class RootSearchSpecification(dict):

    def __init__(self,
                 method='argument_principle',
                 tol_root=1e-10,
                 max_depth=48,
                 boundary_points=32,
                 max_refinements=30,
                 newton_maxiter=60,
                 threads=1,
                 **kwargs):
        super().__init__(
            method=method,
            tol_root=tol_root,
            max_depth=max_depth,
            boundary_points=boundary_points,
            max_refinements=max_refinements,
            newton_maxiter=newton_maxiter,
            threads=threads,
        )
        self.update(kwargs)



class Rectangle:

    '''
    Closed axis-aligned rectangle in the complex plane.
    '''

    def __init__(self, re_min: float, re_max: float, im_min: float, im_max: float) -> None:
        if not (re_max > re_min and im_max > im_min):
            raise ValueError('Rectangle must have positive width and height.')
        self.re_min = float(re_min)
        self.re_max = float(re_max)
        self.im_min = float(im_min)
        self.im_max = float(im_max)

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    @property
    def size(self) -> float:
        return max(self.width, self.height)

    def shifted(self, offset: complex) -> 'Rectangle':
        return Rectangle(self.re_min + offset.real, self.re_max + offset.real,
                         self.im_min + offset.imag, self.im_max + offset.imag)

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (self.re_min - pad * self.width <= z.real <= self.re_max + pad * self.width
                and self.im_min - pad * self.height <= z.imag <= self.im_max + pad * self.height)

    def split(self, fraction: float = 0.5) -> tuple['Rectangle', 'Rectangle']:
        # Split across the longer side, measured relative to the full extent
        if self.width >= self.height:
            cut = self.re_min + fraction * self.width
            return (Rectangle(self.re_min, cut, self.im_min, self.im_max),
                    Rectangle(cut, self.re_max, self.im_min, self.im_max))
        cut = self.im_min + fraction * self.height
        return (Rectangle(self.re_min, self.re_max, self.im_min, cut),
                Rectangle(self.re_min, self.re_max, cut, self.im_max))

    def strips(self, n: int) -> list['Rectangle']:
        edges = np.linspace(self.re_min, self.re_max, n + 1)
        return [Rectangle(a, b, self.im_min, self.im_max) for a, b in zip(edges[:-1], edges[1:])]

    def boundary(self, n: int) -> np.ndarray:
        '''Counter-clockwise closed path, first point repeated at the end.'''
        t = np.linspace(0.0, 1.0, n, endpoint=False)
        bottom = self.re_min + t * self.width + 1j * self.im_min
        right = self.re_max + 1j * (self.im_min + t * self.height)
        top = self.re_max - t * self.width + 1j * self.im_max
        left = self.re_min + 1j * (self.im_max - t * self.height)
        path = np.concatenate([bottom, right, top, left])
        return np.append(path, path[0])

    def __repr__(self) -> str:
        return (f'Rectangle(re=[{self.re_min:.6g}, {self.re_max:.6g}], '
                f'im=[{self.im_min:.6g}, {self.im_max:.6g}])')






# --------------------------------------------------------------------------
# Dispersion determinant
# --------------------------------------------------------------------------

def cladding_decay(offset: complex,
                   k0: float,
                   p: Union[complex, np.ndarray],
                   sheet: int = 1,
                   rotated_cut: bool = False) -> Union[complex, np.ndarray]:

    '''
    Transverse decay constant gamma = sqrt(q^2 - n^2 k0^2) of a cladding,
    with u ~ exp(-gamma |z|) away from the stack.

    sheet = +1 is the principal sheet (Re gamma >= 0, cut to the left of the
    branch point); sheet = -1 flips the sign. With rotated_cut the cut
    points from the branch point towards -i instead.
    '''

    w = (p - offset * k0) * (2.0 * k0 + offset * k0 + p)
    if rotated_cut:
        gamma = np.sqrt(-1j * w) * np.exp(0.25j * np.pi)
    else:
        gamma = np.sqrt(w + 0j)
    return sheet * gamma



def transverse_wavenumber_squared(offset: complex,
                                  k0: float,
                                  p: Union[complex, np.ndarray]) -> Union[complex, np.ndarray]:
    '''n^2 k0^2 - q^2, factored to avoid cancellation.'''
    return -(p - offset * k0) * (2.0 * k0 + offset * k0 + p)



def cos_sinc(kappa2: Union[complex, np.ndarray],
             d: float) -> tuple[np.ndarray, np.ndarray]:

    '''
    cos(kappa d) and sin(kappa d)/kappa as entire functions of kappa^2.
    '''

    kappa2 = np.asarray(kappa2, dtype=complex)
    x = kappa2 * d * d
    small = np.abs(x) < 1e-6
    kappa = np.sqrt(np.where(small, 1.0, kappa2))
    with np.errstate(over='ignore', invalid='ignore'):
        c = np.where(small, 1.0 - x / 2.0 + x * x / 24.0, np.cos(kappa * d))
        s = np.where(small, d * (1.0 - x / 6.0 + x * x / 120.0), np.sin(kappa * d) / kappa)
    return c, s



def boundary_state(stack: LayerStack,
                   p: Union[complex, np.ndarray],
                   sheet: int = 1,
                   rotated_cut: bool = False) -> tuple:

    '''
    Propagates (u, u') from the top cladding, where u = exp(gamma_top z),
    through all finite layers.

    Returns:
    (u, du) at the bottom interface, gamma_top and gamma_bottom.
    '''

    k0 = stack.k0
    p = np.asarray(p, dtype=complex)
    gamma_top = cladding_decay(stack.top.offset, k0, p, sheet, rotated_cut)
    gamma_bottom = cladding_decay(stack.bottom.offset, k0, p, sheet, rotated_cut)
    u = np.ones_like(p)
    du = gamma_top * u
    for layer in stack.layers:
        kappa2 = transverse_wavenumber_squared(layer.offset, k0, p)
        c, s = cos_sinc(kappa2, layer.thickness)
        u, du = c * u + s * du, -kappa2 * s * u + c * du
    return u, du, gamma_top, gamma_bottom



def relative_determinant(stack: LayerStack,
                         p: Union[complex, np.ndarray],
                         sheet: int = 1,
                         rotated_cut: bool = False,
                         scaled: bool = False) -> Union[complex, np.ndarray]:

    '''
    Outgoing-wave boundary determinant D = u'(D) + gamma_bottom u(D) as a
    function of p = q - k0. With scaled=True, D is divided by the local
    norm |u'| + |gamma_bottom u|.
    '''

    u, du, _, gamma_bottom = boundary_state(stack, p, sheet, rotated_cut)
    det = du + gamma_bottom * u
    if scaled:
        norm = np.abs(du) + np.abs(gamma_bottom * u)
        det = det / np.where(norm > 0, norm, 1.0)
    return det[()] if np.ndim(det) == 0 else det



def dispersion_determinant(stack: LayerStack,
                           q: Union[complex, np.ndarray],
                           relative: bool = False,
                           sheet: int = 1,
                           rotated_cut: bool = False) -> Union[complex, np.ndarray]:
    p = q if relative else np.asarray(q, dtype=complex) - stack.k0
    return relative_determinant(stack, p, sheet=sheet, rotated_cut=rotated_cut)



def relative_residual(stack: LayerStack,
                      p: complex,
                      sheet: int = 1,
                      rotated_cut: bool = False) -> float:
    return float(np.abs(relative_determinant(stack, p, sheet, rotated_cut, scaled=True)))






# --------------------------------------------------------------------------
# Argument principle root search
# --------------------------------------------------------------------------

def winding_number(fn: Callable[[np.ndarray], np.ndarray],
                   rect: Rectangle,
                   n_points: int = 32,
                   max_refinements: int = 30,
                   max_step: float = np.pi / 4) -> tuple[int, np.ndarray, np.ndarray]:

    '''
    Number of zeros of an analytic function inside a rectangle.

    The boundary is refined adaptively until the phase increment between
    neighbouring samples stays below max_step.

    Returns:
    The zero count and the sampled boundary path and values.
    '''

    z = rect.boundary(n_points)
    f = fn(z)
    for _ in range(max_refinements):
        if not np.all(np.isfinite(f)):
            raise ModeSolverError(f'Non-finite determinant on the boundary of {rect}.')
        scale = np.max(np.abs(f))
        if scale == 0 or np.min(np.abs(f)) < 1e-13 * scale:
            raise _BoundaryZero()
        dphi = np.angle(f[1:] / f[:-1])
        bad = np.abs(dphi) > max_step
        if not np.any(bad):
            break
        idx = np.nonzero(bad)[0] + 1
        mid = 0.5 * (z[idx - 1] + z[idx])
        z = np.insert(z, idx, mid)
        f = np.insert(f, idx, fn(mid))
    else:
        raise ModeSolverError(f'Boundary phase of {rect} not resolved after {max_refinements} refinements.')

    total = np.sum(np.angle(f[1:] / f[:-1])) / (2.0 * np.pi)
    count = int(np.rint(total))
    if abs(total - count) > 0.05:
        raise ModeSolverError(f'Non-integer winding number {total:.4f} on {rect}.')
    return count, z, f



def contour_centroid(z: np.ndarray, f: np.ndarray) -> complex:

    '''
    Location of the single zero enclosed by a sampled closed path,
    (1 / 2 pi i) * integral of z dlog f.
    '''

    dlog = np.log(f[1:] / f[:-1])
    zm = 0.5 * (z[1:] + z[:-1])
    return complex(np.sum(zm * dlog) / (2j * np.pi))



def _safe_count(fn, rect, spec) -> tuple[int, np.ndarray, np.ndarray]:
    return winding_number(
        fn, rect,
        n_points=spec['boundary_points'],
        max_refinements=spec['max_refinements'],
    )



def _split_counted(fn, rect, spec):
    for fraction in (0.5, 0.4713, 0.5291, 0.4377, 0.5618):
        a, b = rect.split(fraction)
        try:
            ca = _safe_count(fn, a, spec)
            cb = _safe_count(fn, b, spec)
        except _BoundaryZero:
            continue
        return (a, ca), (b, cb)
    raise ModeSolverError(f'Could not place a zero-free cut through {rect}.')



def _polish(fn, rect, z, f, spec, residual, scale) -> Optional[complex]:
    x0 = contour_centroid(z, f)
    if not rect.contains(x0, pad=0.5):
        x0 = rect.center
    h = 1e-7 * rect.size

    def fprime(x):
        return (fn(np.array([x + h]))[0] - fn(np.array([x - h]))[0]) / (2.0 * h)

    def func(x):
        return fn(np.array([x]))[0]

    try:
        root = scipy.optimize.newton(
            func, x0, fprime=fprime,
            tol=1e-14 * scale,
            maxiter=spec['newton_maxiter'],
        )
    except (RuntimeError, OverflowError, ZeroDivisionError):
        return None
    root = complex(root)
    if not np.isfinite(root) or not rect.contains(root, pad=0.05):
        return None
    if residual(root) >= spec['tol_root']:
        return None
    return root



def _isolate_and_polish(fn, rect, counted, spec, residual, scale, depth=0) -> list[complex]:
    count, z, f = counted
    if count == 0:
        return []
    if count < 0:
        raise ModeSolverError(f'Negative zero count in {rect}: the function has poles there.')
    if depth > spec['max_depth']:
        raise ModeSolverError(
            f'Could not isolate {count} zero(s) in {rect}: multiple root or unresolved cluster.'
        )
    if count == 1:
        root = _polish(fn, rect, z, f, spec, residual, scale)
        if root is not None:
            return [root]
    (a, ca), (b, cb) = _split_counted(fn, rect, spec)
    if ca[0] + cb[0] != count:
        logger.debug('Recount mismatch in %s: %d != %d + %d', rect, count, ca[0], cb[0])
    return (_isolate_and_polish(fn, a, ca, spec, residual, scale, depth + 1)
            + _isolate_and_polish(fn, b, cb, spec, residual, scale, depth + 1))



def deduplicate(roots: list[complex], tol: float) -> list[complex]:
    unique: list[complex] = []
    for r in roots:
        if all(abs(r - u) > tol for u in unique):
            unique.append(r)
    return unique



def find_roots_in_rectangle(fn: Callable[[np.ndarray], np.ndarray],
                            rect: Rectangle,
                            residual: Callable[[complex], float],
                            spec: Optional[RootSearchSpecification] = None) -> list[complex]:

    '''
    All zeros of an analytic function inside a rectangle: counted with the
    argument principle, isolated by bisection and polished by Newton
    iterations.

    Parameters:
    fn: Vectorized function of complex arguments.
    rect: Search rectangle. It is nudged outwards if a zero sits on its edge.
    residual: Scalar relative residual used to accept a polished root.
    spec: Root search settings.
    '''

    spec = RootSearchSpecification() if spec is None else spec

    counted = None
    for k in range(6):
        try:
            pad = 1e-7 * k * rect.size
            trial = Rectangle(rect.re_min - pad, rect.re_max + pad,
                              rect.im_min - pad, rect.im_max + pad)
            n_threads = max(1, int(spec.get('threads', 1)))
            cells = trial.strips(n_threads) if n_threads > 1 else [trial]
            counted = [(cell, _safe_count(fn, cell, spec)) for cell in cells]
            rect = trial
            break
        except _BoundaryZero:
            continue
    if counted is None:
        raise ModeSolverError(f'Zero on the boundary of {rect} could not be avoided.')

    total = sum(c[1][0] for c in counted)
    logger.debug('Argument principle: %d zero(s) in %s', total, rect)
    if total == 0:
        return []

    scale = rect.size

    def search(item):
        cell, cell_count = item
        return _isolate_and_polish(fn, cell, cell_count, spec, residual, scale)

    if len(counted) > 1:
        with ThreadPoolExecutor(max_workers=len(counted)) as executor:
            found = [r for roots in executor.map(search, counted) for r in roots]
    else:
        found = search(counted[0])

    found = deduplicate(found, tol=10.0 * spec['tol_root'] * scale)
    if len(found) != total:
        raise ModeCountError(
            f'Root count mismatch: argument principle counted {total}, '
            f'polishing produced {len(found)} in {rect}.'
        )
    return found



def guided_search_region(stack: LayerStack) -> Optional[Rectangle]:

    '''
    Rectangle in p = q - k0 holding all guided modes, or None when the stack
    cannot guide.
    '''

    left, right = stack.guided_window()
    if right <= left:
        return None
    width = right - left
    k0 = stack.k0
    im_max = 10.0 * float(np.max(stack.offsets.imag)) * k0
    height = max(im_max, 0.05 * width)
    return Rectangle(left + 1e-6 * width, right + 1e-6 * width, -0.01 * height, height)



def find_guided_modes(stack: LayerStack,
                      spec: Optional[RootSearchSpecification] = None,
                      relative: bool = False) -> np.ndarray:

    '''
    Guided-mode wavenumbers of a stack, sorted by descending real part.

    Parameters:
    relative: Return p = q - k0 instead of q.
    '''

    spec = RootSearchSpecification() if spec is None else spec
    if spec['method'] != 'argument_principle':
        raise ValueError(f"Root search method {spec['method']!r} not recognized.")

    region = guided_search_region(stack)
    if region is None:
        return np.array([], dtype=complex)

    def fn(p):
        return relative_determinant(stack, p, sheet=1)

    def residual(p):
        return relative_residual(stack, p, sheet=1)

    roots = find_roots_in_rectangle(fn, region, residual, spec)
    roots = np.array(sorted(roots, key=lambda r: -r.real), dtype=complex)
    logger.info('Found %d guided mode(s) for %r', len(roots), stack)
    return roots if relative else roots + stack.k0



def find_leaky_modes(stack: LayerStack,
                     search_region: Rectangle,
                     spec: Optional[RootSearchSpecification] = None,
                     relative: bool = False) -> np.ndarray:

    '''
    Leaky-mode wavenumbers inside a search rectangle.

    Roots of the determinant continued to the sheet with sign-flipped
    cladding decay (cut rotated towards -i). Only roots above cutoff, i.e.
    with Re q below the cladding light line, are reported.

    Parameters:
    search_region: Rectangle in q, or in p = q - k0 when relative is True.
    '''

    spec = RootSearchSpecification() if spec is None else spec
    region = search_region if relative else search_region.shifted(-stack.k0)

    def fn(p):
        return relative_determinant(stack, p, sheet=-1, rotated_cut=True)

    def residual(p):
        return relative_residual(stack, p, sheet=-1, rotated_cut=True)

    roots = find_roots_in_rectangle(fn, region, residual, spec)
    cutoff = max(stack.top.offset.real, stack.bottom.offset.real) * stack.k0
    roots = [r for r in roots if r.real < cutoff]
    roots = np.array(sorted(roots, key=lambda r: -r.real), dtype=complex)
    logger.info('Found %d leaky mode(s) in %s', len(roots), region)
    return roots if relative else roots + stack.k0
