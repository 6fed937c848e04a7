############################################################################
### NucWave - ARTIFACT BUILDER FUNCTIONS
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------



# Standard library imports
from concurrent.futures import ThreadPoolExecutor

# Third party imports
import numpy as np
import pandas as pd

# Local modules imports
from helper_functions import complex_columns, field_frame
from modes.dispersion import find_leaky_modes
from modes.guided_mode import mode_profile
from modes.mode_set import TwoModeParams, mode_profiles_frame
from propagation.dyson import dyson_time_field
from propagation.effective_system import (
    EffectiveSystem,
    input_field,
    mean_mode_system,
)
from propagation.frequency_domain import total_field
from propagation.time_domain import fft_time_response
from strips.multiple_scattering import (
    forward_scattering_spectrum,
    on_resonance_profile,
    strip_time_response,
    transmission_spectrum,
)
from strips.placement import (
    constructive_positions,
    destructive_positions,
    layout_frame,
    read_layout,
)
from strips.strip_array import StripArray, StripError
from strips.temporal import bessel_limit_check



# Extra depth shown above and below the finite layers in profile plots.
PROFILE_MARGIN = 20e-9






# --------------------------------------------------------------------------
# Helpers
# --------------------------------------------------------------------------

def on_grid(t: np.ndarray, s: np.ndarray, t_grid: np.ndarray) -> np.ndarray:
    '''Linear interpolation of a complex FFT time series onto t_grid.'''
    return np.interp(t_grid, t, s.real) + 1j * np.interp(t_grid, t, s.imag)



def time_map(system: EffectiveSystem, x_grid: np.ndarray, t_grid: np.ndarray,
             spec, threads: int = 1) -> np.ndarray:

    '''
    FFT time responses for every x, evaluated on a worker pool when
    threads > 1.
    '''

    def one(x):
        t, s = fft_time_response(system, x, spec)
        return on_grid(t, s, t_grid)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, x_grid))
    else:
        rows = [one(x) for x in x_grid]
    return np.array(rows)



def ideal_two_mode(two_mode: TwoModeParams) -> TwoModeParams:
    '''Same beat with no attenuation, equal coupling magnitudes and no phase mismatch.'''
    ideal = TwoModeParams(two_mode)
    mean = 0.5 * sum(two_mode['xi_mags'])
    ideal.update(kappa_bar=0.0, delta_kappa=0.0, delta_phi=0.0, phi_bar=0.0, xi_mags=(mean, mean))
    return ideal



def ideal_system(service, two_mode: TwoModeParams) -> EffectiveSystem:
    q1, q2, xi1, xi2 = ideal_two_mode(two_mode).reconstruct()
    i, j = _pair(service)
    overlaps = service.mode_set.overlaps
    return service.system.replace(q=[q1, q2], xi=[xi1, xi2], beta0=[overlaps[i], overlaps[j]])



def _pair(service) -> list[int]:
    selection = service.scenario.request.get('modes')
    if selection is not None and len(selection) == 2:
        return list(selection)
    return service.mode_set.strongest(2)



def _layouts(service, two_mode: TwoModeParams) -> dict[str, np.ndarray]:
    strips = service.scenario.strips
    layout = strips['layout']
    n, first = strips['count'], strips['first']
    out = {}
    if layout in ('constructive', 'both'):
        out['constructive'] = constructive_positions(n, two_mode, first)
    if layout in ('destructive', 'both'):
        out['destructive'] = destructive_positions(n, two_mode, first)
    if layout == 'file':
        out['file'] = read_layout(strips['layout_file'])
    return out



def _arrays(service) -> dict[str, StripArray]:
    two_mode = service.two_mode()
    width = service.scenario.strips['width']
    return {
        name: StripArray(positions, width, service.system)
        for name, positions in _layouts(service, two_mode).items()
    }






# --------------------------------------------------------------------------
# Artifact builder functions (abfn) - modes
# --------------------------------------------------------------------------

def abfn_modes_table(service, **kwargs) -> pd.DataFrame:
    return service.mode_set.to_frame()



def abfn_profiles(service, **kwargs) -> pd.DataFrame:

    '''
    Guided mode profiles over the stack plus a margin; leaky profiles
    (unnormalized) are appended when a leaky search region is configured.
    '''

    stack = service.stack
    n_points = kwargs.get('n_points', 401)
    z = np.linspace(-PROFILE_MARGIN, stack.total_thickness + PROFILE_MARGIN, n_points)
    df = mode_profiles_frame(service.mode_set.modes, z)
    region = service.scenario.request.get('leaky_region')
    if region is not None:
        roots = find_leaky_modes(stack, region, spec=service.root_spec(), relative=True)
        leaky = [mode_profile(stack, p, relative=True, sheet=-1) for p in roots]
        for i, mode in enumerate(leaky, start=1):
            for key, value in complex_columns(f'leaky{i}', mode(z)).items():
                df[key] = value
    return df



def abfn_two_mode(service, **kwargs) -> pd.DataFrame:
    two_mode = service.two_mode()
    row = {key: value for key, value in two_mode.items() if key != 'xi_mags'}
    row['xi_mag_1'], row['xi_mag_2'] = two_mode['xi_mags']
    row['beat_length'] = two_mode.beat_length
    return pd.DataFrame([row])






# --------------------------------------------------------------------------
# Artifact builder functions (abfn) - bulk layer
# --------------------------------------------------------------------------

def abfn_field2d(service, **kwargs) -> pd.DataFrame:

    '''
    Scattered field B(x, t)/B_in(0) of the bulk resonant layer. With
    kwargs['mean_mode'] the single mean-mode reference is used instead.
    '''

    system = service.system
    if kwargs.get('mean_mode'):
        system = mean_mode_system(system)
    x = service.scenario.grid['x']
    t = service.scenario.grid['t']
    field = time_map(system, x, t, service.fft_spec(), service.settings.get('threads', 1))
    X, T = np.meshgrid(x, t, indexing='ij')
    return field_frame({'x': X, 't': T}, field)



def abfn_input_field(service, **kwargs) -> pd.DataFrame:
    x = service.scenario.grid['x']
    return field_frame({'x': x}, input_field(service.system, x), name='B_in')



def abfn_spectrum(service, **kwargs) -> pd.DataFrame:
    system = service.system
    x = float(service.scenario.grid['x'][-1])
    omega = service.scenario.omega_grid()
    T = total_field(system, x, omega) / system.input_total
    df = field_frame({'omega': omega}, T, name='T')
    df.insert(1, 'omega_over_gamma', omega / system.gamma)
    return df



def abfn_dyson_check(service, **kwargs) -> pd.DataFrame:

    '''
    Scattered field at the shortest positive distance of the x grid from
    the time-domain Dyson series next to the FFT result.
    '''

    system = service.system
    x_grid = service.scenario.grid['x']
    positive = x_grid[x_grid > 0]
    if len(positive) == 0:
        raise ValueError('Dyson check needs a positive distance in the x grid.')
    x = float(positive.min())
    t = service.scenario.grid['t']
    series = dyson_time_field(system, x, t, spec=service.dyson_spec())
    fft = time_map(system, [x], t, service.fft_spec())[0]
    df = field_frame({'t': t}, series.value, name='B_dyson')
    df.insert(0, 'x', x)
    for key, value in complex_columns('B_fft', fft).items():
        df[key] = value
    df['orders'] = series.order
    df['converged'] = series.converged
    return df






# --------------------------------------------------------------------------
# Artifact builder functions (abfn) - strips
# --------------------------------------------------------------------------

def abfn_layouts(service, **kwargs) -> dict[str, pd.DataFrame]:
    return {name: layout_frame(array.positions) for name, array in _arrays(service).items()}



def abfn_onres_profile(service, **kwargs) -> pd.DataFrame:
    x = service.scenario.grid['x']
    columns = {'x': x}
    for name, array in _arrays(service).items():
        columns[name] = on_resonance_profile(array, x)
    return pd.DataFrame(columns)



def _observation_point(service, array: StripArray) -> float:
    return float(array.positions[-1] + service.scenario.strips['observe'])



def abfn_strip_time(service, **kwargs) -> dict[str, pd.DataFrame]:
    t_grid = service.scenario.grid['t']
    out = {}
    for name, array in _arrays(service).items():
        t, s = strip_time_response(array, _observation_point(service, array), service.fft_spec())
        out[name] = field_frame({'t': t_grid}, on_grid(t, s, t_grid))
    return out



def abfn_strip_spectrum(service, **kwargs) -> dict[str, pd.DataFrame]:
    omega = service.scenario.omega_grid()
    response = service.system.response
    out = {}
    for name, array in _arrays(service).items():
        T = transmission_spectrum(array, _observation_point(service, array), omega)
        df = field_frame({'omega': omega}, T, name='T')
        bulk = forward_scattering_spectrum(array.total_depth, response, omega)
        for key, value in complex_columns('bulk', bulk).items():
            df[key] = value
        df['abs2_bulk'] = np.abs(bulk) ** 2
        out[name] = df
    return out






# --------------------------------------------------------------------------
# Artifact builder functions (abfn) - sweeps
# --------------------------------------------------------------------------

def abfn_laguerre_vs_bessel(service, **kwargs) -> pd.DataFrame:

    '''
    Constructive strip chains of several strip counts against the bulk
    response, all at the total effective depth of the configured chain.
    '''

    strips = service.scenario.strips
    system = service.system
    tau_eff = strips['count'] * strips['width'] * system.zeta * system.trace
    t = service.scenario.grid['t']
    frames = []
    for n in strips['strip_counts']:
        laguerre, bessel = bessel_limit_check(n, tau_eff, t, system.gamma)
        df = pd.DataFrame({'n_strips': n, 't': t})
        for key, value in complex_columns('laguerre', laguerre).items():
            df[key] = value
        for key, value in complex_columns('bessel', bessel).items():
            df[key] = value
        frames.append(df)
    return pd.concat(frames, ignore_index=True)



def abfn_parity_time(service, **kwargs) -> pd.DataFrame:

    '''
    Time spectra of the ideal destructive chain observed at beat phases
    phi = p pi after the last strip, i.e. at offsets phi/delta_q.
    '''

    strips = service.scenario.strips
    two_mode = ideal_two_mode(service.two_mode())
    system = ideal_system(service, service.two_mode())
    positions = destructive_positions(strips['count'], two_mode, first=0)
    try:
        array = StripArray(positions, strips['width'], system)
    except StripError as error:
        raise StripError(f'parity sweep: {error}') from None
    t_grid = service.scenario.grid['t']
    frames = []
    for p in strips['observation_phases']:
        x = positions[-1] + p * np.pi / abs(two_mode['delta_q'])
        t, s = strip_time_response(array, x, service.fft_spec())
        df = field_frame({'t': t_grid}, on_grid(t, s, t_grid))
        df.insert(0, 'phase_over_pi', p)
        frames.append(df)
    return pd.concat(frames, ignore_index=True)
