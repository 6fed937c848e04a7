############################################################################
### NucWave - CLASS Scenario
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import os
import re
from fractions import Fraction
from typing import Any, Optional

# Third party imports
import numpy as np
import tomli

# Local modules imports
from helper_functions import sha256_text
from materials.optical_data import (
    MaterialOpticalData,
    load_bundled_material,
    load_material_table,
)
from modes.dispersion import Rectangle
from modes.layer_stack import LayerStack
from nuclear.species import (
    FE57,
    NuclearSpecies,
    gamma_from_linewidth,
)




class ScenarioError(ValueError):
    pass



# Unit suffix -> factor to SI (energies to eV).
UNITS = {
    'length': {'nm': 1e-9, 'um': 1e-6, 'mm': 1e-3, 'm': 1.0},
    'energy': {'neV': 1e-9, 'ueV': 1e-6, 'meV': 1e-3, 'eV': 1.0, 'keV': 1e3},
    'time': {'ps': 1e-12, 'ns': 1e-9, 'us': 1e-6, 'ms': 1e-3, 's': 1.0},
    'frequency': {'1/s': 1.0},
    'density': {'1/m3': 1.0, '1/cm3': 1e6},
    'wavenumber': {'1/nm': 1e9, '1/um': 1e6, '1/mm': 1e3, '1/m': 1.0},
}

_QUANTITY = re.compile(r'^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z0-9/]+)\s*$')

SECTIONS = {
    'stack': {'top', 'bottom', 'energy', 'materials_dir'},
    'layer': {'material', 'thickness', 'resonant'},
    'species': {'name', 'E0', 'linewidth', 'alpha', 'f_LM', 'I_g', 'I_e', 'rho_N', 'enrichment'},
    'request': {'kind', 'modes', 'overlap_region', 'leaky_region'},
    'grid': {'x', 't', 'omega'},
    'strips': {'layout', 'count', 'width', 'first', 'observe', 'layout_file',
               'strip_counts', 'observation_phases'},
    'tolerances': {'root', 'dyson', 'dyson_n_max', 'fft_span', 'fft_spacing', 'fft_orders'},
}

REQUEST_KINDS = ('modes', 'bulk', 'strips', 'sweep')

GRID_DEFAULTS = {
    'x': {'start': '0 um', 'stop': '100 um', 'count': 51},
    't': {'start': '0 ns', 'stop': '700 ns', 'count': 351},
    'omega': {'start': '-20 gamma', 'stop': '20 gamma', 'count': 401},
}

GRID_DIMENSIONS = {'x': 'length', 't': 'time', 'omega': 'frequency'}

STRIP_DEFAULTS = {
    'layout': 'both',
    'count': 12,
    'width': '1 um',
    'first': 1,
    'observe': '0 um',
    'strip_counts': [1, 5, 12, 13, 30],
    'observation_phases': [0.0, 0.25, 0.5],
}

TOLERANCE_DEFAULTS = {
    'root': 1e-10,
    'dyson': 1e-12,
    'dyson_n_max': 200,
    'fft_span': 400.0,
    'fft_spacing': 0.02,
    'fft_orders': 4,
}



class Scenario:

    """
    Validated simulation input.

    Attributes:
    ----------
    text : str
        The scenario document as read.
    stack : dict
        'top', 'bottom' (material names), 'energy' (eV), 'materials_dir',
        'layers' (list of (material, thickness in m, resonant)).
    species : NuclearSpecies
    request : dict
        'kind', 'modes' (0-based indices or None), 'overlap_region',
        'leaky_region' (Rectangle in q - k0 or None).
    grid : dict
        'x' (m), 't' (s) arrays; 'omega' as (start, stop, count, unit) resolved
        against gamma by omega_grid().
    strips : dict
    tolerances : dict
    """

    def __init__(self,
                 text: str,
                 stack: dict,
                 species: NuclearSpecies,
                 request: dict,
                 grid: dict,
                 strips: dict,
                 tolerances: dict) -> None:
        self.text = text
        self.stack = stack
        self.species = species
        self.request = request
        self.grid = grid
        self.strips = strips
        self.tolerances = tolerances

    @property
    def kind(self) -> Optional[str]:
        return self.request.get('kind')

    @property
    def digest(self) -> str:
        return sha256_text(self.text)

    def omega_grid(self) -> np.ndarray:
        start, stop, count = self.grid['omega']
        scale = lambda v: v[0] * (self.species.gamma if v[1] == 'gamma' else 1.0)
        return np.linspace(scale(start), scale(stop), count)

    def material(self, name: str) -> MaterialOpticalData:
        directory = self.stack.get('materials_dir')
        if directory:
            filename = os.path.join(directory, f'{name}.txt')
            if os.path.isfile(filename):
                return load_material_table(filename, name=name)
        return load_bundled_material(name)

    def build_stack(self) -> LayerStack:
        return LayerStack.from_materials(
            top=self.material(self.stack['top']),
            layers=[(self.material(m), d, r) for m, d, r in self.stack['layers']],
            bottom=self.material(self.stack['bottom']),
            energy=self.stack['energy'],
        )

    def with_kind(self, kind: str) -> 'Scenario':
        if kind not in REQUEST_KINDS:
            raise ScenarioError(f'Unknown request kind {kind!r}; expected one of {REQUEST_KINDS}.')
        request = dict(self.request, kind=kind)
        return Scenario(self.text, self.stack, self.species, request, self.grid,
                        self.strips, self.tolerances)

    def __repr__(self) -> str:
        return f'Scenario(kind={self.kind!r}, layers={len(self.stack["layers"])})'






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def parse_quantity(value: Any, dimension: str, key: str) -> tuple[float, str]:

    '''
    Splits '15.8 nm' into (15.8, 'nm') after checking that the unit belongs
    to the expected dimension. Frequencies may also be given in 'gamma'.
    '''

    if not isinstance(value, str):
        raise ScenarioError(f'{key}: expected a quantity with a unit, e.g. "15.8 nm", got {value!r}.')
    match = _QUANTITY.match(value)
    if match is None:
        raise ScenarioError(f'{key}: cannot parse quantity {value!r}.')
    number, unit = float(match.group(1)), match.group(2)
    allowed = UNITS[dimension]
    if dimension == 'frequency' and unit == 'gamma':
        return number, unit
    if unit not in allowed:
        known = {u: d for d, table in UNITS.items() for u in table}
        found = known.get(unit, 'unknown')
        raise ScenarioError(
            f'{key}: unit {unit!r} ({found}) where a {dimension} is expected '
            f'(one of {sorted(allowed)}).'
        )
    return number, unit



def to_si(value: Any, dimension: str, key: str) -> float:
    number, unit = parse_quantity(value, dimension, key)
    return number * UNITS[dimension][unit]



def _check_keys(section: str, table: dict) -> None:
    unknown = sorted(set(table) - SECTIONS[section])
    if unknown:
        raise ScenarioError(f'[{section}] unknown key(s): {", ".join(unknown)}.')



def _require(table: dict, key: str, label: str) -> Any:
    if key not in table:
        raise ScenarioError(f"Missing required key '{label}'.")
    return table[key]



def _parse_stack(doc: dict) -> dict:
    table = doc.get('stack', {})
    _check_keys('stack', table)
    top = str(_require(table, 'top', 'stack.top'))
    bottom = str(_require(table, 'bottom', 'stack.bottom'))
    energy = to_si(_require(table, 'energy', 'stack.energy'), 'energy', 'stack.energy')
    layers_raw = doc.get('layer', [])
    if not layers_raw:
        raise ScenarioError("Missing required key 'layer' (at least one [[layer]] table).")
    layers = []
    for i, layer in enumerate(layers_raw):
        _check_keys('layer', layer)
        material = str(_require(layer, 'material', f'layer[{i}].material'))
        thickness = to_si(_require(layer, 'thickness', f'layer[{i}].thickness'),
                          'length', f'layer[{i}].thickness')
        if not thickness > 0:
            raise ScenarioError(f'layer[{i}].thickness must be positive.')
        layers.append((material, thickness, bool(layer.get('resonant', False))))
    n_resonant = sum(r for _, _, r in layers)
    if n_resonant != 1:
        raise ScenarioError(f'Exactly one layer must be marked resonant, found {n_resonant}.')
    return {
        'top': top,
        'bottom': bottom,
        'energy': energy,
        'materials_dir': table.get('materials_dir'),
        'layers': layers,
    }



def _parse_spin(value: Any, key: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(f'{key}: cannot parse spin {value!r}.') from None



def _parse_species(doc: dict) -> NuclearSpecies:
    table = doc.get('species', {})
    _check_keys('species', table)
    values = {}
    if 'E0' in table:
        values['E0'] = to_si(table['E0'], 'energy', 'species.E0') * 1e-3
    if 'linewidth' in table:
        values['gamma'] = gamma_from_linewidth(to_si(table['linewidth'], 'energy', 'species.linewidth'))
    for key in ('alpha', 'f_LM'):
        if key in table:
            values[key] = float(table[key])
    for key in ('I_g', 'I_e'):
        if key in table:
            values[key] = _parse_spin(table[key], f'species.{key}')
    if 'rho_N' in table and 'enrichment' in table:
        raise ScenarioError('species: give either rho_N or enrichment, not both.')
    if 'rho_N' in table:
        values['rho_N'] = to_si(table['rho_N'], 'density', 'species.rho_N')
    if 'enrichment' in table:
        values['rho_N'] = FE57.rho_N * float(table['enrichment'])
    if 'name' in table:
        values['name'] = str(table['name'])
    try:
        return FE57.replace(**values)
    except ValueError as error:
        raise ScenarioError(f'species: {error}') from None



def _parse_request(doc: dict) -> dict:
    table = doc.get('request', {})
    _check_keys('request', table)
    kind = table.get('kind')
    if kind is not None and kind not in REQUEST_KINDS:
        raise ScenarioError(f'request.kind {kind!r} not recognized; expected one of {REQUEST_KINDS}.')
    modes = table.get('modes')
    if modes is not None:
        if not isinstance(modes, list) or not all(isinstance(m, int) and m >= 0 for m in modes):
            raise ScenarioError('request.modes must be a list of 0-based mode indices.')
    region = table.get('overlap_region', 'core')
    if region not in ('all', 'core'):
        raise ScenarioError("request.overlap_region must be 'all' or 'core'.")
    leaky = table.get('leaky_region')
    if leaky is not None:
        if not isinstance(leaky, list) or len(leaky) != 4:
            raise ScenarioError('request.leaky_region must list re_min, re_max, im_min, im_max.')
        bounds = [to_si(v, 'wavenumber', 'request.leaky_region') for v in leaky]
        try:
            leaky = Rectangle(*bounds)
        except ValueError as error:
            raise ScenarioError(f'request.leaky_region: {error}') from None
    return {'kind': kind, 'modes': modes, 'overlap_region': region, 'leaky_region': leaky}



def _parse_axis(name: str, table: dict) -> tuple:
    axis = dict(GRID_DEFAULTS[name])
    given = table.get(name, {})
    if not isinstance(given, dict):
        raise ScenarioError(f'grid.{name} must be a table with start, stop and count.')
    unknown = sorted(set(given) - {'start', 'stop', 'count'})
    if unknown:
        raise ScenarioError(f'[grid.{name}] unknown key(s): {", ".join(unknown)}.')
    axis.update(given)
    count = axis['count']
    if not isinstance(count, int) or count < 1:
        raise ScenarioError(f'grid.{name}.count must be a positive integer.')
    dimension = GRID_DIMENSIONS[name]
    start = parse_quantity(axis['start'], dimension, f'grid.{name}.start')
    stop = parse_quantity(axis['stop'], dimension, f'grid.{name}.stop')
    start_si = start[0] * (1.0 if start[1] == 'gamma' else UNITS[dimension][start[1]])
    stop_si = stop[0] * (1.0 if stop[1] == 'gamma' else UNITS[dimension][stop[1]])
    if name == 'omega' and (start[1] == 'gamma') != (stop[1] == 'gamma'):
        raise ScenarioError('grid.omega: start and stop must both be in gamma or both in 1/s.')
    if count > 1 and not stop_si > start_si:
        raise ScenarioError(f'grid.{name}: stop must exceed start for a strictly increasing grid.')
    if name == 'omega':
        return (start[0], start[1]), (stop[0], stop[1]), count
    return np.linspace(start_si, stop_si, count)



def _parse_grid(doc: dict) -> dict:
    table = doc.get('grid', {})
    _check_keys('grid', table)
    grid = {name: _parse_axis(name, table) for name in ('x', 't', 'omega')}
    if np.any(grid['x'] < 0):
        raise ScenarioError('grid.x must be non-negative.')
    return grid



def _parse_strips(doc: dict) -> dict:
    table = doc.get('strips', {})
    _check_keys('strips', table)
    strips = dict(STRIP_DEFAULTS)
    strips.update(table)
    if strips['layout'] not in ('constructive', 'destructive', 'both', 'file'):
        raise ScenarioError("strips.layout must be 'constructive', 'destructive', 'both' or 'file'.")
    if strips['layout'] == 'file' and 'layout_file' not in strips:
        raise ScenarioError("Missing required key 'strips.layout_file' for layout = 'file'.")
    for key in ('count', 'first'):
        if not isinstance(strips[key], int) or strips[key] < (1 if key == 'count' else 0):
            raise ScenarioError(f'strips.{key} must be a {"positive" if key == "count" else "non-negative"} integer.')
    strips['width'] = to_si(strips['width'], 'length', 'strips.width')
    if not strips['width'] > 0:
        raise ScenarioError('strips.width must be positive.')
    strips['observe'] = to_si(strips['observe'], 'length', 'strips.observe')
    counts = strips['strip_counts']
    if not isinstance(counts, list) or not all(isinstance(n, int) and n >= 1 for n in counts):
        raise ScenarioError('strips.strip_counts must be a list of positive integers.')
    phases = strips['observation_phases']
    if not isinstance(phases, list) or not all(isinstance(p, (int, float)) for p in phases):
        raise ScenarioError('strips.observation_phases must be a list of numbers (multiples of pi).')
    strips['observation_phases'] = [float(p) for p in phases]
    return strips



def _parse_tolerances(doc: dict) -> dict:
    table = doc.get('tolerances', {})
    _check_keys('tolerances', table)
    tolerances = dict(TOLERANCE_DEFAULTS)
    for key, value in table.items():
        try:
            tolerances[key] = type(TOLERANCE_DEFAULTS[key])(value)
        except (TypeError, ValueError):
            raise ScenarioError(f'tolerances.{key}: cannot parse {value!r}.') from None
    return tolerances



def parse_scenario(text: str) -> Scenario:

    '''
    Parses and validates a TOML scenario document. Defaults are filled for
    the species (57Fe), grids, strip layout and tolerances.
    '''

    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as error:
        raise ScenarioError(f'Invalid TOML: {error}') from None
    unknown = sorted(set(doc) - set(SECTIONS))
    if unknown:
        raise ScenarioError(f'Unknown section(s): {", ".join(unknown)}.')
    if 'stack' not in doc:
        raise ScenarioError("Missing required key 'stack.top'.")
    return Scenario(
        text=text,
        stack=_parse_stack(doc),
        species=_parse_species(doc),
        request=_parse_request(doc),
        grid=_parse_grid(doc),
        strips=_parse_strips(doc),
        tolerances=_parse_tolerances(doc),
    )



def load_scenario(filename: str) -> Scenario:
    with open(filename, 'r', encoding='utf-8') as f:
        return parse_scenario(f.read())
