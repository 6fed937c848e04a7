############################################################################
### NucWave - MATERIAL OPTICAL DATA
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import io
import os
from typing import Union, Optional, IO

# Third party imports
import numpy as np
import pandas as pd





BUNDLED_DATA_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')



class MaterialTableError(ValueError):
    pass


class EnergyRangeError(ValueError):
    pass



class MaterialOpticalData:

    """
    Tabulated x-ray optical constants of a single material.

    The refractive index is n = 1 - delta + i*beta. Samples are held in a
    pandas DataFrame with columns 'energy' (eV), 'delta' and 'beta'.

    Attributes:
    ----------
    name : str
        Label of the material.
    samples : pd.DataFrame
        Copy of the validated sample table.
    """

    def __init__(self, name: str, samples: pd.DataFrame) -> None:
        self._name = str(name)
        self._samples = validate_samples(samples)

    @property
    def name(self) -> str:
        return self._name

    @property
    def samples(self) -> pd.DataFrame:
        return self._samples.copy()

    @property
    def energy_range(self) -> tuple[float, float]:
        energy = self._samples['energy']
        return float(energy.iloc[0]), float(energy.iloc[-1])

    def __len__(self) -> int:
        return len(self._samples)

    def __repr__(self) -> str:
        lo, hi = self.energy_range
        return f'MaterialOpticalData({self.name!r}, {len(self)} samples, {lo:g}-{hi:g} eV)'

    def index_at(self, energy: float) -> complex:
        return index_at(self, energy)

    def index_offset_at(self, energy: float) -> complex:
        return index_offset_at(self, energy)






# --------------------------------------------------------------------------
# Functions
# --------------------------------------------------------------------------

def validate_samples(samples: pd.DataFrame) -> pd.DataFrame:
    if not isinstance(samples, pd.DataFrame):
        raise TypeError("Expected a pandas DataFrame for 'samples'")
    missing = [c for c in ('energy', 'delta', 'beta') if c not in samples.columns]
    if missing:
        raise MaterialTableError(f'Sample table is missing columns {missing}.')
    if len(samples) == 0:
        raise MaterialTableError('Sample table is empty.')
    df = samples[['energy', 'delta', 'beta']].astype(float).reset_index(drop=True)
    if not np.all(np.isfinite(df.to_numpy())):
        raise MaterialTableError('Sample table contains non-finite values.')
    if np.any(np.diff(df['energy'].to_numpy()) <= 0):
        raise MaterialTableError('Photon energies must be strictly increasing.')
    if np.any(df['beta'].to_numpy() < 0):
        raise MaterialTableError('beta must be non-negative (passive medium).')
    return df



def load_material_table(source: Union[str, bytes, IO],
                        name: Optional[str] = None) -> MaterialOpticalData:

    '''
    Parses a plain-text optical constant table.

    One sample per line: 'energy_eV delta beta', whitespace separated.
    Lines starting with '#' and blank lines are ignored.

    Parameters:
    source: A file path, raw bytes, or a text/byte stream.
    name: Material label. Defaults to the file stem when a path is given.
    '''

    if isinstance(source, str):
        if name is None:
            name = os.path.splitext(os.path.basename(source))[0]
        with open(source, 'rb') as f:
            raw = f.read()
    elif isinstance(source, (bytes, bytearray)):
        raw = bytes(source)
    else:
        raw = source.read()

    text = raw.decode('utf-8') if isinstance(raw, (bytes, bytearray)) else str(raw)
    if name is None:
        name = 'unnamed'

    try:
        table = pd.read_csv(io.StringIO(text), sep=r'\s+', comment='#', header=None,
                            skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise MaterialTableError(f'{name}: no samples found.') from None
    except pd.errors.ParserError as error:
        raise MaterialTableError(f'{name}: cannot read table: {error}') from None

    if table.shape[1] != 3:
        raise MaterialTableError(
            f'{name}: expected 3 fields (energy_eV delta beta), got {table.shape[1]}.'
        )
    short = table.index[table.isna().any(axis=1)]
    if len(short):
        raise MaterialTableError(
            f'{name}: data row {short[0] + 1}: expected 3 fields (energy_eV delta beta).'
        )
    try:
        samples = table.apply(pd.to_numeric)
    except (TypeError, ValueError) as error:
        raise MaterialTableError(f'{name}: could not parse samples ({error}).') from None
    samples.columns = ['energy', 'delta', 'beta']

    try:
        return MaterialOpticalData(name=name, samples=samples)
    except MaterialTableError as error:
        raise MaterialTableError(f'{name}: {error}') from None



def load_bundled_material(name: str) -> MaterialOpticalData:
    filename = os.path.join(BUNDLED_DATA_PATH, f'{name}.txt')
    if not os.path.isfile(filename):
        available = sorted(
            os.path.splitext(f)[0] for f in os.listdir(BUNDLED_DATA_PATH) if f.endswith('.txt')
        )
        raise MaterialTableError(
            f'No bundled table for material {name!r}. Available: {available}'
        )
    return load_material_table(filename, name=name)



def vacuum(energy_range: tuple[float, float] = (1.0, 1.0e7)) -> MaterialOpticalData:
    samples = pd.DataFrame({
        'energy': list(energy_range),
        'delta': [0.0, 0.0],
        'beta': [0.0, 0.0],
    })
    return MaterialOpticalData(name='vacuum', samples=samples)



def _interpolate(material: MaterialOpticalData, energy: float) -> tuple[float, float]:
    samples = material._samples
    energy_grid = samples['energy'].to_numpy()
    lo, hi = energy_grid[0], energy_grid[-1]
    if not (lo <= energy <= hi):
        raise EnergyRangeError(
            f'{material.name}: energy {energy:g} eV outside the tabulated range '
            f'[{lo:g}, {hi:g}] eV.'
        )
    delta = float(np.interp(energy, energy_grid, samples['delta'].to_numpy()))
    beta = float(np.interp(energy, energy_grid, samples['beta'].to_numpy()))
    return delta, beta



def index_offset_at(material: MaterialOpticalData, energy: float) -> complex:
    '''Returns n - 1 = -delta + i*beta.'''
    delta, beta = _interpolate(material, energy)
    return complex(-delta, beta)



def index_at(material: MaterialOpticalData, energy: float) -> complex:
    delta, beta = _interpolate(material, energy)
    return complex(1.0 - delta, beta)



def serialize(material: MaterialOpticalData) -> str:
    lines = [
        f'# {material.name}',
        '# columns: energy_eV delta beta',
    ]
    for energy, delta, beta in material._samples.itertuples(index=False):
        lines.append(f'{energy:.17g} {delta:.17g} {beta:.17g}')
    return '\n'.join(lines) + '\n'
