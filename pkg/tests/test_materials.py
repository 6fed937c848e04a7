############################################################################
### NucWave - TESTS: materials
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import io

# Third party imports
import numpy as np
import pandas as pd
import pytest

# Local modules imports
from materials.optical_data import (
    EnergyRangeError,
    MaterialOpticalData,
    MaterialTableError,
    index_at,
    index_offset_at,
    load_bundled_material,
    load_material_table,
    serialize,
    vacuum,
)



MO_TABLE = b'''# Mo near 14.4 keV
# columns: energy_eV delta beta
14000 9.3104e-06 2.4482e-07

14400 8.80e-06 2.20e-07
15000 8.1101e-06 1.8839e-07
'''



def test_table_values_at_grid_points():
    mo = load_material_table(io.BytesIO(MO_TABLE), name='Mo')
    assert len(mo) == 3
    assert mo.name == 'Mo'
    assert index_at(mo, 14400.0) == pytest.approx(complex(1.0 - 8.80e-06, 2.20e-07), abs=1e-18)
    assert index_offset_at(mo, 14000.0) == pytest.approx(complex(-9.3104e-06, 2.4482e-07), abs=1e-20)


def test_linear_interpolation_between_samples():
    mo = load_material_table(io.BytesIO(MO_TABLE), name='Mo')
    energy = 14200.0
    delta = 0.5 * (9.3104e-06 + 8.80e-06)
    beta = 0.5 * (2.4482e-07 + 2.20e-07)
    assert mo.index_offset_at(energy) == pytest.approx(complex(-delta, beta), rel=1e-12)


def test_energy_outside_table():
    mo = load_material_table(io.BytesIO(MO_TABLE), name='Mo')
    with pytest.raises(EnergyRangeError):
        mo.index_at(20000.0)


@pytest.mark.parametrize('text, message', [
    (b'14000 1e-6\n', 'expected 3 fields'),
    (b'14000 1e-6 abc\n', 'could not parse'),
    (b'# only comments\n', 'no samples'),
    (b'14400 1e-6 1e-8\n14000 1e-6 1e-8\n', 'strictly increasing'),
    (b'14400 1e-6 -1e-8\n', 'non-negative'),
    (b'14000 1e-6 1e-8\n14400 1e-6\n', 'data row 2: expected 3 fields'),
    (b'14000 1e-6 1e-8\n14400 1e-6 1e-8 7\n', 'cannot read table'),
])
def test_malformed_tables(text, message):
    with pytest.raises(MaterialTableError, match=message):
        load_material_table(io.BytesIO(text), name='bad')


def test_indentation_and_tabs_are_accepted():
    text = b'# energy delta beta\n  14000 1e-6 1e-8\n\n14400\t2e-6\t3e-8\n'
    data = load_material_table(io.BytesIO(text), name='tabbed')
    assert list(data.samples['energy']) == [14000.0, 14400.0]
    assert data.samples['beta'].iloc[1] == pytest.approx(3e-8)


def test_serialize_reads_back():
    mo = load_material_table(io.BytesIO(MO_TABLE), name='Mo')
    again = load_material_table(io.StringIO(serialize(mo)), name='Mo')
    pd.testing.assert_frame_equal(mo.samples, again.samples)


def test_bundled_tables_cover_the_resonance():
    for name in ('Mo', 'B4C', 'Fe'):
        material = load_bundled_material(name)
        lo, hi = material.energy_range
        assert lo <= 14400.0 <= hi
        offset = material.index_offset_at(14400.0)
        assert offset.real < 0 and offset.imag > 0
    # Mo is optically denser than the B4C core
    assert load_bundled_material('Mo').index_offset_at(14400.0).real < \
        load_bundled_material('B4C').index_offset_at(14400.0).real


def test_unknown_bundled_material():
    with pytest.raises(MaterialTableError, match='Available'):
        load_bundled_material('Unobtainium')


def test_samples_are_copied():
    mo = load_material_table(io.BytesIO(MO_TABLE), name='Mo')
    samples = mo.samples
    samples.loc[0, 'delta'] = 1.0
    assert mo.samples.loc[0, 'delta'] == pytest.approx(9.3104e-06)


def test_vacuum_and_frame_validation():
    assert vacuum().index_at(14400.0) == 1.0
    with pytest.raises(TypeError):
        MaterialOpticalData('x', np.zeros((2, 3)))
    with pytest.raises(MaterialTableError, match='missing columns'):
        MaterialOpticalData('x', pd.DataFrame({'energy': [1.0]}))
