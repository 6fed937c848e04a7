############################################################################
### NucWave - TESTS: scenario files and command line
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import json
import os
from fractions import Fraction

# Third party imports
import numpy as np
import pandas as pd
import pytest

# Local modules imports
from conftest import SCENARIO_PATH
from cli_io.cli import main
from cli_io.scenario import ScenarioError, load_scenario, parse_scenario
from cli_io.simulation import SimulationError, apply_tolerance_overrides, qualified_message, run
from helper_functions import sha256_text
from nuclear.species import FE57
from propagation.frequency_domain import propagate_frequency
from strips.strip_array import StripArray



MINIMAL = '''
[stack]
top = "Mo"
bottom = "Mo"
energy = "14.4 keV"

[[layer]]
material = "Fe"
thickness = "5 nm"
resonant = true
'''


def scenario_text(**replacements) -> str:
    with open(SCENARIO_PATH, 'r', encoding='utf-8') as f:
        text = f.read()
    small = {
        'x = { start = "0 um", stop = "100 um", count = 51 }':
            'x = { start = "0 um", stop = "40 um", count = 3 }',
        't = { start = "0 ns", stop = "700 ns", count = 351 }':
            't = { start = "0 ns", stop = "200 ns", count = 11 }',
        'omega = { start = "-20 gamma", stop = "20 gamma", count = 401 }':
            'omega = { start = "-20 gamma", stop = "20 gamma", count = 21 }',
    }
    small.update(replacements)
    for old, new in small.items():
        assert old in text
        text = text.replace(old, new)
    return text


def write_scenario(path, text: str) -> str:
    filename = os.path.join(str(path), 'scenario.toml')
    with open(filename, 'w', encoding='utf-8') as f:
        f.write(text)
    return filename


def read_manifest(path) -> dict:
    with open(os.path.join(str(path), 'manifest.json'), 'r', encoding='utf-8') as f:
        return json.load(f)





# --------------------------------------------------------------------------
# Scenario parsing
# --------------------------------------------------------------------------

def test_minimal_scenario_defaults():
    scenario = parse_scenario(MINIMAL)
    assert scenario.kind is None
    assert scenario.request['overlap_region'] == 'core'
    assert scenario.stack['energy'] == pytest.approx(14400.0)
    assert scenario.stack['layers'] == [('Fe', pytest.approx(5e-9), True)]
    assert scenario.species.gamma == FE57.gamma
    assert len(scenario.grid['x']) == 51
    assert scenario.grid['x'][-1] == pytest.approx(100e-6)
    assert scenario.tolerances['fft_orders'] == 4
    assert scenario.strips['width'] == pytest.approx(1e-6)
    assert scenario.digest == sha256_text(MINIMAL)


def test_bundled_scenario(scenario_path, table_stack):
    scenario = load_scenario(scenario_path)
    assert scenario.kind == 'bulk'
    assert scenario.request['overlap_region'] == 'core'
    assert scenario.species.rho_N == pytest.approx(FE57.rho_N)
    assert scenario.species.I_e == Fraction(3, 2)
    assert scenario.grid['t'][1] == pytest.approx(2e-9)
    stack = scenario.build_stack()
    assert stack.z0 == pytest.approx(table_stack.z0)
    assert stack.layers[1].offset == table_stack.layers[1].offset


def test_omega_grid_in_linewidths():
    scenario = parse_scenario(scenario_text())
    omega = scenario.omega_grid()
    assert len(omega) == 21
    assert omega[0] == pytest.approx(-20.0 * scenario.species.gamma)
    assert omega[10] == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize('text, message', [
    ('', "Missing required key 'stack.top'"),
    (MINIMAL.replace('resonant = true', 'resonant = false'), 'Exactly one layer'),
    (MINIMAL + '\n[[layer]]\nmaterial = "Fe"\nthickness = "1 nm"\nresonant = true\n', 'Exactly one layer'),
    (MINIMAL.replace('top = "Mo"', 'top = "Mo"\ncolour = "blue"'), 'unknown key'),
    (MINIMAL + '\n[extras]\nx = 1\n', 'Unknown section'),
    (MINIMAL.replace('"5 nm"', '"5 keV"'), 'where a length is expected'),
    (MINIMAL.replace('"5 nm"', '5'), 'expected a quantity with a unit'),
    (MINIMAL.replace('"5 nm"', '"-5 nm"'), 'must be positive'),
    (MINIMAL + '\n[request]\nkind = "film"\n', 'not recognized'),
    (MINIMAL + '\n[species]\nrho_N = "1e28 1/m3"\nenrichment = 0.5\n', 'not both'),
    (MINIMAL + '\n[species]\nf_LM = 1.5\n', 'f_LM'),
    (MINIMAL + '\n[grid]\nx = { start = "10 um", stop = "5 um", count = 4 }\n', 'stop must exceed start'),
    (MINIMAL + '\n[grid]\nomega = { start = "-20 gamma", stop = "1e8 1/s", count = 4 }\n', 'both in gamma'),
    (MINIMAL + '\n[strips]\nlayout = "file"\n', 'layout_file'),
    (MINIMAL + '\n[tolerances]\nroot = "tight"\n', 'cannot parse'),
    (MINIMAL + '\n[tolerances]\nsteps = 3\n', 'unknown key'),
    ('[stack\n', 'Invalid TOML'),
])
def test_invalid_scenarios(text, message):
    with pytest.raises(ScenarioError, match=message):
        parse_scenario(text)


def test_tolerance_overrides():
    scenario = parse_scenario(MINIMAL)
    apply_tolerance_overrides(scenario, ['fft_orders=6', 'root = 1e-9'])
    assert scenario.tolerances['fft_orders'] == 6
    assert isinstance(scenario.tolerances['fft_orders'], int)
    assert scenario.tolerances['root'] == 1e-9
    with pytest.raises(ScenarioError, match='Bad tolerance override'):
        apply_tolerance_overrides(scenario, ['steps=3'])
    with pytest.raises(ScenarioError, match='Bad tolerance override'):
        apply_tolerance_overrides(scenario, ['root'])
    with pytest.raises(ScenarioError, match='cannot parse'):
        apply_tolerance_overrides(scenario, ['root=tight'])


def test_unknown_subcommand_kind():
    with pytest.raises(ScenarioError):
        parse_scenario(MINIMAL).with_kind('film')





# --------------------------------------------------------------------------
# Error reporting
# --------------------------------------------------------------------------

def test_errors_are_prefixed_with_their_package(two_mode_system):
    with pytest.raises(ValueError) as info:
        StripArray([0.0, 0.5e-6], 1e-6, two_mode_system, 10.0)
    assert qualified_message(info.value).startswith('[strips] StripError: Strips 0 and 1 overlap')
    with pytest.raises(ValueError) as info:
        propagate_frequency(two_mode_system, -1.0, 0.0)
    assert qualified_message(info.value).startswith('[propagate] ValueError')


def test_missing_config_is_a_usage_error(tmp_path):
    missing = os.path.join(str(tmp_path), 'nope.toml')
    assert main(['modes', '--config', missing, '--out', str(tmp_path / 'out'), '--quiet']) == 2
    assert main(['modes', '--config', missing, '--out', str(tmp_path / 'out'), '--threads', '0']) == 2


def test_bad_override_is_a_usage_error(tmp_path):
    config = write_scenario(tmp_path, scenario_text())
    assert main(['modes', '--config', config, '--out', str(tmp_path / 'out'), '--quiet',
                 '--tolerance', 'steps=4']) == 2


def test_run_without_kind(tmp_path):
    with pytest.raises(SimulationError, match='No request kind'):
        run(parse_scenario(MINIMAL), str(tmp_path))


def test_computation_errors_exit_with_one(tmp_path):
    text = scenario_text(**{'overlap_region = "core"': 'overlap_region = "core"\nmodes = [0, 7]'})
    config = write_scenario(tmp_path, text)
    assert main(['bulk', '--config', config, '--out', str(tmp_path / 'out'), '--quiet']) == 1
    with pytest.raises(SimulationError, match=r'\[cli_io\] ValueError: Mode indices \[7\]'):
        run(parse_scenario(text), str(tmp_path / 'out'))





# --------------------------------------------------------------------------
# Runs
# --------------------------------------------------------------------------

def test_modes_run_is_reproducible(tmp_path):
    config = write_scenario(tmp_path, scenario_text())
    first, second = tmp_path / 'first', tmp_path / 'second'
    assert main(['modes', '--config', config, '--out', str(first), '--quiet']) == 0
    assert main(['modes', '--config', config, '--out', str(second), '--quiet']) == 0

    content = read_manifest(first)
    assert content['kind'] == 'modes'
    assert content['tool'] == 'nucwave'
    assert content['artifacts'] == ['modes.csv', 'profiles.dat', 'two_mode.csv']
    with open(config, 'r', encoding='utf-8') as f:
        assert content['scenario_sha256'] == sha256_text(f.read())
    assert content['tolerances']['root']['tol_root'] == 1e-10
    assert sorted(content['tolerances']) == ['root']

    modes = pd.read_csv(first / 'modes.csv')
    assert list(modes['index']) == [1, 2, 3]
    two_mode = pd.read_csv(first / 'two_mode.csv')
    assert two_mode['beat_length'].iloc[0] == pytest.approx(20.65e-6, rel=0.05)
    profiles = np.loadtxt(first / 'profiles.dat')
    assert profiles.shape == (401, 7)

    for name in content['artifacts'] + ['manifest.json']:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_bulk_run(tmp_path):
    scenario = parse_scenario(scenario_text())
    content = run(scenario, str(tmp_path))
    assert content['artifacts'] == ['dyson_check.csv', 'field2d.csv', 'field2d_mean_mode.csv',
                                    'input_field.dat', 'spectrum.csv']
    assert sorted(content['tolerances']) == ['dyson', 'fft', 'root']
    assert content['tolerances']['dyson']['tol'] == 1e-12
    assert content['tolerances']['fft']['span'] == 400.0

    field = pd.read_csv(tmp_path / 'field2d.csv')
    assert len(field) == 3 * 11
    assert list(field.columns) == ['x', 't', 're_B', 'im_B', 'abs2_B']
    at_entrance = field.loc[field['x'] == 0.0, 'abs2_B']
    assert at_entrance.max() < 1e-12 * field['abs2_B'].max()

    spectrum = pd.read_csv(tmp_path / 'spectrum.csv')
    assert spectrum['omega_over_gamma'].to_numpy() == pytest.approx(np.linspace(-20.0, 20.0, 21))
    assert np.all(np.isfinite(spectrum['abs2_T']))
    assert list(spectrum.columns[:2]) == ['omega', 'omega_over_gamma']

    check = pd.read_csv(tmp_path / 'dyson_check.csv')
    assert len(check) == 11
    assert check['x'].to_numpy() == pytest.approx(np.full(11, 20e-6))
    assert check['converged'].all()
    dyson = check['re_B_dyson'].to_numpy() + 1j * check['im_B_dyson'].to_numpy()
    fft = check['re_B_fft'].to_numpy() + 1j * check['im_B_fft'].to_numpy()
    assert np.max(np.abs(dyson - fft)) < 1e-2 * np.max(np.abs(dyson))


def test_strips_run(tmp_path):
    scenario = parse_scenario(scenario_text())
    content = run(scenario, str(tmp_path), kind='strips', threads=2)
    assert content['kind'] == 'strips'
    assert 'layout_constructive.csv' in content['artifacts']
    assert 'time_destructive.csv' in content['artifacts']
    assert 'spectrum_constructive.csv' in content['artifacts']

    constructive = pd.read_csv(tmp_path / 'layout_constructive.csv')
    destructive = pd.read_csv(tmp_path / 'layout_destructive.csv')
    assert len(constructive) == len(destructive) == 12
    beat = np.diff(constructive['x'].to_numpy())
    assert beat == pytest.approx(np.full(11, beat[0]))
    assert beat[0] == pytest.approx(20.65e-6, rel=0.05)
    assert np.diff(destructive['x'].to_numpy()) == pytest.approx(np.full(11, 0.5 * beat[0]))

    time = pd.read_csv(tmp_path / 'time_constructive.csv')
    assert list(time.columns) == ['t', 're_B', 'im_B', 'abs2_B']
    assert len(time) == 11


def test_sweep_run(tmp_path):
    scenario = parse_scenario(scenario_text())
    content = run(scenario, str(tmp_path), kind='sweep')
    assert content['artifacts'] == ['laguerre_vs_bessel.csv', 'parity_time.csv']
    assert sorted(content['tolerances']) == ['fft', 'root']
    laguerre = pd.read_csv(tmp_path / 'laguerre_vs_bessel.csv')
    assert len(laguerre) == 5 * 11
    assert sorted(laguerre['n_strips'].unique()) == [1, 5, 12, 13, 30]
    parity = pd.read_csv(tmp_path / 'parity_time.csv')
    assert len(parity) == 3 * 11
    assert sorted(parity['phase_over_pi'].unique()) == [0.0, 0.25, 0.5]
