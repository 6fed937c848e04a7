############################################################################
### NucWave - TEST FIXTURES
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import os
import sys

# Third party imports
import numpy as np
import pytest

# Add the project source directory to the path
SRC_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'src')
if SRC_PATH not in sys.path:
    sys.path.insert(0, SRC_PATH)

# Local modules imports
from materials.optical_data import load_bundled_material
from modes.layer_stack import LayerStack
from modes.mode_set import ModeSolver
from nuclear.response import ResponseModel
from nuclear.species import FE57
from propagation.effective_system import EffectiveSystem



SCENARIO_PATH = os.path.join(os.path.dirname(SRC_PATH), 'scenarios', 'molybdenum_waveguide.toml')

# Mo(inf)/B4C(15.8 nm)/57Fe(1 nm)/B4C(15.8 nm)/Mo(inf) at 14.4 keV
TABLE_ENERGY = 14400.0
TABLE_LAYERS = (('B4C', 15.8e-9, False), ('Fe', 1.0e-9, True), ('B4C', 15.8e-9, False))





# --------------------------------------------------------------------------
# Waveguide fixtures
# --------------------------------------------------------------------------

def build_table_stack() -> LayerStack:
    mo = load_bundled_material('Mo')
    return LayerStack.from_materials(
        top=mo,
        layers=[(load_bundled_material(m), d, r) for m, d, r in TABLE_LAYERS],
        bottom=mo,
        energy=TABLE_ENERGY,
    )


@pytest.fixture(scope='session')
def table_stack():
    return build_table_stack()


@pytest.fixture(scope='session')
def table_modes(table_stack):
    solver = ModeSolver()
    solver.solve(table_stack)
    return solver.mode_set


@pytest.fixture(scope='session')
def scenario_path():
    return SCENARIO_PATH





# --------------------------------------------------------------------------
# Effective system fixtures
# --------------------------------------------------------------------------

@pytest.fixture(scope='session')
def response():
    return ResponseModel(FE57)


@pytest.fixture(scope='session')
def gamma():
    return FE57.gamma


def make_system(q, xi, depth, x, beta0=None, response=None):

    '''
    EffectiveSystem whose effective depth zeta * tr(Lambda) * x has modulus
    'depth' at the distance x.
    '''

    response = ResponseModel(FE57) if response is None else response
    trace = abs(np.sum(np.asarray(xi, dtype=complex)))
    zeta = depth / (trace * x)
    return EffectiveSystem(q=q, xi=xi, zeta=zeta, response=response, beta0=beta0)


def random_system(rng: np.random.Generator, x: float, n_modes=None, max_depth: float = 10.0):

    '''
    Random passive system with well separated modes: (Re q_i - Re q_j) x
    is at least 20 and the effective depth at x lies in [0.5, max_depth].
    '''

    n = int(rng.integers(2, 4)) if n_modes is None else n_modes
    gaps = rng.uniform(20.0, 40.0, size=n - 1) / x
    re_q = np.concatenate([[0.0], np.cumsum(gaps)])
    re_q -= re_q.mean()
    q = re_q + 1j * rng.uniform(0.0, 500.0, size=n)
    xi = rng.uniform(0.5e-4, 1.5e-4, size=n) * np.exp(1j * rng.uniform(-0.3, 0.3, size=n))
    beta0 = rng.uniform(0.5, 5.0, size=n) * np.exp(1j * rng.uniform(-0.5, 0.5, size=n))
    depth = rng.uniform(0.5, max_depth)
    return make_system(q, xi, depth, x, beta0=beta0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture(scope='session')
def two_mode_system():
    # Beat length pi/delta_q = 20 um, effective depth 2 at 50 um
    delta_q = np.pi / 20e-6
    q = [delta_q + 40j, -delta_q + 60j]
    xi = [2.7e-4 + 2.6e-6j, 2.7e-4 - 4.0e-6j]
    return make_system(q, xi, depth=2.0, x=50e-6, beta0=[5.49, 0.61])


@pytest.fixture(scope='session')
def ideal_pair():
    # Equal couplings, no attenuation: sub-ensembles of a destructive grid decouple
    delta_q = np.pi / 20e-6
    q = [delta_q, -delta_q]
    xi = [2.7e-4, 2.7e-4]
    return make_system(q, xi, depth=2.0, x=50e-6, beta0=[5.49, 0.61])
