############################################################################
### NucWave - TESTS: strips
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
from math import comb

# Third party imports
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_genlaguerre

# Local modules imports
from conftest import make_system
from helper_functions import relative_l2_error
from modes.mode_set import two_mode_parameters
from propagation.effective_system import geometric_factor_U, input_field
from propagation.frequency_domain import total_field
from propagation.time_domain import invert_lorentzian_spectrum
from strips.multiple_scattering import (
    forward_scattering_spectrum,
    on_resonance_profile,
    scattering_orders,
    scattering_series_T,
    strip_time_response,
    transfer_total,
    transmission_spectrum,
)
from strips.placement import (
    constructive_positions,
    destructive_positions,
    parity_exponents,
    parity_transmissions,
    read_layout,
    write_layout,
)
from strips.strip_array import (
    StripArray,
    StripError,
    StripResponse,
    sherman_morrison_inverse,
    strip_envelope_variation,
    strip_susceptibility,
)
from strips.temporal import (
    bessel_limit_check,
    generalized_laguerre,
    laguerre_response,
    laguerre_sum,
)



WIDTH = 1e-6
TAU = 2.0e3
OMEGAS = np.linspace(-6.0, 6.0, 49)

# nu0 / gamma of the Mo/B4C/57Fe waveguide strips
NU0_OVER_GAMMA = 6.4056e-4 + 0.20477j


def ideal_params(system):
    return two_mode_parameters(system.q[0], system.q[1], system.xi[0], system.xi[1])


def proportionality_spread(a, b):
    mask = np.abs(b) > 1e-3 * np.max(np.abs(b))
    ratio = a[mask] / b[mask]
    return np.max(np.abs(ratio - ratio[0])) / abs(ratio[0])





# --------------------------------------------------------------------------
# Single strip
# --------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(
    a=st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    xi=st.lists(st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=5),
)
def test_sherman_morrison_inverse(a, xi):
    xi = np.array(xi, dtype=complex)
    if abs(1.0 + a * xi.sum()) < 0.1:
        return
    Lam = np.outer(xi, np.ones(len(xi)))
    product = (np.eye(len(xi)) + a * Lam) @ sherman_morrison_inverse(a, xi)
    assert np.max(np.abs(product - np.eye(len(xi)))) < 1e-10


def test_singular_strip_matrix():
    with pytest.raises(StripError, match='singular'):
        sherman_morrison_inverse(-1.0, [1.0])


def test_susceptibility_forms_agree(response, gamma):
    trace = 2.7e-4 + 1e-6j
    tau = 1.2e3
    strip = StripResponse(tau, trace, gamma)
    omega = OMEGAS * gamma
    assert strip_susceptibility(tau, trace, response, omega) == pytest.approx(strip.chi(omega), rel=1e-12)
    assert strip(0.0) == pytest.approx(-strip.nu0 / (0.5j * gamma + strip.nu0))


def test_collective_shift_and_broadening(gamma):
    strip = StripResponse(1.0, 4.0 * (0.20477 - 6.4056e-4j), gamma)
    assert strip.nu0 / gamma == pytest.approx(NU0_OVER_GAMMA)
    assert strip.width == pytest.approx(gamma * (1.0 + 2.0 * 0.20477))
    assert strip.collective_shift == pytest.approx(-6.4056e-4 * gamma)
    assert strip.pole == pytest.approx(-0.5j * gamma - strip.nu0)


def test_envelope_variation_across_a_strip():
    pair = two_mode_parameters(np.pi / 20.65e-6, -np.pi / 20.65e-6, 1.0, 1.0)
    assert strip_envelope_variation(1e-6, pair) < 0.0015
    assert strip_envelope_variation(1e-9, pair) < 1e-8





# --------------------------------------------------------------------------
# Strip array
# --------------------------------------------------------------------------

def test_array_validation(two_mode_system):
    with pytest.raises(StripError, match='overlap or touch'):
        StripArray([0.0, 0.5e-6], WIDTH, two_mode_system, TAU)
    with pytest.raises(StripError, match='overlap or touch'):
        StripArray([0.0, 2e-6, 1.5e-6], WIDTH, two_mode_system, TAU)
    with pytest.raises(StripError, match='width'):
        StripArray([0.0], 0.0, two_mode_system, TAU)
    with pytest.raises(StripError, match='depth'):
        StripArray([0.0], WIDTH, two_mode_system, -1.0)
    with pytest.raises(StripError, match='at least one'):
        StripArray([], WIDTH, two_mode_system, TAU)
    with pytest.raises(TypeError):
        StripArray([0.0], WIDTH, 'system', TAU)


def test_array_defaults(two_mode_system):
    array = StripArray([0.0, 5e-6, 12e-6], WIDTH, two_mode_system)
    assert array.tau == pytest.approx(WIDTH * two_mode_system.zeta)
    assert len(array) == 3
    assert array.total_depth == pytest.approx(3 * array.tau * two_mode_system.trace)
    assert array.subset([0, 2]).positions == pytest.approx([0.0, 12e-6])


def test_single_strip_transmission(two_mode_system, gamma):
    array = StripArray([4e-6], WIDTH, two_mode_system, TAU)
    x = 30e-6
    omega = OMEGAS * gamma
    chi = array.response.chi(omega)
    expected = input_field(two_mode_system, x) + chi * geometric_factor_U(two_mode_system, x - 4e-6) \
        * input_field(two_mode_system, 4e-6)
    assert transmission_spectrum(array, x, omega) == pytest.approx(expected, rel=1e-12)


def test_field_before_the_first_strip_is_free(two_mode_system, gamma):
    array = StripArray([10e-6, 20e-6], WIDTH, two_mode_system, TAU)
    T = transmission_spectrum(array, 5e-6, OMEGAS * gamma)
    assert T == pytest.approx(np.full(len(OMEGAS), input_field(two_mode_system, 5e-6)))
    assert np.all(scattering_orders(array, 5e-6) == 0)
    # strips beyond the observer do not contribute
    partial = transmission_spectrum(array, 15e-6, OMEGAS * gamma)
    single = transmission_spectrum(array.subset([0]), 15e-6, OMEGAS * gamma)
    assert partial == pytest.approx(single, rel=1e-14)


@pytest.mark.parametrize('N', [1, 2, 3, 5, 8])
def test_series_equals_transfer_product(N, rng, two_mode_system, gamma):
    gaps = rng.uniform(2.0, 9.0, size=N - 1) * 1e-6
    positions = np.concatenate([[1e-6], 1e-6 + np.cumsum(gaps)])
    array = StripArray(positions, WIDTH, two_mode_system, TAU)
    x = positions[-1] + 3.7e-6
    omega = OMEGAS * gamma
    product = transmission_spectrum(array, x, omega)
    series = scattering_series_T(array, x, omega)
    assert np.max(np.abs(product - series)) < 1e-10 * np.max(np.abs(product))


def test_scattering_order_range(two_mode_system):
    array = StripArray([0.0, 5e-6], WIDTH, two_mode_system, TAU)
    with pytest.raises(StripError, match='m_max'):
        scattering_orders(array, 10e-6, m_max=3)
    assert len(scattering_orders(array, 10e-6, m_max=1)) == 1


def test_transfer_product_of_one_strip(two_mode_system, gamma):
    array = StripArray([0.0], WIDTH, two_mode_system, TAU)
    W = transfer_total(array, 0.0)
    chi = array.response.chi(0.0)
    expected = np.eye(2) + chi * np.outer(two_mode_system.xi, np.ones(2)) / two_mode_system.trace
    assert W == pytest.approx(expected)


def test_forward_scattering_is_the_bulk_single_mode(response, gamma):
    xi = 2.7e-4 + 3e-6j
    q = -4.8e5 + 50j
    x = 40e-6
    system = make_system([q], [xi], depth=4.0, x=x)
    omega = OMEGAS * gamma
    bulk = forward_scattering_spectrum(system.zeta * xi * x, response, omega) * np.exp(1j * q * x)
    assert bulk == pytest.approx(total_field(system, x, omega), rel=1e-12)


def test_on_resonance_profile(two_mode_system):
    array = StripArray([0.0, 10e-6], WIDTH, two_mode_system, TAU)
    x = np.array([-1e-6, 5e-6, 15e-6])
    profile = on_resonance_profile(array, x)
    assert profile.shape == (3,)
    assert profile[0] == pytest.approx(0.0, abs=1e-24)
    assert profile[1] > 0





# --------------------------------------------------------------------------
# Placement
# --------------------------------------------------------------------------

def test_placement_spacing(ideal_pair):
    pair = ideal_params(ideal_pair)
    beat = np.pi / pair['delta_q']
    assert np.diff(constructive_positions(4, pair)) == pytest.approx(np.full(3, beat))
    assert np.diff(destructive_positions(4, pair)) == pytest.approx(np.full(3, 0.5 * beat))
    assert constructive_positions(2, pair, first=1)[0] == pytest.approx(beat)
    U = geometric_factor_U(ideal_pair, np.array([0.5 * beat, beat]))
    assert U == pytest.approx(np.array([0.0, -1.0]), abs=1e-12)


def test_phase_offset_shifts_the_grid():
    pair = two_mode_parameters(1e5, -1e5, np.exp(0.1j), np.exp(-0.1j))
    assert pair['delta_phi'] == pytest.approx(0.1)
    assert constructive_positions(1, pair)[0] == pytest.approx(-0.1 / 1e5)
    with pytest.raises(StripError, match='delta_q'):
        destructive_positions(3, two_mode_parameters(1.0 + 1.0j, 1.0 + 2.0j, 1.0, 1.0))


def test_parity_exponents():
    assert parity_exponents(1) == (0, 1)
    assert parity_exponents(4) == (2, 2)
    assert parity_exponents(5) == (2, 3)
    with pytest.raises(StripError):
        parity_exponents(0)


def test_sub_ensembles_decouple(ideal_pair, gamma):
    pair = ideal_params(ideal_pair)
    array = StripArray(destructive_positions(6, pair), WIDTH, ideal_pair, TAU)
    x = array.positions[-1] + 3.3e-6
    omega = OMEGAS * gamma
    free = input_field(ideal_pair, x)
    full = transmission_spectrum(array, x, omega) - free
    even = transmission_spectrum(array.subset([0, 2, 4]), x, omega) - free
    odd = transmission_spectrum(array.subset([1, 3, 5]), x, omega) - free
    assert np.max(np.abs(full - even - odd)) < 1e-12


@pytest.mark.parametrize('N', [1, 2, 3, 4, 5])
def test_destructive_chain_matches_parity_formula(N, ideal_pair, gamma):
    pair = ideal_params(ideal_pair)
    array = StripArray(destructive_positions(N, pair), WIDTH, ideal_pair, TAU)
    x = array.positions[-1] + 3.3e-6
    omega = OMEGAS * gamma
    chi = array.response.chi(omega)
    _, _, T = parity_transmissions(N, chi, pair['delta_q'], x, *ideal_pair.beta0, q_bar=pair['q_bar'])
    assert transmission_spectrum(array, x, omega) == pytest.approx(T, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize('N', [2, 4, 6])
def test_even_chains_scatter_with_one_line_shape(N, ideal_pair, gamma):
    pair = ideal_params(ideal_pair)
    array = StripArray(destructive_positions(N, pair), WIDTH, ideal_pair, TAU)
    omega = OMEGAS * gamma
    spectra = []
    for offset in (3.3e-6, 7.1e-6):
        x = array.positions[-1] + offset
        spectra.append(transmission_spectrum(array, x, omega) - input_field(ideal_pair, x))
    assert proportionality_spread(*spectra) < 1e-9


@pytest.mark.parametrize('N', [3, 5])
def test_odd_chains_change_line_shape_with_position(N, ideal_pair, gamma):
    pair = ideal_params(ideal_pair)
    array = StripArray(destructive_positions(N, pair), WIDTH, ideal_pair, TAU)
    omega = OMEGAS * gamma
    spectra = []
    for offset in (3.3e-6, 7.1e-6):
        x = array.positions[-1] + offset
        spectra.append(transmission_spectrum(array, x, omega) - input_field(ideal_pair, x))
    assert proportionality_spread(*spectra) > 1e-3


def test_parity_formula_rejects_vanishing_input():
    with pytest.raises(StripError, match='vanishes'):
        parity_transmissions(3, 0.1, 1e5, 1e-5, 1.0, -1.0)


def test_layout_files(tmp_path):
    positions = np.array([0.0, 10.325e-6, 20.65e-6])
    filename = write_layout(positions, 'layout.csv', str(tmp_path))
    assert read_layout(filename) == pytest.approx(positions, rel=1e-15)
    shuffled = tmp_path / 'shuffled.csv'
    shuffled.write_text('index,x\n1,2e-05\n0,1e-05\n')
    assert read_layout(str(shuffled)) == pytest.approx([1e-5, 2e-5])
    gappy = tmp_path / 'gappy.csv'
    gappy.write_text('index,x\n0,1e-05\n2,2e-05\n')
    with pytest.raises(StripError, match='without gaps'):
        read_layout(str(gappy))
    headless = tmp_path / 'headless.csv'
    headless.write_text('i,pos\n0,1e-05\n')
    with pytest.raises(StripError, match='lacks columns'):
        read_layout(str(headless))





# --------------------------------------------------------------------------
# Temporal response
# --------------------------------------------------------------------------

def test_low_degree_laguerre():
    z = np.array([0.0, 0.5, 1.0 - 0.3j, 2.5j])
    assert generalized_laguerre(0, 1, z) == pytest.approx(np.ones(4))
    assert generalized_laguerre(1, 1, z) == pytest.approx(2.0 - z)
    with pytest.raises(ValueError):
        generalized_laguerre(-1, 1, z)


@pytest.mark.parametrize('n', [2, 5, 8, 12, 29])
def test_laguerre_recurrence_against_scipy(n):
    z = np.linspace(0.0, 6.0, 13)
    assert np.real(generalized_laguerre(n, 1, z)) == pytest.approx(eval_genlaguerre(n, 1, z), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize('n', [5, 7, 9])
def test_laguerre_recurrence_against_explicit_sum(n):
    z = np.array([0.3 - 0.1j, 1.2 + 0.4j, -0.5j])
    assert generalized_laguerre(n, 1, z) == pytest.approx(laguerre_sum(n, 1, z), rel=1e-11)


def test_laguerre_response_start_values(gamma):
    nu0 = NU0_OVER_GAMMA * gamma
    t = np.array([0.0, 0.7, 3.0]) / gamma
    assert laguerre_response(1, nu0, gamma, t) == pytest.approx(1j * nu0 * np.exp(-0.5 * gamma * t + 1j * nu0 * t))
    assert laguerre_response(2, nu0, gamma, 0.0) == pytest.approx(2j * nu0)
    assert laguerre_response(3, nu0, gamma, -1.0) == 0
    with pytest.raises(ValueError):
        laguerre_response(0, nu0, gamma, t)


@pytest.mark.parametrize('n', [1, 5, 12, 13, 30])
def test_laguerre_response_is_the_strip_chain_transform(n, gamma):
    nu0 = NU0_OVER_GAMMA * gamma
    a = 2.0 * nu0 / gamma
    strip = StripResponse(1.0, nu0 / (0.25j * gamma), gamma)
    assert strip.nu0 == pytest.approx(nu0)
    tail = [(-1) ** k * comb(n + k - 1, k) * a ** k for k in range(1, 5)]
    t, s = invert_lorentzian_spectrum(lambda w: (1.0 + strip.chi(w)) ** n - 1.0, tail, gamma)
    mask = t <= 10.0 / gamma
    exact = laguerre_response(n, nu0, gamma, t[mask])
    assert relative_l2_error(s[mask], exact) < 1e-6


def test_constructive_chain_time_response(ideal_pair, gamma):
    pair = ideal_params(ideal_pair)
    N = 5
    array = StripArray(constructive_positions(N, pair), WIDTH, ideal_pair, TAU)
    x = array.positions[-1] + 3e-6
    t, s = strip_time_response(array, x)
    mask = t <= 10.0 / gamma
    expected = np.cos(pair['delta_q'] * x) * laguerre_response(N, array.response.nu0, gamma, t[mask])
    assert relative_l2_error(s[mask], expected) < 1e-6


def test_strip_chain_reaches_the_bulk_limit(gamma):
    t = np.linspace(0.0, 5.0, 26) / gamma
    strips, bulk = bessel_limit_check(1, 1e-6, t, gamma)
    assert np.max(np.abs(strips - bulk)) < 1e-4 * np.max(np.abs(bulk))
    errors = []
    for n in (10, 20, 40, 80):
        strips, bulk = bessel_limit_check(n, 4.0, np.array([1.0 / gamma]), gamma)
        errors.append(abs(strips[0] - bulk[0]))
    assert np.all(np.diff(errors) < 0)
    assert errors[-1] < 0.1 * abs(bulk[0])
