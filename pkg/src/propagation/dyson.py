############################################################################
### NucWave - DYSON SERIES
############################################################################

# --------------------------------------------------------------------------
# NucWave developers
# This version:     19.10.2026
# First version:    19.10.2026
# --------------------------------------------------------------------------


# Standard library imports
import logging
import warnings
from math import comb, factorial
from typing import Optional, Sequence, Union

# Third party imports
import numpy as np
import scipy.linalg
from scipy.special import gammaln

# Local modules imports
from propagation.effective_system import EffectiveSystem



logger = logging.getLogger(__name__)



# Orders above this are weighted in log space.
LOG_SPACE_ORDER = 20

# Largest tolerated ratio of the biggest pole contribution to their sum.
CANCELLATION_LIMIT = 1e8

# Ways to obtain the series coefficients.
DYSON_METHODS = ('residue', 'block', 'partitions')



class DegeneratePoleError(ValueError):
    pass



class DysonSpecification(dict):

    def __init__(self,
                 method='residue',
                 n_max=200,
                 tol=1e-12,
                 degeneracy=1e-6,
                 **kwargs):
        super().__init__(
            method=method,
            n_max=n_max,
            tol=tol,
            degeneracy=degeneracy,
        )
        self.update(kwargs)



class DysonSum(dict):

    '''
    A truncated Dyson series.

    Keys: 'value' (partial sum), 'last_term' (magnitude of the last included
    term), 'order' (highest order included), 'converged' (True when the
    tolerance stopped the sum before n_max).
    '''

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.__dict__ = self






# --------------------------------------------------------------------------
# Partitions and residues
# --------------------------------------------------------------------------

def partitions(N: int, n: int) -> list[tuple[int, ...]]:

    '''
    All N-tuples of non-negative integers summing to n, in lexicographic
    order. There are binomial(n + N - 1, N - 1) of them.
    '''

    if N < 1 or n < 0:
        return []
    if N == 1:
        return [(n,)]
    out = []
    for first in range(n + 1):
        for rest in partitions(N - 1, n - first):
            out.append((first,) + rest)
    return out



def residue_R(q: Sequence[complex],
              k: Sequence[int],
              x: float) -> complex:

    '''
    Inverse Laplace transform of prod_i (s - i q_i)^(-k_i) at x, summed over
    the residues of the poles with k_j >= 1.
    '''

    q = np.asarray(q, dtype=complex)
    k = [int(v) for v in k]
    if len(k) != len(q):
        raise ValueError("'q' and 'k' must have the same length.")
    if any(v < 0 for v in k) or sum(k) == 0:
        raise ValueError('Multiplicities must be >= 0 with at least one >= 1.')
    N = len(q)
    total = 0j
    for j in range(N):
        if k[j] == 0:
            continue
        inner = 0j
        for l in partitions(N, k[j] - 1):
            term = x ** l[j] / factorial(l[j])
            for i in range(N):
                if i == j:
                    continue
                if k[i] == 0:
                    if l[i] != 0:
                        term = 0.0
                        break
                    continue
                # binomial(-k_i, l_i) = (-1)^l_i binomial(k_i + l_i - 1, l_i)
                binom = (-1) ** l[i] * comb(k[i] + l[i] - 1, l[i])
                term *= binom / (1j * q[j] - 1j * q[i]) ** (k[i] + l[i])
            inner += term
        total += np.exp(1j * q[j] * x) * inner
    return complex(total)



def check_distinct(q: np.ndarray, threshold: float = 1e-6) -> None:
    q = np.asarray(q, dtype=complex)
    for i in range(len(q)):
        for j in range(i + 1, len(q)):
            scale = max(abs(q[i]), abs(q[j]))
            if abs(q[i] - q[j]) <= threshold * scale or scale == 0:
                raise DegeneratePoleError(
                    f'Modes {i} and {j} have (nearly) equal wavenumbers {q[i]:.6g} and {q[j]:.6g}; '
                    'the residue series needs distinct poles. Use the block method or propagate_frequency instead.'
                )



def _checked_method(spec: DysonSpecification) -> str:
    method = spec.get('method', 'residue')
    if method not in DYSON_METHODS:
        raise ValueError(f'Dyson method {method!r} not recognized; expected one of {DYSON_METHODS}.')
    return method






# --------------------------------------------------------------------------
# Dyson coefficients
# --------------------------------------------------------------------------

def _laurent_coefficients(q_hat: np.ndarray,
                          w: np.ndarray,
                          beta: np.ndarray,
                          n_max: int) -> np.ndarray:

    '''
    t_n = L^-1[ U(s)^n B(s) ] at unit distance, for U(s) = sum w_i/(s - i q_i)
    and B(s) = sum beta_i/(s - i q_i), n = 0..n_max.

    Each pole residue is the order-n Taylor coefficient of
    (w_j + eps g_j(eps))^n (beta_j + eps h_j(eps)) exp(eps), where g_j and h_j
    collect the remaining poles; the generalized product rule becomes a
    power-series convolution.
    '''

    N = len(q_hat)
    m = np.arange(n_max + 1)
    inv_factorial = np.exp(-gammaln(m + 1.0))
    t = np.zeros(n_max + 1, dtype=complex)
    worst = np.zeros(n_max + 1)

    with np.errstate(over='ignore', invalid='ignore'):
        for j in range(N):
            others = np.arange(N) != j
            d = 1j * (q_hat[j] - q_hat[others])
            # 1/(eps + d) = sum_m (-1)^m eps^m / d^(m+1)
            powers = (-1.0) ** m[:, None] / d[None, :] ** (m[:, None] + 1)
            g = powers @ w[others]
            h = powers @ beta[others]
            A = np.concatenate([[w[j]], g[:n_max]])
            Bt = np.concatenate([[beta[j]], h[:n_max]])
            G = np.convolve(Bt, inv_factorial)[:n_max + 1]
            P = np.zeros(n_max + 1, dtype=complex)
            P[0] = 1.0
            phase = np.exp(1j * q_hat[j])
            for n in range(n_max + 1):
                contribution = phase * np.dot(P[:n + 1], G[n::-1])
                t[n] += contribution
                worst[n] = max(worst[n], abs(contribution))
                P = np.convolve(P, A)[:n_max + 1]

    if not np.all(np.isfinite(t)):
        raise FloatingPointError('Residue series overflowed; the modes are too close for this distance.')
    ratio = worst / np.maximum(np.abs(t), np.finfo(float).tiny)
    if np.any(ratio > CANCELLATION_LIMIT):
        warnings.warn(
            f'Residue series loses about {np.log10(ratio.max()):.0f} digits to cancellation; '
            'increase the mode separation times distance or use propagate_frequency.',
            RuntimeWarning,
        )
    return t



def _block_coefficients(system: EffectiveSystem,
                        x: float,
                        n_max: int,
                        normalized: bool = False) -> np.ndarray:

    '''
    1^T D_n(x) beta0 for n = 0..n_max from the exponential of the block
    bidiagonal matrix with iQ on the diagonal and Lambda above it.
    With 'normalized' the coupling block is Lambda/tr(Lambda) at unit
    distance, which gives t_n instead of c_n.
    '''

    N = system.n_modes
    size = N * (n_max + 1)
    center = np.mean(system.q)
    M = np.zeros((size, size), dtype=complex)
    Q = np.diag(1j * (system.q - center) * x)
    Lam = np.outer(system.xi, np.ones(N)) * (1.0 / system.trace if normalized else x)
    for b in range(n_max + 1):
        M[b * N:(b + 1) * N, b * N:(b + 1) * N] = Q
        if b < n_max:
            M[b * N:(b + 1) * N, (b + 1) * N:(b + 2) * N] = Lam
    E = scipy.linalg.expm(M)
    ones = np.ones(N)
    phase = np.exp(1j * center * x)
    return phase * np.array([ones @ E[:N, b * N:(b + 1) * N] @ system.beta0 for b in range(n_max + 1)])



def _partition_coefficients(q_hat: np.ndarray,
                            w: np.ndarray,
                            beta: np.ndarray,
                            n_max: int) -> np.ndarray:

    '''
    t_n at unit distance as the explicit sum over mode multiplicities,

        sum_j beta_j sum_{|k|=n} n!/prod k_i! prod w_i^k_i R(q_hat, k + e_j, 1).

    The cost grows combinatorially with n; meant for low orders.
    '''

    N = len(q_hat)
    t = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        for k in partitions(N, n):
            weight = factorial(n) * np.prod([w[i] ** k[i] / factorial(k[i]) for i in range(N)])
            for j in range(N):
                if beta[j] == 0:
                    continue
                kk = list(k)
                kk[j] += 1
                t[n] += weight * beta[j] * residue_R(q_hat, kk, 1.0)
    return t



def dyson_coefficients(system: EffectiveSystem,
                       x: float,
                       n_max: int,
                       method: str = 'residue',
                       degeneracy: float = 1e-6) -> np.ndarray:

    '''
    c_n(x) such that B(x, omega) = sum_n (-i zeta F(omega)/2)^n c_n(x),
    for n = 0..n_max (unnormalized input amplitudes).

    Parameters:
    method: 'residue' sums the pole residues in closed form, 'block' uses one
        matrix exponential of a block bidiagonal generator (valid for
        degenerate wavenumbers as well), 'partitions' evaluates the explicit
        multiplicity sum term by term.
    '''

    x = float(x)
    if x < 0:
        raise ValueError(f'Propagation distance must be non-negative, got {x}.')
    if method not in DYSON_METHODS:
        raise ValueError(f'Dyson method {method!r} not recognized.')
    n_max = int(n_max)

    c = np.zeros(n_max + 1, dtype=complex)
    if x == 0:
        c[0] = system.input_total
        return c
    if method == 'block':
        return _block_coefficients(system, x, n_max)
    if system.n_modes > 1:
        check_distinct(system.q, degeneracy)
    t_hat = normalized_coefficients(system, x, n_max, method)
    # c_n = (tr Lambda x)^n t_hat_n
    n = np.arange(n_max + 1)
    return t_hat * (system.trace * x) ** n



def normalized_coefficients(system: EffectiveSystem,
                            x: float,
                            n_max: int,
                            method: str = 'residue') -> np.ndarray:

    '''
    t_n(x) in units where x = 1 and tr Lambda = 1: the expansion parameter
    becomes (-i tau F/2) with tau = zeta tr(Lambda) x.
    '''

    if method == 'block':
        return _block_coefficients(system, x, n_max, normalized=True)
    center = np.mean(system.q)
    q_hat = (system.q - center) * x
    w = system.xi / system.trace
    if method == 'partitions':
        t = _partition_coefficients(q_hat, w, system.beta0, n_max)
    else:
        t = _laurent_coefficients(q_hat, w, system.beta0, n_max)
    return t * np.exp(1j * center * x)



def _effective_depth(system: EffectiveSystem, x: float) -> complex:
    return system.zeta * system.trace * x




def _series_bound(system: EffectiveSystem,
                  x: float,
                  log_z: float,
                  log_t: float = 0.0,
                  extra_factorial: bool = False):

    '''
    Upper estimate of |term n| from |t_n| <= sum|beta| e^(spread) (sum|w|)^n / n!.
    '''

    w_norm = float(np.sum(np.abs(system.xi)) / abs(system.trace))
    beta_norm = float(np.sum(np.abs(system.beta0)))
    spread = float(np.ptp(system.q.imag)) * x if system.n_modes > 1 else 0.0

    def bound(n: int) -> float:
        log_term = (n * (log_z + np.log(w_norm)) + (n - 1) * log_t - gammaln(n + 1.0))
        if extra_factorial:
            log_term -= gammaln(float(n))
        return beta_norm * np.exp(log_term + spread)

    return bound



def _required_order(bound, tol: float, n_max: int) -> int:
    '''Smallest order after which the series term bound drops below tol.'''
    for n in range(1, n_max + 1):
        if bound(n) < tol:
            return min(n + 4, n_max)
    return n_max



def dyson_field_frequency(system: EffectiveSystem,
                          x: float,
                          omega: float,
                          n_max: Optional[int] = None,
                          spec: Optional[DysonSpecification] = None) -> DysonSum:

    '''
    Partial sum of B(x, omega) = sum_n (-i tau F/2)^n t_n(x) with
    tau = zeta tr(Lambda) x, stopped once the last term falls below
    tol * |partial sum| or at n_max.
    '''

    spec = DysonSpecification() if spec is None else spec
    method = _checked_method(spec)
    n_max = spec['n_max'] if n_max is None else int(n_max)
    if n_max < 0:
        raise ValueError('n_max must be >= 0.')
    x = float(x)
    if x < 0:
        raise ValueError(f'Propagation distance must be non-negative, got {x}.')

    if x == 0 or n_max == 0 or system.zeta == 0:
        value = complex(np.exp(1j * system.q * x) @ system.beta0)
        exact = x == 0 or system.zeta == 0
        return DysonSum(value=value, last_term=0.0 if exact else abs(value), order=0,
                        converged=exact)

    if system.n_modes > 1 and method != 'block':
        check_distinct(system.q, spec['degeneracy'])
    a = -0.5j * _effective_depth(system, x) * complex(system.F(omega))
    if a == 0:
        value = complex(np.exp(1j * system.q * x) @ system.beta0)
        return DysonSum(value=value, last_term=0.0, order=0, converged=True)
    bound = _series_bound(system, x, np.log(abs(a)))
    needed = _required_order(bound, 1e-3 * spec['tol'] * abs(system.input_total), n_max)
    t_hat = normalized_coefficients(system, x, needed, method)
    orders = np.arange(needed + 1)
    with np.errstate(over='ignore', under='ignore'):
        terms = np.exp(orders * np.log(complex(a))) * t_hat
    terms[0] = t_hat[0]

    value = 0j
    converged = False
    order = 0
    for n, term in enumerate(terms):
        value += term
        order = n
        if n > 0 and abs(term) < spec['tol'] * abs(value):
            converged = True
            break
    if not converged:
        warnings.warn(f'Dyson series not converged after {order} orders (last term {abs(terms[order]):.3g}).',
                      RuntimeWarning)
    logger.debug('Dyson frequency sum: %d orders, converged=%s', order, converged)
    return DysonSum(value=complex(value), last_term=float(abs(terms[order])), order=order,
                    converged=converged)



def dyson_time_field(system: EffectiveSystem,
                     x: float,
                     t: Union[float, np.ndarray],
                     n_max: Optional[int] = None,
                     spec: Optional[DysonSpecification] = None) -> DysonSum:

    '''
    Scattered field (prompt excluded) after an impulsive excitation,

        sum_{n>=1} (-tau gamma/4)^n t_n(x) t^(n-1)/(n-1)! Theta(t) exp(-gamma t/2),

    normalized to the total input field at x = 0. 'value' is an array over t.
    '''

    spec = DysonSpecification() if spec is None else spec
    method = _checked_method(spec)
    n_max = spec['n_max'] if n_max is None else int(n_max)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape, dtype=complex)
    x = float(x)
    if x < 0:
        raise ValueError(f'Propagation distance must be non-negative, got {x}.')
    if x == 0 or system.zeta == 0 or n_max < 1:
        return DysonSum(value=out, last_term=0.0, order=0, converged=(n_max >= 1 or x == 0 or system.zeta == 0))
    if system.n_modes > 1 and method != 'block':
        check_distinct(system.q, spec['degeneracy'])

    gamma = system.gamma
    b = -0.25 * _effective_depth(system, x) * gamma
    t_max = max(float(np.max(t)), 0.0)
    bound = _series_bound(system, x, np.log(abs(b)), np.log(t_max) if t_max > 0 else 0.0, extra_factorial=True)
    floor = abs(b) * abs(system.input_total)
    needed = 1 if t_max == 0 else max(_required_order(bound, 1e-3 * spec['tol'] * floor, n_max), 1)
    t_hat = normalized_coefficients(system, x, needed, method) / system.input_total

    positive = t >= 0
    tp = t[positive]
    log_b = np.log(complex(b))
    log_t = np.log(np.where(tp > 0, tp, 1.0))
    partial = np.zeros(tp.shape, dtype=complex)
    last = np.zeros(tp.shape)
    converged = np.zeros(tp.shape, dtype=bool)
    order = 0
    for n in range(1, needed + 1):
        if n == 1:
            weight = np.full(tp.shape, b, dtype=complex)
        elif n <= LOG_SPACE_ORDER:
            weight = b ** n * tp ** (n - 1) / factorial(n - 1)
        else:
            with np.errstate(over='ignore', under='ignore'):
                weight = np.where(tp > 0, np.exp(n * log_b + (n - 1) * log_t - gammaln(float(n))), 0.0)
        term = weight * t_hat[n]
        partial = partial + term
        last = np.abs(term)
        order = n
        converged = (tp == 0) | (last <= spec['tol'] * np.maximum(np.abs(partial), 1e-6 * abs(b * t_hat[1])))
        if n > 1 and np.all(converged):
            break
    if not np.all(converged):
        warnings.warn(f'Dyson time series not converged at all times after {order} orders.', RuntimeWarning)
    logger.debug('Dyson time sum: %d orders over %d times', order, len(tp))
    out[positive] = partial * np.exp(-0.5 * gamma * tp)
    return DysonSum(value=out, last_term=float(np.max(last)) if last.size else 0.0, order=order,
                    converged=bool(np.all(converged)))
