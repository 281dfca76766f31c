"""Velocity-resolved biphoton amplitude and the Doppler-integrated cross-correlation.

The velocity integral I(tau) = sum_j w_j f(v_j) A(v_j) exp(i k_1 v_j tau) does not
depend on the collective decay rate, so it is computed once per (drive, u, grid)
and the superradiant envelope exp(-Gamma_SR tau) is applied afterwards.
"""
import logging
import math
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from app.models.data_models.DecayRates import DecayRates
from app.models.data_models.DriveParams import DriveParams
from app.models.data_models.QuadratureSpec import QuadratureSpec
from app.models.data_models.ThermalState import ThermalState
from app.models.data_models.Waveform import Waveform
from app.models.enums.QuadratureScheme import QuadratureScheme
from app.models.enums.WaveformKind import WaveformKind
from app.models.exceptions import DegenerateInputError, DomainError, QuadratureConvergenceError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# complex phase-matrix elements evaluated per block
_BLOCK_ELEMENTS = 2_000_000
# samples below this fraction of the peak are compared against the floor, not themselves
_CONVERGENCE_FLOOR = 1e-12


def superradiant_rate(atom_count: float, mu: float, gamma_idler: float) -> float:
    """Gamma_SR = Gamma_I (1 + mu N)"""
    if atom_count < 0 or mu < 0:
        raise DomainError(f"Atom count and mu must be nonnegative, got N={atom_count}, mu={mu}")
    if gamma_idler <= 0:
        raise DomainError(f"gamma_idler must be positive, got {gamma_idler}")
    return gamma_idler * (1.0 + mu * atom_count)


def superradiant_rate_from_distance(
    r_sr: float, volume: float, lambda_1: float, mu: float, gamma_idler: float
) -> float:
    """Gamma_SR written through the interatomic distance:
    Gamma_I [1 + mu (V / lambda^3) ((9/5) r_SR / lambda)^-3]
    """
    for name, value in (("r_sr", r_sr), ("volume", volume), ("lambda_1", lambda_1), ("gamma_idler", gamma_idler)):
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value}")
    if mu < 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    collective = mu * (volume / lambda_1 ** 3) * ((9.0 / 5.0) * (r_sr / lambda_1)) ** -3
    return gamma_idler * (1.0 + collective)


def velocity_amplitude(
    v: ArrayLike, drive: DriveParams, gamma_idler: float, gamma_signal: float
) -> ArrayLike:
    """A(v) = C / [{2 Gamma_I + 4i(delta_p - k_p v)} {Gamma_S + i(-k_p + k_c) v} + Omega_C^2]"""
    v = np.asarray(v, dtype=np.float64)
    first = 2.0 * gamma_idler + 4j * (drive.delta_p - drive.k_p * v)
    second = gamma_signal + 1j * (drive.k_c - drive.k_p) * v
    amplitude = drive.amplitude_scale / (first * second + drive.omega_c ** 2)
    return amplitude if amplitude.ndim else complex(amplitude)


def biphoton_wavefunction(v: ArrayLike, tau: ArrayLike, drive: DriveParams, rates: DecayRates) -> ArrayLike:
    """Psi_v(tau) = A(v) exp[(-Gamma_SR / 2 + i k_1 v) tau] for tau >= 0"""
    tau_arr = np.asarray(tau, dtype=np.float64)
    if np.any(tau_arr < 0):
        raise DomainError("biphoton_wavefunction is defined for tau >= 0 only")
    v_arr = np.asarray(v, dtype=np.float64)
    amplitude = velocity_amplitude(v_arr, drive, rates.gamma_idler, rates.gamma_signal)
    psi = amplitude * np.exp((-0.5 * rates.gamma_sr + 1j * drive.k_1 * v_arr) * tau_arr)
    return psi if np.ndim(psi) else complex(psi)


def maxwell_boltzmann(v: np.ndarray, u: float) -> np.ndarray:
    """One-dimensional velocity density f(v) = exp(-v^2 / u^2) / (sqrt(pi) u)"""
    return np.exp(-(v / u) ** 2) / (math.sqrt(math.pi) * u)


@lru_cache(maxsize=8)
def _legendre_rule(node_count: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(node_count)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def velocity_nodes(u: float, quad: QuadratureSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights covering [-cutoff * u, +cutoff * u]"""
    if not u > 0:
        raise DomainError(f"Most probable speed must be positive, got {u}")
    half_width = quad.cutoff_sigmas * u
    if quad.scheme == QuadratureScheme.GAUSS_LEGENDRE:
        x, w = _legendre_rule(quad.node_count)
        return half_width * x, half_width * w
    v = np.linspace(-half_width, half_width, quad.node_count)
    step = v[1] - v[0]
    w = np.full(quad.node_count, step)
    w[0] = w[-1] = 0.5 * step
    return v, w


def tau_grid(span_min: float, span_max: float, step: float) -> np.ndarray:
    """Uniform grid built as integer index times step, so tau = 0 is an exact sample"""
    if not step > 0:
        raise DomainError(f"Grid step must be positive, got {step}")
    first = int(math.floor(span_min / step + 1e-9))
    last = int(math.ceil(span_max / step - 1e-9))
    if last <= first:
        raise DomainError(f"Empty tau grid for span [{span_min}, {span_max}]")
    return np.arange(first, last + 1) * step


def grid_step(tau: np.ndarray) -> float:
    tau = np.asarray(tau, dtype=np.float64)
    if tau.ndim != 1 or tau.size < 2:
        raise DomainError("A tau grid needs at least two samples")
    step = float(tau[1] - tau[0])
    if step <= 0 or np.max(np.abs(np.diff(tau) - step)) > 1e-6 * step:
        raise DomainError("tau grid must be uniform and increasing")
    return step


class VelocityIntegral:
    """Velocity-averaged amplitude at unit C on a fixed tau grid.

    g2() applies the collective decay and the amplitude prefactor, which makes
    scans over Gamma_SR cost one exponential per sample.
    """

    def __init__(self, tau: np.ndarray, values: np.ndarray, step: float):
        self.tau = tau
        self.values = values
        self.step = step
        self.causal = tau >= 0

    def g2(self, gamma_sr: float, amplitude_scale: float = 1.0) -> Waveform:
        intensity = self.values.real ** 2 + self.values.imag ** 2
        envelope = np.exp(-gamma_sr * np.where(self.causal, self.tau, 0.0))
        g2 = np.where(self.causal, intensity * envelope, 0.0)
        return Waveform(tau_start=float(self.tau[0]), tau_step=self.step, values=g2,
                        kind=WaveformKind.G2_UNNORMALIZED, scale=amplitude_scale ** 2)


def _integrate(tau: np.ndarray, drive: DriveParams, rates: DecayRates, u: float, quad: QuadratureSpec) -> np.ndarray:
    v, w = velocity_nodes(u, quad)
    unit_drive = drive.model_copy(update={"amplitude_scale": 1.0})
    coefficients = w * maxwell_boltzmann(v, u) * velocity_amplitude(v, unit_drive, rates.gamma_idler, rates.gamma_signal)
    kv = drive.k_1 * v
    result = np.zeros(tau.size, dtype=np.complex128)
    causal = np.flatnonzero(tau >= 0)
    block = max(1, _BLOCK_ELEMENTS // v.size)
    for start in range(0, causal.size, block):
        idx = causal[start:start + block]
        phase = np.exp(1j * np.outer(tau[idx], kv))
        result[idx] = phase @ coefficients
    return result


def velocity_integral(
    tau: np.ndarray, drive: DriveParams, rates: DecayRates, u: float, quad: Optional[QuadratureSpec] = None
) -> VelocityIntegral:
    quad = quad or QuadratureSpec()
    tau = np.asarray(tau, dtype=np.float64)
    step = grid_step(tau)
    values = _integrate(tau, drive, rates, u, quad)
    integral = VelocityIntegral(tau, values, step)
    if quad.verify_convergence:
        _check_convergence(integral, tau, drive, rates, u, quad)
    return integral


def _check_convergence(
    coarse: VelocityIntegral, tau: np.ndarray, drive: DriveParams, rates: DecayRates, u: float, quad: QuadratureSpec
) -> None:
    refined_quad = quad.refined()
    refined = VelocityIntegral(tau, _integrate(tau, drive, rates, u, refined_quad), coarse.step)
    g2_coarse = coarse.g2(rates.gamma_sr).values
    g2_refined = refined.g2(rates.gamma_sr).values
    floor = _CONVERGENCE_FLOOR * float(np.max(g2_refined))
    change = np.abs(g2_coarse - g2_refined) / np.maximum(g2_refined, floor)
    worst = float(np.max(change)) if change.size else 0.0
    logger.debug(f"Quadrature {quad.node_count} -> {refined_quad.node_count} nodes: max relative change {worst:.3e}")
    if worst > quad.convergence_rtol:
        raise QuadratureConvergenceError(
            f"g2 changed by {worst:.3e} (> {quad.convergence_rtol}) when doubling {quad.node_count} nodes",
            coarse=g2_coarse,
            refined=g2_refined,
            max_relative_change=worst,
        )


def g2_cross_correlation(
    tau: np.ndarray, drive: DriveParams, rates: DecayRates, u: float, quad: Optional[QuadratureSpec] = None
) -> Waveform:
    """Doppler-integrated g2_SI(tau) with the collective idler decay"""
    return velocity_integral(tau, drive, rates, u, quad).g2(rates.gamma_sr, drive.amplitude_scale)


def doppler_only_waveform(
    tau: np.ndarray, drive: DriveParams, rates: DecayRates, u: float, quad: Optional[QuadratureSpec] = None
) -> Waveform:
    """Same kernel with Gamma_SR held at Gamma_I"""
    return g2_cross_correlation(tau, drive, rates.without_enhancement(), u, quad)


def normalized_waveform(w: Waveform) -> Waveform:
    """Scale a waveform to unit area; causal inputs become p1_normalized.

    The prefactor is dropped before dividing, so the result does not depend on it.
    """
    area = w.shape_integral()
    if w.scale == 0 or not math.isfinite(area) or area <= 0:
        raise DegenerateInputError(f"Cannot normalize a waveform with integral {w.integral()}")
    kind = WaveformKind.P1_NORMALIZED if w.kind.is_causal else w.kind
    return w.with_values(w.values / area, kind, scale=1.0)


def brightness(
    state: ThermalState,
    drive: DriveParams,
    rates: DecayRates,
    quad: Optional[QuadratureSpec] = None,
    tau: Optional[np.ndarray] = None,
    amplitude_per_atom: float = 1.0,
) -> float:
    """Integrated g2 with the amplitude prefactor C = c0 * N"""
    if tau is None:
        tau = tau_grid(-1e-9, 5e-9, 5e-12)
    scaled = drive.for_atom_count(state.atom_count, amplitude_per_atom)
    if scaled.amplitude_scale == 0:
        return 0.0
    return g2_cross_correlation(tau, scaled, rates, state.u, quad).integral()
