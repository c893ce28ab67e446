"""Constant-envelope analog beamformers at Alice and the secrecy-maximizing
artificial-noise beamformer at Bob."""

import math
from dataclasses import dataclass

import numpy as np

from .array_geometry import ArrayGeometry, phase_profile
from .channel_model import ChannelSet, Scenario
from .phase_quantizer import PhaseCodebook, TWO_PI, quantize

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # golden ratio step


@dataclass(frozen=True)
class BeamformerPair:
    """Alice's ideal and quantized analog weights plus Bob's AN beamformer.

    v_a entries have modulus 1/sqrt(N_a) (constant envelope); v_b has unit
    Euclidean norm.
    """

    v_a_ideal: np.ndarray
    v_a_quantized: np.ndarray
    v_b: np.ndarray


def aligned_phases(geometry: ArrayGeometry, theta_d: float) -> np.ndarray:
    """Per-element phases (radians, wrapped to [0, 2*pi)) that align the
    analog beam with the steering vector at ``theta_d``."""
    return np.remainder(TWO_PI * phase_profile(geometry, theta_d), TWO_PI)


def analog_beamformer(phases) -> np.ndarray:
    """Constant-envelope weight vector (1/sqrt(N)) * exp(j*phases)."""
    phases = np.asarray(phases, dtype=float)
    if phases.ndim != 1 or phases.size < 1:
        raise ValueError("phases must be a non-empty 1-D sequence")
    return np.exp(1j * phases) / math.sqrt(phases.size)


def quantize_beamformer(phases, book: PhaseCodebook):
    """Quantize each phase through the codebook.

    Returns ``(v_quantized, errors)``; quantization touches phases only, so
    the constant envelope is preserved exactly.
    """
    quantized, errors = quantize(np.asarray(phases, dtype=float), book)
    return analog_beamformer(quantized), errors


def effective_array_gain(h: np.ndarray, v: np.ndarray) -> complex:
    """Complex array gain h^H v. Raises on length mismatch."""
    h = np.asarray(h)
    v = np.asarray(v)
    if h.shape != v.shape:
        raise ValueError(f"length mismatch: {h.shape} vs {v.shape}")
    return complex(np.vdot(h, v))


def _rate_difference_consts(channels: ChannelSet, scenario: Scenario,
                            v_a: np.ndarray):
    """Constants of the v_b-dependent rate difference R_bob - R_eve."""
    sig_bob = channels.g_ab * scenario.power_alice * abs(np.vdot(channels.h_ab, v_a)) ** 2
    sig_eve = channels.g_ae * scenario.power_alice * abs(np.vdot(channels.h_ae, v_a)) ** 2
    jam_bob = scenario.self_interference * scenario.power_bob
    jam_eve = channels.g_be * scenario.power_bob
    return sig_bob, sig_eve, jam_bob, jam_eve, scenario.noise_power


def _rate_difference(x, y, consts):
    """R_bob - R_eve as a function of x = |h_bb^H v_b|^2, y = |h_be^H v_b|^2.

    Decreasing in x (self-interference hurts Bob), increasing in y (jamming
    hurts Eve). Vectorized over x, y.
    """
    sig_bob, sig_eve, jam_bob, jam_eve, sigma2 = consts
    return (np.log2(1.0 + sig_bob / (jam_bob * x + sigma2))
            - np.log2(1.0 + sig_eve / (jam_eve * y + sigma2)))


def max_sr_an_beamformer(channels: ChannelSet, scenario: Scenario,
                         v_a: np.ndarray, *, tol: float = 1e-10,
                         max_iter: int = 200, grid: int = 129) -> np.ndarray:
    """Unit-norm AN beamformer at Bob maximizing the secrecy rate for fixed v_a.

    The rate difference depends on v_b only through x = |h_bb^H v_b|^2 and
    y = |h_be^H v_b|^2, decreasing in x and increasing in y, so the optimum
    lies in span{h_bb, h_be} with the two orthonormal-basis coefficients
    phase-aligned to maximize y at any fixed magnitude split. The remaining
    scalar split s in [0, 1] (fraction of power along h_bb) is located by a
    bracketing grid scan plus golden-section refinement to ``tol``.

    If h_bb and h_be are parallel the span is completed with a deterministic
    orthonormal vector, which reduces to the same one-dimensional search and
    covers the jam-free split s = 0 as a special case.
    """
    if scenario.n_bob_tx < 2:
        raise ValueError("n_bob_tx must be >= 2 for the AN beamformer")
    h_bb, h_be = channels.h_bb, channels.h_be
    norm_bb = np.linalg.norm(h_bb)
    if norm_bb == 0:
        raise ValueError("h_bb must be nonzero")
    b1 = h_bb / norm_bb

    residual = h_be - b1 * np.vdot(b1, h_be)
    res_norm = np.linalg.norm(residual)
    if res_norm > 1e-12 * np.linalg.norm(h_be):
        b2 = residual / res_norm
    else:
        # degenerate: complete the 1-D span deterministically
        b2 = np.zeros_like(b1)
        k = int(np.argmin(np.abs(b1)))
        b2[k] = 1.0
        b2 = b2 - b1 * np.vdot(b1, b2)
        b2 = b2 / np.linalg.norm(b2)

    # coefficient phases that add the two y contributions constructively
    a1 = complex(np.vdot(h_be, b1))
    a2 = complex(np.vdot(h_be, b2))
    u1 = np.conj(a1) / abs(a1) if abs(a1) > 0 else 1.0
    u2 = np.conj(a2) / abs(a2) if abs(a2) > 0 else 1.0
    p, q = abs(a1), abs(a2)

    consts = _rate_difference_consts(channels, scenario, v_a)

    def objective(s):
        x = norm_bb ** 2 * s
        y = (np.sqrt(s) * p + np.sqrt(1.0 - s) * q) ** 2
        return _rate_difference(x, y, consts)

    s_grid = np.linspace(0.0, 1.0, grid)
    best = int(np.argmax(objective(s_grid)))
    lo = s_grid[max(best - 1, 0)]
    hi = s_grid[min(best + 1, grid - 1)]

    # golden-section maximization on the bracket
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = objective(c), objective(d)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = objective(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = objective(d)
    candidates = [0.5 * (lo + hi), 0.0, 1.0]
    s_opt = max(candidates, key=objective)

    v_b = (math.sqrt(s_opt) * u1) * b1 + (math.sqrt(1.0 - s_opt) * u2) * b2
    return v_b / np.linalg.norm(v_b)


def an_beamformer_oracle(channels: ChannelSet, scenario: Scenario,
                         v_a: np.ndarray, samples: int,
                         rng: np.random.Generator,
                         chunk: int = 200_000) -> np.ndarray:
    """Best of ``samples`` random unit-norm AN beamformers (validation oracle).

    Brute-force counterpart of :func:`max_sr_an_beamformer`; unchanged
    objective, no structure assumed.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    consts = _rate_difference_consts(channels, scenario, v_a)
    n = channels.h_bb.size
    best_v, best_f = None, -math.inf
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        w = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        x = np.abs(w @ np.conj(channels.h_bb)) ** 2
        y = np.abs(w @ np.conj(channels.h_be)) ** 2
        f = _rate_difference(x, y, consts)
        k = int(np.argmax(f))
        if f[k] > best_f:
            best_f = float(f[k])
            best_v = w[k].copy()
    return best_v


def design_beamformers(geometry: ArrayGeometry, channels: ChannelSet,
                       scenario: Scenario, book: PhaseCodebook) -> BeamformerPair:
    """Aligned ideal weights at the desired direction, their quantized
    counterpart, and the AN beamformer designed against the ideal weights
    (quantization perturbs only Alice's side)."""
    phases = aligned_phases(geometry, scenario.angle_ab)
    v_ideal = analog_beamformer(phases)
    v_quantized, _ = quantize_beamformer(phases, book)
    v_b = max_sr_an_beamformer(channels, scenario, v_ideal)
    return BeamformerPair(v_a_ideal=v_ideal, v_a_quantized=v_quantized, v_b=v_b)
