"""QPSK Monte Carlo engine: BER at a probe direction, empirical SINR-loss
estimates, and the reproducible per-point seeding contract."""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .array_geometry import ArrayGeometry, steering_vector
from .beamforming import BeamformerPair
from .channel_model import ChannelSet, Scenario, awgn
from .phase_quantizer import PhaseCodebook, TWO_PI, quantize, sample_qe

_SQRT2 = math.sqrt(2.0)

QE_MODELS = ("uniform", "deterministic")


@dataclass(frozen=True)
class TrialConfig:
    """Monte Carlo knobs and sweep axis descriptors.

    A BER point runs ``trials`` independent blocks of ``symbols_per_point``
    QPSK symbols; SINR points use ``trials`` quantization-error draws.
    ``qe_model`` selects uniform error draws or the deterministic
    nearest-codeword quantizer (with a random beam direction per draw).
    """

    symbols_per_point: int = 10_000
    trials: int = 10
    master_seed: int = 20260801
    qe_model: str = "uniform"
    angles_deg: tuple = tuple(float(a) for a in range(0, 181, 2))
    l_values: tuple = (1, 2, 3)
    na_values: tuple = (4, 16, 64, 256)
    snr_db_values: tuple = (0.0, 15.0, 30.0)

    def __post_init__(self) -> None:
        if self.symbols_per_point < 1:
            raise ValueError("symbols_per_point must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.qe_model not in QE_MODELS:
            raise ValueError(f"qe_model must be one of {QE_MODELS}, "
                             f"got {self.qe_model!r}")
        if self.angles_deg and not all(0.0 <= a <= 180.0 for a in self.angles_deg):
            raise ValueError("angles_deg must lie within [0, 180]")


def point_rng(master_seed: int, *indices: int) -> np.random.Generator:
    """Independent stream for one sweep point, keyed on the master seed and
    the point's axis indices. Identical keys give identical streams no matter
    how many workers run or in which order."""
    key = (int(master_seed),) + tuple(int(i) for i in indices)
    return np.random.default_rng(np.random.SeedSequence(key))


def qpsk_modulate(bits) -> np.ndarray:
    """Gray-mapped unit-energy QPSK over the last axis of a (..., 2) array:
    bit 0 flips the in-phase sign, bit 1 the quadrature sign, so
    (0,0) -> (1+1j)/sqrt(2)."""
    b = np.asarray(bits)
    if b.shape[-1] != 2:
        raise ValueError("bits must have a trailing axis of length 2")
    i = 1.0 - 2.0 * b[..., 0]
    q = 1.0 - 2.0 * b[..., 1]
    return (i + 1j * q) / _SQRT2


def qpsk_demodulate(samples, composite_gain: complex) -> np.ndarray:
    """Minimum-distance bit decisions after removing the known complex gain.

    A coordinate landing exactly on a decision boundary (e.g. a zero sample)
    decodes as bit 0.
    """
    if composite_gain == 0:
        raise ValueError("composite_gain must be nonzero")
    z = np.asarray(samples) / composite_gain
    return np.stack([(z.real < 0).astype(np.int8),
                     (z.imag < 0).astype(np.int8)], axis=-1)


def _qe_perturbed_weights(beamformers: BeamformerPair, book: PhaseCodebook,
                          qe_model: str, rng: np.random.Generator) -> np.ndarray:
    """Alice's transmit weights for one QE realization."""
    if qe_model == "deterministic":
        return beamformers.v_a_quantized
    errors = sample_qe(book, rng, size=beamformers.v_a_ideal.size)
    return beamformers.v_a_ideal * np.exp(1j * errors)


def probe_ber_trials(theta_probe: float, scenario: Scenario,
                     channels: ChannelSet, beamformers: BeamformerPair,
                     book: PhaseCodebook | None, trial: TrialConfig,
                     rng: np.random.Generator, *, receiver_model: str = "probe",
                     quantized: bool = True,
                     spacing_ratio: float = 0.5) -> np.ndarray:
    """Per-block bit error fractions for one receive point.

    receiver_model "probe": the receiver at ``theta_probe`` gets Alice's
    signal through the probe steering vector and artificial noise through the
    nominal Bob-to-Eve channel. receiver_model "bob": the full-duplex desired
    receiver, whose interference is the residual self-interference channel.
    Detection is coherent with the composite signal gain known exactly.
    """
    if receiver_model not in ("probe", "bob"):
        raise ValueError(f"unknown receiver_model {receiver_model!r}")
    if quantized and book is None:
        raise ValueError("quantized=True requires a codebook")

    geometry = ArrayGeometry(scenario.n_alice, spacing_ratio)
    if receiver_model == "probe":
        h_rx = steering_vector(geometry, theta_probe)
        sig_amp = math.sqrt(channels.g_ae * scenario.power_alice)
        an_amp = (math.sqrt(channels.g_be * scenario.power_bob)
                  * np.vdot(channels.h_be, beamformers.v_b))
    else:
        h_rx = channels.h_ab
        sig_amp = math.sqrt(channels.g_ab * scenario.power_alice)
        an_amp = (math.sqrt(scenario.self_interference * scenario.power_bob)
                  * np.vdot(channels.h_bb, beamformers.v_b))

    n_sym = trial.symbols_per_point
    fractions = np.empty(trial.trials)
    for t in range(trial.trials):
        if quantized:
            v_a = _qe_perturbed_weights(beamformers, book, trial.qe_model, rng)
        else:
            v_a = beamformers.v_a_ideal
        gain = sig_amp * np.vdot(h_rx, v_a)
        bits = rng.integers(0, 2, size=(n_sym, 2), dtype=np.int8)
        x = qpsk_modulate(bits)
        z = (rng.standard_normal(n_sym) + 1j * rng.standard_normal(n_sym)) / _SQRT2
        r = gain * x + an_amp * z + awgn(scenario.noise_power, rng, size=n_sym)
        decided = qpsk_demodulate(r, gain)
        fractions[t] = np.mean(decided != bits)
    return fractions


def simulate_probe_ber(theta_probe: float, scenario: Scenario,
                       channels: ChannelSet, beamformers: BeamformerPair,
                       book: PhaseCodebook | None, trial: TrialConfig,
                       rng: np.random.Generator | None = None,
                       **kwargs) -> float:
    """Mean bit error fraction at ``theta_probe`` over the configured trials.

    See :func:`probe_ber_trials` for the receive models and keyword knobs.
    """
    if rng is None:
        rng = point_rng(trial.master_seed)
    return float(np.mean(probe_ber_trials(
        theta_probe, scenario, channels, beamformers, book, trial, rng,
        **kwargs)))


def qe_gain_samples(n_alice: int, book: PhaseCodebook, trials: int,
                    rng: np.random.Generator, *, qe_model: str = "uniform",
                    spacing_ratio: float = 0.5,
                    chunk_elems: int = 1 << 22) -> np.ndarray:
    """Per-trial normalized beamforming power gains |sum e^{j err}|^2 / N^2.

    Under "uniform" the errors are independent uniform draws; under
    "deterministic" each trial quantizes the aligned phases of a beam steered
    at a direction drawn uniformly from [0, 2*pi).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    geometry = ArrayGeometry(n_alice, spacing_ratio)
    out = np.empty(trials)
    rows = max(1, chunk_elems // max(n_alice, 1))
    done = 0
    while done < trials:
        m = min(rows, trials - done)
        if qe_model == "uniform":
            err = sample_qe(book, rng, size=(m, n_alice))
        elif qe_model == "deterministic":
            thetas = rng.uniform(0.0, 2.0 * math.pi, size=m)
            phases = np.stack([aligned_phases(geometry, th) for th in thetas])
            _, err = quantize(phases, book)
        else:
            raise ValueError(f"qe_model must be one of {QE_MODELS}, "
                             f"got {qe_model!r}")
        out[done:done + m] = (np.abs(np.exp(1j * err).sum(axis=1)) ** 2
                              / n_alice ** 2)
        done += m
    return out


def monte_carlo_sinr_loss(n_alice: int, book: PhaseCodebook, trials: int,
                          rng: np.random.Generator, **kwargs) -> float:
    """Empirical SINR penalty -10*log10(mean normalized gain) in dB.

    Converges to the exact finite-array expectation, and for large arrays to
    the sinc-squared closed form.
    """
    gains = qe_gain_samples(n_alice, book, trials, rng, **kwargs)
    return -10.0 * math.log10(float(np.mean(gains)))


def parallel_map(fn, items, workers: int = 1) -> list:
    """Order-preserving map; runs inline when ``workers`` <= 1.

    ``fn`` must be picklable (module-level) when ``workers`` > 1. Because
    every sweep point owns its seed-derived stream, the result is identical
    for any worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
