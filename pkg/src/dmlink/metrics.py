"""Closed-form SINR with and without quantization error, the dB loss ratio,
achievable rates, and secrecy rates."""

import math
from dataclasses import dataclass

import numpy as np

from .beamforming import BeamformerPair
from .channel_model import ChannelSet, Scenario
from .phase_quantizer import PhaseCodebook, expected_phasor


@dataclass(frozen=True)
class MetricsReport:
    """Snapshot of every closed-form link metric for one realization.

    SINRs are linear, rates in bits/s/Hz, gamma_db is the quantization SINR
    penalty in dB. interference_m / interference_t are the total interference
    plus noise powers at Bob and Eve (both >= noise_power).
    """

    sinr_nqe: float
    sinr_qe: float
    gamma_db: float
    rate_bob: float
    rate_eve: float
    sr_nqe: float
    sr_qe: float
    interference_m: float
    interference_t: float


def _abs2(z: complex) -> float:
    return float(np.real(z * np.conj(z)))


def interference_powers(channels: ChannelSet, scenario: Scenario,
                        v_b: np.ndarray):
    """(M, T): interference-plus-noise power at Bob and at Eve."""
    m = (scenario.self_interference * scenario.power_bob
         * _abs2(np.vdot(channels.h_bb, v_b)) + scenario.noise_power)
    t = (channels.g_be * scenario.power_bob
         * _abs2(np.vdot(channels.h_be, v_b)) + scenario.noise_power)
    return m, t


def sinr_bob_nqe(channels: ChannelSet, scenario: Scenario,
                 beamformers: BeamformerPair) -> float:
    """Bob's SINR with ideal (infinite-resolution) analog weights."""
    num = (channels.g_ab * scenario.power_alice
           * _abs2(np.vdot(channels.h_ab, beamformers.v_a_ideal)))
    m, _ = interference_powers(channels, scenario, beamformers.v_b)
    return num / m


def sinr_bob_qe_closed_form(channels: ChannelSet, scenario: Scenario,
                            beamformers: BeamformerPair,
                            book: PhaseCodebook) -> float:
    """Bob's SINR with the expected quantized array gain N_a * sinc^2(half_step).

    Assumes phase-aligned weights, for which the quantized gain averages to
    the sinc-squared fraction of the full beamforming gain.
    """
    n_a = beamformers.v_a_ideal.size
    num = (channels.g_ab * scenario.power_alice * n_a
           * expected_phasor(book) ** 2)
    m, _ = interference_powers(channels, scenario, beamformers.v_b)
    return num / m


def sinr_loss_closed_form(book: PhaseCodebook) -> float:
    """Quantization SINR penalty 10*log10(1 / sinc^2(pi / 2**bits)) in dB.

    Strictly decreasing in the bit count and -> 0 dB as the codebook
    becomes dense. This is the large-array limit of
    :func:`sinr_loss_exact_expectation`.
    """
    return -20.0 * math.log10(expected_phasor(book))


def sinr_loss_exact_expectation(book: PhaseCodebook, n_alice: int) -> float:
    """Exact finite-array expected SINR penalty in dB under uniform errors.

    E[|sum_n e^{j err_n}|^2 / N] = 1 + (N - 1) * sinc^2(half_step): the N
    self terms survive with unit magnitude while the N(N-1) cross terms
    average to sinc^2 each. The Monte Carlo engine reproduces this to
    sampling accuracy (see the link_sim tests).
    """
    if n_alice < 1:
        raise ValueError(f"n_alice must be >= 1, got {n_alice}")
    s2 = expected_phasor(book) ** 2
    expected_gain = 1.0 + (n_alice - 1) * s2
    return 10.0 * math.log10(n_alice / expected_gain)


def rate(link_signal_power: float, link_interference_power: float,
         sigma2: float) -> float:
    """Achievable rate log2(1 + S / (I + sigma2)) in bits/s/Hz."""
    if link_signal_power < 0 or link_interference_power < 0 or sigma2 < 0:
        raise ValueError("powers must be nonnegative")
    return math.log2(1.0 + link_signal_power
                     / (link_interference_power + sigma2))


def expected_qe_power_gain(h: np.ndarray, v_ideal: np.ndarray,
                           book: PhaseCodebook) -> float:
    """E[|h^H v(quantized)|^2] under the uniform error model.

    Equals (1 - sinc^2) * ||h||^2 / N + sinc^2 * |h^H v_ideal|^2: cross terms
    shrink by sinc^2 while the self terms are error-invariant.
    """
    s2 = expected_phasor(book) ** 2
    n = v_ideal.size
    return ((1.0 - s2) * float(np.sum(np.abs(h) ** 2)) / n
            + s2 * _abs2(np.vdot(h, v_ideal)))


def secrecy_rate(channels: ChannelSet, scenario: Scenario,
                 beamformers: BeamformerPair, mode: str = "nqe",
                 book: PhaseCodebook | None = None, *,
                 qe_flavor: str = "closed_form",
                 eve_gain: str = "realized") -> float:
    """Secrecy rate max{0, R_bob - R_eve} in bits/s/Hz.

    mode "nqe" evaluates both receivers on the ideal beamformer. mode "qe"
    uses, at Bob, either the expected quantized gain N_a * sinc^2
    (``qe_flavor="closed_form"``) or the realized |h_ab^H v_quantized|^2
    (``"sampled"``); Eve's gain is the realized quantized one by default, or
    its uniform-model expectation with ``eve_gain="expected"``.
    """
    if mode not in ("nqe", "qe"):
        raise ValueError(f"mode must be 'nqe' or 'qe', got {mode!r}")
    if mode == "qe":
        if book is None:
            raise ValueError("mode 'qe' requires a codebook")
        if qe_flavor not in ("closed_form", "sampled"):
            raise ValueError(f"unknown qe_flavor {qe_flavor!r}")
        if eve_gain not in ("realized", "expected"):
            raise ValueError(f"unknown eve_gain {eve_gain!r}")

    if mode == "nqe":
        gain_bob = _abs2(np.vdot(channels.h_ab, beamformers.v_a_ideal))
        gain_eve = _abs2(np.vdot(channels.h_ae, beamformers.v_a_ideal))
    else:
        if qe_flavor == "closed_form":
            gain_bob = beamformers.v_a_ideal.size * expected_phasor(book) ** 2
        else:
            gain_bob = _abs2(np.vdot(channels.h_ab, beamformers.v_a_quantized))
        if eve_gain == "realized":
            gain_eve = _abs2(np.vdot(channels.h_ae, beamformers.v_a_quantized))
        else:
            gain_eve = expected_qe_power_gain(channels.h_ae,
                                              beamformers.v_a_ideal, book)

    m, t = interference_powers(channels, scenario, beamformers.v_b)
    sigma2 = scenario.noise_power
    r_bob = rate(channels.g_ab * scenario.power_alice * gain_bob,
                 m - sigma2, sigma2)
    r_eve = rate(channels.g_ae * scenario.power_alice * gain_eve,
                 t - sigma2, sigma2)
    return max(0.0, r_bob - r_eve)


def metrics_report(channels: ChannelSet, scenario: Scenario,
                   beamformers: BeamformerPair,
                   book: PhaseCodebook) -> MetricsReport:
    """All closed-form metrics for one realization (QE terms use the
    closed-form flavor)."""
    m, t = interference_powers(channels, scenario, beamformers.v_b)
    sigma2 = scenario.noise_power
    gain_bob = _abs2(np.vdot(channels.h_ab, beamformers.v_a_ideal))
    gain_eve = _abs2(np.vdot(channels.h_ae, beamformers.v_a_ideal))
    return MetricsReport(
        sinr_nqe=sinr_bob_nqe(channels, scenario, beamformers),
        sinr_qe=sinr_bob_qe_closed_form(channels, scenario, beamformers, book),
        gamma_db=sinr_loss_closed_form(book),
        rate_bob=rate(channels.g_ab * scenario.power_alice * gain_bob,
                      m - sigma2, sigma2),
        rate_eve=rate(channels.g_ae * scenario.power_alice * gain_eve,
                      t - sigma2, sigma2),
        sr_nqe=secrecy_rate(channels, scenario, beamformers, "nqe"),
        sr_qe=secrecy_rate(channels, scenario, beamformers, "qe", book),
        interference_m=m,
        interference_t=t,
    )
