"""Path-loss gains, LOS channel vectors, Bob's self-interference channel, and
complex-Gaussian noise for the Alice-Bob-Eve wiretap geometry."""

import math
from dataclasses import dataclass, replace

import numpy as np

from .array_geometry import ArrayGeometry, steering_vector


@dataclass(frozen=True)
class Scenario:
    """Physical parameters of one link realization.

    Powers in watts, distances in metres, angles in radians,
    ``noise_power`` is the (equal) noise variance at Bob and Eve.
    ``self_interference`` is the residual loop-interference level rho in
    [0, 1], 0 meaning perfect cancellation at Bob's full-duplex receiver.
    """

    power_alice: float
    power_bob: float
    dist_ab: float
    dist_ae: float
    dist_be: float
    angle_ab: float
    angle_ae: float
    angle_be: float
    path_loss_exp: float
    ref_attenuation: float
    self_interference: float
    noise_power: float
    n_alice: int
    n_bob_tx: int
    n_bob_rx: int = 1

    def __post_init__(self) -> None:
        for name in ("power_alice", "power_bob", "dist_ab", "dist_ae", "dist_be",
                     "noise_power"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if not 0.0 <= self.self_interference <= 1.0:
            raise ValueError(
                f"self_interference must be in [0, 1], got {self.self_interference}")
        if self.n_alice < 1 or self.n_bob_tx < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.n_bob_rx != 1:
            raise ValueError(f"n_bob_rx must be 1, got {self.n_bob_rx}")


@dataclass(frozen=True)
class ChannelSet:
    """One realization of all channel vectors and link path gains.

    h_ab, h_ae are Alice-side steering vectors (length n_alice); h_be is the
    steering vector of Bob's transmit subarray toward Eve (length n_bob_tx);
    h_bb is Bob's random self-interference channel (length n_bob_tx).
    """

    h_ab: np.ndarray
    h_ae: np.ndarray
    h_be: np.ndarray
    h_bb: np.ndarray
    g_ab: float
    g_ae: float
    g_be: float


def path_gain(distance: float, c: float, epsilon: float = 1.0) -> float:
    """Power path gain epsilon / distance**c. ``distance`` must be > 0."""
    if distance <= 0:
        raise ValueError(f"distance must be > 0, got {distance}")
    return epsilon / distance ** c


def build_channels(scenario: Scenario, rng: np.random.Generator,
                   spacing_ratio: float = 0.5) -> ChannelSet:
    """Realize the LOS channel vectors and draw Bob's self-interference channel.

    The steering parts are deterministic given the scenario; h_bb entries are
    i.i.d. standard complex Gaussian, so the result is reproducible given the
    generator state.
    """
    h_bb = (rng.standard_normal(scenario.n_bob_tx)
            + 1j * rng.standard_normal(scenario.n_bob_tx)) / math.sqrt(2.0)
    return channels_with_selfinterference(scenario, h_bb, spacing_ratio)


def channels_with_selfinterference(scenario: Scenario, h_bb: np.ndarray,
                                   spacing_ratio: float = 0.5) -> ChannelSet:
    """Build a ChannelSet around a given self-interference realization.

    Used by sweep drivers that hold one h_bb draw fixed while varying the
    array size or noise level.
    """
    alice = ArrayGeometry(scenario.n_alice, spacing_ratio)
    bob_tx = ArrayGeometry(scenario.n_bob_tx, spacing_ratio)
    c, eps = scenario.path_loss_exp, scenario.ref_attenuation
    return ChannelSet(
        h_ab=steering_vector(alice, scenario.angle_ab),
        h_ae=steering_vector(alice, scenario.angle_ae),
        h_be=steering_vector(bob_tx, scenario.angle_be),
        h_bb=np.asarray(h_bb, dtype=complex),
        g_ab=path_gain(scenario.dist_ab, c, eps),
        g_ae=path_gain(scenario.dist_ae, c, eps),
        g_be=path_gain(scenario.dist_be, c, eps),
    )


def noise_from_snr(snr_db: float, scenario: Scenario) -> float:
    """Noise power giving the requested received per-antenna SNR at Bob.

    SNR is defined as g_ab * P_a / sigma^2, which keeps sweep curves
    independent of the arbitrary reference-attenuation choice.
    """
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite, got {snr_db}")
    g_ab = path_gain(scenario.dist_ab, scenario.path_loss_exp,
                     scenario.ref_attenuation)
    return g_ab * scenario.power_alice / 10.0 ** (snr_db / 10.0)


def awgn(sigma2: float, rng: np.random.Generator, size=None):
    """Circularly-symmetric complex Gaussian noise with total variance sigma2."""
    if sigma2 < 0:
        raise ValueError(f"sigma2 must be >= 0, got {sigma2}")
    scale = math.sqrt(sigma2 / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def default_scenario(snr_db: float = 15.0, n_alice: int = 16, n_bob_tx: int = 16,
                     self_interference: float = 0.5) -> Scenario:
    """Reference link budget: 70 dBm transmit powers at Alice and Bob, 500 m
    links with inverse-square path loss, desired / eavesdrop / jam angles of
    60 / 120 / 45 degrees. ``noise_power`` is set so the received per-antenna
    SNR at Bob equals ``snr_db``."""
    power = 10.0 ** ((70.0 - 30.0) / 10.0)
    base = Scenario(
        power_alice=power, power_bob=power,
        dist_ab=500.0, dist_ae=500.0, dist_be=500.0,
        angle_ab=math.radians(60.0), angle_ae=math.radians(120.0),
        angle_be=math.radians(45.0),
        path_loss_exp=2.0, ref_attenuation=1.0,
        self_interference=self_interference,
        noise_power=1.0,  # placeholder, replaced below
        n_alice=n_alice, n_bob_tx=n_bob_tx, n_bob_rx=1,
    )
    return replace(base, noise_power=noise_from_snr(snr_db, base))
