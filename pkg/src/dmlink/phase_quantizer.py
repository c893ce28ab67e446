"""L-bit phase codebooks, circular nearest-neighbour quantization, and the
uniform quantization-error model."""

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

MAX_BITS = 30


@dataclass(frozen=True)
class PhaseCodebook:
    """The set of 2**bits equally spaced phases {2*pi*k / 2**bits}.

    ``half_step`` (= pi / 2**bits) is the largest possible circular distance
    from any phase to its nearest codeword.
    """

    bits: int
    codewords: np.ndarray
    half_step: float


def codebook(bits: int) -> PhaseCodebook:
    """Build the L-bit phase codebook. ``bits`` must be in 1..30."""
    if not 1 <= bits <= MAX_BITS:
        raise ValueError(f"bits must be in 1..{MAX_BITS}, got {bits}")
    n = 1 << bits
    codewords = TWO_PI * np.arange(n) / n
    codewords.flags.writeable = False
    return PhaseCodebook(bits=bits, codewords=codewords, half_step=math.pi / n)


def wrap_angle(x):
    """Wrap angle(s) to the interval (-pi, pi]."""
    w = np.remainder(x, TWO_PI)
    return np.where(w > math.pi, w - TWO_PI, w)


def quantize(phase, book: PhaseCodebook):
    """Quantize phase(s) to the nearest codeword on the circle.

    Returns ``(codeword, error)`` with ``error = wrap(codeword - phase)`` in
    (-pi, pi] and |error| <= ``book.half_step``. Exact midpoints round up to
    the larger codeword modulo 2*pi. Scalar input yields scalar output;
    arrays are quantized elementwise.
    """
    p = np.asarray(phase, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("phase must be finite")
    step = 2.0 * book.half_step
    k = np.floor(p / step + 0.5).astype(np.int64) % (1 << book.bits)
    cw = book.codewords[k]
    err = wrap_angle(cw - p)
    if cw.ndim == 0:
        return float(cw), float(err)
    return cw, err


def sample_qe(book: PhaseCodebook, rng: np.random.Generator, size=None):
    """Draw quantization error(s) from Uniform[-half_step, +half_step]."""
    return rng.uniform(-book.half_step, book.half_step, size=size)


def sinc(x: float) -> float:
    """sin(x)/x with a series fallback near zero.

    This is the unnormalized sinc; note numpy's np.sinc(x) is
    sin(pi*x)/(pi*x).
    """
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def expected_phasor(book: PhaseCodebook) -> float:
    """E[e^{j*error}] under the uniform error model: sinc(pi / 2**bits).

    Real-valued because the error distribution is symmetric. Strictly
    increases with ``bits`` and tends to 1 as the codebook gets dense.
    """
    return sinc(book.half_step)
