"""BPSK over AWGN.

Codeword bit c maps to symbol x = 1 - 2c, the receiver sees y = x + z with
z ~ N(0, sigma^2), and the SNR figure is Eb/N0 with
sigma^2 = 1 / (2 * R * Eb/N0).
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def _check_rate(rate):
    if not 0 < rate < 1:
        raise ValueError(f"Code rate must lie in (0, 1), got {rate}")


def snr_db_to_sigma(ebn0_db: float, rate: float) -> float:
    _check_rate(rate)
    return float(np.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))))


def sigma_to_snr_db(sigma: float, rate: float) -> float:
    _check_rate(rate)
    if sigma <= 0:
        raise ValueError(f"Noise deviation must be positive, got {sigma}")
    return float(10.0 * np.log10(1.0 / (2.0 * rate * sigma**2)))


def bpsk_modulate(c) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(c, dtype=np.float64)


def frame_rng(master_seed: int, *indices: int) -> np.random.Generator:
    """Independent generator for one frame, keyed by its position in a run."""
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=tuple(indices))
    )


@dataclass(frozen=True, eq=False)
class ReceivedFrame:
    y: np.ndarray
    sigma: float

    @cached_property
    def hard(self) -> np.ndarray:
        return (self.y < 0).astype(np.uint8)

    @cached_property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.y)

    @cached_property
    def llr(self) -> np.ndarray:
        return 2.0 * self.y / self.sigma**2

    def __len__(self):
        return len(self.y)


def transmit(x, sigma: float, seed: SeedLike = None) -> ReceivedFrame:
    if sigma <= 0:
        raise ValueError(f"Noise deviation must be positive, got {sigma}")
    x = np.asarray(x, dtype=np.float64)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return ReceivedFrame(y=x + sigma * rng.standard_normal(x.shape), sigma=sigma)


def all_zero_frame(n: int, sigma: float, seed: SeedLike = None) -> ReceivedFrame:
    return transmit(np.ones(n), sigma, seed)
