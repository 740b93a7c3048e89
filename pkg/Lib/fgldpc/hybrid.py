"""Two-stage decoding: a bit-flipping decoder first, a Min-Sum decoder
only for the frames it gives up on.

The second stage always restarts from the received frame, never from the
first stage's hard decision.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from fgldpc.complexity import ComplexityLedger, concatenate
from fgldpc.decoders import DecodeOutcome, DecoderBase


@dataclass
class HybridScheme:
    first: DecoderBase
    second: DecoderBase

    def __post_init__(self):
        if self.first.family != "bf" or self.second.family != "ms":
            raise ValueError(
                f"A hybrid needs a bit-flipping then a Min-Sum decoder, "
                f"got {self.first.name}+{self.second.name}"
            )

    @property
    def name(self) -> str:
        return f"{self.first.name}+{self.second.name}"

    def __str__(self):
        return f"{self.first}+{self.second}"


@dataclass
class HybridOutcome:
    c_hat: np.ndarray
    converged: bool
    stage_used: str
    bf: DecodeOutcome
    ms: Optional[DecodeOutcome]
    scheme: str

    @property
    def iters_used(self) -> int:
        return self.bf.iters_used + (self.ms.iters_used if self.ms else 0)

    @property
    def ms_iters(self) -> int:
        return self.ms.iters_used if self.ms else 0

    @property
    def bf_ledger(self) -> ComplexityLedger:
        return self.bf.ledger

    @property
    def ms_ledger(self) -> ComplexityLedger:
        """MS-stage cost, counting an uninvoked stage as a frame with no work."""
        if self.ms:
            return self.ms.ledger
        return ComplexityLedger(
            scheme=self.scheme.split("+")[1],
            code=self.bf.ledger.code,
            n_cols=self.bf.ledger.n_cols,
            frames=1,
        )

    @property
    def ledger(self) -> ComplexityLedger:
        return concatenate(self.bf_ledger, self.ms_ledger, self.scheme)

    @property
    def bit_errors(self) -> int:
        return int(np.count_nonzero(self.c_hat))

    @property
    def frame_error(self) -> bool:
        return self.bit_errors > 0


def decode_hybrid(scheme: HybridScheme, h, frame) -> HybridOutcome:
    first = scheme.first.decode(h, frame)
    if first.converged:
        return HybridOutcome(first.c_hat, True, "bf", first, None, scheme.name)
    second = scheme.second.decode(h, frame)
    return HybridOutcome(second.c_hat, second.converged, "ms", first, second, scheme.name)


def paired_std_error(a_only: int, b_only: int, frames: int) -> float:
    """Standard error of FER_a - FER_b from discordant pair counts."""
    if frames <= 0:
        raise ValueError("Need at least one frame")
    discordant = a_only + b_only
    variance = discordant - (a_only - b_only) ** 2 / frames
    return math.sqrt(max(variance, 0.0)) / frames


@dataclass
class EquivalenceReport:
    frames: int = 0
    hybrid_errors: int = 0
    ms_errors: int = 0
    hybrid_only_errors: int = 0
    ms_only_errors: int = 0
    bf_undetected: int = 0
    ms_invocations: int = 0
    hybrid_additions: float = 0.0
    ms_additions: float = 0.0

    @property
    def hybrid_fer(self) -> float:
        return self.hybrid_errors / self.frames

    @property
    def ms_fer(self) -> float:
        return self.ms_errors / self.frames

    @property
    def std_error(self) -> float:
        return paired_std_error(self.hybrid_only_errors, self.ms_only_errors, self.frames)

    def holds(self, k: float = 3.0) -> bool:
        """Hybrid FER, net of undetected BF errors, is within k paired
        standard errors of the MS-alone FER."""
        net = (self.hybrid_errors - self.bf_undetected) / self.frames
        return net <= self.ms_fer + k * self.std_error


def hybrid_fer_equivalence(
    scheme: HybridScheme, ms_alone: DecoderBase, h, frames: Iterable
) -> EquivalenceReport:
    report = EquivalenceReport()
    for frame in frames:
        hybrid = decode_hybrid(scheme, h, frame)
        if hybrid.ms is not None and ms_alone == scheme.second:
            alone = hybrid.ms
        else:
            alone = ms_alone.decode(h, frame)
        report.frames += 1
        report.hybrid_errors += hybrid.frame_error
        report.ms_errors += alone.frame_error
        report.hybrid_only_errors += hybrid.frame_error and not alone.frame_error
        report.ms_only_errors += alone.frame_error and not hybrid.frame_error
        report.bf_undetected += hybrid.stage_used == "bf" and hybrid.frame_error
        report.ms_invocations += hybrid.ms is not None
        report.hybrid_additions += hybrid.ledger.real_additions
        report.ms_additions += alone.ledger.real_additions
    return report
