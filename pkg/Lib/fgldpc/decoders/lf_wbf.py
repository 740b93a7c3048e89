"""Multi-bit weighted bit flipping with delay handling.

Bits whose channel magnitude exceeds a threshold T are *reliable*:
they only flip after collecting enough flipping signals in alpha3
rounds, while unreliable bits flip as soon as they reach alpha2 signals.
A candidate set that would zero the syndrome outright is flipped without
delay.
"""
import math
from dataclasses import dataclass

import numpy as np

from fgldpc.codes import syndrome
from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import (
    BfWorkspace,
    BitFlipDecoderBase,
    lp_edge_terms,
    sz_edge_weights,
)
from fgldpc.decoders.edges import row_argmin
from fgldpc.decoders.wz_wbf import collect_signals, signal_additions

RELAX_MODES = ("flip-counter", "delay-counter")


def reliability_threshold(magnitude, beta4) -> float:
    """The floor(beta4 * N)-th smallest magnitude."""
    rank = math.floor(beta4 * len(magnitude))
    if rank < 1:
        raise ValueError(
            f"beta4={beta4} selects no bits out of {len(magnitude)}; need beta4*N >= 1"
        )
    return float(np.partition(magnitude, rank - 1)[rank - 1])


@dataclass
class LfWbf(BitFlipDecoderBase):
    description = "Multi-bit weighted bit flipping with delay handling"
    parameters = ("alpha1", "alpha2", "alpha3", "beta1", "beta4")

    relax: str = "flip-counter"

    def __post_init__(self):
        if self.relax not in RELAX_MODES:
            raise ValueError(f"relax must be one of {RELAX_MODES}, got '{self.relax}'")

    def workspace(self, h, frame):
        mag = frame.magnitude
        sat, unsat = lp_edge_terms(h, mag)
        w = sz_edge_weights(h, mag, self.params.alpha1, self.params.beta1)
        ws = BfWorkspace.create(h, frame, w * sat, w * unsat)
        ws.T = reliability_threshold(mag, self.params.beta4)
        ws.reliable = mag > ws.T
        return ws

    def preprocess_additions(self, h):
        rank = math.floor(self.params.beta4 * h.n_cols)
        return 2 * h.n_edges - h.n_rows + h.n_cols * math.log2(rank)

    def select(self, ws, h, ledger):
        p = self.params
        ledger.real_additions += signal_additions(ws, h)
        b = collect_signals(ws, h, row_argmin(ws.f[h.edge_col], h))

        candidates = b >= p.alpha2
        if candidates.any():
            trial = ws.s ^ syndrome(h, candidates.astype(np.uint8))
            if not trial.any():
                return np.flatnonzero(candidates)

        listed = candidates & ~ws.reliable
        ws.a[candidates & ws.reliable] += 1
        alpha3 = p.alpha3
        listed |= ws.a >= alpha3
        if not listed.any():
            listed, alpha3 = self.relaxed(ws)
        ws.a[ws.a >= alpha3] = 0
        return np.flatnonzero(listed)

    def relaxed(self, ws):
        """Fallback list when nothing qualified, and the delay threshold
        to reset counters against."""
        p = self.params
        if self.relax == "flip-counter":
            threshold = p.alpha2 - 1
            if threshold < 1:
                return np.zeros_like(ws.reliable), p.alpha3
            return ws.b == threshold, p.alpha3
        threshold = p.alpha3 - 1
        if threshold < 1:
            return np.zeros_like(ws.reliable), p.alpha3
        return ws.reliable & (ws.a >= threshold), threshold


def decode_lf_wbf(h, frame, params, i_max=None, relax="flip-counter") -> DecodeOutcome:
    return LfWbf.with_params(params, i_max, relax=relax).decode(h, frame)
