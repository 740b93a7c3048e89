from dataclasses import dataclass

import numpy as np

from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import BfWorkspace, BitFlipDecoderBase
from fgldpc.decoders.edges import extrinsic_min, row_argmax


def collect_signals(ws, h, target_edges):
    """One flipping signal per unsatisfied check, sent to the bit on
    ``target_edges[k]``. Returns the per-bit counters."""
    unsat = ws.s.astype(bool)
    ws.b = np.bincount(h.edge_col[target_edges[unsat]], minlength=h.n_cols)
    return ws.b


def signal_additions(ws, h):
    return int((h.row_degrees[ws.s.astype(bool)] - 1).sum())


@dataclass
class WzWbf(BitFlipDecoderBase):
    """Each unsatisfied check votes for its least reliable bit; bits
    with at least alpha2 votes flip together."""

    description = "Multi-bit flipping by per-check votes"
    parameters = ("alpha2", "beta3")

    def workspace(self, h, frame):
        mag = frame.magnitude
        others_min = extrinsic_min(mag[h.edge_col], h)
        return BfWorkspace.create(h, frame, -others_min, others_min, -self.params.beta3 * mag)

    def preprocess_additions(self, h):
        return h.n_edges - h.n_rows

    def select(self, ws, h, ledger):
        ledger.real_additions += signal_additions(ws, h)
        b = collect_signals(ws, h, row_argmax(ws.f[h.edge_col], h))
        return np.flatnonzero(b >= self.params.alpha2)


def decode_wz_wbf(h, frame, params, i_max=None) -> DecodeOutcome:
    return WzWbf.with_params(params, i_max).decode(h, frame)
