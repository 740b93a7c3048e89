from dataclasses import dataclass

import numpy as np

from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import BfWorkspace, BitFlipDecoderBase, lp_edge_terms


def flip_count(syndrome_weight: int, d_v: int) -> int:
    """floor(w_h(s) / d_v), never less than one."""
    return max(1, syndrome_weight // d_v)


@dataclass
class NtWbf(BitFlipDecoderBase):
    """Flip as many of the lowest-scoring bits as the syndrome weight
    suggests there are errors."""

    description = "Multi-bit LP flipping, count estimated from the syndrome weight"
    parameters = ()

    def workspace(self, h, frame):
        return BfWorkspace.create(h, frame, *lp_edge_terms(h, frame.magnitude))

    def preprocess_additions(self, h):
        return 2 * h.n_edges - 3 * h.n_rows

    def select(self, ws, h, ledger):
        count = flip_count(int(np.count_nonzero(ws.s)), h.d_v)
        ledger.real_additions += h.n_cols * np.log2(count)
        return np.argsort(ws.f, kind="stable")[:count]


def decode_nt_wbf(h, frame, i_max=None) -> DecodeOutcome:
    return NtWbf.with_params((), i_max).decode(h, frame)
