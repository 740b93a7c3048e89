from dataclasses import dataclass

import numpy as np

from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import BfWorkspace, BitFlipDecoderBase
from fgldpc.decoders.edges import row_reduce


@dataclass
class LzWbf(BitFlipDecoderBase):
    description = "Multi-bit flipping of every bit with a positive flipping function"
    parameters = ("beta2",)

    def workspace(self, h, frame):
        mag = frame.magnitude
        row_min = row_reduce(np.minimum, mag[h.edge_col], h)[h.edge_row]
        return BfWorkspace.create(h, frame, -row_min, row_min, -self.params.beta2 * mag)

    def preprocess_additions(self, h):
        return h.n_edges - h.n_rows

    def select(self, ws, h, ledger):
        return np.flatnonzero(ws.f > 0)


def decode_lz_wbf(h, frame, beta2, i_max=None) -> DecodeOutcome:
    return LzWbf.with_params((beta2,), i_max).decode(h, frame)
