from dataclasses import dataclass

from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import (
    SerialBitFlipDecoderBase,
    lp_edge_terms,
    sz_edge_weights,
)


@dataclass
class SzWbf(SerialBitFlipDecoderBase):
    """Serial bit flipping with every LP term weighted by how many
    reliable bits share the check."""

    description = "Serial weighted bit flipping with reliability-weighted checks"
    parameters = ("alpha1", "beta1")

    def edge_terms(self, h, magnitude):
        sat, unsat = lp_edge_terms(h, magnitude)
        w = sz_edge_weights(h, magnitude, self.params.alpha1, self.params.beta1)
        return w * sat, w * unsat

    def preprocess_additions(self, h):
        return 2 * h.n_edges - 2 * h.n_rows


def decode_sz_wbf(h, frame, params, i_max=None, loop_detection=True) -> DecodeOutcome:
    return SzWbf.with_params(params, i_max, loop_detection=loop_detection).decode(h, frame)
