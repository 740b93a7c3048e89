from dataclasses import dataclass

from fgldpc.decoders import DecodeOutcome
from fgldpc.decoders.bitflip import SerialBitFlipDecoderBase, lp_edge_terms


@dataclass
class LpWbf(SerialBitFlipDecoderBase):
    description = "Serial weighted bit flipping on the LP flipping function"
    parameters = ()

    def edge_terms(self, h, magnitude):
        return lp_edge_terms(h, magnitude)

    def preprocess_additions(self, h):
        # min and max of every check
        return 2 * h.n_edges - 3 * h.n_rows


def decode_lp_wbf(h, frame, i_max=None, loop_detection=True) -> DecodeOutcome:
    return LpWbf.with_params((), i_max, loop_detection=loop_detection).decode(h, frame)
