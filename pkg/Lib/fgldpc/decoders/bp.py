from dataclasses import dataclass

from fgldpc.decoders.minsum import MinSumDecoderBase, bp_check_pass


@dataclass
class Bp(MinSumDecoderBase):
    description = "Belief propagation in the LLR domain (tanh rule)"
    parameters = ()
    counted = False

    def check_pass(self, z, h):
        return bp_check_pass(z, h)
