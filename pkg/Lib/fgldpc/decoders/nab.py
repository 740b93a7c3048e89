from dataclasses import dataclass

from fgldpc.decoders.minsum import MinSumDecoderBase, min_sum_check_pass


@dataclass
class Nab(MinSumDecoderBase):
    """Normalized APP-based decoding: normalized Min-Sum check pass, but
    each bit sends its full posterior on every edge."""

    description = "Normalized APP-based Min-Sum"
    parameters = ("beta5",)
    divisions_per_edge = 1
    extrinsic_variable_pass = False

    def check_pass(self, z, h):
        return min_sum_check_pass(z, h) / self.params.beta5
