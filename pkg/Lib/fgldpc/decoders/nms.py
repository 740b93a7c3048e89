from dataclasses import dataclass

from fgldpc.decoders.minsum import MinSumDecoderBase, min_sum_check_pass


@dataclass
class Nms(MinSumDecoderBase):
    description = "Normalized Min-Sum: check messages divided by beta5"
    parameters = ("beta5",)
    divisions_per_edge = 1

    def check_pass(self, z, h):
        return min_sum_check_pass(z, h) / self.params.beta5
