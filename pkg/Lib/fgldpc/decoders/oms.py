from dataclasses import dataclass

import numpy as np

from fgldpc.decoders.edges import extrinsic_min, extrinsic_sign
from fgldpc.decoders.minsum import MinSumDecoderBase


@dataclass
class Oms(MinSumDecoderBase):
    description = "Offset Min-Sum: beta6 subtracted from check magnitudes"
    parameters = ("beta6",)

    def check_pass(self, z, h):
        magnitude = np.maximum(extrinsic_min(np.abs(z), h) - self.params.beta6, 0.0)
        return extrinsic_sign(z, h) * magnitude
