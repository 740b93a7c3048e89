#!/usr/bin/env python3
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

# =====================================
# GLOBAL CONSTANTS DEFINITIONS

# One primitive polynomial per extension degree, bit i = coefficient of x^i.
# Taken from the standard Lin & Costello table.
PRIMITIVE_POLYNOMIALS = {
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x89,  # x^7 + x^3 + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}

# Desk-scale bounds on the geometry order s
EG_ORDER_RANGE = (2, 6)
PG_ORDER_RANGE = (2, 5)

# Decoder parameter settings per code. Positional values follow each
# decoder's ``parameters`` tuple. SZ-WBF has no published setting for
# the (273,191) code.
PARAMETER_PRESETS = {
    "pg:4": {
        "lf-wbf": (6, 4, 2, 0.45, 0.07),
        "lz-wbf": (1.5,),
        "wz-wbf": (4, 1.3),
        "nab": (5.7,),
        "nms": (2.9,),
        "oms": (0.22,),
    },
    "eg:5": {
        "lf-wbf": (8, 7, 2, 0.4, 0.04),
        "lz-wbf": (2.1,),
        "wz-wbf": (10, 1.8),
        "sz-wbf": (9, 0.5),
        "nab": (7.1,),
        "nms": (3.7,),
        "oms": (0.20,),
    },
}

# LF-WBF vectors (alpha1, alpha2, alpha3, beta1, beta4) found by
# differential evolution, keyed by channel sigma.
PUBLISHED_LF_WBF_VECTORS = {
    "pg:4": {
        0.58: (10, 4, 4, 0.31, 0.064),
        0.575: (9, 4, 3, 0.57, 0.11),
        0.57: (6, 4, 4, 0.50, 0.054),
        0.565: (5, 3, 4, 0.47, 0.07),
    },
    "eg:5": {
        0.565: (5, 9, 2, 0.38, 0.036),
        0.56: (12, 8, 3, 0.51, 0.071),
        0.555: (10, 8, 3, 0.41, 0.075),
        0.55: (6, 6, 3, 0.32, 0.025),
    },
}

# Sweep output, one row per (scheme, SNR) point
CSV_HEADER = (
    "scheme",
    "code",
    "snr_db",
    "sigma",
    "frames",
    "frame_errors",
    "bit_errors",
    "fer",
    "ber",
    "a_ni",
    "a_ns",
    "a_nb",
    "a_nc",
    "adds_measured",
    "adds_estimated",
    "ms_rate",
    "ratio_vs_nms",
    "wall_s",
)

DEFAULT_MIN_FRAME_ERRORS = 100
DEFAULT_MAX_FRAMES = 1_000_000
DEFAULT_BATCH_SIZE = 100
