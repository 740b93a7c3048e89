"""Decoder registry.

Every module in this package other than the shared ``bitflip`` and
``minsum`` helpers defines exactly one decoder class; the module name,
with underscores turned into hyphens, is the name used on the command
line and in result files (``lf_wbf`` -> ``lf-wbf``).
"""
import importlib
import inspect
import pkgutil
import sys
from dataclasses import dataclass
from os.path import dirname
from typing import ClassVar, Sequence, Tuple

import numpy as np

from fgldpc.complexity import ComplexityLedger


@dataclass
class DecodeOutcome:
    c_hat: np.ndarray
    converged: bool
    iters_used: int
    ledger: ComplexityLedger

    @property
    def bit_errors(self) -> int:
        """Errors against the all-zero codeword."""
        return int(np.count_nonzero(self.c_hat))

    @property
    def frame_error(self) -> bool:
        return self.bit_errors > 0


@dataclass
class DecoderBase:
    family: ClassVar[str] = "bf"
    description: ClassVar[str] = "A badly described decoder"
    parameters: ClassVar[Tuple[str, ...]] = ()
    default_imax: ClassVar[int] = 20

    @classmethod
    def friendly_name(cls) -> str:
        return cls.__module__.split(".")[-1].replace("_", "-")

    @property
    def name(self) -> str:
        return self.friendly_name()

    @classmethod
    def from_values(cls, values: Sequence[float] = (), i_max: int = None, **options):
        """Build a decoder from positional parameter values in
        ``cls.parameters`` order."""
        raise NotImplementedError

    @property
    def values(self) -> Tuple[float, ...]:
        raise NotImplementedError

    @property
    def i_max(self) -> int:
        raise NotImplementedError

    def new_ledger(self, h) -> ComplexityLedger:
        return ComplexityLedger(scheme=self.name, code=h.name, n_cols=h.n_cols, frames=1)

    def decode(self, h, frame) -> DecodeOutcome:
        raise NotImplementedError

    def __str__(self):
        values = ",".join(f"{v:g}" for v in self.values)
        return f"{self.name}{':' + values if values else ''}@{self.i_max}"


def _check_arity(cls, values):
    if len(values) != len(cls.parameters):
        expected = ", ".join(cls.parameters) or "no parameters"
        raise ValueError(
            f"{cls.friendly_name()} takes {expected}; got {len(values)} value(s)"
        )


known_decoders = {}

for mod in pkgutil.iter_modules([dirname(__file__)]):
    imp = importlib.import_module("fgldpc.decoders." + mod.name)
    classes = [
        (name, cls)
        for name, cls in inspect.getmembers(sys.modules[imp.__name__], inspect.isclass)
        if "Base" not in name
        and issubclass(cls, DecoderBase)
        and cls.__module__ == imp.__name__
    ]
    if not classes:
        continue
    if len(classes) > 1:
        raise ValueError(f"Too many classes in module fgldpc.decoders.{mod.name}")
    known_decoders[mod.name.replace("_", "-")] = classes[0][1]


def get_decoder(name: str, values: Sequence[float] = (), i_max: int = None, **options):
    if name not in known_decoders:
        raise ValueError(
            f"Unknown decoder '{name}'; known decoders: {', '.join(sorted(known_decoders))}"
        )
    return known_decoders[name].from_values(values, i_max=i_max, **options)
