"""Flooding-schedule message passing: BP and its Min-Sum approximations.

Messages live on edges in the matrix's row-major edge order. One
iteration runs the check pass on every edge, then the variable pass,
then hard-decides on the posterior.
"""
from dataclasses import dataclass, field, replace
from typing import ClassVar, Sequence

import numpy as np

from fgldpc.codes import syndrome
from fgldpc.complexity import CodeDims, ms_iteration_additions
from fgldpc.decoders import DecodeOutcome, DecoderBase, _check_arity
from fgldpc.decoders.edges import extrinsic_min, extrinsic_sign, row_reduce

ATANH_CLIP = 1 - 1e-15
VARIANTS = ("bp", "nms", "oms", "nab")


@dataclass(frozen=True)
class MsParams:
    variant: str = "nms"
    beta5: float = 1.0
    beta6: float = 0.0
    i_max: int = 200

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"Unknown Min-Sum variant '{self.variant}'")
        if self.variant in ("nms", "nab") and not self.beta5 > 0:
            raise ValueError(f"beta5 must be positive, got {self.beta5}")
        if self.variant == "oms" and self.beta6 < 0:
            raise ValueError(f"beta6 must be non-negative, got {self.beta6}")
        if int(self.i_max) != self.i_max or self.i_max < 1:
            raise ValueError(f"i_max must be a positive integer, got {self.i_max}")


@dataclass
class MsWorkspace:
    check_to_var: np.ndarray
    var_to_check: np.ndarray
    posterior: np.ndarray
    c_hat: np.ndarray
    s: np.ndarray


def _signs(z):
    return np.where(np.asarray(z) < 0, -1.0, 1.0)


def check_update_bp(incoming: Sequence[float]) -> float:
    if len(incoming) == 0:
        raise ValueError("Check update needs at least one incoming message")
    product = np.clip(np.prod(np.tanh(np.asarray(incoming, dtype=np.float64) / 2)), -ATANH_CLIP, ATANH_CLIP)
    return float(2 * np.arctanh(product))


def check_update_nms(incoming: Sequence[float], beta5: float) -> float:
    if beta5 <= 0:
        raise ValueError(f"beta5 must be positive, got {beta5}")
    z = np.asarray(incoming, dtype=np.float64)
    return float(np.prod(_signs(z)) * np.abs(z).min() / beta5)


def check_update_oms(incoming: Sequence[float], beta6: float) -> float:
    if beta6 < 0:
        raise ValueError(f"beta6 must be non-negative, got {beta6}")
    z = np.asarray(incoming, dtype=np.float64)
    return float(np.prod(_signs(z)) * max(np.abs(z).min() - beta6, 0.0))


def var_update(f_i: float, incoming: Sequence[float], exclude_target: bool = True):
    """Outgoing messages of one bit given the messages of all its checks.

    With ``exclude_target`` each outgoing message leaves out its own
    check's contribution and an array is returned; otherwise every edge
    carries the posterior and that single value is returned.
    """
    incoming = np.asarray(incoming, dtype=np.float64)
    posterior = f_i + incoming.sum()
    if exclude_target:
        return posterior - incoming
    return float(posterior)


def bp_check_pass(z, h):
    """2 atanh of the product of the other edges' tanh(Z/2), per edge."""
    t = np.tanh(z / 2)
    zero = t == 0
    log_mag = np.log(np.where(zero, 1.0, np.abs(t)))
    others_log = row_reduce(np.add, log_mag, h)[h.edge_row] - log_mag
    others_zero = row_reduce(np.add, zero.astype(np.int64), h)[h.edge_row] - zero
    product = extrinsic_sign(t, h) * np.exp(others_log) * (others_zero == 0)
    return 2 * np.arctanh(np.clip(product, -ATANH_CLIP, ATANH_CLIP))


def min_sum_check_pass(z, h):
    """Sign product times minimum magnitude over the other edges."""
    return extrinsic_sign(z, h) * extrinsic_min(np.abs(z), h)


@dataclass
class MinSumDecoderBase(DecoderBase):
    params: MsParams = field(default_factory=MsParams)

    family: ClassVar[str] = "ms"
    default_imax: ClassVar[int] = 200
    # False: every edge of a bit carries the full posterior
    extrinsic_variable_pass: ClassVar[bool] = True
    counted: ClassVar[bool] = True
    divisions_per_edge: ClassVar[int] = 0

    @classmethod
    def from_values(cls, values=(), i_max=None, **options):
        _check_arity(cls, values)
        return cls(
            params=MsParams(
                variant=cls.friendly_name(),
                i_max=cls.default_imax if i_max is None else i_max,
                **dict(zip(cls.parameters, values)),
            ),
            **options,
        )

    @classmethod
    def with_params(cls, params: MsParams, i_max=None):
        if i_max is not None:
            params = replace(params, i_max=i_max)
        return cls(params=params)

    @property
    def values(self):
        return tuple(getattr(self.params, p) for p in self.parameters)

    @property
    def i_max(self):
        return self.params.i_max

    def check_pass(self, z, h) -> np.ndarray:
        raise NotImplementedError

    def workspace(self, h, frame) -> MsWorkspace:
        return MsWorkspace(
            check_to_var=np.zeros(h.n_edges),
            var_to_check=frame.llr[h.edge_col].astype(np.float64),
            posterior=frame.llr.astype(np.float64),
            c_hat=frame.hard.copy(),
            s=syndrome(h, frame.hard),
        )

    def iterate(self, ws: MsWorkspace, h, llr):
        ws.check_to_var = self.check_pass(ws.var_to_check, h)
        ws.posterior = llr + np.bincount(h.edge_col, weights=ws.check_to_var, minlength=h.n_cols)
        ws.var_to_check = ws.posterior[h.edge_col]
        if self.extrinsic_variable_pass:
            ws.var_to_check = ws.var_to_check - ws.check_to_var
        ws.c_hat = (ws.posterior < 0).astype(np.uint8)
        ws.s = syndrome(h, ws.c_hat)

    def decode(self, h, frame) -> DecodeOutcome:
        ledger = self.new_ledger(h)
        ws = self.workspace(h, frame)
        per_iteration = (
            ms_iteration_additions(self.name, CodeDims.from_matrix(h)) if self.counted else 0
        )
        iters = 0
        while ws.s.any() and iters < self.i_max:
            self.iterate(ws, h, frame.llr)
            iters += 1
        ledger.iters = iters
        ledger.real_additions = iters * per_iteration
        ledger.real_divisions = iters * h.n_edges * self.divisions_per_edge
        return DecodeOutcome(
            c_hat=ws.c_hat, converged=not ws.s.any(), iters_used=iters, ledger=ledger
        )


def decode_ms(h, frame, params: MsParams) -> DecodeOutcome:
    from fgldpc.decoders import known_decoders

    return known_decoders[params.variant].with_params(params).decode(h, frame)
