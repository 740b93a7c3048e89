"""Shared machinery of the weighted bit-flipping decoders.

Every variant scores bit i with a flipping function

    f_i = offset_i + sum over checks k of M(i) of t(i, k, s_k)

where the per-edge term ``t`` takes one of two precomputed values
depending on whether check k is satisfied. Keeping both values per edge
lets :func:`refresh_bf_functions` update f after a flip by touching only
the checks whose state changed.
"""
from dataclasses import dataclass, field, replace
from typing import ClassVar, Optional, Sequence, Set

import numpy as np

from fgldpc.codes import syndrome
from fgldpc.decoders import DecodeOutcome, DecoderBase, _check_arity
from fgldpc.decoders.edges import row_reduce

INTEGER_PARAMETERS = ("alpha1", "alpha2", "alpha3")

BfOutcome = DecodeOutcome


@dataclass(frozen=True)
class BfParams:
    alpha1: int = 1
    alpha2: int = 1
    alpha3: int = 1
    beta1: float = 0.0
    beta2: float = 0.0
    beta3: float = 0.0
    beta4: float = 0.0
    i_max: int = 20

    def __post_init__(self):
        for name in INTEGER_PARAMETERS:
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value}")
            object.__setattr__(self, name, int(value))
        if not 0.0 <= self.beta4 <= 1.0:
            raise ValueError(f"beta4 must lie in [0, 1], got {self.beta4}")
        if int(self.i_max) != self.i_max or self.i_max < 1:
            raise ValueError(f"i_max must be a positive integer, got {self.i_max}")


@dataclass
class BfWorkspace:
    """State of one bit-flipping decode."""

    f: np.ndarray
    term_sat: np.ndarray
    term_unsat: np.ndarray
    offset: np.ndarray
    c_hat: np.ndarray
    s: np.ndarray
    b: np.ndarray
    a: np.ndarray
    reliable: np.ndarray
    T: float = np.inf
    iter: int = 0
    visited: Set[bytes] = field(default_factory=set)

    @classmethod
    def create(cls, h, frame, term_sat, term_unsat, offset=None):
        offset = np.zeros(h.n_cols) if offset is None else offset
        c_hat = frame.hard.copy()
        s = syndrome(h, c_hat)
        ws = cls(
            f=np.zeros(h.n_cols),
            term_sat=term_sat,
            term_unsat=term_unsat,
            offset=offset,
            c_hat=c_hat,
            s=s,
            b=np.zeros(h.n_cols, dtype=np.int64),
            a=np.zeros(h.n_cols, dtype=np.int64),
            reliable=np.zeros(h.n_cols, dtype=bool),
        )
        ws.f = compute_bf_functions(ws, h, s)
        return ws


def lp_term(y_mag_i: float, check_min: float, check_max: float, s_k: int) -> float:
    if check_min > check_max:
        raise ValueError(f"check_min {check_min} exceeds check_max {check_max}")
    term = y_mag_i - 0.5 * check_min
    return term - check_max if s_k else term


def sz_weight(alpha1: int, beta1: float, magnitudes: Sequence[float]) -> int:
    """Weight of one check for one bit; ``magnitudes`` excludes the bit itself."""
    if alpha1 < 1:
        raise ValueError(f"alpha1 must be at least 1, got {alpha1}")
    unreliable = sum(1 for m in magnitudes if m <= beta1)
    return max(0, alpha1 - unreliable)


def lp_edge_terms(h, magnitude):
    """Satisfied and unsatisfied values of the per-edge LP term."""
    mag_e = magnitude[h.edge_col]
    row_min = row_reduce(np.minimum, mag_e, h)[h.edge_row]
    row_max = row_reduce(np.maximum, mag_e, h)[h.edge_row]
    sat = mag_e - 0.5 * row_min
    return sat, sat - row_max


def sz_edge_weights(h, magnitude, alpha1, beta1):
    low = (magnitude[h.edge_col] <= beta1).astype(np.int64)
    per_row = row_reduce(np.add, low, h)[h.edge_row]
    return np.maximum(0, alpha1 - (per_row - low))


def compute_bf_functions(ws: BfWorkspace, h, s) -> np.ndarray:
    """Batch evaluation of f for syndrome ``s``."""
    terms = np.where(s[h.edge_row].astype(bool), ws.term_unsat, ws.term_sat)
    return ws.offset + np.bincount(h.edge_col, weights=terms, minlength=h.n_cols)


def refresh_bf_functions(ws: BfWorkspace, h, prev_syndrome, new_syndrome) -> int:
    """Move ``ws.f`` from ``prev_syndrome`` to ``new_syndrome`` in place.

    Only edges of checks that changed state are touched; the number of
    touched terms is returned.
    """
    toggled = (np.asarray(prev_syndrome) ^ np.asarray(new_syndrome)).astype(bool)
    if not toggled.any():
        return 0
    edges = np.flatnonzero(toggled[h.edge_row])
    now_unsat = np.asarray(new_syndrome)[h.edge_row[edges]].astype(bool)
    change = ws.term_unsat[edges] - ws.term_sat[edges]
    delta = np.where(now_unsat, change, -change)
    ws.f += np.bincount(h.edge_col[edges], weights=delta, minlength=h.n_cols)
    return len(edges)


@dataclass
class BitFlipDecoderBase(DecoderBase):
    """Decode loop shared by all bit-flipping variants.

    One round: if the syndrome is zero, stop; otherwise bring f up to
    date, let the variant pick the bits to flip and flip them. A round
    that picks nothing ends the decode as a failure.
    """

    params: BfParams = field(default_factory=BfParams)

    family: ClassVar[str] = "bf"
    serial: ClassVar[bool] = False

    @classmethod
    def from_values(cls, values=(), i_max=None, **options):
        _check_arity(cls, values)
        if i_max is None:
            i_max = cls.default_imax
        return cls(
            params=BfParams(i_max=i_max, **dict(zip(cls.parameters, values))),
            **options,
        )

    @classmethod
    def with_params(cls, params=(), i_max=None, **options):
        """Accept either a BfParams or positional values."""
        if isinstance(params, BfParams):
            if i_max is not None:
                params = replace(params, i_max=i_max)
            return cls(params=params, **options)
        return cls.from_values(tuple(params), i_max=i_max, **options)

    @property
    def values(self):
        return tuple(getattr(self.params, p) for p in self.parameters)

    @property
    def i_max(self):
        return self.params.i_max

    def workspace(self, h, frame) -> BfWorkspace:
        raise NotImplementedError

    def preprocess_additions(self, h) -> float:
        raise NotImplementedError

    def select(self, ws: BfWorkspace, h, ledger) -> Optional[np.ndarray]:
        raise NotImplementedError

    def flip(self, ws: BfWorkspace, h, bits):
        ws.c_hat[bits] ^= 1
        ws.s = syndrome(h, ws.c_hat)

    def decode(self, h, frame) -> DecodeOutcome:
        ledger = self.new_ledger(h)
        ws = self.workspace(h, frame)
        ledger.real_additions += self.preprocess_additions(h) + h.n_edges - h.n_cols
        f_syndrome = ws.s.copy()
        rounds = 0
        while ws.s.any() and rounds < self.i_max:
            if rounds:
                refreshed = refresh_bf_functions(ws, h, f_syndrome, ws.s)
                f_syndrome = ws.s.copy()
                ledger.refresh_iters += 1
                ledger.refreshed_terms += refreshed
                ledger.real_additions += refreshed
            ws.iter = rounds
            ledger.iters += 1
            ledger.unsat_checks += int(np.count_nonzero(ws.s))
            rounds += 1
            bits = self.select(ws, h, ledger)
            if bits is None or len(bits) == 0:
                break
            ledger.nt_flips += len(bits)
            self.flip(ws, h, bits)
        return DecodeOutcome(
            c_hat=ws.c_hat, converged=not ws.s.any(), iters_used=rounds, ledger=ledger
        )


def _smallest_first(f, count):
    """Indices of the ``count`` smallest values, ties to the lowest index.
    The full sort only happens if the caller asks past the first."""
    yield int(np.argmin(f))
    for i in np.argsort(f, kind="stable")[1:count]:
        yield int(i)


@dataclass
class SerialBitFlipDecoderBase(BitFlipDecoderBase):
    """Flip the single bit with the smallest f per round.

    With loop detection on, a flip that would bring back an already
    visited hard decision is skipped in favour of the next-smallest
    candidate, for at most d_c retries.
    """

    loop_detection: bool = True

    serial: ClassVar[bool] = True
    default_imax: ClassVar[int] = 200

    def workspace(self, h, frame):
        sat, unsat = self.edge_terms(h, frame.magnitude)
        ws = BfWorkspace.create(h, frame, sat, unsat)
        ws.visited.add(np.packbits(ws.c_hat).tobytes())
        return ws

    def edge_terms(self, h, magnitude):
        raise NotImplementedError

    def select(self, ws, h, ledger):
        ledger.real_additions += h.n_cols - 1
        if not self.loop_detection:
            return np.array([int(np.argmin(ws.f))])
        for bit in _smallest_first(ws.f, h.d_c + 1):
            trial = ws.c_hat.copy()
            trial[bit] ^= 1
            key = np.packbits(trial).tobytes()
            if key not in ws.visited:
                ws.visited.add(key)
                return np.array([bit])
        return None
