"""Operation counting for decoders.

Decoders fill a :class:`ComplexityLedger` while they run; the functions
below evaluate the closed-form cost model for the same decoders so that
measured and predicted totals can be compared. One real comparison counts
as one real addition. Binary operations are free.

Cost model per decoded sequence (N bits, M checks)::

    scheme   preprocess                 initialise + update               select
    lz-wbf   N(dc-1)                    N(dv-1) + (Ani-1) N Anc           0
    nt-wbf   N(2dc-3)                   N(dv-1) + (Ani-1) N Anc           Ani N log2(Anb)
    wz-wbf   N(dc-1)                    N(dv-1) + (Ani-1) N Anc           Ani Ans (dc-1)
    lf-wbf   N(2dc-1 + log2 floor(b4 N)) N(dv-1) + (Ani-1) N Anc          Ani Ans (dc-1)
    sz-wbf   N(2dc-2)                   N(dv-1) + (Ani-1) dv dc           Ani (N-1)
    lp-wbf   N(2dc-3)                   N(dv-1) + (Ani-1) dv dc           Ani (N-1)
    nab      Ani (2 N dv + M(ceil(log2 dc) - 2))
    oms/nms  Ani (N(4dv-3) + M(ceil(log2 dc) - 2))
"""
import math
from dataclasses import dataclass, fields
from typing import Iterable, Optional

UNTAGGED = ""


@dataclass(frozen=True)
class CodeDims:
    n: int
    m: int
    d_v: int
    d_c: int
    beta4: Optional[float] = None

    @classmethod
    def from_matrix(cls, h, beta4=None):
        return cls(n=h.n_cols, m=h.n_rows, d_v=h.d_v, d_c=h.d_c, beta4=beta4)


@dataclass(frozen=True)
class Averages:
    a_ni: float
    a_ns: Optional[float] = None
    a_nb: Optional[float] = None
    a_nc: Optional[float] = None


@dataclass
class ComplexityLedger:
    """Counters accumulated over one or more decoded frames."""

    scheme: str = UNTAGGED
    code: str = UNTAGGED
    n_cols: int = 0
    frames: int = 0
    iters: int = 0
    refresh_iters: int = 0
    unsat_checks: int = 0
    nt_flips: int = 0
    refreshed_terms: int = 0
    real_additions: float = 0.0
    real_divisions: int = 0

    counters = (
        "frames",
        "iters",
        "refresh_iters",
        "unsat_checks",
        "nt_flips",
        "refreshed_terms",
        "real_additions",
        "real_divisions",
    )

    def __post_init__(self):
        for name in self.counters:
            if getattr(self, name) < 0:
                raise ValueError(f"Ledger counter {name} is negative")

    def __add__(self, other):
        return merge([self, other])

    @property
    def is_empty(self):
        return all(getattr(self, name) == 0 for name in self.counters)

    def averages(self) -> Averages:
        if self.frames == 0:
            raise ValueError(f"No frames recorded for {self.scheme or 'ledger'}")
        per_iter = (lambda x: x / self.iters) if self.iters else (lambda x: 0.0)
        a_nc = 0.0
        if self.refresh_iters and self.n_cols:
            a_nc = self.refreshed_terms / (self.n_cols * self.refresh_iters)
        return Averages(
            a_ni=self.iters / self.frames,
            a_ns=per_iter(self.unsat_checks),
            a_nb=per_iter(self.nt_flips),
            a_nc=a_nc,
        )

    def additions_per_frame(self) -> float:
        return self.real_additions / self.frames if self.frames else 0.0

    def total_per_frame(self) -> float:
        """Additions plus divisions per frame."""
        if not self.frames:
            return 0.0
        return (self.real_additions + self.real_divisions) / self.frames

    def as_row(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _common_tag(ledgers, attr):
    tags = {getattr(l, attr) for l in ledgers} - {UNTAGGED}
    if len(tags) > 1:
        raise ValueError(f"Cannot merge ledgers with different {attr}s: {sorted(tags)}")
    return tags.pop() if tags else UNTAGGED


def merge(ledgers: Iterable[ComplexityLedger]) -> ComplexityLedger:
    """Componentwise sum of ledgers for the same scheme and code."""
    ledgers = list(ledgers)
    n_cols = {l.n_cols for l in ledgers} - {0}
    if len(n_cols) > 1:
        raise ValueError(f"Cannot merge ledgers for block lengths {sorted(n_cols)}")
    return ComplexityLedger(
        scheme=_common_tag(ledgers, "scheme"),
        code=_common_tag(ledgers, "code"),
        n_cols=n_cols.pop() if n_cols else 0,
        **{name: sum(getattr(l, name) for l in ledgers) for name in ComplexityLedger.counters},
    )


def concatenate(first: ComplexityLedger, second: ComplexityLedger, scheme: str) -> ComplexityLedger:
    """Cost of running ``second`` behind ``first`` on the same frames.

    Every counter adds up except ``frames``, which stays that of the
    first stage since the second only sees the frames the first gave up on.
    """
    counts = {name: getattr(first, name) + getattr(second, name) for name in ComplexityLedger.counters}
    counts["frames"] = first.frames
    return ComplexityLedger(
        scheme=scheme,
        code=_common_tag([first, second], "code"),
        n_cols=first.n_cols or second.n_cols,
        **counts,
    )


def _log2_ceil(x):
    return math.ceil(math.log2(x))


def _require(averages, scheme, *names):
    missing = [n for n in names if getattr(averages, n) is None]
    if missing:
        raise ValueError(f"{scheme} estimate needs {', '.join(missing)}")
    return [getattr(averages, n) for n in names]


def ms_iteration_additions(scheme: str, dims: CodeDims) -> float:
    check_pass = dims.m * (_log2_ceil(dims.d_c) - 2)
    if scheme == "nab":
        return 2 * dims.n * dims.d_v + check_pass
    if scheme in ("nms", "oms"):
        return dims.n * (4 * dims.d_v - 3) + check_pass
    raise ValueError(f"No per-iteration cost model for {scheme}")


def preprocess_additions(scheme: str, dims: CodeDims) -> float:
    n, d_c = dims.n, dims.d_c
    if scheme in ("lz-wbf", "wz-wbf"):
        return n * (d_c - 1)
    if scheme in ("nt-wbf", "lp-wbf"):
        return n * (2 * d_c - 3)
    if scheme == "sz-wbf":
        return n * (2 * d_c - 2)
    if scheme == "lf-wbf":
        if dims.beta4 is None:
            raise ValueError("lf-wbf estimate needs beta4")
        return n * (2 * d_c - 1 + math.log2(math.floor(dims.beta4 * n)))
    raise ValueError(f"Unknown bit-flipping scheme '{scheme}'")


def estimate_additions(scheme: str, dims: CodeDims, averages: Averages) -> float:
    """Real additions per sequence predicted by the cost model."""
    if scheme in ("nab", "nms", "oms"):
        return averages.a_ni * ms_iteration_additions(scheme, dims)
    if scheme not in ("lz-wbf", "nt-wbf", "wz-wbf", "lf-wbf", "sz-wbf", "lp-wbf"):
        raise ValueError(f"Unknown scheme '{scheme}'")
    n, d_v, d_c = dims.n, dims.d_v, dims.d_c
    a_ni = averages.a_ni
    total = preprocess_additions(scheme, dims) + n * (d_v - 1)
    if scheme in ("sz-wbf", "lp-wbf"):
        return total + (a_ni - 1) * d_v * d_c + a_ni * (n - 1)
    (a_nc,) = _require(averages, scheme, "a_nc")
    total += (a_ni - 1) * n * a_nc
    if scheme == "nt-wbf":
        (a_nb,) = _require(averages, scheme, "a_nb")
        if a_ni > 0:
            total += a_ni * n * math.log2(a_nb)
    elif scheme in ("wz-wbf", "lf-wbf"):
        (a_ns,) = _require(averages, scheme, "a_ns")
        total += a_ni * a_ns * (d_c - 1)
    return total


def nms_benchmark(dims: CodeDims, a_ni: float) -> float:
    """NMS additions plus its A_ni * N * d_v divisions."""
    return estimate_additions("nms", dims, Averages(a_ni=a_ni)) + a_ni * dims.n * dims.d_v


def complexity_ratio(hybrid, benchmark: float) -> float:
    """Hybrid cost per frame relative to the NMS benchmark.

    ``hybrid`` is either a per-frame cost or a ledger, whose additions
    and divisions per frame are used.
    """
    if benchmark <= 0:
        raise ValueError(f"Benchmark complexity must be positive, got {benchmark}")
    if isinstance(hybrid, ComplexityLedger):
        hybrid = hybrid.total_per_frame()
    return hybrid / benchmark


def exact_ratio(
    scheme: str,
    dims: CodeDims,
    averages: Averages,
    nms_a_ni: Optional[float] = None,
    ms_a_ni: float = 0.0,
) -> float:
    """Full cost-model ratio of a BF+NMS hybrid to NMS alone.

    ``averages`` belong to the BF stage, ``ms_a_ni`` is the MS-stage
    iteration count averaged over all frames and ``nms_a_ni`` that of NMS
    decoding alone (defaults to the BF stage's A_ni).
    """
    bf, _, ms = scheme.partition("+")
    if ms != "nms":
        raise ValueError(f"Ratio is defined against NMS, got '{scheme}'")
    hybrid = estimate_additions(bf, dims, averages) + nms_benchmark(dims, ms_a_ni)
    return complexity_ratio(hybrid, nms_benchmark(dims, nms_a_ni or averages.a_ni))


def asymptotic_ratio(scheme: str, a_ni: float) -> float:
    """High-SNR limit of :func:`exact_ratio` for large d_v = d_c."""
    if a_ni <= 0:
        raise ValueError(f"A_ni must be positive, got {a_ni}")
    if scheme == "lz-wbf+nms":
        return 2 / (5 * a_ni)
    if scheme == "lf-wbf+nms":
        return (9 + a_ni) / (15 * a_ni)
    raise ValueError(f"No asymptotic ratio for '{scheme}'")
